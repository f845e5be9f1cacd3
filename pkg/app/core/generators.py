"""
Adversarial and structured sequence families.

Every family is built together with the counts it is supposed to produce and,
where OPT is known, a partition certificate. Construction checks those claims
by running the engines, so a family that exists is a family that holds.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np

from app.config import get_settings
from app.core.algorithms import AlgorithmId, covered_count
from app.core.intervals import IntervalSpec, two_border_threshold
from app.core.items import ONE, Sequence
from app.core.oracles import PartitionCertificate, opt_volume_bound, verify_certificate
from app.exceptions import BadEps, BadP, BadParams, ClaimMismatch
from app.models.schemas import ClaimSchema, FamilySchema, SegmentSchema

logger = logging.getLogger(__name__)

TENTH = Fraction(1, 10)


class ClaimKind(str, Enum):
    EXACT = "exact"
    ADDITIVE = "additive"  # within `slack` of the expected value
    LOWER_BOUND = "lower_bound"


@dataclass(frozen=True)
class Claim:
    subject: str  # "DNF", "DHk" or "OPT"
    expected: int
    kind: ClaimKind = ClaimKind.EXACT
    k: int | None = None
    slack: int = 0

    @property
    def label(self) -> str:
        return f"DH{self.k}" if self.subject == "DHk" else self.subject


@dataclass(frozen=True)
class Segment:
    label: str
    start: int
    stop: int
    dnf_covered: int | None = None


@dataclass(frozen=True)
class GeneratedFamily:
    family: str
    params: dict[str, Any]
    seq: Sequence
    eps: Fraction | None
    scale_n: int
    claims: tuple[Claim, ...]
    opt_cert: PartitionCertificate | None = None
    interval: IntervalSpec | None = None
    segments: tuple[Segment, ...] = ()
    observed: dict[str, int] = field(default_factory=dict, compare=False)

    def claim(self, label: str) -> Claim:
        return next(c for c in self.claims if c.label == label)

    def segment(self, label: str) -> Sequence:
        seg = next(s for s in self.segments if s.label == label)
        return Sequence(self.seq.items[seg.start : seg.stop])

    def verify(self) -> dict[str, int]:
        """
        Run every claim against the engines and the certificate.

        Raises:
            ClaimMismatch: an exact claim differs, an additive claim is off by
                more than its slack, or a lower bound is not met
            BadEps: an item lies outside the declared interval
        """
        if self.interval is not None:
            for index, item in enumerate(self.seq):
                if not self.interval.contains(item):
                    raise BadEps(f"{self.family}: item {index} = {item} outside declared interval {self.interval}")

        observed: dict[str, int] = {}
        for claim in self.claims:
            if claim.subject == "OPT":
                value = self._verify_opt(claim)
            else:
                alg = AlgorithmId.DNF if claim.subject == "DNF" else AlgorithmId.DHK
                value = covered_count(alg, self.seq, claim.k)
            observed[claim.label] = value
            _check(self.family, claim, value)

        for seg in self.segments:
            if seg.dnf_covered is None:
                continue
            value = covered_count(AlgorithmId.DNF, self.segment(seg.label))
            if value != seg.dnf_covered:
                raise ClaimMismatch(f"{self.family}: segment {seg.label} gives DNF {value}, expected {seg.dnf_covered}")
        return observed

    def _verify_opt(self, claim: Claim) -> int:
        if self.opt_cert is None:
            raise ClaimMismatch(f"{self.family}: OPT claim without a certificate")
        value = verify_certificate(self.seq, self.opt_cert)
        if opt_volume_bound(self.seq) < value:
            raise ClaimMismatch(f"{self.family}: certificate {value} exceeds the volume bound")
        return value

    def to_model(self) -> FamilySchema:
        return FamilySchema(
            family=self.family,
            params={key: str(value) for key, value in self.params.items()},
            eps=None if self.eps is None else str(self.eps),
            scale_n=self.scale_n,
            length=len(self.seq),
            provenance=self.seq.provenance or "",
            interval=None if self.interval is None else [str(self.interval.a), str(self.interval.b)],
            claims=[
                ClaimSchema(
                    subject=c.label,
                    expected=c.expected,
                    kind=c.kind.value,
                    slack=c.slack,
                    observed=self.observed.get(c.label),
                )
                for c in self.claims
            ],
            certificate=None if self.opt_cert is None else self.opt_cert.to_model(),
            segments=[SegmentSchema(label=s.label, start=s.start, stop=s.stop) for s in self.segments],
        )


def _check(family: str, claim: Claim, value: int) -> None:
    if claim.kind is ClaimKind.EXACT:
        ok = value == claim.expected
    elif claim.kind is ClaimKind.ADDITIVE:
        ok = abs(value - claim.expected) <= claim.slack
    else:
        ok = value >= claim.expected
    if not ok:
        raise ClaimMismatch(f"{family}: {claim.label} = {value}, claimed {claim.kind.value} {claim.expected}")


def default_eps(bound: Fraction) -> Fraction:
    """Largest power of 1/10 strictly below `bound`."""
    if bound <= 0:
        raise BadEps(f"No positive eps below {bound}")
    eps = TENTH
    while eps >= bound:
        eps *= TENTH
    return eps


def _resolve_eps(eps: Fraction | int | str | None, bound: Fraction, family: str) -> Fraction:
    if eps is None:
        return default_eps(bound)
    eps = Fraction(eps)
    if not 0 < eps < bound:
        raise BadEps(f"{family}: eps = {eps} must satisfy 0 < eps < {bound}")
    return eps


def _provenance(family: str, params: dict[str, Any]) -> str:
    return family + " " + " ".join(f"{key}={value}" for key, value in params.items())


def _build(
    family: str,
    params: dict[str, Any],
    items: list[Fraction],
    eps: Fraction | None,
    scale_n: int,
    claims: list[Claim],
    cert: PartitionCertificate | None = None,
    interval: IntervalSpec | None = None,
    segments: tuple[Segment, ...] = (),
) -> GeneratedFamily:
    params = dict(params)
    if eps is not None:
        params["eps"] = eps
    seq = Sequence(tuple(items), _provenance(family, params))
    draft = GeneratedFamily(family, params, seq, eps, scale_n, tuple(claims), cert, interval, segments)
    observed = draft.verify()
    logger.info(f"Generated {family}: {len(seq)} items, claims {observed}")
    return GeneratedFamily(family, params, seq, eps, scale_n, tuple(claims), cert, interval, segments, observed)


def _require(condition: bool, message: str, error: type = BadParams) -> None:
    if not condition:
        raise error(message)


def gen_dnf_one_border(x: int, n: int, eps: Fraction | int | str | None = None) -> GeneratedFamily:
    """
    <(1/x)^(x-1), 1/x - eps, 1/x + eps> repeated xn times.

    Each block of x+1 items reaches 1 - eps after x items, so DNF covers one bin
    per block. OPT covers (x+1)n: a {1/x - eps, 1/x + eps, (1/x)^(x-2)} group
    per block plus n groups of x copies of 1/x.
    """
    _require(x >= 2, f"x must be ≥ 2, got {x}")
    _require(n >= 0, f"n must be ≥ 0, got {n}")
    unit = Fraction(1, x)
    if eps is None:
        eps = default_eps(Fraction(1, x * (x + 1)))
    eps = _resolve_eps(eps, unit, "dnf_one_border")

    block = [unit] * (x - 1) + [unit - eps, unit + eps]
    items = block * (x * n)

    groups = [[unit - eps, unit + eps] + [unit] * (x - 2)] * (x * n) + [[unit] * x] * n
    cert = PartitionCertificate.of(groups)

    # the canonical one-border interval holds the items only for eps < 1/(x(x+1))
    interval = None
    if eps < Fraction(1, x * (x + 1)):
        interval = IntervalSpec.of(Fraction(1, x + 1), Fraction(1, x - 1) if x > 2 else ONE)

    return _build(
        "dnf_one_border",
        {"x": x, "n": n},
        items,
        eps,
        n,
        [Claim("DNF", x * n), Claim("OPT", (x + 1) * n)],
        cert,
        interval,
    )


def gen_dhk_one_border(
    p: int,
    n: int,
    eps: Fraction | int | str | None = None,
    k: int | None = None,
    interval: IntervalSpec | None = None,
    family: str = "dhk_one_border",
) -> GeneratedFamily:
    """
    <(1/p - eps/(p-1))^(p-1), 1/p + eps> repeated n times.

    DHk (k ≥ p) fills bins with p large items and p+1 shaved items, covering
    floor(n(p-1)/(p+1)) + floor(n/p); OPT puts one large and p-1 shaved items
    in each bin, every group summing to exactly 1.

    Args:
        p: Maximal border index, ≥ 2
        n: Number of blocks
        eps: Perturbation, default the largest power of 1/10 below the bound
        k: DHk parameter for the claim, ≥ p (default p)
        interval: Declared interval, default (1/(p+1), 1/(p-1))
    """
    _require(p >= 2, f"p must be ≥ 2, got {p}", BadP)
    _require(n >= 0, f"n must be ≥ 0, got {n}")
    k = p if k is None else k
    _require(k >= p, f"k must be ≥ p = {p}, got {k}")
    if interval is None:
        interval = IntervalSpec.of(Fraction(1, p + 1), Fraction(1, p - 1) if p > 2 else ONE)
    _require(interval.p == p and interval.has_border, f"{interval} does not have maximal border 1/{p}")

    border = Fraction(1, p)
    # shaved items stay in [1/(p+1), 1/p) only while eps ≤ (p-1)/(p(p+1))
    bound = min((p - 1) * (border - interval.a), interval.b - border, Fraction(p - 1, p * (p + 1)))
    eps = _resolve_eps(eps, bound, family)

    shaved = border - eps / (p - 1)
    large = border + eps
    items = ([shaved] * (p - 1) + [large]) * n
    cert = PartitionCertificate.of([[large] + [shaved] * (p - 1)] * n)
    dhk = n * (p - 1) // (p + 1) + n // p

    return _build(
        family,
        {"p": p, "n": n, "k": k},
        items,
        eps,
        n,
        [Claim("DHk", dhk, k=k), Claim("OPT", n)],
        cert,
        interval,
    )


def gen_dhk_two_border_small_b(
    p: int, n: int, eps: Fraction | int | str | None = None, k: int | None = None
) -> GeneratedFamily:
    """The one-border DHk family inside the two-border interval (1/(p+2), (p+2)/(p(p+1)))."""
    k = p + 1 if k is None else k
    _require(k >= p + 1, f"k must be ≥ p+1 = {p + 1}, got {k}")
    _require(p >= 2, f"p must be ≥ 2, got {p}", BadP)
    interval = IntervalSpec.of(Fraction(1, p + 2), two_border_threshold(p))
    return gen_dhk_one_border(p, n, eps, k, interval, family="dhk_two_border_small_b")


def gen_dnf_two_border(p: int, n: int, eps: Fraction | int | str | None = None) -> GeneratedFamily:
    """
    Five-part sequence on which DNF covers p(p+1)n bins while OPT covers
    (p²+2p+2)n.

    With w = 1/(p+1), u = 1/p, B = (p+2)/(p(p+1)) and c = p-2:
      part1  <u^(p-1), u-2eps, B+eps>                         x (p+1)(p-2)n
      part2  <w^p, w-eps, B+eps>                               x (p+1)n
      part3  <w+i·c·eps, w-(i+1)·c·eps, (w+eps)^c, w-eps, B+eps>  i = 1..(p+1)n-1
      part4  <w-c·eps, (w+eps)^c, w-eps, B+eps>
      part5  <w+(p+1)n·c·eps>
    Every block except part5 reaches exactly 1 - eps or 1 - 2eps before its
    last item B+eps, so DNF closes one bin per block.

    eps bound. The smallest item is w - (p+1)n·c·eps and the largest above the
    border is B + eps. The declared interval is (a, b) with
    a = w - C·eps, C = (p+1)n·c + 1, and b = B + 2eps; it is two-border with
    b > B iff
      a ≥ 1/(p+2)          <=> eps ≤ 1/(C(p+1)(p+2))
      b < 1/(p-1)          <=> eps < 1/((p-1)p(p+1))   since 1/(p-1) - B = 2/((p-1)p(p+1))
      u - 2eps > w         <=> eps < 1/(2p(p+1))       keeps u-2eps medium-free
    and w + C·eps < u follows from the first. The strict minimum of the three
    is the bound.
    """
    _require(p >= 3, f"p must be ≥ 3 so that p-2 ≥ 1, got {p}", BadP)
    _require(n >= 1, f"n must be ≥ 1, got {n}")
    c = p - 2
    big_c = (p + 1) * n * c + 1
    bound = min(
        Fraction(1, big_c * (p + 1) * (p + 2)),
        Fraction(1, (p - 1) * p * (p + 1)),
        Fraction(1, 2 * p * (p + 1)),
    )
    eps = _resolve_eps(eps, bound, "dnf_two_border")

    w = Fraction(1, p + 1)
    u = Fraction(1, p)
    big_b = two_border_threshold(p)
    top = big_b + eps
    m = (p + 1) * n

    parts: list[tuple[str, list[Fraction], int]] = [
        ("part1", ([u] * (p - 1) + [u - 2 * eps, top]) * ((p + 1) * c * n), (p + 1) * c * n),
        ("part2", ([w] * p + [w - eps, top]) * m, m),
        (
            "part3",
            [
                item
                for i in range(1, m)
                for item in [w + i * c * eps, w - (i + 1) * c * eps] + [w + eps] * c + [w - eps, top]
            ],
            m - 1,
        ),
        ("part4", [w - c * eps] + [w + eps] * c + [w - eps, top], 1),
        ("part5", [w + m * c * eps], 0),
    ]
    items: list[Fraction] = []
    segments = []
    for label, chunk, closes in parts:
        segments.append(Segment(label, len(items), len(items) + len(chunk), closes))
        items.extend(chunk)

    groups = (
        [[top, u - 2 * eps] + [u] * (p - 3) + [w + eps]] * ((p + 1) * c * n)
        + [[top] + [u] * (p - 2) + [w - eps]] * (2 * m)
        + [[w + i * c * eps, w - i * c * eps] + [w] * (p - 1) for i in range(1, m + 1)]
        + [[w] * (p + 1)] * n
    )
    cert = PartitionCertificate.of(groups)
    interval = IntervalSpec.of(w - big_c * eps, big_b + 2 * eps)

    return _build(
        "dnf_two_border",
        {"p": p, "n": n},
        items,
        eps,
        n,
        [Claim("DNF", p * (p + 1) * n), Claim("OPT", (p * p + 2 * p + 2) * n, ClaimKind.LOWER_BOUND)],
        cert,
        interval,
        tuple(segments),
    )


def gen_dhk_two_border(
    p: int, n: int, eps: Fraction | int | str | None = None, k: int | None = None
) -> GeneratedFamily:
    """
    <(1/(p+1) - eps)^n, (B + (p-1)eps)^n, (1/p - eps)^(n(p-2))>, B = (p+2)/(p(p+1)).

    The three item kinds are small, large and medium for DHk (k ≥ p+1), which
    covers floor(n/(p+2)) + floor(n/p) + floor(n(p-2)/(p+1)). OPT puts one of
    each of the first two kinds and p-2 of the third in every bin, sum exactly 1.

    eps bound: w - eps > 1/(p+2) needs eps < 1/((p+1)(p+2)); the large kind
    stays below 1/(p-1) when (p-1)eps < 2/((p-1)p(p+1)); the medium kind stays
    at least 1/(p+1) when eps ≤ 1/(p(p+1)).
    """
    _require(p >= 2, f"p must be ≥ 2, got {p}", BadP)
    _require(n >= 0, f"n must be ≥ 0, got {n}")
    k = p + 1 if k is None else k
    _require(k >= p + 1, f"k must be ≥ p+1 = {p + 1}, got {k}")
    # the medium condition eps ≤ 1/(p(p+1)) is implied by the first term
    bound = min(
        Fraction(1, (p + 1) * (p + 2)),
        Fraction(2, (p - 1) ** 2 * p * (p + 1)),
    )
    eps = _resolve_eps(eps, bound, "dhk_two_border")

    w = Fraction(1, p + 1)
    u = Fraction(1, p)
    small = w - eps
    large = two_border_threshold(p) + (p - 1) * eps
    medium = u - eps
    items = [small] * n + [large] * n + [medium] * (n * (p - 2))
    cert = PartitionCertificate.of([[small, large] + [medium] * (p - 2)] * n)
    dhk = n // (p + 2) + n // p + n * (p - 2) // (p + 1)
    interval = IntervalSpec.of(Fraction(1, p + 2), Fraction(1, p - 1))

    return _build(
        "dhk_two_border",
        {"p": p, "n": n, "k": k},
        items,
        eps,
        n,
        [Claim("DHk", dhk, k=k), Claim("OPT", n)],
        cert,
        interval,
    )


def gen_rwor(n: int, k: int = 2) -> GeneratedFamily:
    """
    <1/2, (1/(2n))^(n-1), 1/2> repeated 2n times.

    DNF closes one bin per block (2n); DHk pairs the halves (2n bins) and
    groups the 2n(n-1) small items 2n at a time (n-1 bins).
    """
    _require(n >= 1, f"n must be ≥ 1, got {n}")
    _require(k >= 2, f"k must be ≥ 2, got {k}")
    half = Fraction(1, 2)
    tiny = Fraction(1, 2 * n)
    items = ([half] + [tiny] * (n - 1) + [half]) * (2 * n)
    cert = PartitionCertificate.of([[half, half]] * (2 * n) + [[tiny] * (2 * n)] * (n - 1))
    return _build(
        "rwor",
        {"n": n, "k": k},
        items,
        None,
        n,
        [Claim("DNF", 2 * n), Claim("DHk", 3 * n - 1, k=k), Claim("OPT", 3 * n - 1)],
        cert,
    )


def gen_two_size(
    n: int | None,
    eps: Fraction | int | str,
    seed: int | None = None,
    counts: tuple[int, int] | None = None,
) -> Sequence:
    """
    Items of size 1 - eps (large) and eps (small).

    With `counts=(l, s)` the exact multiset in a seeded uniform order;
    otherwise n i.i.d. fair-coin draws.
    """
    if counts is not None:
        large, small = counts
        _require(large >= 0 and small >= 0, f"counts must be nonnegative, got {counts}")
        if n is not None and n != large + small:
            raise BadParams(f"n = {n} does not match counts {counts}")
        n = large + small
    _require(n is not None and n >= 0, f"n must be ≥ 0, got {n}")
    eps = Fraction(eps)
    bound = Fraction(1, n) if n else ONE
    if not 0 < eps < bound:
        raise BadEps(f"eps = {eps} must satisfy 0 < eps < 1/n = {bound}")

    seed = get_settings().default_seed if seed is None else seed
    rng = np.random.default_rng(seed)
    if counts is not None:
        kinds = np.array([True] * counts[0] + [False] * counts[1], dtype=bool)
        kinds = rng.permutation(kinds)
        label = f"two_size l={counts[0]} s={counts[1]} eps={eps} seed={seed}"
    else:
        kinds = rng.random(n) < 0.5
        label = f"two_size n={n} eps={eps} seed={seed} iid"
    big = ONE - eps
    return Sequence(tuple(big if is_large else eps for is_large in kinds.tolist()), label)


def gen_minmin_worst(
    p: int,
    b: Fraction | int | str,
    eps: Fraction | int | str,
    bins: int,
    a: Fraction | int | str = 0,
) -> GeneratedFamily:
    """
    Per bin: p items of 1/p - eps, then one of b - eps.

    DNF reaches 1 - p·eps with the first p items and closes on the last, so
    each bin consumes 1 - p·eps + b - eps of volume.
    """
    interval = IntervalSpec.of(a, b)
    b, eps = interval.b, Fraction(eps)
    _require(p >= 2, f"p must be ≥ 2, got {p}")
    _require(Fraction(1, p) < b <= Fraction(1, p - 1), f"need 1/p < b ≤ 1/(p-1), got p={p}, b={b}")
    _require(interval.has_border, f"{interval} holds no border")
    _require(bins >= 0, f"bins must be ≥ 0, got {bins}")
    _require(0 < eps < Fraction(1, p) - interval.a, f"need 0 < eps < 1/p - a, got eps={eps}")
    _require((p + 1) * eps <= b, f"eps = {eps} too large: b - eps must still cover 1 - p·eps")

    shaved = Fraction(1, p) - eps
    items = ([shaved] * p + [b - eps]) * bins
    return _build(
        "minmin_worst",
        {"p": p, "a": interval.a, "b": b, "bins": bins},
        items,
        eps,
        bins,
        [Claim("DNF", bins)],
        interval=interval,
    )


def minmin_default_eps(p: int, b: Fraction | int | str, a: Fraction | int | str = 0) -> Fraction:
    """Largest power of 1/10 that every min/min family over (a, b) accepts."""
    b, a = Fraction(b), Fraction(a)
    room = min(Fraction(1, p * (p + 1)), b - Fraction(1, p), Fraction(1, p) - a, b / (p + 1))
    return default_eps(room)


class MinMinOptKind(str, Enum):
    SMALL = "small"  # p+1 items of 1/p - eps per bin
    LARGE = "large"  # p items of b - eps per bin


def gen_minmin_opt_worst(
    p: int,
    b: Fraction | int | str,
    eps: Fraction | int | str,
    bins: int,
    kind: MinMinOptKind | str = MinMinOptKind.SMALL,
    a: Fraction | int | str = 0,
) -> GeneratedFamily:
    """
    Single-size sequences where every algorithm, OPT included, covers `bins`.

    With one item size there is no packing choice, so DNF, DHk and OPT agree.
    """
    kind = MinMinOptKind(kind)
    interval = IntervalSpec.of(a, b)
    b, eps = interval.b, Fraction(eps)
    _require(p >= 2, f"p must be ≥ 2, got {p}")
    _require(Fraction(1, p) < b <= Fraction(1, p - 1), f"need 1/p < b ≤ 1/(p-1), got p={p}, b={b}")
    _require(bins >= 0, f"bins must be ≥ 0, got {bins}")

    if kind is MinMinOptKind.SMALL:
        _require(0 < eps <= Fraction(1, p * (p + 1)), f"need 0 < eps ≤ 1/(p(p+1)), got {eps}")
        size, per_bin = Fraction(1, p) - eps, p + 1
    else:
        _require(0 < eps <= b - Fraction(1, p), f"need 0 < eps ≤ b - 1/p, got {eps}")
        size, per_bin = b - eps, p
    _require(size > interval.a, f"item {size} not above a = {interval.a}")

    items = [size] * (per_bin * bins)
    cert = PartitionCertificate.of([[size] * per_bin] * bins)
    return _build(
        f"minmin_opt_worst_{kind.value}",
        {"p": p, "a": interval.a, "b": b, "bins": bins, "kind": kind.value},
        items,
        eps,
        bins,
        [Claim("DNF", bins), Claim("DHk", bins, k=p + 1), Claim("OPT", bins)],
        cert,
        interval,
    )


def gen_uniform(n: int, seed: int | None = None, rng: np.random.Generator | None = None) -> np.ndarray:
    """
    n i.i.d. uniform draws from (0, 1) as float64, zeros redrawn.

    Draws come from `rng` when given, else from numpy's default PCG64 seeded
    with `seed`.
    """
    _require(n >= 0, f"n must be ≥ 0, got {n}")
    if rng is None:
        seed = get_settings().default_seed if seed is None else seed
        rng = np.random.default_rng(seed)
    draws = rng.random(n)
    zeros = draws == 0.0
    while zeros.any():
        draws[zeros] = rng.random(int(zeros.sum()))
        zeros = draws == 0.0
    return draws


def uniform_sequence(n: int, seed: int | None = None) -> Sequence:
    """Exact rational image of `gen_uniform`, for oracle checks on small n."""
    draws = gen_uniform(n, seed)
    return Sequence(tuple(Fraction.from_float(x) for x in draws.tolist()), f"uniform n={n} seed={seed}")

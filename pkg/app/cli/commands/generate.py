"""`generate`: write a sequence family and its claims sidecar."""

import argparse
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from app.config import Settings
from app.core import generators as gen
from app.core.generators import GeneratedFamily, MinMinOptKind
from app.core.items import Sequence, write_sequence
from app.exceptions import UsageError
from app.models.schemas import FamilySchema

from ..options import fraction_arg
from ..output import CommandResult

logger = logging.getLogger(__name__)

NAME = "generate"

# family -> (builder, required flags, optional flags)
FAMILIES: dict[str, tuple[Callable[..., GeneratedFamily], tuple[str, ...], tuple[str, ...]]] = {
    "dnf_one_border": (gen.gen_dnf_one_border, ("x", "n"), ("eps",)),
    "dhk_one_border": (gen.gen_dhk_one_border, ("p", "n"), ("eps", "k")),
    "dhk_two_border_small_b": (gen.gen_dhk_two_border_small_b, ("p", "n"), ("eps", "k")),
    "dnf_two_border": (gen.gen_dnf_two_border, ("p", "n"), ("eps",)),
    "dhk_two_border": (gen.gen_dhk_two_border, ("p", "n"), ("eps", "k")),
    "rwor": (gen.gen_rwor, ("n",), ("k",)),
    "minmin_worst": (gen.gen_minmin_worst, ("p", "b", "eps", "bins"), ("a",)),
    "minmin_opt_worst": (gen.gen_minmin_opt_worst, ("p", "b", "eps", "bins"), ("kind", "a")),
}
PLAIN_FAMILIES = ("two_size", "uniform")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Generate a sequence family into files")
    parser.add_argument("family", choices=[*FAMILIES, *PLAIN_FAMILIES])
    parser.add_argument("--out", required=True, help="Directory for the sequence and sidecar files")
    params = parser.add_argument_group("family parameters")
    params.add_argument("--x", type=int)
    params.add_argument("--p", type=int)
    params.add_argument("--n", type=int)
    params.add_argument("--k", type=int)
    params.add_argument("--eps", type=fraction_arg)
    params.add_argument("--a", type=fraction_arg)
    params.add_argument("--b", type=fraction_arg)
    params.add_argument("--bins", type=int)
    params.add_argument("--kind", choices=[kind.value for kind in MinMinOptKind])
    params.add_argument("--l", type=int, help="two_size: number of 1-eps items")
    params.add_argument("--s", type=int, help="two_size: number of eps items")
    parser.set_defaults(handler=handle)


def _family_kwargs(args: argparse.Namespace) -> dict[str, Any]:
    _, required, optional = FAMILIES[args.family]
    missing = [f"--{name}" for name in required if getattr(args, name) is None]
    if args.family.startswith("minmin") and "--eps" in missing:
        missing.remove("--eps")
    if missing:
        raise UsageError(f"{args.family} needs {', '.join(missing)}")
    kwargs = {name: getattr(args, name) for name in (*required, *optional) if getattr(args, name) is not None}
    if args.family.startswith("minmin") and "eps" not in kwargs:
        kwargs["eps"] = gen.minmin_default_eps(args.p, args.b, args.a or 0)
    return kwargs


def _plain_sequence(args: argparse.Namespace, settings: Settings) -> Sequence:
    seed = settings.default_seed
    if args.family == "uniform":
        if args.n is None:
            raise UsageError("uniform needs --n")
        return gen.uniform_sequence(args.n, seed)
    if args.l is not None or args.s is not None:
        counts = (args.l or 0, args.s or 0)
        total = sum(counts)
    elif args.n is not None:
        counts, total = None, args.n
    else:
        raise UsageError("two_size needs --n or --l/--s")
    eps = args.eps if args.eps is not None else gen.default_eps(Fraction(1, total) if total else Fraction(1))
    return gen.gen_two_size(None if counts else total, eps, seed, counts=counts)


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    sequence_path = out / f"{args.family}.txt"
    sidecar_path = out / f"{args.family}.certificate.json"

    if args.family in PLAIN_FAMILIES:
        seq = _plain_sequence(args, settings)
        model = FamilySchema(
            family=args.family,
            params={"seed": str(settings.default_seed)},
            scale_n=len(seq),
            length=len(seq),
            provenance=seq.provenance or "",
        )
    else:
        builder = FAMILIES[args.family][0]
        family = builder(**_family_kwargs(args))
        seq = family.seq
        model = family.to_model()

    write_sequence(seq, sequence_path)
    model.files = [str(sequence_path), str(sidecar_path)]
    payload = json.dumps(model.model_dump(mode="json"), indent=2, ensure_ascii=False)
    sidecar_path.write_text(payload + "\n", encoding="utf-8")
    logger.info(f"Wrote sidecar '{sidecar_path}'")

    rows = [{"label": c.subject, "kind": c.kind, "expected": c.expected, "observed": c.observed} for c in model.claims]
    return CommandResult(NAME, model, rows=rows or None)

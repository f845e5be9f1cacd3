from fractions import Fraction

import pytest

from app.core.markov import MarkovChain, expected_closes_per_item, is_irreducible, markov_stationary
from app.exceptions import BadParams, NotIrreducible

F = Fraction


def test_dnf_two_size_stationary():
    chain = MarkovChain.dnf_two_size()
    assert markov_stationary(chain) == {"N": F(2, 5), "L": F(1, 5), "S": F(2, 5)}
    assert expected_closes_per_item(chain) == F(2, 5)


def test_stationary_solves_balance_equations():
    chain = MarkovChain.dnf_two_size(F(1, 3))
    pi = markov_stationary(chain)
    assert sum(pi.values()) == 1
    for j, target in enumerate(chain.states):
        assert sum(pi[source] * chain.transition[i][j] for i, source in enumerate(chain.states)) == pi[target]


def test_single_state_chain():
    assert markov_stationary(MarkovChain(("a",), ((1,),))) == {"a": F(1)}


def test_symmetric_two_state_chain():
    chain = MarkovChain(("a", "b"), ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))))
    assert markov_stationary(chain) == {"a": F(1, 2), "b": F(1, 2)}


def test_reducible_chain():
    chain = MarkovChain(("a", "b"), ((1, 0), (0, 1)))
    assert not is_irreducible(chain)
    with pytest.raises(NotIrreducible):
        markov_stationary(chain)


def test_transient_state():
    chain = MarkovChain(("a", "b"), ((F(1, 2), F(1, 2)), (0, 1)))
    with pytest.raises(NotIrreducible):
        markov_stationary(chain)


@pytest.mark.parametrize(
    "states, rows",
    [
        (("a", "b"), ((F(1, 2), F(1, 3)), (0, 1))),
        (("a", "b"), ((2, -1), (0, 1))),
        (("a", "a"), ((1, 0), (0, 1))),
        (("a",), ((1, 0),)),
    ],
)
def test_invalid_chain(states, rows):
    with pytest.raises(BadParams):
        MarkovChain(states, rows)


def test_probability_range():
    with pytest.raises(BadParams):
        MarkovChain.dnf_two_size(1)

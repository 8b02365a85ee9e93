import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reeb_spectra.errors import InvalidLensParameters, InvalidSeifertInvariants, PreconditionViolated
from reeb_spectra.seifert import (
    _bounded_solution,
    NormalForm,
    SeifertInvariants,
    besse_realizable,
    equivalent,
    euler_number,
    lens_fibration_check,
    move_delete_trivial,
    move_insert_trivial,
    move_permute,
    move_transfer,
    normalize,
    reverse_orientation,
    singular_count_obstruction,
)

S = SeifertInvariants.of


def test_invariants_validation():
    with pytest.raises(InvalidSeifertInvariants):
        S(0, 2, 2)
    with pytest.raises(InvalidSeifertInvariants):
        S(0, 0, 1)
    with pytest.raises(InvalidSeifertInvariants):
        S(-1)
    with pytest.raises(InvalidSeifertInvariants):
        S(0, 2)
    assert S(0, 1, 0).pairs == ((1, 0),)
    assert S(2).pairs == ()


@pytest.mark.parametrize("s, e", [
    (S(0, 2, 1, 2, 1), F(1)),
    (S(0, 5, 2, 5, -2), F(0)),
    (S(0, 3, 2, 2, -1), F(1, 6)),
    (S(1), F(0)),
])
def test_euler_number_examples(s, e):
    assert euler_number(s) == e


@pytest.mark.parametrize("s, nf", [
    (S(0, 1, 0, 2, 1), NormalForm(0, 0, ((2, 1),))),
    (S(0, 2, 3), NormalForm(0, 1, ((2, 1),))),
    (S(0, 3, 2, 2, -1), NormalForm(0, -1, ((2, 1), (3, 2)))),
    (S(3), NormalForm(3, 0, ())),
])
def test_normalize_examples(s, nf):
    assert normalize(s) == nf
    assert nf.euler_number == euler_number(s)


def test_equivalent_examples():
    assert equivalent(S(0, 3, 2, 2, -1), S(0, 3, -1, 2, 1))
    assert not equivalent(S(0, 2, 1), S(0, 2, -1))
    assert not equivalent(S(0, 2, 1), S(1, 2, 1))


def test_reverse_examples():
    assert reverse_orientation(S(0, 2, 1)) == S(0, 2, -1)
    s = S(0, 5, 2, 5, -2)
    assert equivalent(s, reverse_orientation(s))


def test_besse_realizable_examples():
    assert besse_realizable(S(0, 2, 1, 2, 1))
    assert besse_realizable(S(0, 3, 2, 2, -1))
    assert not besse_realizable(S(0, 7, 3, 7, -3))
    assert not besse_realizable(S(0))


def test_moves_reject_misuse():
    s = S(0, 2, 1, 3, 1)
    with pytest.raises(ValueError):
        move_permute(s, [0, 0])
    with pytest.raises(ValueError):
        move_delete_trivial(s, 0)
    with pytest.raises(ValueError):
        move_transfer(s, 1, 1)


# -- properties --------------------------------------------------------------


@st.composite
def invariants(draw, max_pairs=5):
    genus = draw(st.integers(0, 3))
    n = draw(st.integers(0, max_pairs))
    pairs = []
    for _ in range(n):
        a = draw(st.integers(1, 12))
        b = draw(st.integers(-30, 30).filter(lambda b, a=a: math.gcd(a, b) == 1))
        pairs.append((a, b))
    return SeifertInvariants(genus, tuple(pairs))


@st.composite
def moved(draw, s):
    """Apply a random sequence of M1-M3 moves to s."""
    for _ in range(draw(st.integers(0, 8))):
        n = len(s.pairs)
        kind = draw(st.sampled_from(["permute", "insert", "delete", "transfer"]))
        if kind == "permute" and n:
            s = move_permute(s, draw(st.permutations(range(n))))
        elif kind == "insert":
            s = move_insert_trivial(s, draw(st.integers(0, n)))
        elif kind == "delete" and (1, 0) in s.pairs:
            s = move_delete_trivial(s, s.pairs.index((1, 0)))
        elif kind == "transfer" and n >= 2:
            i, j = draw(st.permutations(range(n)))[:2]
            s = move_transfer(s, i, j, draw(st.integers(-3, 3)))
    return s


@given(invariants(), st.data())
def test_normal_form_is_move_invariant(s, data):
    t = data.draw(moved(s))
    assert normalize(t) == normalize(s)
    assert euler_number(t) == euler_number(s)
    assert equivalent(s, t)


@given(invariants())
def test_normal_form_shape_and_idempotence(s):
    nf = normalize(s)
    assert nf.genus == s.genus
    assert list(nf.exceptional) == sorted(nf.exceptional)
    assert all(a >= 2 and 0 <= c < a and math.gcd(a, c) == 1 for a, c in nf.exceptional)
    assert normalize(nf.to_invariants()) == nf


@given(invariants())
def test_reverse_is_an_involution_negating_e(s):
    r = reverse_orientation(s)
    assert reverse_orientation(r) == s
    assert euler_number(r) == -euler_number(s)
    if equivalent(s, r):
        assert euler_number(s) == 0
    assert not (besse_realizable(s) and besse_realizable(r))


@given(st.integers(1, 15), st.integers(0, 15))
def test_symmetric_tuples_are_never_realizable(a, b):
    if math.gcd(a, b) != 1:
        return
    s = S(0, a, b, a, -b)
    assert euler_number(s) == 0
    assert not besse_realizable(s)
    assert equivalent(s, reverse_orientation(s))


# -- lens spaces -------------------------------------------------------------


def test_lens_examples():
    assert lens_fibration_check(0, 1, S(0, 2, 1, 2, -1))
    assert lens_fibration_check(5, 2, S(0, 3, 5))
    assert lens_fibration_check(4, 1, S(0, 2, 1, 6, 1))
    assert not lens_fibration_check(4, 1, S(0, 3, 1, 6, 1))
    assert not lens_fibration_check(0, 1, S(0, 2, 1, 2, 1))
    assert not lens_fibration_check(5, 2, S(1, 3, 5))
    assert not lens_fibration_check(5, 2, S(0, 2, 1, 3, 1, 5, 1))


def test_lens_rejects_bad_parameters():
    with pytest.raises(InvalidLensParameters):
        lens_fibration_check(4, 2, S(0, 2, 1))
    with pytest.raises(InvalidLensParameters):
        lens_fibration_check(-3, 1, S(0, 2, 1))


def single_fiber_oracle(p, q, s, bound):
    """Scan nonzero alpha in [-bound, bound] for an equivalent (0; alpha, p)."""
    for alpha in range(-bound, bound + 1):
        if alpha == 0 or math.gcd(alpha, p) != 1:
            continue
        t = S(0, abs(alpha), p if alpha > 0 else -p)
        if equivalent(s, t) and ((alpha - q) % p == 0 or (alpha * q - 1) % p == 0):
            return True
    return False


@given(st.integers(1, 12), st.integers(1, 8), st.integers(-24, 24), st.data())
def test_single_fiber_clause_matches_scan(p, a, b, data):
    q = data.draw(st.integers(0, 3 * p).filter(lambda q: math.gcd(p, q) == 1))
    if math.gcd(a, b) != 1:
        return
    s = S(0, a, b)
    # |e| >= 1/a so any matching alpha = p/e has |alpha| <= p*a
    assert lens_fibration_check(p, q, s) == single_fiber_oracle(p, q, s, p * a)


# -- obstruction -------------------------------------------------------------


def obstruction_scan(p, q, alpha, bound):
    n1 = p // alpha
    n2 = np.arange(-bound, bound + 1, dtype=np.int64)
    hit = ((1 + n1 * n2) * alpha == q) | ((q + n1 * n2) * alpha == 1)
    return not hit.any()


@pytest.mark.parametrize("p, q, alpha, bound", [
    (4, 1, 2, 100),
    (6, 5, 3, 100),
    (9, 2, 3, 1000),
])
def test_obstruction_examples(p, q, alpha, bound):
    assert singular_count_obstruction(p, q, alpha, bound)
    assert obstruction_scan(p, q, alpha, bound)


@pytest.mark.parametrize("args", [(1, 1, 2, 10), (4, 2, 2, 10), (6, 1, 4, 10), (6, 1, 1, 10), (6, 1, 2, -1)])
def test_obstruction_preconditions(args):
    with pytest.raises(PreconditionViolated):
        singular_count_obstruction(*args)


@given(st.integers(2, 40), st.integers(-60, 60), st.integers(-60, 60), st.integers(0, 200))
def test_bounded_solver_matches_scan_off_precondition(n1, q, alpha, bound):
    # The closed-form solver must agree with scanning even for (q, alpha)
    # outside the theorem, where solutions can exist.
    if alpha == 0:
        return
    n2 = np.arange(-bound, bound + 1, dtype=np.int64)
    assert _bounded_solution(1, n1, alpha, q, bound) == bool(((1 + n1 * n2) * alpha == q).any())
    assert _bounded_solution(q, n1, alpha, 1, bound) == bool(((q + n1 * n2) * alpha == 1).any())

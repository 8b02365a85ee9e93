"""Seifert invariants over closed orientable bases.

A tuple ``(g; a1,b1, ..., ar,br)`` is stored as ``SeifertInvariants(g,
((a1, b1), ..., (ar, br)))``.  Two tuples describe isomorphic fibrations
(orientation preserving) exactly when they are related by the moves

* M1: permute the pairs,
* M2: insert or delete a pair ``(1, 0)``,
* M3: ``b_i += a_i`` and ``b_j -= a_j`` for ``i != j``,

and the canonical representative is ``(g; 1,b, a1,c1, ..., ak,ck)`` with every
``a_i >= 2`` and ``0 <= c_i < a_i``, the exceptional pairs sorted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidLensParameters, InvalidSeifertInvariants, PreconditionViolated


@dataclass(frozen=True)
class SeifertInvariants:
    genus: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InvalidSeifertInvariants(f"genus must be a natural number, got {self.genus!r}",
                                           path="genus")
        for i, (a, b) in enumerate(pairs):
            if a < 1:
                raise InvalidSeifertInvariants(f"multiplicity {a} < 1", path=f"pairs[{i}]")
            if math.gcd(a, b) != 1:
                raise InvalidSeifertInvariants(f"pair ({a}, {b}) is not coprime", path=f"pairs[{i}]")

    @classmethod
    def of(cls, genus: int, *flat: int) -> "SeifertInvariants":
        """``SeifertInvariants.of(0, 3, 2, 2, -1)`` is ``(0; 3,2, 2,-1)``."""
        if len(flat) % 2:
            raise InvalidSeifertInvariants("odd number of pair entries")
        return cls(genus, tuple(zip(flat[::2], flat[1::2])))

    @property
    def exceptional(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for p in self.pairs if p[0] >= 2)

    def __str__(self):
        body = ", ".join(f"{a},{b}" for a, b in self.pairs)
        return f"({self.genus}; {body})" if body else f"({self.genus};)"


@dataclass(frozen=True)
class NormalForm:
    genus: int
    b: int
    exceptional: tuple[tuple[int, int], ...]

    @property
    def euler_number(self) -> Fraction:
        return self.b + sum((Fraction(c, a) for a, c in self.exceptional), Fraction(0))

    def to_invariants(self) -> SeifertInvariants:
        return SeifertInvariants(self.genus, ((1, self.b),) + self.exceptional)


def euler_number(s: SeifertInvariants) -> Fraction:
    return sum((Fraction(b, a) for a, b in s.pairs), Fraction(0))


def normalize(s: SeifertInvariants) -> NormalForm:
    exceptional = tuple(sorted((a, b % a) for a, b in s.pairs if a >= 2))
    rest = euler_number(s) - sum((Fraction(c, a) for a, c in exceptional), Fraction(0))
    assert rest.denominator == 1
    return NormalForm(s.genus, int(rest), exceptional)


def equivalent(s1: SeifertInvariants, s2: SeifertInvariants) -> bool:
    return normalize(s1) == normalize(s2)


def reverse_orientation(s: SeifertInvariants) -> SeifertInvariants:
    return SeifertInvariants(s.genus, tuple((a, -b) for a, b in s.pairs))


def besse_realizable(s: SeifertInvariants) -> bool:
    """Necessary condition for s to come from a Besse contact form: e > 0."""
    return euler_number(s) > 0


# -- moves ------------------------------------------------------------------


def move_permute(s: SeifertInvariants, order: Sequence[int]) -> SeifertInvariants:
    if sorted(order) != list(range(len(s.pairs))):
        raise ValueError("order must be a permutation of the pair indices")
    return SeifertInvariants(s.genus, tuple(s.pairs[i] for i in order))


def move_insert_trivial(s: SeifertInvariants, index: int) -> SeifertInvariants:
    pairs = list(s.pairs)
    pairs.insert(index, (1, 0))
    return SeifertInvariants(s.genus, tuple(pairs))


def move_delete_trivial(s: SeifertInvariants, index: int) -> SeifertInvariants:
    if s.pairs[index] != (1, 0):
        raise ValueError(f"pair {index} is not (1, 0)")
    return SeifertInvariants(s.genus, s.pairs[:index] + s.pairs[index + 1:])


def move_transfer(s: SeifertInvariants, i: int, j: int, k: int = 1) -> SeifertInvariants:
    """``b_i += k*a_i`` and ``b_j -= k*a_j``."""
    if i == j:
        raise ValueError("transfer needs two distinct pairs")
    pairs = list(s.pairs)
    ai, bi = pairs[i]
    aj, bj = pairs[j]
    pairs[i] = (ai, bi + k * ai)
    pairs[j] = (aj, bj - k * aj)
    return SeifertInvariants(s.genus, tuple(pairs))


# -- lens spaces ------------------------------------------------------------


def _is_s2_x_s1_shape(nf: NormalForm) -> bool:
    # (0; a,b, a,-b) normalizes to b = 0 with no exceptional pair when a = 1,
    # else to two pairs (a, c), (a, a - c) and b = -1.
    if nf.genus != 0 or nf.euler_number != 0:
        return False
    if not nf.exceptional:
        return nf.b == 0
    if len(nf.exceptional) != 2:
        return False
    (a1, c1), (a2, c2) = nf.exceptional
    return a1 == a2 and c1 + c2 == a1


def lens_fibration_check(p: int, q: int, s: SeifertInvariants) -> bool:
    """Whether ``s`` passes the known constraints on Seifert fibrations of
    ``L(p, q)`` over the sphere.

    For two singular fibers only ``gcd(a1, a2) | p`` is checked; the
    constraints on the b's are not available in closed form.
    """
    if p < 0:
        raise InvalidLensParameters(f"p must be non-negative, got {p}", path="p")
    if math.gcd(p, q) != 1:
        raise InvalidLensParameters(f"gcd({p}, {q}) != 1", path="q")
    nf = normalize(s)
    if nf.genus != 0 or len(nf.exceptional) > 2:
        return False
    if p == 0:
        return _is_s2_x_s1_shape(nf)
    if len(nf.exceptional) == 2:
        (a1, _), (a2, _) = nf.exceptional
        return p % math.gcd(a1, a2) == 0
    # At most one singular fiber: s must be (0; alpha, p) for a nonzero
    # integer alpha, which then has Euler number p/alpha.
    e = nf.euler_number
    if e == 0:
        return False
    alpha = Fraction(p) / e
    if alpha.denominator != 1:
        return False
    alpha = int(alpha)
    if math.gcd(alpha, p) != 1:
        return False
    sgn = 1 if alpha > 0 else -1
    if normalize(SeifertInvariants(0, ((abs(alpha), sgn * p),))) != nf:
        return False
    return (alpha - q) % p == 0 or (alpha * q - 1) % p == 0


def _bounded_solution(c: int, n1: int, alpha: int, target: int, bound: int) -> bool:
    # Is there n2 with |n2| <= bound and (c + n1*n2)*alpha == target?
    if target % alpha:
        return False
    diff = target // alpha - c
    if diff % n1:
        return False
    return abs(diff // n1) <= bound


def singular_count_obstruction(p: int, q: int, alpha: int, search_bound: int) -> bool:
    """True iff no ``|n2| <= search_bound`` solves ``(1 + n1*n2)*alpha == q`` or
    ``(q + n1*n2)*alpha == 1`` where ``n1 = p // alpha``.

    The equations are linear in ``n2`` so each is solved exactly rather than
    scanned.
    """
    if p <= 1:
        raise PreconditionViolated(f"p must exceed 1, got {p}", path="p")
    if math.gcd(p, q) != 1:
        raise PreconditionViolated(f"gcd({p}, {q}) != 1", path="q")
    if alpha <= 1 or p % alpha:
        raise PreconditionViolated(f"alpha must be > 1 and divide p, got {alpha}", path="alpha")
    if search_bound < 0:
        raise PreconditionViolated("search_bound must be a natural number", path="bound")
    n1 = p // alpha
    return not (_bounded_solution(1, n1, alpha, q, search_bound)
                or _bounded_solution(q, n1, alpha, 1, search_bound))

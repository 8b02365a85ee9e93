"""Filtered ECH generators on ellipsoid boundaries.

The boundary of E(a, b) has two simple elliptic orbits of actions ``a`` and
``b``, so orbit sets are pairs ``(m, n)`` of multiplicities with action
``m*a + n*b``.  ``N_k(a, b)`` is the (k+1)-th smallest such action counted
with multiplicity; the U map acts on the sequence as the index shift
``k + 1 -> k``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidOrbitSet, InvalidSpectrum
from .qlinear import (
    ZERO,
    BasisRegistry,
    Interval,
    Ordering,
    QLinearValue,
    compare,
    evaluate,
    rational_ratio,
    sign,
)


@dataclass(frozen=True)
class OrbitSetEntry:
    multiplicity: int
    action: QLinearValue
    hyperbolic: bool = False


@dataclass(frozen=True)
class OrbitSet:
    entries: tuple[OrbitSetEntry, ...] = ()
    registry: BasisRegistry | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for i, e in enumerate(self.entries):
            if e.multiplicity < 1:
                raise InvalidOrbitSet(f"multiplicity {e.multiplicity} < 1", path=f"entries[{i}]")
            if e.hyperbolic and e.multiplicity != 1:
                raise InvalidOrbitSet("hyperbolic orbits carry multiplicity 1",
                                      path=f"entries[{i}]")
            if e.action in seen:
                raise InvalidOrbitSet("orbits in an orbit set must be distinct",
                                      path=f"entries[{i}]")
            seen.add(e.action)
            if self.registry is not None and sign(e.action, self.registry) is not Ordering.GREATER:
                raise InvalidOrbitSet("orbit actions must be positive", path=f"entries[{i}]")


def orbit_set_action(os: OrbitSet) -> QLinearValue:
    total = ZERO
    for e in os.entries:
        total = total + e.action * e.multiplicity
    return total


def _float_enclosure(x: QLinearValue, registry: BasisRegistry) -> tuple[float, float]:
    iv = evaluate(x, registry)
    return (math.nextafter(float(iv.lo), -math.inf), math.nextafter(float(iv.hi), math.inf))


class _LatticeKey:
    """Heap entry for ``m*a + n*b`` ordered by a float enclosure, falling
    back to exact comparison when enclosures overlap."""

    __slots__ = ("m", "n", "lo", "hi", "spec")

    def __init__(self, m: int, n: int, spec: "EchSpectrum"):
        self.m, self.n, self.spec = m, n, spec
        a_lo, a_hi, b_lo, b_hi = spec._float_ab
        lo = m * a_lo + n * b_lo
        hi = m * a_hi + n * b_hi
        slack = (abs(m * a_hi) + abs(n * b_hi)) * 1e-15 + 1e-300
        self.lo, self.hi = lo - slack, hi + slack

    def value(self) -> QLinearValue:
        return self.spec.a * self.m + self.spec.b * self.n

    def __lt__(self, other: "_LatticeKey") -> bool:
        if self.hi < other.lo:
            return True
        if other.hi < self.lo:
            return False
        return compare(self.value(), other.value(), self.spec.registry) is Ordering.LESS


class EchSpectrum:
    """Lazily extended sequence ``N_0 <= N_1 <= ...`` for E(a, b).

    Instances own mutable enumeration state and must not be extended from
    two threads at once.
    """

    def __init__(self, a: QLinearValue, b: QLinearValue, registry: BasisRegistry | None = None):
        self.registry = registry if registry is not None else BasisRegistry()
        for name, v in (("a", a), ("b", b)):
            if sign(v, self.registry) is not Ordering.GREATER:
                raise InvalidSpectrum(f"{name} must be positive", path=name)
        self.a, self.b = a, b
        self._lattice: list[tuple[int, int]] = []
        r = rational_ratio(b, a)
        if r is not None:
            # a = wa*t, b = wb*t with coprime integer weights
            self._weights: tuple[int, int] | None = (r.denominator, r.numerator)
            self._unit = a / r.denominator
            self._heap: list = [(0, 0, 0)]
        else:
            self._weights = None
            self._float_ab = _float_enclosure(a, self.registry) + _float_enclosure(b, self.registry)
            self._heap = [_LatticeKey(0, 0, self)]

    @property
    def rational(self) -> bool:
        return self._weights is not None

    def _extend(self, count: int) -> None:
        heap, lattice = self._heap, self._lattice
        if self._weights is not None:
            wa, wb = self._weights
            while len(lattice) < count:
                _, n, m = heapq.heappop(heap)
                lattice.append((m, n))
                heapq.heappush(heap, ((m + 1) * wa + n * wb, n, m + 1))
                if m == 0:
                    heapq.heappush(heap, ((n + 1) * wb, n + 1, 0))
        else:
            while len(lattice) < count:
                key = heapq.heappop(heap)
                m, n = key.m, key.n
                lattice.append((m, n))
                heapq.heappush(heap, _LatticeKey(m + 1, n, self))
                if m == 0:
                    heapq.heappush(heap, _LatticeKey(0, n + 1, self))

    def generators(self, k_max: int) -> list[tuple[int, int]]:
        """Orbit sets ``(m, n)`` realizing ``N_0 .. N_k_max`` in order."""
        if k_max < 0:
            raise ValueError("k_max must be non-negative")
        self._extend(k_max + 1)
        return self._lattice[: k_max + 1]

    def _value(self, m: int, n: int) -> QLinearValue:
        if self._weights is not None:
            wa, wb = self._weights
            return self._unit * (m * wa + n * wb)
        return self.a * m + self.b * n

    def __getitem__(self, k: int) -> QLinearValue:
        m, n = self.generators(k)[k]
        return self._value(m, n)

    def values(self, k_max: int) -> list[QLinearValue]:
        return [self._value(m, n) for m, n in self.generators(k_max)]

    def integer_actions(self, k_max: int) -> list[int] | None:
        """``N_k / t`` as integers when ``a = wa*t`` and ``b = wb*t``."""
        if self._weights is None:
            return None
        wa, wb = self._weights
        return [m * wa + n * wb for m, n in self.generators(k_max)]


def filtered_generator_count(a: QLinearValue, b: QLinearValue, level: QLinearValue,
                             registry: BasisRegistry | None = None) -> int:
    """Number of orbit sets ``(m, n)`` with action ``m*a + n*b <= level``."""
    reg = registry if registry is not None else BasisRegistry()
    for name, v in (("a", a), ("b", b)):
        if sign(v, reg) is not Ordering.GREATER:
            raise InvalidSpectrum(f"{name} must be positive", path=name)
    if sign(level, reg) is Ordering.LESS:
        return 0
    r = rational_ratio(b, a)
    s = rational_ratio(level, a)
    if r is not None and s is not None:
        count, n = 0, 0
        while n * r <= s:
            count += math.floor(s - n * r) + 1
            n += 1
        return count
    count, n = 0, 0
    a_mid = float(evaluate(a, reg))
    while True:
        rest = level - b * n
        if sign(rest, reg) is Ordering.LESS:
            return count
        m = max(int(float(evaluate(rest, reg)) / a_mid), 0)
        while m > 0 and compare(a * m, rest, reg) is Ordering.GREATER:
            m -= 1
        while compare(a * (m + 1), rest, reg) is not Ordering.GREATER:
            m += 1
        count += m + 1
        n += 1


def ech_spectrum_values(a: QLinearValue, b: QLinearValue, k_max: int,
                        registry: BasisRegistry | None = None) -> list[QLinearValue]:
    return EchSpectrum(a, b, registry).values(k_max)


def first_gap_collision(a: QLinearValue, b: QLinearValue, k_max: int,
                        registry: BasisRegistry | None = None) -> int | None:
    """Smallest ``k < k_max`` with ``N_{k+1} == N_k``, if any."""
    spec = EchSpectrum(a, b, registry)
    if k_max < 1:
        return None
    ints = spec.integer_actions(k_max)
    if ints is not None:
        for k in range(k_max):
            if ints[k] == ints[k + 1]:
                return k
        return None
    vals = spec.values(k_max)
    for k in range(k_max):
        if vals[k] == vals[k + 1]:
            return k
    return None


def sublinearity_profile(a: QLinearValue, b: QLinearValue, checkpoints: Sequence[int],
                         registry: BasisRegistry | None = None) -> list[Interval]:
    """Enclosures of ``N_k / k`` at each checkpoint."""
    checkpoints = list(checkpoints)
    if not checkpoints or checkpoints[0] < 1 or any(
            x >= y for x, y in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly increasing and >= 1")
    spec = EchSpectrum(a, b, registry)
    spec.generators(checkpoints[-1])
    return [evaluate(spec[k], spec.registry) / Interval.point(k) for k in checkpoints]


def is_strictly_decreasing(profile: Sequence[Interval]) -> bool:
    return all(later.strictly_below(earlier) for earlier, later in zip(profile, profile[1:]))


def volume_asymptotic_ratio(a: QLinearValue, b: QLinearValue, k: int,
                            registry: BasisRegistry | None = None) -> Interval:
    """Enclosure of ``N_k**2 / (2*a*b*k)``.

    Counting lattice points below level L gives about ``L**2 / (2ab)``, so
    the ratio tends to 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    spec = EchSpectrum(a, b, registry)
    n_k = evaluate(spec[k], spec.registry)
    denom = evaluate(a, spec.registry) * evaluate(b, spec.registry) * Interval.point(2 * k)
    return (n_k * n_k) / denom


def level_of(values: Sequence[QLinearValue], k: int, a: QLinearValue, b: QLinearValue,
             registry: BasisRegistry | None = None) -> QLinearValue:
    """``min{L in values : filtered_generator_count(a, b, L) >= k + 1}``.

    The second characterization of ``N_k``; quadratic, for cross-checks.
    """
    reg = registry if registry is not None else BasisRegistry()
    best = None
    for v in set(values):
        if filtered_generator_count(a, b, v, reg) >= k + 1:
            if best is None or compare(v, best, reg) is Ordering.LESS:
                best = v
    if best is None:
        raise ValueError(f"no level in the given values reaches {k + 1} generators")
    return best

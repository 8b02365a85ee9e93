"""Prime action spectra and the decisions that read off Besse/Zoll from them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InvalidSpectrum
from .qlinear import (
    BasisRegistry,
    Ordering,
    QLinearValue,
    compare,
    rank,
    rational_gcd,
    rational_lcm,
    rational_ratio,
    sign,
    sort_values,
)


class PrimeSpectrum:
    """Finite set of minimal periods, kept sorted increasingly.

    Duplicates are removed by exact coefficient equality only.
    """

    __slots__ = ("elements", "registry")

    def __init__(self, elements: Iterable[QLinearValue], registry: BasisRegistry | None = None):
        registry = registry if registry is not None else BasisRegistry()
        unique = list(dict.fromkeys(elements))
        if not unique:
            raise InvalidSpectrum("a prime spectrum must be nonempty")
        for i, v in enumerate(unique):
            if not isinstance(v, QLinearValue):
                raise InvalidSpectrum(f"element {i} is not a QLinearValue", path=f"spectrum[{i}]")
            if sign(v, registry) is not Ordering.GREATER:
                raise InvalidSpectrum(f"element {v!r} is not positive", path=f"spectrum[{i}]")
        self.elements: tuple[QLinearValue, ...] = tuple(sort_values(unique, registry))
        self.registry = registry

    @classmethod
    def of_rationals(cls, *qs) -> "PrimeSpectrum":
        return cls([QLinearValue.rational(q) for q in qs])

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if isinstance(other, PrimeSpectrum):
            return set(self.elements) == set(other.elements)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.elements))

    def __repr__(self):
        return f"PrimeSpectrum({list(self.elements)!r})"


class Verdict(enum.Enum):
    BESSE = "Besse"
    NOT_BESSE = "NotBesse"


@dataclass(frozen=True)
class BesseVerdict:
    verdict: Verdict
    witness: QLinearValue | None = None

    def __post_init__(self):
        if (self.witness is not None) != (self.verdict is Verdict.BESSE):
            raise ValueError("a witness is present exactly for Besse verdicts")

    @property
    def is_besse(self) -> bool:
        return self.verdict is Verdict.BESSE


def spectrum_rank(sp: PrimeSpectrum) -> int:
    return rank(sp.elements)


def _ratios(sp: PrimeSpectrum) -> tuple[QLinearValue, list[Fraction]] | None:
    ref = sp.elements[0]
    ratios = []
    for v in sp.elements:
        q = rational_ratio(v, ref)
        if q is None:
            return None
        ratios.append(q)
    return ref, ratios


def common_period(sp: PrimeSpectrum) -> QLinearValue | None:
    """Least T > 0 that is an integer multiple of every element."""
    found = _ratios(sp)
    if found is None:
        return None
    ref, ratios = found
    return ref * rational_lcm(ratios)


def rank_one_witness(sp: PrimeSpectrum) -> QLinearValue | None:
    """Largest T with every element in ``{nT : n >= 1}``."""
    found = _ratios(sp)
    if found is None:
        return None
    ref, ratios = found
    return ref * rational_gcd(ratios)


def besse_verdict(sp: PrimeSpectrum) -> BesseVerdict:
    if spectrum_rank(sp) != 1:
        return BesseVerdict(Verdict.NOT_BESSE)
    return BesseVerdict(Verdict.BESSE, common_period(sp))


def is_zoll(sp: PrimeSpectrum) -> bool:
    return len(sp.elements) == 1


def enumerate_action_spectrum(sp: PrimeSpectrum, cutoff: QLinearValue) -> list[QLinearValue]:
    """All multiples ``n*t`` (n >= 1, t in sp) not exceeding ``cutoff``, sorted."""
    reg = sp.registry
    if sign(cutoff, reg) is not Ordering.GREATER:
        raise InvalidSpectrum("cutoff must be positive", path="cutoff")
    found: set[QLinearValue] = set()
    for t in sp.elements:
        n = 1
        while True:
            v = t * n
            if compare(v, cutoff, reg) is Ordering.GREATER:
                break
            found.add(v)
            n += 1
    return sort_values(found, reg)


class MetricClass(enum.Enum):
    GENERAL = "General"
    REVERSIBLE = "Reversible"
    RIEMANNIAN = "Riemannian"


@dataclass(frozen=True)
class FinslerConclusion:
    """What the length-spectrum rank licenses about a closed Finsler surface.

    ``None`` means no conclusion either way.
    """

    surface: str | None
    besse: bool | None
    zoll: bool | None
    constant_curvature: bool | None


def finsler_conclusion(orientable: bool, metric_class: MetricClass | str, rank: int) -> FinslerConclusion:
    metric_class = MetricClass(metric_class)
    if rank < 1:
        raise ValueError("a length spectrum has rank at least 1")
    if rank >= 2:
        return FinslerConclusion(surface=None, besse=False, zoll=False, constant_curvature=None)
    if orientable:
        # Riemannian metrics are reversible.
        zoll = True if metric_class is not MetricClass.GENERAL else None
        return FinslerConclusion(surface="S2", besse=True, zoll=zoll, constant_curvature=None)
    if metric_class is MetricClass.RIEMANNIAN:
        return FinslerConclusion(surface="RP2", besse=True, zoll=True, constant_curvature=True)
    return FinslerConclusion(surface="RP2", besse=True, zoll=None, constant_curvature=None)

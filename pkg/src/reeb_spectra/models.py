"""Presentations of Besse Reeb flows and of ellipsoid boundaries."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidModel, ManifoldMismatch, NotBesse
from .qlinear import (
    BasisRegistry,
    Ordering,
    QLinearValue,
    compare,
    max_value,
    rational_lcm,
    rational_ratio,
    sign,
)
from .seifert import SeifertInvariants, besse_realizable, euler_number
from .spectra import PrimeSpectrum, spectrum_rank


@dataclass(frozen=True)
class BesseModel:
    """A Besse Reeb flow given by its Seifert fibration and minimal common
    period ``tau``.  ``manifold_label`` is the caller's claim about the
    underlying 3-manifold and is never checked."""

    manifold_label: str
    tau: QLinearValue
    seifert: SeifertInvariants
    registry: BasisRegistry = field(default_factory=BasisRegistry, compare=False)

    def __post_init__(self):
        if not self.manifold_label:
            raise InvalidModel("manifold_label must be non-empty", path="manifold")
        if sign(self.tau, self.registry) is not Ordering.GREATER:
            raise InvalidModel("tau must be positive", path="tau")
        if not besse_realizable(self.seifert):
            raise InvalidModel(
                f"Seifert invariants {self.seifert} have Euler number "
                f"{euler_number(self.seifert)} <= 0", path="seifert")
        # tau is the least common multiple of the fiber periods tau/alpha_j
        # measured in units of tau; anything else means tau is not minimal.
        if rational_lcm([1] + [Fraction(1, a) for a, _ in self.seifert.pairs]) != 1:
            raise InvalidModel("tau is not the minimal common period", path="tau")


@dataclass(frozen=True)
class EllipsoidModel:
    """Boundary of E(a, b); stored with ``a <= b``."""

    a: QLinearValue
    b: QLinearValue
    registry: BasisRegistry = field(default_factory=BasisRegistry, compare=False)

    def __post_init__(self):
        for name in ("a", "b"):
            if sign(getattr(self, name), self.registry) is not Ordering.GREATER:
                raise InvalidModel(f"{name} must be positive", path=name)
        if compare(self.a, self.b, self.registry) is Ordering.GREATER:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @classmethod
    def of(cls, a, b) -> "EllipsoidModel":
        return cls(QLinearValue.rational(a), QLinearValue.rational(b))


@dataclass(frozen=True)
class MultiplicityStrata:
    """Counts of exceptional fibers per multiplicity; the regular stratum
    (multiplicity 1) is always present."""

    exceptional: dict[int, int]

    @property
    def support(self) -> tuple[int, ...]:
        return (1,) + tuple(sorted(self.exceptional))


def model_prime_spectrum(m: BesseModel) -> PrimeSpectrum:
    periods = [m.tau] + [m.tau / a for a, _ in m.seifert.exceptional]
    return PrimeSpectrum(periods, m.registry)


def multiplicity_strata(m: BesseModel) -> MultiplicityStrata:
    return MultiplicityStrata(dict(sorted(Counter(a for a, _ in m.seifert.exceptional).items())))


def ellipsoid_prime_spectrum(e: EllipsoidModel) -> PrimeSpectrum:
    r = rational_ratio(e.b, e.a)
    if r is None:
        return PrimeSpectrum([e.a, e.b], e.registry)
    return PrimeSpectrum([e.a, e.b, e.a * rational_lcm([1, r])], e.registry)


def ellipsoid_is_besse(e: EllipsoidModel) -> bool:
    return rational_ratio(e.b, e.a) is not None


def ellipsoid_to_besse_model(e: EllipsoidModel) -> BesseModel:
    """Seifert presentation of the Besse flow on the boundary of E(a, b).

    With ``a = p*t``, ``b = q*t`` and ``gcd(p, q) = 1`` the flow has period
    ``p*q*t`` and invariants ``(0; q,b1, p,b2)`` where ``p*b1 + q*b2 = 1`` and
    ``0 <= b1 < q``; pairs ``(1, 0)`` are dropped.
    """
    r = rational_ratio(e.a, e.b)
    if r is None:
        raise NotBesse("E(a, b) with irrational b/a is not Besse", path="ellipsoid")
    p, q = r.numerator, r.denominator
    t = e.a / p
    b1 = pow(p, -1, q) if q > 1 else 0
    b2 = (1 - p * b1) // q
    pairs = tuple(pair for pair in ((q, b1), (p, b2)) if pair != (1, 0))
    return BesseModel("S3", t * (p * q), SeifertInvariants(0, pairs), e.registry)


def besse_forms_equivalent(m1: BesseModel, m2: BesseModel) -> bool:
    if m1.manifold_label != m2.manifold_label:
        raise ManifoldMismatch(
            f"models live on {m1.manifold_label!r} and {m2.manifold_label!r}", path="model")
    return model_prime_spectrum(m1) == model_prime_spectrum(m2)


@dataclass(frozen=True)
class Reconstruction:
    tau: QLinearValue
    multiplicities: frozenset[int]


def reconstruct_multiplicities(sp: PrimeSpectrum) -> Reconstruction | None:
    """Recover ``tau`` and the set of exceptional multiplicities from a
    spectrum of the form ``{tau, tau/a_1, ..., tau/a_s}``."""
    if spectrum_rank(sp) != 1:
        return None
    tau = max_value(sp.elements, sp.registry)
    alphas = set()
    for v in sp.elements:
        r = rational_ratio(tau, v)
        if r is None or r.denominator != 1:
            return None
        if v != tau:
            alphas.add(int(r))
    return Reconstruction(tau, frozenset(alphas))

"""Exact arithmetic on rational combinations of declared basis reals.

A value is a finitely supported map ``symbol -> Fraction``.  The reserved
symbol ``"1"`` is the rational unit; every other symbol must be declared in
a :class:`BasisRegistry` together with a decimal approximation.  The
registry *asserts* that its symbols (plus the unit) are linearly independent
over Q; nothing here tries to verify that.

Equality is always decided on coefficients.  Ordering of unequal values goes
through outward-rounded interval evaluation, first in floats and then with
exact rationals at increasing decimal precision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal, InvalidOperation
from fractions import Fraction
from functools import cmp_to_key, reduce
from numbers import Rational
from typing import Iterable, Mapping

from .errors import (
    DivisionByZero,
    IndistinguishableAtPrecision,
    InvalidRegistry,
    NonPositiveInput,
    RegistryMismatch,
)

UNIT = "1"


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def as_fraction(q) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(q, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(q, (Fraction, int)):
        return Fraction(q)
    if isinstance(q, Rational):
        return Fraction(q.numerator, q.denominator)
    if isinstance(q, str):
        try:
            return Fraction(q.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {q!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(q).__name__}")


@dataclass(frozen=True)
class Interval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q) -> "Interval":
        q = as_fraction(q)
        return cls(q, q)

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0 <= other.hi:
            raise DivisionByZero("interval divisor contains zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def strictly_below(self, other: "Interval") -> bool:
        return self.hi < other.lo


# -- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class BasisSymbol:
    """A declared irrational basis real.

    ``approx`` is trusted to within one unit of its last written digit.
    ``precision_digits`` is the number of significant digits used for the
    first interval evaluation; refinement doubles it.
    """

    symbol: str
    approx: str
    precision_digits: int


def _round_sig(value: Decimal, digits: int, rounding: str) -> Fraction:
    return Fraction(Context(prec=digits, rounding=rounding).plus(value))


def _float_down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _float_up(x: float) -> float:
    return math.nextafter(x, math.inf)


@dataclass(frozen=True)
class BasisRegistry:
    entries: tuple[BasisSymbol, ...] = ()
    max_precision_digits: int | None = None
    _exact: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _floats: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _bounds_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.max_precision_digits is not None and self.max_precision_digits < 1:
            raise InvalidRegistry("max_precision_digits must be positive")
        for entry in self.entries:
            name = entry.symbol
            if not isinstance(name, str) or not name or name == UNIT:
                raise InvalidRegistry(f"invalid basis symbol {name!r}", path="registry")
            if name in self._exact:
                raise InvalidRegistry(f"duplicate basis symbol {name!r}", path="registry")
            if not isinstance(entry.precision_digits, int) or entry.precision_digits < 1:
                raise InvalidRegistry(f"precision_digits of {name!r} must be a positive integer",
                                      path="registry")
            try:
                dec = Decimal(entry.approx)
            except (InvalidOperation, TypeError) as exc:
                raise InvalidRegistry(f"approximation of {name!r} is not a decimal",
                                      path="registry") from exc
            if not dec.is_finite():
                raise InvalidRegistry(f"approximation of {name!r} is not finite", path="registry")
            ulp = Fraction(10) ** dec.as_tuple().exponent
            center = Fraction(dec)
            if center - ulp <= 0:
                raise InvalidRegistry(f"approximation of {name!r} is not certifiably positive",
                                      path="registry")
            self._exact[name] = (dec, center, ulp)
        for name in self._exact:
            capped = self.symbol_bounds(name, self._cap(name))
            self._floats[name] = (_float_down(float(capped.lo)), _float_up(float(capped.hi)))

    @classmethod
    def of(cls, *symbols: tuple[str, str, int], max_precision_digits: int | None = None):
        """Shorthand: ``BasisRegistry.of(("s", "1.41421356", 8))``."""
        return cls(tuple(BasisSymbol(*s) for s in symbols), max_precision_digits)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(e.symbol for e in self.entries)

    def entry(self, symbol: str) -> BasisSymbol:
        for e in self.entries:
            if e.symbol == symbol:
                return e
        raise RegistryMismatch(f"symbol {symbol!r} is not declared in the registry")

    def with_max_precision(self, digits: int | None) -> "BasisRegistry":
        return BasisRegistry(self.entries, digits)

    def check(self, value: "QLinearValue") -> None:
        for sym in value.support:
            if sym != UNIT and sym not in self._exact:
                raise RegistryMismatch(f"symbol {sym!r} is not declared in the registry")

    def _cap(self, symbol: str) -> int:
        declared = self.entry(symbol).precision_digits
        if self.max_precision_digits is not None:
            return self.max_precision_digits
        return 4 * declared

    def symbol_bounds(self, symbol: str, digits: int) -> Interval:
        """Outward interval for ``symbol`` using its approximation rounded
        to ``digits`` significant digits."""
        key = (symbol, digits)
        hit = self._bounds_cache.get(key)
        if hit is not None:
            return hit
        dec, _, ulp = self._exact[symbol]
        lo = _round_sig(dec, digits, ROUND_FLOOR) - ulp
        hi = _round_sig(dec, digits, ROUND_CEILING) + ulp
        bounds = Interval(lo, hi)
        self._bounds_cache[key] = bounds
        return bounds


# -- values -----------------------------------------------------------------


class QLinearValue:
    """Immutable element of the Q-span of ``{1} ∪ registry symbols``."""

    __slots__ = ("_items", "_hash")

    def __init__(self, coeffs: Mapping[str, object] | Iterable[tuple[str, object]] = ()):
        items: dict[str, Fraction] = {}
        pairs = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for sym, c in pairs:
            if not isinstance(sym, str) or not sym:
                raise TypeError(f"basis symbol must be a non-empty string, got {sym!r}")
            c = as_fraction(c)
            total = items.get(sym, Fraction(0)) + c
            if total:
                items[sym] = total
            else:
                items.pop(sym, None)
        self._items = tuple(sorted(items.items()))
        self._hash = hash(self._items)

    @classmethod
    def rational(cls, q) -> "QLinearValue":
        return cls({UNIT: as_fraction(q)})

    @classmethod
    def symbol(cls, name: str, coeff=1) -> "QLinearValue":
        return cls({name: as_fraction(coeff)})

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self._items)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self._items)

    def coeff(self, symbol: str) -> Fraction:
        for s, c in self._items:
            if s == symbol:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._items

    def as_rational(self) -> Fraction | None:
        if not self._items:
            return Fraction(0)
        if len(self._items) == 1 and self._items[0][0] == UNIT:
            return self._items[0][1]
        return None

    def __add__(self, other):
        if not isinstance(other, QLinearValue):
            return NotImplemented
        return QLinearValue(self._items + other._items)

    def __sub__(self, other):
        if not isinstance(other, QLinearValue):
            return NotImplemented
        return QLinearValue(self._items + tuple((s, -c) for s, c in other._items))

    def __neg__(self):
        return QLinearValue((s, -c) for s, c in self._items)

    def __mul__(self, q):
        if isinstance(q, (float, QLinearValue)):
            return NotImplemented
        q = as_fraction(q)
        return QLinearValue((s, c * q) for s, c in self._items)

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, (float, QLinearValue)):
            return NotImplemented
        q = as_fraction(q)
        if not q:
            raise DivisionByZero("division of a value by zero")
        return QLinearValue((s, c / q) for s, c in self._items)

    def __eq__(self, other):
        if isinstance(other, QLinearValue):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self._items:
            return "QLinearValue(0)"
        terms = []
        for s, c in self._items:
            terms.append(str(c) if s == UNIT else (s if c == 1 else f"{c}*{s}"))
        return f"QLinearValue({' + '.join(terms)})"


ZERO = QLinearValue()
ONE = QLinearValue.rational(1)


# -- evaluation and ordering ------------------------------------------------


def evaluate(x: QLinearValue, registry: BasisRegistry, digits: int | None = None) -> Interval:
    """Exact interval enclosing ``x``.  ``digits`` defaults to the cap."""
    registry.check(x)
    lo = hi = Fraction(0)
    for sym, c in x._items:
        if sym == UNIT:
            lo += c
            hi += c
            continue
        b = registry.symbol_bounds(sym, digits if digits is not None else registry._cap(sym))
        if c > 0:
            lo += c * b.lo
            hi += c * b.hi
        else:
            lo += c * b.hi
            hi += c * b.lo
    return Interval(lo, hi)


def _float_sign(d: QLinearValue, registry: BasisRegistry) -> int:
    """Sign of ``d`` from a float enclosure; 0 when undecided."""
    lo = hi = 0.0
    for sym, c in d._items:
        fc = float(c)
        if not math.isfinite(fc):
            return 0
        c_lo, c_hi = _float_down(fc), _float_up(fc)
        if sym == UNIT:
            t_lo, t_hi = c_lo, c_hi
        else:
            s_lo, s_hi = registry._floats[sym]
            if fc >= 0:
                t_lo, t_hi = _float_down(c_lo * s_lo), _float_up(c_hi * s_hi)
            else:
                t_lo, t_hi = _float_down(c_lo * s_hi), _float_up(c_hi * s_lo)
        lo = _float_down(lo + t_lo)
        hi = _float_up(hi + t_hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return 0
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


def sign(d: QLinearValue, registry: BasisRegistry) -> Ordering:
    registry.check(d)
    if d.is_zero():
        return Ordering.EQUAL
    r = d.as_rational()
    if r is not None:
        return Ordering.GREATER if r > 0 else Ordering.LESS
    quick = _float_sign(d, registry)
    if quick:
        return Ordering(quick)
    syms = [s for s in d.support if s != UNIT]
    factor = 1
    while True:
        digits = {s: min(registry.entry(s).precision_digits * factor, registry._cap(s))
                  for s in syms}
        lo = hi = Fraction(0)
        for sym, c in d._items:
            if sym == UNIT:
                lo += c
                hi += c
                continue
            b = registry.symbol_bounds(sym, digits[sym])
            if c > 0:
                lo += c * b.lo
                hi += c * b.hi
            else:
                lo += c * b.hi
                hi += c * b.lo
        if lo > 0:
            return Ordering.GREATER
        if hi < 0:
            return Ordering.LESS
        if all(digits[s] >= registry._cap(s) for s in syms):
            raise IndistinguishableAtPrecision(
                f"cannot order {d!r} against zero: enclosure [{float(lo):.3e}, {float(hi):.3e}] "
                f"at maximum precision")
        factor *= 2


def compare(x: QLinearValue, y: QLinearValue, registry: BasisRegistry) -> Ordering:
    if x == y:
        registry.check(x)
        return Ordering.EQUAL
    return sign(x - y, registry)


def is_positive(x: QLinearValue, registry: BasisRegistry) -> bool:
    return sign(x, registry) is Ordering.GREATER


def sort_values(values: Iterable[QLinearValue], registry: BasisRegistry) -> list[QLinearValue]:
    return sorted(values, key=cmp_to_key(lambda u, v: int(compare(u, v, registry))))


def max_value(values: Iterable[QLinearValue], registry: BasisRegistry) -> QLinearValue:
    best = None
    for v in values:
        if best is None or compare(v, best, registry) is Ordering.GREATER:
            best = v
    if best is None:
        raise ValueError("max of an empty collection")
    return best


# -- rank and rational relations --------------------------------------------


def integer_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            row_i, row_r = m[i], m[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
    return rank


def rank(values: Iterable[QLinearValue]) -> int:
    """Dimension of the Q-span of the coefficient vectors.

    This is also the rank of the Z-module the values generate in R, since
    such a module is torsion free.
    """
    values = list(values)
    if not values:
        raise ValueError("rank of an empty set")
    symbols = sorted({s for v in values for s in v.support})
    rows = []
    for v in values:
        coeffs = [v.coeff(s) for s in symbols]
        scale = reduce(math.lcm, (c.denominator for c in coeffs), 1)
        rows.append([int(c * scale) for c in coeffs])
    return integer_rank(rows)


def rational_ratio(x: QLinearValue, y: QLinearValue) -> Fraction | None:
    """``q`` with ``x == q*y``, or None when x, y are not Q-proportional."""
    if y.is_zero():
        raise DivisionByZero("ratio against the zero value")
    if x.is_zero():
        return Fraction(0)
    if x.support != y.support:
        return None
    sym0 = y.support[0]
    q = x.coeff(sym0) / y.coeff(sym0)
    if all(x.coeff(s) == q * y.coeff(s) for s in y.support):
        return q
    return None


def _positive_fractions(qs) -> list[Fraction]:
    qs = [as_fraction(q) for q in qs]
    if not qs:
        raise NonPositiveInput("empty set of rationals")
    for q in qs:
        if q <= 0:
            raise NonPositiveInput(f"non-positive rational {q}")
    return qs


def rational_gcd(qs: Iterable) -> Fraction:
    """Largest T with every q/T a positive integer."""
    qs = _positive_fractions(qs)
    num = reduce(math.gcd, (q.numerator for q in qs))
    den = reduce(math.lcm, (q.denominator for q in qs))
    return Fraction(num, den)


def rational_lcm(qs: Iterable) -> Fraction:
    """Smallest T with every T/q a positive integer."""
    qs = _positive_fractions(qs)
    num = reduce(math.lcm, (q.numerator for q in qs))
    den = reduce(math.gcd, (q.denominator for q in qs))
    return Fraction(num, den)

"""Lazy formal power series in finitely many variables.

A :class:`PowerSeries` is a coefficient oracle ``ExponentVector -> R`` with a
per-node memo.  Sums, products, derivatives and inverses are new nodes over
their parents, so coefficients are only computed on demand and each one is
computed from finitely many parent coefficients (a product at ``u`` reads
its factors inside the box ``0 <= v <= u`` only).

Thread safety: queries may run concurrently from several threads.  Memo
writes go through ``dict.setdefault``, which is atomic, and every oracle is
pure, so two threads racing on one coefficient may both compute it but will
store and return equal values.

Equality of series is undecidable; compare with :func:`agree_through`.
"""

from __future__ import annotations

import math
import random
from typing import Any, Callable, Iterable, Mapping

from .errors import (CharacteristicNotZero, NonUnitConstantTerm, NotAUnit,
                     OverlappingVariables, StructureMismatch, UnknownVariable)
from .monoid_ring import MonoidRingElement, format_terms
from .monoids import ExponentVector, exponent_box, exponents_below, graded_key
from .polynomial import PolynomialRing
from .reports import Report
from .rings import Ring, falling_product

NAMED_SERIES = ("geom_plus", "geom_minus", "exp", "sin", "cos")
_IDENTITY = ExponentVector()


def as_exponent(m, variables: tuple[str, ...] = ()) -> ExponentVector:
    """Accept an ExponentVector, a mapping, or an int for univariate series."""
    if isinstance(m, ExponentVector):
        return m
    if isinstance(m, Mapping):
        return ExponentVector(m)
    if isinstance(m, int):
        if len(variables) != 1:
            raise TypeError("an integer exponent is only meaningful for a univariate series")
        return ExponentVector({variables[0]: m})
    return ExponentVector(m)


class PowerSeries:
    """Element of ``R[[x_1, ..., x_n]]`` given by a memoized coefficient oracle."""

    def __init__(self, ring: Ring, variables: Iterable[str]):
        self.ring = ring
        self.variables = tuple(sorted(set(variables)))
        self._varset = frozenset(self.variables)
        self._memo: dict[ExponentVector, Any] = {}

    # -- coefficients -----------------------------------------------------
    def _compute(self, m: ExponentVector):
        raise NotImplementedError

    def _at(self, m: ExponentVector):
        # exponents on variables the series does not mention give zero
        for v, _ in m.items():
            if v not in self._varset:
                return self.ring.zero
        try:
            return self._memo[m]
        except KeyError:
            pass
        return self._memo.setdefault(m, self._compute(m))

    def coefficient(self, m) -> Any:
        m = as_exponent(m, self.variables)
        unknown = [v for v in m.variables if v not in self._varset]
        if unknown:
            raise UnknownVariable(f"variables {unknown} do not occur in a series over {list(self.variables)}")
        return self._at(m)

    __getitem__ = coefficient

    def constant_term(self):
        return self._at(_IDENTITY)

    def clear_memo(self) -> None:
        self._memo.clear()

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            if other.ring != self.ring:
                raise StructureMismatch(f"series over {self.ring} and {other.ring}")
            return other
        if isinstance(other, MonoidRingElement):
            return from_polynomial(other)
        if isinstance(other, int):
            return constant(self.ring, self.ring.from_int(other))
        return constant(self.ring, other)

    def __add__(self, other):
        return SumSeries(self, self._coerce(other))

    def __radd__(self, other):
        return SumSeries(self._coerce(other), self)

    def __neg__(self):
        return NegSeries(self)

    def __sub__(self, other):
        return SumSeries(self, NegSeries(self._coerce(other)))

    def __rsub__(self, other):
        return SumSeries(self._coerce(other), NegSeries(self))

    def __mul__(self, other):
        return ProductSeries(self, self._coerce(other))

    def __rmul__(self, other):
        return ProductSeries(self._coerce(other), self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only natural powers of a series are defined")
        result: PowerSeries = constant(self.ring, self.ring.one, self.variables)
        base: PowerSeries = self
        while n:
            if n & 1:
                result = ProductSeries(result, base)
            n >>= 1
            if n:
                base = ProductSeries(base, base)
        return result

    def scale(self, a) -> PowerSeries:
        """``a*f`` with the scalar on the left."""
        return ScaledSeries(a, self)

    def derivative(self, var: str, order: int = 1) -> PowerSeries:
        return derivative(self, var, order)

    def invert(self) -> PowerSeries:
        return invert(self)

    # -- views ------------------------------------------------------------
    def truncated_terms(self, order: int) -> list[tuple[ExponentVector, Any]]:
        """Nonzero terms of total degree ``< order`` in graded order."""
        R = self.ring
        out = []
        for m in exponents_below(self.variables, order):
            c = self._at(m)
            if not R.is_zero(c):
                out.append((m, c))
        out.sort(key=lambda t: graded_key(t[0]))
        return out

    def to_text(self, order: int) -> str:
        """Terms below ``order`` followed by an ``O(...)`` marker."""
        terms = self.truncated_terms(order)
        if len(self.variables) == 1:
            marker = f"O({self.variables[0]}^{order})"
        else:
            marker = f"O(deg {order})"
        if not terms:
            return marker
        body = format_terms(self.ring, [(str(m), m, c) for m, c in terms], _IDENTITY)
        return f"{body} + {marker}"

    def to_json(self, order: int) -> dict:
        from .monoid_ring import ring_to_json
        return {
            "ring": ring_to_json(self.ring),
            "vars": list(self.variables),
            "order": order,
            "terms": [{"elem": [{"var": v, "exp": e} for v, e in m.items()],
                       "coef": self.ring.to_json(c)}
                      for m, c in self.truncated_terms(order)],
        }

    def __repr__(self):
        return f"<{type(self).__name__} over {self.ring} in {list(self.variables)}: {self.to_text(6)}>"


class OracleSeries(PowerSeries):
    def __init__(self, ring: Ring, variables: Iterable[str], oracle: Callable[[ExponentVector], Any]):
        super().__init__(ring, variables)
        self.oracle = oracle

    def _compute(self, m):
        return self.oracle(m)


class PolynomialSeries(PowerSeries):
    def __init__(self, poly: MonoidRingElement, variables: Iterable[str] = ()):
        used = {v for m in poly.support() for v in m.variables}
        super().__init__(poly.ring, used | set(variables))
        self.poly = poly

    def _compute(self, m):
        return self.poly.coefficient(m)


class SumSeries(PowerSeries):
    def __init__(self, f: PowerSeries, g: PowerSeries):
        if f.ring != g.ring:
            raise StructureMismatch(f"series over {f.ring} and {g.ring}")
        super().__init__(f.ring, f.variables + g.variables)
        self.f, self.g = f, g

    def _compute(self, m):
        return self.ring.add(self.f._at(m), self.g._at(m))


class NegSeries(PowerSeries):
    def __init__(self, f: PowerSeries):
        super().__init__(f.ring, f.variables)
        self.f = f

    def _compute(self, m):
        return self.ring.neg(self.f._at(m))


class ScaledSeries(PowerSeries):
    def __init__(self, a, f: PowerSeries):
        super().__init__(f.ring, f.variables)
        self.a, self.f = a, f

    def _compute(self, m):
        return self.ring.mul(self.a, self.f._at(m))


class ProductSeries(PowerSeries):
    """Convolution ``(f*g)(u) = sum over v + w = u of f(v) g(w)``."""

    def __init__(self, f: PowerSeries, g: PowerSeries):
        if f.ring != g.ring:
            raise StructureMismatch(f"series over {f.ring} and {g.ring}")
        super().__init__(f.ring, f.variables + g.variables)
        self.f, self.g = f, g

    def _compute(self, u):
        R = self.ring
        total = R.zero
        for v in exponent_box(u):
            a = self.f._at(v)
            if R.is_zero(a):
                continue
            total = R.add(total, R.mul(a, self.g._at(u - v)))
        return total


class DerivativeSeries(PowerSeries):
    """Coefficient at ``m`` is ``(s+p)!/s! * f(m + p*e_k)`` with ``s = m_k``."""

    def __init__(self, f: PowerSeries, var: str, order: int):
        if order < 0:
            raise ValueError("derivative order must be natural")
        super().__init__(f.ring, f.variables)
        self.f, self.var, self.order = f, var, order

    def _compute(self, m):
        if self.order == 0:
            return self.f._at(m)
        s = m[self.var]
        k = self.ring.from_int(falling_product(s, self.order))
        return self.ring.mul(k, self.f._at(m.shift(self.var, self.order)))


class InverseSeries(PowerSeries):
    """``g`` with ``f*g == 1``: ``g(0) = f(0)^-1`` and, for ``u != 0``,
    ``g(u) = -f(0)^-1 * sum over 0 < v <= u of f(v) g(u - v)``."""

    def __init__(self, f: PowerSeries):
        super().__init__(f.ring, f.variables)
        self.f = f
        try:
            self.inverse_constant = f.ring.invert(f._at(_IDENTITY))
        except NotAUnit:
            raise NonUnitConstantTerm(
                f"constant term {f.ring.format(f._at(_IDENTITY))} is not a unit of {f.ring}") from None

    def _compute(self, u):
        R = self.ring
        if u.is_identity():
            return self.inverse_constant
        total = R.zero
        for v in exponent_box(u):
            if v.is_identity():
                continue
            a = self.f._at(v)
            if R.is_zero(a):
                continue
            total = R.add(total, R.mul(a, self._at(u - v)))
        return R.neg(R.mul(self.inverse_constant, total))

    def _at(self, m):
        if m.total_degree() > 1 and m not in self._memo:
            # fill lower degrees first so the recursion stays shallow
            for v in sorted(exponent_box(m), key=ExponentVector.total_degree):
                super()._at(v)
        return super()._at(m)


# -- constructors ---------------------------------------------------------

def constant(ring: Ring, a, variables: Iterable[str] = ()) -> PowerSeries:
    return OracleSeries(ring, variables, lambda m: a if m.is_identity() else ring.zero)


def series_variable(ring: Ring, var: str) -> PowerSeries:
    x = ExponentVector.unit(var)
    return OracleSeries(ring, (var,), lambda m: ring.one if m == x else ring.zero)


def from_polynomial(poly: MonoidRingElement, variables: Iterable[str] = ()) -> PowerSeries:
    return PolynomialSeries(poly, variables)


def from_function(ring: Ring, variables: Iterable[str], fn: Callable[[ExponentVector], Any]) -> PowerSeries:
    return OracleSeries(ring, variables, fn)


def univariate(ring: Ring, var: str, fn: Callable[[int], Any]) -> PowerSeries:
    """Series in one variable from ``n -> coefficient of var^n``."""
    return OracleSeries(ring, (var,), lambda m: fn(m[var]))


def _inverse_factorial(ring: Ring, n: int):
    return ring.invert(ring.from_int(math.factorial(n)))


def named_series(kind: str, ring: Ring, var: str = "x", scale=None) -> PowerSeries:
    """One of the classical series in ``var``.

    ``geom_plus`` is ``sum (-1)^n x^n`` (the inverse of ``1 + x``),
    ``geom_minus`` is ``sum x^n`` (the inverse of ``1 - x``), ``exp`` is
    ``sum x^n/n!``, and ``sin``/``cos`` keep the odd/even terms of ``exp``
    with alternating signs.  With ``scale=a`` the coefficient of ``x^n`` is
    multiplied by ``a^n``; ``named_series("exp", R, "x", a)`` is ``exp_a``.
    """
    if kind not in NAMED_SERIES:
        raise ValueError(f"unknown series {kind!r}; expected one of {', '.join(NAMED_SERIES)}")
    R = ring
    if kind in ("exp", "sin", "cos"):
        if R.characteristic != 0:
            raise CharacteristicNotZero(
                f"{kind} needs characteristic 0 (it divides by n!), {R} has characteristic {R.characteristic}")
        if not R.is_q_algebra:
            raise NotAUnit(f"{kind} needs 1/n! but {R} does not contain the rationals")

    def base(n: int):
        if kind == "geom_plus":
            return R.one if n % 2 == 0 else R.neg(R.one)
        if kind == "geom_minus":
            return R.one
        if kind == "exp":
            return _inverse_factorial(R, n)
        wanted = 1 if kind == "sin" else 0
        if n % 2 != wanted:
            return R.zero
        c = _inverse_factorial(R, n)
        return R.neg(c) if (n // 2) % 2 else c

    if scale is None:
        return univariate(R, var, base)
    return univariate(R, var, lambda n: R.mul(base(n), R.pow(scale, n)))


def exp_series(ring: Ring, a=None, var: str = "x") -> PowerSeries:
    return named_series("exp", ring, var, a)


# -- operations -----------------------------------------------------------

def coefficient(f: PowerSeries, m) -> Any:
    return f.coefficient(m)


def derivative(f: PowerSeries, var: str, order: int = 1) -> PowerSeries:
    return DerivativeSeries(f, var, order)


def invert(f: PowerSeries) -> PowerSeries:
    return InverseSeries(f)


def agree_through(f: PowerSeries, g: PowerSeries, order: int) -> bool:
    """Whether ``f`` and ``g`` have equal coefficients in every total degree ``< order``."""
    if f.ring != g.ring:
        raise StructureMismatch(f"series over {f.ring} and {g.ring}")
    R = f.ring
    variables = tuple(sorted(set(f.variables) | set(g.variables)))
    return all(R.eq(f._at(m), g._at(m)) for m in exponents_below(variables, order))


def first_disagreement(f: PowerSeries, g: PowerSeries, order: int) -> ExponentVector | None:
    R = f.ring
    variables = tuple(sorted(set(f.variables) | set(g.variables)))
    for m in exponents_below(variables, order):
        if not R.eq(f._at(m), g._at(m)):
            return m
    return None


def random_series(ring: Ring, variables: Iterable[str], seed: Any, density: float = 0.7) -> PowerSeries:
    """A dense pseudo-random series; each coefficient is a pure function of ``(seed, m)``."""
    def oracle(m: ExponentVector):
        rng = random.Random(f"{seed}|{m.items()!r}")
        if rng.random() > density:
            return ring.zero
        return ring.random_element(rng)
    return OracleSeries(ring, variables, oracle)


class PowerSeriesRing(Ring):
    """``R[[variables]]`` as a coefficient ring, used for nested series.

    ``eq`` compares through ``compare_order`` only, since series equality
    cannot be decided.
    """

    def __init__(self, ring: Ring, variables: Iterable[str], compare_order: int = 10):
        self.ring = ring
        self.variables = tuple(sorted(set(variables)))
        self.compare_order = compare_order
        self.is_commutative = ring.is_commutative
        self.characteristic = ring.characteristic
        self.is_q_algebra = ring.is_q_algebra
        self.selector = f"{ring}[[{','.join(self.variables)}]]"
        self.zero = constant(ring, ring.zero, self.variables)
        self.one = constant(ring, ring.one, self.variables)

    def add(self, a, b):
        return SumSeries(a, b)

    def neg(self, a):
        return NegSeries(a)

    def mul(self, a, b):
        return ProductSeries(a, b)

    def eq(self, a, b):
        return agree_through(a, b, self.compare_order)

    def invert(self, a):
        return InverseSeries(a)

    def from_int(self, n):
        return constant(self.ring, self.ring.from_int(n), self.variables)

    def format(self, a):
        return a.to_text(self.compare_order)

    def is_atomic(self, a):
        return False

    def to_json(self, a):
        return a.to_json(self.compare_order)

    def random_element(self, rng):
        return random_series(self.ring, self.variables, rng.random())

    def _key(self):
        return ("PowerSeriesRing", self.ring._key(), self.variables)

    def __repr__(self):
        return f"PowerSeriesRing({self.ring!r}, {list(self.variables)!r})"


def series_curry(f: PowerSeries, inner: Iterable[str], outer: Iterable[str]) -> PowerSeries:
    """Flat ``R[[inner, outer]]`` to nested ``(R[[inner]])[[outer]]``, lazily."""
    inner, outer = tuple(sorted(set(inner))), tuple(sorted(set(outer)))
    overlap = set(inner) & set(outer)
    if overlap:
        raise OverlappingVariables(f"variables {sorted(overlap)} are both inner and outer")
    missing = set(f.variables) - set(inner) - set(outer)
    if missing:
        raise UnknownVariable(f"variables {sorted(missing)} are assigned to neither group")
    inner_ring = PowerSeriesRing(f.ring, inner)

    def outer_coefficient(t: ExponentVector) -> PowerSeries:
        return OracleSeries(f.ring, inner, lambda s: f._at(s + t))

    return OracleSeries(inner_ring, outer, outer_coefficient)


def series_uncurry(T: PowerSeries) -> PowerSeries:
    """Nested ``(R[[inner]])[[outer]]`` back to the flat series, lazily."""
    inner_ring = T.ring
    if not isinstance(inner_ring, PowerSeriesRing):
        raise StructureMismatch("series_uncurry needs a series with power-series coefficients")
    inner, outer = inner_ring.variables, T.variables
    overlap = set(inner) & set(outer)
    if overlap:
        raise OverlappingVariables(f"variables {sorted(overlap)} are both inner and outer")

    def flat_coefficient(m: ExponentVector):
        return T._at(m.restrict(outer))._at(m.restrict(inner))

    return OracleSeries(inner_ring.ring, inner + outer, flat_coefficient)


# -- identity suites ------------------------------------------------------

def euler_suite(ring: Ring, order: int = 20, lam=None, var: str = "x") -> Report:
    """Check, through ``order``, the identities linking ``sin``, ``cos`` and ``exp_lam``
    for an element ``lam`` with ``lam^2 = -1``."""
    R = ring
    if lam is None:
        lam = R.imaginary_unit
    if lam is None:
        raise ValueError(f"{R} has no distinguished square root of -1")
    report = Report("euler")
    report.record("lambda^2 = -1", R.eq(R.mul(lam, lam), R.neg(R.one)), lam)
    sin = named_series("sin", R, var)
    cos = named_series("cos", R, var)
    exp_l = named_series("exp", R, var, lam)
    exp_ml = named_series("exp", R, var, R.neg(lam))
    one = constant(R, R.one, (var,))
    checks = {
        "lambda*sin + cos = exp_lambda": (sin.scale(lam) + cos, exp_l),
        "sin = (exp_lambda - exp_-lambda)/(2*lambda)":
            (sin, (exp_l - exp_ml).scale(R.invert(R.mul(R.from_int(2), lam)))),
        "cos = (exp_lambda + exp_-lambda)/2":
            (cos, (exp_l + exp_ml).scale(R.invert(R.from_int(2)))),
        "sin^2 + cos^2 = 1": (sin * sin + cos * cos, one),
    }
    for name, (lhs, rhs) in checks.items():
        report.record(name, agree_through(lhs, rhs, order), first_disagreement(lhs, rhs, order))
    return report


def sin_cos_sign(p: int, which: str) -> int:
    """Sign ``c`` in ``d^p sin = c * (sin or cos)`` (``which="sin"``) or the cosine analogue."""
    if which == "sin":
        return 1 if p % 4 in (0, 1) else -1
    return 1 if p % 4 in (0, 3) else -1


def derivative_laws_suite(order_bound: int = 6, order: int = 12, ring: Ring | None = None,
                          pairs: int = 20, seed: int = 0, variables: tuple[str, ...] = ("x",)) -> Report:
    """Composition, additivity, Leibniz and commutation laws of the formal derivative.

    Every law is compared through total degree ``order`` on ``pairs`` random
    polynomial pairs and for derivative orders ``p <= order_bound``.
    """
    from .rings import QQ
    R = ring if ring is not None else QQ
    rng = random.Random(seed)
    P = PolynomialRing(R)
    from .polynomial import random_polynomial
    report = Report("derivative laws")
    k = variables[0]

    for _ in range(pairs):
        f = from_polynomial(random_polynomial(P, rng, variables, max_degree=order, max_terms=6), variables)
        g = from_polynomial(random_polynomial(P, rng, variables, max_degree=order, max_terms=6), variables)
        report.record("d^0 is the identity", agree_through(derivative(f, k, 0), f, order))
        fg = f * g
        for p in range(1, order_bound + 1):
            report.record("d^p = d^(p-1) o d",
                          agree_through(derivative(f, k, p), derivative(derivative(f, k, 1), k, p - 1), order), p)
            report.record("d^p is additive",
                          agree_through(derivative(f + g, k, p), derivative(f, k, p) + derivative(g, k, p), order), p)
            leibniz: PowerSeries = constant(R, R.zero, variables)
            for s in range(p + 1):
                term = derivative(f, k, p - s) * derivative(g, k, s)
                leibniz = leibniz + term.scale(R.from_int(math.comb(p, s)))
            report.record("Leibniz rule", agree_through(derivative(fg, k, p), leibniz, order), p)

    names = tuple(variables) + ("w",) if len(variables) < 2 else tuple(variables)
    for a in names:
        for b in names:
            want = constant(R, R.one if a == b else R.zero, names)
            report.record("d_k(x_l) = delta_kl", agree_through(derivative(series_variable(R, b), a, 1), want, order), (a, b))
    a, b = names[0], names[1]
    h = from_polynomial(random_polynomial(P, rng, (a, b), max_degree=order, max_terms=8), (a, b))
    for p in range(order_bound + 1):
        for q in range(3):
            report.record("mixed partials commute",
                          agree_through(derivative(derivative(h, a, p), b, q),
                                        derivative(derivative(h, b, q), a, p), order), (p, q))

    if R.characteristic == 0 and R.is_q_algebra:
        sin = named_series("sin", R, k)
        cos = named_series("cos", R, k)
        for p in range(1, 9):
            same = p % 2 == 0
            report.record("d^p sin sign pattern",
                          agree_through(derivative(sin, k, p), (sin if same else cos).scale(R.from_int(sin_cos_sign(p, "sin"))), order), p)
            report.record("d^p cos sign pattern",
                          agree_through(derivative(cos, k, p), (cos if same else sin).scale(R.from_int(sin_cos_sign(p, "cos"))), order), p)
    return report

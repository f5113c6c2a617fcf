"""Truncations, truncation towers and evaluation into nilpotent quotients.

``truncate(f, p)`` keeps the coefficients of total degree ``< p``; a
:class:`TruncationTower` is a coherent sequence of such polynomials and
:func:`reconstruct` turns one back into a series.  Membership of a series in
the ``p``-th power of the ideal generated by the variables is decided by the
degree criterion: every coefficient of total degree ``< p`` vanishes.
"""

from __future__ import annotations

import random
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import (ArgumentNotInIdeal, IncoherentTower, MissingAssignment, NoncommutativeTarget,
                     NotAUnit)
from .monoid_ring import MonoidRingElement, format_terms
from .monoids import ExponentVector, exponents_below, exponents_of_degree
from .polynomial import PolynomialRing, eval_at, variables_of
from .reports import Report
from .rings import Ring
from .series import PowerSeries, agree_through, first_disagreement, from_polynomial, OracleSeries

Polynomial = MonoidRingElement


def truncate(f: PowerSeries | Polynomial, p: int) -> Polynomial:
    """The polynomial of all terms of ``f`` with total degree ``< p``."""
    if p < 1:
        raise ValueError("truncation order must be at least 1")
    if isinstance(f, MonoidRingElement):
        return f.parent.element((m, c) for m, c in f.items() if m.total_degree() < p)
    R = f.ring
    P = PolynomialRing(R)
    return P.element((m, c) for m in exponents_below(f.variables, p)
                     if not R.is_zero(c := f._at(m)))


def _as_series(f) -> PowerSeries:
    if isinstance(f, MonoidRingElement):
        return from_polynomial(f)
    return f


class TruncationTower:
    """A coherent family ``(g_p)_{p >= 1}`` materialized level by level.

    ``g_p`` may only have terms of total degree ``< p``, and ``g_{p+1} - g_p``
    only terms of degree ``>= p``.  Both conditions are checked as each
    level materializes; a violation raises :class:`IncoherentTower`.

    A tower is single-writer: materializing new levels mutates it.  Reading
    levels that already exist is safe from several threads.
    """

    def __init__(self, ring: Ring, variables: Iterable[str], source: Callable[[int], Polynomial] | Sequence[Polynomial]):
        self.ring = ring
        self.variables = tuple(sorted(set(variables)))
        if callable(source):
            self._source = source
            self._limit = None
        else:
            levels = list(source)
            self._source = lambda p: levels[p - 1]
            self._limit = len(levels)
        self._levels: list[Polynomial] = []

    @property
    def materialized(self) -> int:
        return len(self._levels)

    def level(self, p: int) -> Polynomial:
        if p < 1:
            raise ValueError("tower levels start at 1")
        while len(self._levels) < p:
            q = len(self._levels) + 1
            if self._limit is not None and q > self._limit:
                raise IndexError(f"tower only has {self._limit} levels")
            g = self._source(q)
            self._check_level(q, g)
            self._levels.append(g)
        return self._levels[p - 1]

    def _check_level(self, q: int, g: Polynomial) -> None:
        stray = [v for v in variables_of(g) if v not in self.variables]
        if stray:
            raise IncoherentTower(f"level {q} uses undeclared variables {stray}")
        high = [m for m in g.support() if m.total_degree() >= q]
        if high:
            raise IncoherentTower(f"level {q} has a term {high[0]} of total degree >= {q}")
        if q > 1:
            diff = g - self._levels[q - 2]
            low = [m for m in diff.support() if m.total_degree() < q - 1]
            if low:
                raise IncoherentTower(
                    f"levels {q - 1} and {q} differ at {low[0]}, below degree {q - 1}")

    def levels(self, n: int) -> list[Polynomial]:
        return [self.level(p) for p in range(1, n + 1)]

    def to_text(self, n: int) -> str:
        return "\n".join(str(g) for g in self.levels(n))

    def to_json(self, n: int) -> list[dict]:
        from .monoid_ring import element_to_json
        return [{"level": p, "poly": element_to_json(g)} for p, g in enumerate(self.levels(n), 1)]

    def agrees_with(self, other: TruncationTower, n: int) -> bool:
        return all(self.level(p) == other.level(p) for p in range(1, n + 1))


def tower_of(f: PowerSeries | Polynomial) -> TruncationTower:
    """The tower ``(truncate(f, p))_p`` of a series or polynomial."""
    if isinstance(f, MonoidRingElement):
        return TruncationTower(f.ring, variables_of(f), lambda p: truncate(f, p))
    return TruncationTower(f.ring, f.variables, lambda p: truncate(f, p))


def reconstruct(t: TruncationTower) -> PowerSeries:
    """The series whose coefficient at ``m`` is read off level ``|m| + 1``."""
    def oracle(m: ExponentVector):
        return t.level(m.total_degree() + 1).coefficient(m)
    return OracleSeries(t.ring, t.variables, oracle)


def _boundary_owner(m: ExponentVector, variables: tuple[str, ...], p: int) -> ExponentVector:
    # the degree-p monomial dividing m obtained by taking exponents greedily in variable order
    left, out = p, []
    for v in variables:
        take = min(m[v], left)
        if take:
            out.append((v, take))
        left -= take
    return ExponentVector(out)


def remainder_decomposition(f: PowerSeries, p: int) -> dict[ExponentVector, PowerSeries]:
    """Series ``h_t`` for every ``|t| = p`` with ``f = f_p + sum h_t * x^t``."""
    variables = f.variables
    pieces = {}
    for t in exponents_of_degree(variables, p):
        def h(w: ExponentVector, t=t):
            m = w + t
            if _boundary_owner(m, variables, p) == t:
                return f._at(m)
            return f.ring.zero
        pieces[t] = OracleSeries(f.ring, variables, h)
    return pieces


def check_remainder_ideal(f: PowerSeries | Polynomial, p: int, extra: int = 5) -> Report:
    """Check that ``f - f_p`` lies in the ``p``-th power of the variable ideal.

    Two checks: the degree criterion, and an explicit decomposition
    ``f = f_p + sum h_t x^t`` over ``|t| = p`` recombined and compared with
    ``f`` through degree ``p + extra``.
    """
    f = _as_series(f)
    R = f.ring
    report = Report(f"remainder ideal p={p}")
    fp = truncate(f, p)
    rest = f - from_polynomial(fp, f.variables)
    low = next((m for m in exponents_below(f.variables, p) if not R.is_zero(rest._at(m))), None)
    report.record("f - f_p vanishes below degree p", low is None, low)
    P = PolynomialRing(R)
    recombined: PowerSeries = from_polynomial(fp, f.variables)
    for t, h in remainder_decomposition(f, p).items():
        recombined = recombined + h * from_polynomial(P.monomial(t))
    report.record("f = f_p + sum h_t x^t", agree_through(recombined, f, p + extra),
                  first_disagreement(recombined, f, p + extra))
    return report


def quotient_iso_check(p: int, series: Iterable[PowerSeries], polynomials: Iterable[Polynomial]) -> Report:
    """The map ``R[x]/I^p -> S/J^p`` is onto (every series is congruent to its
    truncation) and one to one (a polynomial congruent to 0 has its
    truncation equal to 0)."""
    report = Report(f"quotient isomorphism p={p}")
    for f in series:
        diff = f - from_polynomial(truncate(f, p), f.variables)
        zero = from_polynomial(PolynomialRing(f.ring).zero, f.variables)
        report.record("f is congruent to f_p", agree_through(diff, zero, p))
    polys = list(polynomials)
    for g in polys:
        gs = from_polynomial(g)
        congruent_to_zero = agree_through(gs, gs * 0, p)
        report.record("injective below degree p", congruent_to_zero == truncate(g, p).is_zero(), g)
    for g, h in zip(polys, polys[1:]):
        same_class = agree_through(from_polynomial(g), from_polynomial(h), p)
        report.record("equal truncations are identified", same_class == (truncate(g, p) == truncate(h, p)), (g, h))
    return report


class NilpotentQuotientRing(Ring):
    """``R[y]/(y^k)``: complete for the ``(y)``-adic topology since ``y^k = 0``.

    Elements are tuples ``(c_0, ..., c_{k-1})`` of base-ring coefficients.
    """

    def __init__(self, base: Ring, var: str = "y", k: int = 3):
        if k < 1:
            raise ValueError("nilpotency order must be at least 1")
        self.base = base
        self.var = var
        self.k = k
        self.is_commutative = base.is_commutative
        self.characteristic = base.characteristic
        self.is_q_algebra = base.is_q_algebra
        self.integral_domain = False if k > 1 else None
        self.selector = f"{base}[{var}]/({var}^{k})"
        self.zero = (base.zero,) * k
        self.one = (base.one,) + (base.zero,) * (k - 1)

    def element(self, coeffs: Iterable) -> tuple:
        coeffs = list(coeffs)[: self.k]
        return tuple(coeffs) + (self.base.zero,) * (self.k - len(coeffs))

    def generator(self) -> tuple:
        return self.element([self.base.zero, self.base.one])

    def embed(self, a) -> tuple:
        return self.element([a])

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        B, k = self.base, self.k
        out = [B.zero] * k
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j in range(k - i):
                out[i + j] = B.add(out[i + j], B.mul(x, b[j]))
        return tuple(out)

    def eq(self, a, b):
        return all(self.base.eq(x, y) for x, y in zip(a, b))

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def from_fraction(self, q):
        return self.embed(self.base.from_fraction(q))

    def invert(self, a):
        try:
            c0 = self.base.invert(a[0])
        except NotAUnit:
            raise NotAUnit(f"{self.format(a)} is not a unit of {self}") from None
        B = self.base
        inv = [c0]
        for n in range(1, self.k):
            s = B.sum(B.mul(a[i], inv[n - i]) for i in range(1, n + 1))
            inv.append(B.neg(B.mul(c0, s)))
        return tuple(inv)

    def in_ideal(self, a) -> bool:
        return self.base.is_zero(a[0])

    def reduce_mod_power(self, a, p: int) -> tuple:
        """The class of ``a`` modulo ``(y)^p``."""
        return self.element(a[:p])

    def format(self, a):
        y = self.var
        terms = [("1" if i == 0 else (y if i == 1 else f"{y}^{i}"), i, c)
                 for i, c in enumerate(a) if not self.base.is_zero(c)]
        return format_terms(self.base, terms, 0)

    def is_atomic(self, a):
        return sum(1 for c in a if not self.base.is_zero(c)) <= 1

    def to_json(self, a):
        return [self.base.to_json(c) for c in a]

    def from_json(self, obj):
        return self.element(self.base.from_json(c) for c in obj)

    def random_element(self, rng: random.Random):
        return tuple(self.base.random_element(rng) for _ in range(self.k))

    def random_ideal_element(self, rng: random.Random):
        return (self.base.zero,) + tuple(self.base.random_element(rng) for _ in range(self.k - 1))

    def _key(self):
        return ("NilpotentQuotientRing", self.base._key(), self.var, self.k)

    def __repr__(self):
        return f"NilpotentQuotientRing({self.base!r}, {self.var!r}, {self.k})"


def evaluation_bound(n: int, k: int) -> int:
    """Truncation order past which every monomial in ``n`` ideal elements vanishes mod ``y^k``.

    A monomial of total degree ``>= n*(k-1) + 1`` has some exponent ``>= k``.
    """
    return n * (k - 1) + 1


def _check_args(f: PowerSeries, target: NilpotentQuotientRing, args: Mapping[str, Any]) -> None:
    if not target.is_commutative:
        raise NoncommutativeTarget(f"{target} is not commutative")
    for v in f.variables:
        if v not in args:
            raise MissingAssignment(f"no value assigned to variable {v}")
        if not target.in_ideal(args[v]):
            raise ArgumentNotInIdeal(f"value {target.format(args[v])} for {v} has a nonzero constant term")


def eval_complete(f: PowerSeries | Polynomial, target: NilpotentQuotientRing, args: Mapping[str, Any],
                  phi: Callable[[Any], Any] | None = None):
    """``psi(f)`` for the unique ring map with ``psi(x_i) = args[x_i]`` extending ``phi``.

    Computed exactly as the substitution into ``truncate(f, n*(k-1) + 1)``;
    all dropped terms vanish in the target.
    """
    f = _as_series(f)
    _check_args(f, target, args)
    if phi is None:
        phi = target.embed
    bound = evaluation_bound(len(f.variables), target.k)
    return eval_at(truncate(f, bound), args, phi, target)


def eval_level(f: PowerSeries | Polynomial, target: NilpotentQuotientRing, args: Mapping[str, Any], p: int,
               phi: Callable[[Any], Any] | None = None):
    """``sum over |s| < p of phi(f(s)) a^s``, reduced modulo ``(y)^p``."""
    f = _as_series(f)
    _check_args(f, target, args)
    if phi is None:
        phi = target.embed
    return target.reduce_mod_power(eval_at(truncate(f, p), args, phi, target), p)


def completion_suite(ring: Ring, order: int = 10, seed: int = 0, samples: int = 20) -> Report:
    """Tower round trips, remainder-ideal checks and nilpotent evaluation on random data."""
    from .polynomial import random_polynomial
    from .series import NAMED_SERIES, named_series, random_series

    rng = random.Random(seed)
    R = ring
    P = PolynomialRing(R)
    report = Report("completion")
    levels = min(order, 12)

    named = [k for k in NAMED_SERIES if R.is_q_algebra or k.startswith("geom")]
    for kind in named:
        f = named_series(kind, R)
        t = tower_of(f)
        try:
            back = reconstruct(t)
            report.record("named series: reconstruct(tower_of(f)) = f", agree_through(back, f, levels), kind)
            report.record("named series: tower_of(reconstruct(t)) = t",
                          tower_of(back).agrees_with(t, levels), kind)
        except IncoherentTower as exc:
            report.record("towers are coherent", False, str(exc))
    for _ in range(samples):
        variables = ("x", "y", "z")[: rng.randint(1, 3)]
        g = random_polynomial(P, rng, variables, max_degree=8, max_terms=5)
        t = tower_of(g)
        back = reconstruct(t)
        report.record("polynomials: round trip", truncate(back, 9) == g, g)
        report.record("polynomials: towers agree", tower_of(back).agrees_with(t, 9), g)
    for p in range(1, order + 1):
        f = random_series(R, ("x", "y"), (seed, p))
        report.record("f - f_p lies in J^p", check_remainder_ideal(f, p, extra=2).ok, p)
    for _ in range(samples):
        k = rng.randint(2, 5)
        A = NilpotentQuotientRing(R, "t", k)
        args = {"x": A.random_ideal_element(rng), "y": A.random_ideal_element(rng)}
        f = random_series(R, ("x", "y"), rng.random())
        g = random_series(R, ("x", "y"), rng.random())
        lhs = eval_complete(f * g, A, args)
        rhs = A.mul(eval_complete(f, A, args), eval_complete(g, A, args))
        report.record("eval_complete is multiplicative", A.eq(lhs, rhs), (k, args))
        report.record("eval_complete is additive",
                      A.eq(eval_complete(f + g, A, args), A.add(eval_complete(f, A, args), eval_complete(g, A, args))))
    return report

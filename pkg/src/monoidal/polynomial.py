"""Polynomials as the monoid ring over exponent vectors."""

from __future__ import annotations

import random
from typing import Any, Callable, Iterable, Mapping

from .errors import MissingAssignment, NoncommutativeTarget, ZeroPolynomial
from .monoid_ring import MonoidRing, MonoidRingElement
from .monoids import (CyclicGroup, ExponentMonoid, ExponentVector, WordMonoid,
                      decompose_exponent, graded_key)
from .reports import Report
from .rings import ModularRing, Ring, falling_product

Polynomial = MonoidRingElement


class PolynomialRing(MonoidRing):
    """``R[x_i : i in I]`` for an open-ended set of string-named variables.

    Terms print in graded order: constants first, then by total degree, and
    within one degree earlier variable names with larger powers first.
    """

    def __init__(self, ring: Ring, sample_variables: Iterable[str] = ("x", "y", "z"),
                 max_exponent: int = 3):
        super().__init__(ring, ExponentMonoid(sample_variables, max_exponent))
        self.selector = f"{ring}[poly]"

    def term_order(self, m):
        return graded_key(m)

    def format_monomial(self, m) -> str:
        return str(m)

    def variable(self, name: str) -> Polynomial:
        return self.delta(ExponentVector.unit(name))

    def monomial(self, m: ExponentVector | Mapping[str, int]) -> Polynomial:
        if not isinstance(m, ExponentVector):
            m = ExponentVector(m)
        return self.delta(m)

    def constant(self, a) -> Polynomial:
        return self.eta(a)

    def __repr__(self):
        return f"PolynomialRing({self.ring!r})"


def variable(ring: PolynomialRing, name: str) -> Polynomial:
    return ring.variable(name)


def monomial(ring: PolynomialRing, m) -> Polynomial:
    return ring.monomial(m)


def variables_of(f: Polynomial) -> tuple[str, ...]:
    return tuple(sorted({v for m in f.support() for v in m.variables}))


def total_degree(f: Polynomial) -> int:
    """Largest total degree in the support; ``-1`` for the zero polynomial."""
    return max((m.total_degree() for m in f.support()), default=-1)


def derivative(f: Polynomial, var: str, order: int = 1) -> Polynomial:
    """Order-``order`` formal partial derivative in ``var``.

    The coefficient of ``x^m`` is ``(s+p)!/s! * f(m + p*e_var)`` with ``s``
    the exponent of ``var`` in ``m``.
    """
    if order < 0:
        raise ValueError("derivative order must be natural")
    R = f.ring
    out = []
    for m, c in f.items():
        s = m[var] - order
        if s < 0:
            continue
        k = R.from_int(falling_product(s, order))
        out.append((ExponentVector(dict(m.items()) | {var: s}), R.mul(k, c)))
    return f.parent.element(out)


def eval_at(f: Polynomial, point: Mapping[str, Any], phi: Callable[[Any], Any] | None = None,
            target: Ring | None = None):
    """Substitute ``point[x_i]`` for each variable and ``phi(c)`` for each coefficient.

    ``target`` defaults to the coefficient ring and must be commutative.
    """
    if target is None:
        target = f.ring
    if phi is None:
        phi = lambda a: a  # noqa: E731
    if not target.is_commutative:
        raise NoncommutativeTarget(f"evaluation needs a commutative target, {target} is not")
    total = target.zero
    for m, c in f.terms():
        value = phi(c)
        for var, e in decompose_exponent(m):
            if var not in point:
                raise MissingAssignment(f"no value assigned to variable {var}")
            value = target.mul(value, target.pow(point[var], e))
        total = target.add(total, value)
    return total


def leading_term_min(f: Polynomial) -> tuple[ExponentVector, Any]:
    """The smallest term of ``f`` in the graded print order."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no terms")
    m = min(f.support(), key=graded_key)
    return m, f.coefficient(m)


def structural_zero_divisors(parent: MonoidRing) -> list[tuple[MonoidRingElement, MonoidRingElement]]:
    """Zero-divisor pairs known from the structure of ``R`` and ``M``.

    A finite coefficient ring is searched exhaustively for ``a*b == 0``
    (lifted as ``a*x, b*x`` or as constants); a cyclic group of order
    ``n > 1`` gives ``(1 + g + ... + g^(n-1)) * (1 - g) == 0``.
    """
    found = []
    R = parent.ring
    if isinstance(R, ModularRing) and R.modulus <= 1000:
        lift = (parent.variable("x") if isinstance(parent, PolynomialRing)
                else parent.one)
        for a in range(1, R.modulus):
            for b in range(1, R.modulus):
                if (a * b) % R.modulus == 0:
                    found.append((lift.scale(R.from_int(a)), lift.scale(R.from_int(b))))
                    break
            if found:
                break
    M = parent.monoid
    if isinstance(M, CyclicGroup) and M.order > 1:
        norm = parent.element((k, R.one) for k in range(M.order))
        found.append((norm, parent.one - parent.delta(1)))
    return found


def is_domain(ring: Ring) -> bool:
    flag = getattr(ring, "integral_domain", None)
    if flag is not None:
        return flag
    if isinstance(ring, ModularRing):
        n = ring.modulus
        return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))
    if isinstance(ring, MonoidRing):
        # free (commutative or not) monoids keep the domain property
        return isinstance(ring.monoid, (ExponentMonoid, WordMonoid)) and is_domain(ring.ring)
    return ring.characteristic == 0


def is_zero_product_witness(parent: MonoidRing, samples: Iterable[tuple]) -> Report:
    """Search sampled nonzero pairs (and structural probes) for ``f*g == 0``.

    The check passes when the outcome matches the prediction: no witness over
    an integral domain, a witness otherwise.  The witness is stored under
    ``"zero_product"``.
    """
    predicted_domain = is_domain(parent)
    report = Report(f"zero divisors in {parent.selector}")
    witness = None
    for f, g in list(samples) + structural_zero_divisors(parent):
        if f and g and not (f * g):
            witness = (f, g)
            break
    if witness is not None:
        report.witnesses["zero_product"] = witness
    report.record("prediction matches samples", predicted_domain == (witness is None), witness)
    return report


def random_polynomial(parent: PolynomialRing, rng: random.Random, variables=("x", "y"),
                      max_degree: int = 3, max_terms: int = 4) -> Polynomial:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        budget = rng.randint(0, max_degree)
        exps = {}
        for v in variables:
            e = rng.randint(0, budget)
            exps[v] = e
            budget -= e
        terms.append((ExponentVector(exps), parent.ring.random_element(rng)))
    return parent.element(terms)

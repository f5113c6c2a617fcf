"""Monoid rings ``R[M]``: finitely supported maps ``M -> R`` with the convolution product.

Elements are kept in canonical form (no stored zero coefficient), so two
elements are equal exactly when their term dictionaries are equal.  Every
multiplication keeps the left operand's coefficient on the left.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping

from .errors import CommutationViolation, NotAUnit, NotInKernel, StructureMismatch
from .monoids import CyclicGroup, Monoid, ProductMonoid, WordMonoid, monoid_from_description
from .reports import Report
from .rings import Ring, ring_from_selector


class MonoidRing(Ring):
    """The ring ``R[M]``; itself a :class:`Ring`, so it can be a coefficient ring."""

    def __init__(self, ring: Ring, monoid: Monoid):
        self.ring = ring
        self.monoid = monoid
        self.is_commutative = ring.is_commutative and monoid.is_abelian
        self.characteristic = ring.characteristic
        self.is_q_algebra = ring.is_q_algebra
        self.selector = f"{ring}[{monoid!r}]"
        self.zero = MonoidRingElement(self, {})
        self.one = self.eta(ring.one)

    # -- construction -----------------------------------------------------
    def element(self, terms: Mapping | Iterable[tuple[Any, Any]] = ()) -> MonoidRingElement:
        """Build an element from ``monoid element -> coefficient`` pairs; repeats are summed."""
        if isinstance(terms, Mapping):
            terms = terms.items()
        R = self.ring
        acc: dict = {}
        for m, c in terms:
            acc[m] = R.add(acc[m], c) if m in acc else c
        return MonoidRingElement(self, {m: c for m, c in acc.items() if not R.is_zero(c)})

    def eta(self, a) -> MonoidRingElement:
        """The constant ``a * delta_e``."""
        if self.ring.is_zero(a):
            return MonoidRingElement(self, {})
        return MonoidRingElement(self, {self.monoid.identity: a})

    def delta(self, m) -> MonoidRingElement:
        return MonoidRingElement(self, {m: self.ring.one})

    def coerce(self, x) -> MonoidRingElement:
        if isinstance(x, MonoidRingElement):
            if x.parent is self or x.parent == self:
                return x
            # a constant of the coefficient ring when the coefficient ring is itself R[M]
            if self.ring == x.parent:
                return self.eta(x)
            raise StructureMismatch(f"{x.parent} is not {self}")
        if isinstance(x, int):
            return self.eta(self.ring.from_int(x))
        return self.eta(x)

    # -- ring descriptor interface ---------------------------------------
    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return self.eta(self.ring.from_int(n))

    def from_fraction(self, q):
        return self.eta(self.ring.from_fraction(q))

    def invert(self, a):
        # units detectable without search: c*delta_g with c a unit and g invertible in a group
        if len(a) == 1:
            (m, c), = a.terms()
            cinv = self.ring.invert(c)
            if self.monoid.eq(m, self.monoid.identity):
                return self.eta(cinv)
            if isinstance(self.monoid, CyclicGroup):
                return MonoidRingElement(self, {self.monoid.inverse(m): cinv})
        raise NotAUnit(f"{a} is not a recognizable unit of {self}")

    def format(self, a):
        return str(a)

    def sign_split(self, a):
        if len(a) == 1:
            (m, c), = a.terms()
            negative, mag = self.ring.sign_split(c)
            if negative:
                return True, MonoidRingElement(self, {m: mag})
        return False, a

    def is_atomic(self, a):
        return len(a) <= 1

    def to_json(self, a):
        return element_to_json(a)

    def from_json(self, obj):
        return element_from_json(obj)

    def random_element(self, rng: random.Random, max_terms: int = 3) -> MonoidRingElement:
        n = rng.randint(0, max_terms)
        return self.element(
            (self.monoid.random_element(rng), self.ring.random_element(rng)) for _ in range(n)
        )

    def _key(self):
        return ("MonoidRing", self.ring._key(), repr(self.monoid.describe()))

    def __repr__(self):
        return f"MonoidRing({self.ring!r}, {self.monoid!r})"

    def term_order(self, m):
        return self.monoid.key(m)

    def format_monomial(self, m) -> str:
        return self.monoid.format(m)


class MonoidRingElement:
    """An element ``f`` of ``R[M]``; ``terms()`` lists ``Supp(f)`` with coefficients."""

    __slots__ = ("parent", "_terms")

    def __init__(self, parent: MonoidRing, terms: dict):
        # callers guarantee canonical form
        self.parent = parent
        self._terms = terms

    @property
    def ring(self) -> Ring:
        return self.parent.ring

    @property
    def monoid(self) -> Monoid:
        return self.parent.monoid

    def coefficient(self, m):
        return self._terms.get(m, self.parent.ring.zero)

    __getitem__ = coefficient

    def support(self) -> list:
        return sorted(self._terms, key=self.parent.term_order)

    def terms(self) -> list[tuple[Any, Any]]:
        return [(m, self._terms[m]) for m in self.support()]

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other) -> MonoidRingElement:
        if not isinstance(other, MonoidRingElement):
            return self.parent.coerce(other)
        if other.parent is not self.parent and other.parent != self.parent:
            if self.parent.ring == other.parent:
                return self.parent.eta(other)
            raise StructureMismatch(f"cannot combine elements of {self.parent} and {other.parent}")
        return other

    def __add__(self, other):
        other = self._check(other)
        R = self.parent.ring
        out = dict(self._terms)
        for m, c in other._terms.items():
            if m in out:
                s = R.add(out[m], c)
                if R.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return MonoidRingElement(self.parent, out)

    def __radd__(self, other):
        return self.parent.coerce(other) + self

    def __neg__(self):
        R = self.parent.ring
        return MonoidRingElement(self.parent, {m: R.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self.parent.coerce(other) - self

    def __mul__(self, other):
        other = self._check(other)
        R, M = self.parent.ring, self.parent.monoid
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = M.op(m1, m2)
                c = R.mul(c1, c2)
                acc[m] = R.add(acc[m], c) if m in acc else c
        return MonoidRingElement(self.parent, {m: c for m, c in acc.items() if not R.is_zero(c)})

    def __rmul__(self, other):
        return self.parent.coerce(other) * self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only natural powers are defined")
        return self.parent.pow(self, n)

    def scale(self, a) -> MonoidRingElement:
        """``a*f``, with ``a`` on the left of every coefficient."""
        R = self.parent.ring
        return self.parent.element((m, R.mul(a, c)) for m, c in self._terms.items())

    def map_terms(self, fn: Callable) -> MonoidRingElement:
        return self.parent.element(fn(m, c) for m, c in self._terms.items())

    def __eq__(self, other):
        if isinstance(other, MonoidRingElement):
            if other.parent is not self.parent and other.parent != self.parent:
                return False
            return self._terms == other._terms
        try:
            return self._terms == self.parent.coerce(other)._terms
        except (StructureMismatch, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"<{self.parent.selector}: {self}>"

    def __str__(self):
        P = self.parent
        return format_terms(P.ring, [(P.format_monomial(m), m, c) for m, c in self.terms()],
                            P.monoid.identity)


def format_terms(ring: Ring, terms: list[tuple[str, Any, Any]], identity) -> str:
    """Render ``[(monomial text, monomial, coefficient)]`` as ``c*m + ... - c*m``."""
    if not terms:
        return "0"
    pieces = []
    for i, (mono, m, c) in enumerate(terms):
        negative, mag = ring.sign_split(c)
        atomic = ring.is_atomic(mag)
        if m == identity:
            text = ring.format(mag)
            if not atomic and (negative or i > 0):
                text = f"({text})"
        elif ring.is_one(mag):
            text = mono
        else:
            text = ring.format(mag) if atomic else f"({ring.format(mag)})"
            text = f"{text}*{mono}"
        if i == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


# -- canonical maps -------------------------------------------------------

def eta(parent: MonoidRing, a) -> MonoidRingElement:
    return parent.eta(a)


def delta(parent: MonoidRing, m) -> MonoidRingElement:
    return parent.delta(m)


def augmentation(f: MonoidRingElement):
    """Sum of all coefficients; a ring homomorphism ``R[M] -> R``."""
    return f.ring.sum(c for _, c in f.terms())


def augmentation_kernel_decompose(f: MonoidRingElement) -> list[tuple[Any, Any]]:
    """Coordinates of ``f`` in the basis ``{delta_m - 1 : m != e}`` of the augmentation kernel."""
    if not f.ring.is_zero(augmentation(f)):
        raise NotInKernel(f"augmentation of {f} is {augmentation(f)}, not zero")
    e = f.monoid.identity
    return [(m, c) for m, c in f.terms() if not f.monoid.eq(m, e)]


def free_basis_expand(parent: MonoidRing, f: MonoidRingElement) -> MonoidRingElement:
    """Rebuild ``f`` as the sum of ``f(m) * delta_m``."""
    total = parent.zero
    for m, c in f.terms():
        total = total + parent.delta(m).scale(c)
    return total


# -- universal property ---------------------------------------------------

@dataclass
class EvaluationContext:
    """Data ``(S, phi, psi)`` defining the ring map ``R[M] -> S``.

    ``phi`` must be a ring homomorphism ``R -> S`` and ``psi`` a monoid
    homomorphism into the multiplicative monoid of ``S`` whose values commute
    with the image of ``phi``.  These laws are caller obligations:
    :meth:`verify` spot-checks them on samples and :func:`evaluate` checks
    the commutation on the terms it actually meets.
    """

    target: Ring
    phi: Callable[[Any], Any]
    psi: Callable[[Any], Any]
    check_commutation: bool = True
    extra: dict = field(default_factory=dict)

    def verify(self, source: MonoidRing, rng: random.Random, samples: int = 50) -> Report:
        S, R, M = self.target, source.ring, source.monoid
        report = Report("evaluation context")
        for _ in range(samples):
            a, b = R.random_element(rng), R.random_element(rng)
            m, n = M.random_element(rng), M.random_element(rng)
            report.record("phi additive", S.eq(self.phi(R.add(a, b)), S.add(self.phi(a), self.phi(b))), (a, b))
            report.record("phi multiplicative", S.eq(self.phi(R.mul(a, b)), S.mul(self.phi(a), self.phi(b))), (a, b))
            report.record("psi multiplicative", S.eq(self.psi(M.op(m, n)), S.mul(self.psi(m), self.psi(n))), (m, n))
            report.record("phi and psi commute",
                          S.eq(S.mul(self.phi(a), self.psi(m)), S.mul(self.psi(m), self.phi(a))), (a, m))
        report.record("phi(1) = 1", S.is_one(self.phi(R.one)))
        report.record("psi(e) = 1", S.is_one(self.psi(M.identity)))
        return report


def evaluate(f: MonoidRingElement, ctx: EvaluationContext):
    """``theta(f) = sum phi(f(m)) * psi(m)`` over the support of ``f``."""
    S = ctx.target
    total = S.zero
    for m, c in f.terms():
        a, b = ctx.phi(c), ctx.psi(m)
        if ctx.check_commutation and not S.eq(S.mul(a, b), S.mul(b, a)):
            raise CommutationViolation(f"phi({c}) and psi({f.monoid.format(m)}) do not commute in {S}")
        total = S.add(total, S.mul(a, b))
    return total


def augmentation_context(parent: MonoidRing) -> EvaluationContext:
    """The context (identity, constant 1) whose evaluation is the augmentation."""
    R = parent.ring
    return EvaluationContext(R, lambda a: a, lambda m: R.one)


# -- currying -------------------------------------------------------------

def curry(f: MonoidRingElement) -> MonoidRingElement:
    """``R[M x N] -> (R[M])[N]``: regroup ``c*delta_(m,n)`` as ``(c*delta_m)*delta_n``."""
    P = f.monoid
    if not isinstance(P, ProductMonoid):
        raise StructureMismatch("curry needs an element over a product monoid")
    inner = MonoidRing(f.ring, P.left)
    outer = MonoidRing(inner, P.right)
    grouped: dict = {}
    for (m, n), c in f.items():
        grouped.setdefault(n, []).append((m, c))
    return outer.element((n, inner.element(pairs)) for n, pairs in grouped.items())


def uncurry(F: MonoidRingElement) -> MonoidRingElement:
    """Inverse of :func:`curry`: ``(R[M])[N] -> R[M x N]``."""
    inner = F.ring
    if not isinstance(inner, MonoidRing):
        raise StructureMismatch("uncurry needs coefficients in a monoid ring")
    flat = MonoidRing(inner.ring, ProductMonoid(inner.monoid, F.monoid))
    return flat.element(((m, n), c) for n, g in F.items() for m, c in g.items())


# -- functoriality --------------------------------------------------------

def map_monoid(f: MonoidRingElement, h: Callable[[Any], Any], target: Monoid) -> MonoidRingElement:
    """Push ``f`` forward along a monoid homomorphism ``h: M -> N``."""
    return MonoidRing(f.ring, target).element((h(m), c) for m, c in f.items())


def map_coefficients(f: MonoidRingElement, phi: Callable[[Any], Any], target: Ring) -> MonoidRingElement:
    """Apply a ring homomorphism ``phi: R -> R'`` to every coefficient."""
    return MonoidRing(target, f.monoid).element((m, phi(c)) for m, c in f.items())


def pullback(f: MonoidRingElement, preimage: Callable[[Any], Any], source: Monoid) -> MonoidRingElement:
    """``f o psi`` for an injective ``psi: M -> N`` given through its partial inverse.

    ``preimage(n)`` returns the unique ``m`` with ``psi(m) == n`` or ``None``.
    This is support restriction only; no homomorphism property is claimed.
    """
    kept = []
    for n, c in f.items():
        m = preimage(n)
        if m is not None:
            kept.append((m, c))
    return MonoidRing(f.ring, source).element(kept)


def commutativity_witness(parent: MonoidRing, samples: Iterable[tuple]) -> Report:
    """Compare ``f*g`` with ``g*f`` on the sampled pairs.

    The prediction is that ``R[M]`` is commutative exactly when ``R`` is and
    ``M`` is abelian.  For the free word monoid the pair of generator deltas
    is tried first.  The first noncommuting pair is stored as the
    ``"noncommuting"`` witness.
    """
    predicted = parent.ring.is_commutative and parent.monoid.is_abelian
    report = Report(f"commutativity of {parent.selector}")
    pairs = list(samples)
    M = parent.monoid
    if isinstance(M, WordMonoid) and len(M.alphabet) >= 2:
        a, b = M.alphabet[:2]
        pairs.insert(0, (parent.delta((a,)), parent.delta((b,))))
    witness = None
    for f, g in pairs:
        if f * g != g * f:
            witness = (f, g)
            break
    if witness is not None:
        report.witnesses["noncommuting"] = witness
    report.record("prediction matches samples", predicted == (witness is None), witness)
    return report


# -- JSON -----------------------------------------------------------------

def element_to_json(f: MonoidRingElement) -> dict:
    P = f.parent
    return {
        "ring": ring_to_json(P.ring),
        "monoid": P.monoid.describe(),
        "terms": [{"elem": P.monoid.to_json(m), "coef": P.ring.to_json(c)} for m, c in f.terms()],
    }


def ring_to_json(ring: Ring):
    if isinstance(ring, MonoidRing):
        return {"ring": ring_to_json(ring.ring), "monoid": ring.monoid.describe()}
    return ring.selector


def ring_from_json(obj) -> Ring:
    if isinstance(obj, str):
        return ring_from_selector(obj)
    return MonoidRing(ring_from_json(obj["ring"]), monoid_from_description(obj["monoid"]))


def element_from_json(obj: dict) -> MonoidRingElement:
    ring = ring_from_json(obj["ring"])
    monoid = monoid_from_description(obj["monoid"])
    if monoid.describe() == {"type": "exponent"}:
        from .polynomial import PolynomialRing
        parent: MonoidRing = PolynomialRing(ring)
    else:
        parent = MonoidRing(ring, monoid)
    return parent.element(
        (monoid.from_json(t["elem"]), ring.from_json(t["coef"])) for t in obj["terms"]
    )

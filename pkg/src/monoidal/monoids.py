"""Monoids: exponent vectors, free words, cyclic groups and products.

Monoid elements are plain immutable, hashable values.  A :class:`Monoid`
descriptor supplies the operation, the identity and a sortable
``key`` that is injective on elements; the key fixes the order in which
terms are serialized.
"""

from __future__ import annotations

import random
from typing import Any, Iterable, Iterator, Mapping

from .reports import Report


class ExponentVector:
    """Finitely supported map ``variable -> exponent`` with zero exponents elided.

    Variables are opaque strings, so the set of variables is open-ended; an
    instance only records the finitely many variables it actually uses.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, entries: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        merged: dict[str, int] = {}
        for var, exp in entries:
            if not isinstance(var, str):
                raise TypeError(f"variable names are strings, got {var!r}")
            exp = int(exp)
            if exp < 0:
                raise ValueError(f"negative exponent {exp} for {var}")
            merged[var] = merged.get(var, 0) + exp
        self._items = tuple(sorted((v, e) for v, e in merged.items() if e))
        self._hash = hash(self._items)

    @classmethod
    def unit(cls, var: str, exp: int = 1) -> ExponentVector:
        return cls(((var, exp),))

    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self._items)

    def __getitem__(self, var: str) -> int:
        for v, e in self._items:
            if v == var:
                return e
        return 0

    def total_degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_identity(self) -> bool:
        return not self._items

    def __add__(self, other: ExponentVector) -> ExponentVector:
        if not isinstance(other, ExponentVector):
            return NotImplemented
        return ExponentVector(self._items + other._items)

    def __sub__(self, other: ExponentVector) -> ExponentVector:
        if not isinstance(other, ExponentVector):
            return NotImplemented
        out = dict(self._items)
        for v, e in other._items:
            left = out.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            out[v] = left
        return ExponentVector(out)

    def divides(self, other: ExponentVector) -> bool:
        return all(other[v] >= e for v, e in self._items)

    def shift(self, var: str, p: int) -> ExponentVector:
        return ExponentVector(self._items + ((var, p),))

    def restrict(self, variables: Iterable[str]) -> ExponentVector:
        keep = set(variables)
        return ExponentVector((v, e) for v, e in self._items if v in keep)

    def __eq__(self, other):
        if not isinstance(other, ExponentVector):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return self._hash

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __str__(self):
        if not self._items:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self._items)

    def __repr__(self):
        return f"ExponentVector({dict(self._items)!r})"


def decompose_exponent(v: ExponentVector) -> list[tuple[str, int]]:
    """The pairs ``(variable, exponent)`` of ``v`` in variable order."""
    return list(v.items())


def total_degree(v: ExponentVector) -> int:
    return v.total_degree()


def graded_key(v: ExponentVector) -> tuple:
    """Sort key for printing: lower total degree first; within a degree,
    earlier variable names with higher powers first (``x^2, x*y, y^2``)."""
    return (v.total_degree(), tuple((var, -e) for var, e in v.items()))


def exponents_of_degree(variables: tuple[str, ...], degree: int) -> Iterator[ExponentVector]:
    """All exponent vectors over ``variables`` of exactly the given total degree."""
    variables = tuple(variables)
    if not variables:
        if degree == 0:
            yield ExponentVector()
        return

    def rec(i: int, left: int, acc: list):
        if i == len(variables) - 1:
            yield ExponentVector(acc + [(variables[i], left)])
            return
        for e in range(left, -1, -1):
            yield from rec(i + 1, left - e, acc + [(variables[i], e)])

    yield from rec(0, degree, [])


def exponents_below(variables: tuple[str, ...], order: int) -> Iterator[ExponentVector]:
    """All exponent vectors over ``variables`` of total degree ``< order``, degree by degree."""
    for d in range(order):
        yield from exponents_of_degree(variables, d)


def exponent_box(u: ExponentVector) -> Iterator[ExponentVector]:
    """Every ``v`` with ``0 <= v_i <= u_i`` componentwise."""
    items = u.items()

    def rec(i: int, acc: list):
        if i == len(items):
            yield ExponentVector(acc)
            return
        var, top = items[i]
        for e in range(top + 1):
            yield from rec(i + 1, acc + [(var, e)])

    yield from rec(0, [])


class Monoid:
    """Descriptor of a monoid ``(M, op, identity)``."""

    identity: Any = None
    is_abelian = False

    def op(self, a, b):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def key(self, a):
        """Sortable, hashable encoding; ``key(a) == key(b)`` iff ``a == b``."""
        return a

    def decode(self, key):
        return key

    def pow(self, a, n: int):
        result = self.identity
        for _ in range(n):
            result = self.op(result, a)
        return result

    def format(self, a) -> str:
        return str(a)

    def describe(self) -> dict:
        raise NotImplementedError

    def to_json(self, a) -> Any:
        raise NotImplementedError

    def from_json(self, obj: Any):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Monoid) and self.describe() == other.describe()

    def __hash__(self):
        return hash(repr(self.describe()))


class ExponentMonoid(Monoid):
    """Additive monoid of exponent vectors; the monomials of a polynomial ring."""

    identity = ExponentVector()
    is_abelian = True

    def __init__(self, sample_variables: Iterable[str] = ("x", "y", "z"), max_exponent: int = 3):
        self.sample_variables = tuple(sample_variables)
        self.max_exponent = max_exponent

    def op(self, a, b):
        return a + b

    def key(self, a):
        return a.items()

    def decode(self, key):
        return ExponentVector(key)

    def pow(self, a, n):
        return ExponentVector((v, e * n) for v, e in a.items())

    def describe(self):
        return {"type": "exponent"}

    def to_json(self, a):
        return [{"var": v, "exp": e} for v, e in a.items()]

    def from_json(self, obj):
        return ExponentVector((entry["var"], entry["exp"]) for entry in obj)

    def random_element(self, rng):
        return ExponentVector(
            (v, rng.randint(0, self.max_exponent)) for v in self.sample_variables
        )

    def __repr__(self):
        return "ExponentMonoid()"


class WordMonoid(Monoid):
    """Free monoid on an alphabet; elements are tuples of symbols."""

    identity: tuple = ()
    is_abelian = False

    def __init__(self, alphabet: Iterable[str] = ("x", "y"), max_length: int = 3):
        self.alphabet = tuple(alphabet)
        self.max_length = max_length
        # one letter generates a commutative free monoid
        self.is_abelian = len(self.alphabet) <= 1

    def op(self, a, b):
        return tuple(a) + tuple(b)

    def word(self, text: str | Iterable[str]) -> tuple[str, ...]:
        w = tuple(text)
        unknown = [s for s in w if s not in self.alphabet]
        if unknown:
            raise ValueError(f"symbols {unknown} not in alphabet {self.alphabet}")
        return w

    def format(self, a):
        if not a:
            return "1"
        parts = []
        i = 0
        while i < len(a):
            j = i
            while j < len(a) and a[j] == a[i]:
                j += 1
            parts.append(a[i] if j - i == 1 else f"{a[i]}^{j - i}")
            i = j
        return "*".join(parts)

    def describe(self):
        return {"type": "word", "alphabet": list(self.alphabet)}

    def to_json(self, a):
        return list(a)

    def from_json(self, obj):
        return tuple(obj)

    def random_element(self, rng):
        n = rng.randint(0, self.max_length)
        return tuple(rng.choice(self.alphabet) for _ in range(n))

    def __repr__(self):
        return f"WordMonoid({self.alphabet!r})"


class CyclicGroup(Monoid):
    """``Z/n`` written additively: element ``k`` stands for ``g^k``."""

    identity = 0
    is_abelian = True

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be at least 1")
        self.order = order

    def op(self, a, b):
        return (a + b) % self.order

    def inverse(self, a):
        return (-a) % self.order

    def format(self, a):
        if a == 0:
            return "1"
        return "g" if a == 1 else f"g^{a}"

    def describe(self):
        return {"type": "cyclic", "order": self.order}

    def to_json(self, a):
        return a

    def from_json(self, obj):
        return int(obj) % self.order

    def random_element(self, rng):
        return rng.randrange(self.order)

    def __repr__(self):
        return f"CyclicGroup({self.order})"


class ProductMonoid(Monoid):
    """``M x N`` with the componentwise operation."""

    def __init__(self, left: Monoid, right: Monoid):
        self.left = left
        self.right = right
        self.identity = (left.identity, right.identity)
        self.is_abelian = left.is_abelian and right.is_abelian

    def op(self, a, b):
        return (self.left.op(a[0], b[0]), self.right.op(a[1], b[1]))

    def eq(self, a, b):
        return self.left.eq(a[0], b[0]) and self.right.eq(a[1], b[1])

    def key(self, a):
        return (self.left.key(a[0]), self.right.key(a[1]))

    def decode(self, key):
        return (self.left.decode(key[0]), self.right.decode(key[1]))

    def format(self, a):
        return f"({self.left.format(a[0])}, {self.right.format(a[1])})"

    def describe(self):
        return {"type": "product", "left": self.left.describe(), "right": self.right.describe()}

    def to_json(self, a):
        return [self.left.to_json(a[0]), self.right.to_json(a[1])]

    def from_json(self, obj):
        return (self.left.from_json(obj[0]), self.right.from_json(obj[1]))

    def random_element(self, rng):
        return (self.left.random_element(rng), self.right.random_element(rng))

    def __repr__(self):
        return f"ProductMonoid({self.left!r}, {self.right!r})"


def monoid_op(monoid: Monoid, a, b):
    return monoid.op(a, b)


def monoid_from_description(desc: dict) -> Monoid:
    kind = desc["type"]
    if kind == "exponent":
        return ExponentMonoid()
    if kind == "word":
        return WordMonoid(desc["alphabet"])
    if kind == "cyclic":
        return CyclicGroup(desc["order"])
    if kind == "product":
        return ProductMonoid(monoid_from_description(desc["left"]),
                             monoid_from_description(desc["right"]))
    raise ValueError(f"unknown monoid type {kind!r}")


def monoid_axiom_check(monoid: Monoid, samples: Iterable[tuple]) -> Report:
    """Associativity and identity on ``(a, b, c)`` triples; commutativity
    when the monoid claims to be abelian, otherwise a noncommuting pair is
    looked for and stored as the ``"noncommuting"`` witness."""
    M = monoid
    report = Report(f"monoid {M!r}")
    for a, b, c in samples:
        report.record("associativity",
                      M.eq(M.op(M.op(a, b), c), M.op(a, M.op(b, c))), (a, b, c))
        report.record("identity",
                      M.eq(M.op(M.identity, a), a) and M.eq(M.op(a, M.identity), a), a)
        report.record("stable key",
                      M.eq(M.decode(M.key(a)), a)
                      and ((M.key(a) == M.key(b)) == M.eq(a, b)), (a, b))
        commute = M.eq(M.op(a, b), M.op(b, a))
        if M.is_abelian:
            report.record("commutativity", commute, (a, b))
        elif not commute and "noncommuting" not in report.witnesses:
            report.witnesses["noncommuting"] = (a, b)
    return report

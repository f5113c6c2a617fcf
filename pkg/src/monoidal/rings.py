"""Coefficient rings.

Every kernel structure is generic over a :class:`Ring` descriptor and only
touches coefficients through its methods (``add``, ``mul``, ``eq`` ...), so
operand order is always preserved and a noncommutative ring could be plugged
in.  Four exact rings ship: ``ZZ`` (Python ints), ``QQ``
(:class:`fractions.Fraction`), ``QQi`` (:class:`GaussianRational`) and
``ModularRing(n)`` (:class:`ModInt`).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .errors import NotAUnit
from .reports import Report


class Ring:
    """Runtime descriptor of a ring: constants, operations and metadata."""

    selector = "?"
    zero: Any = 0
    one: Any = 1
    is_commutative = True
    characteristic = 0
    #: every nonzero integer is invertible, so 1/n! makes sense
    is_q_algebra = False
    #: an element whose square is -1, when the ring ships one
    imaginary_unit: Any = None

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return a * b

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def is_one(self, a) -> bool:
        return self.eq(a, self.one)

    def invert(self, a):
        raise NotAUnit(f"{self.format(a)} is not a unit of {self}")

    def pow(self, a, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def from_int(self, n: int):
        # double-and-add so that rings without a native embedding still work
        result, base, k = self.zero, self.one, abs(n)
        while k:
            if k & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            k >>= 1
        return self.neg(result) if n < 0 else result

    def from_fraction(self, q: Fraction):
        num = self.from_int(q.numerator)
        if q.denominator == 1:
            return num
        return self.mul(num, self.invert(self.from_int(q.denominator)))

    def sum(self, items: Iterable):
        total = self.zero
        for item in items:
            total = self.add(total, item)
        return total

    # -- text and JSON ----------------------------------------------------
    def format(self, a) -> str:
        return str(a)

    def sign_split(self, a) -> tuple[bool, Any]:
        """Return ``(negative, magnitude)`` used when printing ``... - c*x``."""
        return False, a

    def is_atomic(self, a) -> bool:
        """Whether ``format(a)`` can be used as a factor without parentheses."""
        return True

    def to_json(self, a) -> Any:
        raise NotImplementedError

    def from_json(self, obj: Any):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    # -- identity ---------------------------------------------------------
    def _key(self) -> tuple:
        return (type(self).__name__, self.selector)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"

    def __str__(self) -> str:
        return self.selector


class IntegerRing(Ring):
    selector = "int"

    def invert(self, a):
        if a in (1, -1):
            return a
        raise NotAUnit(f"{a} is not a unit of the integers")

    def from_int(self, n):
        return int(n)

    def from_fraction(self, q):
        if q.denominator != 1:
            raise NotAUnit(f"{q} is not an integer")
        return q.numerator

    def sign_split(self, a):
        return (a < 0, -a if a < 0 else a)

    def to_json(self, a):
        return str(a)

    def from_json(self, obj):
        return int(obj)

    def random_element(self, rng):
        return rng.randint(-9, 9)


class RationalField(Ring):
    selector = "rat"
    zero = Fraction(0)
    one = Fraction(1)
    is_q_algebra = True

    def invert(self, a):
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def sign_split(self, a):
        return (a < 0, -a if a < 0 else a)

    def to_json(self, a):
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def from_json(self, obj):
        return Fraction(obj)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 6))


@dataclass(frozen=True)
class GaussianRational:
    """``re + im*I`` with rational parts and ``I*I == -1``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise NotAUnit("0 is not invertible")
        return GaussianRational(self.re / n, -self.im / n)

    def __eq__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = _imag_text(self.im)
        if self.re == 0:
            return im
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {_imag_text(abs(self.im))}"


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "I"
    if im == -1:
        return "-I"
    return f"{im}*I"


class GaussianRationalField(Ring):
    selector = "gauss"
    zero = GaussianRational(0, 0)
    one = GaussianRational(1, 0)
    is_q_algebra = True
    imaginary_unit = GaussianRational(0, 1)

    def invert(self, a):
        return GaussianRational.coerce(a).inverse()

    def from_int(self, n):
        return GaussianRational(n, 0)

    def from_fraction(self, q):
        return GaussianRational(q, 0)

    def sign_split(self, a):
        negative = a.re < 0 or (a.re == 0 and a.im < 0)
        return (negative, -a if negative else a)

    def is_atomic(self, a):
        return a.re == 0 or a.im == 0

    def to_json(self, a):
        return {"re": RationalField().to_json(a.re), "im": RationalField().to_json(a.im)}

    def from_json(self, obj):
        return GaussianRational(Fraction(obj["re"]), Fraction(obj["im"]))

    def random_element(self, rng):
        q = RationalField()
        return GaussianRational(q.random_element(rng), q.random_element(rng))


@dataclass(frozen=True)
class ModInt:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise TypeError("moduli differ")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        r = self._other(other)
        return r if r is NotImplemented else ModInt(self.modulus, self.residue + r)

    __radd__ = __add__

    def __neg__(self):
        return ModInt(self.modulus, -self.residue)

    def __sub__(self, other):
        r = self._other(other)
        return r if r is NotImplemented else ModInt(self.modulus, self.residue - r)

    def __mul__(self, other):
        r = self._other(other)
        return r if r is NotImplemented else ModInt(self.modulus, self.residue * r)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return (other - self.residue) % self.modulus == 0
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.residue == other.residue
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.residue))

    def __str__(self):
        return str(self.residue)


class ModularRing(Ring):
    """The integers modulo ``n``; characteristic ``n``, zero divisors when ``n`` is composite."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus
        self.characteristic = modulus
        self.selector = f"mod:{modulus}"
        self.zero = ModInt(modulus, 0)
        self.one = ModInt(modulus, 1)

    def invert(self, a):
        try:
            return ModInt(self.modulus, pow(a.residue, -1, self.modulus))
        except ValueError:
            raise NotAUnit(f"{a.residue} is not a unit modulo {self.modulus}") from None

    def from_int(self, n):
        return ModInt(self.modulus, n)

    def to_json(self, a):
        return {"mod": self.modulus, "val": a.residue}

    def from_json(self, obj):
        if obj["mod"] != self.modulus:
            raise ValueError(f"expected modulus {self.modulus}, got {obj['mod']}")
        return ModInt(self.modulus, obj["val"])

    def random_element(self, rng):
        return ModInt(self.modulus, rng.randrange(self.modulus))

    def __repr__(self):
        return f"ModularRing({self.modulus})"


ZZ = IntegerRing()
QQ = RationalField()
QQi = GaussianRationalField()


def ring_from_selector(selector: str) -> Ring:
    """Parse ``int``, ``rat``, ``gauss`` or ``mod:n``."""
    fixed = {"int": ZZ, "rat": QQ, "gauss": QQi}
    if selector in fixed:
        return fixed[selector]
    if selector.startswith("mod:"):
        try:
            n = int(selector[4:])
        except ValueError:
            raise ValueError(f"bad modulus in ring selector {selector!r}") from None
        if n < 2:
            raise ValueError("mod:n requires n >= 2")
        return ModularRing(n)
    raise ValueError(f"unknown ring {selector!r} (expected int, rat, gauss or mod:n)")


def try_invert(ring: Ring, a):
    """Return the two-sided inverse of ``a`` or raise :class:`NotAUnit`."""
    return ring.invert(a)


def additive_order_of_one(ring: Ring, limit: int = 10_000) -> int:
    """Smallest ``n > 0`` with ``n*1 == 0`` by repeated summation, 0 if none up to ``limit``."""
    total = ring.zero
    for n in range(1, limit + 1):
        total = ring.add(total, ring.one)
        if ring.is_zero(total):
            return n
    return 0


def ring_axiom_check(ring: Ring, samples: Iterable[tuple]) -> Report:
    """Check the ring axioms on the given ``(a, b, c)`` triples.

    Zero divisors met along the way are recorded in ``witnesses`` under
    ``"zero_divisor"``; they do not fail anything.
    """
    report = Report(f"ring {ring}")
    R = ring
    for a, b, c in samples:
        report.record("additive associativity",
                      R.eq(R.add(R.add(a, b), c), R.add(a, R.add(b, c))), (a, b, c))
        report.record("additive commutativity", R.eq(R.add(a, b), R.add(b, a)), (a, b))
        report.record("additive identity", R.eq(R.add(a, R.zero), a), a)
        report.record("additive inverse", R.is_zero(R.add(a, R.neg(a))), a)
        report.record("multiplicative associativity",
                      R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c))), (a, b, c))
        report.record("multiplicative identity",
                      R.eq(R.mul(R.one, a), a) and R.eq(R.mul(a, R.one), a), a)
        report.record("left distributivity",
                      R.eq(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c))), (a, b, c))
        report.record("right distributivity",
                      R.eq(R.mul(R.add(a, b), c), R.add(R.mul(a, c), R.mul(b, c))), (a, b, c))
        if R.is_commutative:
            report.record("multiplicative commutativity", R.eq(R.mul(a, b), R.mul(b, a)), (a, b))
        if ("zero_divisor" not in report.witnesses and not R.is_zero(a)
                and not R.is_zero(b) and R.is_zero(R.mul(a, b))):
            report.witnesses["zero_divisor"] = (a, b)
    return report


def random_triples(ring: Ring, count: int, rng: random.Random) -> list[tuple]:
    return [tuple(ring.random_element(rng) for _ in range(3)) for _ in range(count)]


def falling_product(s: int, p: int) -> int:
    """``(s+1)(s+2)...(s+p)``, i.e. ``(s+p)!/s!`` without the factorials."""
    return math.prod(range(s + 1, s + p + 1))

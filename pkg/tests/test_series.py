import random
import threading
from fractions import Fraction

import pytest

from monoidal.errors import (CharacteristicNotZero, NonUnitConstantTerm, NotAUnit, OverlappingVariables,
                             StructureMismatch, UnknownVariable)
from monoidal.monoids import ExponentVector, exponents_below
from monoidal.polynomial import PolynomialRing
from monoidal.rings import QQ, QQi, ZZ, GaussianRational, ModularRing
from monoidal.series import (PowerSeriesRing, agree_through, constant, derivative,
                             derivative_laws_suite, euler_suite, exp_series, first_disagreement, from_function,
                             from_polynomial, invert, named_series, random_series, series_curry,
                             series_uncurry, series_variable, sin_cos_sign, univariate)
from oracles import cos_list, exp_list, list_mul, sin_list

QX = PolynomialRing(QQ)


def coeffs(f, n, var="x"):
    return [f.coefficient(ExponentVector.unit(var, i)) for i in range(n)]


def poly(*cs, ring=QQ, var="x"):
    P = PolynomialRing(ring)
    return from_polynomial(P.element((ExponentVector.unit(var, i), ring.from_int(c)) for i, c in enumerate(cs)),
                           (var,))


def test_coefficient_examples():
    assert named_series("geom_plus", QQ).coefficient(3) == -1
    for a in (Fraction(2), Fraction(-1, 3)):
        e = exp_series(QQ, a)
        assert coeffs(e, 8) == exp_list(a, 8)
    f = random_series(QQ, ("x", "y"), 3)
    assert f.coefficient(ExponentVector()) == f.constant_term()
    assert f.coefficient({"x": 1, "y": 2}) == f[ExponentVector({"x": 1, "y": 2})]


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        named_series("exp", QQ).coefficient({"y": 1})


def test_multiplication_examples():
    one = constant(QQ, QQ.one, ("x",))
    assert agree_through(poly(1, 1) * named_series("geom_plus", QQ), one, 30)
    assert agree_through(poly(1, -1) * named_series("geom_minus", QQ), one, 30)
    zero = constant(QQ, QQ.zero, ("x",))
    assert agree_through(named_series("exp", QQ) * zero, zero, 15)


def test_multiplication_against_list_convolution():
    for seed in range(20):
        f = random_series(QQ, ("x",), ("f", seed))
        g = random_series(QQ, ("x",), ("g", seed))
        n = 12
        assert coeffs(f * g, n) == list_mul(coeffs(f, n), coeffs(g, n), n)


def test_multivariate_product_example():
    x, y = series_variable(QQ, "x"), series_variable(QQ, "y")
    s = (x + y) * (x - y)
    assert s.to_text(4) == "x^2 - y^2 + O(deg 4)"


def test_structure_mismatch():
    with pytest.raises(StructureMismatch):
        named_series("exp", QQ) + named_series("geom_plus", ZZ)


def test_derivative_examples():
    cube = poly(0, 0, 0, 1)
    assert coeffs(derivative(cube, "x"), 4) == [0, 0, 3, 0]
    y2 = from_polynomial(QX.monomial({"y": 2}), ("x", "y"))
    assert agree_through(derivative(y2, "x"), constant(QQ, QQ.zero, ("x", "y")), 6)
    # in positive characteristic the falling product reduces into the ring
    Z5 = ModularRing(5)
    s = univariate(Z5, "x", lambda n: Z5.one)
    assert [c.residue for c in coeffs(derivative(s, "x", 2), 6)] == [(n + 1) * (n + 2) % 5 for n in range(6)]


@pytest.mark.parametrize("a", [Fraction(1), Fraction(2), Fraction(-1, 3)])
def test_derivatives_of_exp(a):
    e = exp_series(QQ, a)
    for p in range(1, 6):
        assert agree_through(derivative(e, "x", p), e.scale(a ** p), 12)


def test_named_series_values():
    assert coeffs(named_series("cos", QQ), 5) == [1, 0, Fraction(-1, 2), 0, Fraction(1, 24)]
    assert named_series("sin", QQ).coefficient(1) == 1
    assert coeffs(named_series("sin", QQ), 15) == sin_list(15)
    assert coeffs(named_series("cos", QQ), 15) == cos_list(15)
    assert coeffs(exp_series(QQ, QQ.zero), 5) == [1, 0, 0, 0, 0]
    assert coeffs(named_series("geom_minus", QQ, "t"), 4, "t") == [1, 1, 1, 1]


def test_named_series_errors():
    with pytest.raises(CharacteristicNotZero):
        named_series("exp", ModularRing(5))
    with pytest.raises(NotAUnit):
        named_series("sin", ZZ)
    with pytest.raises(ValueError):
        named_series("tan", QQ)
    # the geometric series live over any ring
    assert named_series("geom_plus", ModularRing(5)).coefficient(1).residue == 4


def test_invert():
    assert coeffs(invert(poly(1, 1)), 8) == [(-1) ** n for n in range(8)]
    assert agree_through(invert(constant(QQ, QQ.one, ("x",))), constant(QQ, QQ.one, ("x",)), 10)
    g = invert(poly(2, 1))
    assert g.constant_term() == Fraction(1, 2)
    # hand-unrolled recurrence: g_n = -(1/2) g_{n-1}, checked by f*g = 1 on lists
    expected = [Fraction((-1) ** n, 2 ** (n + 1)) for n in range(6)]
    assert coeffs(g, 6) == expected
    assert list_mul([2, 1], expected, 6) == [1, 0, 0, 0, 0, 0]
    with pytest.raises(NonUnitConstantTerm):
        invert(series_variable(QQ, "x"))
    with pytest.raises(NonUnitConstantTerm):
        invert(poly(2, 1, ring=ZZ))


def test_invert_is_two_sided_and_idempotent():
    for seed in range(10):
        f = random_series(QQ, ("x", "y"), seed) + 1
        if f.constant_term() == 0:
            continue
        g = invert(f)
        one = constant(QQ, QQ.one, ("x", "y"))
        assert agree_through(f * g, one, 8)
        assert agree_through(g * f, one, 8)
        assert agree_through(invert(g), f, 8)


def test_invert_deep_univariate():
    g = invert(poly(1, -1))
    assert g.coefficient(600) == 1


def test_euler_suite():
    report = euler_suite(QQi, 20)
    assert report.ok, report.lines()
    assert len(report.checks) == 5
    sin, cos = named_series("sin", QQ), named_series("cos", QQ)
    sq = sin * sin + cos * cos
    assert sq.constant_term() == 1
    # (x - x^3/6)^2 + (1 - x^2/2)^2 has x^2 coefficient 1 - 1 = 0
    assert sq.coefficient(2) == 0


def test_euler_suite_detects_a_bad_lambda():
    report = euler_suite(QQi, 10, lam=GaussianRational(1, 0))
    assert not report.ok


def test_derivative_laws_suite():
    report = derivative_laws_suite(order_bound=6, order=12, pairs=10)
    assert report.ok, report.failures()
    report2 = derivative_laws_suite(order_bound=3, order=6, pairs=3, variables=("x", "y"))
    assert report2.ok


def test_leibniz_example():
    f = poly(1, 1)
    lhs = derivative(f * f, "x", 2)
    assert coeffs(lhs, 3) == [2, 0, 0]
    rhs = derivative(f, "x", 2) * f + (derivative(f, "x", 1) * derivative(f, "x", 1)).scale(Fraction(2)) \
        + f * derivative(f, "x", 2)
    assert agree_through(lhs, rhs, 5)


def test_sign_patterns():
    assert [sin_cos_sign(p, "sin") for p in range(1, 9)] == [1, -1, -1, 1, 1, -1, -1, 1]
    assert [sin_cos_sign(p, "cos") for p in range(1, 9)] == [-1, -1, 1, 1, -1, -1, 1, 1]
    sin, cos = named_series("sin", QQ), named_series("cos", QQ)
    assert agree_through(derivative(cos, "x"), -sin, 10)
    assert agree_through(derivative(sin, "x"), cos, 10)


def test_mixed_partials_example():
    h = from_polynomial(QX.monomial({"x": 2, "y": 3}))
    a = derivative(derivative(h, "x", 1), "y", 2)
    b = derivative(derivative(h, "y", 2), "x", 1)
    assert agree_through(a, b, 8)
    assert a.coefficient({"x": 1, "y": 1}) == 12


def test_series_curry():
    x, y = series_variable(QQ, "x"), series_variable(QQ, "y")
    T = series_curry(x * y, ("x",), ("y",))
    assert isinstance(T.ring, PowerSeriesRing)
    inner = T.coefficient({"y": 1})
    assert inner.coefficient({"x": 1}) == 1 and inner.coefficient({"x": 0}) == 0
    with pytest.raises(OverlappingVariables):
        series_curry(x * y, ("x", "y"), ("y",))
    with pytest.raises(UnknownVariable):
        series_curry(x * y, ("x",), ())


def test_series_curry_round_trip_and_multiplicativity():
    rng = random.Random(6)
    f = random_series(QQ, ("x", "y", "z"), "f")
    g = random_series(QQ, ("x", "y", "z"), "g")
    T = series_curry(f, ("x",), ("y", "z"))
    back = series_uncurry(T)
    for _ in range(50):
        m = ExponentVector({v: rng.randint(0, 4) for v in ("x", "y", "z")})
        assert back.coefficient(m) == f.coefficient(m)
        outer = m.restrict(("y", "z"))
        assert T.coefficient(outer).coefficient(m.restrict(("x",))) == f.coefficient(m)
    Tf, Tg = series_curry(f, ("x",), ("y", "z")), series_curry(g, ("x",), ("y", "z"))
    prod = Tf * Tg
    flat = series_uncurry(prod)
    assert agree_through(flat, f * g, 5)


def test_convolution_reads_only_the_box():
    f_reads, g_reads = [], []
    f = from_function(QQ, ("x", "y"), lambda m: (f_reads.append(m), Fraction(1))[1])
    g = from_function(QQ, ("x", "y"), lambda m: (g_reads.append(m), Fraction(2))[1])
    u = ExponentVector({"x": 3, "y": 2})
    assert (f * g).coefficient(u) == 2 * 12
    for reads in (f_reads, g_reads):
        assert all(m.divides(u) for m in reads)
        # memoized: each exponent of the 4x3 box is read at most once
        assert len(reads) == len(set(reads)) <= 12


def test_associativity_against_triple_sum():
    for seed in range(5):
        f, g, h = (random_series(QQ, ("x", "y"), (seed, k)) for k in range(3))
        lhs = (f * g) * h
        rhs = f * (g * h)
        for m in exponents_below(("x", "y"), 10):
            flat = sum((f.coefficient(u) * g.coefficient(v) * h.coefficient(m - u - v)
                        for u in exponents_below(("x", "y"), m.total_degree() + 1) if u.divides(m)
                        for v in exponents_below(("x", "y"), m.total_degree() + 1) if v.divides(m - u)),
                       Fraction(0))
            assert lhs.coefficient(m) == flat == rhs.coefficient(m)


def test_power():
    s = poly(1, 1)
    assert coeffs(s ** 5, 7) == [1, 5, 10, 10, 5, 1, 0]
    assert coeffs(s ** 0, 2) == [1, 0]
    with pytest.raises(ValueError):
        s ** -1


def test_memo_clearing_is_invisible():
    f = invert(random_series(QQ, ("x", "y"), 1) + 3)
    before = [f.coefficient(m) for m in exponents_below(("x", "y"), 6)]
    f.clear_memo()
    assert [f.coefficient(m) for m in exponents_below(("x", "y"), 6)] == before


def test_concurrent_queries_agree():
    f = invert(random_series(QQ, ("x", "y"), 2) + 5) * named_series("exp", QQ, "x")
    ms = list(exponents_below(("x", "y"), 9))
    reference = [f.coefficient(m) for m in ms]
    f.clear_memo()
    results = [None] * 8

    def work(i):
        order = ms[::-1] if i % 2 else ms
        got = {m: f.coefficient(m) for m in order}
        results[i] = [got[m] for m in ms]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == reference for r in results)


def test_text_and_json():
    assert invert(poly(1, 1)).to_text(6) == "1 - x + x^2 - x^3 + x^4 - x^5 + O(x^6)"
    assert constant(QQ, QQ.zero, ("x",)).to_text(3) == "O(x^3)"
    assert named_series("exp", QQ).to_json(3) == {
        "ring": "rat", "vars": ["x"], "order": 3,
        "terms": [{"elem": [], "coef": "1/1"}, {"elem": [{"var": "x", "exp": 1}], "coef": "1/1"},
                  {"elem": [{"var": "x", "exp": 2}], "coef": "1/2"}],
    }


def test_first_disagreement():
    a, b = poly(1, 2, 3), poly(1, 2, 4)
    assert first_disagreement(a, b, 5) == ExponentVector.unit("x", 2)
    assert first_disagreement(a, a, 5) is None

"""Exact linear forms in logarithms of primes."""

from fractions import Fraction

from monoheight import LogLinear, Quad

SQRT5 = Quad(0, 1, 5)


def test_zero_iff_all_coefficients_zero():
    assert LogLinear({}).is_zero
    assert LogLinear({2: 0, 3: Fraction(0)}).is_zero
    assert not LogLinear({2: 1}).is_zero
    # log 2 + log 3 - log 6-free: no relation exists among distinct primes
    assert not LogLinear({2: 1, 3: 1, 5: -1}).is_zero


def test_sign_decisions():
    # log 6 > log 5 by a whisker of 0.18; 2 log 3 > 3 log 2 (9 > 8)
    assert LogLinear({2: 1, 3: 1, 5: -1}).sign() == 1
    assert LogLinear({3: 2, 2: -3}).sign() == 1
    assert LogLinear({2: 3, 3: -2}).sign() == -1
    assert LogLinear({}).sign() == 0


def test_sign_needs_deep_precision():
    # 485 log 2 - 306 log 3 = 0.00102...: the convergent 306/485 of
    # log2/log3 agrees to 1e-5, so the sign needs a tight enclosure
    assert LogLinear({2: 485, 3: -306}).sign() == 1
    assert LogLinear({2: 485}).compare(LogLinear({3: 306})) == 1
    assert LogLinear({2: -485, 3: 306}).sign() == -1


def test_arith_and_scale():
    a = LogLinear({2: 1, 3: 2})
    b = LogLinear({3: -2, 5: 1})
    assert a + b == LogLinear({2: 1, 5: 1})
    assert a - a == LogLinear({})
    assert a.scale(Fraction(3)) == LogLinear({2: 3, 3: 6})
    assert a.scale(SQRT5).scale(SQRT5) == a.scale(5)


def test_quadratic_coefficients():
    phi = Quad(Fraction(1, 2), Fraction(1, 2), 5)
    x = LogLinear({2: phi, 3: 1 - phi})
    assert (x + x.scale(-1)).is_zero
    assert x.scale(phi.inverse()).scale(phi) == x


def test_enclosure_and_evaluate():
    from monoheight.precision import fraction_to_mpf, mp

    x = LogLinear({2: 1, 3: 1})  # log 6
    lo, hi = x.enclosure(96)
    assert hi - lo < Fraction(1, 2**64)
    with mp.workprec(200):
        assert mp.exp(fraction_to_mpf(lo, 200)) < 6 < mp.exp(fraction_to_mpf(hi, 200))
    assert abs(float(x.evaluate(96)) - 1.791759469228055) < 1e-12


def test_max_with_zero():
    assert LogLinear({2: -1}).max_with_zero() == LogLinear({})
    assert LogLinear({2: 1}).max_with_zero() == LogLinear({2: 1})
    assert LogLinear({}).max_with_zero() == LogLinear({})


def test_str():
    assert str(LogLinear({})) == "0"
    assert str(LogLinear({2: 1})) == "log 2"
    s = str(LogLinear({2: Fraction(5, 3), 3: -1}))
    assert "log 2" in s and "log 3" in s

"""Integer polynomials: arithmetic, Sturm counts, cyclotomic detection."""

from fractions import Fraction

import pytest
import sympy

from monoheight import InputError, IntPoly, poly_str
from monoheight.polys import (
    cyclotomic_index,
    is_squarefree,
    mul,
    root_bound,
    squarefree_part,
    sturm_chain,
    sturm_count,
)

X2_X_1 = IntPoly([-1, -1, 1])  # x^2 - x - 1


def test_construction_and_eval():
    p = IntPoly([-1, -1, 1])
    assert p.degree == 2
    assert p.lc == 1
    assert p(Fraction(2)) == 1
    assert p(Fraction(1, 2)) == Fraction(-5, 4)
    with pytest.raises(InputError):
        IntPoly([])


def test_poly_str():
    assert poly_str(X2_X_1) == "x^2-x-1"
    assert poly_str(IntPoly([2])) == "2"
    assert poly_str(IntPoly([0, 1])) == "x"
    assert poly_str(IntPoly([1, 0, 2])) == "2*x^2+1"
    assert poly_str(IntPoly([-3, 2])) == "2*x-3"


def test_mul_matches_sympy():
    x = sympy.Symbol("x")
    p = IntPoly([3, 0, -2, 1])
    q = IntPoly([-1, 4])
    prod = mul(p, q)
    assert prod.to_sympy().as_expr().expand() == (p.to_sympy().as_expr() * q.to_sympy().as_expr()).expand()


def test_derivative_content_primitive():
    p = IntPoly([4, 0, 6])
    assert p.derivative() == IntPoly([0, 12])
    assert p.content() == 2
    assert p.primitive() == IntPoly([2, 0, 3])


def test_squarefree():
    p = mul(X2_X_1, X2_X_1)
    assert not is_squarefree(p)
    assert squarefree_part(p) == X2_X_1
    assert is_squarefree(X2_X_1)


def test_sturm_counts():
    # x^2 - x - 1 has two real roots: phi in (1,2) and -1/phi in (-1,0)
    chain = sturm_chain(X2_X_1)
    assert sturm_count(X2_X_1, Fraction(-10), Fraction(10), chain) == 2
    assert sturm_count(X2_X_1, Fraction(1), Fraction(2), chain) == 1
    assert sturm_count(X2_X_1, Fraction(-1), Fraction(0), chain) == 1
    assert sturm_count(X2_X_1, Fraction(2), Fraction(10), chain) == 0
    # x^2 + 1 has no real roots
    assert sturm_count(IntPoly([1, 0, 1]), Fraction(-10), Fraction(10)) == 0


def test_root_bound():
    b = root_bound(X2_X_1)
    assert b >= Fraction(1618, 1000)
    assert root_bound(IntPoly([100, 0, 1])) >= 10


def test_cyclotomic_index():
    assert cyclotomic_index(IntPoly([-1, 1])) == 1  # x - 1
    assert cyclotomic_index(IntPoly([1, 1])) == 2  # x + 1
    assert cyclotomic_index(IntPoly([1, 1, 1])) == 3
    assert cyclotomic_index(IntPoly([1, 0, 1])) == 4  # x^2 + 1
    assert cyclotomic_index(IntPoly([1, -1, 1])) == 6
    assert cyclotomic_index(X2_X_1) is None
    assert cyclotomic_index(IntPoly([-2, 1])) is None  # x - 2


def test_shift_compose_power():
    # p(x^2) for p = x - 3
    assert IntPoly([-3, 1]).shift_compose_power(2) == IntPoly([-3, 0, 1])

from fractions import Fraction

from vertexkernel.linalg import kernel_coefficients, rank_of
from vertexkernel.lincomb import LinComb


def V(**kw):
    out = LinComb()
    for k, c in kw.items():
        out.add_into(LinComb.single(k, c))
    return out


def test_rank_basichull():
    a = V(x=1, y=2)
    b = V(y=1)
    assert rank_of([a, b]) == 2
    assert rank_of([a, b, a + b, a - b]) == 2
    assert rank_of([LinComb(), LinComb()]) == 0
    assert rank_of([]) == 0


def test_kernel_of_dependent_family():
    a = V(x=1, y=2)
    ker = kernel_coefficients([a, 2 * a])
    assert ker == [(Fraction(-2), Fraction(1))]


def test_kernel_of_independent_family_is_empty():
    assert kernel_coefficients([V(x=1), V(y=1)]) == []


def test_kernel_spans_relations():
    a, b = V(x=1), V(y=1)
    ker = kernel_coefficients([a, b, a + b])
    assert ker == [(Fraction(-1), Fraction(-1), Fraction(1))]


def test_kernel_zero_vectors():
    # every coordinate hitting a zero vector is free
    ker = kernel_coefficients([LinComb(), V(x=1), LinComb()])
    assert ker == [
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    ]


def test_kernel_fractional_pivots():
    a = V(x=Fraction(1, 2))
    b = V(x=Fraction(1, 3))
    ker = kernel_coefficients([a, b])
    assert len(ker) == 1
    x = ker[0]
    assert x[0] * Fraction(1, 2) + x[1] * Fraction(1, 3) == 0

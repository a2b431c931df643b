from itertools import combinations

import pytest
import sympy

from dcabp.abp import abp_eval, abp_to_poly
from dcabp.convert import abp_to_pencil
from dcabp.errors import NotRegular
from dcabp.instgen import (
    elem_sym_abp,
    power_sum_abp,
    random_hom_abp,
    random_pencil,
    random_regular_pencil,
    scramble_pencil,
    synth_r_regular_pencil,
)
from dcabp.pencil import constant_rank
from dcabp.verify import symbolic_det
from oracles import sympy_det, symbols, to_sympy


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(2, 6))
def test_power_sum(n, d):
    a = power_sum_abp(n, d)
    x = symbols(n)
    assert a.is_homogeneous()
    assert a.width() == n and a.size() == (d - 1) * n
    assert to_sympy(abp_to_poly(a)) == sum(xi**d for xi in x)


def test_power_sum_examples():
    assert abp_eval(power_sum_abp(3, 3), [1, 2, 3]) == 36
    x = symbols(1)
    assert to_sympy(abp_to_poly(power_sum_abp(1, 5))) == x[0] ** 5


@pytest.mark.parametrize("n", range(1, 7))
def test_elem_sym(n):
    x = symbols(n)
    for k in range(1, n + 1):
        a = elem_sym_abp(n, k)
        expected = sum(sympy.Mul(*c) for c in combinations(x, k))
        assert to_sympy(abp_to_poly(a)) == sympy.expand(expected)
        if k >= 2:
            assert a.is_homogeneous()
            assert a.width() <= n - k + 1


def test_elem_sym_bad_args():
    with pytest.raises(ValueError):
        elem_sym_abp(3, 4)


def test_random_hom_abp_deterministic():
    a = random_hom_abp(3, 3, 2, seed=42)
    b = random_hom_abp(3, 3, 2, seed=42)
    assert abp_to_poly(a) == abp_to_poly(b)
    assert a.is_homogeneous() and a.widths == (2, 2)
    assert abp_to_poly(a).homogeneity_degree() == 3


def test_random_hom_abp_golden():
    # recorded at generation time; guards against silent changes to the sampler
    x = symbols(3)
    expected = (64 * x[0] ** 3 + 192 * x[0] ** 2 * x[1] + 336 * x[0] ** 2 * x[2] + 264 * x[0] * x[1] ** 2
                + 860 * x[0] * x[1] * x[2] + 192 * x[0] * x[2] ** 2 - 308 * x[1] ** 3
                + 236 * x[1] ** 2 * x[2] + 636 * x[1] * x[2] ** 2)
    assert to_sympy(abp_to_poly(random_hom_abp(3, 3, 2, seed=1))) == expected


def test_random_hom_width_one_is_product_of_forms():
    a = random_hom_abp(4, 4, 1, seed=3)
    poly = to_sympy(abp_to_poly(a))
    factors = sympy.factor_list(poly)[1]
    assert sum(mult for f, mult in factors if sympy.Poly(f).total_degree() == 1) == 4


def test_synth_r_regular(x1x2_pencil):
    p = synth_r_regular_pencil([x1x2_pencil, x1x2_pencil])
    assert p.s == 4 and constant_rank(p).r == 2
    assert to_sympy(symbolic_det(p)) == sympy_det(x1x2_pencil) ** 2
    assert synth_r_regular_pencil([x1x2_pencil]) == x1x2_pencil


def test_synth_degrees_add():
    p = synth_r_regular_pencil([abp_to_pencil(power_sum_abp(2, 2)), abp_to_pencil(power_sum_abp(2, 3))])
    assert constant_rank(p).r == 2
    assert symbolic_det(p).homogeneity_degree() == 5


def test_synth_rejects_non_regular(generic2_pencil):
    with pytest.raises(NotRegular):
        synth_r_regular_pencil([generic2_pencil])


@pytest.mark.parametrize("n,d", [(2, 2), (3, 3), (4, 5), (6, 4)])
def test_power_sum_pencil_regular(n, d):
    assert constant_rank(abp_to_pencil(power_sum_abp(n, d))).is_regular


def test_scramble_keeps_det(xyz_pencil):
    q = scramble_pencil(xyz_pencil, seed=9)
    assert q != xyz_pencil
    assert symbolic_det(q) == symbolic_det(xyz_pencil)


def test_random_regular_pencil():
    p, src, d = random_regular_pencil(0)
    assert constant_rank(p).is_regular and p.s <= 10
    assert symbolic_det(p) == abp_to_poly(src)


def test_random_pencil_rank():
    p = random_pencil(1, 5, 3, 2)
    assert constant_rank(p).rank0 <= 2
    assert p == random_pencil(1, 5, 3, 2)

"""Independent oracles: sympy expansion and Leibniz determinants."""
from fractions import Fraction
from itertools import permutations

import sympy

from dcabp.algebra import QQ, LinearForm, Poly
from dcabp.pencil import Pencil


def lf(n, const=0, **coeffs):
    """``lf(3, 1, x0=2)`` is the form 1 + 2*x0 in three variables."""
    return LinearForm(n, QQ, const, {int(k[1:]): v for k, v in coeffs.items()})


def pencil(n, rows):
    """Pencil from a grid of ``(const, {var: coeff})`` pairs."""
    return Pencil([[LinearForm(n, QQ, c, m) for c, m in row] for row in rows], n, QQ)


def symbols(n):
    return sympy.symbols(f"x0:{n}")


def q(c):
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def to_sympy(p: Poly):
    xs = symbols(p.nvars)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = q(c)
        for x, k in zip(xs, e):
            term *= x**k
        expr += term
    return sympy.expand(expr)


def lf_sympy(form: LinearForm):
    xs = symbols(form.nvars)
    return q(form.const) + sum(q(c) * xs[i] for i, c in form.coeffs.items())


def sympy_det(p: Pencil):
    """Determinant by sympy's own algorithm, used as an independent oracle."""
    m = sympy.Matrix([[lf_sympy(e) for e in row] for row in p.entries])
    return sympy.expand(m.det(method="berkowitz"))


def leibniz_det_poly(grid, nvars, field=QQ):
    """Sum over permutations with signs; grid entries are Polys."""
    s = len(grid)
    total = Poly.zero(nvars, field)
    for perm in permutations(range(s)):
        inv = sum(1 for i in range(s) for j in range(i + 1, s) if perm[i] > perm[j])
        term = Poly.constant(-1 if inv % 2 else 1, nvars, field)
        for i, j in enumerate(perm):
            term = term * grid[i][j]
        total = total + term
    return total


def symbolic_matrix_det(n, field=QQ):
    """Leibniz determinant of the n x n matrix of variables y_{ij} (index i*n+j)."""
    grid = [[Poly.var(i * n + j, n * n, field) for j in range(n)] for i in range(n)]
    return leibniz_det_poly(grid, n * n, field)

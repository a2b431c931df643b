"""Dense scalar matrices over a :class:`FieldSpec` (lists of lists of raw values)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence

from .algebra import FieldSpec
from .errors import DimensionMismatch, DivisionByZero

Matrix = List[List[object]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(field: FieldSpec, a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    ncols = len(b[0]) if b else 0
    p = field.modulus
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x == 0:
                continue
            for j, y in enumerate(b[k]):
                if y != 0:
                    acc[j] += x * y
        out.append([v % p for v in acc] if p is not None else acc)
    return out


def det(field: FieldSpec, m: Sequence[Sequence]) -> object:
    """Exact determinant: fraction-free Bareiss over QQ, Gaussian elimination mod p."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    if field.modulus is None:
        return _det_bareiss(m)
    return _det_modp(m, field.modulus)


def _det_bareiss(m) -> object:
    n = len(m)
    # clear denominators so Bareiss runs on integers
    scale = Fraction(1)
    rows = []
    for row in m:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
        scale /= den
    a = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * piv - aik * rk[j]) // prev
            ri[k] = 0
        prev = piv
    result = sign * a[n - 1][n - 1] * scale
    return result.numerator if result.denominator == 1 else result


def _det_modp(m, p: int) -> int:
    a = [[x % p for x in row] for row in m]
    n = len(a)
    result = 1
    for k in range(n):
        piv_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv_row is None:
            return 0
        if piv_row != k:
            a[k], a[piv_row] = a[piv_row], a[k]
            result = -result
        piv = a[k][k]
        result = result * piv % p
        inv = pow(piv, -1, p)
        rk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                ri = a[i]
                for j in range(k, n):
                    ri[j] = (ri[j] - f * rk[j]) % p
    return result % p


def rank(field: FieldSpec, m: Sequence[Sequence]) -> int:
    a = [list(row) for row in m]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][col])
        for i in range(r + 1, nrows):
            if a[i][col] != 0:
                f = field.mul(a[i][col], inv)
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def inverse(field: FieldSpec, m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    a = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise DivisionByZero("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = field.inv(a[col][col])
        a[col] = [field.mul(x, inv) for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]

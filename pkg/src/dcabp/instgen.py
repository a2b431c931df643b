"""Instance families: classical homogeneous polynomials, random ABPs and pencils."""
from __future__ import annotations

from typing import List, Sequence

from .abp import Abp, LinMatrix, linear_abp
from .algebra import QQ, FieldSpec, LinearForm
from .convert import abp_to_pencil
from .errors import NotRegular
from .pencil import Pencil, block_diagonal, constant_rank
from .verify import make_rng, random_element

LABEL_DENSITY = 0.5


def _var(i: int, n: int, field: FieldSpec) -> LinearForm:
    return LinearForm.var(i, n, field)


def power_sum_abp(n: int, d: int, field: FieldSpec = QQ) -> Abp:
    """Width-n homogeneous ABP for ``x_0^d + ... + x_{n-1}^d``."""
    if n < 1 or d < 2:
        raise ValueError("power sums need n >= 1 and d >= 2")
    xs = [_var(i, n, field) for i in range(n)]
    diag = LinMatrix(n, n, [{i: xs[i]} for i in range(n)])
    return Abp(xs, [diag] * (d - 2), xs, n, field)


def elem_sym_abp(n: int, k: int, field: FieldSpec = QQ):
    """ABP for the elementary symmetric polynomial ``e_k(x_0, ..., x_{n-1})``.

    Layer t holds the index j of the (t+1)-th chosen variable, restricted so
    that enough variables remain; the sink edge from j carries the sum of all
    later variables.  Strictly homogeneous with width n-k+1 when k >= 2.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if k == 1:
        return linear_abp(LinearForm(n, field, 0, {i: 1 for i in range(n)}))
    span = n - k + 1
    # vertex u of layer t stands for variable t + u
    b = [_var(u, n, field) for u in range(span)]
    mats = []
    for t in range(1, k - 1):
        rows = [{v: _var(t + v, n, field) for v in range(u, span)} for u in range(span)]
        mats.append(LinMatrix(span, span, rows))
    last = k - 2
    c = [LinearForm(n, field, 0, {j: 1 for j in range(last + u + 1, n)}) for u in range(span)]
    return Abp(b, mats, c, n, field)


def _random_label(rng, n: int, field: FieldSpec) -> LinearForm:
    while True:
        coeffs = {}
        for i in range(n):
            if rng.random() < LABEL_DENSITY:
                coeffs[i] = random_element(rng, field, nonzero=True)
        if coeffs:
            return LinearForm(n, field, 0, coeffs)


def random_hom_abp(n: int, d: int, w: int, seed: int = 0, field: FieldSpec = QQ) -> Abp:
    """Random strictly homogeneous ABP of degree d with every layer of width w.

    Each label includes each variable with probability 1/2 (resampled if
    empty), with a uniformly random nonzero coefficient.
    """
    if d < 2 or w < 1 or n < 1:
        raise ValueError("need n >= 1, d >= 2, w >= 1")
    rng = make_rng(seed)
    b = [_random_label(rng, n, field) for _ in range(w)]
    mats = [
        LinMatrix.from_dense([[_random_label(rng, n, field) for _ in range(w)] for _ in range(w)])
        for _ in range(d - 2)
    ]
    c = [_random_label(rng, n, field) for _ in range(w)]
    return Abp(b, mats, c, n, field)


def synth_r_regular_pencil(base: Sequence[Pencil]) -> Pencil:
    """Block-diagonal direct sum of regular pencils; corank equals the block count."""
    if not base:
        raise ValueError("need at least one block")
    for i, p in enumerate(base):
        r = constant_rank(p).r
        if r != 1:
            raise NotRegular(f"block {i} has corank {r}, expected 1")
    return block_diagonal(base)


# -- scrambling and random pencils ------------------------------------------------------------


def _unimodular(rng, s: int, field: FieldSpec) -> List[list]:
    """Product of random unit lower- and upper-triangular matrices (determinant 1)."""
    lower = [[1 if i == j else (int(rng.integers(-2, 3)) if j < i else 0) for j in range(s)] for i in range(s)]
    upper = [[1 if i == j else (int(rng.integers(-2, 3)) if j > i else 0) for j in range(s)] for i in range(s)]
    return [
        [field.element(sum(lower[i][t] * upper[t][j] for t in range(s))) for j in range(s)]
        for i in range(s)
    ]


def _combine(field: FieldSpec, weights: Sequence, forms: Sequence[LinearForm], n: int) -> LinearForm:
    out = LinearForm.zero(n, field)
    for w, lf in zip(weights, forms):
        if w != 0 and not lf.is_zero():
            out = out.add_scaled(lf, w)
    return out


def scramble_pencil(p: Pencil, seed: int = 0) -> Pencil:
    """``P M Q`` for random determinant-one constant matrices P and Q."""
    rng = make_rng(seed)
    f, n, s = p.field, p.nvars, p.s
    P = _unimodular(rng, s, f)
    Q = _unimodular(rng, s, f)
    rows = [[_combine(f, P[i], [p.entries[t][j] for t in range(s)], n) for j in range(s)] for i in range(s)]
    cols = [[_combine(f, [Q[t][j] for t in range(s)], rows[i], n) for j in range(s)] for i in range(s)]
    return Pencil(cols, n, f)


def random_regular_pencil(seed: int, max_s: int = 10, max_n: int = 4, field: FieldSpec = QQ):
    """Scrambled regular pencil of size <= max_s with homogeneous determinant.

    Returns ``(pencil, abp, d)`` where abp is the source computing the determinant.
    """
    rng = make_rng(seed)
    while True:
        d = int(rng.integers(2, 6))
        w = int(rng.integers(1, 4))
        if (d - 1) * w + 1 <= max_s:
            break
    n = int(rng.integers(2, max_n + 1))
    src = random_hom_abp(n, d, w, seed=int(rng.integers(0, 1 << 62)), field=field)
    pen = scramble_pencil(abp_to_pencil(src), seed=int(rng.integers(0, 1 << 62)))
    return pen, src, d


def random_pencil(seed: int, s: int, n: int, rank0: int, field: FieldSpec = QQ) -> Pencil:
    """Random pencil whose constant part has rank ``rank0`` (generically)."""
    rng = make_rng(seed)
    if not 0 <= rank0 <= s:
        raise ValueError("need 0 <= rank0 <= s")
    left = [[int(rng.integers(-3, 4)) for _ in range(rank0)] for _ in range(s)]
    right = [[int(rng.integers(-3, 4)) for _ in range(s)] for _ in range(rank0)]
    consts = [[sum(left[i][t] * right[t][j] for t in range(rank0)) for j in range(s)] for i in range(s)]
    grid = []
    for i in range(s):
        row = []
        for j in range(s):
            coeffs = {v: random_element(rng, field, nonzero=True) for v in range(n) if rng.random() < LABEL_DENSITY}
            row.append(LinearForm(n, field, consts[i][j], coeffs))
        grid.append(row)
    return Pencil(grid, n, field)


def random_abp(n: int, widths: Sequence[int], seed: int = 0, field: FieldSpec = QQ) -> Abp:
    """Random ABP with affine labels (constants in [-2, 2]) and the given layer widths."""
    if not widths or min(widths) < 1:
        raise ValueError("need at least one layer, all of width >= 1")
    rng = make_rng(seed)

    def label():
        lf = _random_label(rng, n, field)
        return LinearForm(n, field, int(rng.integers(-2, 3)), lf.coeffs)

    b = [label() for _ in range(widths[0])]
    mats = [
        LinMatrix.from_dense([[label() for _ in range(widths[i + 1])] for _ in range(widths[i])])
        for i in range(len(widths) - 1)
    ]
    c = [label() for _ in range(widths[-1])]
    return Abp(b, mats, c, n, field)

"""Layered algebraic branching programs ``f = b^T M_1 ... M_k c``.

Internally an ABP is also viewed as a list of *edge layers*
``E_0 = b^T, E_1 = M_1, ..., E_k = M_k, E_{k+1} = c`` between an implicit
source and an implicit sink.  The source and sink are never counted in
:meth:`Abp.size`.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import QQ, FieldSpec, LinearForm, Poly, _unwrap
from .errors import DimensionMismatch, FieldMismatch, VariableCountMismatch


class LinMatrix:
    """Sparse matrix of linear forms stored as one ``{col: form}`` dict per row."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Sequence[Dict[int, LinearForm]]] = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise DimensionMismatch(f"expected {nrows} rows, got {len(rows)}")
        self.rows = tuple({j: lf for j, lf in row.items() if not lf.is_zero()} for row in rows)
        for row in self.rows:
            for j in row:
                if not 0 <= j < ncols:
                    raise DimensionMismatch(f"column {j} out of range for {ncols} columns")

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence[LinearForm]], ncols: Optional[int] = None) -> "LinMatrix":
        ncols = len(grid[0]) if ncols is None else ncols
        return cls(len(grid), ncols, [{j: lf for j, lf in enumerate(row)} for row in grid])

    def get(self, i: int, j: int, nvars: int, field: FieldSpec) -> LinearForm:
        return self.rows[i].get(j) or LinearForm.zero(nvars, field)

    def dense(self, nvars: int, field: FieldSpec) -> List[List[LinearForm]]:
        zero = LinearForm.zero(nvars, field)
        return [[row.get(j, zero) for j in range(self.ncols)] for row in self.rows]

    def items(self):
        for i, row in enumerate(self.rows):
            for j, lf in row.items():
                yield i, j, lf

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)


def _row_vector(forms: Sequence[LinearForm]) -> LinMatrix:
    return LinMatrix(1, len(forms), [{j: lf for j, lf in enumerate(forms)}])


def _col_vector(forms: Sequence[LinearForm]) -> LinMatrix:
    return LinMatrix(len(forms), 1, [{0: lf} for lf in forms])


class Abp:
    """Algebraic branching program with affine-linear labels."""

    __slots__ = ("nvars", "field", "b", "c", "mats")

    def __init__(
        self,
        b: Sequence[LinearForm],
        mats: Sequence,
        c: Sequence[LinearForm],
        nvars: Optional[int] = None,
        field: Optional[FieldSpec] = None,
    ):
        b = tuple(b)
        c = tuple(c)
        if not b or not c:
            raise DimensionMismatch("boundary vectors must be non-empty")
        nvars = b[0].nvars if nvars is None else nvars
        field = b[0].field if field is None else field
        ms = []
        for m in mats:
            if not isinstance(m, LinMatrix):
                m = LinMatrix.from_dense(m)
            ms.append(m)
        widths = [len(b)] + [m.ncols for m in ms]
        prev = len(b)
        for m in ms:
            if m.nrows != prev:
                raise DimensionMismatch(f"transition matrix has {m.nrows} rows, previous layer has width {prev}")
            prev = m.ncols
        if len(c) != widths[-1]:
            raise DimensionMismatch(f"c has length {len(c)}, last layer has width {widths[-1]}")
        for lf in self._all_forms(b, ms, c):
            if lf.field != field:
                raise FieldMismatch(f"label over {lf.field!r}, ABP over {field!r}")
            if lf.nvars != nvars:
                raise DimensionMismatch(f"label has nvars={lf.nvars}, ABP has {nvars}")
        self.nvars = nvars
        self.field = field
        self.b = b
        self.c = c
        self.mats = tuple(ms)

    @staticmethod
    def _all_forms(b, mats, c):
        yield from b
        for m in mats:
            for _, _, lf in m.items():
                yield lf
        yield from c

    def labels(self):
        return self._all_forms(self.b, self.mats, self.c)

    # -- resource accounting -------------------------------------------------

    @property
    def k(self) -> int:
        """Number of transition matrices."""
        return len(self.mats)

    @property
    def widths(self) -> Tuple[int, ...]:
        return (len(self.b),) + tuple(m.ncols for m in self.mats)

    def size(self) -> int:
        return sum(self.widths)

    def width(self) -> int:
        return max(self.widths)

    @property
    def n_layers(self) -> int:
        """Vertex layers of the graph view, counting the implicit source and sink."""
        return self.k + 3

    def degree_bound(self) -> int:
        return self.k + 2

    def is_homogeneous(self) -> bool:
        return all(lf.is_homogeneous() for lf in self.labels())

    def labels_homogeneous(self) -> bool:
        """Every label is a homogeneous function (a pure constant or constant-free)."""
        return all(lf.is_pure() for lf in self.labels())

    # -- edge-layer view -----------------------------------------------------

    def edge_layers(self) -> List[LinMatrix]:
        return [_row_vector(self.b), *self.mats, _col_vector(self.c)]

    @classmethod
    def from_edge_layers(cls, layers: Sequence[LinMatrix], nvars: int, field: FieldSpec) -> "Abp":
        first, last = layers[0], layers[-1]
        if first.nrows != 1 or last.ncols != 1 or len(layers) < 2:
            raise DimensionMismatch("edge layers must start at a source and end at a sink")
        b = first.dense(nvars, field)[0]
        c = [row[0] for row in last.dense(nvars, field)]
        return cls(b, layers[1:-1], c, nvars, field)

    # -- evaluation ----------------------------------------------------------

    def eval(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = _unwrap(self.field, point)
        p = self.field.modulus
        vec = [1]
        for layer in self.edge_layers():
            new = [0] * layer.ncols
            for i, row in enumerate(layer.rows):
                vi = vec[i]
                if vi == 0:
                    continue
                for j, lf in row.items():
                    new[j] += vi * lf._eval_raw(pt)
            vec = [v % p for v in new] if p is not None else new
        return vec[0]

    def to_poly(self, max_degree: Optional[int] = None) -> Poly:
        """Expand symbolically; ``max_degree`` drops higher terms along the way."""
        n, f = self.nvars, self.field
        vec: List[Poly] = [Poly.constant(1, n, f)]
        for layer in self.edge_layers():
            new = [Poly.zero(n, f) for _ in range(layer.ncols)]
            for i, row in enumerate(layer.rows):
                vi = vec[i]
                if vi.is_zero():
                    continue
                for j, lf in row.items():
                    new[j] = new[j] + vi * lf
            if max_degree is not None:
                new = [q.truncate(max_degree) for q in new]
            vec = new
        return vec[0]

    def to_field(self, field: FieldSpec) -> "Abp":
        mats = [
            LinMatrix(m.nrows, m.ncols, [{j: lf.to_field(field) for j, lf in row.items()} for row in m.rows])
            for m in self.mats
        ]
        return Abp(
            [lf.to_field(field) for lf in self.b], mats, [lf.to_field(field) for lf in self.c], self.nvars, field
        )

    def __repr__(self):
        return f"Abp(nvars={self.nvars}, {self.field!r}, widths={list(self.widths)})"


@dataclass(frozen=True)
class ScalarAbp:
    """Degree-0 homogeneous component, held as an explicit constant."""

    value: object
    nvars: int
    field: FieldSpec = QQ

    def eval(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        return self.value

    def to_poly(self, max_degree=None) -> Poly:
        return Poly.constant(self.value, self.nvars, self.field)

    def to_field(self, field: FieldSpec) -> "ScalarAbp":
        return ScalarAbp(field.element(self.value), self.nvars, field)

    def size(self) -> int:
        return 0

    def width(self) -> int:
        return 0


def abp_eval(a: Abp, point: Sequence):
    return a.eval(point)


def abp_to_poly(a: Abp) -> Poly:
    return a.to_poly()


# -- small constructors -------------------------------------------------------


def zero_abp(nvars: int, field: FieldSpec = QQ, k: int = 0) -> Abp:
    z = LinearForm.zero(nvars, field)
    return Abp([z], [LinMatrix(1, 1) for _ in range(k)], [z], nvars, field)


def linear_abp(lf: LinearForm) -> Abp:
    """One vertex: ``b = (lf)``, ``c = (1)``.  Not homogeneous unless lf = 0."""
    return Abp([lf], [], [LinearForm.constant(1, lf.nvars, lf.field)], lf.nvars, lf.field)


def _const(value, nvars, field) -> LinearForm:
    return LinearForm.constant(value, nvars, field)


# -- pruning --------------------------------------------------------------------


def prune(a: Abp) -> Abp:
    """Drop vertices not on any source-to-sink path of nonzero labels."""
    layers = a.edge_layers()
    nv = len(layers) + 1  # vertex layers incl. source and sink
    widths = [1] + list(a.widths) + [1]
    fwd = [set() for _ in range(nv)]
    fwd[0] = {0}
    for t, layer in enumerate(layers):
        for i in fwd[t]:
            fwd[t + 1].update(layer.rows[i].keys())
    bwd = [set() for _ in range(nv)]
    bwd[-1] = {0}
    for t in range(len(layers) - 1, -1, -1):
        layer = layers[t]
        for i in range(widths[t]):
            if any(j in bwd[t + 1] for j in layer.rows[i]):
                bwd[t].add(i)
    keep = [sorted(fwd[t] & bwd[t]) for t in range(nv)]
    if not keep[0] or not keep[-1]:
        return zero_abp(a.nvars, a.field, a.k)
    if all(len(keep[t]) == widths[t] for t in range(nv)):
        return a
    index = [{old: new for new, old in enumerate(kt)} for kt in keep]
    new_layers = []
    for t, layer in enumerate(layers):
        rows = []
        for old_i in keep[t]:
            row = layer.rows[old_i]
            rows.append({index[t + 1][j]: lf for j, lf in row.items() if j in index[t + 1]})
        new_layers.append(LinMatrix(len(keep[t]), len(keep[t + 1]), rows))
    return Abp.from_edge_layers(new_layers, a.nvars, a.field)


# -- structural combinators ----------------------------------------------------


def pad_abp(a: Abp, k: int) -> Abp:
    """Lengthen to ``k`` transition matrices with a width-1 corridor labeled 1."""
    if k < a.k:
        raise ValueError("cannot shorten an ABP")
    if k == a.k:
        return a
    n, f = a.nvars, a.field
    one = _const(1, n, f)
    mats = list(a.mats) + [_col_vector(a.c)]
    mats += [LinMatrix(1, 1, [{0: one}]) for _ in range(k - a.k - 1)]
    return Abp(a.b, mats, [one], n, f)


def _block_diag(mats: Sequence[LinMatrix]) -> LinMatrix:
    rows = []
    col_off = 0
    for m in mats:
        for row in m.rows:
            rows.append({j + col_off: lf for j, lf in row.items()})
        col_off += m.ncols
    return LinMatrix(len(rows), col_off, rows)


def abp_sum(a1: Abp, a2: Abp) -> Abp:
    """Parallel composition computing ``poly(a1) + poly(a2)``."""
    if a1.field != a2.field:
        raise FieldMismatch(f"{a1.field!r} vs {a2.field!r}")
    if a1.nvars != a2.nvars:
        raise VariableCountMismatch(f"nvars {a1.nvars} vs {a2.nvars}")
    k = max(a1.k, a2.k)
    a1, a2 = pad_abp(a1, k), pad_abp(a2, k)
    mats = [_block_diag([m1, m2]) for m1, m2 in zip(a1.mats, a2.mats)]
    return Abp(a1.b + a2.b, mats, a1.c + a2.c, a1.nvars, a1.field)


def abp_scale(a: Abp, factor) -> Abp:
    return Abp(a.b, a.mats, [lf.scale(factor) for lf in a.c], a.nvars, a.field)


def abp_compose_linear(a: Abp, forms: Sequence[LinearForm]) -> Abp:
    """Replace variable i by the linear form ``forms[i]`` in every label."""
    if len(forms) != a.nvars:
        raise VariableCountMismatch(f"need {a.nvars} forms, got {len(forms)}")
    n, f = forms[0].nvars, forms[0].field

    def sub(lf):
        return lf.substitute(forms)

    mats = [LinMatrix(m.nrows, m.ncols, [{j: sub(lf) for j, lf in row.items()} for row in m.rows]) for m in a.mats]
    return Abp([sub(lf) for lf in a.b], mats, [sub(lf) for lf in a.c], n, f)


def abp_substitute(outer: Abp, inner: Sequence[Sequence[Abp]]) -> Abp:
    """Replace each variable ``y_{ij}`` (index ``i*m + j``) of ``outer`` by ``inner[i][j]``.

    Every outer edge ``c0 + sum c_ij y_ij`` becomes parallel paths: a
    constant corridor carrying c0 and one copy of ``inner[i][j]`` per nonzero
    coefficient, its first edge scaled by c_ij.  All paths in one outer edge
    layer are padded to the same length so the result stays layered.
    """
    m = len(inner)
    if any(len(row) != m for row in inner):
        raise VariableCountMismatch("inner grid must be square")
    if outer.nvars != m * m:
        raise VariableCountMismatch(f"outer has {outer.nvars} variables, expected {m * m}")
    n = inner[0][0].nvars
    f = outer.field
    for row in inner:
        for a in row:
            if a.nvars != n:
                raise VariableCountMismatch("inner ABPs must share nvars")
            if a.field != f:
                raise FieldMismatch(f"{a.field!r} vs {f!r}")
    one = _const(1, n, f)
    new_layers: List[LinMatrix] = []
    for E in outer.edge_layers():
        used = sorted({v for _, _, lf in E.items() for v in lf.coeffs})
        if not used:
            rows = [{j: _const(lf.const, n, f) for j, lf in row.items()} for row in E.rows]
            new_layers.append(LinMatrix(E.nrows, E.ncols, rows))
            continue
        L = max(inner[v // m][v % m].k for v in used) + 1
        padded = {v: pad_abp(inner[v // m][v % m], L - 1) for v in used}
        # each path: (u, v_out, scale, abp-or-None, offsets per internal layer)
        paths = []
        offs = [0] * L
        for u, v_out, lf in E.items():
            if lf.const != 0:
                paths.append((u, v_out, lf.const, None, list(offs)))
                offs = [o + 1 for o in offs]
            for var, coeff in sorted(lf.coeffs.items()):
                a = padded[var]
                paths.append((u, v_out, coeff, a, list(offs)))
                offs = [o + w for o, w in zip(offs, a.widths)]
        first = [dict() for _ in range(E.nrows)]
        mids = [[dict() for _ in range(offs[t])] for t in range(L - 1)]
        last = [dict() for _ in range(offs[L - 1])]
        for u, v_out, scale, a, o in paths:
            if a is None:
                first[u][o[0]] = _const(scale, n, f)
                for t in range(L - 1):
                    mids[t][o[t]][o[t + 1]] = one
                last[o[L - 1]][v_out] = one
                continue
            for j, lf in enumerate(a.b):
                if not lf.is_zero():
                    first[u][o[0] + j] = lf.scale(scale)
            for t, mt in enumerate(a.mats):
                for i, j, lf in mt.items():
                    mids[t][o[t] + i][o[t + 1] + j] = lf
            for i, lf in enumerate(a.c):
                if not lf.is_zero():
                    last[o[L - 1] + i][v_out] = lf
        new_layers.append(LinMatrix(E.nrows, offs[0], first))
        for t in range(L - 1):
            new_layers.append(LinMatrix(offs[t], offs[t + 1], mids[t]))
        new_layers.append(LinMatrix(offs[L - 1], E.ncols, last))
    return Abp.from_edge_layers(new_layers, n, f)


# -- clow-sequence determinant ABP ----------------------------------------------


def mv97_det_abp(n: int, field: FieldSpec = QQ, prune_dead: bool = True) -> Abp:
    """ABP for the signed n x n determinant over variables ``y_{ij}`` (index ``i*n + j``).

    States are clow-sequence pairs ``(head, current)`` with ``head <= current``;
    ``(h, h)`` means a fresh clow headed at h.  Every closing edge carries a
    factor -1 and the overall ``(-1)^n`` is folded into ``c``, so a sequence
    with m clows gets sign ``(-1)^(n+m)``.  Homogeneous for n >= 2 with
    ``n - 2`` transition matrices of width at most n(n+1)/2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    N = n * n

    def y(i, j, coeff=1):
        return LinearForm.var(i * n + j, N, field, coeff)

    if n == 1:
        return linear_abp(y(0, 0))
    states = [(h, u) for h in range(n) for u in range(h, n)]
    idx = {st: i for i, st in enumerate(states)}
    zero = LinearForm.zero(N, field)
    b = [zero] * len(states)
    for h in range(n):
        for v in range(h + 1, n):
            b[idx[(h, v)]] = b[idx[(h, v)]] + y(h, v)
        for h2 in range(h + 1, n):
            b[idx[(h2, h2)]] = b[idx[(h2, h2)]] + y(h, h, -1)
    step = [dict() for _ in states]
    for (h, u), i in idx.items():
        row = step[i]
        for v in range(h + 1, n):
            row[idx[(h, v)]] = y(u, v)
        for h2 in range(h + 1, n):
            row[idx[(h2, h2)]] = y(u, h, -1)
    M = LinMatrix(len(states), len(states), step)
    sign = 1 if n % 2 == 0 else -1
    c = [y(u, h, -sign) for (h, u) in states]
    a = Abp(b, [M] * (n - 2), c, N, field)
    return prune(a) if prune_dead else a


# -- homogenization --------------------------------------------------------------


def homogenize_component(a: Abp, d: int, strict: bool = False, prune_dead: bool = True):
    """ABP for the degree-d homogeneous component of ``poly(a)``.

    The default builds the degree-tracking product graph: every vertex gets
    copies for degrees 0..d, an edge ``alpha + l`` links equal-degree copies
    by alpha and degree e to e+1 copies by l.  Before pruning it has exactly
    ``(d+1)`` times the size and width of ``a``; each label is a pure
    constant or a constant-free form.

    ``strict=True`` instead returns an ABP whose labels are all constant-free
    (``d - 2`` transition matrices, at most ``(d-1) * size(a)`` vertices before
    pruning); for d == 1 it falls back to ``b = (l), c = (1)``.

    d == 0 always yields a :class:`ScalarAbp`.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if d == 0:
        return ScalarAbp(a.eval([0] * a.nvars), a.nvars, a.field)
    out = _strict_component(a, d) if strict else _product_graph(a, d)
    return prune(out) if prune_dead else out


def _product_graph(a: Abp, d: int) -> Abp:
    n, f = a.nvars, a.field
    D = d + 1
    layers = a.edge_layers()
    last = len(layers) - 1
    new_layers = []
    for t, E in enumerate(layers):
        src_copies = [0] if t == 0 else list(range(D))
        dst_copies = [d] if t == last else list(range(D))
        nrows = E.nrows * len(src_copies)
        ncols = E.ncols * len(dst_copies)
        rows = [dict() for _ in range(nrows)]
        for u, v, lf in E.items():
            alpha = lf.const
            ell = lf.homogeneous_part()
            for si, e in enumerate(src_copies):
                r = u * len(src_copies) + si
                for di, e2 in enumerate(dst_copies):
                    col = v * len(dst_copies) + di
                    if e2 == e and alpha != 0:
                        rows[r][col] = _const(alpha, n, f)
                    elif e2 == e + 1 and ell.coeffs:
                        rows[r][col] = ell
        new_layers.append(LinMatrix(nrows, ncols, rows))
    return Abp.from_edge_layers(new_layers, n, f)


def _strict_component(a: Abp, d: int) -> Abp:
    n, f = a.nvars, a.field
    p = f.modulus
    layers = a.edge_layers()
    widths = [1] + list(a.widths) + [1]
    starts = [0]
    for w in widths:
        starts.append(starts[-1] + w)
    total = starts[-1]
    sink = total - 1
    const_out: List[List[Tuple[int, object]]] = [[] for _ in range(total)]
    lin_out: List[List[Tuple[int, LinearForm]]] = [[] for _ in range(total)]
    for t, E in enumerate(layers):
        for u, v, lf in E.items():
            gu, gv = starts[t] + u, starts[t + 1] + v
            if lf.const != 0:
                const_out[gu].append((gv, lf.const))
            if lf.coeffs:
                lin_out[gu].append((gv, lf.homogeneous_part()))
    # constant-path weight from every vertex to the sink
    kappa = [0] * total
    kappa[sink] = 1
    for g in range(sink - 1, -1, -1):
        acc = 0
        for g2, alpha in const_out[g]:
            acc += alpha * kappa[g2]
        kappa[g] = acc % p if p is not None else acc
    zero = LinearForm.zero(n, f)
    # final linear step: l(w, v) followed by constants to the sink
    final = []
    for g in range(total):
        acc = zero
        for g2, ell in lin_out[g]:
            if kappa[g2] != 0:
                acc = acc.add_scaled(ell, kappa[g2])
        final.append(acc)

    def const_reach(g0):
        # vertices are numbered layer by layer, so a heap pops them in topological order
        reach = {g0: 1}
        heap = [g0]
        while heap:
            g = heapq.heappop(heap)
            wgt = reach[g]
            if wgt == 0:
                continue
            for g2, alpha in const_out[g]:
                if g2 not in reach:
                    reach[g2] = 0
                    heapq.heappush(heap, g2)
                v = reach[g2] + wgt * alpha
                reach[g2] = v % p if p is not None else v
        return reach

    inner_ids = list(range(starts[1], starts[-2]))  # vertex layers 0..k
    pos = {g: i for i, g in enumerate(inner_ids)}
    nrow_ids = [0] + inner_ids
    N: Dict[int, Dict[int, LinearForm]] = {}
    cvec: Dict[int, LinearForm] = {}
    for g0 in nrow_ids:
        reach = const_reach(g0)
        row: Dict[int, LinearForm] = {}
        fin = zero
        for g, wgt in reach.items():
            if wgt == 0:
                continue
            for g2, ell in lin_out[g]:
                if g2 in pos:
                    row[pos[g2]] = row.get(pos[g2], zero).add_scaled(ell, wgt)
            if not final[g].is_zero():
                fin = fin.add_scaled(final[g], wgt)
        N[g0] = row
        cvec[g0] = fin
    if d == 1:
        return linear_abp(cvec[0])
    S = len(inner_ids)
    b = LinMatrix(1, S, [N[0]])
    mid = LinMatrix(S, S, [N[g] for g in inner_ids])
    c = LinMatrix(S, 1, [{0: cvec[g]} for g in inner_ids])
    return Abp.from_edge_layers([b] + [mid] * (d - 2) + [c], n, f)


# -- geometric series --------------------------------------------------------------


def geometric_series_abp(
    D: Sequence[Sequence[LinearForm]],
    d: int,
    left: Sequence[LinearForm],
    right: Sequence[LinearForm],
    nvars: int,
    field: FieldSpec,
) -> Abp:
    """ABP for ``left^T (I + D + ... + D^(d-2)) right``.

    Uses the top-right block of ``[[I, I], [0, D]]^(d-1)``: the ABP has
    ``d - 1`` copies of that 2m x 2m transition matrix.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    m = len(D)
    zero = LinearForm.zero(nvars, field)
    one = _const(1, nvars, field)
    rows = []
    for i in range(m):
        rows.append({i: one, m + i: one})
    for i in range(m):
        rows.append({m + j: D[i][j] for j in range(m) if not D[i][j].is_zero()})
    T = LinMatrix(2 * m, 2 * m, rows)
    b = list(left) + [zero] * m
    c = [zero] * m + list(right)
    return Abp(b, [T] * (d - 1), c, nvars, field)


def geometric_series_block(D: Sequence[Sequence[LinearForm]], d: int) -> List[List[Abp]]:
    """Grid of ABPs whose (i, j) entry computes ``(sum_{t=0}^{d-2} D^t)_{ij}``."""
    if d < 2:
        raise ValueError("d must be >= 2")
    m = len(D)
    nvars, field = D[0][0].nvars, D[0][0].field
    zero = LinearForm.zero(nvars, field)
    one = _const(1, nvars, field)

    def unit(i):
        return [one if t == i else zero for t in range(m)]

    return [[geometric_series_abp(D, d, unit(i), unit(j), nvars, field) for j in range(m)] for i in range(m)]

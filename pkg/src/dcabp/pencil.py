"""Linear matrix pencils (determinantal representations) and their normal form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from . import linalg
from .algebra import QQ, FieldSpec, LinearForm, _unwrap
from .errors import ConstantPartInvertible, DimensionMismatch, FieldMismatch

Grid = Tuple[Tuple[LinearForm, ...], ...]


class Pencil:
    """An s x s matrix of affine linear forms ``M = M0 + M'(x)``."""

    __slots__ = ("s", "nvars", "field", "entries")

    def __init__(self, entries: Sequence[Sequence[LinearForm]], nvars: int = None, field: FieldSpec = None):
        rows = tuple(tuple(row) for row in entries)
        s = len(rows)
        if s == 0:
            raise DimensionMismatch("a pencil must have size s >= 1")
        if any(len(row) != s for row in rows):
            raise DimensionMismatch("pencil entries must form a square grid")
        first = rows[0][0]
        nvars = first.nvars if nvars is None else nvars
        field = first.field if field is None else field
        for row in rows:
            for lf in row:
                if lf.field != field:
                    raise FieldMismatch(f"entry over {lf.field!r}, pencil over {field!r}")
                if lf.nvars != nvars:
                    raise DimensionMismatch(f"entry has nvars={lf.nvars}, pencil has {nvars}")
        self.s = s
        self.nvars = nvars
        self.field = field
        self.entries: Grid = rows

    @classmethod
    def from_ints(cls, consts, coeffs, nvars: int, field: FieldSpec = QQ) -> "Pencil":
        """Build from a constant matrix and a matching grid of ``{var: coeff}`` dicts."""
        return cls(
            [
                [LinearForm(nvars, field, c, m) for c, m in zip(crow, mrow)]
                for crow, mrow in zip(consts, coeffs)
            ],
            nvars,
            field,
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Pencil):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.entries == other.entries

    __hash__ = None

    def to_field(self, field: FieldSpec) -> "Pencil":
        return Pencil([[lf.to_field(field) for lf in row] for row in self.entries], self.nvars, field)

    def constant_part(self) -> List[list]:
        return [[lf.const for lf in row] for row in self.entries]

    def eval_matrix(self, point: Sequence) -> List[list]:
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = _unwrap(self.field, point)
        return [[lf._eval_raw(pt) for lf in row] for row in self.entries]

    def eval_det(self, point: Sequence):
        return linalg.det(self.field, self.eval_matrix(point))

    def __repr__(self):
        body = ",\n ".join("[" + ", ".join(repr(lf) for lf in row) + "]" for row in self.entries)
        return f"Pencil(s={self.s}, nvars={self.nvars}, {self.field!r},\n[{body}])"


def pencil_eval_det(p: Pencil, point: Sequence):
    return p.eval_det(point)


@dataclass(frozen=True)
class RRegularityReport:
    s: int
    rank0: int
    r: int

    @property
    def is_regular(self) -> bool:
        return self.r == 1


def constant_rank(p: Pencil) -> RRegularityReport:
    rank0 = linalg.rank(p.field, p.constant_part())
    return RRegularityReport(s=p.s, rank0=rank0, r=p.s - rank0)


@dataclass(frozen=True)
class NormalFormPencil:
    """A pencil whose constant part is ``diag(0,...,0,1,...,1)`` with r zeros."""

    pencil: Pencil
    r: int

    @property
    def s(self) -> int:
        return self.pencil.s

    def blocks(self):
        return blocks(self)


def normal_form(p: Pencil) -> NormalFormPencil:
    """Bring the constant part to ``diag(0_r, I_{s-r})`` keeping the determinant fixed.

    Row and column operations are driven by the constant matrix; pivots are
    the first nonzero entry in row-major order.  The accumulated determinant
    factor is divided out of row 0, whose constant part is zero.
    """
    f = p.field
    s = p.s
    m = [list(row) for row in p.entries]
    factor = 1
    k = 0
    while k < s:
        piv = None
        for i in range(k, s):
            for j in range(k, s):
                if m[i][j].const != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        if i != k:
            m[i], m[k] = m[k], m[i]
            factor = f.neg(factor)
        if j != k:
            for row in m:
                row[j], row[k] = row[k], row[j]
            factor = f.neg(factor)
        pv = m[k][k].const
        inv = f.inv(pv)
        m[k] = [lf.scale(inv) for lf in m[k]]
        factor = f.mul(factor, inv)
        for i2 in range(s):
            if i2 != k and m[i2][k].const != 0:
                a = f.neg(m[i2][k].const)
                m[i2] = [x.add_scaled(y, a) for x, y in zip(m[i2], m[k])]
        for j2 in range(s):
            if j2 != k and m[k][j2].const != 0:
                a = f.neg(m[k][j2].const)
                for row in m:
                    row[j2] = row[j2].add_scaled(row[k], a)
        k += 1
    rank0 = k
    r = s - rank0
    if r == 0:
        raise ConstantPartInvertible(
            "constant part is invertible: the determinant has a nonzero constant term"
        )
    order = list(range(rank0, s)) + list(range(rank0))
    m = [[m[i][j] for j in order] for i in order]
    if factor != 1:
        # det(new) = factor * det(old)
        m[0] = [lf.scale(f.inv(factor)) for lf in m[0]]
    return NormalFormPencil(Pencil(m, p.nvars, f), r)


def blocks(nf: NormalFormPencil):
    """Return ``(A, B, C, D)`` where the bottom-right block of the pencil is ``I - D``."""
    e = nf.pencil.entries
    r, s = nf.r, nf.s
    f = nf.pencil.field
    A = tuple(tuple(e[i][j] for j in range(r)) for i in range(r))
    B = tuple(tuple(e[i][j] for j in range(r, s)) for i in range(r))
    C = tuple(tuple(e[i][j] for j in range(r)) for i in range(r, s))
    D = tuple(
        tuple(
            (LinearForm.constant(1, nf.pencil.nvars, f) if i == j else LinearForm.zero(nf.pencil.nvars, f)) - e[i][j]
            for j in range(r, s)
        )
        for i in range(r, s)
    )
    return A, B, C, D


def block_diagonal(pencils: Sequence[Pencil]) -> Pencil:
    nvars = pencils[0].nvars
    field = pencils[0].field
    s = sum(p.s for p in pencils)
    zero = LinearForm.zero(nvars, field)
    grid = [[zero] * s for _ in range(s)]
    off = 0
    for p in pencils:
        for i in range(p.s):
            for j in range(p.s):
                grid[off + i][off + j] = p.entries[i][j]
        off += p.s
    return Pencil(grid, nvars, field)

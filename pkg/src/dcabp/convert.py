"""Reductions between determinantal representations and ABPs."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import List, Optional

from .abp import (
    Abp,
    LinMatrix,
    abp_compose_linear,
    abp_substitute,
    abp_sum,
    geometric_series_abp,
    homogenize_component,
    linear_abp,
    mv97_det_abp,
    prune,
)
from .algebra import LinearForm, Poly
from .errors import (
    DegreeTooSmall,
    NonzeroConstantTerm,
    NotHomogeneous,
    NotRegular,
    PreconditionError,
    SizeDegreeMismatch,
)
from .pencil import NormalFormPencil, Pencil, blocks, constant_rank, normal_form
from . import verify

DEFAULT_SIZE_CONSTANT = 64
DEFAULT_R_SIZE_CONSTANT = 64

PATH_REGULAR = "Regular"
PATH_GENERAL = "General"
PATH_DIRECT = "FullyHomogeneousDirect"
PATH_LINEAR = "Linear"


@dataclass
class ConversionReport:
    s: int
    d: int
    r: int
    path: str
    out_size: int
    out_width: int
    out_layers: int
    bound_size: int
    bound_width: Optional[int]
    bound_size_r: Optional[int]
    size_constant: int
    r_size_constant: int
    truncation: str
    ratio: float
    within_bounds: bool

    def to_json(self) -> dict:
        return asdict(self)


# -- regular representations ------------------------------------------------------------


def _require_regular(nf: NormalFormPencil):
    if nf.r != 1:
        raise NotRegular(f"constant part has corank {nf.r}, expected 1")


def regular_to_abp(nf: NormalFormPencil, d: int) -> Abp:
    """Homogeneous ABP ``-b^T D^(d-2) c`` of width s-1 and size (d-1)(s-1)."""
    _require_regular(nf)
    if d < 2:
        raise DegreeTooSmall(f"regular conversion needs d >= 2, got {d}")
    if nf.s < 2:
        raise DegreeTooSmall("a 1 x 1 regular pencil computes a linear form")
    A, B, C, D = blocks(nf)
    b = list(B[0])
    c = [row[0].scale(-1) for row in C]
    Dm = LinMatrix.from_dense(D)
    return Abp(b, [Dm] * (d - 2), c, nf.pencil.nvars, nf.pencil.field)


@dataclass
class VanishingReport:
    a_zero: bool
    constraints: List[bool]

    @property
    def ok(self) -> bool:
        return self.a_zero and all(self.constraints)


def check_regular_vanishing(nf: NormalFormPencil, d: int) -> VanishingReport:
    """Symbolically check ``a = 0`` and ``b^T D^i c = 0`` for ``0 <= i <= d-3``."""
    _require_regular(nf)
    A, B, C, D = blocks(nf)
    n, f = nf.pencil.nvars, nf.pencil.field
    a_zero = A[0][0].is_zero()
    b = [lf.to_poly() for lf in B[0]]
    Dp = [[lf.to_poly() for lf in row] for row in D]
    vec = [row[0].to_poly() for row in C]
    results = []
    for _ in range(max(d - 2, 0)):
        val = Poly.zero(n, f)
        for bi, vi in zip(b, vec):
            if not bi.is_zero() and not vi.is_zero():
                val = val + bi * vi
        results.append(val.is_zero())
        vec = [
            sum((Dp[i][t] * vec[t] for t in range(len(vec)) if not Dp[i][t].is_zero()), Poly.zero(n, f))
            for i in range(len(vec))
        ]
    return VanishingReport(a_zero, results)


# -- general representations ---------------------------------------------------------------


def truncation_index(d: int, r: int, truncation: str = "safe") -> int:
    """Highest power of D kept in the series; -1 keeps only the A block.

    ``safe`` keeps powers up to d-2.  ``tight`` keeps powers up to d-r-1: each
    of the r factors of a degree-d term of det(W) has degree >= 1, so no
    factor exceeds degree d-r+1 = (d-r-1) + 2.
    """
    if truncation == "safe":
        return d - 2
    if truncation == "tight":
        return max(d - r - 1, -1)
    raise ValueError(f"unknown truncation {truncation!r}")


def build_W(nf: NormalFormPencil, d: int, truncation: str = "safe") -> List[List[Abp]]:
    """r x r grid of ABPs for ``A - sum_t B D^t C`` with t up to the truncation index."""
    if d < 2:
        raise DegreeTooSmall(f"W needs d >= 2, got {d}")
    A, B, C, D = blocks(nf)
    n, f = nf.pencil.nvars, nf.pencil.field
    r = nf.r
    top = truncation_index(d, r, truncation)
    grid = []
    for i in range(r):
        row = []
        for j in range(r):
            entry = linear_abp(A[i][j])
            if top >= 0 and nf.s > r:
                series = geometric_series_abp(D, top + 2, B[i], [C[t][j].scale(-1) for t in range(len(C))], n, f)
                entry = abp_sum(entry, series)
            row.append(entry)
        grid.append(row)
    return grid


def _report(abp: Abp, s, d, r, path, C, Cr, truncation, bound_width=None, exact=True):
    """Measured resources against C*d^5*s and C'*r^3*d^2*s.

    ``ratio`` is the measured constant ``out_size / (d^5 * s)``, directly
    comparable with ``size_constant``.
    """
    size = abp.size()
    bound_size = C * d**5 * s
    bound_size_r = Cr * r**3 * d**2 * s
    within = exact and size <= bound_size and size <= bound_size_r
    if bound_width is not None:
        within = within and abp.width() <= bound_width
    return ConversionReport(
        s=s,
        d=d,
        r=r,
        path=path,
        out_size=size,
        out_width=abp.width(),
        out_layers=abp.n_layers,
        bound_size=bound_size,
        bound_width=bound_width,
        bound_size_r=bound_size_r,
        size_constant=C,
        r_size_constant=Cr,
        truncation=truncation,
        ratio=round(size / (d**5 * s), 6),
        within_bounds=within,
    )


def _linear_part(p: Pencil) -> LinearForm:
    """The determinant of a pencil with linear homogeneous determinant, from n+1 evaluations."""
    n, f = p.nvars, p.field
    coeffs = {}
    for i in range(n):
        e = [0] * n
        e[i] = 1
        v = p.eval_det(e)
        if v != 0:
            coeffs[i] = v
    return LinearForm(n, f, 0, coeffs)


def certify(p: Pencil, d: Optional[int], trials: int = 16, seed: int = 0) -> int:
    """Return the certified homogeneity degree of det(p); raise NotHomogeneous otherwise."""
    if d is None:
        return verify.infer_degree(p, trials=3, seed=seed)
    verdict = verify.certify_homogeneous(p, d, trials=trials, seed=seed)
    if not verdict.ok:
        degrees = verify.homogeneous_degrees(p, trials=3, seed=seed)
        raise NotHomogeneous(degrees, f"determinant is not homogeneous of degree {d}; components of degrees {degrees}")
    return d


def general_to_abp(
    p: Pencil,
    d: Optional[int] = None,
    mode: str = "auto",
    truncation: str = "safe",
    size_constant: int = DEFAULT_SIZE_CONSTANT,
    r_size_constant: int = DEFAULT_R_SIZE_CONSTANT,
    certified: bool = False,
    seed: int = 0,
):
    """Convert a pencil with homogeneous determinant into an ABP computing it.

    Returns ``(abp, report)``.  Unless ``certified`` is set, the degree is
    inferred or checked first and non-homogeneous inputs are refused.
    """
    if mode not in ("auto", "regular", "general"):
        raise ValueError(f"unknown mode {mode!r}")
    if not certified:
        d = certify(p, d, seed=seed)
    if d is None or d < 1:
        raise DegreeTooSmall(f"degree must be >= 1, got {d}")
    s = p.s
    r = constant_rank(p).r
    C, Cr = size_constant, r_size_constant
    if r == 0:
        raise NotHomogeneous([0, d], "constant part is invertible: the determinant has a nonzero constant term")
    if r > d:
        raise PreconditionError(f"corank {r} exceeds degree {d}; the determinant cannot be homogeneous of degree {d}")

    if d == 1:
        out = linear_abp(_linear_part(p))
        return out, _report(out, s, d, r, PATH_LINEAR, C, Cr, truncation)

    if mode == "regular" or (mode == "auto" and r == 1):
        if r != 1:
            raise NotRegular(f"constant part has corank {r}, expected 1")
        out = regular_to_abp(normal_form(p), d)
        exact = out.width() == s - 1 and out.size() == (d - 1) * (s - 1)
        return out, _report(out, s, d, r, PATH_REGULAR, C, Cr, truncation, s - 1, exact)

    if r == s:
        if s != d:
            raise SizeDegreeMismatch(f"constant part is zero, so det has degree s={s}, but d={d}")
        forms = [lf for row in p.entries for lf in row]
        out = abp_compose_linear(mv97_det_abp(s, p.field), forms)
        return out, _report(out, s, d, r, PATH_DIRECT, C, Cr, truncation, s * s)

    nf = normal_form(p)
    W = build_W(nf, d, truncation)
    outer = mv97_det_abp(nf.r, p.field)
    composed = abp_substitute(outer, W)
    out = homogenize_component(composed, d, strict=True)
    return out, _report(out, s, d, r, PATH_GENERAL, C, Cr, truncation)


# -- ABP to pencil -----------------------------------------------------------------------------


def abp_to_pencil(a: Abp) -> Pencil:
    """Regular determinantal representation of ``poly(a)`` of size ``size(a) + 1``.

    Vertices are numbered source first, sink last.  With A the (edge-label)
    adjacency matrix, ``(I - A)^-1`` has the path sum at (source, sink), so
    the polynomial is ``(-1)^N`` times the minor of ``I - A`` without the
    sink row and the source column; the sign goes into row 0.
    """
    n, f = a.nvars, a.field
    if a.k == 0 and all(lf.is_constant() for lf in a.c):
        lf = LinearForm.zero(n, f)
        for bi, ci in zip(a.b, a.c):
            lf = lf.add_scaled(bi, ci.const)
        if lf.const != 0:
            raise NonzeroConstantTerm("the ABP computes a polynomial with a nonzero constant term")
        return Pencil([[lf]], n, f)
    if a.eval([0] * n) != 0:
        raise NonzeroConstantTerm("the ABP computes a polynomial with a nonzero constant term")
    layers = a.edge_layers()
    widths = [1] + list(a.widths) + [1]
    starts = [0]
    for w in widths:
        starts.append(starts[-1] + w)
    N = starts[-1] - 1  # index of the sink
    zero = LinearForm.zero(n, f)
    one = LinearForm.constant(1, n, f)
    grid = [[zero] * N for _ in range(N)]
    for t, E in enumerate(layers):
        for u, v, lf in E.items():
            gu, gv = starts[t] + u, starts[t + 1] + v
            grid[gu][gv - 1] = lf.scale(-1)
    for g in range(1, N):
        grid[g][g - 1] = one
    if N % 2:
        grid[0] = [lf.scale(-1) for lf in grid[0]]
    return Pencil(grid, n, f)


def pencil_from_abp_prune(a: Abp) -> Pencil:
    return abp_to_pencil(prune(a))

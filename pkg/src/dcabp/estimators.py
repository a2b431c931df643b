"""scikit-learn style front end: validation helpers and transformer objects.

Each transformer maps a sequence of inputs to a list of outputs.  ``fit``
only validates hyperparameters, as the conversions are not learned.
"""
from __future__ import annotations

from typing import List, Optional

from sklearn.base import BaseEstimator, TransformerMixin

from .abp import Abp, ScalarAbp, homogenize_component
from .convert import abp_to_pencil, general_to_abp
from .pencil import Pencil


def check_pencil(p) -> Pencil:
    if not isinstance(p, Pencil):
        raise TypeError(f"expected a Pencil, got {type(p).__name__}")
    return p


def check_abp(a) -> Abp:
    if not isinstance(a, Abp):
        raise TypeError(f"expected an Abp, got {type(a).__name__}")
    return a


def check_degree(d, minimum: int = 0, allow_none: bool = False) -> Optional[int]:
    if d is None and allow_none:
        return None
    if isinstance(d, bool) or not isinstance(d, int):
        raise TypeError(f"degree must be an int, got {type(d).__name__}")
    if d < minimum:
        raise ValueError(f"degree must be >= {minimum}, got {d}")
    return d


def _as_list(X) -> list:
    if isinstance(X, (Pencil, Abp, ScalarAbp)):
        return [X]
    return list(X)


class DeterminantToABP(TransformerMixin, BaseEstimator):
    """Convert pencils with homogeneous determinants into ABPs.

    After ``transform`` the per-input conversion reports are in ``reports_``.
    """

    def __init__(self, degree: Optional[int] = None, mode: str = "auto", truncation: str = "safe",
                 size_constant: int = 64, r_size_constant: int = 64, seed: int = 0):
        self.degree = degree
        self.mode = mode
        self.truncation = truncation
        self.size_constant = size_constant
        self.r_size_constant = r_size_constant
        self.seed = seed

    def _validate(self):
        check_degree(self.degree, 1, allow_none=True)
        if self.mode not in ("auto", "regular", "general"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.truncation not in ("safe", "tight"):
            raise ValueError(f"unknown truncation {self.truncation!r}")

    def fit(self, X=None, y=None):
        self._validate()
        return self

    def transform(self, X) -> List[Abp]:
        self._validate()
        out, reports = [], []
        for p in _as_list(X):
            abp, rep = general_to_abp(
                check_pencil(p),
                self.degree,
                mode=self.mode,
                truncation=self.truncation,
                size_constant=self.size_constant,
                r_size_constant=self.r_size_constant,
                seed=self.seed,
            )
            out.append(abp)
            reports.append(rep)
        self.reports_ = reports
        return out


class AbpToPencil(TransformerMixin, BaseEstimator):
    """Regular determinantal representation of each input ABP."""

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> List[Pencil]:
        return [abp_to_pencil(check_abp(a)) for a in _as_list(X)]


class HomogeneousComponent(TransformerMixin, BaseEstimator):
    """Extract the degree-``degree`` homogeneous component of each ABP."""

    def __init__(self, degree: int = 1, strict: bool = False):
        self.degree = degree
        self.strict = strict

    def fit(self, X=None, y=None):
        check_degree(self.degree)
        return self

    def transform(self, X):
        check_degree(self.degree)
        return [homogenize_component(check_abp(a), self.degree, strict=self.strict) for a in _as_list(X)]

"""Exact scalar fields, sparse multivariate polynomials and affine linear forms.

Field elements are stored as plain Python numbers: ``int`` or
``fractions.Fraction`` over the rationals, canonical ``int`` residues in
``[0, p)`` over a prime field.  :class:`FieldSpec` carries the arithmetic;
:class:`Scalar` wraps a value together with its field for user-facing code.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import DimensionMismatch, DivisionByZero, FieldMismatch, ParseError

MERSENNE_61 = (1 << 61) - 1
MERSENNE_89 = (1 << 89) - 1
MIN_PRIME = 1 << 31


@lru_cache(maxsize=64)
def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``modulus is None``) or GF(p) for a large prime p."""

    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.modulus is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            p = self.modulus
            if not isinstance(p, int) or p < MIN_PRIME or not _is_prime(p):
                raise ValueError(f"modulus must be a prime >= 2^31, got {p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime(self) -> bool:
        return self.modulus is not None

    def __repr__(self):
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    # value-level arithmetic; no type checks, callers pass canonical values

    def element(self, x):
        """Coerce an int, Fraction or numeric string to a canonical value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} value used in {self!r}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        p = self.modulus
        if p is None:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise DivisionByZero(f"denominator {x.denominator} vanishes mod p")
            return x.numerator * pow(den, -1, p) % p
        if isinstance(x, int):
            return x % p
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def add(self, a, b):
        return a + b if self.modulus is None else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.modulus is None else (a - b) % self.modulus

    def neg(self, a):
        return -a if self.modulus is None else (-a) % self.modulus

    def mul(self, a, b):
        return a * b if self.modulus is None else a * b % self.modulus

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.modulus is None:
            r = 1 / Fraction(a)
            return r.numerator if r.denominator == 1 else r
        return pow(a, -1, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if self.modulus is None:
            return a**e
        return pow(a, e, self.modulus)

    def parse(self, text: str):
        try:
            if "/" in text:
                num, den = text.split("/")
                value = Fraction(int(num), int(den))
            else:
                value = int(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}") from exc
        return self.element(value)

    def format(self, a) -> str:
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return str(a)


QQ = FieldSpec("rational")


def prime_field(p: int = MERSENNE_61) -> FieldSpec:
    return FieldSpec("prime", p)


GF_DEFAULT = prime_field(MERSENNE_61)


class Scalar:
    """A field element bound to its field; supports ``+ - * /`` and equality."""

    __slots__ = ("field", "value")

    def __init__(self, value, field: FieldSpec = QQ):
        self.field = field
        self.value = field.element(value)

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        return self.field.element(other)

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._other(other)), self.field)

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._other(other)), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._other(other)), self.field)

    def __truediv__(self, other):
        return Scalar(self.field.div(self.value, self._other(other)), self.field)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.element(other)
        except (TypeError, DivisionByZero):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"Scalar({self.field.format(self.value)}, {self.field!r})"


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


class _DegreeMarker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


#: degree of the zero polynomial
MINUS_INFINITY = _DegreeMarker("MINUS_INFINITY")
#: homogeneity degree of the zero polynomial
HOMOGENEOUS_OF_EVERY_DEGREE = _DegreeMarker("HOMOGENEOUS_OF_EVERY_DEGREE")

Exps = Tuple[int, ...]


def _grlex_key(e: Exps):
    return (sum(e), e)


def _unwrap(field: FieldSpec, point: Sequence) -> list:
    return [field.element(a) for a in point]


class Poly:
    """Sparse polynomial: a map from dense exponent tuples to nonzero coefficients.

    Instances are treated as immutable.  Equality is structural, which is
    exact symbolic equality because zero coefficients are never stored.
    """

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: FieldSpec = QQ, terms: Optional[Mapping[Exps, object]] = None):
        self.nvars = nvars
        self.field = field
        clean: Dict[Exps, object] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise DimensionMismatch(f"exponent {e} has length != {nvars}")
                c = field.element(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, field, terms):
        p = object.__new__(cls)
        p.nvars = nvars
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars, field=QQ):
        return cls._raw(nvars, field, {})

    @classmethod
    def constant(cls, value, nvars, field=QQ):
        value = field.element(value)
        return cls._raw(nvars, field, {(0,) * nvars: value} if value != 0 else {})

    @classmethod
    def var(cls, i, nvars, field=QQ):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, field, {tuple(e): 1})

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"nvars {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, LinearForm):
            return self._coerce(other.to_poly())
        return Poly.constant(other, self.nvars, self.field)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        p = self.field.modulus
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p is not None:
                v %= p
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Poly._raw(self.nvars, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Poly._raw(self.nvars, f, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, a) -> "Poly":
        f = self.field
        a = f.element(a)
        if a == 0:
            return Poly.zero(self.nvars, f)
        return Poly._raw(self.nvars, f, {e: f.mul(c, a) for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (Poly, LinearForm)):
            return self.scale(other)
        other = self._coerce(other)
        p = self.field.modulus
        out: Dict[Exps, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = out.get(e, 0) + c1 * c2
        if p is not None:
            out = {e: c % p for e, c in out.items()}
        return Poly._raw(self.nvars, self.field, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.constant(1, self.nvars, self.field)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, LinearForm):
            other = other.to_poly()
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == Poly.constant(other, self.nvars, self.field)
        return NotImplemented

    __hash__ = None

    def eval(self, point: Sequence):
        """Evaluate at a point; returns a raw field value."""
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        f = self.field
        pt = _unwrap(f, point)
        p = f.modulus
        total = 0
        for e, c in self.terms.items():
            v = c
            for a, k in zip(pt, e):
                if k:
                    v = v * (a**k if p is None else pow(a, k, p))
            total += v
            if p is not None:
                total %= p
        return total

    def to_field(self, field: FieldSpec) -> "Poly":
        return Poly(self.nvars, field, {e: field.element(c) for e, c in self.terms.items()})

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def min_degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return min(sum(e) for e in self.terms)

    def hom_component(self, d: int) -> "Poly":
        if d < 0:
            raise ValueError("degree must be non-negative")
        return Poly._raw(self.nvars, self.field, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, max_degree: int) -> "Poly":
        """Drop every term of total degree above ``max_degree``."""
        return Poly._raw(self.nvars, self.field, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def homogeneity_degree(self):
        """``d`` if every term has degree d, ``None`` if mixed, a marker for zero."""
        if not self.terms:
            return HOMOGENEOUS_OF_EVERY_DEGREE
        degrees = {sum(e) for e in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def degrees_present(self):
        return sorted({sum(e) for e in self.terms})

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
            cs = self.field.format(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def hom_component(p: Poly, d: int) -> Poly:
    return p.hom_component(d)


def homogeneity_degree(p: Poly):
    return p.homogeneity_degree()


def poly_eval(p: Poly, point: Sequence):
    return p.eval(point)


class LinearForm:
    """Affine-linear function ``const + sum(coeffs[i] * x_i)``."""

    __slots__ = ("nvars", "field", "const", "coeffs")

    def __init__(self, nvars: int, field: FieldSpec = QQ, const=0, coeffs: Optional[Mapping[int, object]] = None):
        self.nvars = nvars
        self.field = field
        self.const = field.element(const)
        clean = {}
        for i, c in (coeffs or {}).items():
            i = int(i)
            if not 0 <= i < nvars:
                raise DimensionMismatch(f"variable index {i} out of range for nvars={nvars}")
            c = field.element(c)
            if c != 0:
                clean[i] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, nvars, field, const, coeffs):
        lf = object.__new__(cls)
        lf.nvars = nvars
        lf.field = field
        lf.const = const
        lf.coeffs = coeffs
        return lf

    @classmethod
    def zero(cls, nvars, field=QQ):
        return cls._raw(nvars, field, 0, {})

    @classmethod
    def constant(cls, value, nvars, field=QQ):
        return cls._raw(nvars, field, field.element(value), {})

    @classmethod
    def var(cls, i, nvars, field=QQ, coeff=1):
        return cls(nvars, field, 0, {i: coeff})

    def is_zero(self) -> bool:
        return self.const == 0 and not self.coeffs

    def is_constant(self) -> bool:
        return not self.coeffs

    def is_homogeneous(self) -> bool:
        return self.const == 0

    def is_pure(self) -> bool:
        """True if the form is homogeneous of some degree: constant-only or constant-free."""
        return self.const == 0 or not self.coeffs

    def homogeneous_part(self) -> "LinearForm":
        return LinearForm._raw(self.nvars, self.field, 0, self.coeffs)

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"nvars {self.nvars} vs {other.nvars}")

    def add_scaled(self, other: "LinearForm", a) -> "LinearForm":
        """``self + a * other`` for a raw field value ``a``."""
        if a == 0:
            return self
        f = self.field
        p = f.modulus
        coeffs = dict(self.coeffs)
        for i, c in other.coeffs.items():
            v = coeffs.get(i, 0) + a * c
            if p is not None:
                v %= p
            if v == 0:
                coeffs.pop(i, None)
            else:
                coeffs[i] = v
        const = self.const + a * other.const
        if p is not None:
            const %= p
        return LinearForm._raw(self.nvars, f, const, coeffs)

    def __add__(self, other):
        if not isinstance(other, LinearForm):
            other = LinearForm.constant(other, self.nvars, self.field)
        self._check(other)
        return self.add_scaled(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LinearForm):
            other = LinearForm.constant(other, self.nvars, self.field)
        self._check(other)
        return self.add_scaled(other, self.field.neg(1))

    def scale(self, a) -> "LinearForm":
        f = self.field
        a = f.element(a)
        if a == 0:
            return LinearForm.zero(self.nvars, f)
        return LinearForm._raw(self.nvars, f, f.mul(self.const, a), {i: f.mul(c, a) for i, c in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, (LinearForm, Poly)):
            return self.to_poly() * other
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LinearForm):
            return (
                self.nvars == other.nvars
                and self.field == other.field
                and self.const == other.const
                and self.coeffs == other.coeffs
            )
        if isinstance(other, Poly):
            return self.to_poly() == other
        return NotImplemented

    __hash__ = None

    def eval(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        return self._eval_raw(point)

    def _eval_raw(self, pt):
        v = self.const
        for i, c in self.coeffs.items():
            v += c * pt[i]
        p = self.field.modulus
        return v if p is None else v % p

    def to_field(self, field: FieldSpec) -> "LinearForm":
        return LinearForm(
            self.nvars, field, field.element(self.const), {i: field.element(c) for i, c in self.coeffs.items()}
        )

    def to_poly(self) -> Poly:
        n = self.nvars
        terms = {}
        if self.const != 0:
            terms[(0,) * n] = self.const
        for i, c in self.coeffs.items():
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return Poly._raw(n, self.field, terms)

    def substitute(self, forms: Sequence["LinearForm"]) -> "LinearForm":
        """Compose with a linear map: replace variable i by ``forms[i]``."""
        if len(forms) != self.nvars:
            raise DimensionMismatch(f"need {self.nvars} forms, got {len(forms)}")
        target = forms[0] if forms else None
        out = LinearForm.constant(self.const, target.nvars, target.field) if target else self
        for i, c in self.coeffs.items():
            out = out.add_scaled(forms[i], c)
        return out

    def __repr__(self):
        f = self.field
        parts = [f"{f.format(c)}*x{i}" for i, c in sorted(self.coeffs.items())]
        if self.const != 0 or not parts:
            parts.insert(0, f.format(self.const))
        return " + ".join(parts)

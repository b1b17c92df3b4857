"""Exact polynomial calculus on a coordinate patch.

Scalars are sparse polynomials with rational coefficients; algebra-valued
fields and one-forms are fixed-length tuples of them. Sections are global
polynomials, never truncated.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .lie import LieAlgebraSpec

_ZERO = Fraction(0)


class PolyScalar:
    """Polynomial in ``nvars`` variables, stored as ``{exponents: coeff}``.

    Zero coefficients are never stored. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            clean = {}
            for mono, c in dict(terms).items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != nvars or any(e < 0 for e in mono):
                    raise ValueError(f"bad exponent vector {mono} for {nvars} variables")
                c = Fraction(c)
                if c:
                    clean[mono] = clean.get(mono, _ZERO) + c
            self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c, nvars: int) -> "PolyScalar":
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, a: int, nvars: int) -> "PolyScalar":
        if not 0 <= a < nvars:
            raise ValueError(f"variable index {a} out of range for {nvars} variables")
        mono = tuple(int(i == a) for i in range(nvars))
        return cls._raw(nvars, {mono: Fraction(1)})

    def zero_like(self) -> "PolyScalar":
        return PolyScalar._raw(self.nvars, {})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other) -> "PolyScalar":
        if isinstance(other, PolyScalar):
            if other.nvars != self.nvars:
                raise ValueError(f"patch dimension mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return PolyScalar.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, _ZERO) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return PolyScalar._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalar._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.zero_like()
            return PolyScalar._raw(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, _ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return PolyScalar._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PolyScalar.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyScalar.constant(other, self.nvars)
        if not isinstance(other, PolyScalar):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- calculus --------------------------------------------------------------

    def partial(self, a: int) -> "PolyScalar":
        if not 0 <= a < self.nvars:
            raise ValueError(f"coordinate index {a} out of range for {self.nvars} variables")
        out = {}
        for m, c in self.terms.items():
            e = m[a]
            if e:
                m2 = m[:a] + (e - 1,) + m[a + 1:]
                out[m2] = c * e
        return PolyScalar._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, patch dimension is {self.nvars}")
        pt = [Fraction(p) for p in point]
        powers = [{0: 1, 1: x} for x in pt]
        total = _ZERO
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    pw = powers[i]
                    if e not in pw:
                        pw[e] = pt[i] ** e
                    v *= pw[e]
            total += v
        return total

    # -- literal encoding ------------------------------------------------------

    def to_literal(self) -> list[dict]:
        return [{"coeff": _frac_str(c), "monomial": list(m)} for m, c in sorted(self.terms.items())]

    @classmethod
    def from_literal(cls, data: Iterable[dict], nvars: int) -> "PolyScalar":
        terms = {}
        for term in data:
            mono = tuple(term["monomial"])
            if len(mono) != nvars:
                raise ValueError(f"monomial {list(mono)} does not have {nvars} exponents")
            c = parse_rational(term["coeff"])
            terms[mono] = terms.get(mono, _ZERO) + c
        return cls(nvars, terms)


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"rational literals must be strings like 'p/q', got {s!r}")
    return Fraction(s)


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def frac_str(c) -> str:
    return _frac_str(Fraction(c))


class TractorField:
    """A g-valued polynomial field: one PolyScalar per basis coordinate."""

    __slots__ = ("algebra", "components")

    def __init__(self, algebra: LieAlgebraSpec, components: Sequence[PolyScalar]):
        if len(components) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} components, got {len(components)}")
        n = {c.nvars for c in components}
        if len(n) != 1:
            raise ValueError("components live on different patches")
        self.algebra = algebra
        self.components = tuple(components)

    @classmethod
    def constant(cls, algebra: LieAlgebraSpec, vector: Sequence, nvars: int) -> "TractorField":
        return cls(algebra, [PolyScalar.constant(v, nvars) for v in vector])

    @classmethod
    def zero(cls, algebra: LieAlgebraSpec, nvars: int) -> "TractorField":
        return cls.constant(algebra, [0] * algebra.dim, nvars)

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: "TractorField") -> "TractorField":
        return TractorField(self.algebra, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "TractorField") -> "TractorField":
        return TractorField(self.algebra, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return TractorField(self.algebra, [-a for a in self.components])

    def __mul__(self, f) -> "TractorField":
        """Multiply by a scalar field or a rational."""
        return TractorField(self.algebra, [a * f for a in self.components])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TractorField):
            return NotImplemented
        return self.components == other.components

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def partial(self, a: int) -> "TractorField":
        return TractorField(self.algebra, [c.partial(a) for c in self.components])

    def evaluate(self, point: Sequence) -> list[Fraction]:
        return [c.evaluate(point) for c in self.components]

    def __repr__(self):
        names = self.algebra.basis_names
        inner = ", ".join(f"{n}: {c!r}" for n, c in zip(names, self.components) if c)
        return f"TractorField({inner or '0'})"


class CotangentField:
    """A one-form ``v_a dx^a`` with polynomial components."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[PolyScalar]):
        self.components = tuple(components)

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def __len__(self):
        return len(self.components)

    def __getitem__(self, a):
        return self.components[a]

    def __add__(self, other):
        return CotangentField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return CotangentField([a - b for a, b in zip(self.components, other.components)])

    def __mul__(self, f):
        return CotangentField([a * f for a in self.components])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CotangentField):
            return NotImplemented
        return self.components == other.components

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def evaluate(self, point):
        return [c.evaluate(point) for c in self.components]


def partial(f: PolyScalar, a: int) -> PolyScalar:
    return f.partial(a)


def exterior_d(f: PolyScalar) -> CotangentField:
    return CotangentField([f.partial(a) for a in range(f.nvars)])


def evaluate(s, point: Sequence):
    """Exact substitution of a rational point into a scalar, tractor or one-form field."""
    return s.evaluate(point)

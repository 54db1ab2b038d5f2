"""Exact univariate integer polynomials and sparse weighted generating functions.

Every other module in this package produces its output through these two
types.  `IntPolynomial` carries arbitrary-precision integer coefficients;
`WeightedGF` adds commuting weight variables attached to edges or facets.
Both are immutable and hashable, so values can be shared freely.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import InputError

__all__ = [
    "IntPolynomial",
    "WeightedGF",
    "poly_from_linear_factors",
    "poly_integer_roots",
]


class IntPolynomial:
    """A univariate polynomial over the integers.

    Coefficients are stored ascending by degree: ``coeffs[i]`` multiplies
    ``t**i``.  The zero polynomial is the empty tuple; nonzero polynomials
    never carry a trailing zero coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coefficient: int = 1) -> "IntPolynomial":
        """Return ``coefficient * t**power``."""
        if power < 0:
            raise InputError("monomial power must be nonnegative")
        return cls((0,) * power + (coefficient,))

    @classmethod
    def t(cls) -> "IntPolynomial":
        return cls((0, 1))

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def constant_term(self) -> int:
        return self.coefficient(0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            self.coefficient(i) + other.coefficient(i) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise InputError("negative polynomial power")
        result = IntPolynomial.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shifted(self, power: int) -> "IntPolynomial":
        """Multiply by ``t**power``."""
        if power < 0:
            raise InputError("negative shift")
        if self.is_zero():
            return self
        return IntPolynomial((0,) * power + self.coeffs)

    def compose_neg(self) -> "IntPolynomial":
        """Return p(-t)."""
        return IntPolynomial(
            c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)
        )

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "IntPolynomial(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return "IntPolynomial(" + " + ".join(parts) + ")"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[str]:
        """Coefficients as decimal strings, ascending degree."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "IntPolynomial":
        if not isinstance(data, list):
            raise InputError("polynomial JSON must be an array of decimal strings")
        try:
            return cls(int(s) for s in data)
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad polynomial coefficient: {exc}") from exc


def _coerce(value) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial((value,))
    raise TypeError(f"cannot treat {value!r} as an integer polynomial")


def poly_from_linear_factors(
    roots_negated: Iterable[int], tshift: int = 0
) -> IntPolynomial:
    """Expand ``t**tshift * prod_k (t + a_k)`` for nonnegative integers a_k."""
    if tshift < 0:
        raise InputError("tshift must be nonnegative")
    result = IntPolynomial.one()
    for a in roots_negated:
        a = int(a)
        if a < 0:
            raise InputError("linear-factor constants must be nonnegative")
        result = result * IntPolynomial((a, 1))
    return result.shifted(tshift)


def poly_integer_roots(p: IntPolynomial) -> list[int] | None:
    """Roots of a monic polynomial, if they are all nonpositive integers.

    Returns the multiset of roots (largest first, so 0 precedes -1), or
    ``None`` when p does not split into factors (t + a) with a >= 0.
    Works by repeated trial division, trying a = 0 first and then every
    positive a up to the absolute value of the running constant term.
    """
    if p.is_zero():
        return None
    if not p.is_monic():
        raise InputError("poly_integer_roots requires a monic polynomial")
    roots: list[int] = []
    current = p
    while current.degree > 0 and current.constant_term() == 0:
        roots.append(0)
        current = IntPolynomial(current.coeffs[1:])
    a = 1
    while current.degree > 0:
        bound = abs(current.constant_term())
        if a > bound:
            return None
        if current.constant_term() % a == 0:
            quotient = _divide_linear(current, a)
            if quotient is not None:
                roots.append(-a)
                current = quotient
                continue
        a += 1
    return sorted(roots, reverse=True)


def _divide_linear(p: IntPolynomial, a: int) -> IntPolynomial | None:
    """Exact quotient p / (t + a), or None when the division leaves a remainder."""
    cs = list(p.coeffs)
    out = [0] * (len(cs) - 1)
    carry = 0
    for i in range(len(cs) - 1, 0, -1):
        carry = cs[i] + carry
        out[i - 1] = carry
        carry = -a * carry
    if cs[0] + carry != 0:
        return None
    return IntPolynomial(out)


class WeightedGF:
    """Sparse generating function in t and a family of weight variables.

    Terms map ``(monomial, tpow)`` to an integer coefficient, where a
    monomial is a sorted tuple of variable identifiers (the multiset of
    weights appearing in the term) and tpow is a nonnegative power of t.
    Identifiers can be any mutually comparable hashable values; this
    package uses the edge or facet tuples of the originating object.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[tuple, int], int] | None = None):
        clean: dict[tuple[tuple, int], int] = {}
        for (mono, tpow), coeff in (terms or {}).items():
            coeff = int(coeff)
            if coeff == 0:
                continue
            if tpow < 0:
                raise InputError("WeightedGF powers of t must be nonnegative")
            key = (tuple(sorted(mono)), int(tpow))
            clean[key] = clean.get(key, 0) + coeff
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def zero(cls) -> "WeightedGF":
        return cls()

    @classmethod
    def one(cls) -> "WeightedGF":
        return cls({((), 0): 1})

    @classmethod
    def t_power(cls, power: int) -> "WeightedGF":
        return cls({((), power): 1})

    @classmethod
    def variable(cls, identifier) -> "WeightedGF":
        return cls({((identifier,), 0): 1})

    @classmethod
    def t_plus_vars(cls, identifiers: Iterable) -> "WeightedGF":
        """The linear factor t + sum of the given weight variables."""
        terms: dict[tuple[tuple, int], int] = {((), 1): 1}
        for v in identifiers:
            key = ((v,), 0)
            terms[key] = terms.get(key, 0) + 1
        return cls(terms)

    def __add__(self, other: "WeightedGF") -> "WeightedGF":
        merged = dict(self.terms)
        for key, coeff in other.terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return WeightedGF(merged)

    def __mul__(self, other: "WeightedGF") -> "WeightedGF":
        merged: dict[tuple[tuple, int], int] = {}
        for (m1, p1), c1 in self.terms.items():
            for (m2, p2), c2 in other.terms.items():
                key = (tuple(sorted(m1 + m2)), p1 + p2)
                merged[key] = merged.get(key, 0) + c1 * c2
        return WeightedGF(merged)

    def substitute_ones(self) -> IntPolynomial:
        """Set every weight variable to 1, collapsing to a polynomial in t."""
        coeffs: dict[int, int] = {}
        for (_, tpow), coeff in self.terms.items():
            coeffs[tpow] = coeffs.get(tpow, 0) + coeff
        if not coeffs:
            return IntPolynomial.zero()
        top = max(coeffs)
        return IntPolynomial(coeffs.get(i, 0) for i in range(top + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGF):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(("WeightedGF", tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "WeightedGF(0)"
        bits = []
        for (mono, tpow), coeff in sorted(self.terms.items()):
            piece = [str(coeff)]
            piece.extend(f"x[{v}]" for v in mono)
            if tpow:
                piece.append(f"t^{tpow}")
            bits.append("*".join(piece))
        return "WeightedGF(" + " + ".join(bits) + ")"

    def to_json(self) -> list[dict]:
        """Deterministic list of terms, sorted by (tpow, monomial)."""
        items = sorted(
            self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])
        )
        return [
            {
                "monomial": [list(v) if isinstance(v, tuple) else v for v in mono],
                "tpow": tpow,
                "coeff": str(coeff),
            }
            for (mono, tpow), coeff in items
        ]


def product_of_weighted_factors(factors: Iterable[WeightedGF]) -> WeightedGF:
    result = WeightedGF.one()
    for f in factors:
        result = result * f
    return result

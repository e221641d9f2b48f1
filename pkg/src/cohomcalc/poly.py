"""Sparse multivariate polynomials with exact coefficients and a weighted grading.

Monomials are exponent tuples, one entry per variable of a
:class:`VariableContext`.  Each variable carries a positive integer weight
(its cohomological degree), so the weighted degree of a monomial is
``sum(exponent * weight)``.  Coefficients are arbitrary-precision integers
or :class:`fractions.Fraction` values kept in lowest terms; integers are
preferred whenever the denominator is 1 so that the common integral case
stays fast.

Polynomials are immutable by convention: no method mutates ``self`` and the
term mapping is never exposed for writing.  All operations are pure, which
makes concurrent evaluation safe without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Monomial = tuple  # exponent tuple, one non-negative int per context variable


class ContextMismatchError(ValueError):
    """Two polynomials from different variable contexts were combined."""


class DegreeError(ValueError):
    """An operation required homogeneous input of a specific degree."""


class InversionError(ValueError):
    """The constant term does not allow a truncated inverse."""


class CoefficientError(ValueError):
    """A coefficient cannot be reduced modulo the requested modulus."""


def _norm_coeff(c):
    """Normalise a coefficient: Fractions with denominator 1 become ints."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


@dataclass(frozen=True)
class VariableContext:
    """Ordered variables with positive integer weights (cohomological degrees)."""

    names: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        for n in self.names:
            if not isinstance(n, str) or not n.isidentifier():
                raise ValueError(f"invalid variable name {n!r}")
        for w in self.weights:
            if not isinstance(w, int) or w < 1:
                raise ValueError("variable weights must be integers >= 1")

    @classmethod
    def of(cls, *pairs) -> "VariableContext":
        """Build a context from (name, weight) pairs."""
        return cls(tuple(n for n, _ in pairs), tuple(w for _, w in pairs))

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def degree(self, mon: Monomial) -> int:
        return sum(e * w for e, w in zip(mon, self.weights))

    def zero_monomial(self) -> Monomial:
        return (0,) * self.arity

    def monomials_of_degree(self, d: int) -> list:
        """All exponent tuples of weighted degree exactly ``d``, grlex-descending."""
        if d < 0:
            return []
        out = []

        def rec(i, rem, prefix):
            if i == self.arity:
                if rem == 0:
                    out.append(tuple(prefix))
                return
            w = self.weights[i]
            for e in range(rem // w, -1, -1):
                rec(i + 1, rem - e * w, prefix + [e])

        rec(0, d, [])
        # same degree throughout, so plain reverse-lex equals grlex-descending
        out.sort(reverse=True)
        return out


class Polynomial:
    """A sparse polynomial over a fixed :class:`VariableContext`.

    >>> ctx = VariableContext.of(("t", 2), ("w", 8))
    >>> t, w = Polynomial.variable(ctx, "t"), Polynomial.variable(ctx, "w")
    >>> str(t ** 9 - 3 * t * w ** 2)
    't^9 - 3*t*w^2'
    """

    __slots__ = ("context", "_terms")

    def __init__(self, context: VariableContext, terms: Mapping):
        self.context = context
        clean = {}
        arity = context.arity
        for mon, coeff in terms.items():
            c = _norm_coeff(coeff)
            if c == 0:
                continue
            mon = tuple(mon)
            if len(mon) != arity or any(e < 0 or not isinstance(e, int) for e in mon):
                raise ValueError(f"bad monomial {mon!r} for context of arity {arity}")
            clean[mon] = c
        self._terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, context) -> "Polynomial":
        return cls(context, {})

    @classmethod
    def one(cls, context) -> "Polynomial":
        return cls(context, {context.zero_monomial(): 1})

    @classmethod
    def constant(cls, context, c) -> "Polynomial":
        return cls(context, {context.zero_monomial(): c})

    @classmethod
    def variable(cls, context, name) -> "Polynomial":
        i = context.index(name)
        mon = [0] * context.arity
        mon[i] = 1
        return cls(context, {tuple(mon): 1})

    @classmethod
    def monomial(cls, context, exponents, coeff=1) -> "Polynomial":
        return cls(context, {tuple(exponents): coeff})

    # ---- inspection ---------------------------------------------------

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def monomials(self) -> Iterable:
        return self._terms.keys()

    def coefficient(self, mon: Monomial):
        return self._terms.get(tuple(mon), 0)

    @property
    def constant_term(self):
        return self._terms.get(self.context.zero_monomial(), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self):
        """Maximum weighted degree of a term, or None for the zero polynomial."""
        if not self._terms:
            return None
        deg = self.context.degree
        return max(deg(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {self.context.degree(m) for m in self._terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        """Degree of a nonzero homogeneous polynomial; raises otherwise."""
        degs = {self.context.degree(m) for m in self._terms}
        if len(degs) != 1:
            raise DegreeError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # ---- ring operations ----------------------------------------------

    def _check_context(self, other: "Polynomial"):
        if self.context != other.context:
            raise ContextMismatchError(
                f"contexts differ: {self.context.names} vs {other.context.names}"
            )

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.context, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_context(other)
        terms = dict(self._terms)
        for mon, c in other._terms.items():
            terms[mon] = terms.get(mon, 0) + c
        return Polynomial(self.context, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.context, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.context, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.context)
            return Polynomial(
                self.context, {m: c * other for m, c in self._terms.items()}
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_context(other)
        if len(self._terms) > len(other._terms):
            big, small = self._terms, other._terms
        else:
            big, small = other._terms, self._terms
        terms = {}
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                terms[mon] = terms.get(mon, 0) + c1 * c2
        return Polynomial(self.context, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.context)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # ---- grading ------------------------------------------------------

    def homogeneous_component(self, d: int) -> "Polynomial":
        deg = self.context.degree
        return Polynomial(
            self.context, {m: c for m, c in self._terms.items() if deg(m) == d}
        )

    def components(self) -> dict:
        """Split into homogeneous components, keyed by weighted degree."""
        deg = self.context.degree
        out = {}
        for m, c in self._terms.items():
            out.setdefault(deg(m), {})[m] = c
        return {d: Polynomial(self.context, t) for d, t in sorted(out.items())}

    # ---- series and modular arithmetic ---------------------------------

    def truncated_inverse(self, maxdeg: int, modulus: int | None = None) -> "Polynomial":
        """Inverse q with (self * q) equal to 1 up to weighted degree ``maxdeg``.

        With ``modulus`` set, all arithmetic is done modulo that prime.
        Otherwise the constant term only needs to be nonzero; the result has
        exact rational coefficients (integral whenever the constant term is
        a unit and the input is integral).
        """
        c0 = self.constant_term
        if modulus is not None:
            if not isinstance(c0, int) or c0 % modulus == 0:
                raise InversionError(f"constant term {c0} not invertible mod {modulus}")
            inv0 = pow(c0 % modulus, -1, modulus)
        else:
            if c0 == 0:
                raise InversionError("constant term is zero")
            inv0 = Fraction(1, 1) / Fraction(c0)
        comps = self.components()
        q = {0: Polynomial.constant(self.context, inv0)}
        for d in range(1, maxdeg + 1):
            acc = Polynomial.zero(self.context)
            for e, pe in comps.items():
                if 1 <= e <= d and (d - e) in q:
                    acc = acc + pe * q[d - e]
            if acc.is_zero():
                continue
            qd = acc * (-inv0 if modulus is None else (modulus - 1) * inv0)
            if modulus is not None:
                qd = qd.reduce_mod(modulus)
            if not qd.is_zero():
                q[d] = qd
        total = Polynomial.zero(self.context)
        for piece in q.values():
            total = total + piece
        return total

    def reduce_mod(self, m: int) -> "Polynomial":
        """Coefficients reduced into {0..m-1}; zeros dropped.

        Fractions whose denominator is invertible mod ``m`` are reduced via
        the modular inverse; a denominator divisible by ``m`` is an error.
        """
        if m < 2:
            raise ValueError("modulus must be >= 2")
        terms = {}
        for mon, c in self._terms.items():
            if isinstance(c, Fraction):
                if c.denominator % m == 0:
                    raise CoefficientError(
                        f"denominator of {c} not invertible mod {m}"
                    )
                r = (c.numerator * pow(c.denominator % m, -1, m)) % m
            else:
                r = c % m
            if r:
                terms[mon] = r
        return Polynomial(self.context, terms)

    # ---- substitution --------------------------------------------------

    def substitute(self, assignments: Mapping, strict: bool = True) -> "Polynomial":
        """Evaluate the ring homomorphism sending each variable to its image.

        ``assignments`` maps variable names to polynomials over one common
        target context; unassigned variables must exist by name in the
        target context and map to themselves.  In strict mode every image
        must be homogeneous of the variable's weight, so substitution
        preserves the grading.
        """
        if assignments:
            target = next(iter(assignments.values())).context
        else:
            target = self.context
        images = []
        for name, weight in zip(self.context.names, self.context.weights):
            if name in assignments:
                img = assignments[name]
                if img.context != target:
                    raise ContextMismatchError("assignment images use mixed contexts")
            else:
                img = Polynomial.variable(target, name)
            if strict and not img.is_zero() and img.homogeneous_degree() != weight:
                raise DegreeError(
                    f"image of {name} has degree {img.homogeneous_degree()}, "
                    f"expected {weight}"
                )
            images.append(img)
        result = Polynomial.zero(target)
        power_cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[i] ** e
            return power_cache[key]

        for mon, coeff in self._terms.items():
            term = Polynomial.constant(target, coeff)
            for i, e in enumerate(mon):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    # ---- presentation ---------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms sorted graded-lexicographically, largest first."""
        deg = self.context.degree
        return sorted(self._terms.items(), key=lambda mc: (deg(mc[0]), mc[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mon, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.context.names, mon):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            body = "*".join(factors)
            if not factors:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            parts.append(("- " if coeff < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def to_json_terms(self) -> list:
        """Serializable sorted term list: exponents plus coefficient strings."""
        return [
            {"exponents": list(mon), "coeff": str(coeff)}
            for mon, coeff in self.sorted_terms()
        ]


def grlex_key(context: VariableContext):
    """Sort key for monomials: weighted degree first, then declared-order lex."""
    deg = context.degree
    return lambda mon: (deg(mon), mon)

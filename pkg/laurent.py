# laurent.py
"""
Exact Laurent polynomials with integer coefficients.

``UniPoly`` is a polynomial in ``t`` (Alexander), ``BiPoly`` one in ``x`` and ``y``
(HOMFLYPT). Both are immutable maps from exponents to nonzero ``int``
coefficients; zero coefficients are never stored.
"""

###################
# Standard Imports
###################
import re
from typing import Mapping

###################
# External Imports
###################
import sympy as sp

t, x, y = sp.symbols('t x y')


###################
# Shared Base
###################
class _Laurent:
    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Mapping = None):
        clean = {}
        for exp, coeff in (terms or {}).items():
            if coeff:
                clean[self._exp(exp)] = int(coeff)
        self._terms = clean
        self._hash = None

    @staticmethod
    def _exp(exp):
        raise NotImplementedError

    @classmethod
    def _zero_exp(cls):
        raise NotImplementedError

    @classmethod
    def constant(cls, value: int):
        return cls({cls._zero_exp(): value})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, int):
            return self.constant(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = dict(self._terms)
        for exp, coeff in other._terms.items():
            result[exp] = result.get(exp, 0) + coeff
        return type(self)(result)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = self._add_exp(e1, e2)
                result[exp] = result.get(exp, 0) + c1 * c2
        return type(self)(result)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = self.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def abs_coefficient_sum(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)


###################
# One Variable
###################
class UniPoly(_Laurent):
    """Laurent polynomial in ``t``; keys are integer exponents."""

    @staticmethod
    def _exp(exp):
        return int(exp)

    @classmethod
    def _zero_exp(cls):
        return 0

    @staticmethod
    def _add_exp(a, b):
        return a + b

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "UniPoly":
        return cls({exponent: coeff})

    @classmethod
    def from_coefficients(cls, coeffs, low: int = 0) -> "UniPoly":
        """Build from a coefficient list starting at exponent ``low``."""
        return cls({low + k: c for k, c in enumerate(coeffs)})

    def min_degree(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_degree(self) -> int:
        return max(self._terms) if self._terms else 0

    def span(self) -> int:
        return self.max_degree() - self.min_degree()

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def coefficients(self) -> list:
        """Coefficients from the lowest to the highest exponent, zeros included."""
        if not self._terms:
            return []
        lo = self.min_degree()
        return [self._terms.get(lo + k, 0) for k in range(self.span() + 1)]

    def shift(self, k: int) -> "UniPoly":
        """Multiply by ``t**k``."""
        return UniPoly({e + k: c for e, c in self._terms.items()})

    def evaluate(self, value: int):
        """Evaluate at an integer; negative exponents give a ``sympy.Rational``."""
        total = sp.Integer(0)
        for exp, coeff in self._terms.items():
            total += coeff * sp.Integer(value) ** exp
        return int(total) if total.is_integer else total

    def as_expr(self) -> sp.Expr:
        return sp.Add(*[c * t ** e for e, c in self._terms.items()])

    @classmethod
    def from_expr(cls, expr, symbol: sp.Symbol = t) -> "UniPoly":
        """
        Convert a sympy expression that is a Laurent polynomial in ``symbol``.

        Raises:
            ArithmeticError: If a coefficient is not an integer or a term is not a
                power of ``symbol``.
        """
        terms = {}
        for monom, coeff in sp.expand(expr).as_coefficients_dict().items():
            if coeff == 0:
                continue
            if not sp.Integer(coeff) == coeff:
                raise ArithmeticError(f"non-integer coefficient {coeff} in {expr}")
            powers = monom.as_powers_dict()
            exponent = powers.get(symbol, 0)
            if any(base not in (symbol, 1) for base in powers):
                raise ArithmeticError(f"term {monom} is not a power of {symbol}")
            terms[int(exponent)] = terms.get(int(exponent), 0) + int(coeff)
        return cls(terms)

    def exact_divide(self, other: "UniPoly") -> "UniPoly":
        """
        Divide exactly by another Laurent polynomial.

        Raises:
            ArithmeticError: If the division leaves a remainder.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return UniPoly()
        num_shift, den_shift = -self.min_degree(), -other.min_degree()
        num = sp.Poly(self.shift(num_shift).as_expr(), t)
        den = sp.Poly(other.shift(den_shift).as_expr(), t)
        quotient, remainder = sp.div(num, den)
        if not remainder.is_zero:
            raise ArithmeticError(f"{other} does not divide {self}")
        return UniPoly.from_expr(quotient.as_expr()).shift(den_shift - num_shift)

    def serialize(self) -> str:
        if not self._terms:
            return "0"
        return ' + '.join(f"{c}*t^{e}" for e, c in self.items())

    @classmethod
    def parse(cls, text: str) -> "UniPoly":
        text = text.strip()
        if text == "0":
            return cls()
        terms = {}
        for part in text.split(' + '):
            match = re.fullmatch(r'(-?\d+)\*t\^(-?\d+)', part.strip())
            if not match:
                raise ValueError(f"cannot parse polynomial term {part!r}")
            terms[int(match.group(2))] = int(match.group(1))
        return cls(terms)

    def __repr__(self):
        return f"UniPoly({self.serialize()})"


###################
# Two Variables
###################
class BiPoly(_Laurent):
    """Laurent polynomial in ``x`` and ``y``; keys are ``(i, j)`` exponent pairs."""

    @staticmethod
    def _exp(exp):
        i, j = exp
        return (int(i), int(j))

    @classmethod
    def _zero_exp(cls):
        return (0, 0)

    @staticmethod
    def _add_exp(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> "BiPoly":
        return cls({(i, j): coeff})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "BiPoly":
        return cls.monomial(0, 1)

    def shift(self, i: int, j: int) -> "BiPoly":
        """Multiply by ``x**i * y**j``."""
        return BiPoly({(a + i, b + j): c for (a, b), c in self._terms.items()})

    def swap_xy(self) -> "BiPoly":
        return BiPoly({(b, a): c for (a, b), c in self._terms.items()})

    def evaluate(self, xv: int, yv: int):
        total = sp.Integer(0)
        for (i, j), coeff in self._terms.items():
            total += coeff * sp.Integer(xv) ** i * sp.Integer(yv) ** j
        return int(total) if total.is_integer else total

    def as_expr(self) -> sp.Expr:
        return sp.Add(*[c * x ** i * y ** j for (i, j), c in self._terms.items()])

    @classmethod
    def from_expr(cls, expr) -> "BiPoly":
        terms = {}
        for monom, coeff in sp.expand(expr).as_coefficients_dict().items():
            if coeff == 0:
                continue
            if not sp.Integer(coeff) == coeff:
                raise ArithmeticError(f"non-integer coefficient {coeff} in {expr}")
            powers = monom.as_powers_dict()
            if any(base not in (x, y, 1) for base in powers):
                raise ArithmeticError(f"term {monom} is not a monomial in x and y")
            key = (int(powers.get(x, 0)), int(powers.get(y, 0)))
            terms[key] = terms.get(key, 0) + int(coeff)
        return cls(terms)

    def serialize(self) -> str:
        if not self._terms:
            return "0"
        return ' + '.join(f"{c}*x^{i}*y^{j}" for (i, j), c in self.items())

    @classmethod
    def parse(cls, text: str) -> "BiPoly":
        text = text.strip()
        if text == "0":
            return cls()
        terms = {}
        for part in text.split(' + '):
            match = re.fullmatch(r'(-?\d+)\*x\^(-?\d+)\*y\^(-?\d+)', part.strip())
            if not match:
                raise ValueError(f"cannot parse polynomial term {part!r}")
            terms[(int(match.group(2)), int(match.group(3)))] = int(match.group(1))
        return cls(terms)

    def __repr__(self):
        return f"BiPoly({self.serialize()})"

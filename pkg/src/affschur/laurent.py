"""Exact sparse Laurent polynomials over the integers.

This is the coefficient ring Z[t, 1/t] used everywhere else: Kazhdan-Lusztig
polynomials live in q = t^2, structure constants are bar-symmetric Laurent
polynomials in t, and the asymptotic ring extracts single coefficients.
Coefficients are Python bignums, exponents are stored sparsely, and the zero
polynomial is the empty dict.

>>> p = T + T**-1
>>> p * p == T**2 + 2 + T**-2
True
>>> p.bar() == p
True
>>> (T**2 + 2 + T**-2).exact_div(p) == p
True
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .errors import DivisionByZero, InexactDivision, ZeroBase

__all__ = ["LaurentPoly", "ZERO", "ONE", "T", "TINV", "Q", "QINV", "NEG_INF", "t_pow"]

# degree of the zero polynomial
NEG_INF = float("-inf")


class LaurentPoly:
    """An element of Z[t, 1/t], stored as {exponent: nonzero coefficient}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | int = 0):
        if isinstance(coeffs, int):
            self._c = {0: coeffs} if coeffs else {}
        else:
            self._c = {e: c for e, c in coeffs.items() if c}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return ONE

    @staticmethod
    def t_power(exp: int, coeff: int = 1) -> "LaurentPoly":
        """The monomial coeff * t^exp."""
        return LaurentPoly({exp: coeff})

    # -- basic protocol ------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            if e == 0:
                parts.append(f"{c:+d}")
            else:
                mono = "t" if e == 1 else f"t^{e}"
                if c == 1:
                    parts.append(f"+{mono}")
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c:+d}*{mono}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            nv = c.get(e, 0) + v
            if nv:
                c[e] = nv
            elif e in c:
                del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: -v for e, v in self._c.items()}
        return out

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            out = LaurentPoly.__new__(LaurentPoly)
            out._c = {e: v * other for e, v in self._c.items()}
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                nv = c.get(e, 0) + v1 * v2
                if nv:
                    c[e] = nv
                elif e in c:
                    del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if len(self._c) == 1:
            ((e, v),) = self._c.items()
            if n >= 0 or v in (1, -1):
                return LaurentPoly({e * n: v ** abs(n)})
        if n < 0:
            raise InexactDivision("negative power of a non-unit")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure maps ----------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The involution t -> 1/t (negate every exponent)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-e: v for e, v in self._c.items()}
        return out

    def neg_t(self) -> "LaurentPoly":
        """The substitution t -> -t (negates odd-exponent coefficients)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: (-v if e & 1 else v) for e, v in self._c.items()}
        return out

    # -- queries ---------------------------------------------------------

    def degree(self) -> "int | float":
        """Maximum exponent in t; NEG_INF for the zero polynomial."""
        return max(self._c) if self._c else NEG_INF

    def min_degree(self) -> "int | float":
        return min(self._c) if self._c else -NEG_INF

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._c.values())

    def is_bar_symmetric(self) -> bool:
        return all(self._c.get(-e, 0) == v for e, v in self._c.items())

    def in_q(self) -> bool:
        """True if every exponent is even, i.e. the value lies in Z[q, 1/q]."""
        return all(e % 2 == 0 for e in self._c)

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    # -- evaluation and division ------------------------------------------

    def evaluate(self, v: "Fraction | int") -> Fraction:
        """Exact evaluation at a nonzero rational value of t."""
        v = Fraction(v)
        if v == 0:
            raise ZeroBase("cannot evaluate a Laurent polynomial at t = 0")
        return sum((Fraction(c) * v**e for e, c in self._c.items()), Fraction(0))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return q with q * other == self, or raise InexactDivision."""
        if not isinstance(other, LaurentPoly) or other.is_zero():
            raise DivisionByZero("division by the zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        rem = dict(self._c)
        eb = max(other._c)
        cb = other._c[eb]
        # exponents of an exact quotient lie in [min(a)-min(b), max(a)-max(b)]
        floor_exp = min(self._c) - min(other._c)
        quot: dict[int, int] = {}
        while rem:
            er = max(rem)
            cr = rem[er]
            eq = er - eb
            if eq < floor_exp or cr % cb != 0:
                raise InexactDivision(f"{self!r} is not divisible by {other!r}")
            cq = cr // cb
            quot[eq] = cq
            for e2, v2 in other._c.items():
                e = eq + e2
                nv = rem.get(e, 0) - cq * v2
                if nv:
                    rem[e] = nv
                elif e in rem:
                    del rem[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = quot
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        """JSON object mapping decimal exponents to decimal coefficients."""
        return {str(e): str(c) for e, c in sorted(self._c.items())}

    @staticmethod
    def from_json(obj: Mapping[str, str]) -> "LaurentPoly":
        return LaurentPoly({int(e): int(c) for e, c in obj.items()})


ZERO = LaurentPoly(0)
ONE = LaurentPoly(1)
T = LaurentPoly({1: 1})
TINV = LaurentPoly({-1: 1})
Q = LaurentPoly({2: 1})
QINV = LaurentPoly({-2: 1})


def t_pow(exp: int, coeff: int = 1) -> LaurentPoly:
    """Shorthand for the monomial coeff * t^exp."""
    return LaurentPoly({exp: coeff})


if __name__ == "__main__":
    import doctest

    doctest.testmod()

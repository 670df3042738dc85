"""Exact arithmetic over GF(2) and the rational-function field GF(2)(a).

Polynomials in ``a`` are stored as non-negative integers whose bits are the
coefficients (bit k is the coefficient of a^k); ``mpyc.gf2x`` supplies the
polynomial arithmetic. A :class:`Scalar` is a reduced fraction of two such
polynomials. Constants (0 and 1) take a fast path since most structure
constants of the algebras handled here lie in GF(2).
"""

from __future__ import annotations

import random
from typing import Iterator, List, Optional, Tuple

from mpyc import gf2x

from app.core.exceptions import DivisionByZero, IndeterminateSubstitution, ScalarParseError

GF16_MODULUS = 0b10011  # y^4 + y + 1


def _pmul(p: int, q: int) -> int:
    if p <= 1 or q <= 1:
        return p * q
    return gf2x.mul(p, q).value


def _pdivmod(p: int, q: int) -> Tuple[int, int]:
    quot, rem = gf2x.divmod_(p, q)
    return quot.value, rem.value


def _pgcd(p: int, q: int) -> int:
    return gf2x.gcd(p, q).value


def poly_degree(p: int) -> int:
    """Degree of a GF(2)[a] polynomial, -1 for the zero polynomial."""
    return gf2x.degree(p)


def poly_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for k in range(poly_degree(p), -1, -1):
        if (p >> k) & 1:
            terms.append("1" if k == 0 else "a" if k == 1 else f"a^{k}")
    return "+".join(terms)


class Scalar:
    """Element of GF(2)(a) in canonical form: gcd(num, den) = 1, den != 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: int = 0, den: int = 1, reduced: bool = False):
        if den == 0:
            raise DivisionByZero()
        if not reduced and den != 1:
            if num == 0:
                den = 1
            else:
                g = _pgcd(num, den)
                if g != 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
        self.num = num
        self.den = den

    # --- construction helpers ---

    @classmethod
    def const(cls, bit: int) -> "Scalar":
        return ONE if bit & 1 else ZERO

    @classmethod
    def poly(cls, p: int) -> "Scalar":
        if p == 0:
            return ZERO
        if p == 1:
            return ONE
        return cls(p, 1, reduced=True)

    # --- predicates ---

    def is_zero(self) -> bool:
        return self.num == 0

    def is_one(self) -> bool:
        return self.num == 1 and self.den == 1

    def is_constant(self) -> bool:
        return self.den == 1 and self.num <= 1

    def __bool__(self) -> bool:
        return self.num != 0

    # --- field operations ---

    def __add__(self, other: "Scalar") -> "Scalar":
        if self.den == 1 and other.den == 1:
            return Scalar.poly(self.num ^ other.num)
        num = _pmul(self.num, other.den) ^ _pmul(other.num, self.den)
        return Scalar(num, _pmul(self.den, other.den))

    __sub__ = __add__

    def __neg__(self) -> "Scalar":
        return self

    def __mul__(self, other: "Scalar") -> "Scalar":
        if self.num == 0 or other.num == 0:
            return ZERO
        if self.den == 1 and other.den == 1:
            return Scalar.poly(_pmul(self.num, other.num))
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def inv(self) -> "Scalar":
        if self.num == 0:
            raise DivisionByZero("Cannot invert the zero scalar")
        return Scalar(self.den, self.num, reduced=True)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inv()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inv() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def square(self) -> "Scalar":
        return self * self

    # --- comparison & display ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.den == 1 and self.num == (other & 1)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def sort_key(self) -> Tuple[int, int]:
        return (self.den, self.num)

    def __str__(self) -> str:
        if self.den == 1:
            return poly_str(self.num)
        num, den = poly_str(self.num), poly_str(self.den)
        if "+" in num:
            num = f"({num})"
        if "+" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


ZERO = Scalar.__new__(Scalar)
ZERO.num, ZERO.den = 0, 1
ONE = Scalar.__new__(Scalar)
ONE.num, ONE.den = 1, 1
A = Scalar(0b10, 1, reduced=True)


def scalar_arith(op: str, x: Scalar, y: Optional[Scalar] = None) -> Scalar:
    """Dispatch ``add``/``mul``/``inv`` for the text and HTTP surfaces."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    raise ScalarParseError(f"Unknown scalar operation '{op}'")


# --- Substitution and evaluation ---

def _horner(p: int, value: Scalar) -> Scalar:
    result = ZERO
    for k in range(poly_degree(p), -1, -1):
        result = result * value
        if (p >> k) & 1:
            result = result + ONE
    return result


def substitute(x: Scalar, image_of_a: Scalar) -> Scalar:
    """Replace ``a`` by ``image_of_a`` and reduce.

    Raises:
        IndeterminateSubstitution: If numerator and denominator both vanish.
        DivisionByZero: If only the denominator vanishes.
    """
    if x.den == 1 and x.num <= 1:
        return x
    num = _horner(x.num, image_of_a)
    den = _horner(x.den, image_of_a)
    if den.is_zero():
        if num.is_zero():
            raise IndeterminateSubstitution(f"Substituting a -> {image_of_a} in {x} gives 0/0")
        raise DivisionByZero(f"Substituting a -> {image_of_a} in {x} kills the denominator")
    return num / den


def _gf16_eval(p: int, t: int) -> int:
    result = 0
    for k in range(poly_degree(p), -1, -1):
        result = gf2x.mod(gf2x.mul(result, t), GF16_MODULUS).value ^ ((p >> k) & 1)
    return result


def evaluate_gf16(x: Scalar, t: int) -> int:
    """Evaluate ``x`` at ``a = t`` in GF(16) = GF(2)[y]/(y^4+y+1)."""
    den = _gf16_eval(x.den, t)
    if den == 0:
        raise DivisionByZero(f"Denominator of {x} vanishes at a = {t}")
    num = _gf16_eval(x.num, t)
    inverse = gf2x.powmod(den, 14, GF16_MODULUS).value
    return gf2x.mod(gf2x.mul(num, inverse), GF16_MODULUS).value


def random_scalar(rng: random.Random, max_degree: int = 3, allow_fraction: bool = True) -> Scalar:
    num = rng.getrandbits(max_degree + 1)
    if not allow_fraction or rng.random() < 0.5:
        return Scalar.poly(num)
    den = rng.getrandbits(max_degree + 1) or 1
    return Scalar(num, den)


# --- Text syntax ---

class _ScalarParser:
    """Recursive-descent parser for ``expr := term (('+'|'-') term)*``."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ScalarParseError:
        return ScalarParseError(f"{message} at column {self.pos + 1} in '{self.text}'")

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Scalar:
        value = self.expr()
        if self.peek():
            raise self.error(f"Unexpected '{self.peek()}'")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            self.pos += 1
            value = value + self.term()
        return value

    def term(self) -> Scalar:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> Scalar:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise self.error("Expected exponent")
            base = base ** int(self.text[start:self.pos])
        return base

    def atom(self) -> Scalar:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                raise self.error("Expected ')'")
            self.pos += 1
            return value
        if ch == "a":
            self.pos += 1
            return A
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Scalar.const(int(self.text[start:self.pos]))
        raise self.error(f"Unexpected '{ch}'" if ch else "Unexpected end of input")


def parse_scalar(text: str) -> Scalar:
    if isinstance(text, Scalar):
        return text
    if isinstance(text, int):
        return Scalar.const(text)
    return _ScalarParser(str(text)).parse()


def iter_bits(p: int) -> Iterator[int]:
    while p:
        low = p & -p
        yield low.bit_length() - 1
        p ^= low


def scalar_list(values: List[str]) -> List[Scalar]:
    return [parse_scalar(v) for v in values]

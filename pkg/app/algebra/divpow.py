"""Divided powers O(m;N|n) and the distinguished derivations vect(m;N|n).

Monomials u^(r) are packed into one int, ``COORD_BITS`` bits per coordinate,
so the product u^(r)·u^(s) is u^(r+s) when ``r & s == 0`` and zero otherwise
(binom(r+s, r) is odd iff the base-2 digits of r and s are disjoint). The same
test kills ξ·ξ for odd coordinates, whose exponents are 0 or 1.

A function is a ``Vec`` keyed by packed monomials; a vector field Σ f_c ∂_c
is a ``Vec`` keyed by ``(monomial << TERM_BITS) | c``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.algebra.linalg import Echelon, Vec
from app.algebra.liesuper import LieSuperAlgebra
from app.algebra.scalar import ONE, Scalar, parse_scalar
from app.core.exceptions import BadSeriesParams, NoSolution, ScalarParseError

COORD_BITS = 8
COORD_MASK = (1 << COORD_BITS) - 1
TERM_BITS = 5
TERM_MASK = (1 << TERM_BITS) - 1
MAX_SHEARING = COORD_BITS


def _acc(out: Vec, key: int, c: Scalar) -> None:
    cur = out.get(key)
    if cur is None:
        out[key] = c
        return
    s = cur + c
    if s:
        out[key] = s
    else:
        del out[key]


@dataclass(frozen=True)
class Coordinates:
    """Coordinate context of O(m;N|n): per-coordinate shearing, parity and Z-degree.

    ``N`` holds one entry per coordinate; odd coordinates always carry 1.
    """
    N: Tuple[int, ...]
    parities: Optional[Tuple[int, ...]] = None
    degrees: Optional[Tuple[int, ...]] = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        size = len(self.N)
        parities = tuple(p & 1 for p in self.parities) if self.parities is not None else (0,) * size
        degrees = tuple(self.degrees) if self.degrees is not None else (1,) * size
        if len(parities) != size or len(degrees) != size:
            raise BadSeriesParams("One parity and one degree per coordinate are required")
        if min(degrees, default=1) < 1:
            raise BadSeriesParams(f"Coordinate degrees must be positive, got {degrees}")
        if size > TERM_MASK + 1:
            raise BadSeriesParams(f"At most {TERM_MASK + 1} coordinates are supported")
        N = tuple(1 if p else int(n) for n, p in zip(self.N, parities))
        if any(not 1 <= n <= MAX_SHEARING for n in N):
            raise BadSeriesParams(f"Shearing entries must lie in 1..{MAX_SHEARING}, got {N}")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "parities", parities)
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def standard(cls, N: Sequence[int], n_odd: int = 0, degrees: Optional[Sequence[int]] = None) -> "Coordinates":
        """x1..xm with shearing N followed by n odd ξ's."""
        return cls(tuple(N) + (1,) * n_odd, (0,) * len(N) + (1,) * n_odd, tuple(degrees) if degrees else None)

    @property
    def size(self) -> int:
        return len(self.N)

    @property
    def m(self) -> int:
        return self.size - sum(self.parities)

    def parity(self, c: int) -> int:
        return self.parities[c]

    def bound(self, c: int) -> int:
        """Largest exponent allowed for coordinate c."""
        return 1 if self.parities[c] else (1 << self.N[c]) - 1

    def _positions(self, parity: int) -> List[int]:
        return [c for c in range(self.size) if self.parities[c] == parity]

    def name(self, c: int) -> str:
        rank = self._positions(self.parities[c]).index(c) + 1
        return f"xi{rank}" if self.parities[c] else f"x{rank}"

    def coordinate(self, rank: int, parity: int = 0) -> int:
        """Global index of the rank-th (1-based) even or odd coordinate."""
        positions = self._positions(parity)
        if not 1 <= rank <= len(positions):
            raise ScalarParseError(f"No {'odd' if parity else 'even'} coordinate number {rank}")
        return positions[rank - 1]

    def with_shearing(self, N: Sequence[int]) -> "Coordinates":
        return Coordinates(tuple(N), self.parities, self.degrees)

    # --- monomials ---

    @staticmethod
    def unit(c: int) -> int:
        return 1 << (COORD_BITS * c)

    @staticmethod
    def exponent(mono: int, c: int) -> int:
        return (mono >> (COORD_BITS * c)) & COORD_MASK

    def exponents(self, mono: int) -> Tuple[int, ...]:
        return tuple(self.exponent(mono, c) for c in range(self.size))

    @staticmethod
    def pack(exponents: Sequence[int]) -> int:
        mono = 0
        for c, r in enumerate(exponents):
            mono |= r << (COORD_BITS * c)
        return mono

    def mono_degree(self, mono: int) -> int:
        return sum(self.exponent(mono, c) * self.degrees[c] for c in range(self.size))

    def mono_parity(self, mono: int) -> int:
        return sum(self.exponent(mono, c) for c in range(self.size) if self.parities[c]) & 1

    def in_range(self, mono: int) -> bool:
        return all(self.exponent(mono, c) <= self.bound(c) for c in range(self.size))

    @cached_property
    def monomials(self) -> List[int]:
        ranges = [range(self.bound(c) + 1) for c in range(self.size)]
        monos = [self.pack(r) for r in itertools.product(*ranges)]
        return sorted(monos, key=lambda u: (self.mono_degree(u), u))

    def monomials_up_to(self, d: int) -> List[int]:
        """Monomials of degree ≤ d, enumerated without materializing O(m;N|n)."""
        cached = self._cache.get(("upto", d))
        if cached is not None:
            return cached
        out: List[int] = []

        def walk(c: int, mono: int, deg: int) -> None:
            if c == self.size:
                out.append(mono)
                return
            step = self.degrees[c]
            r = 0
            while r <= self.bound(c) and deg + r * step <= d:
                walk(c + 1, mono | (r << (COORD_BITS * c)), deg + r * step)
                r += 1

        walk(0, 0, 0)
        out.sort(key=lambda u: (self.mono_degree(u), u))
        self._cache[("upto", d)] = out
        return out

    def monomials_of_degree(self, d: int) -> List[int]:
        return [u for u in self.monomials_up_to(d) if self.mono_degree(u) == d]

    @property
    def top_degree(self) -> int:
        return sum(self.bound(c) * self.degrees[c] for c in range(self.size))

    # --- field terms ---

    @staticmethod
    def term(mono: int, c: int) -> int:
        return (mono << TERM_BITS) | c

    @staticmethod
    def split(key: int) -> Tuple[int, int]:
        return key >> TERM_BITS, key & TERM_MASK

    def term_degree(self, key: int) -> int:
        mono, c = self.split(key)
        return self.mono_degree(mono) - self.degrees[c]

    def term_parity(self, key: int) -> int:
        mono, c = self.split(key)
        return (self.mono_parity(mono) + self.parity(c)) & 1

    def field_terms(self, degree: int, parity: Optional[int] = None) -> List[int]:
        """All basis fields u^(r)∂_c of the given degree (and parity), in key order."""
        keys = []
        for c in range(self.size):
            for mono in self.monomials_up_to(degree + self.degrees[c]):
                if self.mono_degree(mono) != degree + self.degrees[c]:
                    continue
                key = self.term(mono, c)
                if parity is None or self.term_parity(key) == parity:
                    keys.append(key)
        return sorted(keys)

    def field_degree(self, D: Vec) -> Optional[int]:
        degs = {self.term_degree(k) for k in D}
        return degs.pop() if len(degs) == 1 else None

    def field_parity(self, D: Vec) -> Optional[int]:
        ps = {self.term_parity(k) for k in D}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def max_exponents(self, fields: Sequence[Vec]) -> Tuple[int, ...]:
        top = [0] * self.size
        for D in fields:
            for key in D:
                mono, _ = self.split(key)
                for c in range(self.size):
                    top[c] = max(top[c], self.exponent(mono, c))
        return tuple(top)


# --- Functions ---

def mono_mul(a: int, b: int) -> Optional[int]:
    return None if a & b else a | b


def dp_mul(f: Vec, g: Vec) -> Vec:
    out: Vec = {}
    for a, ca in f.items():
        for b, cb in g.items():
            if not a & b:
                _acc(out, a | b, ca * cb)
    return out


def partial(f: Vec, c: int) -> Vec:
    unit = Coordinates.unit(c)
    shift = COORD_BITS * c
    return {mono - unit: v for mono, v in f.items() if (mono >> shift) & COORD_MASK}


# --- Vector fields ---

def field_of(coefficients: Dict[int, Vec]) -> Vec:
    """Σ f_c ∂_c from {c: f_c}."""
    out: Vec = {}
    for c, f in coefficients.items():
        for mono, v in f.items():
            _acc(out, Coordinates.term(mono, c), v)
    return out


def coefficients(D: Vec) -> Dict[int, Vec]:
    out: Dict[int, Vec] = {}
    for key, v in D.items():
        mono, c = Coordinates.split(key)
        out.setdefault(c, {})[mono] = v
    return out


def dp_apply(D: Vec, f: Vec) -> Vec:
    """D(f) for a field D and a function f."""
    out: Vec = {}
    for key, cd in D.items():
        a, c = Coordinates.split(key)
        unit = Coordinates.unit(c)
        shift = COORD_BITS * c
        for b, cf in f.items():
            if (b >> shift) & COORD_MASK:
                lowered = b - unit
                if not a & lowered:
                    _acc(out, a | lowered, cd * cf)
    return out


def _act(D: Vec, E: Vec, out: Vec) -> None:
    """out += Σ_k D(E_k) ∂_k."""
    for key_d, cd in D.items():
        a, i = Coordinates.split(key_d)
        unit = Coordinates.unit(i)
        shift = COORD_BITS * i
        for key_e, ce in E.items():
            b, j = Coordinates.split(key_e)
            if (b >> shift) & COORD_MASK:
                lowered = b - unit
                if not a & lowered:
                    _acc(out, ((a | lowered) << TERM_BITS) | j, cd * ce)


def field_bracket(D: Vec, E: Vec) -> Vec:
    out: Vec = {}
    _act(D, E, out)
    _act(E, D, out)
    return out


def field_square(D: Vec) -> Vec:
    """D² = Σ D(f_c) ∂_c, meaningful for odd D."""
    out: Vec = {}
    _act(D, D, out)
    return out


def divergence(D: Vec) -> Vec:
    out: Vec = {}
    for key, v in D.items():
        mono, c = Coordinates.split(key)
        if Coordinates.exponent(mono, c):
            _acc(out, mono - Coordinates.unit(c), v)
    return out


# --- Algebras spanned by fields ---

def field_algebra(ctx: Coordinates, fields: Sequence[Vec], labels: Optional[Sequence[str]] = None,
                  name: Optional[str] = None, meta: Optional[dict] = None) -> LieSuperAlgebra:
    """The Lie superalgebra on a basis of homogeneous fields spanning a subalgebra of vect.

    Brackets are computed lazily and expressed in the basis one (degree, parity)
    block at a time; a bracket leaving the span raises ``NoSolution``.
    """
    fields = [dict(D) for D in fields]
    degrees = [ctx.field_degree(D) for D in fields]
    parity = [ctx.field_parity(D) for D in fields]
    if any(d is None for d in degrees) or any(p is None for p in parity):
        raise BadSeriesParams("Basis fields must be nonzero and homogeneous")
    blocks: Dict[Tuple[int, int], Echelon] = {}
    for i, D in enumerate(fields):
        ech = blocks.setdefault((degrees[i], parity[i]), Echelon(track=True))
        if not ech.add(D, tag={i: ONE})[0]:
            raise BadSeriesParams(f"Basis field {i} is linearly dependent on the previous ones")

    def coordinates(vec: Vec) -> Vec:
        if not vec:
            return {}
        key = next(iter(vec))
        ech = blocks.get((ctx.term_degree(key), ctx.term_parity(key)))
        if ech is None:
            raise NoSolution(f"Field {format_field(ctx, vec)} lies outside the span")
        rem, combo = ech.reduce(vec, {})
        if rem:
            raise NoSolution(f"Field {format_field(ctx, vec)} lies outside the span")
        return combo

    data = dict(meta or {})
    data.update({"name": name, "context": ctx, "fields": fields})
    return LieSuperAlgebra(
        list(labels) if labels is not None else [format_field(ctx, D) for D in fields],
        parity,
        degrees=degrees,
        bracket_provider=lambda i, j: coordinates(field_bracket(fields[i], fields[j])),
        square_provider=lambda i: coordinates(field_square(fields[i])) if parity[i] else {},
        meta=data,
    )


def span_fields(ctx: Coordinates, fields: Sequence[Vec]) -> List[Vec]:
    """Homogeneous fields made independent per (degree, parity) block, in input order."""
    blocks: Dict[Tuple[int, int], Echelon] = {}
    out = []
    for D in fields:
        if not D:
            continue
        ech = blocks.setdefault((ctx.field_degree(D), ctx.field_parity(D)), Echelon())
        if ech.add(D)[0]:
            out.append(D)
    return out


def random_function(ctx: Coordinates, rng: random.Random, terms: int = 4) -> Vec:
    out: Vec = {}
    for _ in range(terms):
        _acc(out, rng.choice(ctx.monomials), ONE)
    return out


def random_field(ctx: Coordinates, rng: random.Random, terms: int = 4) -> Vec:
    out: Vec = {}
    for _ in range(terms):
        _acc(out, ctx.term(rng.choice(ctx.monomials), rng.randrange(ctx.size)), ONE)
    return out


# --- Text syntax ---

_EVEN = re.compile(r"^x(\d+)(?:\^\((\d+)\))?$")
_ODD = re.compile(r"^xi(\d+)$")
_DERIV = re.compile(r"^d(\d+)$")
_DERIV_ODD = re.compile(r"^dxi(\d+)$")


def _split_top(text: str, sep: str) -> Iterator[str]:
    depth, start = 0, 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            yield text[start:pos]
            start = pos + 1
    yield text[start:]


def _parse_term(ctx: Coordinates, text: str, allow_derivative: bool) -> Tuple[Scalar, Optional[int], Optional[int]]:
    coeff, mono, deriv = ONE, 0, None
    vanishes = False
    for raw in _split_top(text, "*"):
        token = raw.strip()
        if not token:
            raise ScalarParseError(f"Empty factor in '{text}'")
        if m := _EVEN.match(token):
            c, r = ctx.coordinate(int(m.group(1)), 0), int(m.group(2) or 1)
            if r > ctx.bound(c):
                vanishes = True
                continue
            factor = r << (COORD_BITS * c)
        elif m := _ODD.match(token):
            factor = Coordinates.unit(ctx.coordinate(int(m.group(1)), 1))
        elif (m := _DERIV.match(token)) or (m := _DERIV_ODD.match(token)):
            if not allow_derivative or deriv is not None:
                raise ScalarParseError(f"Unexpected derivative {token} in '{text}'")
            if token.startswith("dxi"):
                deriv = ctx.coordinate(int(m.group(1)), 1)
            else:
                deriv = int(m.group(1)) - 1
                if not 0 <= deriv < ctx.size:
                    raise ScalarParseError(f"No coordinate for {token} in '{text}'")
            continue
        else:
            coeff = coeff * parse_scalar(token)
            continue
        vanishes = vanishes or bool(mono & factor)
        mono |= factor
    return coeff, None if vanishes else mono, deriv


def parse_function(ctx: Coordinates, text: str) -> Vec:
    """'x1^(3)*x2 + (a+1)*xi1' → function; products follow divided-power rules."""
    out: Vec = {}
    text = text.strip()
    if text in ("", "0"):
        return out
    for piece in _split_top(text, "+"):
        coeff, mono, _ = _parse_term(ctx, piece, allow_derivative=False)
        if mono is not None and coeff:
            _acc(out, mono, coeff)
    return out


def parse_field(ctx: Coordinates, text: str) -> Vec:
    """'x4*x5*d1 + x2*d3' → field; dK differentiates in the K-th coordinate overall."""
    out: Vec = {}
    text = text.strip()
    if text in ("", "0"):
        return out
    for piece in _split_top(text, "+"):
        coeff, mono, deriv = _parse_term(ctx, piece, allow_derivative=True)
        if deriv is None:
            raise ScalarParseError(f"Term '{piece.strip()}' has no derivative")
        if mono is not None and coeff:
            _acc(out, Coordinates.term(mono, deriv), coeff)
    return out


def format_monomial(ctx: Coordinates, mono: int) -> str:
    factors = []
    for c in range(ctx.size):
        r = ctx.exponent(mono, c)
        if r == 1:
            factors.append(ctx.name(c))
        elif r > 1:
            factors.append(f"{ctx.name(c)}^({r})")
    return "*".join(factors)


def _coeff_prefix(v: Scalar) -> str:
    if v.is_one():
        return ""
    text = str(v)
    return (f"({text})" if "+" in text or "/" in text else text) + "*"


def format_function(ctx: Coordinates, f: Vec) -> str:
    if not f:
        return "0"
    parts = []
    for mono in sorted(f, key=lambda u: (ctx.mono_degree(u), u)):
        body = format_monomial(ctx, mono)
        parts.append(_coeff_prefix(f[mono]) + body if body else str(f[mono]))
    return " + ".join(parts)


def format_field(ctx: Coordinates, D: Vec) -> str:
    if not D:
        return "0"
    parts = []
    for key in sorted(D):
        mono, c = ctx.split(key)
        body = format_monomial(ctx, mono)
        parts.append(_coeff_prefix(D[key]) + (f"{body}*" if body else "") + f"d{c + 1}")
    return " + ".join(parts)

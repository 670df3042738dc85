"""Sparse exact linear algebra over GF(2)(a).

Vectors are ``dict[int, Scalar]`` with no stored zeros. Elimination is
incremental: :class:`Echelon` keeps rows whose pivot is their smallest key
and reduces new vectors completely, so remainders are unique and every
downstream basis is reproducible. :class:`BitEchelon` is the same structure
for GF(2) vectors packed into Python ints.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.algebra.scalar import ONE, ZERO, Scalar, parse_scalar
from app.core.exceptions import InvalidParams, NoSolution

Vec = Dict[int, Scalar]


# --- Vector helpers ---

def axpy(target: Vec, coeff: Scalar, source: Vec) -> None:
    """In place: target += coeff * source."""
    if coeff.num == 0:
        return
    if coeff.den == 1 and coeff.num == 1:
        for k, v in source.items():
            cur = target.get(k)
            if cur is None:
                target[k] = v
            else:
                s = cur + v
                if s.num:
                    target[k] = s
                else:
                    del target[k]
        return
    for k, v in source.items():
        term = coeff * v
        cur = target.get(k)
        if cur is None:
            target[k] = term
        else:
            s = cur + term
            if s.num:
                target[k] = s
            else:
                del target[k]


def scale(vec: Vec, coeff: Scalar) -> Vec:
    if coeff.num == 0:
        return {}
    if coeff.den == 1 and coeff.num == 1:
        return dict(vec)
    return {k: coeff * v for k, v in vec.items()}


def vec_sum(*vectors: Vec) -> Vec:
    out: Vec = {}
    for v in vectors:
        axpy(out, ONE, v)
    return out


def is_binary(vec: Vec) -> bool:
    return all(v.den == 1 and v.num == 1 for v in vec.values())


def to_bits(vec: Vec) -> int:
    bits = 0
    for k in vec:
        bits |= 1 << k
    return bits


def from_bits(bits: int) -> Vec:
    out: Vec = {}
    while bits:
        low = bits & -bits
        out[low.bit_length() - 1] = ONE
        bits ^= low
    return out


# --- Incremental elimination ---

class Echelon:
    """Semi-echelon basis with full reduction and optional combination tracking."""

    def __init__(self, track: bool = False):
        self.rows: Dict[int, Vec] = {}
        self.combos: Dict[int, Vec] = {}
        self.track = track
        self.inserted = 0

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, vec: Vec, combo: Optional[Vec] = None) -> Tuple[Vec, Optional[Vec]]:
        """Return the unique remainder of ``vec`` modulo the span (and its combination)."""
        v = dict(vec)
        c = dict(combo) if combo is not None else None
        if not self.rows or not v:
            return v, c
        heap = [k for k in v if k in self.rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            coeff = v.get(k)
            if coeff is None:
                continue
            seen.add(k)
            row = self.rows[k]
            axpy(v, coeff, row)
            if c is not None:
                axpy(c, coeff, self.combos[k])
            for key in row:
                if key in self.rows and key not in seen and key in v:
                    heapq.heappush(heap, key)
        return v, c

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: Vec, tag: Optional[Vec] = None) -> Tuple[bool, Vec, Optional[Vec]]:
        """Insert ``vec``; returns (independent, remainder, combination).

        The combination expresses the remainder through inserted vectors; for a
        dependent vector it is a relation (combination of inserted vectors
        equal to zero) when tracking is on.
        """
        index = self.inserted
        self.inserted += 1
        start = None
        if self.track:
            start = dict(tag) if tag is not None else {index: ONE}
        rem, combo = self.reduce(vec, start)
        if not rem:
            return False, rem, combo
        pivot = min(rem)
        inv = rem[pivot].inv()
        row = scale(rem, inv)
        self.rows[pivot] = row
        if self.track:
            self.combos[pivot] = scale(combo, inv)
        return True, row, combo

    def rref_rows(self) -> List[Vec]:
        out = []
        for p in self.pivots:
            tail = {k: v for k, v in self.rows[p].items() if k != p}
            reduced, _ = self.reduce(tail)
            reduced[p] = ONE
            out.append(reduced)
        return out


class BitEchelon:
    """GF(2) semi-echelon basis over int bitsets (pivot = lowest set bit)."""

    def __init__(self, track: bool = False):
        self.rows: Dict[int, int] = {}
        self.combos: Dict[int, int] = {}
        self.mask = 0
        self.track = track
        self.inserted = 0

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, bits: int, combo: int = 0) -> Tuple[int, int]:
        hit = bits & self.mask
        while hit:
            low = hit & -hit
            p = low.bit_length() - 1
            bits ^= self.rows[p]
            if self.track:
                combo ^= self.combos[p]
            hit = bits & self.mask
        return bits, combo

    def add(self, bits: int, tag: Optional[int] = None) -> Tuple[bool, int, int]:
        index = self.inserted
        self.inserted += 1
        start = (tag if tag is not None else 1 << index) if self.track else 0
        rem, combo = self.reduce(bits, start)
        if not rem:
            return False, rem, combo
        p = (rem & -rem).bit_length() - 1
        self.rows[p] = rem
        self.combos[p] = combo
        self.mask |= 1 << p
        return True, rem, combo


def kernel_of_images(images: Sequence[Vec]) -> List[Vec]:
    """Kernel of the map e_i -> images[i] as vectors over the input indices.

    One basis vector per dependent column, with coefficient 1 at that column;
    this is the reduced-row-echelon nullspace basis.
    """
    if all(is_binary(img) for img in images):
        return [from_bits(b) for b in bit_kernel([to_bits(img) for img in images])]
    ech = Echelon(track=True)
    kernel = []
    for img in images:
        independent, _, combo = ech.add(img)
        if not independent:
            kernel.append(combo)
    return kernel


def bit_kernel(images: Sequence[int]) -> List[int]:
    ech = BitEchelon(track=True)
    kernel = []
    for img in images:
        independent, _, combo = ech.add(img)
        if not independent:
            kernel.append(combo)
    return kernel


def span_basis(vectors: Iterable[Vec]) -> List[Vec]:
    """Maximal independent subfamily, in input order."""
    ech = Echelon()
    return [v for v in vectors if ech.add(v)[0]]


def rank_of(vectors: Iterable[Vec]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def quotient_basis(space: Sequence[Vec], sub: Sequence[Vec]) -> List[Vec]:
    """Vectors of ``space`` completing a basis of ``sub`` to one of span(space + sub)."""
    ech = Echelon()
    for v in sub:
        ech.add(v)
    return [v for v in space if ech.add(v)[0]]


def intersect(first: Sequence[Vec], second: Sequence[Vec]) -> List[Vec]:
    """Basis of span(first) ∩ span(second)."""
    first = span_basis(first)
    second = span_basis(second)
    relations = kernel_of_images(list(first) + list(second))
    out = []
    for rel in relations:
        vec: Vec = {}
        for idx, c in rel.items():
            if idx < len(first):
                axpy(vec, c, first[idx])
        if vec:
            out.append(vec)
    return span_basis(out)


def solve_in_span(vectors: Sequence[Vec], target: Vec) -> Vec:
    """Coefficients c with Σ c_i vectors[i] = target.

    Raises:
        NoSolution: If ``target`` is not in the span.
    """
    ech = Echelon(track=True)
    for v in vectors:
        ech.add(v)
    rem, combo = ech.reduce(target, {})
    if rem:
        raise NoSolution("Target vector is not in the span")
    return {k: v for k, v in combo.items()}


# --- Matrices ---

@dataclass(frozen=True)
class ExactMatrix:
    """Sparse matrix over GF(2)(a); no stored zero entries."""
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], Scalar] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[object]]) -> "ExactMatrix":
        entries = {}
        for i, row in enumerate(data):
            for j, value in enumerate(row):
                s = value if isinstance(value, Scalar) else parse_scalar(value)
                if s:
                    entries[(i, j)] = s
        return cls(len(data), len(data[0]) if data else 0, entries)

    @classmethod
    def from_row_vectors(cls, vectors: Sequence[Vec], cols: int) -> "ExactMatrix":
        entries = {(i, j): v for i, vec in enumerate(vectors) for j, v in vec.items()}
        return cls(len(vectors), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    def get(self, i: int, j: int) -> Scalar:
        return self.entries.get((i, j), ZERO)

    def row(self, i: int) -> Vec:
        return {j: v for (r, j), v in self.entries.items() if r == i}

    def column(self, j: int) -> Vec:
        return {i: v for (i, c), v in self.entries.items() if c == j}

    def row_vectors(self) -> List[Vec]:
        out: List[Vec] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_vectors(self) -> List[Vec]:
        out: List[Vec] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        cols = other.column_vectors()
        rows = self.row_vectors()
        entries = {}
        for i, r in enumerate(rows):
            for j, c in enumerate(cols):
                acc = ZERO
                for k, v in r.items():
                    w = c.get(k)
                    if w is not None:
                        acc = acc + v * w
                if acc:
                    entries[(i, j)] = acc
        return ExactMatrix(self.rows, other.cols, entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_lists(self) -> List[List[str]]:
        return [[str(self.get(i, j)) for j in range(self.cols)] for i in range(self.rows)]


def rref(m: ExactMatrix) -> Tuple[ExactMatrix, List[int]]:
    """Reduced row echelon form and pivot columns (left to right)."""
    ech = Echelon()
    for v in m.row_vectors():
        ech.add(v)
    rows = ech.rref_rows()
    return ExactMatrix.from_row_vectors(rows, m.cols), ech.pivots


def rank(m: ExactMatrix) -> int:
    return rank_of(m.row_vectors())


def kernel(m: ExactMatrix) -> List[Vec]:
    """Right nullspace basis (vectors indexed by column)."""
    return kernel_of_images(m.column_vectors())


def image(m: ExactMatrix) -> List[Vec]:
    """Pivot columns of ``m`` as a basis of the column space."""
    return span_basis(m.column_vectors())


def solve(m: ExactMatrix, rhs: Vec) -> Vec:
    """A particular solution x of m·x = rhs (leftmost-pivot choice)."""
    return solve_in_span(m.column_vectors(), rhs)


def linalg(op: str, m: ExactMatrix, rhs: Optional[ExactMatrix] = None):
    """Single entry point mirroring the ``rref|kernel|image|solve|quotient_basis|intersect`` surface."""
    if op == "rref":
        return rref(m)[0]
    if op == "kernel":
        return kernel(m)
    if op == "image":
        return image(m)
    if op == "solve":
        return [solve(m, col) for col in rhs.column_vectors()]
    if op == "quotient_basis":
        return quotient_basis(m.row_vectors(), rhs.row_vectors())
    if op == "intersect":
        return intersect(m.row_vectors(), rhs.row_vectors())
    raise InvalidParams(f"Unknown linear algebra operation '{op}'")

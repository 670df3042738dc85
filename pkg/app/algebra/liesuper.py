"""Finite-dimensional Lie superalgebras in characteristic 2.

An algebra is a basis with parities, a symmetric bracket stored on basis
pairs (i < j) and a squaring map on odd basis elements. The square of an odd
vector Σ c_i b_i is Σ c_i² b_i² + Σ_{i<j} c_i c_j [b_i, b_j], so the bracket
of odd elements is the polarization of the squaring.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from app.algebra.linalg import Echelon, Vec, axpy, kernel_of_images, span_basis
from app.algebra.scalar import ONE, ZERO, Scalar, parse_scalar
from app.core.config import settings
from app.core.exceptions import InvalidSeed, NoSolution, NotAnIdeal
from app.core.log_config import logger

Weight = Tuple[int, ...]
BracketProvider = Callable[[int, int], Vec]


class LieSuperAlgebra:
    """Basis, parities, sparse structure constants and squaring.

    ``bracket_provider``/``square_provider`` make the table lazy: entries are
    computed on first use and cached (used for vector-field algebras).
    """

    def __init__(
        self,
        labels: Sequence[str],
        parity: Sequence[int],
        brackets: Optional[Dict[Tuple[int, int], Vec]] = None,
        squares: Optional[Dict[int, Vec]] = None,
        *,
        weights: Optional[Sequence[Weight]] = None,
        degrees: Optional[Sequence[int]] = None,
        bracket_provider: Optional[BracketProvider] = None,
        square_provider: Optional[Callable[[int], Vec]] = None,
        meta: Optional[dict] = None,
    ):
        self.labels = list(labels)
        self.parity = [p & 1 for p in parity]
        self._brackets: Dict[Tuple[int, int], Vec] = {}
        for (i, j), v in (brackets or {}).items():
            if i == j or not v:
                continue
            self._brackets[(min(i, j), max(i, j))] = dict(v)
        self._squares: Dict[int, Vec] = {i: dict(v) for i, v in (squares or {}).items() if v}
        self.weights = [tuple(w) for w in weights] if weights is not None else None
        self.degrees = list(degrees) if degrees is not None else None
        self._provider = bracket_provider
        self._square_provider = square_provider
        self._computed: set = set()
        self.meta = dict(meta or {})

    # --- sizes ---

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def sdim(self) -> Tuple[int, int]:
        odd = sum(self.parity)
        return self.dim - odd, odd

    def sdim_str(self) -> str:
        even, odd = self.sdim
        return f"{even}|{odd}" if odd else f"{even}"

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def key_of(self, i: int) -> tuple:
        """Homogeneity class of basis element i (parity, weight, degree)."""
        return (
            self.parity[i],
            self.weights[i] if self.weights is not None else None,
            self.degrees[i] if self.degrees is not None else None,
        )

    # --- structure constants ---

    def br(self, i: int, j: int) -> Vec:
        if i == j:
            return {}
        key = (i, j) if i < j else (j, i)
        if self._provider is not None and key not in self._computed:
            self._computed.add(key)
            value = self._provider(*key)
            if value:
                self._brackets[key] = value
        return self._brackets.get(key, {})

    def raw_sq(self, i: int) -> Vec:
        """The stored or provided square of basis element i, whatever its parity."""
        if self._square_provider is not None and ("sq", i) not in self._computed:
            self._computed.add(("sq", i))
            value = self._square_provider(i)
            if value:
                self._squares[i] = value
        return self._squares.get(i, {})

    def sq(self, i: int) -> Vec:
        return self.raw_sq(i) if self.parity[i] else {}

    def bracket(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                if i == j:
                    continue
                r = self.br(i, j)
                if r:
                    axpy(out, a * b, r)
        return out

    def square(self, u: Vec) -> Vec:
        """x² for an odd vector x (even components are ignored)."""
        items = sorted((i, c) for i, c in u.items() if self.parity[i])
        out: Vec = {}
        for pos, (i, a) in enumerate(items):
            s = self.sq(i)
            if s:
                axpy(out, a * a, s)
            for j, b in items[pos + 1:]:
                r = self.br(i, j)
                if r:
                    axpy(out, a * b, r)
        return out

    def parity_of(self, u: Vec) -> Optional[int]:
        ps = {self.parity[i] for i in u}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def structure_table(self) -> Dict[Tuple[int, int], Vec]:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                self.br(i, j)
        return dict(self._brackets)

    def squares_table(self) -> Dict[int, Vec]:
        for i in range(self.dim):
            self.sq(i)
        return dict(self._squares)

    def basis_vector(self, i: int) -> Vec:
        return {i: ONE}

    def indices_of_degree(self, d: int) -> List[int]:
        return [i for i, deg in enumerate(self.degrees or []) if deg == d]

    def dims_by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for deg in self.degrees or []:
            out[deg] = out.get(deg, 0) + 1
        return dict(sorted(out.items()))

    def with_degrees(self, degrees: Sequence[int]) -> "LieSuperAlgebra":
        g = LieSuperAlgebra(
            self.labels, self.parity, self.structure_table(), self.squares_table(),
            weights=self.weights, degrees=degrees, meta=self.meta,
        )
        return g

    def __repr__(self) -> str:
        return f"LieSuperAlgebra(sdim={self.sdim_str()}, name={self.meta.get('name')!r})"


# --- Homogeneous spans ---

class HomogeneousSpan:
    """Span of homogeneous vectors kept as one echelon per homogeneity class."""

    def __init__(self, g: LieSuperAlgebra):
        self.g = g
        self.blocks: Dict[tuple, Echelon] = {}
        self.basis: List[Vec] = []

    def key(self, vec: Vec) -> tuple:
        return self.g.key_of(min(vec))

    def add(self, vec: Vec) -> bool:
        if not vec:
            return False
        ech = self.blocks.setdefault(self.key(vec), Echelon())
        if ech.add(vec)[0]:
            self.basis.append(vec)
            return True
        return False

    def contains(self, vec: Vec) -> bool:
        if not vec:
            return True
        by_key: Dict[tuple, Vec] = {}
        for i, c in vec.items():
            by_key.setdefault(self.g.key_of(i), {})[i] = c
        for key, part in by_key.items():
            ech = self.blocks.get(key)
            if ech is None or not ech.contains(part):
                return False
        return True

    def __len__(self) -> int:
        return len(self.basis)


def homogeneous_parts(g: LieSuperAlgebra, vec: Vec) -> List[Vec]:
    parts: Dict[tuple, Vec] = {}
    for i, c in vec.items():
        parts.setdefault(g.key_of(i), {})[i] = c
    return [parts[k] for k in sorted(parts, key=repr)]


# --- Verification ---

def verify(g: LieSuperAlgebra, max_violations: int = 20) -> List[str]:
    """Return the violated identities; an empty list means the table is valid."""
    report: List[str] = []
    n = g.dim
    lab = g.labels

    def note(msg: str) -> bool:
        report.append(msg)
        return len(report) >= max_violations

    for i in range(n):
        for j in range(i + 1, n):
            target = (g.parity[i] + g.parity[j]) & 1
            for k in g.br(i, j):
                if g.parity[k] != target:
                    if note(f"parity([{lab[i]}, {lab[j]}]) contains {lab[k]}"):
                        return report
                    break
    for i in range(n):
        if not g.parity[i] and g.raw_sq(i):
            if note(f"polarization: even element {lab[i]} carries a square"):
                return report
            continue
        s = g.sq(i)
        if any(g.parity[k] for k in s):
            if note(f"polarization: square of {lab[i]} is not even"):
                return report
        if g.degrees is not None:
            if any(g.degrees[k] != 2 * g.degrees[i] for k in s):
                if note(f"polarization: deg({lab[i]}²) != 2 deg({lab[i]})"):
                    return report
    for i in range(n):
        for j in range(i + 1, n):
            bij = g.br(i, j)
            for k in range(j + 1, n):
                total: Vec = {}
                axpy(total, ONE, g.bracket({i: ONE}, g.br(j, k)))
                axpy(total, ONE, g.bracket({j: ONE}, g.br(k, i)))
                axpy(total, ONE, g.bracket({k: ONE}, bij))
                if total and note(f"jacobi({lab[i]}, {lab[j]}, {lab[k]})"):
                    return report
    for i in range(n):
        if not g.parity[i]:
            continue
        s = g.sq(i)
        for j in range(n):
            lhs = g.bracket(s, {j: ONE})
            rhs = g.bracket({i: ONE}, g.br(i, j))
            axpy(lhs, ONE, rhs)
            if lhs and note(f"square-jacobi({lab[i]}², {lab[j]})"):
                return report
    return report


# --- Subalgebras and quotients ---

def coordinates_solver(basis: Sequence[Vec]) -> Callable[[Vec], Vec]:
    """Return a function expressing vectors of span(basis) in that basis."""
    ech = Echelon(track=True)
    for v in basis:
        independent, _, _ = ech.add(v)
        if not independent:
            raise ValueError("Basis vectors are linearly dependent")

    def solve(vec: Vec) -> Vec:
        rem, combo = ech.reduce(vec, {})
        if rem:
            raise NoSolution("Vector lies outside the subalgebra")
        return combo

    return solve


def _common(values: Sequence, vec: Vec):
    found = {values[i] for i in vec}
    return found.pop() if len(found) == 1 else None


def subalgebra(g: LieSuperAlgebra, vectors: Sequence[Vec], labels: Optional[Sequence[str]] = None,
               name: Optional[str] = None) -> LieSuperAlgebra:
    """Subalgebra spanned by homogeneous ``vectors`` (assumed closed).

    The inclusion is stored in ``meta['embedding']`` as vectors in g.
    """
    basis = span_basis(vectors) if labels is None else list(vectors)
    coords = coordinates_solver(basis)
    brackets, squares = {}, {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            r = g.bracket(basis[a], basis[b])
            if r:
                brackets[(a, b)] = coords(r)
    parity = [g.parity_of(v) or 0 for v in basis]
    for a, v in enumerate(basis):
        if parity[a]:
            s = g.square(v)
            if s:
                squares[a] = coords(s)
    weights = [_common(g.weights, v) for v in basis] if g.weights is not None else None
    if weights is not None and any(w is None for w in weights):
        weights = None
    degrees = [_common(g.degrees, v) for v in basis] if g.degrees is not None else None
    if degrees is not None and any(d is None for d in degrees):
        degrees = None
    if labels is None:
        labels = [_vector_label(g, v) for v in basis]
    meta = {"name": name or g.meta.get("name"), "embedding": basis, "parent": g}
    return LieSuperAlgebra(labels, parity, brackets, squares, weights=weights, degrees=degrees, meta=meta)


def _vector_label(g: LieSuperAlgebra, vec: Vec) -> str:
    if len(vec) == 1:
        (i, c), = vec.items()
        return g.labels[i] if c.is_one() else f"({c}){g.labels[i]}"
    return "+".join(g.labels[i] if c.is_one() else f"({c}){g.labels[i]}" for i, c in sorted(vec.items()))


def quotient(g: LieSuperAlgebra, ideal: Sequence[Vec], name: Optional[str] = None) -> LieSuperAlgebra:
    """g / ideal with the quotient basis given by the non-pivot basis elements.

    Raises:
        NotAnIdeal: If the span is not stable under brackets and squaring.
    """
    ech = Echelon()
    for v in ideal:
        ech.add(v)
    ideal_basis = [dict(r) for r in ech.rows.values()]
    for u in ideal_basis:
        for j in range(g.dim):
            if not ech.contains(g.bracket(u, {j: ONE})):
                raise NotAnIdeal(f"[{_vector_label(g, u)}, {g.labels[j]}] leaves the subspace")
    for u in span_basis(ideal):
        if g.parity_of(u) == 1 and not ech.contains(g.square(u)):
            raise NotAnIdeal(f"Square of {_vector_label(g, u)} leaves the subspace")
    kept = [i for i in range(g.dim) if i not in ech.rows]
    position = {i: pos for pos, i in enumerate(kept)}

    def project(vec: Vec) -> Vec:
        rem, _ = ech.reduce(vec)
        return {position[k]: c for k, c in rem.items()}

    brackets, squares = {}, {}
    for a, i in enumerate(kept):
        for b in range(a + 1, len(kept)):
            r = g.br(i, kept[b])
            if r:
                p = project(r)
                if p:
                    brackets[(a, b)] = p
        if g.parity[i]:
            s = project(g.sq(i))
            if s:
                squares[a] = s
    meta = {"name": name or g.meta.get("name"), "quotient_of": g, "kept": kept, "project": project}
    return LieSuperAlgebra(
        [g.labels[i] for i in kept], [g.parity[i] for i in kept], brackets, squares,
        weights=[g.weights[i] for i in kept] if g.weights is not None else None,
        degrees=[g.degrees[i] for i in kept] if g.degrees is not None else None,
        meta=meta,
    )


def derived_span(g: LieSuperAlgebra, vectors: Sequence[Vec]) -> List[Vec]:
    """[S, S] + span{x² : x odd in S} as homogeneous vectors of g."""
    span = HomogeneousSpan(g)
    basis = list(vectors)
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            span.add(g.bracket(basis[a], basis[b]))
        if g.parity_of(basis[a]) == 1:
            span.add(g.square(basis[a]))
    return span.basis


def derived(g: LieSuperAlgebra, i: int = 1) -> LieSuperAlgebra:
    """g^{(i)}, with the inclusion into g in ``meta['embedding']``."""
    if i < 1:
        raise ValueError("derived algebra index must be at least 1")
    current = [{k: ONE} for k in range(g.dim)]
    for _ in range(i):
        current = derived_span(g, current)
    logger.debug(f"derived^{i} of {g.meta.get('name')}: dim {len(current)} of {g.dim}")
    return subalgebra(g, current)


def center(g: LieSuperAlgebra) -> List[Vec]:
    """Homogeneous basis of {x : [x, g] = 0}."""
    blocks: Dict[tuple, List[int]] = {}
    for i in range(g.dim):
        blocks.setdefault(g.key_of(i), []).append(i)
    out: List[Vec] = []
    n = g.dim
    for key in sorted(blocks, key=repr):
        idx = blocks[key]
        images = []
        for i in idx:
            img: Vec = {}
            for j in range(n):
                for k, c in g.br(i, j).items():
                    img[j * n + k] = c
            images.append(img)
        for rel in kernel_of_images(images):
            out.append({idx[pos]: c for pos, c in rel.items()})
    return out


def center_and_quotient(g: LieSuperAlgebra) -> Tuple[List[Vec], LieSuperAlgebra]:
    c = center(g)
    if not c:
        return c, g
    return c, quotient(g, c)


def direct_sum(*algebras: LieSuperAlgebra, name: Optional[str] = None) -> LieSuperAlgebra:
    labels, parity, brackets, squares = [], [], {}, {}
    offset = 0
    for summand, h in enumerate(algebras, start=1):
        labels += [f"{lab}#{summand}" for lab in h.labels]
        parity += h.parity
        for (i, j), v in h.structure_table().items():
            brackets[(i + offset, j + offset)] = {k + offset: c for k, c in v.items()}
        for i, v in h.squares_table().items():
            squares[i + offset] = {k + offset: c for k, c in v.items()}
        offset += h.dim
    return LieSuperAlgebra(labels, parity, brackets, squares, meta={"name": name or "direct_sum"})


def desuperize(g: LieSuperAlgebra) -> LieSuperAlgebra:
    """Forget parity; the squaring is kept only as inert metadata."""
    meta = dict(g.meta)
    meta["squares_inert"] = g.squares_table()
    return LieSuperAlgebra(g.labels, [0] * g.dim, g.structure_table(), None,
                           weights=g.weights, degrees=g.degrees, meta=meta)


def matrix_algebra(matrices: Sequence[Dict[Tuple[int, int], Scalar]], parities: Sequence[int],
                   labels: Sequence[str], size: int, name: Optional[str] = None,
                   degrees: Optional[Sequence[int]] = None) -> LieSuperAlgebra:
    """Algebra spanned by square matrices with [X,Y] = XY + YX and X² for odd X."""
    def flat(m: Dict[Tuple[int, int], Scalar]) -> Vec:
        return {i * size + j: c for (i, j), c in m.items() if c}

    coords = coordinates_solver([flat(m) for m in matrices])
    brackets, squares = {}, {}
    for a in range(len(matrices)):
        for b in range(a + 1, len(matrices)):
            r = mat_add(mat_mul(matrices[a], matrices[b]), mat_mul(matrices[b], matrices[a]))
            if r:
                brackets[(a, b)] = coords(flat(r))
        if parities[a]:
            s = mat_mul(matrices[a], matrices[a])
            if s:
                squares[a] = coords(flat(s))
    return LieSuperAlgebra(labels, parities, brackets, squares, degrees=degrees,
                           meta={"name": name, "matrices": list(matrices), "matrix_size": size})


def mat_mul(x: Dict[Tuple[int, int], Scalar], y: Dict[Tuple[int, int], Scalar]) -> Dict[Tuple[int, int], Scalar]:
    rows: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (k, j), c in y.items():
        rows.setdefault(k, []).append((j, c))
    out: Dict[Tuple[int, int], Scalar] = {}
    for (i, k), a in x.items():
        for j, b in rows.get(k, ()):
            s = out.get((i, j), ZERO) + a * b
            if s:
                out[(i, j)] = s
            else:
                out.pop((i, j), None)
    return out


def mat_add(x: Dict[Tuple[int, int], Scalar], y: Dict[Tuple[int, int], Scalar]) -> Dict[Tuple[int, int], Scalar]:
    out = dict(x)
    for key, c in y.items():
        s = out.get(key, ZERO) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


# --- Derivations ---

@dataclass
class DerivationReport:
    degree: int
    even_total: int
    even_inner: int
    odd_total: int
    odd_inner: int

    @property
    def total(self) -> int:
        return self.even_total + self.odd_total

    @property
    def inner(self) -> int:
        return self.even_inner + self.odd_inner

    @property
    def outer(self) -> int:
        return self.total - self.inner


def _derivation_space(g: LieSuperAlgebra, degrees: Sequence[int], d: int, p: int) -> int:
    n = g.dim
    targets: Dict[int, List[int]] = {}
    for i in range(n):
        targets[i] = [k for k in range(n)
                      if degrees[k] == degrees[i] + d and g.parity[k] == (g.parity[i] + p) & 1]
    unknowns = [(i, k) for i in range(n) for k in targets[i]]
    if not unknowns:
        return 0
    index = {u: pos for pos, u in enumerate(unknowns)}
    images: List[Vec] = [{} for _ in unknowns]

    def add(u: Tuple[int, int], cond: int, vec: Vec, coeff: Scalar = ONE) -> None:
        pos = index.get(u)
        if pos is None:
            return
        axpy(images[pos], coeff, {cond * n + key: c for key, c in vec.items()})

    cond = 0
    for a in range(n):
        for b in range(a + 1, n):
            for m, c in g.br(a, b).items():
                for k in targets[m]:
                    add((m, k), cond, {k: ONE}, c)
            for k in targets[a]:
                add((a, k), cond, g.br(k, b))
            for k in targets[b]:
                add((b, k), cond, g.br(a, k))
            cond += 1
    for a in range(n):
        if not g.parity[a]:
            continue
        for m, c in g.sq(a).items():
            for k in targets[m]:
                add((m, k), cond, {k: ONE}, c)
        for k in targets[a]:
            add((a, k), cond, g.br(k, a))
        cond += 1
    return len(kernel_of_images(images))


def graded_derivations(g: LieSuperAlgebra, degrees: Optional[Sequence[int]], d: int) -> DerivationReport:
    """Dimensions of degree-d derivations and of the inner ones ad(g_d), per parity."""
    degrees = list(degrees) if degrees is not None else list(g.degrees or [0] * g.dim)
    z = center(g)
    inner = {}
    for p in (0, 1):
        part = [i for i in range(g.dim) if degrees[i] == d and g.parity[i] == p]
        central = [v for v in z if all(degrees[i] == d and g.parity[i] == p for i in v)]
        inner[p] = len(part) - len(central)
    return DerivationReport(
        degree=d,
        even_total=_derivation_space(g, degrees, d, 0),
        even_inner=inner[0],
        odd_total=_derivation_space(g, degrees, d, 1),
        odd_inner=inner[1],
    )


def outer_derivations(g: LieSuperAlgebra, degrees: Sequence[int]) -> Dict[int, int]:
    """Outer derivation counts for every degree the grading can support."""
    lo, hi = min(degrees), max(degrees)
    return {d: graded_derivations(g, degrees, d).outer for d in range(lo - hi, hi - lo + 1)}


# --- Weisfeiler filtration ---

@dataclass
class Filtration:
    levels: Dict[int, List[Vec]] = field(default_factory=dict)
    depth: int = 0

    def dims(self) -> Dict[int, int]:
        return {i: len(v) for i, v in sorted(self.levels.items())}


def _span_contains(basis: Sequence[Vec], vec: Vec) -> bool:
    ech = Echelon()
    for v in basis:
        ech.add(v)
    return ech.contains(vec)


def weisfeiler_filtration(g: LieSuperAlgebra, L0: Sequence[Vec], Lm1: Sequence[Vec]) -> Filtration:
    """Filtration generated by the seed L_0 ⊂ L_{-1}.

    Raises:
        InvalidSeed: If L_0 is not a subalgebra, or L_{-1} is not an L_0-invariant space containing it.
    """
    L0 = span_basis(L0)
    Lm1 = span_basis(list(L0) + list(Lm1))
    ech0 = Echelon()
    for v in L0:
        ech0.add(v)
    for a in range(len(L0)):
        for b in range(a + 1, len(L0)):
            if not ech0.contains(g.bracket(L0[a], L0[b])):
                raise InvalidSeed("L_0 is not a subalgebra")
        if g.parity_of(L0[a]) == 1 and not ech0.contains(g.square(L0[a])):
            raise InvalidSeed("L_0 is not closed under squaring")
    ech1 = Echelon()
    for v in Lm1:
        ech1.add(v)
    for u in L0:
        for w in Lm1:
            if not ech1.contains(g.bracket(u, w)):
                raise InvalidSeed()
    filt = Filtration(levels={0: L0, -1: Lm1})
    i = 1
    current = list(Lm1)
    while True:
        ech = Echelon()
        for v in current:
            ech.add(v)
        nxt = list(current)
        for u in Lm1:
            for w in current:
                r = g.bracket(u, w)
                if ech.add(r)[0]:
                    nxt.append(r)
        if len(nxt) == len(current):
            break
        i += 1
        filt.levels[-i] = nxt
        current = nxt
    filt.depth = i
    level = 0
    current = L0
    while current:
        ech = Echelon()
        for v in current:
            ech.add(v)
        n = g.dim
        images = []
        for u in current:
            img: Vec = {}
            for b, w in enumerate(Lm1):
                rem, _ = ech.reduce(g.bracket(u, w))
                for k, c in rem.items():
                    img[b * n + k] = c
            images.append(img)
        nxt = []
        for rel in kernel_of_images(images):
            vec: Vec = {}
            for pos, c in rel.items():
                axpy(vec, c, current[pos])
            if vec:
                nxt.append(vec)
        nxt = span_basis(nxt)
        if len(nxt) == len(current):
            break
        level += 1
        filt.levels[level] = nxt
        current = nxt
    return filt


def associated_graded(filt: Filtration) -> Dict[int, int]:
    """Dimensions of gr_i = L_i / L_{i+1}."""
    levels = sorted(filt.levels)
    out = {}
    for i in levels:
        nxt = len(filt.levels.get(i + 1, []))
        out[i] = len(filt.levels[i]) - nxt
    return out


# --- Simplicity ---

class SimplicityVerdict(str, Enum):
    SIMPLE = "SIMPLE"
    NOT_SIMPLE = "NOT_SIMPLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class SimplicityResult:
    verdict: SimplicityVerdict
    witness: List[Vec] = field(default_factory=list)
    reason: str = ""


def ideal_closure(g: LieSuperAlgebra, seeds: Iterable[Vec], stop_at: Optional[int] = None) -> List[Vec]:
    """Smallest ideal containing ``seeds`` (closed under ad and squaring of odd elements)."""
    span = HomogeneousSpan(g)
    queue: List[Vec] = []
    for s in seeds:
        for part in homogeneous_parts(g, s):
            if span.add(part):
                queue.append(part)
    target = stop_at if stop_at is not None else g.dim
    while queue and len(span) < target:
        u = queue.pop()
        for j in range(g.dim):
            r = g.bracket(u, {j: ONE})
            if r and span.add(r):
                queue.append(r)
        if g.parity_of(u) == 1:
            s = g.square(u)
            if s and span.add(s):
                queue.append(s)
    return span.basis


def is_simple(g: LieSuperAlgebra, seed: Optional[int] = None) -> SimplicityResult:
    """Spinning test for simplicity; see SimplicityVerdict for the meaning of results."""
    if g.dim == 0:
        return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, [], "zero algebra")
    z = center(g)
    if z:
        return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, z, "nonzero center")
    dg = derived_span(g, [{i: ONE} for i in range(g.dim)])
    if len(dg) < g.dim:
        return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, dg, "derived algebra is proper")
    candidates: List[Vec] = [{i: ONE} for i in range(g.dim)]
    exhaustive = False
    if g.weights is not None:
        spaces: Dict[Weight, int] = {}
        for w in g.weights:
            spaces[w] = spaces.get(w, 0) + 1
        exhaustive = all(count == 1 for w, count in spaces.items() if any(w))
    else:
        rng = random.Random(settings.RANDOM_SEED if seed is None else seed)
        by_parity = {0: [i for i in range(g.dim) if not g.parity[i]], 1: [i for i in range(g.dim) if g.parity[i]]}
        for _ in range(settings.SIMPLICITY_RANDOM_PROBES):
            p = rng.randrange(2)
            pool = by_parity[p] or by_parity[1 - p]
            vec = {i: ONE for i in pool if rng.random() < 0.5}
            if vec:
                candidates.append(vec)
    for vec in candidates:
        ideal = ideal_closure(g, [vec])
        if len(ideal) < g.dim:
            return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, ideal, "proper ideal found by spinning")
    if exhaustive:
        return SimplicityResult(SimplicityVerdict.SIMPLE, [], "all nonzero weight spaces are 1-dimensional")
    return SimplicityResult(SimplicityVerdict.INCONCLUSIVE, [], "spinning passed on a non-exhaustive test set")


# --- Serialization ---

def to_json(g: LieSuperAlgebra) -> dict:
    data = {
        "basis": list(g.labels),
        "parity": list(g.parity),
        "bracket": [[i, j, [[k, str(c)] for k, c in sorted(v.items())]]
                    for (i, j), v in sorted(g.structure_table().items())],
        "squaring": [[i, [[k, str(c)] for k, c in sorted(v.items())]] for i, v in sorted(g.squares_table().items())],
    }
    if g.weights is not None:
        data["weights"] = [list(w) for w in g.weights]
    if g.degrees is not None:
        data["degrees"] = list(g.degrees)
    return data


def from_json(data: dict) -> LieSuperAlgebra:
    brackets = {(i, j): {k: parse_scalar(c) for k, c in terms} for i, j, terms in data["bracket"]}
    squares = {i: {k: parse_scalar(c) for k, c in terms} for i, terms in data.get("squaring", [])}
    return LieSuperAlgebra(
        data["basis"], data["parity"], brackets, squares,
        weights=data.get("weights"), degrees=data.get("degrees"),
        meta={"name": data.get("name")},
    )


def restrict(g: LieSuperAlgebra, indices: Sequence[int], name: Optional[str] = None) -> LieSuperAlgebra:
    """Subalgebra spanned by a bracket-closed set of basis elements."""
    indices = list(indices)
    position = {i: pos for pos, i in enumerate(indices)}

    def move(vec: Vec) -> Vec:
        try:
            return {position[k]: c for k, c in vec.items()}
        except KeyError as exc:
            raise NotAnIdeal(f"Basis subset is not closed: {g.labels[exc.args[0]]} escapes") from None

    brackets, squares = {}, {}
    for a, i in enumerate(indices):
        for b in range(a + 1, len(indices)):
            r = g.br(i, indices[b])
            if r:
                brackets[(a, b)] = move(r)
        s = g.sq(i)
        if s:
            squares[a] = move(s)
    meta = {"name": name or g.meta.get("name"), "embedding": [{i: ONE} for i in indices], "parent": g}
    return LieSuperAlgebra(
        [g.labels[i] for i in indices], [g.parity[i] for i in indices], brackets, squares,
        weights=[g.weights[i] for i in indices] if g.weights is not None else None,
        degrees=[g.degrees[i] for i in indices] if g.degrees is not None else None,
        meta=meta,
    )

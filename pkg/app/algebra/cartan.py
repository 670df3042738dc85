"""Cartan-matrix Lie superalgebras g(A) in characteristic 2.

The algebra is built height by height on both sides of the triangular
decomposition. A candidate at height h is a bracket [e_i, v] with v of
height h-1, or the square of an odd v of height h/2; it is zero in g(A)
exactly when all its lowerings [e_j^∓, ·] vanish, so each new height is an
echelon over the concatenated lowering images.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from app.algebra.linalg import Echelon, ExactMatrix, Vec, axpy, kernel, rank, rank_of, rref
from app.algebra.liesuper import LieSuperAlgebra, center, center_and_quotient, restrict
from app.algebra.scalar import ONE, ZERO, Scalar, parse_scalar
from app.core.config import settings
from app.core.exceptions import (
    BuildNotTerminated,
    CenterMismatch,
    InvalidParams,
    NoSolution,
    NormalizationError,
    ScalarParseError,
    SpecFileError,
)
from app.core.log_config import logger
from app.schemas.cartan import CartanSpecFile

KEY_STRIDE = 1 << 24


class DiagonalMark(str, Enum):
    TWO = "2"
    OD_EVEN = "od"
    EV_EVEN = "ev"
    ONE_ODD = "1"
    ZERO_ODD = "0"

    @property
    def value_scalar(self) -> Scalar:
        return ONE if self in (DiagonalMark.OD_EVEN, DiagonalMark.ONE_ODD) else ZERO

    @property
    def parity(self) -> int:
        return 1 if self in (DiagonalMark.ONE_ODD, DiagonalMark.ZERO_ODD) else 0

    @property
    def glyph(self) -> str:
        return _GLYPHS[self]


_GLYPHS = {
    DiagonalMark.TWO: "O",
    DiagonalMark.OD_EVEN: "*",
    DiagonalMark.ONE_ODD: "#",
    DiagonalMark.ZERO_ODD: "X",
    DiagonalMark.EV_EVEN: "@",
}


def mark_for(value: Scalar, parity: int, two: bool = False) -> DiagonalMark:
    if parity:
        return DiagonalMark.ONE_ODD if value else DiagonalMark.ZERO_ODD
    if value:
        return DiagonalMark.OD_EVEN
    return DiagonalMark.TWO if two else DiagonalMark.EV_EVEN


@dataclass
class CartanSpec:
    """Normalized Cartan matrix with parity-tagged diagonal."""
    marks: List[DiagonalMark]
    offdiag: Dict[Tuple[int, int], Scalar] = field(default_factory=dict)
    completion_B: Optional[List[List[Scalar]]] = None
    relation_T: Optional[List[List[Scalar]]] = None
    name: Optional[str] = None
    param_group: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.marks)

    @property
    def parities(self) -> List[int]:
        return [m.parity for m in self.marks]

    def entry(self, i: int, j: int) -> Scalar:
        if i == j:
            return self.marks[i].value_scalar
        return self.offdiag.get((i, j), ZERO)

    def matrix(self) -> List[List[Scalar]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def exact(self) -> ExactMatrix:
        return ExactMatrix.from_rows(self.matrix())

    def is_parametric(self) -> bool:
        return any(not v.is_constant() for v in self.offdiag.values())

    def to_file_dict(self) -> dict:
        data = {
            "size": self.n,
            "diagonal": [m.value for m in self.marks],
            "offdiag": [[i + 1, j + 1, str(v)] for (i, j), v in sorted(self.offdiag.items()) if v],
        }
        if self.completion_B is not None:
            data["completion_B"] = [[str(v) for v in row] for row in self.completion_B]
        if self.name:
            data["name"] = self.name
        if self.param_group:
            data["param_group"] = self.param_group
        return data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], name: Optional[str] = None,
                  param_group: Optional[str] = None) -> "CartanSpec":
        """Rows with diagonal tokens ("2", "od", "ev", "1", "0") and scalar off-diagonal text."""
        marks, offdiag = [], {}
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                if i == j:
                    marks.append(DiagonalMark(str(value)))
                else:
                    s = parse_scalar(value)
                    if s:
                        offdiag[(i, j)] = s
        return cls(marks, offdiag, name=name, param_group=param_group)

    @classmethod
    def from_file_dict(cls, data: dict) -> "CartanSpec":
        try:
            n = int(data["size"])
            marks = [DiagonalMark(str(t)) for t in data["diagonal"]]
        except (KeyError, ValueError, TypeError) as exc:
            raise SpecFileError(f"Invalid Cartan spec header: {exc}") from None
        if len(marks) != n:
            raise SpecFileError(f"Expected {n} diagonal tokens, got {len(marks)}")
        offdiag = {}
        for entry in data.get("offdiag", []):
            i, j, text = entry
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise SpecFileError(f"Off-diagonal index ({i}, {j}) out of range")
            try:
                value = parse_scalar(text)
            except ScalarParseError as exc:
                raise SpecFileError(f"Entry ({i}, {j}): {exc.detail}") from None
            if value:
                offdiag[(i - 1, j - 1)] = value
        B = data.get("completion_B")
        return cls(
            marks, offdiag,
            completion_B=[[parse_scalar(v) for v in row] for row in B] if B else None,
            relation_T=[[parse_scalar(v) for v in row] for row in data["relation_T"]] if data.get("relation_T") else None,
            name=data.get("name"),
            param_group=data.get("param_group"),
        )


def load_spec(path: Union[str, Path]) -> CartanSpec:
    """Parse a Cartan spec JSON file; syntax errors carry line and column."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFileError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        CartanSpecFile.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "top level"
        raise SpecFileError(f"{path}: {where}: {first['msg']}") from None
    return CartanSpec.from_file_dict(data)


# --- Normalization ---

def bandwidth(spec: CartanSpec) -> int:
    return max((abs(i - j) for (i, j), v in spec.offdiag.items() if v), default=0)


def permute(spec: CartanSpec, order: Sequence[int]) -> CartanSpec:
    """Node k of the result is node order[k] of ``spec``."""
    pos = {old: new for new, old in enumerate(order)}
    return CartanSpec(
        [spec.marks[o] for o in order],
        {(pos[i], pos[j]): v for (i, j), v in spec.offdiag.items()},
        name=spec.name, param_group=spec.param_group,
    )


def row_scales(matrix: Sequence[Sequence[Scalar]], demanded_two: Sequence[bool]) -> List[Scalar]:
    """Factors λ_i with diag(λ)·A normalized; zero-diagonal rows are chosen to symmetrize A.

    Raises:
        NormalizationError: If a row demanded to carry a 2 is entirely zero.
    """
    n = len(matrix)
    scale_of: List[Optional[Scalar]] = [None] * n
    for i in range(n):
        if matrix[i][i]:
            scale_of[i] = matrix[i][i].inv()
        elif demanded_two[i] and not any(matrix[i][j] for j in range(n) if j != i):
            raise NormalizationError(f"Row {i + 1} is zero but must carry a 2 on the diagonal")
    for start in [i for i in range(n) if scale_of[i] is not None] + list(range(n)):
        if scale_of[start] is None:
            scale_of[start] = ONE
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or scale_of[j] is not None:
                    continue
                if matrix[i][j] and matrix[j][i]:
                    scale_of[j] = scale_of[i] * matrix[i][j] / matrix[j][i]
                    queue.append(j)
    return scale_of


def normalize(rows: Sequence[Sequence[Scalar]], parities: Sequence[int],
              demanded_two: Optional[Sequence[bool]] = None, reorder: bool = True,
              name: Optional[str] = None, param_group: Optional[str] = None) -> CartanSpec:
    """Rescale rows to a normalized Cartan matrix and choose a minimal-bandwidth order."""
    n = len(rows)
    demanded_two = list(demanded_two or [False] * n)
    matrix = [[parse_scalar(v) for v in row] for row in rows]
    scale_of = row_scales(matrix, demanded_two)
    scaled = [[scale_of[i] * matrix[i][j] for j in range(n)] for i in range(n)]
    marks = [mark_for(scaled[i][i], parities[i], demanded_two[i]) for i in range(n)]
    offdiag = {(i, j): scaled[i][j] for i in range(n) for j in range(n) if i != j and scaled[i][j]}
    spec = CartanSpec(marks, offdiag, name=name, param_group=param_group)
    if not reorder or n > 8:
        return spec
    best, best_width = spec, bandwidth(spec)
    for order in itertools.permutations(range(n)):
        candidate = permute(spec, order)
        width = bandwidth(candidate)
        if width < best_width:
            best, best_width = candidate, width
    return best


def normalize_spec(spec: CartanSpec, reorder: bool = True) -> CartanSpec:
    return normalize(spec.matrix(), spec.parities, [m is DiagonalMark.TWO for m in spec.marks],
                     reorder=reorder, name=spec.name, param_group=spec.param_group)


# --- Construction ---

def _concat(lowerings: Sequence[Vec]) -> Vec:
    """One vector holding all lowerings, lowering j shifted by j·KEY_STRIDE."""
    out: Vec = {}
    for j, low in enumerate(lowerings):
        for t, c in low.items():
            out[j * KEY_STRIDE + t] = c
    return out


@dataclass
class _Root:
    side: int
    height: int
    weight: Tuple[int, ...]
    origin: tuple


@dataclass
class CartanAlgebra:
    spec: CartanSpec
    algebra: LieSuperAlgebra
    chevalley: Dict[tuple, int]
    roots: Dict[Tuple[int, ...], List[int]]
    torus: List[int]
    centrals: List[Vec]
    rank: int
    completion_B: List[List[Scalar]]
    relation_T: List[List[Scalar]]

    @property
    def l(self) -> int:
        return self.spec.n - self.rank

    def root_space_dims(self) -> Dict[Tuple[int, ...], int]:
        return {w: len(ids) for w, ids in sorted(self.roots.items())}


class _Builder:
    def __init__(self, spec: CartanSpec, B: List[List[Scalar]], height_cap: int):
        self.spec = spec
        self.n = spec.n
        self.A = spec.matrix()
        self.B = B
        self.height_cap = height_cap
        self.labels: List[str] = []
        self.parity: List[int] = []
        self.weights: List[Tuple[int, ...]] = []
        self.kind: List[object] = []
        self.up: Dict[Tuple[int, int], Vec] = {}
        self.down: Dict[int, List[Vec]] = {}
        self.sqmap: Dict[int, Vec] = {}
        self.levels: Dict[Tuple[int, int], List[int]] = {}
        self.gen: Dict[Tuple[int, int], int] = {}
        self._memo: Dict[Tuple[int, int], Vec] = {}
        self.echelons: Dict[Tuple[int, ...], Tuple[Echelon, List[Optional[int]]]] = {}
        self._weight_count: Dict[Tuple[int, ...], int] = {}

    def _new(self, label: str, parity: int, weight: Tuple[int, ...], kind: object) -> int:
        self.labels.append(label)
        self.parity.append(parity)
        self.weights.append(weight)
        self.kind.append(kind)
        return len(self.labels) - 1

    def _weight_parity(self, weight: Tuple[int, ...]) -> int:
        return sum(abs(m) * p for m, p in zip(weight, self.spec.parities)) & 1

    def _coef(self, row: Sequence[Scalar], weight: Tuple[int, ...]) -> Scalar:
        total = ZERO
        for t, m in enumerate(weight):
            if m & 1:
                total = total + row[t]
        return total

    # --- brackets ---

    def gen_action(self, i: int, s: int, y: int) -> Vec:
        kind = self.kind[y]
        e = self.gen[(i, s)]
        if isinstance(kind, tuple):
            label, k = kind
            c = self.A[k][i] if label == "h" else self.B[k][i]
            return {e: c} if c else {}
        if kind.side == s:
            return self.up.get((i, y), {})
        return self.down[y][i]

    def gen_action_vec(self, i: int, s: int, vec: Vec) -> Vec:
        out: Vec = {}
        for t, c in vec.items():
            axpy(out, c, self.gen_action(i, s, t))
        return out

    def br_vec(self, x: int, vec: Vec) -> Vec:
        out: Vec = {}
        for t, c in vec.items():
            axpy(out, c, self.br(x, t))
        return out

    def br(self, x: int, y: int) -> Vec:
        if x == y:
            return {}
        key = (x, y) if x < y else (y, x)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = self._compute_br(x, y)
        self._memo[key] = result
        return result

    def _compute_br(self, x: int, y: int) -> Vec:
        kx, ky = self.kind[x], self.kind[y]
        if isinstance(kx, tuple) and isinstance(ky, tuple):
            return {}
        if isinstance(kx, tuple) or isinstance(ky, tuple):
            cartan, root = (kx, y) if isinstance(kx, tuple) else (ky, x)
            label, k = cartan
            row = self.A[k] if label == "h" else self.B[k]
            c = self._coef(row, self.weights[root])
            return {root: c} if c else {}
        if kx.origin[0] == "gen":
            return self.gen_action(kx.origin[1], kx.side, y)
        if ky.origin[0] == "gen":
            return self.gen_action(ky.origin[1], ky.side, x)
        if kx.side == ky.side:
            return self._same_side(x, y)
        # opposite sides: every term below has smaller total height
        if ky.height > kx.height:
            x, y, kx, ky = y, x, ky, kx
        if kx.origin[0] == "up":
            _, i, v = kx.origin
            out = self.gen_action_vec(i, kx.side, self.br(v, y))
            axpy(out, ONE, self.br_vec(v, self.gen_action(i, kx.side, y)))
            return out
        _, v = kx.origin
        return self.br_vec(v, self.br(v, y))

    def _same_side(self, x: int, y: int) -> Vec:
        """[x, y] for two root vectors of one side, read off from its lowerings.

        [e_j^∓, [x, y]] = [[e_j^∓, x], y] + [x, [e_j^∓, y]] only involves pairs of
        smaller total height, and the lowerings determine an element of g(A).
        """
        weight = tuple(a + b for a, b in zip(self.weights[x], self.weights[y]))
        found = self.echelons.get(weight)
        if found is None:
            return {}
        ech, ids = found
        lowerings = []
        for j in range(self.n):
            low = self.br_vec(y, self.down[x][j])
            axpy(low, ONE, self.br_vec(x, self.down[y][j]))
            lowerings.append(low)
        rem, combo = ech.reduce(_concat(lowerings), {})
        if rem:
            raise NoSolution(f"[{self.labels[x]}, {self.labels[y]}] is outside its root space")
        return {ids[t]: c for t, c in combo.items() if c}

    def square(self, x: int) -> Vec:
        return self.sqmap.get(x, {})

    # --- heights ---

    def _lowerings(self, cand: tuple) -> List[Vec]:
        if cand[0] == "up":
            _, i, v = cand
            out = []
            for j in range(self.n):
                low = self.gen_action_vec(i, self.kind[v].side, self.down[v][j])
                if i == j:
                    c = self._coef(self.A[i], self.weights[v])
                    if c:
                        axpy(low, c, {v: ONE})
                out.append(low)
            return out
        _, v = cand
        return [self.br_vec(v, self.down[v][j]) for j in range(self.n)]

    def _label(self, s: int, weight: Tuple[int, ...]) -> str:
        count = self._weight_count.get(weight, 0)
        self._weight_count[weight] = count + 1
        base = f"x{'+' if s > 0 else '-'}({','.join(str(abs(m)) for m in weight)})"
        return base if count == 0 else f"{base}#{count + 1}"

    def build_height(self, s: int, h: int) -> List[int]:
        cands: List[tuple] = []
        for v in self.levels.get((s, h - 1), []):
            for i in range(self.n):
                cands.append(("up", i, v))
        if h % 2 == 0:
            for v in self.levels.get((s, h // 2), []):
                if self.parity[v]:
                    cands.append(("sq", v))
        created: List[int] = []
        for cand in cands:
            if cand[0] == "up":
                _, i, v = cand
                weight = tuple(m + (s if t == i else 0) for t, m in enumerate(self.weights[v]))
            else:
                weight = tuple(2 * m for m in self.weights[cand[1]])
            lowerings = self._lowerings(cand)
            ech, ids = self.echelons.setdefault(weight, (Echelon(track=True), []))
            independent, _, combo = ech.add(_concat(lowerings))
            if independent:
                new_id = self._new(self._label(s, weight), self._weight_parity(weight), weight,
                                   _Root(s, h, weight, cand))
                self.down[new_id] = lowerings
                ids.append(new_id)
                value = {new_id: ONE}
                created.append(new_id)
            else:
                own = len(ids)
                ids.append(None)
                value = {ids[t]: c for t, c in combo.items() if t != own and c}
            if cand[0] == "up":
                self.up[(cand[1], cand[2])] = value
            else:
                self.sqmap[cand[1]] = value
        return created

    def run(self) -> None:
        n = self.n
        zero = tuple(0 for _ in range(n))
        for k in range(n):
            self._new(f"h{k + 1}", 0, zero, ("h", k))
        for k in range(len(self.B)):
            self._new(f"d{k + 1}", 0, zero, ("d", k))
        for s in (1, -1):
            ids = []
            for i in range(n):
                weight = tuple(s if t == i else 0 for t in range(n))
                self._weight_count[weight] = 1
                gid = self._new(f"e{i + 1}{'+' if s > 0 else '-'}", self.spec.parities[i], weight,
                                _Root(s, 1, weight, ("gen", i)))
                self.gen[(i, s)] = gid
                self.down[gid] = [{i: ONE} if j == i else {} for j in range(n)]
                ids.append(gid)
            self.levels[(s, 1)] = ids
        # interleave sides per height so the basis reads h, d, then height 1 (+, -), height 2 (+, -), ...
        h = 2
        while self.levels.get((1, h - 1)) or self.levels.get((-1, h - 1)):
            if h > self.height_cap:
                raise BuildNotTerminated(f"Height cap {self.height_cap} reached for {self.spec.name or 'spec'}")
            for s in (1, -1):
                self.levels[(s, h)] = self.build_height(s, h)
            h += 1


def completion_rows(A: ExactMatrix) -> List[List[Scalar]]:
    """Unit rows on the non-pivot columns of rref(A): [A; B] has full rank."""
    _, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in pivots]
    return [[ONE if t == c else ZERO for t in range(A.cols)] for c in free]


def build(spec: CartanSpec, height_cap: Optional[int] = None) -> CartanAlgebra:
    """Construct g(A) for a normalized Cartan spec.

    Raises:
        BuildNotTerminated: If the height cap is reached.
        CenterMismatch: If T·A ≠ 0 or the computed center has the wrong dimension.
    """
    height_cap = height_cap or settings.HEIGHT_CAP
    A = spec.exact()
    rk = rank(A)
    l = spec.n - rk
    B = spec.completion_B if spec.completion_B is not None else completion_rows(A)
    if len(B) != l:
        raise CenterMismatch(f"completion_B has {len(B)} rows, expected {l}")
    if spec.relation_T is not None:
        T = spec.relation_T
        TA = ExactMatrix.from_rows(T) @ A
        if not TA.is_zero() or rank(ExactMatrix.from_rows(T)) != l:
            raise CenterMismatch("relation_T does not satisfy T·A = 0 with rank l")
    else:
        T = [[row.get(i, ZERO) for i in range(spec.n)] for row in kernel(A.transpose())]

    builder = _Builder(spec, B, height_cap)
    builder.run()
    g = LieSuperAlgebra(
        builder.labels, builder.parity, weights=builder.weights,
        bracket_provider=builder.br, square_provider=builder.square,
        meta={"name": spec.name, "kind": "cartan"},
    )
    centrals = [{k: row[k] for k in range(spec.n) if row[k]} for row in T]
    z = center(g)
    if len(z) != l:
        raise CenterMismatch(f"center has dim {len(z)}, expected size - rank = {l}")
    if rank_of(list(z) + centrals) != l:
        raise CenterMismatch("center is not spanned by the T-combinations of the h_i")
    roots: Dict[Tuple[int, ...], List[int]] = {}
    for idx, w in enumerate(builder.weights):
        if any(w):
            roots.setdefault(w, []).append(idx)
    chevalley: Dict[tuple, int] = {("h", k): k for k in range(spec.n)}
    chevalley.update({("d", k): spec.n + k for k in range(l)})
    chevalley.update({("e", i, s): gid for (i, s), gid in builder.gen.items()})
    logger.info(f"built g(A) for {spec.name or 'spec'}: sdim {g.sdim_str()}, rank {rk}")
    return CartanAlgebra(
        spec=spec, algebra=g, chevalley=chevalley, roots=roots,
        torus=list(range(spec.n + l)), centrals=centrals, rank=rk,
        completion_B=B, relation_T=T,
    )


def derived_core(ca: CartanAlgebra) -> LieSuperAlgebra:
    """g'(A): the root vectors together with the h_i."""
    keep = [i for i in range(ca.algebra.dim) if ca.algebra.labels[i][0] != "d"]
    return restrict(ca.algebra, keep, name=f"{ca.spec.name}'")


def simple_core(ca: CartanAlgebra) -> LieSuperAlgebra:
    """g'(A)/c."""
    _, q = center_and_quotient(derived_core(ca))
    q.meta["name"] = f"{ca.spec.name}'/c"
    return q


def center_quotient(ca: CartanAlgebra) -> LieSuperAlgebra:
    """g(A)/c."""
    _, q = center_and_quotient(ca.algebra)
    q.meta["name"] = f"{ca.spec.name}/c"
    return q


# --- Gradings ---

@dataclass
class GradedAlgebra:
    algebra: LieSuperAlgebra
    r: Tuple[int, ...]
    degrees: List[int]
    depth: int
    simplest: bool
    nonpositive: LieSuperAlgebra
    negative: LieSuperAlgebra

    def dims_by_degree(self) -> Dict[int, int]:
        return self.algebra.dims_by_degree()


def grade_by_r(source: Union[CartanAlgebra, LieSuperAlgebra], r: Sequence[int]) -> GradedAlgebra:
    """Z-grading deg X_i^± = ±r_i on an algebra carrying root weights."""
    g = source.algebra if isinstance(source, CartanAlgebra) else source
    if g.weights is None:
        raise InvalidParams("Algebra carries no root weights to grade by")
    r = tuple(int(x) for x in r)
    if any(len(w) != len(r) for w in g.weights):
        raise InvalidParams(f"Grading vector has length {len(r)}, weights have length {len(g.weights[0])}")
    degrees = [sum(a * b for a, b in zip(w, r)) for w in g.weights]
    graded = g.with_degrees(degrees)
    graded.meta = dict(g.meta)
    graded.meta["r"] = r
    nonpos = [i for i, d in enumerate(degrees) if d <= 0]
    neg = [i for i, d in enumerate(degrees) if d < 0]
    depth = -min(degrees) if degrees and min(degrees) < 0 else 0
    simplest = sum(1 for x in r if x) == 1 and max(r) == 1
    return GradedAlgebra(
        algebra=graded, r=r, degrees=degrees, depth=depth, simplest=simplest,
        nonpositive=restrict(graded, nonpos, name=f"{g.meta.get('name')}_<=0"),
        negative=restrict(graded, neg, name=f"{g.meta.get('name')}_-"),
    )


# --- Dynkin diagrams ---

def _edge(spec: CartanSpec, i: int, j: int) -> Optional[str]:
    a, b = spec.entry(i, j), spec.entry(j, i)
    if not a and not b:
        return None
    if a == b:
        return "—" if a.is_one() else f"={a}="
    return f"={a},{b}="


def dynkin_ascii(spec: CartanSpec) -> str:
    """One glyph per node; consecutive nodes joined on the first line, other edges listed below."""
    parts = [spec.marks[0].glyph] if spec.n else []
    for i in range(1, spec.n):
        edge = _edge(spec, i - 1, i)
        parts.append(f" {edge} " if edge else "   ")
        parts.append(spec.marks[i].glyph)
    lines = ["".join(parts)]
    for i in range(spec.n):
        for j in range(i + 2, spec.n):
            edge = _edge(spec, i, j)
            if edge:
                lines.append(f"{i + 1} {edge} {j + 1}")
    return "\n".join(lines)

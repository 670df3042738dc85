"""Symmetric bilinear (super)forms over GF(2) and the algebras preserving them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from app.algebra.linalg import ExactMatrix, Vec, axpy, kernel_of_images, rank, span_basis
from app.algebra.liesuper import LieSuperAlgebra, mat_add, mat_mul, matrix_algebra
from app.algebra.scalar import ONE, ZERO, Scalar
from app.core.exceptions import DegenerateForm, InvalidParams, NotApplicable
from app.core.log_config import logger

Matrix = Dict[Tuple[int, int], Scalar]


class FormClass(str, Enum):
    I = "I"
    PI = "Pi"


@dataclass
class BilinearForm:
    gram: ExactMatrix
    parities: List[int]
    odd: bool = False

    @property
    def size(self) -> int:
        return self.gram.rows

    @property
    def n_ev(self) -> int:
        return self.parities.count(0)

    @property
    def n_od(self) -> int:
        return self.parities.count(1)

    def value(self, u: Vec, v: Vec) -> Scalar:
        total = ZERO
        for (i, j), c in self.gram.entries.items():
            a, b = u.get(i), v.get(j)
            if a is not None and b is not None:
                total = total + a * b * c
        return total


# --- Canonical Gram matrices ---

def unit_gram(n: int) -> ExactMatrix:
    return ExactMatrix.identity(n)


def pi_gram(n: int) -> ExactMatrix:
    """Π_n: hyperbolic blocks, with a 1 in the middle for odd n."""
    k = n // 2
    entries = {}
    for i in range(k):
        entries[(i, n - k + i)] = ONE
        entries[(n - k + i, i)] = ONE
    if n % 2:
        entries[(k, k)] = ONE
    return ExactMatrix(n, n, entries)


def antidiag_gram(n: int) -> ExactMatrix:
    return ExactMatrix(n, n, {(i, n - 1 - i): ONE for i in range(n)})


def _block_sum(first: ExactMatrix, second: ExactMatrix) -> ExactMatrix:
    entries = dict(first.entries)
    entries.update({(i + first.rows, j + first.cols): c for (i, j), c in second.entries.items()})
    return ExactMatrix(first.rows + second.rows, first.cols + second.cols, entries)


_GRAMS = {"I": unit_gram, "Pi": pi_gram, "S": antidiag_gram}


def gram_from_token(token, n: int) -> ExactMatrix:
    if isinstance(token, str):
        if token not in _GRAMS:
            raise InvalidParams(f"Unknown Gram matrix token '{token}'")
        return _GRAMS[token](n)
    m = ExactMatrix.from_rows(token)
    if m.rows != n or m.cols != n:
        raise InvalidParams(f"Explicit Gram matrix must be {n}x{n}")
    return m


def superform(n_ev: int, n_od: int, b_ev="I", b_od="I") -> BilinearForm:
    """Even form B_ev ⊕ B_od on a superspace of dimension n_ev|n_od."""
    gram = _block_sum(gram_from_token(b_ev, n_ev), gram_from_token(b_od, n_od))
    return BilinearForm(gram, [0] * n_ev + [1] * n_od)


def periplectic_form(m: int) -> BilinearForm:
    """Odd form Π_{m|m}."""
    return BilinearForm(pi_gram(2 * m), [0] * m + [1] * m, odd=True)


def form_from_spec(data: dict) -> BilinearForm:
    n_ev, n_od = int(data.get("n_ev", 0)), int(data.get("n_od", 0))
    if data.get("parity", "even") == "odd":
        if n_ev != n_od:
            raise InvalidParams("An odd non-degenerate form needs n_ev = n_od")
        return periplectic_form(n_ev)
    return superform(n_ev, n_od, data.get("B_ev", "I"), data.get("B_od", "I"))


# --- Canonical form ---

def _project_out(rest: List[Vec], form: BilinearForm, pairs: Sequence[Tuple[Vec, Vec]]) -> List[Vec]:
    """Subtract components along orthonormal vectors (x, x) or hyperbolic pairs (x, y)."""
    out = []
    for w in rest:
        w = dict(w)
        for x, y in pairs:
            if x is y:
                axpy(w, form.value(w, x), x)
            else:
                axpy(w, form.value(w, y), x)
                axpy(w, form.value(w, x), y)
        out.append(w)
    return out


def canonicalize_form(form: BilinearForm) -> Tuple[FormClass, ExactMatrix]:
    """Return the class and M with M·B·Mᵀ equal to 1_n (class I) or Π_n (class Π).

    Raises:
        DegenerateForm: If the Gram matrix is singular.
        InvalidParams: If the Gram matrix has entries outside GF(2).
    """
    n = form.size
    if any(not c.is_constant() for c in form.gram.entries.values()):
        raise InvalidParams("Form canonicalization is defined for Gram matrices over GF(2)")
    if rank(form.gram) < n:
        raise DegenerateForm()
    rest: List[Vec] = [{i: ONE} for i in range(n)]
    if any(form.gram.get(i, i) for i in range(n)):
        rows: List[Vec] = []
        while rest:
            v = next((w for w in rest if form.value(w, w)), None)
            if v is not None:
                rest = [w for w in rest if w is not v]
                rows.append(v)
                rest = [w for w in _project_out(rest, form, [(v, v)]) if w]
                continue
            # alternating remainder: trade one orthonormal vector and a hyperbolic pair for three
            x = rest[0]
            y = next(w for w in rest[1:] if form.value(x, w))
            rest = [w for w in rest if w is not x and w is not y]
            rest = [w for w in _project_out(rest, form, [(x, y)]) if w]
            v = rows.pop()
            vx, vy = dict(v), dict(v)
            axpy(vx, ONE, x)
            axpy(vy, ONE, y)
            vxy = dict(vx)
            axpy(vxy, ONE, y)
            rows += [vx, vy, vxy]
        if len(span_basis(rows)) != n:
            raise DegenerateForm()
        logger.debug(f"form of size {n} is of class I")
        return FormClass.I, ExactMatrix.from_row_vectors(rows, n)
    xs, ys = [], []
    while rest:
        x = rest[0]
        y = next((w for w in rest[1:] if form.value(x, w)), None)
        if y is None:
            raise DegenerateForm()
        rest = [w for w in rest if w is not x and w is not y]
        rest = [w for w in _project_out(rest, form, [(x, y)]) if w]
        xs.append(x)
        ys.append(y)
    logger.debug(f"form of size {n} is of class Pi")
    return FormClass.PI, ExactMatrix.from_row_vectors(xs + ys, n)


def canonical_gram(cls: FormClass, n: int) -> ExactMatrix:
    return unit_gram(n) if cls is FormClass.I else pi_gram(n)


# --- Preserver algebras ---

def _unit_parity(parities: Sequence[int], i: int, j: int) -> int:
    return (parities[i] + parities[j]) & 1


def preserver_algebra(form: BilinearForm, name: Optional[str] = None) -> LieSuperAlgebra:
    """aut_B = {X : B·X symmetric}, solved separately in each parity."""
    n = form.size
    gram_rows = form.gram.row_vectors()
    matrices: List[Matrix] = []
    parities: List[int] = []
    for p in (0, 1):
        units = [(i, j) for i in range(n) for j in range(n) if _unit_parity(form.parities, i, j) == p]
        images: List[Vec] = []
        for i, j in units:
            # B·E_ij has column j equal to column i of B
            bx = {(a, j): c for a, row in enumerate(gram_rows) for col, c in row.items() if col == i}
            img: Vec = {}
            for (a, b), c in bx.items():
                if a != b:
                    lo, hi = min(a, b), max(a, b)
                    axpy(img, c, {lo * n + hi: ONE})
            images.append(img)
        for rel in kernel_of_images(images):
            matrices.append({units[pos]: c for pos, c in rel.items()})
            parities.append(p)
    labels = [f"X{t + 1}" for t in range(len(matrices))]
    logger.info(f"preserver algebra of a form of size {n}: {len(matrices)} basis matrices")
    return matrix_algebra(matrices, parities, labels, n, name=name or "aut_B")


# --- Block-shape algebras ---

def matform_matrices(parities: Sequence[int], level: int) -> Tuple[List[Matrix], List[str], List[str]]:
    """Basis of {[[A, C], [D, Aᵀ]]} for vector parities of length 2k.

    level 0: C, D symmetric; level ≥ 1: C, D zero-diagonal; level ≥ 2: A traceless.
    Returns matrices, labels and block tags ("A", "C", "D").
    """
    size = len(parities)
    if size % 2:
        raise InvalidParams("Block-shape algebras need an even number of vectors")
    k = size // 2
    matrices: List[Matrix] = []
    labels: List[str] = []
    tags: List[str] = []
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            matrices.append({(i, j): ONE, (k + j, k + i): ONE})
            labels.append(f"A{i + 1}{j + 1}")
            tags.append("A")
    if level >= 2:
        for i in range(k - 1):
            matrices.append({(i, i): ONE, (k + i, k + i): ONE, (i + 1, i + 1): ONE, (k + i + 1, k + i + 1): ONE})
            labels.append(f"H{i + 1}")
            tags.append("A")
    else:
        for i in range(k):
            matrices.append({(i, i): ONE, (k + i, k + i): ONE})
            labels.append(f"A{i + 1}{i + 1}")
            tags.append("A")
    first = 0 if level == 0 else 1
    for i in range(k):
        for j in range(i + first, k):
            matrices.append({(i, k + j): ONE, (j, k + i): ONE} if i != j else {(i, k + i): ONE})
            labels.append(f"C{i + 1}{j + 1}")
            tags.append("C")
    for i in range(k):
        for j in range(i + first, k):
            matrices.append({(k + i, j): ONE, (k + j, i): ONE} if i != j else {(k + i, i): ONE})
            labels.append(f"D{i + 1}{j + 1}")
            tags.append("D")
    return matrices, labels, tags


def matrix_parity(m: Matrix, parities: Sequence[int]) -> int:
    found = {_unit_parity(parities, i, j) for i, j in m}
    if len(found) > 1:
        raise InvalidParams("Matrix is not homogeneous in the given format")
    return found.pop() if found else 0


def matform_algebra(parities: Sequence[int], level: int, name: Optional[str] = None) -> LieSuperAlgebra:
    matrices, labels, tags = matform_matrices(parities, level)
    g = matrix_algebra(matrices, [matrix_parity(m, parities) for m in matrices], labels,
                       len(parities), name=name or f"matform({level})")
    g.meta["matform"] = {"parities": list(parities), "level": level, "tags": tags}
    return g


def oo_parities(k_ev: int, k_od: int) -> List[int]:
    """Format k_ev|k_od|k_ev|k_od of oo_ΠΠ(2k_ev|2k_od)."""
    half = [0] * k_ev + [1] * k_od
    return half + half


def pe_parities(m: int) -> List[int]:
    return [0] * m + [1] * m


def chevalley_generators(k: int) -> Tuple[List[Matrix], List[Matrix]]:
    """e_i^± of o_Π(2k): E^{i,i+1} + E^{k+i+1,k+i}, e_k^+ = E^{k-1,2k} + E^{k,2k-1}, e^- = transpose."""
    if k < 2:
        raise InvalidParams("o_Pi(2k) Chevalley generators need k >= 2")
    plus = [{(i, i + 1): ONE, (k + i + 1, k + i): ONE} for i in range(k - 1)]
    plus.append({(k - 2, 2 * k - 1): ONE, (k - 1, 2 * k - 2): ONE})
    minus = [{(j, i): c for (i, j), c in m.items()} for m in plus]
    return plus, minus


def generated_algebra(generators: Sequence[Matrix], parities: Sequence[int], size: int,
                      name: Optional[str] = None) -> LieSuperAlgebra:
    """Matrix algebra generated under XY + YX and squares of odd matrices."""
    def flat(m: Matrix) -> Vec:
        return {i * size + j: c for (i, j), c in m.items()}

    basis: List[Matrix] = []
    span: List[Vec] = []
    queue = list(generators)
    while queue:
        m = queue.pop(0)
        if not m or len(span_basis(span + [flat(m)])) == len(span):
            continue
        span.append(flat(m))
        new = [mat_add(mat_mul(m, b), mat_mul(b, m)) for b in basis]
        if matrix_parity(m, parities):
            new.append(mat_mul(m, m))
        basis.append(m)
        queue.extend(x for x in new if x)
    return matrix_algebra(basis, [matrix_parity(m, parities) for m in basis],
                          [f"G{t + 1}" for t in range(len(basis))], size, name=name)


# --- Central extension and I_0 ---

def _blocks(m: Matrix, k: int) -> Tuple[Matrix, Matrix]:
    c = {(i, j - k): v for (i, j), v in m.items() if i < k <= j}
    d = {(i - k, j): v for (i, j), v in m.items() if j < k <= i}
    return c, d


def cocycle_value(x: Matrix, y: Matrix, k: int) -> Scalar:
    """F(X, Y) = Σ_{i<j} (C_ij D'_ij + C'_ij D_ij)."""
    cx, dx = _blocks(x, k)
    cy, dy = _blocks(y, k)
    total = ZERO
    for (i, j), c in cx.items():
        if i < j and (i, j) in dy:
            total = total + c * dy[(i, j)]
    for (i, j), c in cy.items():
        if i < j and (i, j) in dx:
            total = total + c * dx[(i, j)]
    return total


def quadratic_value(x: Matrix, k: int) -> Scalar:
    """q with q(X + Y) = q(X) + q(Y) + F(X, Y)."""
    c, d = _blocks(x, k)
    total = ZERO
    for (i, j), v in c.items():
        if i < j and (i, j) in d:
            total = total + v * d[(i, j)]
    return total


def extend_and_dress(g: LieSuperAlgebra, which: str = "both") -> LieSuperAlgebra:
    """Central extension by the cocycle F (z) and/or adjunction of I_0 = diag(1_k, 0_k).

    Raises:
        NotApplicable: If g is not a block-shape oo/pe algebra of level >= 1.
    """
    shape = g.meta.get("matform")
    if shape is None or shape["level"] < 1:
        raise NotApplicable("The cocycle and I_0 are defined on derived oo/pe algebras only")
    if which not in ("cocycle", "I0", "both"):
        raise InvalidParams(f"Unknown extension '{which}'")
    k = len(shape["parities"]) // 2
    n = g.dim
    labels, parity = list(g.labels), list(g.parity)
    brackets = dict(g.structure_table())
    squares = dict(g.squares_table())
    matrices = g.meta["matrices"]
    if which in ("cocycle", "both"):
        z = len(labels)
        labels.append("z")
        parity.append(0)
        for a in range(n):
            for b in range(a + 1, n):
                f = cocycle_value(matrices[a], matrices[b], k)
                if f:
                    entry = dict(brackets.get((a, b), {}))
                    axpy(entry, f, {z: ONE})
                    brackets[(a, b)] = entry
            if parity[a]:
                q = quadratic_value(matrices[a], k)
                if q:
                    entry = dict(squares.get(a, {}))
                    axpy(entry, q, {z: ONE})
                    squares[a] = entry
    if which in ("I0", "both"):
        idx = len(labels)
        labels.append("I0")
        parity.append(0)
        for a in range(n):
            # [I_0, X] keeps the C and D blocks of X
            c, d = _blocks(matrices[a], k)
            if c or d:
                brackets[(a, idx)] = {a: ONE}
    meta = dict(g.meta)
    meta["name"] = f"{g.meta.get('name')}+{which}"
    meta["extension"] = which
    logger.info(f"extended {g.meta.get('name')} by {which}: dim {len(labels)}")
    return LieSuperAlgebra(labels, parity, brackets, squares, meta=meta)

"""Systems of simple roots of g(A): reflections and their breadth-first closure."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from app.algebra.cartan import CartanAlgebra, CartanSpec, DiagonalMark, normalize, row_scales
from app.algebra.linalg import Vec, scale
from app.algebra.scalar import A, ONE, ZERO, Scalar, substitute
from app.core.exceptions import DivisionByZero, IndeterminateSubstitution, ReflectionUndefined
from app.core.log_config import logger

Weight = Tuple[int, ...]

PARAM_GROUPS: Dict[str, List[Scalar]] = {
    "wk3": [A, A + ONE, A.inv(), (A + ONE).inv(), A / (A + ONE), (A + ONE) / A],
    "wk4": [A, A.inv()],
}


@dataclass
class SimpleRootSystem:
    """Simple roots (as Z^n weights of the original system) with Chevalley generators in g(A)."""
    roots: List[Weight]
    positive: List[Vec]
    negative: List[Vec]
    spec: CartanSpec

    @property
    def root_set(self) -> FrozenSet[Weight]:
        return frozenset(self.roots)


def initial_system(ca: CartanAlgebra) -> SimpleRootSystem:
    n = ca.spec.n
    return SimpleRootSystem(
        roots=[tuple(1 if t == i else 0 for t in range(n)) for i in range(n)],
        positive=[{ca.chevalley[("e", i, 1)]: ONE} for i in range(n)],
        negative=[{ca.chevalley[("e", i, -1)]: ONE} for i in range(n)],
        spec=ca.spec,
    )


def reflection_coefficient(spec: CartanSpec, k: int, j: int) -> int:
    """Non-negative integer B_kj with σ_j ↦ σ_j + B_kj σ_k."""
    mark = spec.marks[k]
    a_kj = spec.entry(k, j)
    if mark is DiagonalMark.OD_EVEN:
        # -2A_kj/A_kk vanishes in characteristic 2 except when A_jk = A_kk
        return 2 if spec.entry(j, k) == spec.entry(k, k) else 0
    # the remaining cases give 1 when A_kj != 0: either A_kj itself or p - 1
    return 1 if a_kj else 0


def _coefficient_of(result: Vec, target: Vec) -> Optional[Scalar]:
    """c with result = c·target, or None when result is not proportional to target."""
    if not result:
        return ZERO
    pivot = min(target)
    c = result.get(pivot, ZERO) / target[pivot]
    if scale(target, c) != result:
        return None
    return c


def reflect(ca: CartanAlgebra, system: SimpleRootSystem, k: int) -> SimpleRootSystem:
    """Reflection in the simple root σ_k (0-based) with the induced Chevalley generators.

    Raises:
        ReflectionUndefined: If a transformed generator vanishes or the new
            generators fail the defining relations.
    """
    g = ca.algebra
    spec = system.spec
    n = spec.n
    if not 0 <= k < n:
        raise ReflectionUndefined(f"Node {k + 1} is out of range 1..{n}")
    roots: List[Weight] = []
    plus: List[Vec] = []
    minus: List[Vec] = []
    for j in range(n):
        if j == k:
            roots.append(tuple(-m for m in system.roots[k]))
            plus.append(system.negative[k])
            minus.append(system.positive[k])
            continue
        b = reflection_coefficient(spec, k, j)
        roots.append(tuple(m + b * mk for m, mk in zip(system.roots[j], system.roots[k])))
        xp, xm = system.positive[j], system.negative[j]
        for _ in range(b):
            xp = g.bracket(system.positive[k], xp)
            xm = g.bracket(system.negative[k], xm)
        if not xp or not xm:
            raise ReflectionUndefined(f"Generator for node {j + 1} vanishes after reflecting in node {k + 1}")
        plus.append(xp)
        minus.append(xm)

    heights = [g.bracket(plus[i], minus[i]) for i in range(n)]
    for i in range(n):
        if not heights[i]:
            raise ReflectionUndefined(f"[X{i + 1}+, X{i + 1}-] vanishes after reflecting in node {k + 1}")
        for j in range(n):
            if i != j and g.bracket(plus[i], minus[j]):
                raise ReflectionUndefined(f"[X{i + 1}+, X{j + 1}-] is nonzero after reflecting in node {k + 1}")

    matrix: List[List[Scalar]] = []
    for i in range(n):
        row = []
        for j in range(n):
            c = _coefficient_of(g.bracket(heights[i], plus[j]), plus[j])
            if c is None:
                raise ReflectionUndefined(f"X{j + 1}+ is not an eigenvector of H{i + 1}")
            row.append(c)
        matrix.append(row)

    parities = [g.parity_of(x) or 0 for x in plus]
    uses_two = any(m is DiagonalMark.TWO for m in spec.marks)
    demanded = [uses_two and not parities[i] and not matrix[i][i] and any(matrix[i]) for i in range(n)]
    scales = row_scales(matrix, demanded)
    plus = [scale(x, s) for x, s in zip(plus, scales)]
    new_spec = normalize(matrix, parities, demanded, reorder=False, name=spec.name, param_group=spec.param_group)
    logger.debug(f"reflected {spec.name} in node {k + 1}: roots {roots}")
    return SimpleRootSystem(roots=roots, positive=plus, negative=minus, spec=new_spec)


# --- Equivalence of Cartan matrices ---

def substituted(spec: CartanSpec, image: Scalar) -> Optional[CartanSpec]:
    """The matrix with a ↦ image in every entry; None where the map is undefined."""
    try:
        offdiag = {key: substitute(v, image) for key, v in spec.offdiag.items()}
    except (DivisionByZero, IndeterminateSubstitution):
        return None
    return CartanSpec(list(spec.marks), {k: v for k, v in offdiag.items() if v})


def parameter_orbit(spec: CartanSpec) -> List[CartanSpec]:
    if not (spec.param_group and spec.is_parametric()):
        return [spec]
    return [v for v in (substituted(spec, img) for img in PARAM_GROUPS.get(spec.param_group, [A])) if v]


def _row_normal_key(spec: CartanSpec, order: Sequence[int]) -> tuple:
    key = []
    for i in order:
        row = [spec.entry(i, j) for j in order]
        diagonal = spec.entry(i, i)
        inv = (diagonal or next((v for v in row if v), ONE)).inv()
        mark = spec.marks[i]
        if mark is DiagonalMark.TWO:
            mark = DiagonalMark.EV_EVEN
        key.append((mark.value, tuple((v * inv).sort_key() for v in row)))
    return tuple(key)


def equivalence_key(spec: CartanSpec) -> tuple:
    """Invariant of a normalized Cartan matrix under rescaling, simultaneous permutation and parameter maps."""
    best = None
    for variant in parameter_orbit(spec):
        for order in itertools.permutations(range(spec.n)):
            key = _row_normal_key(variant, order)
            if best is None or key < best:
                best = key
    return best


def enumerate_root_systems(ca: CartanAlgebra, max_systems: int = 5000) -> Dict[tuple, SimpleRootSystem]:
    """Breadth-first closure under reflections; one representative per equivalence class."""
    start = initial_system(ca)
    seen = {start.root_set}
    queue = deque([start])
    classes: Dict[tuple, SimpleRootSystem] = {equivalence_key(start.spec): start}
    while queue and len(seen) < max_systems:
        system = queue.popleft()
        for k in range(system.spec.n):
            try:
                nxt = reflect(ca, system, k)
            except ReflectionUndefined as exc:
                logger.debug(f"skipping reflection: {exc.detail}")
                continue
            if nxt.root_set in seen:
                continue
            seen.add(nxt.root_set)
            queue.append(nxt)
            classes.setdefault(equivalence_key(nxt.spec), nxt)
    logger.info(f"{ca.spec.name}: {len(seen)} simple root systems, {len(classes)} classes")
    return classes

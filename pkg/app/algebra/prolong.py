"""Complete and partial CTS prolongs (g_−, g_0)_{*,N} inside vect(m;N|n).

Degree k is the kernel of D ↦ ([D, w] mod g_{k+deg w})_w over all degree-k
fields u^(r)∂_c, w running over the basis of g_−. Residues are reduced
against the echelon of the target component and their keys interned, so the
elimination runs on bitsets whenever the data are GF(2)-valued.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from app.algebra.divpow import Coordinates, field_algebra, field_bracket, format_field
from app.algebra.embed import Realization
from app.algebra.linalg import Echelon, Vec, axpy, kernel_of_images
from app.algebra.liesuper import LieSuperAlgebra
from app.algebra.scalar import ONE
from app.core.config import settings
from app.core.exceptions import NotSubmodule
from app.core.log_config import logger


class _Engine:
    """Components found so far with one echelon each."""

    def __init__(self, rz: Realization):
        self.ctx: Coordinates = rz.context
        self.negative: List[Tuple[int, Vec]] = [(rz.degrees[i], rz.fields[i]) for i in rz.negative]
        self.components: Dict[int, List[Vec]] = {}
        self.echelons: Dict[int, Echelon] = {}
        for d in sorted({deg for deg, _ in self.negative}):
            self.set_component(d, [D for deg, D in self.negative if deg == d])

    def set_component(self, d: int, fields: Sequence[Vec]) -> None:
        ech = Echelon()
        kept = [D for D in fields if ech.add(D)[0]]
        self.components[d] = kept
        self.echelons[d] = ech

    def residue(self, D: Vec, k: int, w_degree: int, w: Vec) -> Vec:
        bracket = field_bracket(D, w)
        ech = self.echelons.get(k + w_degree)
        if ech is None or not bracket:
            return bracket
        return ech.reduce(bracket)[0]

    def inside(self, vec: Vec, d: int) -> bool:
        if not vec:
            return True
        ech = self.echelons.get(d)
        return ech is not None and ech.contains(vec)

    def solve(self, k: int, pool: Optional[Sequence[Vec]] = None) -> List[Vec]:
        """Basis of {D of degree k (in span(pool) if given) : [D, g_−] ⊆ computed components}."""
        out: List[Vec] = []
        for parity in (0, 1):
            if pool is None:
                domain = [{t: ONE} for t in self.ctx.field_terms(k, parity)]
            else:
                domain = [D for D in pool if self.ctx.field_parity(D) == parity]
            if not domain:
                continue
            index: Dict[Tuple[int, int], int] = {}
            images = []
            for D in domain:
                image: Vec = {}
                for j, (w_degree, w) in enumerate(self.negative):
                    for key, c in self.residue(D, k, w_degree, w).items():
                        image[index.setdefault((j, key), len(index))] = c
                images.append(image)
            for combo in kernel_of_images(images):
                D: Vec = {}
                for i, c in sorted(combo.items()):
                    axpy(D, c, domain[i])
                if D:
                    out.append(D)
        return out


@dataclass
class CoordinateConstraint:
    """What a prolong demands of one shearing entry."""
    coordinate: str
    free: bool
    bound: int
    max_exponent: int

    def __str__(self) -> str:
        return "FREE" if self.free else f"BOUNDED {self.bound}"


@dataclass
class ProlongResult:
    realization: Realization
    components: Dict[int, List[Vec]]
    degree_cap: int
    stabilized: bool = False
    partial: bool = False
    full_g0: bool = False
    growth: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    timings: Dict[int, float] = field(default_factory=dict)
    N_constraints: Optional[List[CoordinateConstraint]] = None
    _engine: Optional[_Engine] = field(default=None, repr=False)

    @property
    def context(self) -> Coordinates:
        return self.realization.context

    @property
    def N_used(self) -> Tuple[int, ...]:
        return self.context.N

    @property
    def depth(self) -> int:
        return self.realization.depth

    @property
    def top(self) -> int:
        return max(self.components)

    def dims(self) -> Dict[int, int]:
        return {d: len(self.components[d]) for d in sorted(self.components)}

    @property
    def total_dims(self) -> List[int]:
        return [len(self.components[d]) for d in sorted(self.components)]

    @property
    def total(self) -> int:
        return sum(self.total_dims)

    def positive_dims(self) -> List[int]:
        return [len(self.components[d]) for d in sorted(self.components) if d > 0]

    def fields(self) -> List[Vec]:
        return [D for d in sorted(self.components) for D in self.components[d]]

    def max_exponents(self) -> Tuple[int, ...]:
        return self.context.max_exponents(self.fields())

    def algebra(self, name: Optional[str] = None) -> LieSuperAlgebra:
        labels = []
        for d in sorted(self.components):
            fixed = [lab for lab, deg in zip(self.realization.labels, self.realization.degrees) if deg == d]
            count = len(self.components[d])
            if len(fixed) == count:
                labels.extend(fixed)
            else:
                labels.extend(f"g{d}_{i + 1}" for i in range(count))
        return field_algebra(self.context, self.fields(), labels, name=name or f"prolong({self.realization.name})")

    def violations(self) -> List[str]:
        """Pairs breaking [g_k, g_−j] ⊆ g_{k−j}; empty when the defining property holds."""
        engine = self._engine or _Engine(self.realization)
        for d, fields in self.components.items():
            engine.set_component(d, fields)
        report = []
        for k in sorted(self.components):
            if k < 0:
                continue
            for i, D in enumerate(self.components[k]):
                for w_degree, w in engine.negative:
                    if not engine.inside(field_bracket(D, w), k + w_degree):
                        report.append(f"degree {k} element {i + 1}: bracket with {format_field(self.context, w)}")
        return report

    def to_dict(self) -> dict:
        return {
            "input": self.realization.name,
            "N_used": list(self.N_used),
            "dims_by_degree": [[d, n] for d, n in self.dims().items()],
            "total": self.total,
            "N_constraints": [str(c) for c in self.N_constraints] if self.N_constraints is not None else None,
            "stabilized": self.stabilized,
            "degree_cap": self.degree_cap,
            "timings": {str(k): round(v, 4) for k, v in self.timings.items()},
        }


def default_degree_cap(rz: Realization) -> int:
    if settings.DEFAULT_DEGREE_CAP is not None:
        return settings.DEFAULT_DEGREE_CAP
    return 3 * len(rz.negative) + 4


def _top_field_degree(ctx: Coordinates) -> int:
    return ctx.top_degree - min(ctx.degrees)


def _record_growth(result: ProlongResult, k: int) -> None:
    previous = result.growth.get(k - 1, (0,) * result.context.size)
    current = result.context.max_exponents(result.components[k])
    result.growth[k] = tuple(max(a, b) for a, b in zip(previous, current))


def _start(rz: Realization, N: Optional[Sequence[int]], degree_cap: Optional[int], full_g0: bool,
           partial: bool = False) -> ProlongResult:
    if N is None:
        N = rz.shearing(default=settings.SENTINEL_LO)
    rz = rz.in_shearing(N)
    cap = degree_cap if degree_cap is not None else default_degree_cap(rz)
    engine = _Engine(rz)
    result = ProlongResult(rz, engine.components, cap, partial=partial, full_g0=full_g0, _engine=engine)
    started = time.perf_counter()
    g0 = engine.solve(0) if full_g0 else rz.fields_of_degree(0)
    engine.set_component(0, g0)
    result.timings[0] = time.perf_counter() - started
    result.growth[0] = rz.context.max_exponents(rz.fields + engine.components[0])
    return result


def prolong_step(current: ProlongResult, k: int) -> ProlongResult:
    """Compute g_k from the components below it (in place) and return the result."""
    engine = current._engine
    if engine is None:
        raise ValueError("prolong_step needs a result produced by this module")
    started = time.perf_counter()
    if k > _top_field_degree(current.context):
        fields: List[Vec] = []
    else:
        fields = engine.solve(k)
    engine.set_component(k, fields)
    current.timings[k] = time.perf_counter() - started
    _record_growth(current, k)
    logger.debug(f"prolong {current.realization.name}: dim g_{k} = {len(engine.components[k])}")
    if not fields:
        current.stabilized = True
    return current


def _run(result: ProlongResult, first: int) -> ProlongResult:
    last = min(result.degree_cap, _top_field_degree(result.context))
    for k in range(first, last + 1):
        prolong_step(result, k)
        if result.stabilized:
            del result.components[k]
            result.growth.pop(k, None)
            break
    else:
        result.stabilized = last < result.degree_cap
    logger.info(
        f"prolong {result.realization.name} N={result.N_used}: dims {result.total_dims}, "
        f"{'stabilized' if result.stabilized else 'cap reached'}"
    )
    return result


def complete_prolong(rz: Realization, N: Optional[Sequence[int]] = None, degree_cap: Optional[int] = None,
                     full_g0: bool = False) -> ProlongResult:
    """The complete prolong up to ``degree_cap``; reaching the cap is flagged, not an error.

    ``N`` defaults to the declared pattern with symbolic entries at the low
    sentinel; ``full_g0`` recomputes g_0 as everything of degree 0 that
    normalizes g_−.
    """
    return _run(_start(rz, N, degree_cap, full_g0), 1)


def partial_prolong(rz: Realization, V1: Sequence[Vec], N: Optional[Sequence[int]] = None,
                    degree_cap: Optional[int] = None) -> ProlongResult:
    """Prolong with g_1 := V1.

    Raises:
        NotSubmodule: If V1 is not inside the complete g_1 or not stable under g_0.
    """
    result = _start(rz, N, degree_cap, full_g0=False, partial=True)
    engine = result._engine
    complete_g1 = Echelon()
    for D in engine.solve(1):
        complete_g1.add(D)
    seed = Echelon()
    basis = []
    for D in V1:
        if result.context.field_degree(D) != 1 or not complete_g1.contains(D):
            raise NotSubmodule(f"{format_field(result.context, D)} is not in the complete g_1")
        if seed.add(D)[0]:
            basis.append(D)
    for a in engine.components[0]:
        for D in basis:
            if not seed.contains(field_bracket(a, D)):
                raise NotSubmodule(
                    f"[{format_field(result.context, a)}, {format_field(result.context, D)}] leaves V1"
                )
    engine.set_component(1, basis)
    _record_growth(result, 1)
    if not basis:
        del engine.components[1]
        result.stabilized = True
        return result
    return _run(result, 2)


def shearing_constraints(result: ProlongResult, probe_cap: Optional[int] = None) -> List[CoordinateConstraint]:
    """Per-coordinate FREE/BOUNDED verdicts from two sentinel runs of the same prolong.

    A coordinate is FREE when its maximal exponent is still growing over the
    last ``depth`` degrees of the probe, or reaches the low sentinel's bound.
    Otherwise it is BOUNDED by the smallest k with 2^k − 1 ≥ that exponent.
    A run that stabilizes never counts as growing. Both sentinels must agree;
    a disagreement marks the coordinate FREE. The verdicts are stored on
    ``result.N_constraints`` too.
    """
    cap = probe_cap if probe_cap is not None else settings.SHEARING_PROBE_CAP
    rz = result.realization
    ctx = rz.context
    seed = result.components.get(1, []) if result.partial else None
    verdicts = []
    runs = []
    for sentinel in (settings.SENTINEL_LO, settings.SENTINEL_HI):
        N = tuple(1 if ctx.parities[c] else sentinel for c in range(ctx.size))
        if seed is not None:
            runs.append(partial_prolong(rz, seed, N=N, degree_cap=cap))
        else:
            runs.append(complete_prolong(rz, N=N, degree_cap=cap, full_g0=result.full_g0))
    lo_bound = (1 << settings.SENTINEL_LO) - 1
    for c in range(ctx.size):
        per_run = []
        for run in runs:
            top = max(run.growth)
            earlier = run.growth.get(max(0, top - max(1, rz.depth)), run.growth[0])
            final = run.growth[top][c]
            per_run.append((final, not run.stabilized and final > earlier[c]))
        (lo_exp, lo_grew), (hi_exp, hi_grew) = per_run
        free = not ctx.parities[c] and (lo_grew or hi_grew or lo_exp >= lo_bound or lo_exp != hi_exp)
        verdicts.append(CoordinateConstraint(ctx.name(c), free, max(1, hi_exp.bit_length()), hi_exp))
    result.N_constraints = verdicts
    logger.info(f"shearing constraints of {rz.name}: {[str(v) for v in verdicts]}")
    return verdicts

import time
from typing import List, Optional, Sequence, Tuple

from app.algebra.divpow import parse_field
from app.algebra.embed import Realization, fixture, realize
from app.algebra.identify import identify, load_catalog, top_verdicts
from app.algebra.liesuper import LieSuperAlgebra
from app.algebra.linalg import Vec
from app.algebra.prolong import (
    CoordinateConstraint,
    ProlongResult,
    complete_prolong,
    partial_prolong,
    shearing_constraints,
)
from app.core.exceptions import BaseEngineError, InvalidParams
from app.core.log_config import logger
from app.schemas.cartan import RunConfig, SpecSource
from app.schemas.catalog import TableRow
from app.schemas.prolong import (
    PartialProlongRequest,
    ProlongReport,
    ProlongRequest,
    ReproduceCell,
    ReproduceReport,
)
from app.services.cartan_service import CartanService


def probe_constraints(rz: Realization, full_g0: bool = False,
                      V1: Optional[Sequence[Vec]] = None) -> List[CoordinateConstraint]:
    """FREE/BOUNDED verdicts for the prolong of ``rz`` (partial when ``V1`` is given)."""
    N = rz.required_shearing()
    if V1 is not None:
        seed = partial_prolong(rz, V1, N=N, degree_cap=1)
    else:
        seed = complete_prolong(rz, N=N, degree_cap=0, full_g0=full_g0)
    return shearing_constraints(seed)


def instantiate_shearing(rz: Realization, constraints: Sequence[CoordinateConstraint], free: int) -> Tuple[int, ...]:
    """``free`` for every FREE coordinate, the bound elsewhere, never below what the fields need."""
    return tuple(
        max(need, free if c.free else c.bound)
        for need, c in zip(rz.required_shearing(), constraints)
    )


class ProlongService:
    """Service to realize, prolong, identify and reproduce."""

    def __init__(self, cartan: CartanService):
        self.cartan = cartan

    def realization(self, request: ProlongRequest) -> Tuple[Realization, Optional[LieSuperAlgebra]]:
        """The realization to prolong and, for Cartan sources, the full graded algebra."""
        if request.fixture is not None:
            return fixture(request.fixture, request.fixture_variant), None
        if request.source is None or request.r is None:
            raise InvalidParams("A prolong needs a fixture, or a source together with a grading r")
        graded = self.cartan.graded(request.source, request.r)
        r = "".join(str(x) for x in graded.r)
        rz = realize(graded.algebra, name=f"{graded.algebra.meta.get('name')} r=({r})")
        return rz, graded.algebra

    def _prolong(self, rz: Realization, request: ProlongRequest,
                 V1: Optional[List[Vec]] = None) -> ProlongResult:
        constraints = None
        if request.constraints or request.free is not None:
            constraints = probe_constraints(rz, request.full_g0, V1)
        N = request.N
        if N is None and request.free is not None:
            N = instantiate_shearing(rz, constraints, request.free)
        if V1 is not None:
            result = partial_prolong(rz, V1, N=N, degree_cap=request.degree_cap)
        else:
            result = complete_prolong(rz, N=N, degree_cap=request.degree_cap, full_g0=request.full_g0)
        result.N_constraints = constraints
        return result

    def prolong(self, request: ProlongRequest, config: RunConfig) -> Tuple[ProlongResult, ProlongReport]:
        rz, source = self.realization(request)
        result = self._prolong(rz, request)
        return result, self.report(result, source, request, config)

    def partial_prolong(self, request: PartialProlongRequest,
                        config: RunConfig) -> Tuple[ProlongResult, ProlongReport]:
        rz, source = self.realization(request)
        V1 = [parse_field(rz.context, text) for text in request.V1]
        result = self._prolong(rz, request, V1)
        return result, self.report(result, source, request, config)

    def report(self, result: ProlongResult, source: Optional[LieSuperAlgebra], request: ProlongRequest,
               config: RunConfig) -> ProlongReport:
        verdicts = identify(result, source=source) if request.identify else []
        return ProlongReport(
            config=config,
            input=result.realization.name,
            N_used=list(result.N_used),
            dims_by_degree=result.dims(),
            total=result.total,
            stabilized=result.stabilized,
            degree_cap=result.degree_cap,
            N_constraints=[str(c) for c in result.N_constraints] if result.N_constraints is not None else None,
            warnings=list(result.realization.warnings),
            verdicts=[v.to_model() for v in verdicts],
            top_verdicts=top_verdicts(verdicts),
            timings={str(k): round(v, 4) for k, v in result.timings.items()},
        )

    # --- Table reproduction ---

    def reproduce_row(self, row: TableRow) -> List[ReproduceCell]:
        started = time.perf_counter()
        try:
            graded = self.cartan.graded(SpecSource(preset=row.preset, args=row.args, variant=row.variant), row.r)
            rz = realize(graded.algebra, name=row.label())
        except BaseEngineError as exc:
            return [ReproduceCell(row=row.label(), N=str(n), expected=row.expected, passed=False, got=[],
                                  detail=f"{type(exc).__name__}: {exc.detail}") for n in row.N]
        constraints = None
        cells = []
        for nspec in row.N:
            try:
                if nspec.values is not None:
                    N = tuple(nspec.values)
                else:
                    constraints = constraints or probe_constraints(rz)
                    N = instantiate_shearing(rz, constraints, nspec.free)
                result = complete_prolong(rz, N=N, degree_cap=row.degree_cap)
                result.N_constraints = constraints
                verdicts = identify(result, source=graded.algebra, outer=row.outer)
            except BaseEngineError as exc:
                cells.append(ReproduceCell(row=row.label(), N=str(nspec), expected=row.expected, passed=False,
                                           got=[], detail=f"{type(exc).__name__}: {exc.detail}"))
                continue
            names = top_verdicts(verdicts)
            if row.expected == "self":
                passed = any(v.exact and v.kind == "self" for v in verdicts)
            else:
                passed = row.expected in names
            detail = ""
            if not passed:
                wanted = [v for v in verdicts if v.name == row.expected or (row.expected == "self" and v.kind == "self")]
                detail = "; ".join(wanted[0].mismatches) if wanted else "no candidate of that name applies"
            cells.append(ReproduceCell(
                row=row.label(), N=f"N={result.N_used}", expected=row.expected, passed=passed,
                got=names, dims_by_degree=result.dims(), detail=detail,
            ))
        logger.info(f"reproduced {row.label()} in {time.perf_counter() - started:.2f}s")
        return cells

    def reproduce(self, table: str, config: RunConfig, skip_slow: bool = False) -> ReproduceReport:
        catalog = load_catalog()
        rows = catalog.tables.get(table)
        if rows is None:
            raise InvalidParams(f"Unknown table '{table}'; known: {', '.join(catalog.tables)}")
        cells, skipped = [], []
        for row in rows:
            if row.slow and skip_slow:
                skipped.append(row.label())
                continue
            cells.extend(self.reproduce_row(row))
        report = ReproduceReport(config=config, table=table, cells=cells, skipped=skipped)
        logger.info(f"table {table}: {sum(c.passed for c in cells)}/{len(cells)} cells pass, {len(skipped)} skipped")
        return report

"""Recognizing computed prolongs: dimension formulas, per-degree oracles and catalog matching."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.algebra.divpow import Coordinates
from app.algebra.embed import Realization, fixture, superize
from app.algebra.liesuper import LieSuperAlgebra
from app.algebra.prolong import ProlongResult, complete_prolong
from app.algebra.series import h_i
from app.core.config import settings
from app.core.exceptions import InvalidParams, NotApplicable, SpecFileError
from app.core.log_config import logger
from app.schemas.catalog import CatalogEntry, CatalogFile, VerdictModel

CATALOG_FILE = "catalog.json"
CONCLUSIVE_DEGREES = 6
MAX_PERMUTATIONS = 24
MAX_ORACLE_MONOMIALS = 1 << 12

SDim = Tuple[int, int]


# --- Closed forms ---

def _int(params: Dict[str, object], key: str, low: int = 1) -> int:
    try:
        value = int(params[key])
    except (KeyError, TypeError, ValueError):
        raise InvalidParams(f"Parameter '{key}' is required and must be an integer") from None
    if value < low:
        raise InvalidParams(f"Parameter '{key}' must be at least {low}, got {value}")
    return value


def _sign(params: Dict[str, object]) -> int:
    sign = str(params.get("sign", "+"))
    if sign not in ("+", "-"):
        raise InvalidParams(f"sign must be '+' or '-', got '{sign}'")
    return 1 if sign == "+" else -1


def _shearing_total(params: Dict[str, object]) -> int:
    N = params.get("N")
    if not isinstance(N, (list, tuple)) or not N or any(int(n) < 1 for n in N):
        raise InvalidParams("Parameter 'N' must be a non-empty list of positive integers")
    return sum(int(n) for n in N)


def _o_odd(p):
    k = _int(p, "k")
    return 2 * k * k + k, 0


def _oc(parity: int, shift: int):
    def formula(p):
        k = _int(p, "k", 2)
        if k % 2 != parity:
            raise InvalidParams(f"k must be {'odd' if parity else 'even'} here, got {k}")
        return 2 * k * k - k + _sign(p) * shift, 0
    return formula


def _oo_odd(p):
    ke, ko = _int(p, "k_ev"), _int(p, "k_od")
    return 2 * ke * ke + ke + 2 * ko * ko + ko, 2 * ko * (2 * ke + 1)


def _ooc(parity: int, shift: int):
    def formula(p):
        ke, ko = _int(p, "k_ev"), _int(p, "k_od")
        if (ke + ko) % 2 != parity:
            raise InvalidParams(f"k_ev + k_od must be {'odd' if parity else 'even'} here, got {ke + ko}")
        return 2 * ke * ke - ke + 2 * ko * ko - ko + _sign(p) * shift, 4 * ke * ko
    return formula


def _pec(parity: int, shift: int):
    def formula(p):
        m = _int(p, "m", 3)
        if m % 2 != parity:
            raise InvalidParams(f"m must be {'odd' if parity else 'even'} here, got {m}")
        return m * m + _sign(p) * shift, m * m - m
    return formula


def _vect(p):
    return len(p["N"]) * (1 << _shearing_total(p)), 0


def _svect(p):
    return (len(p["N"]) - 1) * (1 << _shearing_total(p)) + 1, 0


def _functions_mod_constants(p):
    return (1 << _shearing_total(p)) - 1, 0


def _contact(p):
    return 1 << _shearing_total(p), 0


def _brown_L(p):
    if len(p.get("N") or []) != 3:
        raise InvalidParams("brown_L takes three shearing entries")
    return _svect(p)[0] + 2 * _functions_mod_constants(p)[0], 0


FORMULAS = {
    "o_odd": _o_odd,
    "oc1": _oc(0, 2),
    "oc2": _oc(1, 1),
    "oo_odd": _oo_odd,
    "ooc1": _ooc(0, 2),
    "ooc2": _ooc(1, 1),
    "pec1": _pec(0, 2),
    "pec2": _pec(1, 1),
    "vect": _vect,
    "svect": _svect,
    "h_Pi": _functions_mod_constants,
    "k_contact": _contact,
    "brown_L": _brown_L,
}


def dim_formula(name: str, params: Dict[str, object]) -> SDim:
    """Closed-form superdimension (even, odd) of a catalogued family.

    ``sign`` selects between the CM relative ("+") and the simple algebra ("-").

    Raises:
        InvalidParams: If the family is unknown or the parameters violate its validity conditions.
    """
    formula = FORMULAS.get(name)
    if formula is None:
        raise InvalidParams(f"No dimension formula for '{name}'; known: {', '.join(FORMULAS)}")
    return formula(dict(params))


def sdim_text(sdim: SDim) -> str:
    return f"{sdim[0]}|{sdim[1]}" if sdim[1] else str(sdim[0])


# --- Per-degree oracles ---

def monomial_counts(ctx: Coordinates) -> Dict[int, int]:
    """Number of divided-power monomials of each weighted degree in O(m;N|n)."""
    counts = {0: 1}
    for c in range(ctx.size):
        step = ctx.degrees[c]
        nxt: Dict[int, int] = defaultdict(int)
        for d, n in counts.items():
            for e in range(ctx.bound(c) + 1):
                nxt[d + e * step] += n
        counts = dict(nxt)
    return counts


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise NotApplicable(message)


def _vect_profile(ctx: Coordinates) -> Dict[int, int]:
    c = monomial_counts(ctx)
    out: Dict[int, int] = defaultdict(int)
    for w in ctx.degrees:
        for d, n in c.items():
            out[d - w] += n
    return dict(out)


def _svect_profile(ctx: Coordinates) -> Dict[int, int]:
    _require(not any(ctx.parities), "svect is catalogued for even coordinates")
    c = monomial_counts(ctx)
    return {d: n - c.get(d, 0) for d, n in _vect_profile(ctx).items()}


def _hamiltonian_profile(ctx: Coordinates) -> Dict[int, int]:
    _require(set(ctx.degrees) == {1} and not any(ctx.parities), "needs even coordinates of degree 1")
    return {d - 2: n for d, n in monomial_counts(ctx).items() if d > 0}


def _contact_profile(ctx: Coordinates) -> Dict[int, int]:
    _require(ctx.size == 3 and list(ctx.degrees) == [2, 1, 1], "needs coordinates t, p, q of degrees (2, 1, 1)")
    return {d - 2: n for d, n in monomial_counts(ctx).items()}


def _h_i_profile(ctx: Coordinates) -> Dict[int, int]:
    _require(set(ctx.degrees) == {1} and not any(ctx.parities), "needs even coordinates of degree 1")
    _require(1 << sum(ctx.N) <= MAX_ORACLE_MONOMIALS, f"N={ctx.N} is too large to construct h_I")
    return _cached_h_i(tuple(ctx.N))


@lru_cache(maxsize=32)
def _cached_h_i(N: Tuple[int, ...]) -> Dict[int, int]:
    return h_i(N).dims_by_degree()


ORACLES = {
    "vect": _vect_profile,
    "svect": _svect_profile,
    "h_Pi": _hamiltonian_profile,
    "h_I": _h_i_profile,
    "k_contact": _contact_profile,
}


def oracle_profile(name: str, ctx: Coordinates) -> Dict[int, int]:
    """Per-degree dimensions of a series member over the given coordinates.

    Raises:
        NotApplicable: If the coordinates do not have the shape the series needs.
        InvalidParams: If no oracle has that name.
    """
    oracle = ORACLES.get(name)
    if oracle is None:
        raise InvalidParams(f"No oracle named '{name}'; known: {', '.join(ORACLES)}")
    return {d: n for d, n in sorted(oracle(ctx).items()) if n}


# --- Catalog ---

@lru_cache(maxsize=1)
def load_catalog() -> CatalogFile:
    path = settings.DATA_DIR / CATALOG_FILE
    try:
        catalog = CatalogFile.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as exc:
        raise SpecFileError(f"Cannot read catalog {path.name}: {exc}") from None
    logger.info(f"loaded catalog: {len(catalog.entries)} entries, tables {', '.join(catalog.tables)}")
    return catalog


@dataclass
class Verdict:
    name: str
    kind: str
    exact: bool
    mismatches: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    outer: int = 0

    def to_model(self) -> VerdictModel:
        return VerdictModel(name=self.name, kind=self.kind, exact=self.exact,
                            mismatches=self.mismatches, notes=self.notes)


def _compare(expected: Dict[int, int], result: ProlongResult, prefix: bool = False,
             tolerate: Sequence[int] = ()) -> Tuple[List[str], List[str]]:
    got = result.dims()
    top = max(expected) if expected else 0
    lenient = {top + t for t in tolerate}
    mismatches, notes = [], []
    for d in sorted(set(got) | set(expected)):
        if prefix and d not in expected:
            continue
        if d > result.top and not result.stabilized:
            continue
        want, have = expected.get(d, 0), got.get(d, 0)
        if want == have:
            continue
        if d in lenient and abs(want - have) <= 1:
            notes.append(f"degree {d}: {have} against {want}, within the known off-by-one")
        else:
            mismatches.append(f"degree {d}: expected {want}, got {have}")
    return mismatches, notes


def _shape_checks(entry: CatalogEntry, result: ProlongResult) -> List[str]:
    out = []
    ctx = result.context
    if entry.depth is not None and entry.depth != result.depth:
        out.append(f"depth {result.depth}, expected {entry.depth}")
    if entry.coordinate_degrees is not None and sorted(entry.coordinate_degrees) != sorted(ctx.degrees):
        out.append(f"coordinate degrees {sorted(ctx.degrees)}, expected {sorted(entry.coordinate_degrees)}")
    if entry.odd_coordinates is not None and sum(ctx.parities) != len(entry.odd_coordinates):
        out.append(f"{sum(ctx.parities)} odd coordinates, expected {len(entry.odd_coordinates)}")
    constraints = [str(c) for c in result.N_constraints] if result.N_constraints is not None else None
    if constraints is not None:
        if entry.constraints is not None and sorted(entry.constraints) != sorted(constraints):
            out.append(f"N constraints {constraints}, expected {entry.constraints}")
        if entry.all_free and any(c != "FREE" for c, p in zip(constraints, ctx.parities) if not p):
            out.append(f"N constraints {constraints}, expected every even coordinate FREE")
    if entry.total is not None and result.stabilized and result.total != entry.total:
        out.append(f"total {result.total}, expected {entry.total}")
    return out


def _degree_groups(degrees: Sequence[int]) -> Dict[int, List[int]]:
    groups: Dict[int, List[int]] = defaultdict(list)
    for c, d in enumerate(degrees):
        groups[d].append(c)
    return groups


def shearing_arrangements(N: Sequence[int], source_degrees: Sequence[int],
                          target_degrees: Sequence[int]) -> List[Tuple[int, ...]]:
    """Ways to carry N onto coordinates of the same degrees, permuting within each degree."""
    source, target = _degree_groups(source_degrees), _degree_groups(target_degrees)
    if {d: len(v) for d, v in source.items()} != {d: len(v) for d, v in target.items()}:
        return []
    per_degree = []
    for d, slots in target.items():
        values = [N[c] for c in source[d]]
        per_degree.append((slots, sorted(set(itertools.permutations(values)))))
    out = []
    for choice in itertools.product(*(options for _, options in per_degree)):
        arranged = [0] * len(target_degrees)
        for (slots, _), values in zip(per_degree, choice):
            for slot, value in zip(slots, values):
                arranged[slot] = value
        out.append(tuple(arranged))
        if len(out) >= MAX_PERMUTATIONS:
            break
    return out


@lru_cache(maxsize=16)
def _fixture_dims(name: str, variant: Optional[str], N: Tuple[int, ...], cap: int) -> Tuple[Tuple[int, int], ...]:
    rz = fixture(name, variant)
    result = complete_prolong(rz, N=N, degree_cap=cap)
    return tuple(result.dims().items())


def _fixture_verdict(entry: CatalogEntry, result: ProlongResult) -> Optional[Verdict]:
    model_rz = fixture(entry.fixture, entry.variant)
    arrangements = shearing_arrangements(result.N_used, result.context.degrees, model_rz.context.degrees)
    if not arrangements:
        return None
    cap = result.degree_cap if result.stabilized else result.top
    best: Optional[Verdict] = None
    for N in arrangements:
        if any(n < need for n, need in zip(N, model_rz.required_shearing())):
            continue
        reference = dict(_fixture_dims(entry.fixture, entry.variant, N, cap))
        mismatches, notes = _compare(reference, result)
        verdict = Verdict(entry.name, entry.kind, not mismatches, mismatches, notes + [f"fixture {entry.fixture} at N={N}"])
        if best is None or len(verdict.mismatches) < len(best.mismatches):
            best = verdict
        if verdict.exact:
            break
    return best


def superized_fixture(entry: CatalogEntry) -> Realization:
    """The realization a superization entry reads its parity assignment on."""
    if entry.kind != "superization" or entry.fixture is None or not entry.odd_coordinates:
        raise NotApplicable(f"Catalog entry '{entry.name}' carries no parity assignment on a fixture")
    return superize(fixture(entry.fixture, entry.variant), entry.odd_coordinates)


def _oracle_verdict(entry: CatalogEntry, result: ProlongResult) -> Optional[Verdict]:
    try:
        expected = oracle_profile(entry.oracle, result.context)
    except NotApplicable:
        return None
    mismatches, notes = _compare(expected, result, tolerate=entry.tolerate)
    name = entry.name.format(m=result.context.size)
    return Verdict(name, entry.kind, not mismatches, mismatches, notes)


def _self_verdict(source: LieSuperAlgebra, result: ProlongResult, outer: Optional[int]) -> Verdict:
    expected = source.dims_by_degree()
    got = result.dims()
    mismatches = [f"degree {d}: expected at least {n}, got {got.get(d, 0)}"
                  for d, n in expected.items() if got.get(d, 0) < n]
    if not result.stabilized:
        mismatches.append("the prolong did not stabilize")
    extra = result.total - source.dim
    if outer is not None and extra != outer:
        mismatches.append(f"{extra} elements beyond the algebra, expected {outer} outer derivations")
    elif outer is None and extra and max(got) > max(expected):
        mismatches.append(f"grows past degree {max(expected)}")
    name = source.meta.get("name") or "g"
    if extra > 0:
        name = f"{name} + {extra} outer derivations"
    return Verdict(name, "self", not mismatches, mismatches, outer=extra)


def _entry_verdict(entry: CatalogEntry, result: ProlongResult, catalog: CatalogFile) -> Optional[Verdict]:
    if entry.kind == "self":
        return None
    if entry.kind == "oracle":
        verdict = _oracle_verdict(entry, result)
    elif entry.kind == "fixture":
        verdict = _fixture_verdict(entry, result)
    elif entry.kind == "superization":
        base = catalog.entry(entry.base)
        if base is None:
            raise SpecFileError(f"catalog entry '{entry.name}' refers to unknown base '{entry.base}'")
        inner = _entry_verdict(base, result, catalog)
        if inner is None:
            return None
        notes = list(inner.notes)
        if entry.fixture is not None:
            sctx = superized_fixture(entry).context
            notes.append(f"{entry.fixture} with {', '.join(entry.odd_coordinates)} odd: "
                         f"g_- of superdimension {sctx.m}|{sctx.size - sctx.m}")
        verdict = Verdict(entry.name, entry.kind, inner.exact, inner.mismatches, notes)
    else:
        mismatches, notes = _compare(entry.profile or {}, result, prefix=entry.prefix, tolerate=entry.tolerate)
        verdict = Verdict(entry.name, entry.kind, not mismatches, mismatches, notes)
    if verdict is None:
        return None
    shape = _shape_checks(entry, result)
    if shape:
        verdict.mismatches.extend(shape)
        verdict.exact = False
    return verdict


def identify(result: ProlongResult, source: Optional[LieSuperAlgebra] = None, outer: Optional[int] = None,
             catalog: Optional[CatalogFile] = None) -> List[Verdict]:
    """Rank catalog candidates against a prolong.

    Exact matches come first and are not ordered among themselves beyond their names; the
    rest follow by number of mismatches. ``source`` is the graded algebra whose non-positive
    part was prolonged, used to recognize the algebra itself (plus ``outer`` derivations).
    """
    catalog = catalog or load_catalog()
    verdicts = [v for v in (_entry_verdict(e, result, catalog) for e in catalog.entries) if v is not None]
    if source is not None:
        verdicts.append(_self_verdict(source, result, outer))
    if not result.stabilized and len(result.positive_dims()) < CONCLUSIVE_DEGREES:
        for v in verdicts:
            v.notes.append(f"inconclusive: only {len(result.positive_dims())} positive degrees computed")
    verdicts.sort(key=lambda v: (not v.exact, len(v.mismatches), v.name))
    exact = [v.name for v in verdicts if v.exact]
    logger.info(f"identify {result.realization.name}: {', '.join(exact) if exact else 'no exact match'}")
    return verdicts


def top_verdicts(verdicts: Sequence[Verdict]) -> List[str]:
    names: List[str] = []
    for v in verdicts:
        if v.exact and v.name not in names:
            names.append(v.name)
    return names

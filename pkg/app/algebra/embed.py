"""Realizations of graded pairs (g_−, g_0) by divided-power vector fields.

``realize`` builds the coinduced realization: functions on g_− are the dual of
U(g_−) with its ordered PBW basis b^s = b_1^{s_1}⋯b_m^{s_m}, the dual basis
multiplies as divided powers, and x ∈ g_{≤0} acts by φ ↦ φ(· x). The field of x
is Σ_s Σ_c ⟨x_c, b^s x⟩ x^(s) ∂_c; for a ∈ g_0 the pairing is taken with
[b^s, a] since g_0 kills the generating vector.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from app.algebra.divpow import (
    MAX_SHEARING,
    Coordinates,
    field_algebra,
    field_bracket,
    field_square,
    format_field,
    parse_field,
)
from app.algebra.linalg import Echelon, Vec, axpy
from app.algebra.liesuper import LieSuperAlgebra, center, derived, restrict
from app.algebra.scalar import ONE, Scalar
from app.core.config import settings
from app.core.exceptions import BadSeriesParams, InvalidParams, RealizationInconsistent, SpecFileError, UnknownFixture
from app.core.log_config import logger
from app.schemas.fixture import FixtureFile

Word = Tuple[int, ...]
Element = Dict[Word, Scalar]


@dataclass
class Realization:
    """Fields for a basis of g_{≤0} inside vect(m;N|n)."""
    context: Coordinates
    labels: List[str]
    fields: List[Vec]
    N_pattern: List[Union[int, str]]
    name: str = ""
    source: Optional[LieSuperAlgebra] = None
    source_fields: Optional[Dict[int, Vec]] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def degrees(self) -> List[int]:
        return [self.context.field_degree(D) for D in self.fields]

    def indices_of_degree(self, d: int) -> List[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def fields_of_degree(self, d: int) -> List[Vec]:
        return [self.fields[i] for i in self.indices_of_degree(d)]

    @property
    def negative(self) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d < 0]

    @property
    def depth(self) -> int:
        return max((-d for d in self.degrees if d < 0), default=0)

    def dims_by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def required_shearing(self) -> Tuple[int, ...]:
        """Smallest N whose O(m;N|n) contains every coefficient of the realization."""
        return tuple(max(1, e.bit_length()) for e in self.context.max_exponents(self.fields))

    def shearing(self, values: Optional[Dict[str, int]] = None, default: Optional[int] = None) -> Tuple[int, ...]:
        """Instantiate the declared N pattern; symbolic entries take ``values[name]`` or ``default``."""
        out = []
        for entry in self.N_pattern:
            if isinstance(entry, int):
                out.append(entry)
                continue
            value = (values or {}).get(entry, default)
            if value is None:
                raise InvalidParams(f"No value given for the shearing entry '{entry}'")
            out.append(int(value))
        return tuple(out)

    def in_shearing(self, N: Sequence[int]) -> "Realization":
        """The same fields read inside O(m;N|n)."""
        ctx = self.context.with_shearing(N)
        for D in self.fields:
            for key in D:
                if not ctx.in_range(ctx.split(key)[0]):
                    raise BadSeriesParams(f"N={tuple(N)} is too small for {format_field(ctx, D)}")
        return Realization(ctx, self.labels, self.fields, self.N_pattern, self.name,
                           self.source, self.source_fields, list(self.warnings))

    def with_fields(self, extra_labels: Sequence[str], extra_fields: Sequence[Vec]) -> "Realization":
        return Realization(self.context, self.labels + list(extra_labels), self.fields + list(extra_fields),
                           self.N_pattern, self.name, warnings=list(self.warnings))

    def algebra(self) -> LieSuperAlgebra:
        return field_algebra(self.context, self.fields, self.labels, name=self.name)

    def to_dict(self) -> dict:
        ctx = self.context
        return {
            "name": self.name,
            "coordinates": [
                {"name": ctx.name(c), "degree": ctx.degrees[c], "parity": ctx.parities[c]} for c in range(ctx.size)
            ],
            "N_pattern": list(self.N_pattern),
            "generators": [
                {"label": lab, "degree": deg, "field": format_field(ctx, D)}
                for lab, deg, D in zip(self.labels, self.degrees, self.fields)
            ],
            "warnings": list(self.warnings),
        }


# --- Normal ordering in U(g_−) ---

class _Ordering:
    """Straightening of words into the ordered PBW basis of U(g_−)."""

    def __init__(self, g: LieSuperAlgebra, basis: Sequence[int]):
        self.g = g
        self.basis = list(basis)
        self.pos = {b: c for c, b in enumerate(self.basis)}
        self.odd = [g.parity[b] for b in self.basis]
        self.m = len(self.basis)
        self._memo: Dict[Tuple[Word, int], Element] = {}

    def coords(self, vec: Vec) -> Dict[int, Scalar]:
        out = {}
        for k, v in vec.items():
            c = self.pos.get(k)
            if c is None:
                raise RealizationInconsistent(f"{self.g.labels[k]} appears in a bracket landing in g_-")
            out[c] = v
        return out

    @staticmethod
    def _bump(mono: Word, c: int, step: int) -> Word:
        return mono[:c] + (mono[c] + step,) + mono[c + 1:]

    def times(self, mono: Word, j: int) -> Element:
        """b^mono · b_j in the PBW basis."""
        key = (mono, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        last = max((c for c in range(self.m) if mono[c]), default=-1)
        if last < j or (last == j and not self.odd[j]):
            result: Element = {self._bump(mono, j, 1): ONE}
        elif last == j:
            rest = self._bump(mono, j, -1)
            result = self.times_vec({rest: ONE}, self.coords(self.g.sq(self.basis[j])))
        else:
            rest = self._bump(mono, last, -1)
            result = self.times_letter(self.times(rest, j), last)
            commutator = self.coords(self.g.br(self.basis[last], self.basis[j]))
            axpy(result, ONE, self.times_vec({rest: ONE}, commutator))
        self._memo[key] = result
        return result

    def times_letter(self, elem: Element, j: int) -> Element:
        out: Element = {}
        for mono, c in elem.items():
            axpy(out, c, self.times(mono, j))
        return out

    def times_vec(self, elem: Element, vec: Dict[int, Scalar]) -> Element:
        out: Element = {}
        for j, c in vec.items():
            axpy(out, c, self.times_letter(elem, j))
        return out


def _pbw_exponents(weights: Sequence[int], odd: Sequence[int], limit: int) -> List[Word]:
    out: List[Word] = []

    def walk(c: int, acc: List[int], total: int) -> None:
        if c == len(weights):
            out.append(tuple(acc))
            return
        top = 1 if odd[c] else limit // weights[c]
        for r in range(top + 1):
            if total + r * weights[c] > limit:
                break
            acc.append(r)
            walk(c + 1, acc, total + r * weights[c])
            acc.pop()

    walk(0, [], 0)
    return out


def _linear_part(ctx: Coordinates, s: Word, elem: Element, out: Vec) -> None:
    mono = ctx.pack(s)
    for c in range(ctx.size):
        unit = tuple(1 if t == c else 0 for t in range(ctx.size))
        coeff = elem.get(unit)
        if coeff:
            axpy(out, coeff, {ctx.term(mono, c): ONE})


def _generated_by_minus_one(g: LieSuperAlgebra, negative: Sequence[int]) -> bool:
    current = [{i: ONE} for i in negative if g.degrees[i] == -1]
    span = Echelon()
    for v in current:
        span.add(v)
    layer = current
    while layer:
        fresh = []
        for u in layer:
            for v in current:
                w = g.bracket(u, v)
                if w and span.add(w)[0]:
                    fresh.append(w)
            if g.parity_of(u) == 1:
                w = g.square(u)
                if w and span.add(w)[0]:
                    fresh.append(w)
        layer = fresh
    return len(span) == len(negative)


def realize(g: LieSuperAlgebra, name: Optional[str] = None) -> Realization:
    """Coinduced realization of the non-positive part of a Z-graded algebra.

    Raises:
        InvalidParams: If the algebra carries no grading or has no negative part.
        RealizationInconsistent: If the structure constants do not define g_{≤0}
            (for instance Jacobi fails) so the produced fields do not verify.
    """
    if g.degrees is None:
        raise InvalidParams("realize needs a Z-graded algebra")
    keep = [i for i in range(g.dim) if g.degrees[i] <= 0]
    if len(keep) < g.dim:
        g = restrict(g, keep, name=g.meta.get("name"))
    negative = sorted((i for i in range(g.dim) if g.degrees[i] < 0), key=lambda i: (g.degrees[i], i))
    zero = [i for i in range(g.dim) if g.degrees[i] == 0]
    if not negative:
        raise InvalidParams("The grading has no negative part")

    weights = [-g.degrees[b] for b in negative]
    odd = [g.parity[b] for b in negative]
    depth = max(weights)
    ctx = Coordinates(tuple(MAX_SHEARING for _ in negative), tuple(odd), tuple(weights))
    ordering = _Ordering(g, negative)
    exponents = _pbw_exponents(weights, odd, depth)
    degree_of = {s: sum(r * w for r, w in zip(s, weights)) for s in exponents}
    warnings: List[str] = []
    if not _generated_by_minus_one(g, negative):
        warnings.append("g_- is not generated by g_-1")

    source_fields: Dict[int, Vec] = {}
    for j, b in enumerate(negative):
        D: Vec = {}
        for s in exponents:
            if degree_of[s] + weights[j] <= depth:
                _linear_part(ctx, s, ordering.times(s, j), D)
        source_fields[b] = D
    for a in zero:
        action = [ordering.coords(g.br(b, a)) for b in negative]
        D = {}
        for s in exponents:
            if not degree_of[s]:
                continue
            word = [c for c in range(len(negative)) for _ in range(s[c])]
            elem: Element = {}
            for p, letter in enumerate(word):
                prefix = tuple(sum(1 for t in word[:p] if t == c) for c in range(len(negative)))
                piece = ordering.times_vec({prefix: ONE}, action[letter])
                for later in word[p + 1:]:
                    piece = ordering.times_letter(piece, later)
                axpy(elem, ONE, piece)
            _linear_part(ctx, s, elem, D)
        source_fields[a] = D

    labels, fields = [], []
    blocks: Dict[Tuple[int, int], Echelon] = {}
    for i in negative + zero:
        D = source_fields[i]
        if not D:
            warnings.append(f"{g.labels[i]} acts trivially on g_- and has no field")
            continue
        ech = blocks.setdefault((g.degrees[i], g.parity[i]), Echelon())
        if not ech.add(D)[0]:
            warnings.append(f"the field of {g.labels[i]} is dependent on earlier ones")
            continue
        labels.append(g.labels[i])
        fields.append(D)

    rz = Realization(ctx, labels, fields, [], name or g.meta.get("name") or "", g, source_fields, warnings)
    rz = rz.in_shearing(rz.required_shearing())
    rz.N_pattern = list(rz.context.N)
    report = verify_realization(rz, g)
    if report:
        raise RealizationInconsistent(f"Realization of {rz.name} fails: {'; '.join(report[:3])}")
    for w in warnings:
        logger.warning(f"realize {rz.name}: {w}")
    logger.info(f"realized {rz.name}: {len(negative)} coordinates, {len(fields)} fields, depth {depth}")
    return rz


# --- Verification ---

def _image(rz: Realization, vec: Vec) -> Optional[Vec]:
    out: Vec = {}
    for k, c in vec.items():
        D = rz.source_fields.get(k)
        if D is None:
            return None
        axpy(out, c, D)
    return out


def _sdims_by_degree(g: LieSuperAlgebra) -> Dict[int, Tuple[int, int]]:
    out: Dict[int, List[int]] = {}
    for deg, par in zip(g.degrees or [], g.parity):
        out.setdefault(deg, [0, 0])[par] += 1
    return {d: tuple(v) for d, v in sorted(out.items())}


def structure_invariants(g: LieSuperAlgebra, depth: int = 3) -> Dict[str, object]:
    """Basis-free invariants of a graded g_{≤0}; isomorphic algebras agree on all of them."""
    series = []
    current = g
    for _ in range(depth):
        current = derived(current)
        series.append(_sdims_by_degree(current) if current.degrees is not None else current.sdim)
        if current.dim == 0:
            break
    g0 = restrict(g, g.indices_of_degree(0))
    return {
        "superdimension by degree": _sdims_by_degree(g),
        "derived series": series,
        "center": len(center(g)),
        "derived g_0": derived(g0).sdim,
        "center of g_0": len(center(g0)),
    }


def verify_realization(rz: Realization, g: Optional[LieSuperAlgebra] = None, max_violations: int = 20) -> List[str]:
    """Violated conditions of a realization; an empty list means it is valid.

    With ``g`` (the abstract g_{≤0} the fields came from) brackets are compared
    with its structure constants. A realization that does not come from ``g``,
    such as a fixture, is compared with it up to basis change through
    ``structure_invariants``. Without ``g`` the fields must span a graded
    subalgebra of vect.
    """
    report: List[str] = []
    ctx = rz.context
    lab = rz.labels

    def note(msg: str) -> bool:
        report.append(msg)
        return len(report) >= max_violations

    degrees = []
    for i, D in enumerate(rz.fields):
        deg, par = ctx.field_degree(D), ctx.field_parity(D)
        degrees.append(deg)
        if not D or deg is None or par is None:
            if note(f"{lab[i]} is zero or not homogeneous"):
                return report
        elif deg > 0 and note(f"{lab[i]} has positive degree {deg}"):
            return report
        if any(not ctx.in_range(ctx.split(k)[0]) for k in D) and note(f"{lab[i]} leaves O(m;N|n) for N={ctx.N}"):
            return report

    used = set()
    negative = [i for i, d in enumerate(degrees) if d is not None and d < 0]
    if len(negative) != ctx.size and note(f"{len(negative)} negative fields for {ctx.size} coordinates"):
        return report
    for i in negative:
        free = [c for c in range(ctx.size) if c not in used and rz.fields[i].get(ctx.term(0, c)) == ONE
                and ctx.degrees[c] == -degrees[i]]
        if not free:
            if note(f"transitivity: {lab[i]} has no unit derivative in a free coordinate"):
                return report
        else:
            used.add(free[0])

    if g is not None and rz.source_fields is None:
        mine, theirs = structure_invariants(rz.algebra()), structure_invariants(g)
        for key, value in mine.items():
            if value != theirs[key] and note(f"{key}: {value} here, {theirs[key]} in {g.meta.get('name') or 'g'}"):
                return report
        return report

    if g is not None and rz.source_fields is not None:
        indices = sorted(rz.source_fields)
        for a_pos, a in enumerate(indices):
            for b in indices[a_pos + 1:]:
                want = _image(rz, g.br(a, b))
                got = field_bracket(rz.source_fields[a], rz.source_fields[b])
                if want != got and note(f"[{g.labels[a]}, {g.labels[b]}] is not realized"):
                    return report
            if g.parity[a]:
                want = _image(rz, g.sq(a))
                if want != field_square(rz.source_fields[a]) and note(f"{g.labels[a]}² is not realized"):
                    return report
        return report

    blocks: Dict[Tuple[int, int], Echelon] = {}
    for D in rz.fields:
        if D and ctx.field_degree(D) is not None:
            blocks.setdefault((ctx.field_degree(D), ctx.field_parity(D)), Echelon()).add(D)

    def inside(vec: Vec) -> bool:
        if not vec:
            return True
        key = next(iter(vec))
        ech = blocks.get((ctx.term_degree(key), ctx.term_parity(key)))
        return ech is not None and ech.contains(vec)

    for i in range(len(rz.fields)):
        for j in range(i + 1, len(rz.fields)):
            if not inside(field_bracket(rz.fields[i], rz.fields[j])):
                if note(f"[{lab[i]}, {lab[j]}] leaves the span"):
                    return report
        if ctx.field_parity(rz.fields[i]) == 1 and not inside(field_square(rz.fields[i])):
            if note(f"{lab[i]}² leaves the span"):
                return report
    return report


def correspondence_report(rz: Realization, images: Dict[str, Vec], bracket: Callable[[Vec, Vec], Vec],
                          target_dim: Optional[int] = None, max_violations: int = 20) -> List[str]:
    """Violations of ``label ↦ images[label]`` being a bracket-preserving bijection.

    Brackets of the realization are expanded in its own basis and compared with
    ``bracket`` applied to the images; with ``target_dim`` the images must also
    span a space of that dimension.
    """
    report: List[str] = []

    def note(msg: str) -> bool:
        report.append(msg)
        return len(report) >= max_violations

    missing = [lab for lab in rz.labels if lab not in images]
    if missing:
        return [f"no image for {', '.join(missing)}"]
    extra = sorted(set(images) - set(rz.labels))
    if extra and note(f"images of unknown generators {', '.join(extra)}"):
        return report

    span = Echelon()
    for lab in rz.labels:
        if not span.add(images[lab])[0] and note(f"image of {lab} depends on earlier images"):
            return report
    if target_dim is not None and len(rz.labels) != target_dim:
        if note(f"{len(rz.labels)} generators for a target of dimension {target_dim}"):
            return report

    g = rz.algebra()
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            want: Vec = {}
            for k, c in g.br(a, b).items():
                axpy(want, c, images[g.labels[k]])
            if want != bracket(images[g.labels[a]], images[g.labels[b]]):
                if note(f"[{g.labels[a]}, {g.labels[b]}] is not preserved"):
                    return report
    return report


# --- Fixtures ---

def fixture_checksum(model: FixtureFile) -> str:
    return hashlib.sha256("\n".join(model.checksum_lines()).encode("utf-8")).hexdigest()


def fixture_names() -> List[str]:
    return sorted(p.stem for p in (settings.DATA_DIR / "fixtures").glob("*.json"))


def load_fixture_file(name: str) -> FixtureFile:
    path = settings.DATA_DIR / "fixtures" / f"{name}.json"
    if not path.exists():
        raise UnknownFixture(f"Unknown fixture '{name}'; known: {', '.join(fixture_names())}")
    try:
        model = FixtureFile.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise SpecFileError(f"{path.name}: {exc.errors()[0]['msg']}") from None
    if fixture_checksum(model) != model.checksum:
        raise SpecFileError(f"{path.name}: checksum mismatch, the transcription was edited")
    return model


def fixture(name: str, variant: Optional[str] = None) -> Realization:
    """Load a transcribed realization; ``variant`` appends the named extra generators."""
    model = load_fixture_file(name)
    if variant is not None and variant not in model.variants:
        raise UnknownFixture(f"Fixture '{name}' has no variant '{variant}'")
    ctx = Coordinates(
        tuple(MAX_SHEARING for _ in model.coordinates),
        tuple(c.parity for c in model.coordinates),
        tuple(c.degree for c in model.coordinates),
    )
    generators = list(model.generators) + (list(model.variants[variant]) if variant else [])
    by_label: Dict[str, Vec] = {}
    labels, fields, warnings = [], [], []
    blocks: Dict[Tuple[int, int], Echelon] = {}
    for gen in generators:
        if gen.field is not None:
            D = parse_field(ctx, gen.field)
        else:
            missing = [lab for lab in gen.bracket if lab not in by_label]
            if missing:
                raise SpecFileError(f"{name}: '{gen.label}' brackets undefined labels {missing}")
            D = field_bracket(by_label[gen.bracket[0]], by_label[gen.bracket[1]])
        by_label[gen.label] = D
        if not D:
            raise SpecFileError(f"{name}: generator '{gen.label}' is zero")
        if ctx.field_degree(D) != gen.degree:
            raise SpecFileError(f"{name}: '{gen.label}' has degree {ctx.field_degree(D)}, declared {gen.degree}")
        ech = blocks.setdefault((gen.degree, ctx.field_parity(D)), Echelon())
        if not ech.add(D)[0]:
            warnings.append(f"{gen.label} is dependent on earlier generators")
            continue
        labels.append(gen.label)
        fields.append(D)
    rz = Realization(ctx, labels, fields, list(model.N_pattern), model.name + (f"+{variant}" if variant else ""),
                     warnings=warnings)
    rz = rz.in_shearing(rz.required_shearing())
    logger.debug(f"fixture {rz.name}: dims {rz.dims_by_degree()}")
    return rz


def superize(rz: Realization, odd: Sequence[str]) -> Realization:
    """The same fields with the named coordinates declared odd.

    Raises:
        InvalidParams: If a name is not a coordinate of the realization.
        BadSeriesParams: If a field stops being homogeneous or an odd coordinate carries a power.
    """
    ctx = rz.context
    names = [ctx.name(c) for c in range(ctx.size)]
    unknown = [x for x in odd if x not in names]
    if unknown:
        raise InvalidParams(f"{rz.name} has no coordinates {', '.join(unknown)}")
    parities = tuple(1 if names[c] in odd else ctx.parities[c] for c in range(ctx.size))
    sctx = Coordinates(ctx.N, parities, ctx.degrees)
    for lab, D in zip(rz.labels, rz.fields):
        if any(not sctx.in_range(sctx.split(k)[0]) for k in D):
            raise BadSeriesParams(f"{lab} carries a power of a coordinate declared odd")
        if sctx.field_parity(D) is None:
            raise BadSeriesParams(f"{lab} is not homogeneous once {', '.join(odd)} are odd")
    pattern = [1 if p else entry for p, entry in zip(parities, rz.N_pattern)]
    out = Realization(sctx, list(rz.labels), list(rz.fields), pattern, f"{rz.name}|{len(odd)}",
                      warnings=list(rz.warnings))
    logger.debug(f"superized {rz.name}: odd {', '.join(odd)}")
    return out


def submodule_closure(acting: Sequence[Vec], vectors: Sequence[Vec]) -> List[Vec]:
    """Basis of the module generated by ``vectors`` under brackets with ``acting``."""
    span = Echelon()
    basis: List[Vec] = []
    queue = deque(vectors)
    while queue:
        v = queue.popleft()
        if v and span.add(v)[0]:
            basis.append(v)
            queue.extend(field_bracket(a, v) for a in acting)
    return basis


"""Oracle algebras of vector fields the prolongs are identified against.

vect and svect come straight from the field terms; the Hamiltonian series
from generating functions (or from prolongs of their linear parts); the
contact series from K_f; Brown's algebra from svect(3;N) and two copies of
O(3;N).
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from app.algebra.divpow import (
    Coordinates,
    coefficients,
    divergence,
    dp_apply,
    dp_mul,
    field_algebra,
    field_bracket,
    field_of,
    format_function,
    parse_function,
    partial,
)
from app.algebra.embed import Realization, correspondence_report, fixture, load_fixture_file
from app.algebra.forms import BilinearForm, canonicalize_form, pi_gram, preserver_algebra, unit_gram
from app.algebra.linalg import Echelon, ExactMatrix, Vec, axpy, kernel_of_images, rank, solve
from app.algebra.liesuper import LieSuperAlgebra, derived
from app.algebra.prolong import ProlongResult, complete_prolong
from app.algebra.scalar import ONE
from app.core.exceptions import BadSeriesParams, DegenerateForm, NoSolution
from app.core.log_config import logger

Function = Vec


# --- Helpers ---

def _kernel(domain: Sequence[Vec], image: Callable[[Vec], Dict[Hashable, object]]) -> List[Vec]:
    """Basis of {Σ c_i domain[i] : Σ c_i image(domain[i]) = 0}."""
    index: Dict[Hashable, int] = {}
    images = []
    for D in domain:
        images.append({index.setdefault(k, len(index)): v for k, v in image(D).items()})
    out = []
    for combo in kernel_of_images(images):
        D: Vec = {}
        for i, c in sorted(combo.items()):
            axpy(D, c, domain[i])
        if D:
            out.append(D)
    return out


def field_degrees(ctx: Coordinates) -> range:
    return range(-max(ctx.degrees), ctx.top_degree - min(ctx.degrees) + 1)


def _context(N: Sequence[int], n_odd: int = 0, degrees: Optional[Sequence[int]] = None) -> Coordinates:
    if not N and not n_odd:
        raise BadSeriesParams("At least one coordinate is required")
    return Coordinates.standard(tuple(int(n) for n in N), n_odd, degrees)


def _sdim_name(prefix: str, ctx: Coordinates) -> str:
    N = ",".join(str(ctx.N[c]) for c in range(ctx.size) if not ctx.parities[c])
    odd = ctx.size - ctx.m
    return f"{prefix}({ctx.m};({N}){f'|{odd}' if odd else ''})"


# --- vect and svect ---

def vect(N: Sequence[int], n_odd: int = 0, degrees: Optional[Sequence[int]] = None) -> LieSuperAlgebra:
    """vect(m;N|n) on its monomial basis u^(r)∂_c."""
    ctx = _context(N, n_odd, degrees)
    fields = [{t: ONE} for d in field_degrees(ctx) for t in ctx.field_terms(d)]
    logger.debug(f"vect: {len(fields)} basis fields")
    return field_algebra(ctx, fields, name=_sdim_name("vect", ctx))


def divergence_free(ctx: Coordinates, degree: int) -> List[Vec]:
    out = []
    for parity in (0, 1):
        domain = [{t: ONE} for t in ctx.field_terms(degree, parity)]
        out.extend(_kernel(domain, divergence))
    return out


def svect(N: Sequence[int], n_odd: int = 0, degrees: Optional[Sequence[int]] = None) -> LieSuperAlgebra:
    """Divergence-free fields of vect(m;N|n), degree by degree."""
    ctx = _context(N, n_odd, degrees)
    fields = [D for d in field_degrees(ctx) for D in divergence_free(ctx, d)]
    return field_algebra(ctx, fields, name=_sdim_name("svect", ctx))


# --- Hamiltonian series ---

def inverse_gram(gram: ExactMatrix) -> ExactMatrix:
    """B̃ = B⁻¹, column by column.

    Raises:
        DegenerateForm: If B is singular.
    """
    n = gram.rows
    if gram.cols != n or rank(gram) < n:
        raise DegenerateForm("The Poisson bracket needs a non-degenerate Gram matrix")
    columns = [solve(gram, {j: ONE}) for j in range(n)]
    return ExactMatrix(n, n, {(i, j): v for j, col in enumerate(columns) for i, v in col.items()})


def _drop_constant(f: Function) -> Function:
    return {m: v for m, v in f.items() if m}


def poisson_bracket(binv: ExactMatrix, f: Function, g: Function) -> Function:
    """{f, g} = Σ B̃^{ij} ∂_i f ∂_j g."""
    out: Function = {}
    for (i, j), c in binv.entries.items():
        for m, v in dp_mul(partial(f, i), partial(g, j)).items():
            axpy(out, c * v, {m: ONE})
    return out


def hamiltonian_field(binv: ExactMatrix, f: Function) -> Vec:
    """H_f = Σ B̃^{ij} (∂_i f) ∂_j."""
    parts: Dict[int, Function] = {}
    for (i, j), c in binv.entries.items():
        axpy(parts.setdefault(j, {}), c, partial(f, i))
    return field_of({j: f_j for j, f_j in parts.items() if f_j})


def _function_algebra(ctx: Coordinates, binv: ExactMatrix, name: str) -> LieSuperAlgebra:
    """Generating functions modulo constants under the Poisson bracket."""
    basis = [m for m in ctx.monomials if m]
    position = {m: i for i, m in enumerate(basis)}

    def bracket(i: int, j: int) -> Vec:
        h = poisson_bracket(binv, {basis[i]: ONE}, {basis[j]: ONE})
        return {position[m]: v for m, v in _drop_constant(h).items()}

    return LieSuperAlgebra(
        [format_function(ctx, {m: ONE}) for m in basis],
        [0] * len(basis),
        degrees=[ctx.mono_degree(m) - 2 for m in basis],
        bracket_provider=bracket,
        meta={"name": name, "context": ctx, "functions": basis},
    )


def hamiltonian(gram: ExactMatrix, N: Sequence[int], name: Optional[str] = None) -> LieSuperAlgebra:
    """The algebra of Hamiltonian fields H_f, f running over non-constant monomials.

    ``meta['functions']`` holds the generating function of each basis field and
    ``meta['function_algebra']`` the Poisson algebra modulo constants.
    """
    ctx = _context(N)
    if ctx.size != gram.rows:
        raise BadSeriesParams(f"Gram matrix of size {gram.rows} for {ctx.size} coordinates")
    binv = inverse_gram(gram)
    cls, _ = canonicalize_form(BilinearForm(gram, [0] * gram.rows))
    name = name or _sdim_name(f"h_{cls.value}", ctx)
    monomials = [m for m in ctx.monomials if m]
    fields = [hamiltonian_field(binv, {m: ONE}) for m in monomials]
    labels = [f"H({format_function(ctx, {m: ONE})})" for m in monomials]
    g = field_algebra(ctx, fields, labels, name=name, meta={"functions": monomials, "gram_inverse": binv})
    g.meta["function_algebra"] = _function_algebra(ctx, binv, f"{name} (functions)")
    logger.info(f"{name}: dim {g.dim}")
    return g


def h_pi(N: Sequence[int]) -> LieSuperAlgebra:
    """h_Π(n;N) with the Π-form of size n; for n = 3 this pairs x1 with x3."""
    return hamiltonian(pi_gram(len(N)), N, name=f"h_Pi({len(N)};({','.join(map(str, N))}))")


def linear_realization(matrices: Sequence[Dict[Tuple[int, int], object]], labels: Sequence[str], N: Sequence[int],
                       name: str) -> Realization:
    """(id, g_0) inside vect(n;N): ∂_i in degree −1 and X ↦ Σ X_ij x_j ∂_i."""
    ctx = _context(N)
    n = ctx.size
    fields = [{Coordinates.term(0, i): ONE} for i in range(n)]
    kept_labels = [f"d{i + 1}" for i in range(n)]
    span = Echelon()
    for X, lab in zip(matrices, labels):
        D: Vec = {}
        for (i, j), c in X.items():
            if c:
                axpy(D, c, {Coordinates.term(Coordinates.unit(j), i): ONE})
        if D and span.add(D)[0]:
            fields.append(D)
            kept_labels.append(lab)
    return Realization(ctx, kept_labels, fields, list(ctx.N), name)


def linear_prolong(g0: LieSuperAlgebra, N: Sequence[int], name: str,
                   degree_cap: Optional[int] = None) -> ProlongResult:
    """The complete prolong of (id, g_0) for a matrix algebra g_0."""
    rz = linear_realization(g0.meta["matrices"], g0.labels, N, name)
    return complete_prolong(rz, N=tuple(N), degree_cap=degree_cap)


def h_i(N: Sequence[int], degree_cap: Optional[int] = None) -> LieSuperAlgebra:
    """h_I(n;N) := (id, o_I(n))_{*,N}."""
    n = len(N)
    g0 = preserver_algebra(BilinearForm(unit_gram(n), [0] * n), name=f"o_I({n})")
    name = f"h_I({n};({','.join(map(str, N))}))"
    return linear_prolong(g0, N, name, degree_cap).algebra(name=name)


def _subalgebra_by_conditions(g: LieSuperAlgebra, condition: Callable[[Vec], Dict[Hashable, object]],
                              name: str) -> LieSuperAlgebra:
    ctx: Coordinates = g.meta["context"]
    blocks: Dict[Tuple[int, int], List[Vec]] = {}
    for D in g.meta["fields"]:
        blocks.setdefault((ctx.field_degree(D), ctx.field_parity(D)), []).append(D)
    fields = [D for key in sorted(blocks) for D in _kernel(blocks[key], condition)]
    return field_algebra(ctx, fields, name=name)


def _diagonal_conditions(D: Vec) -> Dict[Hashable, object]:
    """∂_i A_i for every i."""
    out: Dict[Hashable, object] = {}
    for i, A_i in coefficients(D).items():
        for m, v in partial(A_i, i).items():
            out[(i, m)] = v
    return out


def _pi_conditions(k: int) -> Callable[[Vec], Dict[Hashable, object]]:
    def conditions(D: Vec) -> Dict[Hashable, object]:
        """∂_i A_{k+i} and ∂_{k+i} A_i for i < k."""
        coeffs = coefficients(D)
        out: Dict[Hashable, object] = {}
        for i in range(k):
            for a, b in ((i, k + i), (k + i, i)):
                for m, v in partial(coeffs.get(b, {}), a).items():
                    out[(a, b, m)] = v
        return out
    return conditions


def lh_i(N: Sequence[int], degree_cap: Optional[int] = None) -> LieSuperAlgebra:
    """Fields of h_I(n;N) with ∂_i A_i = 0 for all i."""
    n = len(N)
    return _subalgebra_by_conditions(h_i(N, degree_cap), _diagonal_conditions, f"lh_I({n};({','.join(map(str, N))}))")


def lh_pi(N: Sequence[int]) -> LieSuperAlgebra:
    """Fields of h_Π(2k;N) with ∂_i A_{k+i} = ∂_{k+i} A_i = 0."""
    if len(N) % 2:
        raise BadSeriesParams("lh_Pi needs an even number of coordinates")
    k = len(N) // 2
    return _subalgebra_by_conditions(h_pi(N), _pi_conditions(k), f"lh_Pi({2 * k};({','.join(map(str, N))}))")


def slh_pi(N: Sequence[int]) -> LieSuperAlgebra:
    """Divergence-free elements of lh_Π(2k;N)."""
    k = len(N) // 2
    lh = lh_pi(N)
    pi = _pi_conditions(k)

    def conditions(D: Vec) -> Dict[Hashable, object]:
        out = dict(pi(D))
        out.update({("div", m): v for m, v in divergence(D).items()})
        return out

    return _subalgebra_by_conditions(lh, conditions, f"slh_Pi({2 * k};({','.join(map(str, N))}))")


def hamiltonian_profile(gram: ExactMatrix, N: Sequence[int], degree_cap: Optional[int] = None) -> Dict[str, Dict[int, int]]:
    """Per-degree dimensions on the function side and on the field side.

    The field side is the complete prolong of (id, H(quadratic functions)),
    which may contain fields without a generating function.
    """
    g = hamiltonian(gram, N)
    ctx: Coordinates = g.meta["context"]
    functions = g.meta["function_algebra"].dims_by_degree()
    linear = [i for i, d in enumerate(g.degrees) if d == 0]
    fields = [{Coordinates.term(0, c): ONE} for c in range(ctx.size)] + [g.meta["fields"][i] for i in linear]
    labels = [f"d{c + 1}" for c in range(ctx.size)] + [g.labels[i] for i in linear]
    rz = Realization(ctx, labels, fields, list(ctx.N), g.meta["name"])
    result = complete_prolong(rz, N=ctx.N, degree_cap=degree_cap)
    return {"functions": functions, "fields": result.dims()}


# --- Contact series ---

def contact_field(f: Function) -> Vec:
    """K_f on (t, p, q) = coordinates (0, 1, 2) for the form dt + p dq."""
    p = {Coordinates.unit(1): ONE}
    f_t, f_p, f_q = partial(f, 0), partial(f, 1), partial(f, 2)
    A: Function = dict(f)
    for m, v in dp_mul(p, f_p).items():
        axpy(A, v, {m: ONE})
    B: Function = dict(f_q)
    for m, v in dp_mul(p, f_t).items():
        axpy(B, v, {m: ONE})
    return field_of({c: h for c, h in ((0, A), (1, B), (2, f_p)) if h})


def k_contact(N: Sequence[int]) -> LieSuperAlgebra:
    """k(3;N): one K_f per monomial of O(3;N), t of degree 2 and p, q of degree 1."""
    if len(N) != 3:
        raise BadSeriesParams("The contact series is implemented for 3 coordinates (t, p, q)")
    ctx = _context(N, degrees=(2, 1, 1))
    monomials = list(ctx.monomials)
    fields = [contact_field({m: ONE}) for m in monomials]
    labels = [f"K({format_function(ctx, {m: ONE})})" for m in monomials]
    return field_algebra(ctx, fields, labels, name=f"k(3;({','.join(map(str, ctx.N))}))",
                         meta={"functions": monomials})


def contact_context(N: int = 1, pairs: int = 2) -> Coordinates:
    """O(1;N|2k): t = x1 of degree 2, then ξ_1..ξ_k = xi1..xik and η_1..η_k of degree 1."""
    return Coordinates.standard((N,), 2 * pairs, (2,) + (1,) * (2 * pairs))


def _xi_euler(f: Function, pairs: int) -> Function:
    out: Function = {}
    for i in range(1, pairs + 1):
        for m, v in dp_mul({Coordinates.unit(i): ONE}, partial(f, i)).items():
            axpy(out, v, {m: ONE})
    return out


def contact_bracket(f: Function, g: Function, pairs: int = 2) -> Function:
    """{f, g} on generating functions of k(1;N|2k).

    {f, g} = ∂_t f·(1 − E)g + (1 − E)f·∂_t g + Σ_i (∂_{ξ_i} f ∂_{η_i} g + ∂_{ξ_i} g ∂_{η_i} f)
    with E = Σ ξ_i ∂_{ξ_i}; all signs vanish in characteristic 2.
    """
    f_rest, g_rest = dict(f), dict(g)
    axpy(f_rest, ONE, _xi_euler(f, pairs))
    axpy(g_rest, ONE, _xi_euler(g, pairs))
    products = [(partial(f, 0), g_rest), (f_rest, partial(g, 0))]
    for i in range(1, pairs + 1):
        products.append((partial(f, i), partial(g, pairs + i)))
        products.append((partial(g, i), partial(f, pairs + i)))
    out: Function = {}
    for a, b in products:
        for m, v in dp_mul(a, b).items():
            axpy(out, v, {m: ONE})
    return out


def contact_correspondence(name: str = "fG5N", images: Optional[Dict[str, str]] = None) -> List[str]:
    """Compare a fixture's g_{≤0} with F(k(1;1|4))_{≤0} generator by generator.

    The images are generating functions, by default the ones transcribed next to
    the fixture; an empty report means they give a bracket-preserving bijection.
    """
    if images is None:
        images = load_fixture_file(name).contact_images
    if not images:
        raise BadSeriesParams(f"Fixture '{name}' carries no contact images")
    ctx = contact_context()
    parsed = {label: parse_function(ctx, text) for label, text in images.items()}
    report = correspondence_report(fixture(name), parsed, contact_bracket, target_dim=len(ctx.monomials_up_to(2)))
    logger.info(f"contact correspondence of {name}: {len(report)} violations")
    return report


# --- Brown's algebra ---

_CROSS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def cross_gradient(f: Function, g: Function) -> Vec:
    """∇f × ∇g with ∂_i × ∂_j = ∂_k for (i, j, k) a permutation of (0, 1, 2)."""
    parts: Dict[int, Function] = {}
    for i, j, k in _CROSS:
        h = parts.setdefault(k, {})
        for m, v in dp_mul(partial(f, i), partial(g, j)).items():
            axpy(h, v, {m: ONE})
        for m, v in dp_mul(partial(f, j), partial(g, i)).items():
            axpy(h, v, {m: ONE})
    return field_of({k: h for k, h in parts.items() if h})


def brown_L(N: Sequence[int]) -> LieSuperAlgebra:
    """svect(3;N) ⊕ O ⊕ Ō modulo the constants, graded by 2·deg and 2·deg − 3."""
    if len(N) != 3:
        raise BadSeriesParams("Brown's algebra lives on 3 coordinates")
    ctx = _context(N)
    s_fields = [D for d in field_degrees(ctx) for D in divergence_free(ctx, d)]
    functions = [m for m in ctx.monomials if m]
    s, o = len(s_fields), len(functions)
    position = {m: i for i, m in enumerate(functions)}
    span = Echelon(track=True)
    for i, D in enumerate(s_fields):
        span.add(D, tag={i: ONE})

    def in_s(D: Vec) -> Vec:
        rem, combo = span.reduce(D, {})
        if rem:
            raise NoSolution("A cross product of gradients left svect")
        return combo

    def in_o(f: Function, offset: int) -> Vec:
        return {offset + position[m]: v for m, v in _drop_constant(f).items()}

    def element(i: int) -> Tuple[str, object]:
        if i < s:
            return "S", s_fields[i]
        if i < s + o:
            return "O", {functions[i - s]: ONE}
        return "Obar", {functions[i - s - o]: ONE}

    def bracket(i: int, j: int) -> Vec:
        (ki, x), (kj, y) = element(i), element(j)
        if ki == "S" and kj == "S":
            return in_s(field_bracket(x, y))
        if ki == "S" or kj == "S":
            D, (kind, f) = (x, (kj, y)) if ki == "S" else (y, (ki, x))
            return in_o(dp_apply(D, f), s if kind == "O" else s + o)
        if ki == kj:
            return {}
        return in_s(cross_gradient(x, y))

    labels = ([f"S{i + 1}" for i in range(s)] + [format_function(ctx, {m: ONE}) for m in functions]
              + [f"bar({format_function(ctx, {m: ONE})})" for m in functions])
    degrees = ([2 * ctx.field_degree(D) for D in s_fields] + [2 * ctx.mono_degree(m) - 3 for m in functions] * 2)
    logger.info(f"Brown's L(3;{tuple(ctx.N)}) modulo constants: dim {s + 2 * o}")
    return LieSuperAlgebra(labels, [0] * (s + 2 * o), degrees=degrees, bracket_provider=bracket,
                           meta={"name": f"L(3;({','.join(map(str, ctx.N))}))", "context": ctx,
                                 "svect": s_fields, "functions": functions})


def brown_D4(N: Sequence[int]) -> LieSuperAlgebra:
    """D4(3;N): the derived algebra of L modulo constants."""
    g = derived(brown_L(N))
    g.meta["name"] = f"D4(3;({','.join(map(str, N))}))"
    return g


# --- Dispatcher ---

SERIES = ("vect", "svect", "h_Pi", "h_I", "lh_Pi", "lh_I", "slh_Pi", "k_contact", "brown_D4", "brown_L")


def construct_series(name: str, N: Sequence[int], n_odd: int = 0) -> LieSuperAlgebra:
    """Build a named series member on its natural basis.

    Raises:
        BadSeriesParams: If the family is unknown or the parameters do not fit it.
    """
    N = tuple(int(x) for x in N)
    if name == "vect":
        return vect(N, n_odd)
    if name == "svect":
        return svect(N, n_odd)
    if n_odd:
        raise BadSeriesParams(f"{name} is implemented without odd coordinates")
    builders: Dict[str, Callable[[Sequence[int]], LieSuperAlgebra]] = {
        "h_Pi": h_pi,
        "h_I": h_i,
        "lh_Pi": lh_pi,
        "lh_I": lh_i,
        "slh_Pi": slh_pi,
        "k_contact": k_contact,
        "brown_D4": brown_D4,
        "brown_L": brown_L,
    }
    builder = builders.get(name)
    if builder is None:
        raise BadSeriesParams(f"Unknown series '{name}'; known: {', '.join(SERIES)}")
    return builder(N)


def dims_profile(g: LieSuperAlgebra) -> List[int]:
    """Dimensions in degree order, gaps filled with zeros."""
    dims = g.dims_by_degree()
    return [dims.get(d, 0) for d in range(min(dims), max(dims) + 1)] if dims else []

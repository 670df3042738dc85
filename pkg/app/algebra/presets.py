"""Named Cartan matrices and matrix realizations of the families without one."""

from __future__ import annotations

import json
from typing import Callable, Dict, List, Sequence, Union

from app.algebra.cartan import CartanSpec, DiagonalMark, build, load_spec, simple_core
from app.algebra.forms import chevalley_generators, matform_algebra, oo_parities, pe_parities
from app.algebra.liesuper import LieSuperAlgebra, matrix_algebra
from app.algebra.scalar import ONE
from app.core.config import settings
from app.core.exceptions import InvalidParams, UnknownPreset

Preset = Union[CartanSpec, LieSuperAlgebra]

WK3 = {
    1: [["ev", "a", 0], ["a", "ev", 1], [0, 1, "ev"]],
    2: [["ev", "1+a", "a"], ["1+a", "ev", 1], ["a", 1, "ev"]],
}

WK4 = {
    1: [["ev", "a", 0, 0], ["a", "ev", 1, 0], [0, 1, "ev", 1], [0, 0, 1, "ev"]],
    2: [["ev", 1, "1+a", 0], [1, "ev", "a", 0], ["a+1", "a", "ev", "a"], [0, 0, "a", "ev"]],
    3: [["ev", "a", 0, 0], ["a", "ev", "a+1", 0], [0, "a+1", "ev", 1], [0, 0, 1, "ev"]],
}


def _path(marks: Sequence[str]) -> List[List[object]]:
    n = len(marks)
    return [[marks[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def _horned(marks: Sequence[str]) -> List[List[object]]:
    """Path on nodes 1..k-1 with node k attached to node k-2."""
    k = len(marks)
    rows = _path(marks[:-1])
    for row in rows:
        row.append(0)
    rows.append([0] * (k - 1) + [marks[-1]])
    rows[k - 3][k - 1] = rows[k - 1][k - 3] = 1
    return rows


def sl(n: int) -> CartanSpec:
    if n < 2:
        raise InvalidParams("sl(n) needs n >= 2")
    return CartanSpec.from_rows(_path(["2"] * (n - 1)), name=f"sl({n})")


def gl(n: int) -> CartanSpec:
    if n < 2:
        raise InvalidParams("gl(n) needs n >= 2")
    return CartanSpec.from_rows(_path(["ev"] * (n - 1)), name=f"gl({n})")


def psl(n: int) -> LieSuperAlgebra:
    return simple_core(build(sl(n)))


def o_odd(k: int) -> CartanSpec:
    """o(2k+1): ev ... ev od."""
    if k < 1:
        raise InvalidParams("o(2k+1) needs k >= 1")
    return CartanSpec.from_rows(_path(["ev"] * (k - 1) + ["od"]), name=f"o({2 * k + 1})")


def o_pi_even(k: int) -> LieSuperAlgebra:
    """o^(1)_Π(2k) as block-shape matrices, with its Chevalley generators in ``meta``."""
    g = matform_algebra([0] * (2 * k), 1, name=f"o_Pi^(1)({2 * k})")
    g.meta["chevalley"] = chevalley_generators(k)
    return g


def o_i_even(n: int) -> LieSuperAlgebra:
    """o^(1)_I(n): symmetric zero-diagonal n×n matrices."""
    matrices = [{(i, j): ONE, (j, i): ONE} for i in range(n) for j in range(i + 1, n)]
    labels = [f"Z{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)]
    return matrix_algebra(matrices, [0] * len(matrices), labels, n, name=f"o_I^(1)({n})")


def o_i(n: int) -> Preset:
    return o_odd(n // 2) if n % 2 else o_i_even(n)


def o_pi(n: int) -> Preset:
    return o_odd(n // 2) if n % 2 else o_pi_even(n // 2)


def oo(k_ev: int, k_od: int) -> LieSuperAlgebra:
    return matform_algebra(oo_parities(k_ev, k_od), 1, name=f"oo_PiPi^(1)({2 * k_ev}|{2 * k_od})")


def pe(m: int) -> LieSuperAlgebra:
    return matform_algebra(pe_parities(m), 1, name=f"pe^(1)({m})")


def wk3(matrix_index: int = 1) -> CartanSpec:
    if matrix_index not in WK3:
        raise UnknownPreset(f"wk(3;a) has matrices 1..{len(WK3)}")
    return CartanSpec.from_rows(WK3[matrix_index], name=f"wk(3;a)#{matrix_index}", param_group="wk3")


def wk4(matrix_index: int = 1) -> CartanSpec:
    if matrix_index not in WK4:
        raise UnknownPreset(f"wk(4;a) has matrices 1..{len(WK4)}")
    return CartanSpec.from_rows(WK4[matrix_index], name=f"wk(4;a)#{matrix_index}", param_group="wk4")


def _super_version(rows: List[List[object]], name: str) -> CartanSpec:
    rows = [list(r) for r in rows]
    rows[1][1] = "0"
    return CartanSpec.from_rows(rows, name=name)


def bgl3() -> CartanSpec:
    return _super_version(WK3[1], "bgl(3;a)")


def bgl4() -> CartanSpec:
    return _super_version(WK4[1], "bgl(4;a)")


def oc(k: int) -> CartanSpec:
    """CM relative of o_Π(2k): all nodes even, the last one a horn."""
    if k < 3:
        raise InvalidParams("oc needs k >= 3")
    return CartanSpec.from_rows(_horned(["ev"] * k), name=f"oc({2 * k})")


def _node_marks(vector_parities: Sequence[int]) -> List[str]:
    k = len(vector_parities)
    parities = [(vector_parities[i] + vector_parities[i + 1]) & 1 for i in range(k - 1)]
    parities.append(parities[-1])
    return ["0" if p else "ev" for p in parities]


def ooc(k_ev: int, k_od: int) -> CartanSpec:
    """CM relative of oo_ΠΠ(2k_ev|2k_od) in the format k_ev|k_od."""
    if k_ev + k_od < 3:
        raise InvalidParams("ooc needs k_ev + k_od >= 3")
    return CartanSpec.from_rows(_horned(_node_marks([0] * k_ev + [1] * k_od)), name=f"ooc({2 * k_ev}|{2 * k_od})")


def pec(m: int) -> CartanSpec:
    """CM relative of pe(m): even path with an odd horn."""
    if m < 3:
        raise InvalidParams("pec needs m >= 3")
    return CartanSpec.from_rows(_horned(["ev"] * (m - 1) + ["0"]), name=f"pec({m})")


PRESETS: Dict[str, Callable[..., Preset]] = {
    "sl": sl,
    "gl": gl,
    "psl": psl,
    "o_I": o_i,
    "o_Pi": o_pi,
    "oo": oo,
    "pe": pe,
    "wk3": wk3,
    "wk4": wk4,
    "bgl3": bgl3,
    "bgl4": bgl4,
    "oc": oc,
    "ooc": ooc,
    "pec": pec,
}


def preset(name: str, *args, **kwargs) -> Preset:
    """Look up a named family and instantiate it with its parameters.

    Raises:
        UnknownPreset: If the name is not a known family.
    """
    factory = PRESETS.get(name)
    if factory is None:
        raise UnknownPreset(f"Unknown preset '{name}'; known: {', '.join(sorted(PRESETS))}")
    try:
        return factory(*args, **kwargs)
    except TypeError as exc:
        raise InvalidParams(f"Bad parameters for preset '{name}': {exc}") from None


def preset_files() -> List[str]:
    return sorted(p.stem for p in (settings.DATA_DIR / "presets").glob("*.json"))


def load_preset_file(stem: str) -> CartanSpec:
    path = settings.DATA_DIR / "presets" / f"{stem}.json"
    if not path.exists():
        raise UnknownPreset(f"No preset file '{stem}'")
    return load_spec(path)


def parse_preset_args(text: str) -> List[int]:
    """'2,2' or '4' -> integer parameters for the command line and HTTP surfaces."""
    if not text:
        return []
    try:
        return [int(t) for t in json.loads(f"[{text}]")]
    except (ValueError, TypeError):
        raise InvalidParams(f"Preset parameters must be integers, got '{text}'") from None

import math
import random

import pytest

from app.algebra.divpow import (
    MAX_SHEARING,
    Coordinates,
    divergence,
    dp_apply,
    dp_mul,
    field_algebra,
    field_bracket,
    format_field,
    parse_field,
    parse_function,
    partial,
    random_field,
    random_function,
)
from app.algebra.liesuper import verify
from app.algebra.scalar import ONE, ZERO
from app.core.exceptions import BadSeriesParams, ScalarParseError


@pytest.fixture
def plane() -> Coordinates:
    return Coordinates.standard([2, 1])


def test_divided_power_products(plane):
    x = parse_function(plane, "x1")
    assert dp_mul(x, x) == {}
    assert dp_mul(x, parse_function(plane, "x1^(2)")) == parse_function(plane, "x1^(3)")
    assert parse_function(plane, "x1*x1") == {}


def test_exponents_beyond_shearing_vanish(plane):
    assert parse_function(plane, "x1^(4)") == {}
    assert parse_function(plane, "x2^(2)") == {}


def test_partial_lowers_divided_power(plane):
    d1 = parse_field(plane, "d1")
    assert dp_apply(d1, parse_function(plane, "x1^(3)*x2")) == parse_function(plane, "x1^(2)*x2")


def test_bracket_of_shift_and_square(plane):
    bracket = field_bracket(parse_field(plane, "d1"), parse_field(plane, "x1^(2)*d1"))
    assert bracket == parse_field(plane, "x1*d1")


def test_divergence(plane):
    assert divergence(parse_field(plane, "x1*d1 + x1*d2")) == {0: ONE}
    assert divergence(parse_field(plane, "x2*d1")) == {}


def _check_jacobi(plane: Coordinates, seed: int, cases: int) -> None:
    rng = random.Random(seed)
    for _ in range(cases):
        d, e, f = (random_field(plane, rng) for _ in range(3))
        total = {}
        for u, v, w in ((d, e, f), (e, f, d), (f, d, e)):
            for key, c in field_bracket(u, field_bracket(v, w)).items():
                total[key] = total.get(key, ZERO) + c
        assert all(not c for c in total.values())


def test_jacobi_on_random_fields(plane):
    _check_jacobi(plane, 7, 20)


def _check_products(seed: int, cases: int) -> None:
    ctx = Coordinates.standard([2, 1], n_odd=2)
    rng = random.Random(seed)
    for _ in range(cases):
        f, g, h = (random_function(ctx, rng) for _ in range(3))
        assert dp_mul(dp_mul(f, g), h) == dp_mul(f, dp_mul(g, h))
        assert dp_mul(f, g) == dp_mul(g, f)
        c = rng.randrange(ctx.size)
        leibniz = dp_mul(partial(f, c), g)
        for key, v in dp_mul(f, partial(g, c)).items():
            leibniz[key] = leibniz.get(key, ZERO) + v
        assert {k: v for k, v in leibniz.items() if v} == partial(dp_mul(f, g), c)


def _check_lucas(seed: int, cases: int) -> None:
    rng = random.Random(seed)
    bound = (1 << MAX_SHEARING) - 1
    for _ in range(cases):
        a, b = rng.randrange(bound + 1), rng.randrange(bound + 1)
        expected = {a + b: ONE} if math.comb(a + b, a) % 2 else {}
        assert dp_mul({a: ONE}, {b: ONE}) == expected


def test_products_are_associative_and_supercommutative():
    _check_products(11, 200)


def test_products_follow_lucas():
    _check_lucas(13, 200)


@pytest.mark.slow
def test_product_laws_on_ten_thousand_cases(plane):
    _check_products(17, 10_000)
    _check_lucas(19, 10_000)
    _check_jacobi(plane, 23, 10_000)



def test_format_and_parse_agree(plane):
    D = parse_field(plane, "x1^(2)*x2*d1 + (a+1)*d2")
    assert parse_field(plane, format_field(plane, D)) == D


def test_odd_coordinates():
    ctx = Coordinates.standard([1], n_odd=2)
    xi = parse_function(ctx, "xi1")
    assert dp_mul(xi, xi) == {}
    assert ctx.N == (1, 1, 1)
    assert ctx.bound(1) == 1


def test_field_algebra_of_sl2_triple(plane):
    fields = [parse_field(plane, t) for t in ("d1", "x1*d1", "x1^(2)*d1")]
    g = field_algebra(plane, fields, name="triple")
    assert g.dim == 3
    assert g.degrees == [-1, 0, 1]
    assert verify(g) == []


def test_bad_contexts():
    with pytest.raises(BadSeriesParams):
        Coordinates.standard([9])
    with pytest.raises(BadSeriesParams):
        Coordinates.standard([1], degrees=[0])


def test_malformed_fields(plane):
    with pytest.raises(ScalarParseError):
        parse_field(plane, "x1*x2")
    with pytest.raises(ScalarParseError):
        parse_field(plane, "d1*d2")
    with pytest.raises(ScalarParseError):
        parse_function(plane, "x3")

import pytest

from app.algebra.cartan import build, grade_by_r
from app.algebra.divpow import parse_field
from app.algebra.embed import fixture, realize
from app.algebra.presets import o_odd, sl
from app.algebra.prolong import complete_prolong, default_degree_cap, partial_prolong, shearing_constraints
from app.core.exceptions import NotSubmodule
from app.schemas.cartan import RunConfig, SpecSource
from app.schemas.prolong import PartialProlongRequest, ProlongRequest


@pytest.fixture(scope="module")
def line():
    """o(3) graded by r=(1): one coordinate, g_0 spanned by x*d1."""
    return realize(grade_by_r(build(o_odd(1)), [1]).nonpositive)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rank_one_gives_vect(line, n):
    result = complete_prolong(line, N=(n,), degree_cap=2 ** n)
    assert result.stabilized
    assert result.total == 2 ** n
    assert result.dims() == {d: 1 for d in range(-1, 2 ** n - 1)}
    assert result.violations() == []


def test_degree_cap_is_flagged_not_raised(line):
    result = complete_prolong(line, N=(4,), degree_cap=3)
    assert not result.stabilized
    assert result.top == 3


def test_default_degree_cap(line):
    assert default_degree_cap(line) == 7


def test_shearing_of_vect_is_free(line):
    result = complete_prolong(line, N=(2,))
    constraints = shearing_constraints(result)
    assert [str(c) for c in constraints] == ["FREE"]
    assert result.N_constraints == constraints


def test_partial_prolong(line):
    ctx = line.in_shearing((3,)).context
    full = partial_prolong(line, [parse_field(ctx, "x1^(2)*d1")], N=(3,))
    assert full.total == 8
    empty = partial_prolong(line, [], N=(3,))
    assert empty.total == 2
    assert empty.stabilized


def test_partial_prolong_rejects_foreign_fields(line):
    ctx = line.in_shearing((3,)).context
    with pytest.raises(NotSubmodule):
        partial_prolong(line, [parse_field(ctx, "d1")], N=(3,))


def test_sl3_gives_vect_two():
    rz = realize(grade_by_r(build(sl(3)), [1, 0]).nonpositive)
    result = complete_prolong(rz, N=(1, 2))
    assert result.stabilized
    assert result.total == 2 * 2 ** 3


def test_fixture_prolong_satisfies_defining_property():
    result = complete_prolong(fixture("fG5N1"), N=(1, 1, 1, 1), degree_cap=2)
    assert result.dims()[-1] == 4
    assert result.violations() == []


def test_service_report(services):
    request = ProlongRequest(source=SpecSource(preset="o_Pi", args=[3]), r=[1], N=[3], constraints=False)
    _, report = services.get_prolong_service().prolong(request, RunConfig(command="prolong"))
    assert report.total == 8
    assert report.stabilized
    assert report.N_used == [3]
    assert "vect(1;N)" in report.top_verdicts


def test_service_partial_prolong(services):
    request = PartialProlongRequest(source=SpecSource(preset="o_Pi", args=[3]), r=[1], N=[2],
                                    V1=["x1^(2)*d1"], constraints=False, identify=False)
    _, report = services.get_prolong_service().partial_prolong(request, RunConfig(command="partial-prolong"))
    assert report.total == 4


def test_reproduce_rank1(services):
    report = services.get_prolong_service().reproduce("rank1", RunConfig(command="reproduce"))
    assert len(report.cells) == 4
    assert report.passed, [c.detail for c in report.cells if not c.passed]


@pytest.mark.slow
def test_reproduce_rank2(services):
    report = services.get_prolong_service().reproduce("rank2", RunConfig(command="reproduce"))
    assert report.passed, [c.detail for c in report.cells if not c.passed]


@pytest.mark.slow
@pytest.mark.parametrize("table", ["rank3", "rank4"])
def test_reproduce_larger_tables(services, table):
    report = services.get_prolong_service().reproduce(table, RunConfig(command="reproduce"))
    assert report.skipped == []
    assert report.passed, [f"{c.row} {c.N}: {c.detail}" for c in report.cells if not c.passed]

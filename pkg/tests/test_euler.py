import json

import pytest

from chowwitt import bundles as b
from chowwitt import gw
from chowwitt.chern import top_chern
from chowwitt.errors import DomainError
from chowwitt.euler import (
    NON_ORIENTABLE,
    ORIENTABLE_ODD,
    SCENARIOS,
    UNDETERMINED,
    ExprSheaf,
    InsufficientData,
    OpaqueSheaf,
    euler_class,
    hilbert_sheaf_rank,
    hypotheses_for,
    run_scenario,
    scenario,
)
from chowwitt.pic import PicClass, canonical
from chowwitt.projbundle import degree_Y, projective_bundle
from chowwitt.spaces import Grassmann, ProjBundle


def test_dp4_verdict():
    rep = run_scenario("dp4")
    assert rep.verdict == NON_ORIENTABLE
    assert rep.chow_degree == 16
    assert rep.hyperbolic_presentation.render() == "8h"
    assert rep.trivialized_class.witt_part == 0
    assert rep.det.coords == (6,) and rep.omega.coords == (-5,)


def test_dp2_branches():
    rep = run_scenario("dp2")
    assert rep.verdict == UNDETERMINED
    assert [br.report.verdict for br in rep.branches] == [NON_ORIENTABLE, ORIENTABLE_ODD]
    assert [br.report.gw_value.render() for br in rep.branches] == ["28h", "28h"]
    assert rep.branches[1].report.gw_degree == gw.hyperbolic(28)
    assert rep.branches[0].report.trivialized_class == gw.cw_from_chow(56)


def test_cubic_undetermined():
    rep = run_scenario("cubic")
    assert rep.verdict == UNDETERMINED
    assert rep.chow_degree == 27
    assert rep.gw_value is None and rep.to_json()["gw"] is None


def test_scenario_shapes():
    assert scenario("dp4").space.dim == 6
    assert scenario("dp2").sheaf.rank == 5
    assert scenario("dp2").space.relative_dim == 3
    with pytest.raises(DomainError):
        scenario("dp3")


def test_hilbert_sheaf_rank():
    assert hilbert_sheaf_rank(2, 2, 2) == 5
    assert hilbert_sheaf_rank(3, 2, 2) == 15
    for n in range(2, 6):
        for d in range(1, 5):
            assert hilbert_sheaf_rank(n, d, 0) == 1
    with pytest.raises(DomainError):
        hilbert_sheaf_rank(1, 2, 2)


def test_rank_must_equal_dimension():
    with pytest.raises(DomainError):
        euler_class(ExprSheaf(b.Sym(2, b.Q)), Grassmann.of(2, 4))
    with pytest.raises(DomainError):
        euler_class(OpaqueSheaf(3, 10), Grassmann.of(2, 4))


def test_opaque_without_degree():
    space = scenario("dp2").space
    with pytest.raises(InsufficientData):
        euler_class(OpaqueSheaf(5), space)


def test_opaque_with_known_det():
    space = scenario("dp2").space
    omega = canonical(space)
    rep = euler_class(OpaqueSheaf(5, 56, omega + PicClass(space, (2, -4))), space)
    assert rep.verdict == ORIENTABLE_ODD and rep.gw_degree.render() == "28h"
    rep = euler_class(OpaqueSheaf(5, 56, PicClass(space, (1, 0))), space)
    assert rep.verdict == NON_ORIENTABLE and rep.hyperbolic_presentation.render() == "28h"
    rep = euler_class(OpaqueSheaf(5, 55, omega), space)
    assert rep.verdict == UNDETERMINED and "odd Chow degree" in rep.reason


def test_non_orientable_odd_degree_has_no_presentation():
    space = scenario("dp2").space
    rep = euler_class(OpaqueSheaf(5, 27, PicClass(space, (1, 0))), space)
    assert rep.verdict == NON_ORIENTABLE
    assert rep.trivialized_class.witt_part == 1 and rep.hyperbolic_presentation is None


def test_failed_parity_hypothesis():
    # r = 1 over Gr(1,2): n = 2 even, so the trivialization does not apply
    space = projective_bundle(1, 2, b.Trivial(2))
    hyps, _ = hypotheses_for(space, space.dim)
    assert not all(h.holds for h in hyps)
    rep = euler_class(OpaqueSheaf(2, 4, PicClass(space, (1, 0))), space)
    assert rep.verdict == UNDETERMINED and rep.chow_degree == 4


def test_hypothesis_audit_recomputable():
    for name in SCENARIOS:
        sc = scenario(name)
        rep = run_scenario(name)
        n = sc.space.base.n
        r = sc.space.relative_dim if isinstance(sc.space, ProjBundle) else 0
        expected = {
            "rank equals dimension": rep.rank == sc.space.dim,
            "base is a Grassmannian": True,
        }
        for h in rep.hypotheses:
            if h.name in expected:
                assert h.holds == expected[h.name]
            else:
                assert h.holds == ((r % 2 == 1 and n % 2 == 1) or r % 2 == 0)
    assert scenario("dp2").space.relative_dim == 3 and scenario("dp2").space.base.n == 3


def test_chow_degree_single_source():
    for name in ("cubic", "dp4"):
        sc = scenario(name)
        assert run_scenario(name).chow_degree == degree_Y(top_chern(sc.sheaf.expr, sc.space))


def test_parity_coherence():
    for name in SCENARIOS:
        rep = run_scenario(name)
        for r in (rep,) + tuple(br.report for br in rep.branches):
            if r.verdict == NON_ORIENTABLE and r.chow_degree % 2 == 0:
                assert r.trivialized_class.witt_part == 0


@pytest.mark.parametrize("name", SCENARIOS)
def test_serialization_stable(name):
    a = json.dumps(run_scenario(name).to_json(), sort_keys=True).encode()
    c = json.dumps(run_scenario(name).to_json(), sort_keys=True).encode()
    assert a == c


def test_field_choice_changes_normal_form_not_rendering():
    for name in gw.FIELDS:
        rep = run_scenario("dp4", gw.FIELDS[name])
        assert rep.hyperbolic_presentation.render() == "8h"

import io
import json
from importlib.resources import files

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowwitt import bundles as b
from chowwitt.cli import EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, run
from chowwitt.errors import ParseError
from chowwitt.parsing import parse_bundle, parse_gw, parse_opaque, parse_space
from chowwitt.spaces import Grassmann, ProjBundle

SCHEMA = json.loads(files("chowwitt").joinpath("schemas/euler_report.schema.json").read_text())


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_bundle_examples():
    sym2 = b.Sym(2, b.Q)
    assert parse_bundle("sym(2,Q) + sym(2,Q)") == b.DirectSum(sym2, sym2)
    assert parse_bundle("Q") == b.TautQuotient()
    assert parse_bundle("triv(1) + sym(2,dual(Q))") == b.DirectSum(b.Trivial(1), b.Sym(2, b.Dual(b.Q)))
    assert parse_bundle("  tw( Q , O(-2) ) ") == b.TensorLine(b.Q, b.LineOnGrass(-2))
    assert parse_bundle("a+b".replace("a", "S").replace("b", "OY(3)")) == b.DirectSum(b.S, b.LineOnFiber(3))


@pytest.mark.parametrize(
    "text,offset",
    [("sym(2,Q", 7), ("Q +", 3), ("foo", 0), ("tw(Q,Q)", 5), ("sym(0,Q)", 4), ("pull(OY(1))", 5), ("Q $", 2)],
)
def test_parse_bundle_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse_bundle(text)
    assert info.value.offset == offset


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_bundle("dual(")
    assert "Q" in info.value.expected and "sym" in info.value.expected


def test_parse_space():
    assert parse_space("Gr(2,5)") == Grassmann.of(2, 5)
    sp = parse_space("P(triv(1) + sym(2,dual(Q))) over Gr(2,3)")
    assert isinstance(sp, ProjBundle) and sp.dim == 5
    assert parse_space(sp.text()) == sp


def test_parse_opaque():
    p = parse_opaque("rank=5,deg=56")
    assert (p.rank, p.chow_degree, p.det) == (5, 56, None)
    assert parse_opaque("rank=5, deg=56, det=1:-2").det == (1, -2)
    with pytest.raises(ParseError):
        parse_opaque("deg=3")
    with pytest.raises(ParseError):
        parse_opaque("rank=5,color=red")


def test_parse_gw():
    assert parse_gw("h*h").render() == "2h"
    assert parse_gw("3 + 12h").render() == "3 + 12h"
    assert parse_gw("15<1> + 12<-1>").render() == "3 + 12h"
    assert parse_gw("-(h - <-1>) * 2").render() == "-2"
    with pytest.raises(ParseError):
        parse_gw("h +")


@st.composite
def canonical_exprs(draw, depth=3):
    leaf = st.one_of(
        st.just(b.Q),
        st.just(b.S),
        st.integers(-5, 5).map(b.LineOnGrass),
        st.integers(-5, 5).map(b.LineOnFiber),
        st.integers(0, 5).map(b.Trivial),
    )
    if depth == 0:
        return draw(leaf)
    kind = draw(st.sampled_from(["leaf", "dual", "sym", "sum", "tw", "pull"]))
    sub = canonical_exprs(depth - 1)
    if kind == "leaf":
        return draw(leaf)
    if kind == "dual":
        return b.Dual(draw(sub))
    if kind == "sym":
        return b.Sym(draw(st.integers(1, 4)), draw(sub))
    if kind == "sum":
        parts = draw(st.lists(sub.filter(lambda e: not isinstance(e, b.DirectSum)), min_size=2, max_size=3))
        return b.direct_sum(*parts)
    if kind == "tw":
        line = draw(st.one_of(st.integers(-3, 3).map(b.LineOnGrass), st.integers(-3, 3).map(b.LineOnFiber)))
        return b.TensorLine(draw(sub), line)
    inner = draw(sub)
    if b.uses_fiber(inner):
        return b.Dual(inner)
    return b.Pullback(inner)


@settings(max_examples=200)
@given(canonical_exprs())
def test_parse_render_round_trip(e):
    assert parse_bundle(b.render(e)) == e


def test_scenario_dp4_report(tmp_path):
    path = tmp_path / "dp4.json"
    code, out, _ = invoke("scenario", "dp4", "--json", str(path))
    assert code == EXIT_OK
    assert "8h" in out and "chow_degree: 16" in out
    data = json.loads(path.read_text())
    jsonschema.validate(data["report"], SCHEMA)
    assert data["report"]["chow_degree"] == "16"
    assert data["report"]["gw"] == {"ones": "8", "minus_ones": "8", "rendered": "8h"}


def test_scenario_dp2_report(tmp_path):
    path = tmp_path / "dp2.json"
    code, out, _ = invoke("scenario", "dp2", "--json", str(path))
    assert code == EXIT_OK
    data = json.loads(path.read_text())["report"]
    jsonschema.validate(data, SCHEMA)
    assert [br["report"]["gw"]["rendered"] for br in data["branches"]] == ["28h", "28h"]
    assert out.count("28h") == 2


def test_gw_command():
    code, out, _ = invoke("gw", "h*h")
    assert code == EXIT_OK and out.strip() == "2h"


def test_json_byte_stable(tmp_path):
    for name in ("cubic", "dp4", "dp2"):
        p1, p2 = tmp_path / f"{name}1.json", tmp_path / f"{name}2.json"
        invoke("scenario", name, "--json", str(p1), "--quiet")
        invoke("scenario", name, "--json", str(p2), "--quiet")
        assert p1.read_bytes() == p2.read_bytes()
        jsonschema.validate(json.loads(p1.read_text())["report"], SCHEMA)


def test_euler_command_variants(tmp_path):
    code, out, _ = invoke("euler", "--space", "Gr(2,5)", "--bundle", "sym(2,Q)+sym(2,Q)")
    assert code == EXIT_OK and "NonOrientableTrivialized" in out
    path = tmp_path / "e.json"
    code, out, _ = invoke(
        "euler", "--space", "P(triv(1)+sym(2,dual(Q))) over Gr(2,3)", "--opaque", "rank=5,deg=56,det=0:0",
        "--field", "real", "--json", str(path), "--quiet",
    )
    assert code == EXIT_OK and out == ""
    data = json.loads(path.read_text())["report"]
    jsonschema.validate(data, SCHEMA)
    assert data["verdict"] == "OrientableOddRank" and data["gw"]["rendered"] == "28h"


def test_chern_and_pic_commands(tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = invoke("chern", "--space", "Gr(2,4)", "--bundle", "sym(3,Q)", "--json", str(path))
    assert code == EXIT_OK and "deg c_4 = 27" in out
    assert json.loads(path.read_text())["top_degree"] == "27"
    code, out, _ = invoke("pic", "--space", "Gr(2,5)", "--bundle", "sym(2,Q)+sym(2,Q)")
    assert code == EXIT_OK and "relatively orientable: false" in out


def test_exit_codes():
    assert invoke("chern", "--space", "Gr(2,4)", "--bundle", "sym(3,Q")[0] == EXIT_PARSE
    assert invoke("chern", "--space", "Gr(2,4)", "--bundle", "OY(1)")[0] == EXIT_DOMAIN
    assert invoke("euler", "--space", "Gr(2,4)", "--bundle", "Q")[0] == EXIT_DOMAIN
    assert invoke("euler", "--space", "Gr(5,2)", "--bundle", "Q")[0] == EXIT_DOMAIN
    assert invoke("gw", "h", "--field", "p-adic")[0] == EXIT_DOMAIN
    code, _, err = invoke("gw", "h + ")
    assert code == EXIT_PARSE and "offset" in err
    with pytest.raises(SystemExit) as info:
        invoke("euler", "--space", "Gr(2,4)")
    assert info.value.code == 2

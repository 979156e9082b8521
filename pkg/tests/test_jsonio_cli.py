import io
import json

import pytest

from kernelforms import cli, jsonio
from kernelforms.errors import ParseError, SchemaError
from kernelforms.field import GaussianRational, I
from kernelforms.linalg import Mat
from kernelforms.polyalg import MatPoly, P_ONE, P_Z, Poly


def test_parse_problem_fixture(fixtures_dir):
    kind, space = cli.parse_problem(str(fixtures_dir / "space_deg211.json"))
    assert kind == "space"
    assert space.n == 4 and space.d == 3


def test_parse_problem_stream():
    doc = {"kind": "matpoly", "payload": [[[{"re": "1"}], [{"re": "0"}, {"re": "1"}]]]}
    kind, mp = cli.parse_problem(io.StringIO(json.dumps(doc)))
    assert kind == "matpoly"
    assert mp == MatPoly([[P_ONE, P_Z]])


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        cli.parse_problem(io.StringIO("{not json"))
    assert err.value.line == 1


def test_zero_denominator_is_schema_error():
    doc = {"kind": "matpoly", "payload": [[[{"re": "1", "im": "1/0"}]]]}
    with pytest.raises(SchemaError) as err:
        cli.parse_problem(io.StringIO(json.dumps(doc)))
    assert "/payload" in err.value.pointer


def test_non_hermitian_kernel_rejected():
    one = [[{"re": "1"}]]
    zero = [[{"re": "0"}]]
    doc = {
        "kind": "kernel",
        "payload": {"d": 1, "blocks": [[zero, one], [zero, zero]]},
    }
    with pytest.raises(SchemaError):
        cli.parse_problem(io.StringIO(json.dumps(doc)))


def test_floats_are_rejected():
    doc = {"kind": "matpoly", "payload": [[[1.5]]]}
    with pytest.raises(SchemaError):
        cli.parse_problem(io.StringIO(json.dumps(doc)))


def test_round_trips(space_deg211, kernel_deg211):
    s_doc = jsonio.space_to_json(space_deg211)
    again = jsonio.space_from_json(s_doc)
    assert again.basis == space_deg211.basis and again.gram == space_deg211.gram

    k_doc = jsonio.kernel_to_json(kernel_deg211)
    assert jsonio.kernel_from_json(k_doc) == kernel_deg211

    p = MatPoly([[Poly([GaussianRational(1, 2), I]), P_Z]])
    assert jsonio.matpoly_from_json(jsonio.matpoly_to_json(p)) == p

    pairs = Mat([[1, 0], [I, 1], [0, 0], [0, 1]])
    assert jsonio.relation_pairs_from_json(jsonio.relation_to_json(pairs)) == pairs


def test_cli_analyze_exit_codes(fixtures_dir):
    report, text, code = cli.run(["analyze", str(fixtures_dir / "space_deg211.json")])
    assert code == 0
    assert report["is_nevanlinna"] and report["is_full"]
    assert report["defect"] == 3
    assert report["dims"] == {"n": 4, "plus": 2, "minus": 2}
    assert sorted(report["degrees"], reverse=True) == [2, 1, 1]
    # text mode carries the same fields
    assert "defect number l   : 3" in text
    assert "nevanlinna kernel : true" in text

    report, _, code = cli.run(["analyze", str(fixtures_dir / "space_even_scalar.json")])
    assert code == 1 and not report["is_nevanlinna"]

    report, _, code = cli.run(["analyze", str(fixtures_dir / "space_deg31_euclidean.json")])
    assert code == 1 and not report["cond_a"]


def test_cli_decompose_declines_gapped(fixtures_dir):
    report, _, code = cli.run(["decompose", str(fixtures_dir / "space_gapped.json")])
    assert code == 1
    assert report["error"]["type"] == "RangeConditionFails"


def test_cli_verify_pair(fixtures_dir):
    report, _, code = cli.run(
        [
            "verify-pair",
            "--kernel", str(fixtures_dir / "kernel_deg211.json"),
            "--m", str(fixtures_dir / "matpoly_x_deg211.json"),
            "--n", str(fixtures_dir / "matpoly_y_deg211.json"),
        ]
    )
    assert code == 0 and report["verified"]

    report, _, code = cli.run(
        [
            "verify-pair",
            "--kernel", str(fixtures_dir / "kernel_zcolumn.json"),
            "--m", str(fixtures_dir / "matpoly_x_deg211.json"),
            "--n", str(fixtures_dir / "matpoly_y_deg211.json"),
        ]
    )
    assert code == 1 and not report["verified"]


def test_cli_pair_kernel_matches_fixture(fixtures_dir):
    report, _, code = cli.run(
        [
            "pair-kernel",
            "--m", str(fixtures_dir / "matpoly_x_diag.json"),
            "--n", str(fixtures_dir / "matpoly_y_diag.json"),
        ]
    )
    assert code == 0
    with open(fixtures_dir / "kernel_zcolumn.json") as handle:
        assert report == json.load(handle)["payload"]


def test_cli_pair_command(fixtures_dir):
    report, _, code = cli.run(
        [
            "pair",
            str(fixtures_dir / "space_deg211.json"),
            "--extension", str(fixtures_dir / "relation_deg211_multivalued.json"),
            "--mu", "0,1",
            "--gamma", str(fixtures_dir / "matpoly_gamma_deg211.json"),
        ]
    )
    assert code == 0 and report["verified"]
    n = jsonio.matpoly_from_json(report["n"])
    mi = GaussianRational(0, -1)
    assert n == MatPoly([[0, Poly([0, mi]), 0], [0, 0, -1], [Poly([0, mi]), 0, 0]])


def test_cli_malformed_input_is_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    report, _, code = cli.run(["analyze", str(bad)])
    assert code == 2 and report["error"]["type"] == "ParseError"

    wrong_kind = tmp_path / "wrong.json"
    wrong_kind.write_text(
        json.dumps({"kind": "kernel", "payload": {"d": 1, "blocks": []}}),
        encoding="utf-8",
    )
    report, _, code = cli.run(["analyze", str(wrong_kind)])
    assert code == 2 and report["error"]["type"] == "SchemaError"

    report, _, code = cli.run(["analyze", str(tmp_path / "missing.json")])
    assert code == 2


def test_cli_smith_and_forney(fixtures_dir):
    report, _, code = cli.run(["smith", str(fixtures_dir / "matpoly_y_deg211.json")])
    assert code == 0
    u = jsonio.matpoly_from_json(report["u"])
    v = jsonio.matpoly_from_json(report["v"])
    factors = [jsonio.poly_from_json(f) for f in report["factors"]]
    mid = MatPoly.diag(factors)
    y = jsonio.matpoly_from_json(
        json.load(open(fixtures_dir / "matpoly_y_deg211.json"))["payload"]
    )
    assert u * mid * v == y

    report, _, code = cli.run(["forney", str(fixtures_dir / "matpoly_x_diag.json")])
    assert code == 2  # X alone has generic rank 2 < 3: declined as rank deficient

    # [X Y] through a pair file is rank 3; build it on the fly
    x = jsonio.matpoly_from_json(json.load(open(fixtures_dir / "matpoly_x_diag.json"))["payload"])
    yd = jsonio.matpoly_from_json(json.load(open(fixtures_dir / "matpoly_y_diag.json"))["payload"])
    import tempfile, os
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as handle:
        json.dump(jsonio.problem_to_json("matpoly", jsonio.matpoly_to_json(x.hstack(yd))), handle)
        path = handle.name
    try:
        report, _, code = cli.run(["forney", path])
        assert code == 0 and report["indices"] == [1, 0, 0]
    finally:
        os.unlink(path)


def test_cli_rowreduce(fixtures_dir):
    report, _, code = cli.run(["rowreduce", str(fixtures_dir / "matpoly_xy_deg211.json")])
    assert code == 0
    assert sorted(report["sigma"]) == [1, 1, 2]
    u = jsonio.matpoly_from_json(report["u"])
    s = jsonio.matpoly_from_json(report["s"])
    p = jsonio.matpoly_from_json(
        json.load(open(fixtures_dir / "matpoly_xy_deg211.json"))["payload"]
    )
    assert u * p == s

    # rank-dropping inputs are refused
    report, _, code = cli.run(["rowreduce", str(fixtures_dir / "matpoly_y_deg211.json")])
    assert code == 2 and report["error"]["type"] == "NotFullRank"


def test_cli_pair_defaults(fixtures_dir):
    # no --mu/--gamma: mu defaults to i, gamma to the computed defect basis;
    # the pair differs from the pinned one but must still verify
    report, _, code = cli.run(
        [
            "pair",
            str(fixtures_dir / "space_zcolumn.json"),
            "--extension", str(fixtures_dir / "relation_zcolumn_pure.json"),
        ]
    )
    assert code == 0 and report["verified"]
    assert report["mu"] == {"re": "0", "im": "1"}

    report, _, code = cli.run(
        [
            "pair",
            str(fixtures_dir / "space_deg211.json"),
            "--extension", str(fixtures_dir / "relation_deg211_operator.json"),
        ]
    )
    assert code == 0 and report["verified"]


def test_cli_pair_rejects_non_selfadjoint(fixtures_dir):
    # the graph of multiplication itself is not a self-adjoint extension
    import tempfile, os
    from kernelforms.qfunction import multiplication_graph

    space = jsonio.space_from_json(
        json.load(open(fixtures_dir / "space_deg211.json"))["payload"]
    )
    graph = multiplication_graph(space)
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as handle:
        json.dump(
            jsonio.problem_to_json("relation", jsonio.relation_to_json(graph.pairs)),
            handle,
        )
        path = handle.name
    try:
        report, _, code = cli.run(
            ["pair", str(fixtures_dir / "space_deg211.json"), "--extension", path]
        )
        assert code == 1
    finally:
        os.unlink(path)


def test_cli_negsq(fixtures_dir):
    report, _, code = cli.run(["negsq", str(fixtures_dir / "kernel_deg211.json")])
    assert code == 0
    assert report["minus"] == 2 and report["rank"] == 4


def test_cli_propcheck_smoke():
    report, text, code = cli.run(["propcheck", "junitary", "--trials", "5", "--seed", "7"])
    assert code == 0 and report["ok"]
    assert report["results"][0]["trials"] == 5


def test_kf_seed_env(monkeypatch):
    monkeypatch.setenv("KF_SEED", "12345")
    report, _, code = cli.run(["propcheck", "smith", "--trials", "3"])
    assert code == 0
    assert report["results"][0]["seed"] == 12345

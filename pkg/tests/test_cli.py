import json

import pytest

from wreathq import io as wio
from wreathq.cli import main
from wreathq.modules import build_induced_zero_e
from wreathq.symmetric import YoungDiagram

from conftest import make_params


AHAT1 = {"vertices": ["0", "1"],
         "edges": [{"name": "a", "tail": "0", "head": "1"},
                   {"name": "b", "tail": "0", "head": "1"}]}

S1_MODULE = {
    "params": {"n": 1, "lambda": {"0": "1", "1": "0"}, "nu": "0", "cyclotomic_order": 1},
    "support": [{"tuple": ["1"], "dim": 1}],
    "edge_actions": [],
    "sn_actions": [],
}


@pytest.fixture()
def files(tmp_path):
    qp = tmp_path / "quiver.json"
    qp.write_text(json.dumps(AHAT1))
    mp = tmp_path / "s1.json"
    mp.write_text(json.dumps(S1_MODULE))
    return tmp_path, str(qp), str(mp)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_ok(files, capsys):
    _, qp, mp = files
    code, out, _ = run(capsys, "verify", "--quiver", qp, "--module", mp)
    assert code == 0
    assert "ok" in out


def test_verify_relation_failure(files, capsys, tmp_path):
    _, qp, _ = files
    bad = dict(S1_MODULE)
    bad["params"] = {"n": 1, "lambda": {"0": "1", "1": "1"}, "nu": "0", "cyclotomic_order": 1}
    bp = tmp_path / "bad.json"
    bp.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "verify", "--quiver", qp, "--module", str(bp))
    assert code == 1
    assert "relation (i)" in out and "(1)" in out


def test_verify_malformed_matrix(files, capsys, tmp_path):
    _, qp, _ = files
    bad = json.loads(json.dumps(S1_MODULE))
    bad["edge_actions"] = [{"edge": "a*", "position": 1,
                            "source_tuple": ["1"], "matrix": [["0", "0"]]}]
    bp = tmp_path / "bad.json"
    bp.write_text(json.dumps(bad))
    code, _, err = run(capsys, "verify", "--quiver", qp, "--module", str(bp))
    assert code == 2
    assert "error" in err


def test_reflect_vertex(files, capsys, tmp_path):
    _, qp, mp = files
    out_path = str(tmp_path / "out.json")
    code, out, _ = run(capsys, "reflect", "--quiver", qp, "--module", mp,
                       "--vertex", "0", "--out", out_path)
    assert code == 0
    assert "(0) -> 2" in out and "(1) -> 1" in out
    doc = json.loads(open(out_path).read())
    assert doc["params"]["lambda"] == {"0": "-1", "1": "2"}
    # the written module passes verification
    code, out, _ = run(capsys, "verify", "--quiver", qp, "--module", out_path)
    assert code == 0


def test_reflect_empty_word_is_canonical_copy(files, capsys, tmp_path):
    _, qp, mp = files
    p1 = str(tmp_path / "copy1.json")
    code, _, _ = run(capsys, "reflect", "--quiver", qp, "--module", mp,
                     "--word", "", "--out", p1)
    assert code == 0
    p2 = str(tmp_path / "copy2.json")
    run(capsys, "reflect", "--quiver", qp, "--module", p1, "--word", "", "--out", p2)
    assert open(p1).read() == open(p2).read()


def test_reflect_double_word_restores_dims(files, capsys, tmp_path):
    _, qp, mp = files
    out_path = str(tmp_path / "ww.json")
    code, out, _ = run(capsys, "reflect", "--quiver", qp, "--module", mp,
                       "--word", "0 0", "--out", out_path)
    assert code == 0
    doc = json.loads(open(out_path).read())
    assert doc["support"] == [{"tuple": ["1"], "dim": 1}]
    assert doc["params"]["lambda"] == {"0": "1", "1": "0"}


def test_reflect_requires_exactly_one_mode(files, capsys):
    _, qp, mp = files
    code, _, _ = run(capsys, "reflect", "--quiver", qp, "--module", mp)
    assert code == 2


def test_cohomology_and_euler(files, capsys, tmp_path):
    tdir, qp, _ = files
    params = make_params(wio.parse_quiver(AHAT1), 2, {"0": "1", "1": "0"}, 0)
    module = build_induced_zero_e(params, [(YoungDiagram([2]), "1")])
    mp = tmp_path / "sq.json"
    mp.write_text(wio.to_canonical_json(wio.dump_module(module)))
    code, out, _ = run(capsys, "cohomology", "--quiver", qp, "--module", str(mp),
                       "--vertex", "0")
    assert code == 0
    assert "total: H^0 = 9, higher = 0" in out
    code, out, _ = run(capsys, "euler", "--quiver", qp, "--module", str(mp),
                       "--vertex", "0")
    assert code == 0
    assert "total: 9" in out
    assert "class [1,1]: 9" in out


def test_generic_failure_message(files, capsys, tmp_path):
    _, qp, _ = files
    pp = tmp_path / "params.json"
    pp.write_text(json.dumps(
        {"n": 3, "lambda": {"0": "2", "1": "0"}, "nu": "1", "cyclotomic_order": 1}))
    code, out, _ = run(capsys, "generic", "--quiver", qp, "--params", str(pp),
                       "--vertex", "0")
    assert code == 1
    assert "fails at p=2 (minus branch)" in out
    pp.write_text(json.dumps(
        {"n": 3, "lambda": {"0": "2", "1": "0"}, "nu": "1/3", "cyclotomic_order": 1}))
    code, out, _ = run(capsys, "generic", "--quiver", qp, "--params", str(pp),
                       "--vertex", "0")
    assert code == 0


def test_induce_and_verify(files, capsys, tmp_path):
    _, qp, _ = files
    pp = tmp_path / "params.json"
    pp.write_text(json.dumps(
        {"n": 2, "lambda": {"0": "1", "1": "-1/2"}, "nu": "1/2", "cyclotomic_order": 1}))
    out_path = str(tmp_path / "ind.json")
    code, out, _ = run(capsys, "induce", "--quiver", qp, "--params", str(pp),
                       "--blocks", '[{"diagram": [2], "vertex": "1"}]',
                       "--out", out_path)
    assert code == 0
    assert "(1,1) -> 1" in out
    code, _, _ = run(capsys, "verify", "--quiver", qp, "--module", out_path)
    assert code == 0


def test_translate_cyclic(files, capsys, tmp_path):
    _, qp, _ = files
    gp = tmp_path / "gamma.json"
    gp.write_text(json.dumps({"type": "cyclic", "m": 2}))
    sp = tmp_path / "sra.json"
    sp.write_text(json.dumps({"t": "1", "k": "1/2", "c": {"g1": "1"}}))
    code, out, _ = run(capsys, "translate", "--gamma", str(gp), "--sra", str(sp))
    assert code == 0
    assert "lambda[0] = 2" in out
    assert "lambda[1] = 0" in out
    assert "nu = 1/2" in out


def test_conditions_cli(files, capsys, tmp_path):
    _, qp, _ = files
    rp = tmp_path / "request.json"
    rp.write_text(json.dumps({
        "lambda0": {"0": "1", "1": "0"},
        "lambda": {"0": "1", "1": "-1/2"},
        "nu": "1/2",
        "word": [],
        "blocks": [{"diagram": [2], "alpha": {"1": 1}}],
        "n": 2,
    }))
    code, out, _ = run(capsys, "conditions", "--quiver", qp, "--request", str(rp))
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out
    # flip the sign of nu: the trace condition breaks
    rp.write_text(json.dumps({
        "lambda0": {"0": "1", "1": "0"},
        "lambda": {"0": "1", "1": "1/2"},
        "nu": "1/2",
        "word": [],
        "blocks": [{"diagram": [2], "alpha": {"1": 1}}],
        "n": 2,
    }))
    code, out, _ = run(capsys, "conditions", "--quiver", qp, "--request", str(rp))
    assert code == 1
    assert "trace[1]" in out


def test_word_validate(files, capsys, tmp_path):
    _, qp, _ = files
    pp = tmp_path / "params.json"
    pp.write_text(json.dumps(
        {"n": 1, "lambda": {"0": "1", "1": "0"}, "nu": "0", "cyclotomic_order": 1}))
    code, out, _ = run(capsys, "word-validate", "--quiver", qp, "--params", str(pp),
                       "--word", "0 1")
    assert code == 0
    assert "letter 0: pivot 1 [ok]" in out
    assert "final weight {0: 3, 1: -2}" in out
    code, out, _ = run(capsys, "word-validate", "--quiver", qp, "--params", str(pp),
                       "--word", "1 0")
    assert code == 1
    assert "ZERO PIVOT" in out


def test_round_trip_canonical(files, tmp_path):
    q = wio.parse_quiver(AHAT1)
    params = make_params(q, 2, {"0": "1", "1": "-1/2"}, "1/2")
    module = build_induced_zero_e(params, [(YoungDiagram([2]), "1")])
    text1 = wio.to_canonical_json(wio.dump_module(module))
    parsed = wio.parse_module(json.loads(text1), q)
    text2 = wio.to_canonical_json(wio.dump_module(parsed))
    assert text1 == text2


def test_output_determinism(files, capsys, tmp_path):
    _, qp, mp = files
    code1, out1, _ = run(capsys, "reflect", "--quiver", qp, "--module", mp, "--vertex", "0")
    code2, out2, _ = run(capsys, "reflect", "--quiver", qp, "--module", mp, "--vertex", "0")
    assert (code1, out1) == (code2, out2)


def test_induce_blocks_from_file(files, capsys, tmp_path):
    _, qp, _ = files
    pp = tmp_path / "params.json"
    pp.write_text(json.dumps(
        {"n": 2, "lambda": {"0": "1", "1": "-1/2"}, "nu": "1/2", "cyclotomic_order": 1}))
    bp = tmp_path / "blocks.json"
    bp.write_text(json.dumps([{"diagram": [2], "vertex": "1"}]))
    code, out, _ = run(capsys, "induce", "--quiver", qp, "--params", str(pp),
                       "--blocks", "@" + str(bp))
    assert code == 0
    assert "(1,1) -> 1" in out


def test_cyclotomic_module_round_trip(tmp_path, capsys):
    # an order-4 module written by reflect parses back and verifies
    from wreathq.cyclotomic import Scalar
    from wreathq.modules import point_module
    from wreathq.quiver import Quiver
    q = wio.parse_quiver(AHAT1)
    params = make_params(q, 1, {"0": Scalar.zeta(4), "1": Scalar.zero(4)},
                         Scalar.zero(4), order=4)
    v = point_module(params, "1")
    qp = tmp_path / "q.json"
    qp.write_text(json.dumps(AHAT1))
    mp = tmp_path / "zmod.json"
    mp.write_text(wio.to_canonical_json(wio.dump_module(v)))
    out = str(tmp_path / "zrefl.json")
    code, stdout, _ = run(capsys, "reflect", "--quiver", str(qp), "--module", str(mp),
                          "--vertex", "0", "--out", out)
    assert code == 0
    assert "weight now {0: -1*z^1, 1: 2*z^1}" in stdout
    code, _, _ = run(capsys, "verify", "--quiver", str(qp), "--module", out)
    assert code == 0
    text1 = open(out).read()
    parsed = wio.parse_module(json.loads(text1), q)
    assert wio.to_canonical_json(wio.dump_module(parsed)) == text1


def test_cross_process_determinism(files, tmp_path):
    import subprocess
    import sys
    _, qp, mp = files
    results = []
    out = str(tmp_path / "det.json")
    for _ in (1, 2):
        proc = subprocess.run(
            [sys.executable, "-m", "wreathq.cli", "reflect", "--quiver", qp,
             "--module", mp, "--vertex", "0", "--out", out],
            capture_output=True, text=True)
        assert proc.returncode == 0
        results.append((proc.stdout, open(out).read()))
    assert results[0] == results[1]


def test_verify_sn_shape_error(files, capsys, tmp_path):
    _, qp, _ = files
    doc = {
        "params": {"n": 2, "lambda": {"0": "0", "1": "0"}, "nu": "0",
                   "cyclotomic_order": 1},
        "support": [{"tuple": ["1", "1"], "dim": 1}],
        "edge_actions": [],
        "sn_actions": [{"adjacent": 1, "source_tuple": ["1", "1"],
                        "matrix": [["1", "0"]]}],
    }
    bp = tmp_path / "badsn.json"
    bp.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", "--quiver", qp, "--module", str(bp))
    assert code == 2 and "error" in err

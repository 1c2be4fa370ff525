"""Command-line entry point, run in-process through main().

One test starts a real HTTP server to cover the --server path; everything
else calls the handlers directly.
"""

import json
import socket
import threading
import time
from fractions import Fraction

import pytest

from weylkit import catalog, documents
from weylkit.cli import main


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _doc_path(tmp_path, name, obj):
    return _write(tmp_path, name, documents.dumps(documents.to_document(obj)))


def _canonical(fid, form=1, **overrides):
    kind, params = catalog.deterministic_draws(fid, form)[0]
    assert kind == "canonical"
    params = dict(params)
    params.update({k: Fraction(v) for k, v in overrides.items()})
    return catalog.build(fid, params, form)


@pytest.fixture()
def h3_doc(tmp_path):
    doc = {"dim": 3,
           "brackets": [{"i": 1, "j": 2, "k": 3, "value": "1"}],
           "gram": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
    return _write(tmp_path, "h3.json", documents.dumps(doc))


@pytest.fixture()
def nil_doc(tmp_path):
    return _doc_path(tmp_path, "nil.json", _canonical("nil_x_r"))


def test_analyze_valid(h3_doc, capsys):
    assert main(["analyze", h3_doc]) == 0
    out = capsys.readouterr().out
    assert "dimension          3" in out
    assert "nilpotent          yes" in out


def test_analyze_invalid_algebra(tmp_path, capsys):
    doc = {"dim": 3, "brackets": [
        {"i": 1, "j": 2, "k": 3, "value": "1"},
        {"i": 1, "j": 3, "k": 1, "value": "1"}]}
    path = _write(tmp_path, "bad.json", documents.dumps(doc))
    assert main(["analyze", path]) == 4
    assert "first violation" in capsys.readouterr().out


def test_broken_json_is_a_parse_error(tmp_path):
    path = _write(tmp_path, "broken.json", "{not json")
    assert main(["analyze", path]) == 3


def test_missing_file_is_a_parse_error():
    assert main(["analyze", "/no/such/file.json"]) == 3


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2


def test_snp_with_json_output(nil_doc, tmp_path, capsys):
    out_path = tmp_path / "resp.json"
    assert main(["snp", nil_doc, "--w1-samples", "10",
                 "--json", str(out_path)]) == 0
    text = capsys.readouterr().out
    assert "SNP space dimension 1" in text
    raw = out_path.read_text()
    assert raw.endswith("\n")
    payload = json.loads(raw)
    assert payload["solution_dim"] == 1
    assert payload["solution_basis"] == [["0", "1", "0", "0"]]


def test_structure_pass(tmp_path, capsys):
    path = _doc_path(tmp_path, "flat.json", _canonical("nil_rtimes_s1",
                                                       form=2))
    assert main(["structure", path, "--field", "0,0,0,1"]) == 0
    assert "overall: pass" in capsys.readouterr().out


def test_structure_central_field_is_invalid(nil_doc):
    assert main(["structure", nil_doc, "--field", "0,1,0,0"]) == 4


def test_structure_non_snp_field_is_invalid(tmp_path):
    path = _doc_path(tmp_path, "tilted.json",
                     _canonical("sol3_x_r", b12=1))
    assert main(["structure", path, "--field", "1,0,0,0"]) == 4


def test_classify4d_ok(capsys):
    assert main(["classify4d", "--trials", "1"]) == 0
    assert "mismatches 0" in capsys.readouterr().out


def test_classify4d_negative_control():
    assert main(["classify4d", "--trials", "1",
                 "--perturb", "nil_rtimes_s1"]) == 5


def test_classify4d_unknown_family():
    assert main(["classify4d", "--trials", "1", "--perturb", "zzz"]) == 4


def test_derivations_skew(h3_doc, capsys):
    assert main(["derivations", h3_doc, "--skew"]) == 0
    assert "skew derivation space dimension 1" in capsys.readouterr().out


def test_gt_parse(capsys):
    assert main(["gt", "parse", "121 132", "--m", "3", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "algebra dimension  5" in out
    assert "surjective         yes" in out


def test_gt_parse_rejects_equal_indices():
    assert main(["gt", "parse", "112", "--m", "3", "--n", "2"]) == 3


def test_extend_writes_a_loadable_document(h3_doc, tmp_path, capsys):
    deriv = tmp_path / "rot.json"
    deriv.write_text(json.dumps([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    out_doc = tmp_path / "ext.json"
    assert main(["extend", h3_doc, "--derivation", str(deriv),
                 "--out", str(out_doc)]) == 0
    assert "complement contained yes" in capsys.readouterr().out
    alg, inner = documents.from_document(documents.loads(out_doc.read_text()))
    assert alg.dim == 4
    assert inner is not None


def test_extend_rejects_non_skew_derivation(h3_doc, tmp_path):
    deriv = tmp_path / "grading.json"
    deriv.write_text(json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 2]]))
    assert main(["extend", h3_doc, "--derivation", str(deriv)]) == 4


def test_scan_finds_nonpositive_stretch(nil_doc, capsys):
    assert main(["scan", nil_doc, "--field", "0,1,0,0",
                 "--grid", "1,10"]) == 0
    assert "first nonpositive stretch: 1" in capsys.readouterr().out


def test_scan_all_positive_exits_5(nil_doc):
    assert main(["scan", nil_doc, "--field", "0,1,0,0",
                 "--grid", "0.25", "--samples", "400"]) == 5


def test_server_mode(h3_doc):
    uvicorn = pytest.importorskip("uvicorn")
    from weylkit.service import create_app

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    server = uvicorn.Server(uvicorn.Config(create_app(), host="127.0.0.1",
                                           port=port, log_level="error"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        deadline = time.time() + 15
        while not server.started:
            if time.time() > deadline:
                pytest.fail("server did not start in time")
            time.sleep(0.05)
        url = f"http://127.0.0.1:{port}"
        assert main(["--server", url, "analyze", h3_doc]) == 0
        # remote errors keep the local exit-code mapping
        assert main(["--server", url, "gt", "parse", "112",
                     "--m", "3", "--n", "2"]) == 3
    finally:
        server.should_exit = True
        thread.join(timeout=10)

import json
import subprocess
import sys

import pytest

from topjordan.cli import main, read_matrix
from topjordan.matq import MatQq
from topjordan.padic import PadicCtx
from topjordan.verify import SUITES

CTX52 = '{"p":5,"d":1,"k":2}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def write(tmp_path, obj, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_decompose_scalar(tmp_path, capsys):
    code, rep = run(capsys, "tjd", "decompose", "--ctx", CTX52, "--matrix", write(tmp_path, 2))
    assert code == 0
    assert rep["gamma_ts"] == "7" and rep["gamma_tu"] == "11"
    assert rep["effective_precision"] == "2"
    assert rep["certificate"]["c"] == "25"
    assert set(rep["checks"]) >= {"commute", "projection", "ts_order", "tu_reduction_unipotent"}
    assert all(rep["checks"].values())


def test_decompose_roundtrip(tmp_path, capsys):
    ctx_json = '{"p":3,"d":2,"k":5}'
    rows = [[[1, 2], [0, 1], 4], [3, [2, 2], 0], [1, 0, [0, 1]]]
    code, rep = run(capsys, "tjd", "decompose", "--ctx", ctx_json, "--matrix", write(tmp_path, rows))
    assert code == 0
    ctx = PadicCtx.from_json(json.loads(ctx_json))
    _, g = read_matrix(rows, ctx)
    _, ts = read_matrix(rep["gamma_ts"], ctx)
    _, tu = read_matrix(rep["gamma_tu"], ctx)
    assert (ts @ tu).congruent(g, int(rep["effective_precision"]))


def test_decompose_non_integral_roundtrip(tmp_path, capsys):
    ctx_json = '{"p":5,"k":12}'
    rows = [[0, 5], ["1/5", 0]]
    code, rep = run(capsys, "tjd", "decompose", "--ctx", ctx_json, "--matrix", write(tmp_path, rows))
    assert code == 0
    ctx = PadicCtx.from_json(json.loads(ctx_json))
    assert rep["gamma_ts"] == [["0", "5"], ["1/5", "0"]]
    _, ts = read_matrix(rep["gamma_ts"], ctx)
    _, tu = read_matrix(rep["gamma_tu"], ctx)
    _, g = read_matrix(rows, ctx)
    assert (ts @ tu).congruent(g, 5)


def test_embedded_ctx_and_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"ctx": {"p": 5, "k": 2}, "entries": [[2]]})))
    code, rep = run(capsys, "tjd", "decompose", "--matrix", "-")
    assert code == 0 and rep["gamma_ts"] == "7"


def test_mod_center(tmp_path, capsys):
    code, rep = run(capsys, "tjd", "decompose", "--ctx", '{"p":5,"k":4}', "--matrix", write(tmp_path, [[10, 0], [0, 15]]), "--mod-center")
    assert code == 0
    assert rep["center"] == {"p_power": "1"}
    code, rep = run(capsys, "tjd", "decompose", "--ctx", '{"p":5,"k":4}', "--matrix", write(tmp_path, [[0, 5], [1, 0]]), "--mod-center")
    assert code == 4
    assert rep["error"] == "NeedsRamified" and rep["e"] == "2" and rep["tame"] is True


def test_check(tmp_path, capsys):
    code, rep = run(capsys, "tjd", "check", "--ctx", CTX52, "--matrix", write(tmp_path, [[7, 0], [0, 18]]))
    assert code == 0
    assert rep == {"bounded": True, "abs_semisimple": True, "top_unipotent": False, "filtration": "parahoric_0"}
    code, rep = run(capsys, "tjd", "check", "--ctx", CTX52, "--matrix", write(tmp_path, [[1, 1], [0, 1]]))
    assert rep == {"bounded": True, "abs_semisimple": False, "top_unipotent": True}
    code, rep = run(capsys, "tjd", "check", "--ctx", CTX52, "--matrix", write(tmp_path, [[5, 0], [0, 1]]))
    assert rep == {"bounded": False, "filtration": "unbounded"}


def test_teichmuller(capsys):
    code, rep = run(capsys, "teichmuller", "--ctx", CTX52, "--element", "2")
    assert code == 0 and rep == "7"
    code, rep = run(capsys, "teichmuller", "--ctx", '{"p":3,"k":2}', "--element", "2")
    assert rep == "8"
    code, rep = run(capsys, "teichmuller", "--ctx", '{"p":2,"d":2,"k":3}', "--element", "[0,1]")
    assert code == 0 and len(rep) == 2


def test_profinite(capsys):
    code, rep = run(capsys, "profinite", "decompose", "--perm", "1 2 3 4 5 0", "--p", "2")
    assert code == 0
    assert rep["s"] == "g^4" and rep["u"] == "g^3"
    assert rep["orders"] == {"g": "6", "s": "3", "u": "2"}


@pytest.mark.parametrize(
    "argv, code",
    [
        (["tjd", "decompose", "--ctx", CTX52, "--matrix", "@MAT:[[5,0],[0,1]]"], 2),
        (["tjd", "decompose", "--ctx", '{"p":5,"k":2}', "--matrix", "@MAT:[[1,1],[1,1]]"], 5),
        (["tjd", "decompose", "--ctx", '{"p":4,"k":2}', "--matrix", "@MAT:[[1]]"], 5),
        (["tjd", "decompose", "--matrix", "@MAT:[[1]]"], 5),
        (["tjd", "decompose", "--ctx", CTX52, "--matrix", "@MAT:[[1, 2]]"], 5),
        (["tjd", "decompose", "--ctx", CTX52, "--matrix", "@RAW:{not json"], 5),
        # det lost in the error term is Singular, not a precision failure
        (["tjd", "check", "--ctx", '{"p":5,"k":3}', "--matrix", "@MAT:[[\"1/125\",1,0],[0,1,0],[0,0,1]]"], 5),
        (["verify", "--suite", "nope"], 5),
        (["profinite", "decompose", "--perm", "0 0", "--p", "2"], 5),
    ],
)
def test_exit_codes(tmp_path, capsys, argv, code):
    argv = list(argv)
    for i, a in enumerate(argv):
        if a.startswith("@MAT:"):
            argv[i] = write(tmp_path, json.loads(a[5:]))
        elif a.startswith("@RAW:"):
            path = tmp_path / "raw.json"
            path.write_text(a[5:])
            argv[i] = str(path)
    got, rep = run(capsys, *argv)
    assert got == code
    assert "error" in rep


def test_exit_code_table():
    from topjordan.cli import _exit_code
    from topjordan.errors import NeedsRamified, NotBoundedModCenter, PrecisionInsufficient, UnknownSuite

    assert _exit_code(PrecisionInsufficient("x")) == 3
    assert _exit_code(NotBoundedModCenter("x")) == 2
    assert _exit_code(NeedsRamified(2, 5)) == 4
    assert _exit_code(UnknownSuite("x")) == 5


def test_argparse_errors_use_input_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tjd", "bogus"])
    assert info.value.code == 5


def test_verify_and_determinism(capsys):
    code, first = run(capsys, "verify", "--suite", "tjd-roundtrip", "--seed", "1", "--trials", "10")
    assert code == 0 and first["ok"] is True
    assert first["seed"] == "1" and first["trials"] == "10"
    assert all(v["failed"] == "0" for v in first["invariants"].values())
    main(["verify", "--suite", "tjd-roundtrip", "--seed", "1", "--trials", "10"])
    again = capsys.readouterr().out
    assert json.loads(again) == first
    main(["verify", "--suite", "tjd-roundtrip", "--seed", "1", "--trials", "10"])
    assert capsys.readouterr().out == again


@pytest.mark.parametrize("suite", ["tjd-roundtrip", "projection"])
def test_verify_hundred_trials(capsys, suite):
    code, rep = run(capsys, "verify", "--suite", suite, "--seed", "1", "--trials", "100")
    assert code == 0 and rep["ok"] is True


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_runs(capsys, suite):
    code, rep = run(capsys, "verify", "--suite", suite, "--seed", "3", "--trials", "4")
    assert code == 0 and rep["ok"]


def test_out_flag(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["teichmuller", "--ctx", CTX52, "--element", "2", "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(out.read_text()) == "7"


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "topjordan", "profinite", "decompose", "--perm", "2 0 1", "--p", "2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["s"] == "g^1"


def test_read_matrix_formats():
    ctx = PadicCtx(5, 1, 4)
    _, a = read_matrix({"entries": [["1/5", 0], [0, 5]], "prec": 2}, ctx)
    assert a.scale == 1 and a.prec == 2
    _, b = read_matrix(3, ctx)
    assert b == MatQq(ctx, [[3]])

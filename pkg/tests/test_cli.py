import json
import math
import subprocess
import sys

import pytest

from rmlab.cli import COMMANDS, main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv)
    return rc, json.loads(out) if out.strip() else None, err


def test_unit_example(capsys):
    rc, doc, _ = run_json(capsys, "unit", "-d", "5")
    assert rc == 0
    assert doc["command"] == "unit" and set(doc) == {"command", "config", "result", "metadata"}
    r = doc["result"]
    assert r["unit"] == "(1+√5)/2" and r["norm"] == -1 and r["totally_positive"] == "(3+√5)/2"
    assert doc["config"]["d"] == 5


def test_pentagon_example(capsys):
    rc, doc, _ = run_json(capsys, "pentagon", "--ndeg", "4", "--mu", "q")
    assert rc == 0 and doc["result"]["residual"] == "0"
    assert doc["metadata"]["truncation"] == {"Ndeg": 4, "Qdeg": 40}


def test_pentagon_scaling_one(capsys):
    rc, doc, _ = run_json(capsys, "pentagon", "--ndeg", "2", "--qdeg", "6", "--mu", "1")
    assert rc == 0 and doc["result"]["residual"] == "nonzero"
    assert doc["result"]["nonzero_monomials"] == {"v^1u^1": [0, -1, 1, -1, 1, -1, 1]}


def test_reduce_example(capsys):
    rc, doc, _ = run_json(capsys, "reduce", "--theta", "1 1 5 /2")
    assert rc == 0 and doc["result"]["cf"] == "[1; period (1)]"
    assert doc["result"]["period"] == [1]


def test_lattice_commands(capsys):
    L = "basis=(1 0, 1/2 1/2) d=5"
    rc, doc, _ = run_json(capsys, "delta", "--lattice", L)
    assert rc == 0 and doc["result"]["delta"] == "0 1 5" and doc["result"]["conductor"] == 1
    rc, doc, _ = run_json(capsys, "dual", "--lattice", L)
    assert rc == 0 and doc["result"]["delta_product"] == "1 0 5"
    rc, doc, _ = run_json(capsys, "stab", "--theta", "0 1 2")
    assert rc == 0 and doc["result"]["g"] == "[[1,2],[1,1]]" and doc["result"]["eigenvalue"] == "1 1 2"


def test_theta_and_zeta_commands(capsys):
    rc, doc, _ = run_json(capsys, "fe-check", "--v", "0,1")
    assert rc == 0 and doc["result"]["pass"] and doc["result"]["residual"] < 1e-8
    rc, doc, _ = run_json(capsys, "hecke-avg", "--v", "0,1")
    assert rc == 0 and doc["result"]["difference"] < 1e-6
    rc, doc, _ = run_json(capsys, "zeta", "--s", "2,0")
    assert rc == 0 and doc["result"]["method"] == "mellin"
    assert doc["result"]["value"]["re"] == pytest.approx(0.9694453644914, abs=1e-10)
    rc, doc, _ = run_json(capsys, "stark")
    assert rc == 0 and doc["result"]["pass"]
    assert doc["result"]["S0"] == pytest.approx(math.exp(doc["result"]["zeta_prime_0"]))


def test_probe(capsys):
    rc, doc, _ = run_json(capsys, "probe", "--x", "1.4142135623730951")
    assert rc == 0 and doc["result"]["found"] and doc["result"]["polynomial"] == [1, 0, -2]
    rc, doc, _ = run_json(capsys, "probe", "--x", "pi")
    assert rc == 0 and not doc["result"]["found"]


def test_qtorus_commands(capsys):
    rc, doc, _ = run_json(capsys, "qtheta", "--trunc", "1")
    assert rc == 0 and doc["result"]["coefficients"]["0,0"] == pytest.approx(2**-0.5)
    rc, doc, _ = run_json(capsys, "qtheta-fe", "--g", "1,0")
    assert rc == 0 and doc["result"]["pass"]
    rc, doc, _ = run_json(capsys, "bimodule-check")
    assert rc == 0 and doc["result"]["pass"]
    rc, doc, _ = run_json(capsys, "morita", "act", "--theta", "0 1 2")
    assert rc == 0 and doc["result"]["target"] == "0 1 2 /2" and doc["result"]["cocycle"] == "0 1 2"
    rc, doc, _ = run_json(capsys, "morita", "compose", "--theta", "0 1 2", "--g", "[[1,1],[0,1]]", "--h", "[[0,1],[1,0]]")
    assert rc == 0 and doc["result"]["multiplicative"]


def test_boca_command(capsys):
    rc, doc, _ = run_json(capsys, "boca-proj", "--trunc", "6", "--coefficients")
    assert rc == 0 and "0,0" in doc["result"]["coefficients"]
    assert doc["metadata"]["truncation"]["R"] == 6.0 and doc["metadata"]["iterations"] > 0


def test_qexp_commands(capsys):
    rc, doc, _ = run_json(capsys, "rogers", "--x", "0.3", "--y", "0.7")
    assert rc == 0 and doc["result"]["residual"] < 1e-12
    rc, doc, _ = run_json(capsys, "dilog-asym")
    assert rc == 0 and abs(doc["result"]["halving_ratio"] - 0.5) < 0.1


def test_table_output(capsys):
    rc, out, _ = run(capsys, "reduce", "--theta", "1 1 5 /2", "--table")
    assert rc == 0
    assert 'result.cf         "[1; period (1)]"' in out


# exit codes


def test_unknown_subcommand_exits_2(capsys):
    rc, _, err = run(capsys, "bogus")
    assert rc == 2 and "invalid choice" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["unit", "-d", "4"],
        ["reduce", "--theta", "1 2"],
        ["delta", "--lattice", "basis=(1 0) d=5"],
        ["zeta", "--s", "1,0", "--direct"],
        ["morita", "compose", "--theta", "0 1 2"],
        ["pentagon", "--mu", "2q"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    rc, out, err = run(capsys, *argv)
    assert rc == 2 and "invalid input" in err and out == ""


def test_stark_precondition_failure(capsys):
    rc, doc, err = run_json(capsys, "stark", "--lattice", "basis=(1 0, 0 1) d=2", "--l0", "1 0 2")
    assert rc == 2 and "invalid input" in err
    assert doc["result"]["conditions"]["witness"] == "-1 = 1 mod f with (-1)' < 0"


def test_numeric_failure_exits_1(capsys):
    rc, doc, err = run_json(capsys, "qtheta-fe", "--g", "1,0", "--literal")
    assert rc == 1 and "numeric failure" in err
    assert not doc["result"]["pass"] and doc["result"]["residual"] > 1
    assert "error" in doc["metadata"]


def test_every_command_has_a_handler():
    from rmlab.cli import HANDLERS, build_parser

    assert set(HANDLERS) == set(COMMANDS)
    sub = next(a for a in build_parser()._actions if a.dest == "command")
    assert set(sub.choices) == set(COMMANDS)


# reproducibility


@pytest.mark.parametrize(
    "argv",
    [["stark"], ["theta-rm", "--v", "0.3,1"], ["boca-proj", "--trunc", "6"], ["zeta", "--s", "0.5,1"]],
)
def test_byte_identical_across_processes(argv):
    outs = [
        subprocess.run([sys.executable, "-m", "rmlab", *argv], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1] and outs[0]


def test_precision_env_is_echoed(monkeypatch, capsys):
    monkeypatch.setenv("RMLAB_PRECISION", "50")
    rc, doc, _ = run_json(capsys, "unit", "-d", "2")
    assert rc == 0 and doc["config"]["precision"] == "50"

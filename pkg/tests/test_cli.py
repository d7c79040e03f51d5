import json
from pathlib import Path

import pytest

from quivercount.cli import main
from quivercount.counts import CountKind
from quivercount.exact import LaurentPoly, eval_at

QUIVERS = Path(__file__).resolve().parents[1] / "quivers"


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *args):
    code, out, _ = run(capsys, *args)
    return code, json.loads(out)


def test_counts_two_loop(capsys):
    code, data = run_json(capsys, "counts", "--quiver", QUIVERS / "two_loop.quiver", "--dim", "3")
    assert code == 0
    row = data["results"][0]
    assert row["all_str"] == "q^18"
    assert row["nilpotent_str"] == "q^9 + 2*q^8 - q^6 - 2*q^5 + q^3"
    assert row["monomorphic_str"] == row["epimorphic_str"] == "q^18 - q^14 - q^13 - q^12 + q^9 + q^8 + q^7 - q^3"
    assert LaurentPoly.from_json(row["all"]) == LaurentPoly.monomial(18)


def test_counts_jordan_and_zero(capsys):
    code, data = run_json(capsys, "counts", "--quiver", "jordan", "--dim", "2", "--dim", "0")
    assert code == 0
    two, zero = data["results"]
    assert two["all_str"] == "q^4" and two["nilpotent_str"] == "q^2"
    assert {zero[k.value + "_str"] for k in CountKind} == {"1"}


@pytest.mark.parametrize("quiver, d", [("jordan", 6), ("two_loop", 3), ("kronecker", 4)])
def test_verify_passes(capsys, quiver, d):
    code, data = run_json(capsys, "verify", "--quiver", QUIVERS / f"{quiver}.quiver", "--maxdeg", d)
    assert code == 0 and data["pass"] is True


def test_enumerate_with_lemmas(capsys):
    code, data = run_json(capsys, "enumerate", "--quiver", "2-loop", "--dim", "1", "--dim", "2",
                          "--primes", "2", "--lemmas")
    assert code == 0
    one, two = data["results"]
    assert one["lemmas"] == {"checked": 4, "passed": 4}
    assert (two["total"], two["nilpotent"], two["monomorphic"], two["epimorphic"]) == (256, 10, 210, 210)
    assert two["lemmas"] == {"checked": 256, "passed": 256}


def test_enumerate_then_counts_agree(capsys):
    args = ["--quiver", QUIVERS / "a2.quiver", "--maxdeg", "3"]
    _, enum = run_json(capsys, "enumerate", *args, "--primes", "2,3")
    _, counts = run_json(capsys, "counts", *args)
    polys = {tuple(r["dim"]): r for r in counts["results"]}
    assert [(r["dim"], r["q"]) for r in enum["results"]] == sorted((r["dim"], r["q"]) for r in enum["results"])
    for row in enum["results"]:
        for kind in ("all", "nilpotent", "monomorphic", "epimorphic"):
            key = "total" if kind == "all" else kind
            assert eval_at(LaurentPoly.from_json(polys[tuple(row["dim"])][kind]), row["q"]) == row[key]


def test_enumerate_zero_vector(capsys):
    code, data = run_json(capsys, "enumerate", "--quiver", "kronecker", "--dim", "0,0", "--primes", "3")
    assert code == 0
    row = data["results"][0]
    assert [row[k] for k in ("total", "nilpotent", "monomorphic", "epimorphic", "conservative")] == [1] * 5


@pytest.mark.parametrize("quiver, expected", [("2-loop", "q^2 - 1"), ("jordan", "q - 1")])
def test_kac_degree_one(capsys, quiver, expected):
    code, data = run_json(capsys, "kac", "--quiver", quiver, "--maxdeg", "1")
    assert code == 0
    row = data["results"][1]
    assert row["c_str"] == row["s_str"] == row["a_str"] == expected
    assert row["integer_coeffs"] and row["roundtrip_residual_zero"]


def test_kac_degree_zero(capsys):
    code, data = run_json(capsys, "kac", "--quiver", "jordan", "--maxdeg", "0")
    assert code == 0
    assert [r["dim"] for r in data["results"]] == [[0]]


def test_out_file_and_table(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "verify", "--quiver", "a2", "--maxdeg", "2", "--out", out)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["pass"] is True
    code, stdout, _ = run(capsys, "counts", "--quiver", "jordan", "--dim", "1", "--table")
    assert "nilpotent=1" in stdout


def test_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertices 1\narrow 1 2\n")
    assert run(capsys, "counts", "--quiver", bad, "--dim", "1")[0] == 2
    assert run(capsys, "counts", "--quiver", "jordan", "--dim", "1,1")[0] == 2
    assert run(capsys, "counts", "--quiver", "nope", "--dim", "1")[0] == 2
    assert run(capsys, "enumerate", "--quiver", "jordan", "--dim", "1", "--primes", "4")[0] == 2
    code, _, err = run(capsys, "enumerate", "--quiver", "2-loop", "--dim", "3", "--primes", "2", "--budget", "100")
    assert code == 2 and "budget" in err
    assert run(capsys, "verify", "--quiver", "jordan")[0] == 2


def test_budget_error_in_kac(capsys):
    code, _, err = run(capsys, "kac", "--quiver", "2-loop", "--maxdeg", "3", "--budget", str(2**18))
    assert code == 2 and "budget" in err

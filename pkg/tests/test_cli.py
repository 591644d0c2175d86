"""End-to-end checks of the command-line surface."""

import json

import pytest

from heckealg.cache import CACHE_ENV, CACHE_FILENAME
from heckealg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ccoeff_text(capsys):
    code, out, _ = run(
        capsys, "ccoeff", "--p", "2", "--n", "2", "--M", "[1]", "--N", "[1]", "--L", "[1,1]"
    )
    assert code == 0
    assert out.strip() == "3"


def test_ccoeff_json(capsys):
    code, out, _ = run(
        capsys,
        "ccoeff", "--p", "2", "--n", "2",
        "--M", "[1]", "--N", "[1]", "--L", "[1,1]",
        "--output", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "p": 2, "n": 2, "M": [1], "N": [1], "L": [1, 1], "value": "3"
    }


def test_acoeff_and_bcoeff(capsys):
    code, out, _ = run(capsys, "acoeff", "--p", "2", "--n", "1", "--M", "[2,1]", "--N", "[1]")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "bcoeff", "--p", "2", "--n", "1", "--B", "[2]", "--A", "[]")
    assert code == 0 and out.strip() == "-2"


def test_mul_text_and_json(capsys):
    code, out, _ = run(capsys, "mul", "--p", "2", "--n", "2", "1*[1]", "1*[1]")
    assert code == 0
    assert out.strip() == "1*[2] + 3*[1,1]"
    code, out, _ = run(
        capsys, "mul", "--p", "2", "--n", "2", "1*[1]", "1*[1]", "--output", "json"
    )
    payload = json.loads(out)
    assert payload["p"] == 2 and payload["n"] == 2
    assert {"lambda": [1, 1], "coeff": "3"} in payload["terms"]
    assert all(isinstance(t["coeff"], str) for t in payload["terms"])


def test_mul_csv(capsys):
    code, out, _ = run(
        capsys, "mul", "--p", "2", "--n", "2", "1*[1]", "1*[1]", "--output", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "lambda,coeff"
    assert lines[1] == "[2],1"
    assert lines[2] == '"[1,1]",3'


def test_omega_command(capsys):
    code, out, _ = run(capsys, "omega", "--p", "2", "--n", "1", "1*[1,1]")
    assert code == 0
    assert out.strip() == "1*[1]"


def test_decompose_command(capsys):
    code, out, _ = run(capsys, "decompose", "--p", "2", "--n", "2", "1*[2]")
    assert code == 0
    assert out.strip() == "1*T1^2 - 3*T2"
    code, out, _ = run(
        capsys, "decompose", "--p", "2", "--n", "2", "1*[2]", "--output", "json"
    )
    payload = json.loads(out)
    assert {"exponents": [0, 1], "coeff": "-3"} in payload["terms"]


def test_count_subgroups(capsys):
    code, out, _ = run(capsys, "count-subgroups", "--p", "2", "--n", "2", "--trunc", "2")
    assert code == 0 and out.strip() == "15"
    code, out, _ = run(
        capsys,
        "count-subgroups", "--p", "2", "--n", "2", "--trunc", "2",
        "--output", "json",
    )
    payload = json.loads(out)
    assert payload["total"] == 15
    assert {"type": [1], "count": 3} in payload["by_type"]


def test_table_omega_json_schema(capsys):
    code, out, _ = run(
        capsys,
        "table", "omega", "--p", "2", "--n", "1",
        "--max-order-exp", "2", "--output", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["p"] == 2 and payload["n"] == 1
    by_m = {tuple(e["M"]): e["image"] for e in payload["entries"]}
    assert by_m[(1,)] == [
        {"lambda": [], "coeff": "2"},
        {"lambda": [1], "coeff": "1"},
    ]


def test_table_c_csv(capsys):
    code, out, _ = run(
        capsys, "table", "c", "--p", "2", "--n", "1", "--max-order-exp", "2"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "M,N,L,value"
    assert "[1],[1],[2],1" in lines


def test_verify_all_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "all", "--p", "2", "--n", "1", "--max-order-exp", "2"
    )
    assert code == 0
    assert "0 failed" in out
    assert "FAIL" not in out


def test_verify_json_payload(capsys):
    code, out, _ = run(
        capsys,
        "verify", "tp", "--p", "2", "--n", "1",
        "--max-order-exp", "2", "--output", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "tp" and payload["passed"] is True
    assert all(c["passed"] for c in payload["checks"])


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "0 failed" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(
        capsys, "ccoeff", "--p", "2", "--n", "2", "--M", "[1", "--N", "[]", "--L", "[1]"
    )
    assert code == 2
    assert "error:" in err


def test_bad_element_exit_code(capsys):
    code, _, err = run(capsys, "mul", "--p", "2", "--n", "2", "1*[1] junk", "1*[]")
    assert code == 2


def test_nonprime_exit_code(capsys):
    code, _, err = run(
        capsys, "ccoeff", "--p", "6", "--n", "2", "--M", "[]", "--N", "[]", "--L", "[]"
    )
    assert code == 2
    assert "prime" in err


def test_budget_exit_code(capsys):
    code, _, err = run(
        capsys, "count-subgroups", "--p", "2", "--n", "3", "--trunc", "3",
        "--budget", "50",
    )
    assert code == 3
    assert "budget" in err


def test_mismatched_rank_element_is_usage_error(capsys):
    code, _, err = run(capsys, "mul", "--p", "2", "--n", "1", "1*[1,1]", "1*[]")
    assert code == 2


def test_cache_round_trip(tmp_path, capsys):
    cache_dir = str(tmp_path / "store")
    args = ["mul", "--p", "2", "--n", "2", "1*[1]", "1*[1]", "--cache", cache_dir]
    code, cold, _ = run(capsys, *args)
    assert code == 0
    cache_file = tmp_path / "store" / CACHE_FILENAME
    assert cache_file.exists()
    first_size = cache_file.stat().st_size
    records = [json.loads(line) for line in cache_file.read_text().splitlines()]
    assert {"version": "1", "key": "c:p=2:n=2:M=[1]:N=[1]:L=[1,1]", "value": "3"} in records
    code, warm, _ = run(capsys, *args)
    assert code == 0
    assert warm == cold
    # warm run adds nothing
    assert cache_file.stat().st_size == first_size


def test_cache_env_variable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    code, out, _ = run(
        capsys, "ccoeff", "--p", "2", "--n", "2", "--M", "[1]", "--N", "[1]", "--L", "[2]"
    )
    assert code == 0
    assert (tmp_path / CACHE_FILENAME).exists()


def test_corrupt_cache_lines_warn_and_continue(tmp_path, capsys):
    cache_file = tmp_path / CACHE_FILENAME
    cache_file.write_text(
        'garbage\n'
        '{"version": "1", "key": "c:p=2:n=2:M=[1]:N=[1]:L=[1,1]", "value": "3"}\n'
        '{"version": "99", "key": "x", "value": "5"}\n'
    )
    code, out, err = run(
        capsys,
        "mul", "--p", "2", "--n", "2", "1*[1]", "1*[1]", "--cache", str(tmp_path),
    )
    assert code == 0
    assert out.strip() == "1*[2] + 3*[1,1]"
    assert err.count("skipping bad cache line") == 2


def test_poisoned_cache_value_is_used_verbatim(tmp_path, capsys):
    # the cache is trusted storage: a planted value comes straight back,
    # which is what makes the verify suites meaningful against it
    cache_file = tmp_path / CACHE_FILENAME
    cache_file.write_text(
        '{"version": "1", "key": "c:p=2:n=2:M=[1]:N=[1]:L=[1,1]", "value": "77"}\n'
    )
    code, out, _ = run(
        capsys,
        "ccoeff", "--p", "2", "--n", "2", "--M", "[1]", "--N", "[1]", "--L", "[1,1]",
        "--cache", str(tmp_path),
    )
    assert code == 0
    assert out.strip() == "77"


def test_jobs_match_sequential_table(capsys):
    argv = ["table", "a", "--p", "2", "--n", "1", "--max-order-exp", "2"]
    code, seq, _ = run(capsys, *argv)
    assert code == 0
    code, par, _ = run(capsys, *argv, "--jobs", "2")
    assert code == 0
    assert par == seq


def test_jobs_match_sequential_verify(capsys):
    argv = ["verify", "hom", "--p", "2", "--n", "1", "--max-order-exp", "1"]
    code, seq, _ = run(capsys, *argv)
    assert code == 0
    code, par, _ = run(capsys, *argv, "--jobs", "2")
    assert code == 0
    assert par == seq


def test_split_and_trunc_flags_change_nothing(capsys):
    base = run(capsys, "acoeff", "--p", "2", "--n", "1", "--M", "[2]", "--N", "[]")
    alt = run(
        capsys,
        "acoeff", "--p", "2", "--n", "1", "--M", "[2]", "--N", "[]",
        "--split", "last", "--trunc", "4",
    )
    assert base[0] == alt[0] == 0
    assert base[1] == alt[1]

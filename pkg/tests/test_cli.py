"""End-to-end tests of the command-line interface."""

import csv
import io
import json

import pytest

import chocnum.cli as cli
import chocnum.modular as modular_mod
from chocnum.cli import EXIT_FAILED, EXIT_OK, EXIT_UNRESOLVED, EXIT_USAGE, main
from chocnum.modular import chocolate2_mod, hyper_numerators_mod


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------------- gen


def test_gen_two_by_n_plain(capsys):
    code, out, _ = run(capsys, "gen", "--seq", "b", "--max", "5")
    assert code == EXIT_OK
    assert out.splitlines() == ["1 1", "2 4", "3 56", "4 1712", "5 92800"]


def test_gen_distinct_plain(capsys):
    code, out, _ = run(capsys, "gen", "--seq", "distinct", "--limit", "60")
    assert code == EXIT_OK
    assert out.splitlines() == ["1", "2", "4", "6", "24", "56"]


def test_gen_square_and_triangle(capsys):
    code, out, _ = run(capsys, "gen", "--seq", "square", "--max", "3")
    assert code == EXIT_OK and out.splitlines() == ["1 1", "2 4", "3 9408"]
    code, out, _ = run(capsys, "gen", "--seq", "triangle", "--max", "3")
    assert code == EXIT_OK
    assert out.splitlines() == ["1 1 1", "1 2 1", "2 1 1", "1 3 2", "2 2 4", "3 1 2"]


def test_gen_table_csv_round_trips(capsys):
    code, out, _ = run(capsys, "gen", "--seq", "table", "--max", "3", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "n", "value"]
    assert rows[1:4] == [["1", "1", "1"], ["1", "2", "1"], ["1", "3", "2"]]
    # re-rendering the parsed rows reproduces the output byte for byte
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    assert buf.getvalue() == out


def test_gen_jsonl_round_trips_big_integers(capsys):
    code, out, _ = run(capsys, "gen", "--seq", "square", "--max", "5", "--format", "jsonl")
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    assert records[-1] == {"n": 5, "value": 3947339798331748515840}
    rendered = "".join(json.dumps(r) + "\n" for r in records)
    assert rendered == out
    assert "e+" not in out and "E+" not in out  # decimal only, never scientific


def test_gen_flag_pairing_is_enforced(capsys):
    code, _, err = run(capsys, "gen", "--seq", "distinct", "--max", "4")
    assert code == EXIT_USAGE and "--limit" in err
    code, _, err = run(capsys, "gen", "--seq", "b", "--limit", "4")
    assert code == EXIT_USAGE and "--max" in err
    code, _, err = run(capsys, "gen", "--seq", "b")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "gen", "--seq", "b", "--max", "0")
    assert code == EXIT_USAGE


def test_gen_cache_round_trip(capsys, tmp_path):
    cache = tmp_path / "cache"
    cache.mkdir()
    code, first, _ = run(
        capsys, "gen", "--seq", "square", "--max", "3", "--cache", str(cache)
    )
    assert code == EXIT_OK
    cache_file = cache / cli.CACHE_FILENAME
    assert cache_file.exists()
    assert "3 3 9408" in cache_file.read_text().splitlines()
    code, second, _ = run(
        capsys, "gen", "--seq", "square", "--max", "3", "--cache", str(cache)
    )
    assert code == EXIT_OK and second == first


def test_gen_cache_env_var_names_default_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    code, _, _ = run(capsys, "gen", "--seq", "b", "--max", "3")
    assert code == EXIT_OK
    assert (tmp_path / cli.CACHE_FILENAME).exists()


def test_gen_corrupt_cache_is_a_usage_error(capsys, tmp_path):
    (tmp_path / cli.CACHE_FILENAME).write_text("garbage header\n")
    code, _, err = run(
        capsys, "gen", "--seq", "b", "--max", "3", "--cache", str(tmp_path)
    )
    assert code == EXIT_USAGE and "header" in err


# ---------------------------------------------------------------- oracle


def test_oracle_plain_and_compare(capsys):
    code, out, _ = run(capsys, "oracle", "--m", "2", "--n", "3")
    assert code == EXIT_OK and out.strip() == "56"
    code, out, _ = run(capsys, "oracle", "--m", "2", "--n", "2", "--compare")
    assert code == EXIT_OK and out.strip() == "4 == 4"


def test_oracle_compare_fails_loudly_on_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(cli, "count_sequences", lambda m, n, limit: 99)
    code, out, err = run(capsys, "oracle", "--m", "2", "--n", "2", "--compare")
    assert code == EXIT_FAILED
    assert out.strip() == "99 != 4"
    assert "mismatch" in err


def test_oracle_rejects_oversized_area(capsys):
    code, _, err = run(capsys, "oracle", "--m", "4", "--n", "4")
    assert code == EXIT_USAGE and "area" in err


# ---------------------------------------------------------------- factor


def test_factor_two_by_n(capsys):
    code, out, _ = run(capsys, "factor", "--seq", "b", "--index", "4")
    assert code == EXIT_OK and out.strip() == "4 1712 2^4 * 107"


def test_factor_table(capsys):
    code, out, _ = run(capsys, "factor", "--seq", "table", "--index", "4", "4")
    assert code == EXIT_OK
    assert out.strip() == "4 4 63352393728 2^12 * 3 * 13 * 19 * 20873"


def test_factor_index_arity_is_checked(capsys):
    code, _, err = run(capsys, "factor", "--seq", "b", "--index", "4", "4")
    assert code == EXIT_USAGE and "--index N" in err
    code, _, err = run(capsys, "factor", "--seq", "table", "--index", "4")
    assert code == EXIT_USAGE


# -------------------------------------------------------------------- nu


def test_nu_with_bound_check(capsys):
    code, out, _ = run(
        capsys, "nu", "--p", "2", "--seq", "b", "--max", "11",
        "--check-bound", "--format", "csv",
    )
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0] == {"n": "1", "nu": "0", "bound": "-", "ok": "true"}
    assert rows[4] == {"n": "5", "nu": "7", "bound": "5", "ok": "true"}
    assert all(r["ok"] == "true" for r in rows)


def test_nu_table_plain(capsys):
    code, out, _ = run(capsys, "nu", "--p", "2", "--seq", "table", "--max", "2")
    assert code == EXIT_OK
    assert out.splitlines() == ["1 1 0", "1 2 0", "2 1 0", "2 2 2"]


def test_nu_bound_check_requires_p2(capsys):
    code, _, err = run(
        capsys, "nu", "--p", "3", "--seq", "b", "--max", "5", "--check-bound"
    )
    assert code == EXIT_USAGE and "p=2" in err


def test_nu_rejects_composite_p(capsys):
    code, _, err = run(capsys, "nu", "--p", "4", "--seq", "b", "--max", "5")
    assert code == EXIT_USAGE and "prime" in err


# ------------------------------------------------------------------- mod


def test_mod_multiple_moduli_in_input_order(capsys):
    code, out, _ = run(
        capsys, "mod", "--seq", "b", "--modulus", "3,5", "--max", "4"
    )
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[:4] == ["b 3 1 1", "b 3 2 1", "b 3 3 2", "b 3 4 2"]
    assert lines[4:] == ["b 5 1 1", "b 5 2 4", "b 5 3 1", "b 5 4 2"]


def test_mod_hyper_numerators(capsys):
    code, out, _ = run(capsys, "mod", "--seq", "p", "--modulus", "7", "--max", "1")
    assert code == EXIT_OK and out.strip() == "p 7 1 3"


def test_mod_matches_library(capsys):
    code, out, _ = run(
        capsys, "mod", "--seq", "p", "--modulus", "9", "--max", "20",
        "--format", "jsonl",
    )
    assert code == EXIT_OK
    residues = [json.loads(line)["residue"] for line in out.splitlines()]
    assert residues == hyper_numerators_mod(20, 9)


# ---------------------------------------------------------------- period


def test_period_resolved(capsys):
    code, out, _ = run(
        capsys, "period", "--seq", "p", "--modulus", "3", "--max", "60",
        "--format", "jsonl",
    )
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["resolved"] is True
    assert rec["period"] == 3 and rec["preperiod"] == 0
    assert rec["eventually_zero"] is False


def test_period_hint_pp1(capsys):
    code, out, _ = run(
        capsys, "period", "--seq", "p", "--modulus", "7", "--max", "210",
        "--hint-pp1", "--format", "jsonl",
    )
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["period"] == 7


def test_period_unresolved_exit_code(capsys):
    code, out, _ = run(
        capsys, "period", "--seq", "b", "--modulus", "13", "--max", "100",
        "--format", "jsonl",
    )
    assert code == EXIT_UNRESOLVED
    rec = json.loads(out)
    assert rec["resolved"] is False and rec["period"] is None


def test_period_eventually_zero(capsys):
    code, out, _ = run(
        capsys, "period", "--seq", "b", "--modulus", "11", "--max", "40",
        "--format", "jsonl",
    )
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["eventually_zero"] is True and rec["preperiod"] == 5


# ---------------------------------------------------------------- series


def test_series_riccati(capsys):
    code, out, _ = run(capsys, "series", "--check", "riccati", "--order", "20")
    assert code == EXIT_OK and out.strip() == "residual zero through order 19"


def test_series_ode_and_hypergeom(capsys):
    code, out, _ = run(capsys, "series", "--check", "ode", "--order", "12")
    assert code == EXIT_OK and out.strip() == "identity holds through order 11"
    code, out, _ = run(capsys, "series", "--check", "hypergeom", "--order", "12")
    assert code == EXIT_OK and out.strip() == "residual zero through order 12"


def test_series_rejects_tiny_order(capsys):
    code, _, err = run(capsys, "series", "--check", "riccati", "--order", "1")
    assert code == EXIT_USAGE and "order" in err


# ------------------------------------------------------------ conjecture


def test_conjecture_consistent_run(capsys):
    code, out, _ = run(
        capsys, "conjecture", "--id", "1", "--primes", "2,3,5,11", "--max", "200",
        "--format", "jsonl",
    )
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    assert [r["modulus"] for r in records] == [2, 3, 5, 11]
    assert all(r["status"] == "CONSISTENT" for r in records)


def test_conjecture_unresolved_exit_code(capsys):
    code, out, _ = run(
        capsys, "conjecture", "--id", "2", "--primes", "13", "--max", "150"
    )
    assert code == EXIT_UNRESOLVED


def test_conjecture_inconsistent_exit_code(capsys, monkeypatch):
    fake = [1, 2, 1] + [0] * 297
    monkeypatch.setattr(modular_mod, "chocolate2_mod", lambda n, m: fake[:n])
    code, out, _ = run(
        capsys, "conjecture", "--id", "1", "--primes", "3", "--max", "300",
        "--format", "csv",
    )
    assert code == EXIT_FAILED
    assert "INCONSISTENT" in out


def test_conjecture_csv_round_trips(capsys):
    code, out, _ = run(
        capsys, "conjecture", "--id", "3", "--primes", "3,7", "--max", "600",
        "--format", "csv",
    )
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["conjecture", "modulus", "n_max", "status", "preperiod",
                       "period", "notes"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    assert buf.getvalue() == out


# ------------------------------------------------------------------ misc


def test_unknown_command_is_a_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "gen", "--seq", "nonsense", "--max", "3")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == EXIT_OK
    assert "exit codes" in out


def test_data_on_stdout_errors_on_stderr(capsys):
    _, out, err = run(capsys, "oracle", "--m", "9", "--n", "9")
    assert out == "" and err != ""

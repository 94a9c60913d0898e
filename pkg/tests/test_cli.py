"""Command-line behavior: listings, tables, reports, enumerations, exits."""
import csv
import json

import pytest

from fourierbasis.cli import (
    classical_checks,
    main,
    parse_args,
    parse_interval_set,
    run,
)


def capture(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def lines_of(capsys, argv, expect_code=0):
    code, captured = capture(capsys, argv)
    assert code == expect_code, captured.err or captured.out
    return captured.out.splitlines()


# -- parsing -------------------------------------------------------------------


def test_parse_defaults():
    config = parse_args(["verify", "--group", "S4"])
    assert config.command == "verify"
    assert config.group == "S4"
    assert config.fmt == "text"
    assert config.tolerance == 1e-9
    assert config.variant == "standard"


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as err:
        parse_args(["verify", "--group", "S2", "--bogus"])
    assert err.value.code == 2


def test_missing_command_rejected():
    with pytest.raises(SystemExit):
        parse_args([])


def test_interval_set_literals():
    assert parse_interval_set("{[3,5],[4,4]}") == frozenset({(3, 5), (4, 4)})
    assert parse_interval_set("{}") == frozenset()
    with pytest.raises(ValueError):
        parse_interval_set("[3,5]")
    with pytest.raises(ValueError):
        parse_interval_set("{[3,5],nope}")


# -- pairing-set listings --------------------------------------------------------


def test_mspace_row_counts(capsys):
    assert len(lines_of(capsys, ["mspace", "--group", "S3"])) == 8
    assert len(lines_of(capsys, ["mspace", "--group", "V2"])) == 16
    assert len(lines_of(capsys, ["mspace", "--group", "S3xS2"])) == 32


def test_mspace_json_schema(capsys):
    out = "\n".join(lines_of(capsys, ["mspace", "--group", "S2", "--format", "json"]))
    doc = json.loads(out)
    assert doc == {
        "group": "S2",
        "size": 4,
        "pairs": [["1", "1"], ["1", "eps"], ["g2", "1"], ["g2", "eps"]],
    }


def test_mspace_bad_group(capsys):
    code, captured = capture(capsys, ["mspace", "--group", "Q8"])
    assert code == 2
    assert "error" in captured.err


# -- basis tables ----------------------------------------------------------------


def test_basis_s2_table(capsys):
    assert lines_of(capsys, ["basis", "--group", "S2"]) == [
        "(g2,eps) | S1 S2 L(-1) | (1,1) + (g2,eps)",
        "(1,eps) | S1 S1 (1,1) | (1,1) + (1,eps)",
        "(g2,1) | S2 S2 (1,1) | (1,1) + (g2,1)",
        "(1,1) | S1 S2 (1,1) | (1,1)",
    ]


def test_basis_v1_matches_s2_up_to_relabeling(capsys):
    s2 = lines_of(capsys, ["basis", "--group", "S2"])
    v1 = lines_of(capsys, ["basis", "--group", "V1"])
    relabel = {"(1,1)": "(0,n0)", "(1,eps)": "(0,n1)",
               "(g2,1)": "(1,n0)", "(g2,eps)": "(1,n1)"}
    s2_vectors = [row.rsplit("|", 1)[1].strip() for row in s2]
    v1_vectors = [row.rsplit("|", 1)[1].strip() for row in v1]
    for text, want in zip(s2_vectors, v1_vectors):
        for old, new in relabel.items():
            text = text.replace(old, new)
        assert sorted(text.split(" + ")) == sorted(want.split(" + "))


def test_basis_primed_variant_swaps_seed_rows(capsys):
    std = lines_of(capsys, ["basis", "--group", "S5"])
    primed = lines_of(capsys, ["basis", "--group", "S5", "--variant", "primed"])
    assert len(std) == len(primed) == 39
    changed = [(a, b) for a, b in zip(std, primed) if a != b]
    assert len(changed) == 3
    for a, b in changed:
        assert a.split("|")[0].strip().startswith("(g5,zeta^")
        assert "L'(" in a and "L'(" not in b
    zeta_row_std = [r for r in std if r.startswith("(g5,zeta) ")]
    zeta_row_primed = [r for r in primed if r.startswith("(g5,zeta) ")]
    assert zeta_row_std == zeta_row_primed


def test_basis_csv_matrix_is_unitriangular(capsys):
    rows = list(csv.reader(lines_of(capsys, ["basis", "--group", "S4",
                                             "--format", "csv"])))
    assert len(rows) == 22
    width = len(rows[0]) - 4
    assert width == 21
    for i, row in enumerate(rows[1:]):
        cells = row[4:]
        assert cells[i] == "1"
        assert all(c == "0" for c in cells[:i])


def test_basis_json_round_trip(capsys):
    out = "\n".join(lines_of(capsys, ["basis", "--group", "S3", "--format", "json"]))
    doc = json.loads(out)
    assert len(doc) == 8
    assert doc[0]["pair"] == ["g2", "eps"]
    for row in doc:
        assert set(row) == {"pair", "gamma1", "gamma2", "xi", "terms"}
        for _, coeff in row["terms"]:
            for k, num, den in coeff:
                assert den >= 1 and isinstance(k, int) and isinstance(num, int)


# -- transform matrices ----------------------------------------------------------


def test_fourier_s2_text(capsys):
    rows = lines_of(capsys, ["fourier", "--group", "S2"])
    assert rows[0] == "(1,1) -> 1/2(1,1) + 1/2(1,eps) + 1/2(g2,1) + 1/2(g2,eps)"
    assert rows[1] == "(1,eps) -> 1/2(1,1) + 1/2(1,eps) - 1/2(g2,1) - 1/2(g2,eps)"


def test_fourier_csv_is_symmetric(capsys):
    rows = list(csv.reader(lines_of(capsys, ["fourier", "--group", "V2",
                                             "--format", "csv"])))
    cells = [r[1:] for r in rows[1:]]
    n = len(cells)
    assert all(len(r) == n for r in cells)
    for i in range(n):
        for j in range(n):
            assert cells[i][j] == cells[j][i]


# -- verification reports ---------------------------------------------------------


def test_verify_pass_exit_codes(capsys):
    assert lines_of(capsys, ["verify", "--group", "S4"])[-1] == "S4: pass"
    assert lines_of(capsys, ["verify", "--group", "V3"])[-1] == "V3: pass"
    tail = lines_of(capsys, ["verify", "--group", "S5",
                             "--tolerance", "1e-12"])[-1]
    assert tail == "S5: pass"


def test_verify_json_document(capsys):
    (out,) = ["\n".join(lines_of(capsys, ["verify", "--group", "S2",
                                          "--format", "json"]))]
    doc = json.loads(out)
    assert doc["group"] == "S2" and doc["passed"] is True
    assert [c["name"] for c in doc["checks"]] == [
        "linear_independence", "bipositivity", "iota_unique",
        "unitriangular", "fixed_points",
    ]
    assert doc["order"][0] == ["g2", "eps"]


def test_verify_primed_variant(capsys):
    rows = lines_of(capsys, ["verify", "--group", "S5", "--variant", "primed"])
    assert rows[-1] == "S5: pass"


# -- classical enumeration ---------------------------------------------------------


def test_classical_ff_at_two(capsys):
    rows = lines_of(capsys, ["classical", "--D", "2", "--family", "FF"])
    assert rows[0] == "4 subspaces"
    assert len(rows) == 5


def test_classical_family_counts(capsys):
    rows = lines_of(capsys, ["classical", "--D", "6", "--family", "CT"])
    assert rows[0] == "35 nested pairs"
    rows = lines_of(capsys, ["classical", "--D", "4", "--family", "SD"])
    assert rows[0].endswith("interval sets")
    assert "{[1,2]}" not in rows  # odd-length members only
    assert "{[1,3]}" in rows or "{[2,2]}" in rows


def test_classical_zof_examples(capsys):
    examples = [
        ("10", "{[3,5],[4,4],[8,10],[9,9]}", "{[1,1],[2,6]}"),
        ("10", "{[2,4],[3,3],[8,10],[8,8]}", "{[1,5],[6,6]}"),
        ("10", "{[2,4],[3,3],[6,8],[7,7]}", "{[1,9],[10,10]}"),
        ("20", "{[4,6],[5,5],[9,11],[10,10],[15,17],[16,16]}",
         "{[1,1],[2,2],[3,7],[8,12],[13,13],[14,18],[19,19],[20,20]}"),
    ]
    for D, given, expected in examples:
        assert lines_of(capsys, ["classical", "--D", D, "--zof", given]) == [
            expected
        ]


def test_classical_zof_rejects_non_member(capsys):
    code, captured = capture(
        capsys, ["classical", "--D", "4", "--zof", "{[1,1],[2,2]}"]
    )
    assert code == 2 and "error" in captured.err


def test_classical_check_props(capsys):
    rows = lines_of(capsys, ["classical", "--D", "6", "--check-props"])
    assert len(rows) == 5
    assert all(row.endswith(": pass") for row in rows)


def test_classical_checks_all_small_dimensions():
    for D in (0, 2, 4):
        assert all(ok for _, ok in classical_checks(D))


def test_classical_cap(capsys):
    code, captured = capture(capsys, ["classical", "--D", "18",
                                      "--family", "SD"])
    assert code == 2 and "error" in captured.err


# -- shipped data dump --------------------------------------------------------------


def test_goldens_counts(capsys):
    rows = lines_of(capsys, ["goldens"])
    assert len(rows) == 73
    s5 = lines_of(capsys, ["goldens", "--group", "S5"])
    assert len(s5) == 39


def test_goldens_json_matches_embedded_file(capsys):
    out = "\n".join(lines_of(capsys, ["goldens", "--format", "json"]))
    from importlib import resources

    raw = (
        resources.files("fourierbasis.data")
        .joinpath("golden_tables.json")
        .read_text()
    )
    assert json.loads(out) == json.loads(raw)


# -- output routing ------------------------------------------------------------------


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, captured = capture(
        capsys,
        ["mspace", "--group", "S2", "--format", "csv", "--out", str(target)],
    )
    assert code == 0 and captured.out == ""
    assert target.read_text().splitlines()[0] == "class,character"


def test_run_config_dispatch():
    config = parse_args(["mspace", "--group", "S1"])
    rows, code = run(config)
    assert code == 0 and rows == ["(1,1)"]

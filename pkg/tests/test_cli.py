"""Command-line interface: outputs, exit codes, JSON modes."""

from __future__ import annotations

import json

import pytest

from sgat import (
    bintree_spec,
    chain_triangles_spec,
    example4_lformula,
    expand,
    fpn_path,
    parse_document,
    rand_1level_lspec,
    rand_fpn_formula,
    tri_spec,
)
from sgat.cli import main


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, text in {
        "tri.lspec": tri_spec(),
        "ct7.lspec": chain_triangles_spec(7),
        "bt30.lspec": bintree_spec(30),
        "path9.fpn": fpn_path(9),
        "ex4.lformula": example4_lformula(),
        "per.fpncnf": rand_fpn_formula(2, 2, 23, 5),
        "bad.lspec": "lspec T\ncell C pins 0\n  vertex a\n  edge a a\n",
        "garbage.lspec": "what is this\n",
    }.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *args):
    rc = main(list(args))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# validate / stats / expand / pieces
# ---------------------------------------------------------------------------


def test_validate_accepts_every_format(files, capsys):
    for name, kind in [
        ("tri.lspec", "lspec"),
        ("path9.fpn", "fpn"),
        ("ex4.lformula", "lformula"),
        ("per.fpncnf", "fpncnf"),
    ]:
        rc, out, err = run(capsys, "validate", files[name])
        assert rc == 0 and out == f"ok format={kind}\n" and not err


def test_validate_reports_violations(files, capsys):
    rc, out, err = run(capsys, "validate", files["bad.lspec"])
    assert rc == 2 and not out
    assert "self-loop" in err


def test_validate_rejects_unparseable_input(files, capsys):
    rc, _, err = run(capsys, "validate", files["garbage.lspec"])
    assert rc == 2 and "parse error" in err


def test_validate_json(files, capsys):
    rc, out, _ = run(capsys, "validate", files["tri.lspec"], "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["ok"] is True and doc["format"] == "lspec" and doc["violations"] == []


def test_missing_file_is_a_usage_failure(capsys):
    rc, _, err = run(capsys, "validate", "/nonexistent/x.lspec")
    assert rc == 1 and err


def test_stats_pinned_output(files, capsys):
    rc, out, _ = run(capsys, "stats", files["ex4.lformula"])
    assert rc == 0
    assert out.splitlines() == [
        "format=lformula",
        "fcells=3",
        "relations=2",
        "top=F3",
        "depth=2",
        "level_restriction=2",
        "expanded_variables=14",
        "expanded_clauses=7",
    ]
    rc, out, _ = run(capsys, "stats", files["tri.lspec"], "--json")
    doc = json.loads(out)
    assert doc["expanded_vertices"] == 3 and doc["top"] == "G2"


def test_expand_prints_the_materialized_graph(files, capsys):
    rc, out, _ = run(capsys, "expand", files["tri.lspec"])
    assert rc == 0
    lines = set(out.splitlines())
    assert {"v u", "v v", "v X/a", "e u v"} <= lines


def test_expand_respects_budget(files, capsys):
    rc, _, err = run(capsys, "expand", files["bt30.lspec"])
    assert rc == 3 and "budget exceeded" in err


def test_pieces_runs_on_every_format(files, capsys):
    for name in ("tri.lspec", "path9.fpn", "ex4.lformula", "per.fpncnf"):
        rc, out, _ = run(capsys, "pieces", files[name], "--l", "2")
        assert rc == 0 and out


# ---------------------------------------------------------------------------
# approx and its knobs
# ---------------------------------------------------------------------------


def test_approx_pinned_output(files, capsys):
    rc, out, _ = run(capsys, "approx", "mis", files["tri.lspec"], "--l", "1")
    assert rc == 0 and out == "value=1 offset=0 guarantee=1/4\n"


def test_approx_epsilon_reports_the_derived_level(files, capsys):
    rc, out, _ = run(capsys, "approx", "mis", files["tri.lspec"], "--epsilon", "0.5")
    assert rc == 0
    assert out == "epsilon=0.5 l=3\nvalue=1 offset=0 guarantee=9/16\n"


def test_approx_json(files, capsys):
    rc, out, _ = run(capsys, "approx", "mis", files["ct7.lspec"], "--l", "2", "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["value"] == 5 and doc["offset"] == 1
    assert doc["guarantee"] == "4/9" and doc["mode"] == "hier-delete"


def test_approx_requires_exactly_one_accuracy_knob(files, capsys):
    rc, _, err = run(capsys, "approx", "mis", files["tri.lspec"])
    assert rc == 1 and "usage error" in err
    rc, _, err = run(
        capsys, "approx", "mis", files["tri.lspec"], "--l", "1", "--epsilon", "0.5"
    )
    assert rc == 1 and "usage error" in err


def test_approx_rejects_problem_format_mismatch(files, capsys):
    rc, _, err = run(capsys, "approx", "maxsat", files["tri.lspec"], "--l", "2")
    assert rc == 1 and "not defined" in err
    rc, _, err = run(capsys, "approx", "mis", files["ex4.lformula"], "--l", "2")
    assert rc == 1


def test_approx_band_knob_errors(files, capsys):
    rc, _, err = run(
        capsys, "approx", "maxsat", files["ex4.lformula"], "--l", "2", "--k", "2"
    )
    assert rc == 1 and "usage error" in err
    rc, _, err = run(capsys, "approx", "mis", files["ct7.lspec"], "--l", "2", "--k", "0")
    assert rc == 2


def test_approx_baker_base(files, capsys):
    rc, out, _ = run(
        capsys, "approx", "mis", files["ct7.lspec"], "--l", "2", "--base", "baker"
    )
    assert rc == 0 and "guarantee=8/27" in out


def test_approx_threads_flag_is_accepted(files, capsys):
    rc, out, _ = run(
        capsys, "approx", "mis", files["tri.lspec"], "--l", "1", "--threads", "4"
    )
    assert rc == 0 and "value=1" in out


# ---------------------------------------------------------------------------
# query / stream / emit / oracle / verify
# ---------------------------------------------------------------------------


def test_query_answers_membership(files, capsys):
    rc, out, _ = run(capsys, "query", "mis", files["tri.lspec"], "X/a", "--l", "1")
    assert rc == 0 and out == "true\n"
    rc, out, _ = run(capsys, "query", "mis", files["tri.lspec"], "u", "--l", "1")
    assert rc == 0 and out == "false\n"
    rc, _, err = run(capsys, "query", "mis", files["tri.lspec"], "zz", "--l", "1")
    assert rc == 1 and err


def test_stream_and_cap(files, capsys):
    rc, out, _ = run(capsys, "stream", "mis", files["tri.lspec"], "--l", "1")
    assert rc == 0 and out == "sol X/a\n"
    rc, out, _ = run(
        capsys, "stream", "vc", files["ct7.lspec"], "--l", "2", "--cap", "3"
    )
    assert rc == 0 and len(out.splitlines()) == 3
    rc, out, _ = run(capsys, "stream", "mis", files["tri.lspec"], "--l", "1", "--json")
    doc = json.loads(out)
    assert doc["solution"] == ["X/a"] and doc["count"] == 1


def test_emit_round_trips_through_the_parser(files, capsys):
    rc, out, _ = run(capsys, "emit", "mis", files["ct7.lspec"], "--l", "2")
    assert rc == 0
    kind, mirror = parse_document(out)
    assert kind == "lspec"
    assert len(expand(mirror).vertices) == 5


def test_emit_rejects_value_solutions(files, capsys):
    rc, _, err = run(capsys, "emit", "maxcut", files["ct7.lspec"], "--l", "2")
    assert rc == 1 and err


def test_oracle_reports_the_exact_optimum(files, capsys):
    rc, out, _ = run(capsys, "oracle", "mis", files["tri.lspec"])
    assert rc == 0 and out == "value=1\n"
    rc, out, _ = run(capsys, "oracle", "maxsat", files["ex4.lformula"])
    assert rc == 0 and out == "value=7\n"
    rc, _, err = run(capsys, "oracle", "mis", files["bt30.lspec"])
    assert rc == 3


def test_verify_confirms_the_guarantee(files, capsys):
    rc, out, _ = run(capsys, "verify", "mis", files["tri.lspec"], "--l", "1")
    assert rc == 0
    assert out == "value=1 opt=1 bound=1/4 guarantee=1/4 ok\n"
    rc, out, _ = run(capsys, "verify", "vc", files["ct7.lspec"], "--l", "2")
    assert rc == 0 and out.rstrip().endswith("ok")


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def test_gen_matches_the_library(capsys):
    rc, out, _ = run(capsys, "gen", "tri")
    assert rc == 0 and out == tri_spec()
    rc, out, _ = run(capsys, "gen", "bintree", "6")
    assert rc == 0 and out == bintree_spec(6)
    rc, out, _ = run(capsys, "gen", "rand1level", "--cells", "4", "--seed", "9")
    assert rc == 0 and out == rand_1level_lspec(4, 9)
    rc, out, _ = run(capsys, "gen", "fpnpath", "7")
    assert rc == 0 and out == fpn_path(7)
    rc, out, _ = run(capsys, "gen", "example4")
    assert rc == 0 and out == example4_lformula()


def test_gen_usage_errors(capsys):
    rc, _, err = run(capsys, "gen", "nosuch", "3")
    assert rc == 1 and "usage error" in err
    rc, _, err = run(capsys, "gen", "bintree")
    assert rc == 1 and "size" in err


def test_unknown_subcommand(capsys):
    rc, _, err = run(capsys, "frobnicate")
    assert rc == 1 and err

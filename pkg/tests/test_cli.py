from __future__ import annotations

import json
import subprocess
import sys

import pytest

from oracles import partition_count
from rhocert.classify import DiscGH
from rhocert.cli import main
from rhocert.errors import InvalidSpec
from rhocert.report import run_check
from rhocert.specio import parse_spec, spec_to_dict
from rhocert.sweep import partitions, so_block_lists, sweep_points
from rhocert.weights import SL, SO, PairSpec, SLBlocks, SOBlocks, SOinSL

SL5 = '{"ambient":{"family":"SL","n":5},"subgroup":{"type":"sl_blocks","blocks":[2,2,1]}}'
SO43 = '{"ambient":{"family":"SO","p":4,"q":3},"subgroup":{"type":"so_blocks","blocks":[[2,1]]}}'
BAD = '{"ambient":{"family":"SL","n":3},"subgroup":{"type":"sl_blocks","blocks":[4]}}'


def run_cli(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "rhocert", *args], input=stdin, capture_output=True, text=True
    )


def test_parse_examples():
    assert parse_spec(SL5) == PairSpec(SL(5), SLBlocks((2, 2, 1)))
    assert parse_spec(SO43) == PairSpec(SO(4, 3), SOBlocks(((2, 1),)))
    with pytest.raises(InvalidSpec) as err:
        parse_spec(BAD)
    assert err.value.path == "$.subgroup.blocks"


@pytest.mark.parametrize(
    "doc, path",
    [
        ('{"ambient":{"family":"SL","n":3},"subgroup":{"type":"sl_blocks","blocks":[2]},"x":1}', "$"),
        ('{"ambient":{"family":"SL","n":3,"m":1},"subgroup":{"type":"sl_blocks","blocks":[2]}}', "$.ambient"),
        ('{"ambient":{"family":"SO","p":3,"q":1},"subgroup":{"type":"so_blocks","blocks":[[1,2]]}}',
         "$.subgroup.blocks"),
        ('{"ambient":{"family":"SL","n":3},"subgroup":{"type":"sl_blocks","blocks":[-1]}}',
         "$.subgroup.blocks[0]"),
        ('{"ambient":{"family":"SL","n":3},"subgroup":{"type":"generic","dim_a":2,'
         '"g_weights":[[[1],2]]}}', "$.subgroup.g_weights[0][0]"),
        ('{"ambient":{"family":"SL","n":3},"subgroup":{"type":"generic","dim_a":1,'
         '"g_weights":[[["1/0"],2]]}}', "$.subgroup.g_weights[0][0][0]"),
        ("{not json", "$"),
    ],
)
def test_invalid_documents_carry_paths(doc, path):
    with pytest.raises(InvalidSpec) as err:
        parse_spec(doc)
    assert err.value.path == path


def test_spec_round_trip():
    docs = [
        SL5,
        SO43,
        '{"ambient":{"family":"SL","n":4},"subgroup":{"type":"so_in_sl","p":2,"q":1},"label":"x"}',
        '{"ambient":{"family":"SL","n":3},"subgroup":{"type":"generic","dim_a":1,'
        '"g_weights":[[["1/2"],2],[[1],4]],"h_weights":[[["-1/2"],2]]}}',
    ]
    for doc in docs:
        spec = parse_spec(doc)
        assert parse_spec(json.dumps(spec_to_dict(spec))) == spec


def test_check_exit_codes(tmp_path):
    ok = tmp_path / "ok.json"
    ok.write_text(SO43)
    assert main(["check", "--spec", str(ok), "--format", "json"]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(BAD)
    assert main(["check", "--spec", str(bad)]) == 2
    assert main(["check", "--spec", str(tmp_path / "missing.json")]) == 2
    assert run_cli("check", "--spec", "-", stdin=SL5).returncode == 0
    assert run_cli("check", "--spec", "-", stdin=BAD).returncode == 2


def test_not_a_submodule_exit_code():
    doc = ('{"ambient":{"family":"SL","n":3},"subgroup":{"type":"generic","dim_a":1,'
           '"g_weights":[[[1],2]],"h_weights":[[[1],4]]}}')
    res = run_cli("check", "--spec", "-", stdin=doc)
    assert res.returncode == 2 and "invalid input" in res.stderr


def test_resource_limit_exit_code(tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text('{"ambient":{"family":"SL","n":6},"subgroup":{"type":"sl_blocks","blocks":[3,3]}}')
    assert main(["check", "--spec", str(spec), "--max-rays", "1"]) == 3


def test_check_json_report(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text('{"ambient":{"family":"SL","n":3},"subgroup":{"type":"sl_blocks","blocks":[2,1]}}')
    assert main(["check", "--spec", str(spec), "--format", "json", "--verbose-weights"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["tempered"]["status"] == "holds"
    assert out["strict"]["status"] == "fails"
    assert out["strict"]["witness"]["verified"] is True
    assert out["square_integrable"] == "unknown"
    assert out["weights"]["g"]["weights"] == [[[1], 4], [[2], 2]]
    assert any("square integrable" in n for n in out["notes"])
    assert "timing_ms" not in out


def test_text_report_mentions_verdicts(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(SO43)
    assert main(["check", "--spec", str(spec), "--timing"]) == 0
    out = capsys.readouterr().out
    assert "strict: holds" in out and "time:" in out


def test_run_check_examples():
    r = run_check(PairSpec(SL(3), SLBlocks((2, 1))))
    assert r.tempered.holds and not r.strict.holds and r.square_integrable == "unknown"
    assert r.notes
    r = run_check(PairSpec(SL(7), SOinSL(2, 1)))
    assert r.strict.holds and r.corollary.disc_G.value == "empty" and r.disc_GH is DiscGH.EMPTY
    r = run_check(PairSpec(SO(4, 2), SOBlocks(((2, 1),))))
    assert r.classifier.disc_GH is DiscGH.NONEMPTY
    assert r.classifier.justification == "so-classifier-case-1"


def test_partitions_against_generating_function():
    for n in range(0, 13):
        parts = list(partitions(n))
        assert len(parts) == partition_count(n)
        assert len(set(parts)) == len(parts) and parts == sorted(parts)
        assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in parts)


def test_so_block_lists_are_distinct_multisets():
    for p in range(4):
        for q in range(4):
            lists = so_block_lists(p, q)
            keys = [tuple(sorted(bl)) for bl in lists]
            assert len(set(keys)) == len(keys)
            assert () in lists


def test_sweep_point_sets():
    assert [pt.params for pt in sweep_points("sl-blocks", 2, 2)] == [(2, (1, 1)), (2, (2,))]
    got = {pt.params for pt in sweep_points("so-in-sl", n_max=4)}
    assert got == {(3, 2, 1), (3, 1, 2), (4, 2, 1), (4, 1, 2), (4, 2, 2), (4, 3, 1), (4, 1, 3)}


def test_sweep_so_in_sl_small():
    res = run_cli("sweep", "--family", "so-in-sl", "--n-max", "4", "--format", "json")
    rows = json.loads(res.stdout)
    assert res.returncode == 0 and len(rows) == 7
    assert all(r["strict"] == "holds" and r["disc_GH"] == "empty" for r in rows)


def test_sweep_sl_blocks_n8_row_count():
    res = run_cli("sweep", "--family", "sl-blocks", "--n", "8", "--format", "csv")
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert len(lines) - 1 == partition_count(8) == 22
    assert "condition true but strict fails: 0" in res.stderr


def test_sweep_so_blocks_fixed_pq():
    res = run_cli("sweep", "--family", "so-blocks", "--p", "3", "--q", "2", "--format", "json")
    rows = json.loads(res.stdout)
    assert len(rows) == len(so_block_lists(3, 2))
    for r in rows:
        if r["square_integrable"] == "yes":
            assert r["strict"] == "holds"


def test_sweep_argument_errors():
    assert run_cli("sweep", "--family", "so-blocks", "--p", "3").returncode == 2
    assert run_cli("sweep", "--family", "sl-blocks").returncode == 2


def test_atlas(tmp_path, monkeypatch):
    import rhocert.sweep as sweep

    monkeypatch.setitem(sweep.ATLAS_BOUNDS, "sl-blocks", dict(n_min=1, n_max=4))
    monkeypatch.setitem(sweep.ATLAS_BOUNDS, "so-in-sl", dict(n_min=3, n_max=4))
    monkeypatch.setitem(sweep.ATLAS_BOUNDS, "so-blocks", dict(pq_max=4))
    assert main(["atlas", "--out", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["sl_blocks.csv", "so_blocks.csv", "so_in_sl.csv", "summary.txt"]
    assert "disagreements: 0" in (tmp_path / "summary.txt").read_text()

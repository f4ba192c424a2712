from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidfoliation import cli, corpus, document, fixtures, reduction
from braidfoliation.document import DocumentError
from braidfoliation.tiling import TilingError, euler_and_classification


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def doc_c(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(fixtures.fixture_text("disc_four_pockets"))
    return p


# documents ---------------------------------------------------------------------


@pytest.mark.parametrize("name", list(fixtures.FIXTURES))
def test_documents_round_trip_byte_for_byte(name):
    text = fixtures.fixture_text(name)
    assert document.dumps(document.loads(text)) == text


def test_schema_error_names_the_path():
    raw = json.loads(fixtures.fixture_text("disc_three_aa"))
    raw["tiles"][0]["sign"] = "x"
    with pytest.raises(DocumentError, match=r"\$\.tiles\[0\]\.sign"):
        document.from_document(raw)


def test_duplicate_theta_rank_names_both_tiles():
    raw = json.loads(fixtures.fixture_text("disc_three_aa"))
    raw["tiles"][1]["theta_rank"] = raw["tiles"][0]["theta_rank"]
    with pytest.raises(TilingError, match="Tp and Tq"):
        document.from_document(raw)


def test_bad_json_reports_position():
    with pytest.raises(DocumentError, match="line 1 column 7"):
        document.loads('{"a": ,}')


def test_trivial_unlink_document():
    t = document.loads(document.dumps(corpus.trivial_discs(2)))
    assert (t.braid_index, t.trivial_discs, t.tile_count) == (2, 2, 0)


# commands ----------------------------------------------------------------------


def test_validate_exit_codes(capsys, doc_c, tmp_path):
    code, out, _ = run(capsys, "validate", doc_c)
    assert code == 0 and out.strip().endswith("valid")
    raw = json.loads(doc_c.read_text())
    raw["braid_index"] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(raw))
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1 and out.strip().endswith("invalid")
    (tmp_path / "junk.json").write_text("{")
    assert run(capsys, "validate", tmp_path / "junk.json")[0] == 2
    assert run(capsys, "validate", tmp_path / "missing.json")[0] == 2


def test_apply_refusal_and_success(capsys, doc_c, tmp_path):
    code, _, err = run(capsys, "apply", doc_c, "--move", "destabilize_a", "--site", "1")
    assert code == 1 and err.startswith("refused")
    out = tmp_path / "o.json"
    code, _, err = run(capsys, "apply", doc_c, "--move", "exchange_bb", "--site", "v1", "-o", out)
    assert code == 0 and err.startswith("exchange_bb v1")
    delta_V = int(err.split()[2])
    assert delta_V < 0
    assert document.load(out).vertex_count == document.load(doc_c).vertex_count + delta_V


def test_reduce_prints_transcript(capsys, doc_c, tmp_path):
    final = tmp_path / "final.json"
    code, out, _ = run(capsys, "reduce", doc_c, "--pipeline", "unlink", "-o", final)
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("initial") and lines[-1].startswith("final V=1")
    t = document.load(final)
    assert t.tile_count == 0 and t.braid_index == t.trivial_discs == 1


def test_reduce_refuses_closed_surface(capsys, tmp_path):
    p = tmp_path / "torus.json"
    p.write_text(fixtures.fixture_text("torus_checkerboard"))
    code, _, err = run(capsys, "reduce", p)
    assert code == 1 and "disc" in err


def test_graphs_report_and_dot(capsys, doc_c):
    code, out, _ = run(capsys, "graphs", doc_c)
    assert code == 0 and out
    code, out, _ = run(capsys, "graphs", doc_c, "--emit", "dot")
    assert code == 0 and out.lstrip().startswith(("graph", "digraph"))


def test_fixtures_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and all(name in out for name in fixtures.FIXTURES)
    code, out, _ = run(capsys, "fixtures", "emit", "disc_three_aa")
    assert out == fixtures.fixture_text("disc_three_aa")
    code, out, _ = run(capsys, "fixtures", "emit", "random", "--seed", 4, "--discs", 2)
    assert code == 0 and len(euler_and_classification(document.loads(out)).components) == 2
    assert run(capsys, "fixtures", "emit", "nope")[0] == 2


def test_braid_commands(capsys):
    code, out, _ = run(capsys, "braid", "invariants", "--word", "n=3 1 2 -1")
    assert code == 0 and out.strip() == "strands=3 exponent_sum=1 permutation=3 2 1 components=2"
    code, out, _ = run(capsys, "braid", "move", "--word", "n=2 1", "--kind", "destabilize")
    assert code == 0 and out == "n=1\n\n"
    code, _, err = run(capsys, "braid", "move", "--word", "n=3 1", "--kind", "destabilize")
    assert code == 1 and err.startswith("refused")
    code, out, _ = run(capsys, "braid", "certify")
    assert code == 0 and out.startswith("certified")
    code, out, _ = run(capsys, "braid", "certify", "--word", "n=2 1 1 1", "--max-nodes", 2000)
    assert code == 1 and out.startswith("inconclusive")
    assert run(capsys, "braid", "invariants", "--word", "1 2")[0] == 2


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_transcript_lines_replay_through_apply(tmp_path_factory, seed):
    """Feeding each transcript line to ``apply`` reproduces ``reduce -o``."""
    d = tmp_path_factory.mktemp("replay")
    start = d / "start.json"
    start.write_text(document.dumps(corpus.random_disc_tiling(seed, max_vertices=10)))
    final = d / "final.json"
    assert cli.main(["reduce", str(start), "-o", str(final)]) == 0
    transcript = reduction.reduce_unlink(document.load(start))
    cur = start
    for k, rec in enumerate(transcript.steps):
        nxt = d / f"s{k}.json"
        kind, site = rec.line().split()[:2]
        assert cli.main(["apply", str(cur), "--move", kind, "--site", site, "-o", str(nxt)]) == 0
        cur = nxt
    assert cur.read_text() == final.read_text()

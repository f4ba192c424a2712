"""Acceptance checks, one test per criterion.  Each prints a single PASS/FAIL line."""

from __future__ import annotations

import random
import time

import pytest

from braidfoliation import cli, corpus, document, moves, reduction
from braidfoliation.braidword import BraidWord, Budget, certify_trivial, closure_invariants, destabilize_with_sign, example_word
from braidfoliation.fixtures import FIXTURES, fixture_text, load_fixture
from braidfoliation.graphs import graph_report
from braidfoliation.moves import MoveError
from braidfoliation.tiling import Sign, derive_adjacency, euler_and_classification, foliation_key, validate

DISC_FIXTURES = ("disc_three_aa", "disc_two_pockets", "disc_four_pockets")


@pytest.fixture
def verdict(capsys):
    def report(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return report


def _surface(t):
    return sorted((c.chi, c.boundary_components) for c in euler_and_classification(t).components)


def test_criterion_1_worked_reduction(verdict, capsys, tmp_path):
    src = tmp_path / "c.json"
    src.write_text(fixture_text("disc_four_pockets"))
    final = tmp_path / "final.json"
    start = time.perf_counter()
    code = cli.main(["reduce", str(src), "--pipeline", "unlink", "-o", str(final)])
    elapsed = time.perf_counter() - start
    lines = capsys.readouterr().out.splitlines()
    steps = [line.split() for line in lines[1:-1]]
    kinds = [s[0] for s in steps]
    ex_sites = {s[1].split(",")[0] for s in steps if s[0] == "exchange_bb"}
    de_sites = sorted(s[1] for s in steps if s[0] == "destabilize_a")
    out = document.load(final)
    ok = (
        code == 0
        and kinds == ["exchange_bb"] * 4 + ["destabilize_a"] * 3
        and ex_sites == {"v1", "v2", "v3", "v4"}
        and de_sites == ["1", "3", "4"]
        and out.tile_count == 0
        and out.trivial_discs == 1
        and out.braid_index == 1
        and elapsed < 1.0
    )
    verdict(1, ok, f"{kinds.count('exchange_bb')} exchange_bb then {kinds.count('destabilize_a')} destabilize_a "
            f"at {','.join(de_sites)}; final n={out.braid_index}; {elapsed:.3f}s")


def test_criterion_2_delta_table(verdict):
    rng = random.Random(0)
    pool = corpus.corpus(40, seed=3, unstabilizing=True) + corpus.corpus(40, seed=4)
    done = violations = 0
    start = time.perf_counter()
    while done < 10_000:
        i = rng.randrange(len(pool))
        t = pool[i]
        sites = moves.candidate_sites(t)
        if not sites:
            pool[i] = corpus.random_disc_tiling(rng.randrange(10**6), unstabilizing=rng.random() < 0.5)
            continue
        kind, args = rng.choice(sites)
        try:
            out, rec = moves.apply_move(t, kind, *args)
        except MoveError:
            continue
        done += 1
        if (
            (rec.delta_V, rec.delta_t, rec.delta_n) != moves.DELTAS[kind]
            or not validate(out).ok
            or _surface(out) != _surface(t)
        ):
            violations += 1
        if out.vertex_count >= 4:
            pool[i] = out
    elapsed = time.perf_counter() - start
    verdict(2, violations == 0 and elapsed < 60, f"{done} moves, {violations} violations, {elapsed:.1f}s")


def test_criterion_3_graph_checks(verdict, discs, ab_rich):
    tilings = [load_fixture(n) for n in FIXTURES] + list(discs) + list(ab_rich)
    bad = 0
    for t in tilings:
        assert validate(t).ok
        if not all(graph_report(t).structural_checks().values()):
            bad += 1
    verdict(3, bad == 0, f"{len(tilings)} tilings, {bad} violations")


def test_criterion_4_special_markov(verdict):
    details, ok = [], True
    for name in DISC_FIXTURES:
        t = load_fixture(name)
        negative = sum(1 for v in t.vertices if v.parity is Sign.MINUS)
        out, transcript = reduction.make_special_markov(t)
        stabs = transcript.count("stabilize_ab")
        clean = all(x.kind == "aa" for x in out.tiles) and validate(out).ok
        ok &= clean and stabs == negative
        details.append(f"{name}: {stabs} stabilizations, {negative} negative vertices")
    verdict(4, ok, "; ".join(details))


def test_criterion_5_unlink_termination(verdict):
    pool = corpus.corpus(200, seed=17, max_vertices=20)
    stuck = bad_measure = 0
    for t in pool:
        assert t.vertex_count <= 20
        try:
            transcript = reduction.reduce_unlink(t)
        except reduction.ReductionError:
            stuck += 1
            continue
        if not transcript.chains() or transcript.final.t != 0:
            bad_measure += 1
    verdict(5, stuck == 0 and bad_measure == 0, f"{len(pool)} tilings, {stuck} stuck, {bad_measure} bad transcripts")


def test_criterion_6_word_replay(verdict):
    transcript = reduction.reduce_unlink(load_fixture("disc_four_pockets"))
    w = example_word()
    mismatches = 0
    for rec in transcript.steps:
        if rec.kind in ("exchange_bb", "exchange_ab"):
            mismatches += (rec.delta_n, rec.delta_e) != (0, 0)
            continue
        if rec.kind in ("destabilize_a", "stabilize_ab"):
            before = closure_invariants(w)
            if rec.kind == "destabilize_a":
                nxt = destabilize_with_sign(w, -rec.delta_e)
            else:
                nxt = BraidWord(w.strands + 1, w.letters + ((w.strands if rec.delta_e > 0 else -w.strands),))
            if nxt is None:
                mismatches += 1
                continue
            after = closure_invariants(nxt)
            mismatches += (after.strands - before.strands, after.exponent_sum - before.exponent_sum) != (
                rec.delta_n,
                rec.delta_e,
            )
            w = nxt
    start = time.perf_counter()
    result = certify_trivial(example_word(), Budget(4, 12, 10**6))
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and w == BraidWord(1) and result.found == BraidWord(1) and elapsed < 60
    verdict(6, ok, f"{mismatches} mismatches, endpoint {w}, certify {result.status} "
            f"in {result.nodes} nodes, {elapsed:.2f}s")


def test_criterion_7_foliation_involution(verdict):
    rng = random.Random(7)
    pool = corpus.corpus(60, seed=11, unstabilizing=True)
    checked = violations = 0
    while checked < 1000:
        i = rng.randrange(len(pool))
        t = pool[i]
        sites = moves.cf_sites(t)
        if not sites:
            pool[i] = corpus.random_disc_tiling(rng.randrange(10**6), unstabilizing=True)
            continue
        a, b, gamma = rng.choice(sites)
        variant = rng.choice(moves.VARIANTS)
        try:
            out, rec = moves.change_of_foliation(t, a, b, gamma, variant)
        except MoveError:
            continue
        f, s = rec.site[:2]
        old = {frozenset(e.vertices) for e in derive_adjacency(t).b_edges if {x for x, _ in e.sides} == {f, s}}
        new = [
            e
            for e in derive_adjacency(out).b_edges
            if {x for x, _ in e.sides} == {f, s} and frozenset(e.vertices) not in old
        ]
        pool[i] = out
        if not new:
            continue
        checked += 1
        other = moves.VARIANTS[1 - moves.VARIANTS.index(variant)]
        try:
            again, _ = moves.change_of_foliation(out, f, s, new[0].vertices, other)
        except MoveError:
            violations += 1
            continue
        violations += foliation_key(again) != foliation_key(t)
    verdict(7, violations == 0, f"{checked} sites, {violations} violations")

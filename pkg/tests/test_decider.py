import itertools

import numpy as np
import pytest

from free_knots import decider
from free_knots.decider import (
    check_certificate,
    decide_slice,
    explain_certificate,
    mirror_certificate,
    oracle_decide,
)
from free_knots.errors import BudgetExhaustedError, OracleBoundError
from free_knots.gauss_code import TRIVIAL, enumerate_diagrams, parse_gauss_code, random_diagram, star_diagram
from free_knots.models import (
    Correspondence,
    Pair,
    Pairing,
    SearchConfig,
    Singleton,
    Verdict,
    VerdictKind,
)
from free_knots.pairing import count_pairings, is_noncrossing
from free_knots.parity import is_odd_diagram

PRUNING_FLAGS = list(itertools.product([True, False], repeat=2))


def _config(singleton, parity, **kwargs):
    return SearchConfig(use_singleton_even_pruning=singleton, use_equal_parity_pruning=parity, **kwargs)


def _random_sample(count, max_n, seed=0):
    rng = np.random.default_rng(seed)
    return [random_diagram(int(rng.integers(1, max_n + 1)), seed=int(rng.integers(2 ** 31))) for _ in range(count)]


def test_trivial_knot_is_slice():
    verdict = decide_slice(TRIVIAL)
    assert verdict.kind is VerdictKind.SLICE
    assert verdict.certificate.blocks == ()
    assert verdict.odd


def test_interleaved_pair_is_slice_with_parallel_pair(interleaved):
    verdict = decide_slice(interleaved)
    assert verdict.kind is VerdictKind.SLICE
    assert verdict.certificate.blocks == (Pair(first=0, second=1, correspondence=Correspondence.PARALLEL),)
    assert verdict.to_dict(interleaved) == {
        "odd": True,
        "verdict": "slice",
        "certificate": [{"chords": ["a", "b"], "correspondence": "parallel"}],
        "pairings_examined": 2,
    }


def test_even_star_is_never_not_slice():
    verdict = decide_slice(parse_gauss_code("a b c a b c"))
    assert verdict.kind is not VerdictKind.NOT_SLICE
    assert not verdict.odd


def test_verdict_invariants_are_enforced():
    with pytest.raises(ValueError):
        Verdict(kind=VerdictKind.SLICE, odd=True)
    with pytest.raises(ValueError):
        Verdict(kind=VerdictKind.NOT_SLICE, odd=False)
    with pytest.raises(ValueError):
        Verdict(kind=VerdictKind.INCONCLUSIVE, odd=True)


@pytest.mark.parametrize("singleton, parity", PRUNING_FLAGS)
def test_search_matches_oracle_exhaustive(singleton, parity):
    cfg = _config(singleton, parity)
    for n in range(6):
        for diagram in enumerate_diagrams(n):
            fast = decide_slice(diagram, cfg)
            slow = oracle_decide(diagram)
            assert fast.kind is slow.kind, diagram.chords
            if fast.certificate is not None:
                assert is_noncrossing(diagram, fast.certificate)
                assert check_certificate(diagram, fast.certificate)


def test_unpruned_search_finds_the_oracle_certificate():
    cfg = _config(False, False)
    for n in range(5):
        for diagram in enumerate_diagrams(n):
            assert decide_slice(diagram, cfg).certificate == oracle_decide(diagram).certificate


def test_search_matches_oracle_on_random_diagrams():
    configs = [_config(singleton, parity) for singleton, parity in PRUNING_FLAGS]
    for diagram in _random_sample(500, 8, seed=11):
        expected = oracle_decide(diagram).kind
        for cfg in configs:
            assert decide_slice(diagram, cfg).kind is expected


def test_odd_diagrams_are_always_decided():
    for n in range(7):
        for diagram in enumerate_diagrams(n):
            verdict = decide_slice(diagram)
            if verdict.odd:
                assert verdict.kind is not VerdictKind.INCONCLUSIVE
            else:
                assert verdict.kind is not VerdictKind.NOT_SLICE


def test_sum_with_mirror_is_slice():
    for knot in _random_sample(200, 8, seed=3):
        total, pairing = mirror_certificate(knot)
        assert total.n == 2 * knot.n
        assert check_certificate(total, pairing)
        if knot.n <= 6:
            assert decide_slice(total).kind is VerdictKind.SLICE


def test_long_short_family_contains_a_non_slice_knot(long_short_family):
    assert all(d.n == 10 and is_odd_diagram(d) for d in long_short_family)
    verdicts = [decide_slice(d) for d in long_short_family]
    assert {v.kind for v in verdicts} <= {VerdictKind.SLICE, VerdictKind.NOT_SLICE}
    non_slice = [d for d, v in zip(long_short_family, verdicts) if v.kind is VerdictKind.NOT_SLICE]
    assert non_slice

    confirmed = oracle_decide(non_slice[0])
    assert confirmed.kind is VerdictKind.NOT_SLICE
    assert confirmed.pairings_examined == count_pairings(10)


def test_oracle_counts_every_pairing_it_checks(mocker):
    spy = mocker.spy(decider, "first_linked_pair")
    verdict = oracle_decide(star_diagram(4))
    assert spy.call_count == verdict.pairings_examined


def test_oracle_bound():
    with pytest.raises(OracleBoundError) as excinfo:
        oracle_decide(star_diagram(4), max_chords=3)
    assert (excinfo.value.n, excinfo.value.bound) == (4, 3)


def test_oracle_bound_comes_from_settings(monkeypatch):
    monkeypatch.setenv("FREE_KNOTS_ORACLE_MAX_CHORDS", "2")
    with pytest.raises(OracleBoundError):
        oracle_decide(star_diagram(3))


def test_threads_do_not_change_the_verdict():
    for diagram in _random_sample(30, 8, seed=5):
        sequential = decide_slice(diagram, SearchConfig(threads=1))
        for _ in range(10):
            assert decide_slice(diagram, SearchConfig(threads=4)) == sequential


def test_first_finished_branch_still_gives_a_valid_certificate():
    cfg = SearchConfig(threads=4, deterministic_certificate=False)
    for diagram in _random_sample(20, 7, seed=9):
        verdict = decide_slice(diagram, cfg)
        assert verdict.kind is oracle_decide(diagram).kind
        if verdict.certificate is not None:
            assert check_certificate(diagram, verdict.certificate)


@pytest.mark.parametrize("threads", [1, 4])
def test_budget_is_exact(threads):
    for diagram in _random_sample(15, 7, seed=21):
        needed = decide_slice(diagram).pairings_examined
        verdict = decide_slice(diagram, SearchConfig(node_budget=needed, threads=threads))
        assert verdict.pairings_examined == needed
        with pytest.raises(BudgetExhaustedError) as excinfo:
            decide_slice(diagram, SearchConfig(node_budget=needed - 1, threads=threads))
        assert excinfo.value.budget == needed - 1


def test_deep_diagrams_do_not_exhaust_the_stack():
    kinks = parse_gauss_code(" ".join(f"k{i} k{i}" for i in range(1500)))
    verdict = decide_slice(kinks)
    assert verdict.kind is VerdictKind.SLICE
    assert verdict.pairings_examined == kinks.n + 1
    assert check_certificate(kinks, verdict.certificate)
    assert decide_slice(kinks, SearchConfig(threads=2)) == verdict


def test_zero_budget(interleaved):
    with pytest.raises(BudgetExhaustedError):
        decide_slice(interleaved, SearchConfig(node_budget=0))


def test_explain_certificate_reasons(interleaved):
    good = Pairing(chord_count=2, blocks=(Pair(first=0, second=1),))
    assert explain_certificate(interleaved, good).valid

    assert explain_certificate(interleaved, Pairing(chord_count=3)).reason == "chord_count"
    assert explain_certificate(interleaved, Pairing(chord_count=2, blocks=(Singleton(chord=0),))).reason == "partition"

    report = explain_certificate(interleaved, Pairing(chord_count=2, blocks=(Singleton(chord=0), Singleton(chord=1))))
    assert report.reason == "linked_pair"
    assert report.linked_pair is not None
    assert "linked pair" in report.message
    assert not check_certificate(interleaved, Pairing(chord_count=2, blocks=(Singleton(chord=0), Singleton(chord=1))))

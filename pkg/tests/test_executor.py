from itertools import groupby

import numpy as np
import pytest

from src.analysis.pattern_miner import mine_sharable
from src.core.config import ConfigManager
from src.core.workload import generate_shared_workload, parse_workload
from src.executor.chains import build_chain
from src.executor.count_store import CountStore
from src.executor.oracle import brute_force_oracle
from src.executor.runtime import (
    Executor,
    combine_counts,
    instrumentation,
    run_non_shared,
    run_shared,
)
from src.models.data_models import (
    Event,
    RateTable,
    SequencePattern,
    SharingCandidate,
    SharingPlan,
    Stream,
)
from src.models.exceptions import InvalidPlanError, SizeGuardError
from src.optimizer.sharon_graph import plan_conflicts
from src.reports.codecs import format_results
from src.utils.helpers import SharonPipeline


def stream_of(*items):
    """`a@1` 形式的事件，可带分组 `a@1:g1`"""
    events = []
    for item in items:
        body, _, group = item.partition(":")
        event_type, _, time = body.partition("@")
        events.append(Event(int(time), event_type.upper(), group or None))
    return Stream(tuple(events))


def single(pattern="A,B", within=100, slide=100, group_by=None):
    grouping = f" GROUPBY {group_by}" if group_by else ""
    return parse_workload(f"q: PATTERN SEQ({pattern}){grouping} WITHIN {within} SLIDE {slide}")


@pytest.mark.parametrize(
    "pairs,expected",
    [([(1, 2), (5, 1)], 7), ([(9, 0)], 0), ([(2, 3), (4, 5)], 26), ([], 0)],
)
def test_combine_counts(pairs, expected):
    assert combine_counts(pairs) == expected


def test_online_count_example():
    results = run_non_shared(single(), stream_of("a@1", "b@2", "a@3", "b@4"))
    assert results.get("q", None, 0) == 3


def test_window_filtering():
    workload = single(within=4, slide=1)
    results = run_non_shared(workload, stream_of("a@1", "a@2", "b@4"))
    assert results.get("q", None, 1) == 2
    assert results.get("q", None, 2) == 1
    assert results.get("q", None, 0) == 0
    assert results == brute_force_oracle(workload, stream_of("a@1", "a@2", "b@4"))


def test_empty_stream():
    executor = Executor(single())
    results = executor.run(Stream())
    assert results.total() == 0
    assert instrumentation(executor) == {
        "count_updates": 0,
        "live_entries_peak": 0,
        "combinations": 0,
    }


def test_same_timestamp_never_chains():
    workload = single()
    results = run_non_shared(workload, stream_of("a@1", "b@1", "a@2", "b@2"))
    assert results.get("q", None, 0) == 1


def test_single_type_query_counts_events():
    workload = single("A", within=10, slide=5)
    results = run_non_shared(workload, stream_of("a@1", "a@6", "b@7"))
    assert results.get("q", None, 0) == 2
    assert results.get("q", None, 1) == 1


def test_grouped_partitions_are_independent():
    workload = single(group_by="customer")
    results = run_non_shared(workload, stream_of("a@1:g1", "a@2:g2", "b@3:g1", "b@4:g2"))
    assert results.get("q", "g1", 0) == 1
    assert results.get("q", "g2", 0) == 1
    assert results.total() == 2


def test_ungrouped_ignores_group_column():
    results = run_non_shared(single(), stream_of("a@1:g1", "b@3:g2"))
    assert results.get("q", None, 0) == 1


def test_oracle_examples():
    workload = single()
    assert brute_force_oracle(workload, stream_of("a@1", "b@2")).get("q", None, 0) == 1
    assert brute_force_oracle(workload, stream_of("a@1", "b@2", "a@3", "b@4")).get("q", None, 0) == 3


def test_oracle_size_guard():
    events = tuple(Event(t, "A") for t in range(11))
    with pytest.raises(SizeGuardError):
        brute_force_oracle(single(), Stream(events), max_events=10)


def test_shared_chain_matches_oracle():
    workload = parse_workload(
        "q1: PATTERN SEQ(A,B,C,D) WITHIN 10 SLIDE 5\nq2: PATTERN SEQ(E,B,C,F) WITHIN 10 SLIDE 5"
    )
    plan = SharingPlan.of([SharingCandidate(SequencePattern.of("B", "C"), ("q1", "q2"), 1.0)])
    stream = stream_of("a@1", "e@1", "b@2", "a@3", "b@4", "c@5", "c@6", "d@7", "f@8", "d@12")
    shared = run_shared(workload, plan, stream)
    assert shared == run_non_shared(workload, stream)
    assert shared == brute_force_oracle(workload, stream)
    assert shared.get("q1", None, 0) > 0


def test_two_shared_segments_in_one_query():
    workload = parse_workload(
        "a: PATTERN SEQ(A,B,C,D) WITHIN 20 SLIDE 5\n"
        "b: PATTERN SEQ(A,B,X) WITHIN 20 SLIDE 5\n"
        "c: PATTERN SEQ(Y,C,D) WITHIN 20 SLIDE 5"
    )
    plan = SharingPlan.of(
        [
            SharingCandidate(SequencePattern.of("A", "B"), ("a", "b"), 1.0),
            SharingCandidate(SequencePattern.of("C", "D"), ("a", "c"), 1.0),
        ]
    )
    chain = build_chain(workload.query("a"), plan.candidates_for("a"))
    assert [segment.is_shared for segment in chain] == [True, True]
    stream = stream_of("a@1", "y@1", "b@2", "a@3", "b@4", "x@5", "c@6", "c@7", "d@8", "d@9", "x@10")
    assert run_shared(workload, plan, stream) == brute_force_oracle(workload, stream)


def test_empty_plan_matches_non_shared_csv():
    workload = single(within=4, slide=2)
    stream = stream_of("a@1", "b@2", "a@3", "b@5", "b@6")
    assert format_results(run_shared(workload, SharingPlan(), stream)) == format_results(
        run_non_shared(workload, stream)
    )


def test_invalid_plans_rejected():
    workload = parse_workload(
        "q1: PATTERN SEQ(A,B,C) WITHIN 10 SLIDE 5\nq2: PATTERN SEQ(A,B,C) WITHIN 10 SLIDE 5"
    )
    ab = SharingCandidate(SequencePattern.of("A", "B"), ("q1", "q2"), 1.0)
    bc = SharingCandidate(SequencePattern.of("B", "C"), ("q1", "q2"), 1.0)
    with pytest.raises(InvalidPlanError):
        Executor(workload, SharingPlan.of([ab, bc]))
    with pytest.raises(InvalidPlanError):
        Executor(workload, SharingPlan.of([ab.with_queries(["q1", "q9"])]))
    with pytest.raises(InvalidPlanError):
        Executor(workload, SharingPlan.of([SharingCandidate(SequencePattern.of("C", "A"), ("q1", "q2"))]))


def test_same_pattern_options_rejected_in_one_plan():
    workload = parse_workload(
        "\n".join(f"{q}: PATTERN SEQ(A,B) WITHIN 10 SLIDE 5" for q in ("a", "b", "c", "d"))
    )
    ab = SequencePattern.of("A", "B")
    plan = SharingPlan.of([SharingCandidate(ab, ("a", "b"), 1.0), SharingCandidate(ab, ("c", "d"), 1.0)])
    with pytest.raises(InvalidPlanError):
        Executor(workload, plan)
    Executor(workload, SharingPlan.of([SharingCandidate(ab, ("a", "b", "c", "d"), 1.0)]))


def test_count_store_batches_and_expiry():
    store = CountStore("q", SequencePattern.of("A", "B"), within=5)
    assert len(store.process_batch(None, 1, {"A": 2}).created) == 2
    output = store.process_batch(None, 3, {"A": 1, "B": 1})
    assert sum(delta for _, delta in output.completions) == 2
    assert len(output.created) == 1
    store.expire(None, 6)
    assert len(store) == 1
    assert store.counters.count_updates > 0


def random_valid_plan(rng, candidates):
    chosen = []
    for index in rng.permutation(len(candidates)):
        candidate = candidates[int(index)]
        if rng.random() < 0.6 and not any(plan_conflicts(candidate, other) for other in chosen):
            chosen.append(candidate)
    return SharingPlan.of(chosen)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_oracle_equivalence(seed, random_workload, random_stream):
    rng = np.random.default_rng(10_000 + seed)
    workload = random_workload(seed)
    groups = 2 if workload.group_by else 0
    stream = random_stream(seed, workload.type_alphabet, max_events=300, horizon=60, groups=groups)

    expected = brute_force_oracle(workload, stream)
    non_shared = run_non_shared(workload, stream)
    assert non_shared == expected
    assert non_shared.windows == expected.windows

    pipeline = SharonPipeline(ConfigManager({"strategy": "optimal"}))
    plan, _, _ = pipeline.plan(workload, pipeline.rates(workload, stream))
    assert run_shared(workload, plan, stream) == expected

    candidates = mine_sharable(workload).candidates()
    for _ in range(5):
        assert run_shared(workload, random_valid_plan(rng, candidates), stream) == expected


@pytest.mark.parametrize("seed", range(10))
def test_prepended_ancient_events_do_not_change_later_windows(seed, random_workload, random_stream):
    workload = random_workload(seed, grouped=False)
    stream = random_stream(seed, workload.type_alphabet, max_events=120, horizon=40)
    shift = 200
    later = Stream(tuple(Event(e.time + shift, e.type) for e in stream))
    ancient = random_stream(seed + 1, workload.type_alphabet, max_events=50, horizon=20)
    combined = Stream(ancient.events + later.events)

    baseline = run_non_shared(workload, later)
    results = run_non_shared(workload, combined)
    first_clean = (20 + workload.window.within) // workload.window.slide + 1
    for (query_id, group, k), count in results.counts.items():
        if k >= first_clean:
            assert baseline.get(query_id, group, k) == count


def shared_workload_stream(k: int):
    """k 个 (P_i, S0, S1, S2, X_i) 查询；每轮各类型事件的时间布局与 k 无关"""
    workload = generate_shared_workload(k, 5, 3, within=10, slide=5)
    events = []
    for round_index in range(12):
        base = round_index * 10
        events += [Event(base, f"P{i}_0") for i in range(k)]
        events += [Event(base + 1, "S0"), Event(base + 2, "S1"), Event(base + 3, "S2")]
        events += [Event(base + 4, f"X{i}_0") for i in range(k)]
    return workload, Stream(tuple(events))


def test_shared_pattern_updates_constant_in_query_count():
    shared_types = {"S0", "S1", "S2"}
    shared_updates, non_shared_updates = {}, {}
    for k in (2, 4, 8, 16):
        workload, stream = shared_workload_stream(k)
        rates = RateTable({t: 1.0 for t in workload.type_alphabet}, workload.window)
        pipeline = SharonPipeline(ConfigManager())
        plan, _, _ = pipeline.plan(workload, rates)
        middle = SharingCandidate(SequencePattern.of("S0", "S1", "S2"), tuple(workload.query_ids))
        assert list(plan) == [middle]

        shared_results, shared_counters = pipeline.execute(workload, plan, stream)
        plain_results, plain_counters = pipeline.execute(workload, SharingPlan(), stream)
        assert shared_results == plain_results
        assert plain_results.get("q1", None, 0) > 0
        shared_updates[k] = shared_counters.updates_for_types(shared_types)
        non_shared_updates[k] = plain_counters.updates_for_types(shared_types)

    assert len(set(shared_updates.values())) == 1
    for k in (4, 8, 16):
        assert non_shared_updates[k] == non_shared_updates[2] * k // 2
    assert shared_updates[16] < non_shared_updates[16]


def shuffle_within_timestamps(stream: Stream, rng) -> Stream:
    events = []
    for _, batch in groupby(stream, key=lambda event: event.time):
        batch = list(batch)
        events += [batch[int(i)] for i in rng.permutation(len(batch))]
    return Stream(tuple(events))


@pytest.mark.parametrize("seed", range(20))
def test_group_interleaving_does_not_change_results(seed, random_workload, random_stream):
    workload = random_workload(seed, grouped=True)
    stream = random_stream(seed, workload.type_alphabet, max_events=200, horizon=40, groups=3)
    shuffled = shuffle_within_timestamps(stream, np.random.default_rng(seed))

    baseline = run_non_shared(workload, stream)
    assert run_non_shared(workload, shuffled) == baseline

    pipeline = SharonPipeline(ConfigManager())
    plan, _, _ = pipeline.plan(workload, pipeline.rates(workload, stream))
    assert run_shared(workload, plan, shuffled) == run_shared(workload, plan, stream) == baseline

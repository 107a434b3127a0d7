import pytest

from src.analysis.pattern_miner import mine_brute_force, mine_sharable
from src.core.workload import generate_shared_workload, parse_workload
from src.models.data_models import SequencePattern


def P(*types):
    return SequencePattern.of(*types)


def test_traffic_rows(traffic_workload):
    sharable = mine_sharable(traffic_workload)
    assert dict(sharable.items()) == {
        P("OakSt", "MainSt"): {"q1", "q2", "q3", "q4"},
        P("ParkAve", "OakSt"): {"q3", "q4"},
        P("ParkAve", "OakSt", "MainSt"): {"q3", "q4"},
        P("MainSt", "WestSt"): {"q2", "q4"},
        P("OakSt", "MainSt", "WestSt"): {"q2", "q4"},
    }


def test_single_query_workload_is_empty():
    workload = parse_workload("q: PATTERN SEQ(A,B,C) WITHIN 10 SLIDE 5")
    assert len(mine_sharable(workload)) == 0


def test_two_overlapping_queries():
    workload = parse_workload(
        "qa: PATTERN SEQ(A,B,C) WITHIN 10 SLIDE 5\nqb: PATTERN SEQ(B,C,D) WITHIN 10 SLIDE 5"
    )
    assert dict(mine_sharable(workload).items()) == {P("B", "C"): {"qa", "qb"}}


def test_output_sorted_by_pattern(traffic_workload):
    patterns = list(mine_sharable(traffic_workload))
    assert patterns == sorted(patterns)


def test_candidates_in_canonical_order(traffic_workload):
    candidates = mine_sharable(traffic_workload).candidates()
    assert [str(c.pattern) for c in candidates] == [
        "(MainSt,WestSt)",
        "(OakSt,MainSt)",
        "(OakSt,MainSt,WestSt)",
        "(ParkAve,OakSt)",
        "(ParkAve,OakSt,MainSt)",
    ]
    assert all(c.bvalue == 0 for c in candidates)


@pytest.mark.parametrize("seed", range(50))
def test_matches_brute_force(seed, random_workload):
    workload = random_workload(seed, max_queries=10, max_len=6, max_types=8)
    sharable = mine_sharable(workload)
    assert sharable == mine_brute_force(workload)

    # 子模式封闭性
    for pattern, queries in sharable.items():
        for start in range(len(pattern)):
            for end in range(start + 2, len(pattern) + 1):
                sub = pattern[start:end]
                if sub != pattern:
                    assert sub in sharable
                    assert sharable.queries_of(sub) >= queries


def test_many_similar_queries():
    workload = generate_shared_workload(200, 6, 4)
    sharable = mine_sharable(workload)
    # 长度 4 的共享部分共有 3 + 2 + 1 个长度大于 1 的连续子模式
    assert len(sharable) == 6
    assert all(len(queries) == 200 for _, queries in sharable.items())

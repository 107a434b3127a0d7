import json

import pytest

from src.core.workload import parse_workload
from src.models.data_models import Event, SequencePattern, SharingCandidate, SharingPlan, Stream
from src.models.exceptions import GraphFormatError, InvalidPlanError, VertexNotFoundError
from src.executor.runtime import run_non_shared
from src.reports.codecs import (
    decode_plan,
    dumps_plan,
    format_graph_dump,
    format_results,
    parse_graph_dump,
    read_graph_dump,
    read_plan,
    write_plan,
    write_results,
)
from tests.conftest import TRAFFIC_DUMP


def test_plan_json(tmp_path, traffic):
    plan = SharingPlan.of([traffic["p1"], traffic["p7"]], strategy="greedy")
    path = tmp_path / "plan.json"
    write_plan(plan, path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["score"] == 43
    assert data["strategy"] == "greedy"
    assert data["fallback"] is False
    assert data["candidates"][0] == {
        "pattern": ["ElmSt", "ParkAve"],
        "queries": ["q6", "q7"],
        "bvalue": 18.0,
    }
    loaded = read_plan(path)
    assert list(loaded) == list(plan)
    assert loaded.score == 43


def test_plan_score_recomputed():
    plan = decode_plan(
        {"score": 999, "candidates": [{"pattern": ["A", "B"], "queries": ["q2", "q1"], "bvalue": 4}]}
    )
    assert plan.score == 4
    assert list(plan)[0].queries == ("q1", "q2")


def test_empty_plan_json():
    assert decode_plan({}).is_empty
    assert json.loads(dumps_plan(SharingPlan()))["candidates"] == []


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"candidates": "p1"},
        {"candidates": [{"queries": ["q1", "q2"]}]},
        {"candidates": [{"pattern": ["A"], "queries": ["q1", "q2"]}]},
        {"candidates": [{"pattern": ["A", "B"], "queries": ["q1"]}]},
        {"candidates": [{"pattern": ["A", "B"], "queries": ["q1", "q2"], "bvalue": "x"}]},
    ],
)
def test_decode_plan_errors(data):
    with pytest.raises(InvalidPlanError):
        decode_plan(data)


def test_read_plan_invalid_json(tmp_path):
    path = tmp_path / "plan.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidPlanError):
        read_plan(path)


def test_parse_traffic_dump(traffic, traffic_graph):
    graph = parse_graph_dump(TRAFFIC_DUMP)
    assert sorted(graph) == sorted(traffic_graph)
    assert {frozenset(e) for e in graph.edges()} == {frozenset(e) for e in traffic_graph.edges()}
    assert graph.weight(traffic["p1"]) == 25


def test_graph_dump_round_trip(tmp_path, traffic_graph):
    path = tmp_path / "graph.txt"
    path.write_text(format_graph_dump(traffic_graph), encoding="utf-8")
    graph = read_graph_dump(path)
    assert list(graph) == list(traffic_graph)
    assert graph.index_edges() == traffic_graph.index_edges()


def test_dump_drops_non_positive_vertices():
    graph = parse_graph_dump("vertex (A,B)|q1,q2|3\nvertex (B,C)|q1,q2|0\nedge 0 1\n")
    assert len(graph) == 1
    assert graph.edge_count == 0


@pytest.mark.parametrize(
    "text,line",
    [
        ("vertex (A,B)|q1,q2\n", 1),
        ("vertex (A,B)|q1,q2|3\nvertex (C)|q1,q2|3\n", 2),
        ("vertex (A,B)|q1,q2|abc\n", 1),
        ("vertex (A,B)|q1,q2|3\nedge 0\n", 2),
        ("# comment\nnode 1\n", 2),
    ],
)
def test_dump_format_errors(text, line):
    with pytest.raises(GraphFormatError) as excinfo:
        parse_graph_dump(text)
    assert excinfo.value.line == line


def test_dump_edge_to_missing_vertex():
    with pytest.raises(VertexNotFoundError):
        parse_graph_dump("vertex (A,B)|q1,q2|3\nedge 0 4\n")


def test_results_csv(tmp_path):
    workload = parse_workload(
        "q: PATTERN SEQ(A,B) WITHIN 10 SLIDE 10\nr: PATTERN SEQ(B,A) WITHIN 10 SLIDE 10"
    )
    stream = Stream((Event(1, "A"), Event(2, "B"), Event(3, "A"), Event(4, "B"), Event(12, "A")))
    results = run_non_shared(workload, stream)
    expected = (
        "query,group,window_start,count\n"
        "q,,0,3\n"
        "q,,10,0\n"
        "r,,0,1\n"
        "r,,10,0\n"
    )
    assert format_results(results) == expected
    path = tmp_path / "results.csv"
    write_results(results, path)
    assert path.read_text(encoding="utf-8") == expected


def test_grouped_results_csv():
    workload = parse_workload("q: PATTERN SEQ(A,B) GROUPBY id WITHIN 10 SLIDE 10")
    stream = Stream((Event(1, "A", "y"), Event(2, "A", "x"), Event(3, "B", "x")))
    assert format_results(run_non_shared(workload, stream)).splitlines()[1:] == [
        "q,x,0,1",
        "q,y,0,0",
    ]


def test_candidate_pattern_text():
    candidate = SharingCandidate(SequencePattern.of("A", "B"), ("q1", "q2"), 2.5)
    graph_text = format_graph_dump(parse_graph_dump(f"vertex {candidate.pattern}|q1,q2|2.5\n"))
    assert graph_text == "vertex (A,B)|q1,q2|2.5\n"


def test_non_utf8_plan_and_graph_files(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_bytes(b'{"candidates": [\xff]}')
    with pytest.raises(InvalidPlanError):
        read_plan(plan)
    dump = tmp_path / "graph.txt"
    dump.write_bytes(b"vertex (A,\xff)|q1,q2|3\n")
    with pytest.raises(GraphFormatError):
        read_graph_dump(dump)


def test_dump_links_same_pattern_vertices():
    graph = parse_graph_dump("vertex (A,B)|q1,q2|3\nvertex (A,B)|q3,q4|2\nvertex (C,D)|q5,q6|1\n")
    assert graph.edge_count == 1
    assert graph.has_edge(
        SharingCandidate(SequencePattern.of("A", "B"), ("q1", "q2")),
        SharingCandidate(SequencePattern.of("A", "B"), ("q3", "q4")),
    )

"""
测试共享夹具：交通示例冲突图、q1-q4 工作负载以及随机输入生成器
"""

import numpy as np
import pytest

from src.core.workload import parse_workload
from src.models.data_models import (
    Event,
    Query,
    SequencePattern,
    SharingCandidate,
    Stream,
    WindowSpec,
    Workload,
)
from src.optimizer.sharon_graph import SharonGraph, build_graph

TRAFFIC_CANDIDATES = {
    "p1": (("OakSt", "MainSt"), ("q1", "q2", "q3", "q4"), 25.0),
    "p2": (("ParkAve", "OakSt"), ("q3", "q4"), 9.0),
    "p3": (("ParkAve", "OakSt", "MainSt"), ("q3", "q4"), 12.0),
    "p4": (("MainSt", "WestSt"), ("q2", "q4"), 15.0),
    "p5": (("OakSt", "MainSt", "WestSt"), ("q2", "q4"), 20.0),
    "p6": (("MainSt", "StateSt"), ("q1", "q5"), 8.0),
    "p7": (("ElmSt", "ParkAve"), ("q6", "q7"), 18.0),
}

TRAFFIC_EDGES = [
    ("p1", "p2"),
    ("p1", "p3"),
    ("p1", "p4"),
    ("p1", "p5"),
    ("p1", "p6"),
    ("p2", "p3"),
    ("p2", "p5"),
    ("p3", "p4"),
    ("p3", "p5"),
    ("p4", "p5"),
]

TRAFFIC_DUMP = """\
# 交通示例冲突图，BValue 为给定值
vertex (OakSt,MainSt)|q1,q2,q3,q4|25
vertex (ParkAve,OakSt)|q3,q4|9
vertex (ParkAve,OakSt,MainSt)|q3,q4|12
vertex (MainSt,WestSt)|q2,q4|15
vertex (OakSt,MainSt,WestSt)|q2,q4|20
vertex (MainSt,StateSt)|q1,q5|8
vertex (ElmSt,ParkAve)|q6,q7|18
edge 0 1
edge 0 2
edge 0 3
edge 0 4
edge 0 5
edge 1 2
edge 1 4
edge 2 3
edge 2 4
edge 3 4
"""

TRAFFIC_WORKLOAD = """\
q1: PATTERN SEQ(OakSt,MainSt,StateSt) GROUPBY vehicle WITHIN 600 SLIDE 60
q2: PATTERN SEQ(OakSt,MainSt,WestSt) GROUPBY vehicle WITHIN 600 SLIDE 60
q3: PATTERN SEQ(ParkAve,OakSt,MainSt) GROUPBY vehicle WITHIN 600 SLIDE 60
q4: PATTERN SEQ(ParkAve,OakSt,MainSt,WestSt) GROUPBY vehicle WITHIN 600 SLIDE 60
"""

WINDOW_CHOICES = [(10, 5), (8, 2), (20, 20)]


@pytest.fixture
def traffic():
    """名称 -> 带 BValue 的共享候选"""
    return {
        name: SharingCandidate(SequencePattern(pattern), queries, weight)
        for name, (pattern, queries, weight) in TRAFFIC_CANDIDATES.items()
    }


@pytest.fixture
def traffic_graph(traffic):
    return build_graph(traffic.values())


@pytest.fixture
def traffic_workload():
    return parse_workload(TRAFFIC_WORKLOAD)


@pytest.fixture
def random_graph():
    """随机带权冲突图生成器，权重为 1..30 的整数"""

    def make(seed: int, max_vertices: int = 12, max_density: float = 0.6) -> SharonGraph:
        rng = np.random.default_rng(seed)
        n = int(rng.integers(0, max_vertices + 1))
        density = float(rng.uniform(0, max_density))
        vertices = [
            SharingCandidate(
                SequencePattern((f"T{i:02d}", f"U{i:02d}")),
                ("qa", "qb"),
                float(rng.integers(1, 31)),
            )
            for i in range(n)
        ]
        edges = [
            (vertices[i], vertices[j])
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < density
        ]
        return SharonGraph(vertices, edges)

    return make


@pytest.fixture
def random_workload():
    """随机工作负载生成器：模式内类型不重复"""

    def make(
        seed: int,
        max_queries: int = 6,
        max_len: int = 5,
        max_types: int = 6,
        grouped: bool | None = None,
    ) -> Workload:
        rng = np.random.default_rng(seed)
        alphabet = [chr(ord("A") + i) for i in range(int(rng.integers(2, max_types + 1)))]
        within, slide = WINDOW_CHOICES[int(rng.integers(0, len(WINDOW_CHOICES)))]
        window = WindowSpec(within, slide)
        if grouped is None:
            grouped = bool(rng.integers(0, 2))
        queries = []
        for index in range(int(rng.integers(1, max_queries + 1))):
            length = int(rng.integers(1, min(max_len, len(alphabet)) + 1))
            types = tuple(str(t) for t in rng.permutation(alphabet)[:length])
            queries.append(
                Query(f"q{index + 1}", SequencePattern(types), window, "g" if grouped else None)
            )
        return Workload(tuple(queries), frozenset(alphabet))

    return make


@pytest.fixture
def random_stream():
    """随机事件流生成器：时间非降序，允许同一时间戳多个事件"""

    def make(seed: int, alphabet, max_events: int = 300, horizon: int = 60, groups: int = 0) -> Stream:
        rng = np.random.default_rng(seed)
        alphabet = sorted(alphabet)
        n = int(rng.integers(1, max_events + 1))
        times = np.sort(rng.integers(0, horizon, size=n))
        types = rng.integers(0, len(alphabet), size=n)
        events = []
        for time, t in zip(times, types):
            group = f"g{int(rng.integers(0, groups))}" if groups else None
            events.append(Event(int(time), alphabet[int(t)], group))
        return Stream(tuple(events))

    return make

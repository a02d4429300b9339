"""Generalised metric spaces from directed graphs, over the truncated interval quantale."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence, Tuple

from ..qcat import QCategory
from ..quantaloid import Quantaloid
from .quantales import interval_quantale


def shortest_paths(n: int, edges: Iterable[Tuple[int, int]], cap: int):
    """``d[x][y]`` is the number of edges on a shortest path ``x -> y``, capped at ``cap``."""
    out_edges = [[] for _ in range(n)]
    for a, b in edges:
        out_edges[a].append(b)
    d = [[cap] * n for _ in range(n)]
    for s in range(n):
        d[s][s] = 0
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in out_edges[a]:
                if d[s][b] == cap and b != s and d[s][a] + 1 < cap:
                    d[s][b] = d[s][a] + 1
                    queue.append(b)
    return d


def path_metric_category(points: Sequence, R: Iterable[Tuple], N: int,
                         base: Optional[Quantaloid] = None) -> QCategory:
    """Category over ``interval_quantale(N)`` with ``hom(y, x) = d(x, y)``.

    Every edge has length 1; unreachable pairs and paths of length ``>= N`` get ``N``.
    """
    Q = base if base is not None else interval_quantale(N)
    pts = list(points)
    idx = {p: i for i, p in enumerate(pts)}
    d = shortest_paths(len(pts), [(idx[a], idx[b]) for a, b in R], N)
    hom = [[d[x][y] for x in range(len(pts))] for y in range(len(pts))]
    return QCategory(Q, ["*"] * len(pts), hom, names=[str(p) for p in pts])


def pm2(N: int = 3) -> QCategory:
    """Two points with a single edge ``0 -> 1``."""
    return path_metric_category([0, 1], [(0, 1)], N)

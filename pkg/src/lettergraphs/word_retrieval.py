"""Recovering a word from a colored graph and a decoder.

Given (G, chi, D), build a precedence digraph H on V(G): for distinct u, v
there is an arc (u, v), read "u comes before v", exactly when placing v
after u is forced, i.e. when

  * {u, v} is an edge but (chi(v), chi(u)) is not in D, or
  * {u, v} is not an edge but (chi(v), chi(u)) is in D.

A linear order realizes G as the letter graph of its color word if and only
if it is a topological order of H, so the instance is solvable exactly when
H is acyclic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import MalformedInstanceError
from .graphs import Coloring, Graph, check_total_coloring
from .letters import Decoder, Word, decoder_letters, normalize_decoder


def _check_decoder_alphabet(coloring: Coloring, decoder: Decoder) -> None:
    stray = decoder_letters(decoder) - set(coloring.alphabet)
    if stray:
        raise MalformedInstanceError(f"decoder letters outside the alphabet: {sorted(stray)}")


def _successor_masks(graph: Graph, coloring: Coloring, decoder: Decoder) -> list[int]:
    """Arc bitmask per vertex index; bit j of succ[i] means arc (i, j)."""
    n = graph.n
    colors = [coloring[v] for v in graph.vertices]
    adj = graph.adjacency_masks()
    succ = [0] * n
    for i in range(n):
        ci = colors[i]
        row = adj[i]
        for j in range(n):
            if i == j:
                continue
            if (colors[j], ci) in decoder:
                if not row >> j & 1:
                    succ[i] |= 1 << j
            elif row >> j & 1:
                succ[i] |= 1 << j
    return succ


def _topological_indices(succ: list[int]) -> Optional[list[int]]:
    """Kahn's algorithm over bitmask rows, smallest index first among sources."""
    n = len(succ)
    indegree = [0] * n
    for row in succ:
        j = 0
        while row:
            if row & 1:
                indegree[j] += 1
            row >>= 1
            j += 1
    ready = [i for i in range(n) if indegree[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        row = succ[i]
        j = 0
        while row:
            if row & 1:
                indegree[j] -= 1
                if indegree[j] == 0:
                    heapq.heappush(ready, j)
            row >>= 1
            j += 1
    if len(order) != n:
        return None
    return order


class OrderDigraph:
    """The precedence digraph, materialized with named arcs."""

    __slots__ = ("vertices", "arcs", "_succ")

    def __init__(self, vertices: Sequence[str], succ: list[int]):
        self.vertices = tuple(vertices)
        self._succ = list(succ)
        arcs = set()
        for i, row in enumerate(succ):
            j = 0
            while row:
                if row & 1:
                    arcs.add((self.vertices[i], self.vertices[j]))
                row >>= 1
                j += 1
        self.arcs = frozenset(arcs)

    def has_arc(self, u: str, v: str) -> bool:
        return (u, v) in self.arcs

    def __repr__(self) -> str:
        return f"OrderDigraph({list(self.vertices)!r}, arcs={sorted(self.arcs)!r})"


@dataclass(frozen=True)
class GeneralizedSolution:
    """A vertex order realizing the graph, with its induced color word."""

    permutation: tuple[str, ...]
    word: Word


def build_order_digraph(graph: Graph, coloring: Coloring,
                        decoder: Iterable[Sequence[str]]) -> OrderDigraph:
    check_total_coloring(graph, coloring)
    d = normalize_decoder(decoder)
    _check_decoder_alphabet(coloring, d)
    return OrderDigraph(graph.vertices, _successor_masks(graph, coloring, d))


def topological_order(digraph: OrderDigraph) -> Optional[list[str]]:
    """A topological order of the digraph, or None if it has a cycle.

    Deterministic: among available sources the smallest vertex index wins.
    """
    order = _topological_indices(digraph._succ)
    if order is None:
        return None
    return [digraph.vertices[i] for i in order]


def retrieve_word(graph: Graph, coloring: Coloring,
                  decoder: Iterable[Sequence[str]]) -> Optional[GeneralizedSolution]:
    """Find a vertex order whose color word decodes back to the graph.

    Returns None exactly when no such order exists.
    """
    check_total_coloring(graph, coloring)
    d = decoder if isinstance(decoder, frozenset) else normalize_decoder(decoder)
    _check_decoder_alphabet(coloring, d)
    order = _topological_indices(_successor_masks(graph, coloring, d))
    if order is None:
        return None
    permutation = tuple(graph.vertices[i] for i in order)
    return GeneralizedSolution(permutation, tuple(coloring[v] for v in permutation))

"""Recovering a coloring from a graph, a decoder, and a word.

The letter graph of (D, w) is fully determined, so a valid coloring is
exactly an isomorphism from G onto it: map each vertex to a position and
read the position's letter.  Finding one is graph isomorphism, done here by
neighborhood refinement with backtracking individualization, which is exact
and fast at the instance sizes this package targets.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Optional, Sequence

from .errors import MalformedInstanceError
from .graphs import Coloring, Graph
from .letters import Decoder, Word, as_word, decode, normalize_decoder


def find_isomorphism(g: Graph, h: Graph) -> Optional[dict[str, str]]:
    """An isomorphism from g onto h as a vertex mapping, or None.

    Vertices are partitioned by iterated signatures (own block plus the
    multiset of neighbor blocks); when the stable partition still has
    non-singleton blocks, one vertex is individualized and every candidate
    image is tried.  Deterministic: the first smallest non-singleton block
    and its lowest-index vertex are individualized first, candidate images
    in index order.
    """
    n = g.n
    if h.n != n or g.edge_count != h.edge_count:
        return None
    if n == 0:
        return {}
    adj_g = g.adjacency_masks()
    adj_h = h.adjacency_masks()
    nbrs_g = [[j for j in range(n) if adj_g[i] >> j & 1] for i in range(n)]
    nbrs_h = [[j for j in range(n) if adj_h[i] >> j & 1] for i in range(n)]

    def refine(labels_g: list[int], labels_h: list[int]):
        while True:
            sig_g = [(labels_g[i], tuple(sorted(labels_g[j] for j in nbrs_g[i])))
                     for i in range(n)]
            sig_h = [(labels_h[i], tuple(sorted(labels_h[j] for j in nbrs_h[i])))
                     for i in range(n)]
            census = Counter(sig_g)
            if census != Counter(sig_h):
                return None
            relabel = {sig: k for k, sig in enumerate(sorted(census))}
            new_g = [relabel[s] for s in sig_g]
            new_h = [relabel[s] for s in sig_h]
            if len(relabel) == len(set(labels_g)):
                return new_g, new_h
            labels_g, labels_h = new_g, new_h

    def solve(labels_g: list[int], labels_h: list[int]) -> Optional[list[int]]:
        refined = refine(labels_g, labels_h)
        if refined is None:
            return None
        labels_g, labels_h = refined
        blocks_g: dict[int, list[int]] = {}
        blocks_h: dict[int, list[int]] = {}
        for i in range(n):
            blocks_g.setdefault(labels_g[i], []).append(i)
            blocks_h.setdefault(labels_h[i], []).append(i)
        open_blocks = sorted((len(vs), label) for label, vs in blocks_g.items() if len(vs) > 1)
        if not open_blocks:
            mapping = [0] * n
            for label, vs in blocks_g.items():
                mapping[vs[0]] = blocks_h[label][0]
            for i in range(n):
                for j in nbrs_g[i]:
                    if not adj_h[mapping[i]] >> mapping[j] & 1:
                        return None
            return mapping
        _, label = open_blocks[0]
        fresh = len(set(labels_g))
        v = blocks_g[label][0]
        for u in blocks_h[label]:
            next_g = list(labels_g)
            next_h = list(labels_h)
            next_g[v] = fresh
            next_h[u] = fresh
            mapping = solve(next_g, next_h)
            if mapping is not None:
                return mapping
        return None

    mapping = solve([0] * n, [0] * n)
    if mapping is None:
        return None
    return {g.vertices[i]: h.vertices[mapping[i]] for i in range(n)}


def retrieve_coloring(graph: Graph, alphabet: Sequence[str],
                      decoder: Iterable[Sequence[str]],
                      word: Sequence[str]) -> Optional[Coloring]:
    """A coloring under which the decoder and word realize the graph.

    Decodes (D, w) into its letter graph, searches for an isomorphism f from
    the graph onto it, and colors every vertex with the letter of its image
    position.  Returns None when the graphs are not isomorphic.
    """
    w = as_word(word)
    if len(w) != graph.n:
        raise MalformedInstanceError("word length differs from the vertex count")
    target = decode(decoder, w, alphabet)
    mapping = find_isomorphism(graph, target.graph)
    if mapping is None:
        return None
    assignment = {v: w[int(mapping[v]) - 1] for v in graph.vertices}
    return Coloring(assignment, tuple(alphabet))


def gi_to_coloring_instance(g1: Graph, g2: Graph) -> tuple[Graph, tuple[str, ...], Decoder, Word]:
    """Encode a graph-isomorphism question as a coloring-retrieval instance.

    The second graph's vertices become the alphabet, its edges the decoder
    (both orientations), and its vertex sequence the word; the letter graph
    of that word is g2 itself, so a valid coloring of g1 exists exactly when
    the two graphs are isomorphic.
    """
    letters = g2.vertices
    decoder = normalize_decoder([(u, v) for u, v in g2.edge_list()]
                                + [(v, u) for u, v in g2.edge_list()])
    return g1, letters, decoder, tuple(letters)

"""Neighborhood diversity and symmetric letter realizations.

Two vertices are generalized twins when N(u) \\ {v} = N(v) \\ {u}; this is
an equivalence relation and its classes are cliques or independent sets,
uniformly adjacent to each other.  The number of classes (the neighborhood
diversity) equals the least alphabet size of any symmetric decoder
realizing the graph, and the class structure itself is such a realization:
one letter per class, class letters repeated in the word, a symmetric
decoder with ii for cliques of at least two vertices and ij, ji for fully
joined classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError, MalformedInstanceError
from .graphs import Coloring, Graph
from .letters import Decoder, Word


@dataclass(frozen=True)
class TwinPartition:
    """Generalized-twin classes in order of their smallest vertex index.

    `kinds[i]` is "clique" or "independent" (singletons count as
    independent); `adjacency[i][j]` says whether blocks i and j are fully
    joined (the only alternative being no edges at all).
    """

    blocks: tuple[tuple[str, ...], ...]
    kinds: tuple[str, ...]
    adjacency: tuple[tuple[bool, ...], ...]


def twin_partition(graph: Graph) -> TwinPartition:
    """Partition the vertices into generalized-twin classes.

    Vertices are grouped by equal open or equal closed neighborhoods (either
    match merges, transitively); a pairwise verification pass inside each
    block then guards the equivalence, and the block structure checks are
    asserted rather than assumed.
    """
    n = graph.n
    adj = graph.adjacency_masks()
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    open_seen: dict[int, int] = {}
    closed_seen: dict[int, int] = {}
    for i in range(n):
        open_key = adj[i]
        closed_key = adj[i] | 1 << i
        if open_key in open_seen:
            union(open_seen[open_key], i)
        else:
            open_seen[open_key] = i
        if closed_key in closed_seen:
            union(closed_seen[closed_key], i)
        else:
            closed_seen[closed_key] = i

    members: dict[int, list[int]] = {}
    for i in range(n):
        members.setdefault(find(i), []).append(i)
    blocks = [sorted(vs) for _, vs in sorted(members.items())]

    for block in blocks:
        for pos, i in enumerate(block):
            for j in block[pos + 1:]:
                if adj[i] & ~(1 << j) != adj[j] & ~(1 << i):
                    raise InternalConsistencyError(
                        "grouped vertices are not generalized twins"
                    )

    kinds = []
    for block in blocks:
        size = len(block)
        inside = sum((adj[i] >> j & 1) for pos, i in enumerate(block) for j in block[pos + 1:])
        if size >= 2 and inside == size * (size - 1) // 2:
            kinds.append("clique")
        elif inside == 0:
            kinds.append("independent")
        else:
            raise InternalConsistencyError("twin class is neither clique nor independent")

    masks = [0] * len(blocks)
    for k, block in enumerate(blocks):
        for i in block:
            masks[k] |= 1 << i
    adjacency = []
    for k, block in enumerate(blocks):
        row = []
        for m, other in enumerate(blocks):
            if k == m:
                row.append(False)
                continue
            crossing = sum((adj[i] & masks[m]).bit_count() for i in block)
            if crossing == len(block) * len(other):
                row.append(True)
            elif crossing == 0:
                row.append(False)
            else:
                raise InternalConsistencyError("twin classes are not uniformly joined")
        adjacency.append(tuple(row))

    names = graph.vertices
    return TwinPartition(
        blocks=tuple(tuple(names[i] for i in block) for block in blocks),
        kinds=tuple(kinds),
        adjacency=tuple(adjacency),
    )


def neighborhood_diversity(graph: Graph) -> int:
    """Number of generalized-twin classes; 0 for the empty graph."""
    return len(twin_partition(graph).blocks)


@dataclass(frozen=True)
class SymmetricWitness:
    alphabet: tuple[str, ...]
    word: Word
    decoder: Decoder
    coloring: Coloring


def symmetric_witness(graph: Graph) -> SymmetricWitness:
    """A symmetric realization of the graph on one letter per twin class.

    Letters are "1".."p" in block order; the word lists each block's letter
    block-size many times.  This uses the fewest letters any symmetric
    decoder can achieve.
    """
    if graph.n == 0:
        raise MalformedInstanceError("the empty graph has no symmetric witness")
    partition = twin_partition(graph)
    p = len(partition.blocks)
    letters = tuple(str(i + 1) for i in range(p))
    word: list[str] = []
    assignment: dict[str, str] = {}
    for letter, block in zip(letters, partition.blocks):
        word.extend([letter] * len(block))
        for v in block:
            assignment[v] = letter
    pairs = set()
    for i, kind in enumerate(partition.kinds):
        if kind == "clique":
            pairs.add((letters[i], letters[i]))
        for j in range(i + 1, p):
            if partition.adjacency[i][j]:
                pairs.add((letters[i], letters[j]))
                pairs.add((letters[j], letters[i]))
    return SymmetricWitness(
        alphabet=letters,
        word=tuple(word),
        decoder=frozenset(pairs),
        coloring=Coloring(assignment, letters),
    )

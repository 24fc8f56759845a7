"""Shared instance builders and brute-force oracles for the test suite.

The oracles here deliberately avoid the library's own algorithms: word
feasibility and decoder verification are answered by trying every relevant
bijection, and 2-SAT formulas are answered by a truth table packed into a
big integer.
"""

import itertools
import random

from lettergraphs import Coloring, Graph, normalize_decoder


def banane_instance():
    """Six vertices realizable only as the word banane under its decoder."""
    graph = Graph(
        ["b1", "a1", "n1", "a2", "n2", "e1"],
        [("b1", "a1"), ("b1", "a2"), ("a1", "n1"), ("a1", "n2"),
         ("a2", "n2"), ("n1", "e1"), ("n2", "e1")],
    )
    coloring = Coloring(
        {"b1": "b", "a1": "a", "n1": "n", "a2": "a", "n2": "n", "e1": "e"},
        ("b", "a", "n", "e"),
    )
    decoder = normalize_decoder([("b", "a"), ("a", "n"), ("n", "e")])
    return graph, coloring, decoder


def forced_instance():
    """Word abbaba; its only decoder is {ab}, pinned by the pair orientation."""
    graph = Graph(
        ["a1", "a2", "a3", "b1", "b2", "b3"],
        [("a1", "b1"), ("a1", "b2"), ("a1", "b3"), ("a2", "b3")],
    )
    coloring = Coloring(
        {"a1": "a", "a2": "a", "a3": "a", "b1": "b", "b2": "b", "b3": "b"},
        ("a", "b"),
    )
    return graph, coloring, tuple("abbaba")


def cascade_instance():
    """Word bcbacb; orientation of {a, b} cascades into {b, c} via the b-block."""
    graph = Graph(
        ["a1", "b1", "b2", "b3", "c1", "c2"],
        [("a1", "b1"), ("a1", "b2"), ("b1", "c1"), ("b1", "c2"), ("b2", "c2")],
    )
    coloring = Coloring(
        {"a1": "a", "b1": "b", "b2": "b", "b3": "b", "c1": "c", "c2": "c"},
        ("a", "b", "c"),
    )
    return graph, coloring, tuple("bcbacb")


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    vertices = [f"v{i}" for i in range(n)]
    edges = [(u, v) for i, u in enumerate(vertices)
             for v in vertices[i + 1:] if rng.random() < p]
    return Graph(vertices, edges)


def random_realizable(rng: random.Random, n: int, k: int):
    """A feasible (graph, coloring, word, decoder) built by decoding.

    The word uses all k letters, the decoder is a random pair set, and the
    vertices are a shuffled relabeling of the word positions, so every
    retrieval problem cut from the tuple has at least one solution.
    """
    letters = "abcdefgh"[:k]
    word = [letters[rng.randrange(k)] for _ in range(n)]
    for letter, i in zip(letters, rng.sample(range(n), k)):
        word[i] = letter
    decoder = frozenset((a, b) for a in letters for b in letters
                        if rng.random() < 0.5)
    order = rng.sample(range(n), n)
    names = [f"u{j}" for j in range(n)]
    position_of = {j: order[j] for j in range(n)}
    edges = []
    for x in range(n):
        for y in range(n):
            i, j = position_of[x], position_of[y]
            if i < j and (word[i], word[j]) in decoder:
                edges.append((names[x], names[y]))
    graph = Graph(names, edges)
    coloring = Coloring({names[j]: word[position_of[j]] for j in range(n)},
                        tuple(letters))
    return graph, coloring, tuple(word), decoder


def realization_exists(graph: Graph, coloring: Coloring, decoder) -> bool:
    """Word-retrieval oracle: try every vertex order; at most 8 vertices."""
    n = graph.n
    assert n <= 8, "oracle is factorial in n"
    adj = graph.adjacency_masks()
    letters = [coloring[v] for v in graph.vertices]
    d = set(decoder)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for perm in itertools.permutations(range(n)):
        if all((adj[perm[i]] >> perm[j] & 1) == ((letters[perm[i]], letters[perm[j]]) in d)
               for i, j in pairs):
            return True
    return False


def bijection_verifies(graph: Graph, coloring: Coloring, word, decoder) -> bool:
    """Decoder-verification oracle: try every color-respecting bijection.

    Positions of each letter may go to that letter's vertices in any order;
    the product of per-letter permutations stays small for the sizes used in
    tests.
    """
    if len(word) != graph.n:
        return False
    by_letter_positions: dict[str, list[int]] = {}
    for i, c in enumerate(word):
        by_letter_positions.setdefault(c, []).append(i)
    by_letter_vertices: dict[str, list[str]] = {}
    for v in graph.vertices:
        by_letter_vertices.setdefault(coloring[v], []).append(v)
    for c in set(by_letter_positions) | set(by_letter_vertices):
        if len(by_letter_positions.get(c, [])) != len(by_letter_vertices.get(c, [])):
            return False

    d = set(decoder)
    letters_in_use = sorted(by_letter_positions)
    per_letter = [list(itertools.permutations(by_letter_vertices[c]))
                  for c in letters_in_use]
    position_lists = [by_letter_positions[c] for c in letters_in_use]
    for combo in itertools.product(*per_letter):
        vertex_at = {}
        for positions, arrangement in zip(position_lists, combo):
            for pos, v in zip(positions, arrangement):
                vertex_at[pos] = v
        ok = True
        for i in range(len(word)):
            for j in range(i + 1, len(word)):
                if graph.has_edge(vertex_at[i], vertex_at[j]) != ((word[i], word[j]) in d):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def satisfiable_truth_table(variables, clauses):
    """2-SAT oracle: evaluate all assignments at once with bitset columns.

    Column j of variable i holds bit (j >> i) & 1; a clause is the OR of its
    literal columns and the formula the AND over clauses.  Returns one model
    as a dict, or None.
    """
    variables = list(variables)
    index = {v: i for i, v in enumerate(variables)}
    width = 1 << len(variables)
    ones = (1 << width) - 1
    columns = []
    for i in range(len(variables)):
        half = 1 << i
        pattern = ((1 << half) - 1) << half
        span = half * 2
        while span < width:
            pattern |= pattern << span
            span *= 2
        columns.append(pattern)
    formula = ones
    for clause in clauses:
        mask = 0
        for var, polarity in clause:
            column = columns[index[var]]
            mask |= column if polarity else ~column & ones
        formula &= mask
        if not formula:
            return None
    j = (formula & -formula).bit_length() - 1
    return {v: bool(j >> i & 1) for v, i in index.items()}

"""Recovering a decoder from a colored graph and a word.

The pipeline rests on three observations about an instance (G, Sigma, chi, w)
asking for a decoder D with G isomorphic to the letter graph of w under D,
respecting chi:

  * within one letter a, either every solution works with aa or every
    solution works without it, depending on whether G[V_a] is a clique or an
    independent set; anything else is a global no,
  * a pair {a, b} whose cross edges are all present or all absent pins
    {ab, ba} to both-in or both-out,
  * a pair with some but not all cross edges present ("one-sided") contains
    exactly one of ab, ba in any solution, so those choices become boolean
    variables of a 2-SAT formula whose clauses are computed by verifying
    candidate decoders on small cross-edge subinstances.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .errors import InternalConsistencyError, MalformedInstanceError
from .graphs import Coloring, Graph, check_total_coloring, color_masks
from .letters import (
    Decoder,
    Word,
    count_runs,
    decoder_letters,
    is_palindrome,
    normalize_decoder,
    project_word,
    run_lengths,
)
from .twosat import TwoSatFormula, solve_2sat

DirectedPair = tuple[str, str]


def verify_decoder(graph: Graph, coloring: Coloring, word: Sequence[str],
                   decoder: Iterable[Sequence[str]]) -> bool:
    """Decide whether the decoder realizes the graph from the word.

    Peels vertices greedily: the first word letter must be matched by some
    vertex of its color whose remaining neighborhood is exactly the union of
    the color classes its letter can see under the decoder.  Any two vertices
    eligible at the same step are generalized twins, so taking the one with
    the smallest index never loses a solution.
    """
    check_total_coloring(graph, coloring)
    d = decoder if isinstance(decoder, frozenset) else normalize_decoder(decoder)
    n = graph.n
    if len(word) != n:
        raise MalformedInstanceError("word length differs from the vertex count")
    alphabet = set(coloring.alphabet)
    stray = set(word) - alphabet
    if stray:
        raise MalformedInstanceError(f"word letters outside the alphabet: {sorted(stray)}")
    stray = decoder_letters(d) - alphabet
    if stray:
        raise MalformedInstanceError(f"decoder letters outside the alphabet: {sorted(stray)}")
    counts = Counter(word)
    for a in coloring.alphabet:
        if counts[a] != len(coloring.group(a)):
            raise MalformedInstanceError(
                f"letter {a!r} appears {counts[a]} times but colors {len(coloring.group(a))} vertices"
            )

    masks = color_masks(graph, coloring)
    visible = {a: 0 for a in coloring.alphabet}
    for a, b in d:
        visible[a] |= masks[b]
    adj = graph.adjacency_masks()
    remaining = (1 << n) - 1
    for letter in word:
        allowed = visible[letter] & remaining
        candidates = masks[letter] & remaining
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            if adj[v] & remaining == allowed & ~low:
                remaining ^= low
                break
            candidates ^= low
        else:
            return False
    return True


class PairKind(Enum):
    FULL = "full"
    EMPTY = "empty"
    ONE_SIDED = "one-sided"


@dataclass(frozen=True)
class PairClass:
    kind: PairKind
    edge_count: int
    capacity: int


@dataclass(frozen=True)
class PairProfile:
    """Shape of a letter pair's projected word and cross adjacency.

    The projection is normalized to start with its first letter, recorded in
    `letters`; `swapped` says whether that differs from the requested order.
    Run counts, run lengths, and the universal/isolated vertex counts all
    refer to the normalized first letter.
    """

    letters: tuple[str, str]
    a_runs: int
    b_runs: int
    palindrome: bool
    universal_count: int
    isolated_count: int
    first_run_len: int
    last_run_len: int
    swapped: bool


def classify_pair(graph: Graph, coloring: Coloring, word: Sequence[str],
                  a: str, b: str) -> tuple[PairClass, PairProfile]:
    """Edge class of the pair {a, b} plus the profile of w projected to it."""
    check_total_coloring(graph, coloring)
    if a == b:
        raise MalformedInstanceError("classify_pair needs two distinct letters")
    masks = color_masks(graph, coloring)
    if a not in masks or b not in masks:
        raise MalformedInstanceError("letters must belong to the alphabet")
    adj = graph.adjacency_masks()

    mask_b = masks[b]
    edge_count = 0
    for v in coloring.group(a):
        edge_count += (adj[graph.index(v)] & mask_b).bit_count()
    capacity = len(coloring.group(a)) * len(coloring.group(b))
    if edge_count == 0:
        kind = PairKind.EMPTY
    elif edge_count == capacity:
        kind = PairKind.FULL
    else:
        kind = PairKind.ONE_SIDED
    pair_class = PairClass(kind, edge_count, capacity)

    projection = project_word(word, {a, b})
    primary = projection[0] if projection else a
    secondary = b if primary == a else a
    mask_secondary = masks[secondary]
    universal = isolated = 0
    for v in coloring.group(primary):
        seen = adj[graph.index(v)] & mask_secondary
        if seen == mask_secondary and mask_secondary:
            universal += 1
        elif not seen:
            isolated += 1
    lengths = run_lengths(projection, primary)
    profile = PairProfile(
        letters=(primary, secondary),
        a_runs=count_runs(projection, primary),
        b_runs=count_runs(projection, secondary),
        palindrome=is_palindrome(projection),
        universal_count=universal,
        isolated_count=isolated,
        first_run_len=lengths[0] if lengths else 0,
        last_run_len=lengths[-1] if lengths else 0,
        swapped=primary != a,
    )
    return pair_class, profile


def _subinstance(graph: Graph, coloring: Coloring, word: Sequence[str],
                 letters: Sequence[str],
                 edges: Iterable[tuple[str, str]]) -> tuple[Graph, Coloring, Word]:
    """Instance on the given letters' vertices with exactly the given edges."""
    letter_set = set(letters)
    keep = [v for v in graph.vertices if coloring[v] in letter_set]
    sub_graph = Graph(keep, edges)
    sub_alphabet = [c for c in coloring.alphabet if c in letter_set]
    sub_coloring = coloring.restrict(keep, sub_alphabet)
    return sub_graph, sub_coloring, project_word(word, letter_set)


def _cross_edges(graph: Graph, coloring: Coloring, center: str,
                 others: Iterable[str]) -> list[tuple[str, str]]:
    """Edges joining the center letter's vertices to the other letters' vertices."""
    masks = color_masks(graph, coloring)
    other_mask = 0
    for c in others:
        other_mask |= masks[c]
    adj = graph.adjacency_masks()
    out = []
    for u in coloring.group(center):
        row = adj[graph.index(u)] & other_mask
        while row:
            low = row & -row
            out.append((u, graph.vertices[low.bit_length() - 1]))
            row ^= low
    return out


def pair_subinstance(graph: Graph, coloring: Coloring, word: Sequence[str],
                     a: str, b: str) -> tuple[Graph, Coloring, Word]:
    """The two letters' vertices with only their cross edges."""
    return _subinstance(graph, coloring, word, (a, b),
                        _cross_edges(graph, coloring, a, (b,)))


def within_subinstance(graph: Graph, coloring: Coloring, word: Sequence[str],
                       a: str) -> tuple[Graph, Coloring, Word]:
    """One letter's vertices with only the edges among themselves."""
    group = set(coloring.group(a))
    edges = [(u, v) for u, v in graph.edge_list() if u in group and v in group]
    return _subinstance(graph, coloring, word, (a,), edges)


def block_subinstance(graph: Graph, coloring: Coloring, word: Sequence[str],
                      center: str, others: Sequence[str]) -> tuple[Graph, Coloring, Word]:
    """The center letter plus partners, keeping only center-to-partner edges."""
    return _subinstance(graph, coloring, word, (center, *others),
                        _cross_edges(graph, coloring, center, others))


class PairStatus(Enum):
    FORCED = "forced"
    FREE = "free"
    INFEASIBLE = "infeasible"


def forced_pair_word(graph: Graph, coloring: Coloring, word: Sequence[str],
                     a: str, b: str) -> tuple[PairStatus, Optional[DirectedPair]]:
    """Which of ab / ba can realize the pair's cross edges on its own.

    Runs the verifier on the cross-edge subinstance for the two singleton
    candidates {ab} and {ba}.  Exactly one passing pins the orientation; for
    a non-palindromic projection at most one can pass.  (An equivalent
    derivation strips matching first and last runs off the projection until
    the orientation is exposed; verifying both candidates is simpler and
    just as fast at this scale.)
    """
    pair_class, _ = classify_pair(graph, coloring, word, a, b)
    if pair_class.kind is not PairKind.ONE_SIDED:
        raise InternalConsistencyError("forced_pair_word needs a one-sided pair")
    projection = project_word(word, {a, b})
    if count_runs(projection, a) < 2 and count_runs(projection, b) < 2:
        raise InternalConsistencyError("pair word has a single run of each letter")
    sub = pair_subinstance(graph, coloring, word, a, b)
    ok_ab = verify_decoder(*sub, frozenset({(a, b)}))
    ok_ba = verify_decoder(*sub, frozenset({(b, a)}))
    if ok_ab and ok_ba:
        if not is_palindrome(projection):
            raise InternalConsistencyError("both orientations fit a non-palindromic pair word")
        return PairStatus.FREE, None
    if ok_ab:
        return PairStatus.FORCED, (a, b)
    if ok_ba:
        return PairStatus.FORCED, (b, a)
    return PairStatus.INFEASIBLE, None


def cascade_word(graph: Graph, coloring: Coloring, word: Sequence[str],
                 a: str, b: str, c: str,
                 premise: DirectedPair) -> Optional[DirectedPair]:
    """Propagate a pair orientation across a shared letter.

    Given one-sided pairs {a, b} and {b, c} whose projections both have at
    least two b-runs, with w[b, c] a palindrome, assume the {a, b} choice is
    `premise` and test the decoders {premise, bc} and {premise, cb} on the
    subinstance of edges leaving V_b.  At most one fits; if neither does, no
    solution contains the premise at all and None is returned.
    """
    if len({a, b, c}) != 3:
        raise InternalConsistencyError("cascade needs three distinct letters")
    if premise not in ((a, b), (b, a)):
        raise InternalConsistencyError("premise must orient the first pair")
    for x, y in ((a, b), (b, c)):
        kind = classify_pair(graph, coloring, word, x, y)[0].kind
        if kind is not PairKind.ONE_SIDED:
            raise InternalConsistencyError(f"pair {x}{y} is not one-sided")
        if count_runs(project_word(word, {x, y}), b) < 2:
            raise InternalConsistencyError(f"pair word {x}{y} needs two runs of {b!r}")
    if not is_palindrome(project_word(word, {b, c})):
        raise InternalConsistencyError("second pair word must be a palindrome")

    sub = block_subinstance(graph, coloring, word, b, (a, c))
    ok_bc = verify_decoder(*sub, frozenset({premise, (b, c)}))
    ok_cb = verify_decoder(*sub, frozenset({premise, (c, b)}))
    if ok_bc and ok_cb:
        raise InternalConsistencyError("both cascade candidates fit the subinstance")
    if ok_bc:
        return (b, c)
    if ok_cb:
        return (c, b)
    return None


def _validate_instance(graph: Graph, coloring: Coloring, word: Sequence[str]) -> None:
    """Entry check for the decoder pipeline: counts match, no unused letters."""
    check_total_coloring(graph, coloring)
    if len(word) != graph.n:
        raise MalformedInstanceError("word length differs from the vertex count")
    counts = Counter(word)
    stray = set(counts) - set(coloring.alphabet)
    if stray:
        raise MalformedInstanceError(f"word letters outside the alphabet: {sorted(stray)}")
    for a in coloring.alphabet:
        if not coloring.group(a):
            raise MalformedInstanceError(f"letter {a!r} colors no vertex")
        if counts[a] != len(coloring.group(a)):
            raise MalformedInstanceError(
                f"letter {a!r} appears {counts[a]} times but colors {len(coloring.group(a))} vertices"
            )


class _Survey:
    """Shared per-instance facts: letter order, within-letter status, pair classes."""

    def __init__(self, graph: Graph, coloring: Coloring, word: Sequence[str]):
        self.letters = sorted(coloring.alphabet)
        masks = color_masks(graph, coloring)
        adj = graph.adjacency_masks()
        self.within: dict[str, Optional[str]] = {}
        for a in self.letters:
            mask = masks[a]
            size = mask.bit_count()
            inside = 0
            remaining = mask
            while remaining:
                low = remaining & -remaining
                inside += (adj[low.bit_length() - 1] & mask).bit_count()
                remaining ^= low
            inside //= 2
            if inside == size * (size - 1) // 2 and size >= 2:
                self.within[a] = "clique"
            elif inside == 0:
                self.within[a] = "independent"
            else:
                self.within[a] = None
        self.pair_kind: dict[tuple[str, str], PairKind] = {}
        for i, a in enumerate(self.letters):
            for b in self.letters[i + 1:]:
                count = 0
                remaining = masks[a]
                while remaining:
                    low = remaining & -remaining
                    count += (adj[low.bit_length() - 1] & masks[b]).bit_count()
                    remaining ^= low
                capacity = masks[a].bit_count() * masks[b].bit_count()
                if count == 0:
                    kind = PairKind.EMPTY
                elif count == capacity:
                    kind = PairKind.FULL
                else:
                    kind = PairKind.ONE_SIDED
                self.pair_kind[(a, b)] = kind

    def one_sided(self) -> list[tuple[str, str]]:
        return [pair for pair, kind in sorted(self.pair_kind.items())
                if kind is PairKind.ONE_SIDED]

    def is_one_sided(self, a: str, b: str) -> bool:
        key = (a, b) if a < b else (b, a)
        return self.pair_kind.get(key) is PairKind.ONE_SIDED


def build_formula(graph: Graph, coloring: Coloring,
                  word: Sequence[str]) -> Optional[TwoSatFormula]:
    """The 2-SAT formula whose models are the one-sided orientation choices.

    Returns None when a sanity check already rules out every decoder: some
    letter class is neither a clique nor independent, some one-sided pair's
    projection is a single a-run followed by a single b-run (or vice versa),
    or a non-palindromic one-sided pair fits neither orientation.
    """
    _validate_instance(graph, coloring, word)
    survey = _Survey(graph, coloring, word)
    if any(status is None for status in survey.within.values()):
        return None
    one_sided = survey.one_sided()
    projections = {pair: project_word(word, pair) for pair in one_sided}
    for a, b in one_sided:
        p = projections[(a, b)]
        if count_runs(p, a) < 2 and count_runs(p, b) < 2:
            # One run of each letter: either orientation would make the
            # first-run vertices universal toward the other side, which a
            # one-sided pair cannot satisfy.
            return None

    variables: list[DirectedPair] = []
    for a, b in one_sided:
        variables.append((a, b))
        variables.append((b, a))
    formula = TwoSatFormula(variables)

    forced: dict[tuple[str, str], DirectedPair] = {}
    for a, b in one_sided:
        formula.add_clause(((a, b), True), ((b, a), True))
        formula.add_clause(((a, b), False), ((b, a), False))
    for a, b in one_sided:
        if is_palindrome(projections[(a, b)]):
            continue
        status, direction = forced_pair_word(graph, coloring, word, a, b)
        if status is PairStatus.INFEASIBLE:
            return None
        assert status is PairStatus.FORCED and direction is not None
        forced[(a, b)] = direction
        formula.add_clause((direction, True))

    # Orientation links across a shared letter: for one-sided pairs {x, b}
    # and {b, z} with two b-runs each and w[b, z] palindromic, each choice
    # for {x, b} implies at most one choice for {b, z}.
    for b in survey.letters:
        partners = [x for x in survey.letters if x != b and survey.is_one_sided(b, x)]
        for x in partners:
            if count_runs(project_word(word, {x, b}), b) < 2:
                continue
            for z in partners:
                if z == x:
                    continue
                p_bz = project_word(word, {b, z})
                if count_runs(p_bz, b) < 2 or not is_palindrome(p_bz):
                    continue
                for premise in ((x, b), (b, x)):
                    implied = cascade_word(graph, coloring, word, x, b, z, premise)
                    if implied is None:
                        formula.add_clause((premise, False))
                    else:
                        formula.add_clause((premise, False), (implied, True))

    # Per-letter block consistency: the orientations of all pairs {a, b}
    # whose projections have two a-runs must together realize the edges
    # leaving V_a.  Fixing one pair determines the rest, so each starting
    # orientation that fails the block check is excluded by a unit clause.
    for a in survey.letters:
        block = [b for b in survey.letters
                 if b != a and survey.is_one_sided(a, b)
                 and count_runs(project_word(word, {a, b}), a) >= 2]
        if not block:
            continue
        palindromic = [b for b in block if is_palindrome(project_word(word, {a, b}))]
        plain = [b for b in block if b not in set(palindromic)]
        sub = block_subinstance(graph, coloring, word, a, block)
        if plain:
            b0 = plain[0]
            key = (a, b0) if a < b0 else (b0, a)
            starts = [forced[key]]
        else:
            b0 = palindromic[0]
            starts = [(a, b0), (b0, a)]
        for start in starts:
            candidate = {start}
            consistent = True
            for c in block:
                if c == b0:
                    continue
                if c in set(palindromic):
                    implied = cascade_word(graph, coloring, word, b0, a, c, start)
                    if implied is None:
                        formula.add_clause((start, False))
                        consistent = False
                        break
                    candidate.add(implied)
                else:
                    key = (a, c) if a < c else (c, a)
                    candidate.add(forced[key])
            if consistent and not verify_decoder(*sub, frozenset(candidate)):
                formula.add_clause((start, False))
    return formula


def retrieve_decoder(graph: Graph, coloring: Coloring,
                     word: Sequence[str]) -> Optional[Decoder]:
    """A decoder realizing the graph from the word, or None if none exists."""
    formula = build_formula(graph, coloring, word)
    if formula is None:
        return None
    model = solve_2sat(formula)
    if model is None:
        return None
    chosen = {pair for pair, value in model.items() if value}
    survey = _Survey(graph, coloring, word)
    for a, status in survey.within.items():
        if status == "clique":
            chosen.add((a, a))
    for (a, b), kind in survey.pair_kind.items():
        if kind is PairKind.FULL:
            chosen.add((a, b))
            chosen.add((b, a))
    decoder = frozenset(chosen)
    if not verify_decoder(graph, coloring, word, decoder):
        raise InternalConsistencyError("assembled decoder failed verification")
    return decoder

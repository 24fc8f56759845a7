"""Words over an alphabet and the letter-graph construction.

A word w together with a decoder D (a set of ordered letter pairs) defines
a graph on positions 1..|w|: positions i < j are adjacent exactly when the
ordered pair (w_i, w_j) belongs to D.  Every position inherits its letter
as a color.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import MalformedInstanceError
from .graphs import Coloring, Graph, check_token

Word = tuple[str, ...]
Decoder = frozenset[tuple[str, str]]


def as_word(letters: Iterable[str]) -> Word:
    return tuple(check_token(c, "letter") for c in letters)


def normalize_decoder(pairs: Iterable[Sequence[str]]) -> Decoder:
    out = set()
    for pair in pairs:
        a, b = pair
        out.add((check_token(a, "letter"), check_token(b, "letter")))
    return frozenset(out)


def decoder_letters(decoder: Iterable[Sequence[str]]) -> set[str]:
    return {c for pair in decoder for c in pair}


def is_symmetric_decoder(decoder: Iterable[Sequence[str]]) -> bool:
    d = {(a, b) for a, b in decoder}
    return all((b, a) in d for a, b in d)


def project_word(word: Sequence[str], letters: Iterable[str]) -> Word:
    """Subsequence of the word keeping only the given letters."""
    wanted = set(letters)
    return tuple(c for c in word if c in wanted)


def count_runs(word: Sequence[str], letter: str) -> int:
    """Number of maximal blocks of consecutive occurrences of the letter."""
    runs = 0
    previous = None
    for c in word:
        if c == letter and previous != letter:
            runs += 1
        previous = c
    return runs


def run_lengths(word: Sequence[str], letter: str) -> list[int]:
    """Lengths of the letter's maximal runs, left to right."""
    out: list[int] = []
    current = 0
    for c in word:
        if c == letter:
            current += 1
        elif current:
            out.append(current)
            current = 0
    if current:
        out.append(current)
    return out


def is_palindrome(word: Sequence[str]) -> bool:
    seq = tuple(word)
    return seq == seq[::-1]


@dataclass(frozen=True)
class ColoredGraph:
    """A graph together with a total coloring of its vertices."""

    graph: Graph
    coloring: Coloring


def decode(decoder: Iterable[Sequence[str]], word: Sequence[str],
           alphabet: Optional[Sequence[str]] = None) -> ColoredGraph:
    """Letter graph of the word under the decoder.

    Vertices are the positions "1".."n" in order, colored by their letters.
    When an alphabet is given, the word and decoder must stay inside it;
    otherwise the alphabet is inferred (word letters first, in order of
    first occurrence, then any decoder-only letters sorted).
    """
    w = as_word(word)
    d = normalize_decoder(decoder)
    if alphabet is None:
        seen: dict[str, None] = {}
        for c in w:
            seen.setdefault(c, None)
        for c in sorted(decoder_letters(d)):
            seen.setdefault(c, None)
        alphabet = tuple(seen)
    else:
        alphabet = tuple(check_token(c, "letter") for c in alphabet)
        stray = (set(w) | decoder_letters(d)) - set(alphabet)
        if stray:
            raise MalformedInstanceError(f"letters outside the alphabet: {sorted(stray)}")

    positions = [str(i + 1) for i in range(len(w))]
    by_letter: dict[str, list[int]] = {}
    for i, c in enumerate(w):
        by_letter.setdefault(c, []).append(i)
    edges = []
    for a, b in d:
        for i in by_letter.get(a, ()):
            for j in by_letter.get(b, ()):
                if i < j:
                    edges.append((positions[i], positions[j]))
    graph = Graph(positions, edges)
    coloring = Coloring({positions[i]: w[i] for i in range(len(w))}, alphabet)
    return ColoredGraph(graph, coloring)

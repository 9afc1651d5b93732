"""
Gauss codes of free-knot diagrams.

A Gauss code lists the labels met while walking once around the circle; each
label appears exactly twice, once per endpoint of its chord. This module parses
and prints codes, puts diagrams into a rotation/reflection canonical form, and
enumerates or samples diagrams for the test harness.
"""
import logging
from collections import Counter
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import GaussCodeError
from .models import Chord, ChordDiagram

logger = logging.getLogger(__name__)

TRIVIAL = ChordDiagram()


def parse_gauss_code(text: str) -> ChordDiagram:
    """Parse whitespace-separated tokens into a chord diagram.

    Chord i joins the two occurrences of the i-th distinct label, in order of
    first appearance. Blank text is the trivial knot.

    Raises:
        GaussCodeError: a label does not occur exactly twice (this also covers
            an odd token count). The offending label is on the exception.
    """
    tokens = text.split()
    if not tokens:
        return TRIVIAL

    counts = Counter(tokens)
    for label in counts:  # Counter keeps first-appearance order
        if counts[label] != 2:
            detail = " (odd token count)" if len(tokens) % 2 else ""
            raise GaussCodeError(
                f"label {label!r} occurs {counts[label]} time(s); every label must occur exactly twice{detail}",
                label=label,
            )

    first_seen: Dict[str, int] = {}
    chords: List[Chord] = []
    labels: List[str] = []
    for position, label in enumerate(tokens):
        if label in first_seen:
            chords.append((first_seen[label], position))
            labels.append(label)
        else:
            first_seen[label] = position
    # chords were closed in order of second endpoint; reorder by first endpoint
    return ChordDiagram.from_chords(chords, labels)


def code_tokens(diagram: ChordDiagram, relabel: bool = False) -> List[str]:
    owner = diagram.owners()
    if not relabel:
        return [diagram.labels[i] for i in owner]
    renamed: Dict[int, str] = {}
    for i in owner:
        if i not in renamed:
            renamed[i] = f"c{len(renamed)}"
    return [renamed[i] for i in owner]


def serialize(diagram: ChordDiagram, relabel: bool = False) -> str:
    """Gauss code of the diagram; `relabel` names chords c0, c1, ... by first appearance."""
    return " ".join(code_tokens(diagram, relabel=relabel))


def _first_appearance(sequence: Sequence[int]) -> Tuple[int, ...]:
    renamed: Dict[int, int] = {}
    out = []
    for x in sequence:
        if x not in renamed:
            renamed[x] = len(renamed)
        out.append(renamed[x])
    return tuple(out)


def canonical_key(diagram: ChordDiagram) -> Tuple[int, ...]:
    """Least first-appearance renaming over all rotations and both reflections."""
    owner = diagram.owners()
    if not owner:
        return ()
    best: Optional[Tuple[int, ...]] = None
    size = len(owner)
    for sequence in (owner, owner[::-1]):
        for shift in range(size):
            candidate = _first_appearance(sequence[shift:] + sequence[:shift])
            if best is None or candidate < best:
                best = candidate
    return best


def canonical_form(diagram: ChordDiagram) -> str:
    return " ".join(f"c{i}" for i in canonical_key(diagram))


def _matchings(free: List[int]) -> Iterator[List[Chord]]:
    if not free:
        yield []
        return
    first = free[0]
    for k in range(1, len(free)):
        rest = free[1:k] + free[k + 1:]
        for tail in _matchings(rest):
            yield [(first, free[k])] + tail


def enumerate_diagrams(n: int) -> Iterator[ChordDiagram]:
    """Every perfect matching on 2n labelled positions, each exactly once."""
    if n < 0:
        raise ValueError("n must be non-negative")
    for chords in _matchings(list(range(2 * n))):
        yield ChordDiagram(chords=tuple(chords))


def double_factorial(k: int) -> int:
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def count_diagrams(n: int) -> int:
    """(2n-1)!!, the number of perfect matchings on 2n points."""
    return double_factorial(2 * n - 1) if n > 0 else 1


def random_diagram(n: int, seed: int) -> ChordDiagram:
    """Uniform random perfect matching on 2n points, deterministic per seed."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(2 * n)
    chords = [(int(perm[2 * k]), int(perm[2 * k + 1])) for k in range(n)]
    return ChordDiagram.from_chords(chords)


def render_ascii(diagram: ChordDiagram) -> str:
    """One row per chord: '+' at its endpoints and '-' along the arc between them."""
    if diagram.n == 0:
        return "(trivial knot: a circle with no chords)"
    tokens = code_tokens(diagram)
    width = max(len(t) for t in tokens)
    cell = width + 1
    lines = ["".join(t.ljust(cell) for t in tokens).rstrip()]
    for label, (first, second) in zip(diagram.labels, diagram.chords):
        row = []
        for p in range(diagram.size):
            if p == first or p == second:
                row.append("+".ljust(cell, "-" if p == first else " "))
            elif first < p < second:
                row.append("-" * cell)
            else:
                row.append(" " * cell)
        lines.append(f"{''.join(row).rstrip()}  {label}")
    return "\n".join(lines)


def star_diagram(n: int) -> ChordDiagram:
    """c0 ... c(n-1) c0 ... c(n-1): every two chords linked, odd iff n is even."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return ChordDiagram(chords=tuple((i, i + n) for i in range(n)))

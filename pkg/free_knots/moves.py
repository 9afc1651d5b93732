"""
Reidemeister moves, mirror image and connected sum as Gauss-code rewrites.

Conventions for free knots:
  R1  a chord whose endpoints are cyclically adjacent (x x).
  R2  two chords whose endpoints form adjacent pairs, either nested
      (x y ... y x) or interleaved (x y ... x y).
  R3  three disjoint adjacent position pairs carrying three chords, each chord
      with its endpoints in two different pairs; the move transposes each pair.

Gap g is the slot just before position g; gap 0 is the basepoint.
"""
import logging
from typing import Dict, Hashable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .errors import ChordIndexError, MoveError, ScriptReplayError
from .gauss_code import parse_gauss_code, serialize
from .models import (
    Block,
    ChordDiagram,
    MoveKind,
    MoveScript,
    MoveSite,
    Pair,
    Pairing,
    R2Variant,
    Singleton,
)

logger = logging.getLogger(__name__)

Token = Hashable


# --- Token helpers ---
def _tokens(diagram: ChordDiagram) -> List[Token]:
    return [("old", i) for i in diagram.owners()]


def _rebuild(tokens: Sequence[Token], label_of: Dict[Token, str]) -> Tuple[ChordDiagram, Dict[Token, int]]:
    """Diagram read off a token sequence, plus the new chord index of each token."""
    first_seen: Dict[Token, int] = {}
    chords = []
    keys = []
    for position, token in enumerate(tokens):
        if token in first_seen:
            chords.append((first_seen[token], position))
            keys.append(token)
        else:
            first_seen[token] = position
    diagram = ChordDiagram.from_chords(chords, [label_of[k] for k in keys])
    owner = diagram.owners()
    return diagram, {token: owner[position] for token, position in first_seen.items()}


def _old_labels(diagram: ChordDiagram) -> Dict[Token, str]:
    return {("old", i): label for i, label in enumerate(diagram.labels)}


def _fresh_labels(taken: Set[str], count: int) -> List[str]:
    out = []
    k = 0
    while len(out) < count:
        candidate = f"c{k}"
        if candidate not in taken:
            out.append(candidate)
            taken.add(candidate)
        k += 1
    return out


def _check_gap(diagram: ChordDiagram, gap: int) -> None:
    if not 0 <= gap < max(diagram.size, 1):
        raise MoveError(f"gap {gap} is not a gap of a circle with {diagram.size} positions")


def _check_chord(diagram: ChordDiagram, c: int) -> None:
    if not 0 <= c < diagram.n:
        raise ChordIndexError(f"chord index {c} out of range for a diagram with {diagram.n} chords")


def _adjacent(p: int, q: int, size: int) -> bool:
    return abs(p - q) == 1 or {p, q} == {0, size - 1}


# --- Mirror and connected sum ---
def mirror(diagram: ChordDiagram) -> ChordDiagram:
    """Reverse the circle: position p goes to 2n-1-p. Labels travel with their chords."""
    last = diagram.size - 1
    return ChordDiagram.from_chords([(last - b, last - a) for a, b in diagram.chords], diagram.labels)


def connected_sum(first: ChordDiagram, cut1: int, second: ChordDiagram, cut2: int) -> ChordDiagram:
    """Splice `second`, read from its gap cut2, into `first` at gap cut1.

    Labels of `second` that clash with labels of `first` get a ' suffix.
    """
    _check_gap(first, cut1)
    _check_gap(second, cut2)
    inner = [("new", i) for i in second.owners()]
    inner = inner[cut2:] + inner[:cut2]
    tokens = _tokens(first)
    tokens[cut1:cut1] = inner

    label_of = _old_labels(first)
    taken = set(first.labels)
    for i, label in enumerate(second.labels):
        while label in taken:
            label += "'"
        taken.add(label)
        label_of[("new", i)] = label
    summed, _ = _rebuild(tokens, label_of)
    return summed


# --- R1 ---
def _r1_insert(diagram: ChordDiagram, gap: int) -> Tuple[ChordDiagram, Dict[Token, int]]:
    _check_gap(diagram, gap)
    tokens = _tokens(diagram)
    tokens[gap:gap] = [("new", 0), ("new", 0)]
    label_of = _old_labels(diagram)
    (label_of[("new", 0)],) = _fresh_labels(set(diagram.labels), 1)
    return _rebuild(tokens, label_of)


def r1_insert(diagram: ChordDiagram, gap: int) -> ChordDiagram:
    """Add a kink: a chord with adjacent endpoints at the given gap."""
    return _r1_insert(diagram, gap)[0]


def r1_removable(diagram: ChordDiagram, c: int) -> bool:
    a, b = diagram.chords[c]
    return _adjacent(a, b, diagram.size)


def r1_remove(diagram: ChordDiagram, c: int) -> ChordDiagram:
    _check_chord(diagram, c)
    if not r1_removable(diagram, c):
        raise MoveError(f"chord {diagram.labels[c]} has no adjacent endpoints; R1 does not apply")
    tokens = [t for t in _tokens(diagram) if t != ("old", c)]
    return _rebuild(tokens, _old_labels(diagram))[0]


# --- R2 ---
def _r2_insert(
    diagram: ChordDiagram, gap1: int, gap2: int, variant: R2Variant
) -> Tuple[ChordDiagram, Dict[Token, int]]:
    _check_gap(diagram, gap1)
    _check_gap(diagram, gap2)
    x, y = ("new", 0), ("new", 1)
    second_half = [y, x] if variant is R2Variant.NESTED else [x, y]
    tokens = _tokens(diagram)
    if gap1 == gap2:
        tokens[gap1:gap1] = [x, y] + second_half
    elif gap1 < gap2:
        tokens[gap2:gap2] = second_half
        tokens[gap1:gap1] = [x, y]
    else:
        tokens[gap1:gap1] = [x, y]
        tokens[gap2:gap2] = second_half
    label_of = _old_labels(diagram)
    label_of[x], label_of[y] = _fresh_labels(set(diagram.labels), 2)
    return _rebuild(tokens, label_of)


def r2_insert(diagram: ChordDiagram, gap1: int, gap2: int, variant: R2Variant = R2Variant.NESTED) -> ChordDiagram:
    """Add two chords: x y at gap1, then y x (nested) or x y (interleaved) at gap2.

    Equal gaps insert all four tokens together, the only choice on the trivial diagram.
    """
    return _r2_insert(diagram, gap1, gap2, variant)[0]


def r2_removable(diagram: ChordDiagram, c: int, d: int) -> bool:
    if c == d:
        return False
    (c1, c2), (d1, d2) = diagram.chords[c], diagram.chords[d]
    size = diagram.size
    return (_adjacent(c1, d1, size) and _adjacent(c2, d2, size)) or \
           (_adjacent(c1, d2, size) and _adjacent(c2, d1, size))


def r2_remove(diagram: ChordDiagram, c: int, d: int) -> ChordDiagram:
    _check_chord(diagram, c)
    _check_chord(diagram, d)
    if not r2_removable(diagram, c, d):
        raise MoveError(
            f"chords {diagram.labels[c]} and {diagram.labels[d]} do not form an R2 pattern"
        )
    tokens = [t for t in _tokens(diagram) if t not in (("old", c), ("old", d))]
    return _rebuild(tokens, _old_labels(diagram))[0]


# --- R3 ---
def _r3_pairs(size: int, starts: Sequence[int]) -> Optional[List[Tuple[int, int]]]:
    if len(starts) != 3 or size < 6:
        return None
    pairs = [(p % size, (p + 1) % size) for p in starts]
    positions = [p for pair in pairs for p in pair]
    if len(set(positions)) != 6 or any(not 0 <= p < size for p in starts):
        return None
    return pairs


def is_r3_site(diagram: ChordDiagram, starts: Sequence[int]) -> bool:
    pairs = _r3_pairs(diagram.size, starts)
    if pairs is None:
        return False
    owner = diagram.owners()
    chords_in_pair = [{owner[p], owner[q]} for p, q in pairs]
    if any(len(s) != 2 for s in chords_in_pair):
        return False
    involved = set().union(*chords_in_pair)
    # three chords, six endpoints, no pair holding both ends of one chord:
    # each chord then meets exactly two of the pairs
    return len(involved) == 3


def r3(diagram: ChordDiagram, starts: Sequence[int]) -> ChordDiagram:
    """Transpose the two positions of each adjacent pair of a triangle site. Involution."""
    if not is_r3_site(diagram, starts):
        raise MoveError(f"positions {list(starts)} do not form an R3 triangle site")
    tokens = _tokens(diagram)
    for p, q in _r3_pairs(diagram.size, starts):
        tokens[p], tokens[q] = tokens[q], tokens[p]
    return _rebuild(tokens, _old_labels(diagram))[0]


# --- Sites, dispatch, walks ---
def find_move_sites(diagram: ChordDiagram) -> List[MoveSite]:
    """All R1/R2 removal sites and R3 sites; insertion sites are just gaps."""
    sites: List[MoveSite] = []
    n, size = diagram.n, diagram.size
    for c in range(n):
        if r1_removable(diagram, c):
            sites.append(MoveSite(kind=MoveKind.R1_REMOVE, params=(c,)))
    for c in range(n):
        for d in range(c + 1, n):
            if r2_removable(diagram, c, d):
                sites.append(MoveSite(kind=MoveKind.R2_REMOVE, params=(c, d)))
    for p in range(size):
        for q in range(p + 2, size):
            for r in range(q + 2, size):
                if is_r3_site(diagram, (p, q, r)):
                    sites.append(MoveSite(kind=MoveKind.R3, params=(p, q, r)))
    return sites


_ARITY = {
    MoveKind.R1_INSERT: 1,
    MoveKind.R1_REMOVE: 1,
    MoveKind.R2_INSERT: 2,
    MoveKind.R2_REMOVE: 2,
    MoveKind.R3: 3,
}


def apply_move(diagram: ChordDiagram, site: MoveSite) -> ChordDiagram:
    params = site.params
    if len(params) != _ARITY[site.kind]:
        raise MoveError(f"{site.kind.value} takes {_ARITY[site.kind]} parameter(s), got {len(params)}")
    if site.kind is MoveKind.R1_INSERT:
        return r1_insert(diagram, *params)
    if site.kind is MoveKind.R1_REMOVE:
        return r1_remove(diagram, *params)
    if site.kind is MoveKind.R2_INSERT:
        return r2_insert(diagram, params[0], params[1], site.variant or R2Variant.NESTED)
    if site.kind is MoveKind.R2_REMOVE:
        return r2_remove(diagram, *params)
    return r3(diagram, params)


def random_walk(diagram: ChordDiagram, steps: int, seed: int) -> Tuple[ChordDiagram, MoveScript]:
    """Apply `steps` random moves; deterministic per seed.

    Each step picks uniformly among the non-empty categories (insertion,
    removal, r3) and then uniformly within the category. Insertions pick R1 or
    R2, gaps and the R2 variant uniformly.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = np.random.default_rng(seed)
    current = ChordDiagram.from_chords(diagram.chords, diagram.labels)
    start = serialize(current)
    moves: List[MoveSite] = []
    for _ in range(steps):
        sites = find_move_sites(current)
        removals = [s for s in sites if s.kind in (MoveKind.R1_REMOVE, MoveKind.R2_REMOVE)]
        triangles = [s for s in sites if s.kind is MoveKind.R3]
        categories = ["insertion"] + (["removal"] if removals else []) + (["r3"] if triangles else [])
        category = categories[int(rng.integers(len(categories)))]
        if category == "insertion":
            gaps = max(current.size, 1)
            if int(rng.integers(2)) == 0:
                site = MoveSite(kind=MoveKind.R1_INSERT, params=(int(rng.integers(gaps)),))
            else:
                variant = (R2Variant.NESTED, R2Variant.INTERLEAVED)[int(rng.integers(2))]
                site = MoveSite(kind=MoveKind.R2_INSERT,
                                params=(int(rng.integers(gaps)), int(rng.integers(gaps))), variant=variant)
        elif category == "removal":
            site = removals[int(rng.integers(len(removals)))]
        else:
            site = triangles[int(rng.integers(len(triangles)))]
        current = apply_move(current, site)
        moves.append(site)
    logger.debug(f"random walk of {steps} steps from {diagram.n} to {current.n} chords")
    return current, MoveScript(seed=seed, start=start, end=serialize(current), moves=moves)


def replay_script(script: MoveScript) -> ChordDiagram:
    """Re-apply a recorded script from its start code.

    Raises:
        ScriptReplayError: the result differs from the recorded end code.
    """
    current = parse_gauss_code(script.start)
    for number, site in enumerate(script.moves):
        try:
            current = apply_move(current, site)
        except (MoveError, ChordIndexError) as e:
            raise ScriptReplayError(f"move {number} ({site.kind.value}) failed: {e}") from e
    if serialize(current) != script.end:
        raise ScriptReplayError(f"replay produced {serialize(current)!r}, script records {script.end!r}")
    return current


def insert_with_certificate(
    diagram: ChordDiagram, pairing: Pairing, site: MoveSite
) -> Tuple[ChordDiagram, Pairing]:
    """Apply an R1/R2 insertion and carry a certificate across it.

    The R1 chord becomes an (even) singleton; the two R2 chords are paired
    parallel, which glues each endpoint to its adjacent partner.
    """
    from .pairing import make_pairing

    if site.kind is MoveKind.R1_INSERT:
        moved, index = _r1_insert(diagram, site.params[0])
        extra: List[Block] = [Singleton(chord=index[("new", 0)])]
    elif site.kind is MoveKind.R2_INSERT:
        moved, index = _r2_insert(diagram, site.params[0], site.params[1], site.variant or R2Variant.NESTED)
        extra = [Pair(first=index[("new", 0)], second=index[("new", 1)])]
    else:
        raise MoveError(f"{site.kind.value} is not an insertion move")

    blocks: List[Block] = list(extra)
    for block in pairing.blocks:
        if isinstance(block, Singleton):
            blocks.append(Singleton(chord=index[("old", block.chord)]))
        else:
            blocks.append(Pair(first=index[("old", block.first)], second=index[("old", block.second)],
                               correspondence=block.correspondence))
    return moved, make_pairing(moved, blocks)

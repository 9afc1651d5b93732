"""
Pairings of chords and the derived diagram C(P).

A pairing splits the chords into singletons and pairs. A singleton keeps its
chord; a pair (c, d) is replaced by two chords joining corresponding endpoints
of c and d. The pairing has no intersections when the resulting chords are
pairwise unlinked.

Internally a block is the tuple (least, kind, partner, corr) with kind 0 for a
singleton and 1 for a pair, corr 0 for parallel and 1 for crossed. Sorting these
tuples gives the certificate order used throughout the package.
"""
import logging
from math import comb
from typing import Any, Callable, Iterator, List, Optional, Sequence, Tuple

from .errors import PairingError
from .gauss_code import double_factorial
from .models import (
    Block,
    Chord,
    ChordDiagram,
    Correspondence,
    Pair,
    Pairing,
    PairingFilter,
    Parity,
    Singleton,
)
from .parity import parities

logger = logging.getLogger(__name__)

BlockKey = Tuple[int, int, int, int]

_CORRESPONDENCES = (Correspondence.PARALLEL, Correspondence.CROSSED)


# --- Construction and validation ---
def _validate_partition(n: int, groups: Sequence[Tuple[int, ...]]) -> None:
    owner = [-1] * n
    for number, group in enumerate(groups):
        if len(group) not in (1, 2):
            raise PairingError(f"block {number} has {len(group)} chords; blocks hold one or two", kind="partition")
        if len(group) == 2 and group[0] == group[1]:
            raise PairingError(f"block {number} pairs chord {group[0]} with itself", kind="self_pair")
        for i in group:
            if not 0 <= i < n:
                raise PairingError(f"block {number} names chord {i}, diagram has {n} chords", kind="partition")
            if owner[i] != -1:
                raise PairingError(f"chord {i} appears in blocks {owner[i]} and {number}", kind="partition")
            owner[i] = number
    missing = [i for i in range(n) if owner[i] == -1]
    if missing:
        raise PairingError(f"chords {missing} are not assigned to any block", kind="partition")


def make_pairing(diagram: ChordDiagram, blocks: Sequence[Block]) -> Pairing:
    """Validate `blocks` as a partition of the diagram's chords and build the Pairing.

    Raises:
        PairingError: a chord is missing, duplicated, out of range, or paired with itself.
    """
    _validate_partition(diagram.n, [b.chords for b in blocks])
    ordered = sorted(blocks, key=lambda b: b.sort_key())
    return Pairing(chord_count=diagram.n, blocks=tuple(ordered))


def block_from_key(key: BlockKey) -> Block:
    least, kind, partner, corr = key
    if kind == 0:
        return Singleton(chord=least)
    return Pair(first=least, second=partner, correspondence=_CORRESPONDENCES[corr])


def pairing_from_keys(n: int, keys: Sequence[BlockKey]) -> Pairing:
    return Pairing(chord_count=n, blocks=tuple(block_from_key(k) for k in keys))


# --- Derived diagram ---
def glue(c: Chord, d: Chord, corr: int) -> Tuple[Chord, Chord]:
    """The two chords replacing the pair (c, d)."""
    (c1, c2), (d1, d2) = c, d
    if corr == 0:
        ends = ((c1, d1), (c2, d2))
    else:
        ends = ((c1, d2), (c2, d1))
    return tuple((min(p, q), max(p, q)) for p, q in ends)  # type: ignore[return-value]


def derived_chords(chords: Sequence[Chord], keys: Sequence[BlockKey]) -> List[Chord]:
    out: List[Chord] = []
    for least, kind, partner, corr in keys:
        if kind == 0:
            out.append(chords[least])
        else:
            out.extend(glue(chords[least], chords[partner], corr))
    return out


def _keys(pairing: Pairing) -> List[BlockKey]:
    return [b.sort_key() for b in pairing.blocks]


def derived_diagram(diagram: ChordDiagram, pairing: Pairing) -> ChordDiagram:
    """C(P): singletons kept, each pair replaced by its two glued chords."""
    return ChordDiagram.from_chords(derived_chords(diagram.chords, _keys(pairing)))


def first_linked_pair(chords: Sequence[Chord], size: int) -> Optional[Tuple[Chord, Chord]]:
    """First linked pair met by a stack scan of a perfect matching on `size` points.

    When a chord closes while another chord is on top of the stack, that other
    chord opened inside it and closes outside it, so the two are linked.
    """
    at = [0] * size
    for k, (p, q) in enumerate(chords):
        at[p] = k
        at[q] = k
    stack: List[int] = []
    for position in range(size):
        k = at[position]
        if position == chords[k][0]:
            stack.append(k)
            continue
        top = stack.pop()
        if top != k:
            return chords[k], chords[top]
    return None


def find_linked_pair(diagram: ChordDiagram, pairing: Pairing) -> Optional[Tuple[Chord, Chord]]:
    return first_linked_pair(derived_chords(diagram.chords, _keys(pairing)), diagram.size)


def is_noncrossing(diagram: ChordDiagram, pairing: Pairing) -> bool:
    """True iff every two chords of C(P) are unlinked, the two chords of one pair included."""
    return find_linked_pair(diagram, pairing) is None


# --- Enumeration ---
def iter_block_keys(
    n: int,
    allow_singleton: Callable[[int], bool] = lambda i: True,
    allow_pair: Callable[[int, int], bool] = lambda i, j: True,
) -> Iterator[Tuple[BlockKey, ...]]:
    """All pairings of n chords as block-key tuples, in certificate order."""
    assigned = [False] * n
    keys: List[BlockKey] = []

    def extend(i: int) -> Iterator[Tuple[BlockKey, ...]]:
        while i < n and assigned[i]:
            i += 1
        if i == n:
            yield tuple(keys)
            return
        assigned[i] = True
        if allow_singleton(i):
            keys.append((i, 0, i, 0))
            yield from extend(i + 1)
            keys.pop()
        for j in range(i + 1, n):
            if assigned[j] or not allow_pair(i, j):
                continue
            assigned[j] = True
            for corr in (0, 1):
                keys.append((i, 1, j, corr))
                yield from extend(i + 1)
                keys.pop()
            assigned[j] = False
        assigned[i] = False

    yield from extend(0)


def enumerate_pairings(diagram: ChordDiagram, opts: Optional[PairingFilter] = None) -> Iterator[Pairing]:
    """Every pairing of the diagram exactly once, both correspondences per pair.

    `opts.perfect_only` drops singletons; `opts.parity_compatible` keeps only even
    singletons and pairs of equal Gaussian parity.
    """
    opts = opts or PairingFilter()
    parity = parities(diagram) if opts.parity_compatible else []

    def allow_singleton(i: int) -> bool:
        if opts.perfect_only:
            return False
        return not opts.parity_compatible or parity[i] is Parity.EVEN

    def allow_pair(i: int, j: int) -> bool:
        return not opts.parity_compatible or parity[i] is parity[j]

    for keys in iter_block_keys(diagram.n, allow_singleton, allow_pair):
        yield pairing_from_keys(diagram.n, keys)


def count_pairings(n: int) -> int:
    """Sum over involutions of an n-set of 2^(number of 2-cycles)."""
    return sum(comb(n, 2 * k) * double_factorial(2 * k - 1) * 2 ** k for k in range(n // 2 + 1))


# --- Certificate JSON ---
def pairing_from_json(diagram: ChordDiagram, data: Any) -> Pairing:
    """Read the certificate fragment: {"chord": l} or {"chords": [l1, l2], "correspondence": ...}.

    Raises:
        PairingError: kind 'malformed' or 'unknown_label' for unreadable input,
            'partition' / 'self_pair' / 'correspondence' for a readable but invalid pairing.
    """
    if not isinstance(data, list):
        raise PairingError("certificate must be a list of blocks", kind="malformed")

    groups: List[Tuple[int, ...]] = []
    raw_correspondences: List[Any] = []
    for number, item in enumerate(data):
        if not isinstance(item, dict):
            raise PairingError(f"block {number} is not an object", kind="malformed")
        if "chord" in item:
            names = [item["chord"]]
        elif "chords" in item and isinstance(item["chords"], list):
            names = item["chords"]
        else:
            raise PairingError(f"block {number} has neither 'chord' nor 'chords'", kind="malformed")
        indices = []
        for name in names:
            if not isinstance(name, str) or name not in diagram.labels:
                raise PairingError(f"block {number} names unknown chord {name!r}", kind="unknown_label")
            indices.append(diagram.index_of(name))
        groups.append(tuple(indices))
        raw_correspondences.append(item.get("correspondence"))

    _validate_partition(diagram.n, groups)

    blocks: List[Block] = []
    for number, (group, raw) in enumerate(zip(groups, raw_correspondences)):
        if len(group) == 1:
            blocks.append(Singleton(chord=group[0]))
            continue
        try:
            corr = Correspondence(raw)
        except ValueError:
            raise PairingError(
                f"block {number} needs correspondence 'parallel' or 'crossed', got {raw!r}",
                kind="correspondence",
            ) from None
        blocks.append(Pair(first=group[0], second=group[1], correspondence=corr))
    return make_pairing(diagram, blocks)


def pairing_to_json(diagram: ChordDiagram, pairing: Pairing) -> List[dict]:
    return pairing.to_json(diagram)

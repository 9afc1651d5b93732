"""
Sliceness decisions for free-knot diagrams.

A diagram whose chords admit a pairing with no intersections is slice, and the
pairing is the certificate. For odd diagrams the converse holds too, so an odd
diagram without such a pairing is not slice. For any other diagram the absence
of a pairing settles nothing and the verdict is inconclusive.

decide_slice runs a pruned backtracking search; oracle_decide checks every
pairing one by one and serves as the reference in tests.
"""
import logging
from typing import Iterable, List, Optional, Tuple

from joblib import Parallel, delayed

from .config import get_settings
from .errors import BudgetExhaustedError, OracleBoundError, PairingError
from .models import (
    Chord,
    CertificateReport,
    ChordDiagram,
    Correspondence,
    Pair,
    Pairing,
    Parity,
    SearchConfig,
    Verdict,
    VerdictKind,
)
from .moves import connected_sum, mirror
from .pairing import (
    BlockKey,
    _validate_partition,
    derived_chords,
    first_linked_pair,
    glue,
    iter_block_keys,
    make_pairing,
    pairing_from_keys,
)
from .parity import is_odd_diagram, parities
from .performance_logging import timed_search

logger = logging.getLogger(__name__)


def _unlinked(x: Chord, y: Chord) -> bool:
    p, q = x
    a, b = y
    return (p < a < q) == (p < b < q)


class _Search:
    """Depth-first search over partial pairings.

    Chords are taken by increasing index. At each chord the options are tried in
    certificate order (singleton, then pairs with larger unassigned chords,
    parallel before crossed), so the first complete pairing found is the
    minimal one. Every new derived chord is checked against all chords placed
    so far, which covers every pair of chords of C(P) exactly once.
    """

    def __init__(self, diagram: ChordDiagram, cfg: SearchConfig, budget: Optional[int]):
        self.chords = diagram.chords
        self.n = diagram.n
        self.odd = [p is Parity.ODD for p in parities(diagram)]
        self.cfg = cfg
        self.budget = budget
        self.nodes = 0
        self.assigned = [False] * self.n
        self.keys: List[BlockKey] = []
        self.placed: List[Chord] = []

    def _fits(self, chord: Chord) -> bool:
        return all(_unlinked(chord, other) for other in self.placed)

    def options(self, i: int) -> Iterable[Tuple[BlockKey, Tuple[Chord, ...]]]:
        chord = self.chords[i]
        singleton_ok = not (self.cfg.use_singleton_even_pruning and self.odd[i])
        if singleton_ok and self._fits(chord):
            yield (i, 0, i, 0), (chord,)
        for j in range(i + 1, self.n):
            if self.assigned[j]:
                continue
            if self.cfg.use_equal_parity_pruning and self.odd[i] != self.odd[j]:
                continue
            for corr in (0, 1):
                x, y = glue(chord, self.chords[j], corr)
                if _unlinked(x, y) and self._fits(x) and self._fits(y):
                    yield (i, 1, j, corr), (x, y)

    def apply(self, key: BlockKey, new: Tuple[Chord, ...]) -> None:
        self.assigned[key[0]] = True
        self.assigned[key[2]] = True
        self.keys.append(key)
        self.placed.extend(new)

    def undo(self, key: BlockKey, new: Tuple[Chord, ...]) -> None:
        del self.placed[len(self.placed) - len(new):]
        self.keys.pop()
        self.assigned[key[2]] = False
        self.assigned[key[0]] = False

    def _visit(self, i: int) -> int:
        """Count a node and return the next unassigned chord index (n when complete)."""
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExhaustedError(self.nodes, self.budget)
        while i < self.n and self.assigned[i]:
            i += 1
        return i

    def run(self, i: int = 0) -> bool:
        i = self._visit(i)
        if i == self.n:
            return True
        # frames: [chord index, option iterator, block applied from this frame]
        stack: List[list] = [[i, self.options(i), None]]
        while stack:
            frame = stack[-1]
            if frame[2] is not None:
                self.undo(*frame[2])
                frame[2] = None
            step = next(frame[1], None)
            if step is None:
                stack.pop()
                continue
            self.apply(*step)
            frame[2] = step
            j = self._visit(frame[0] + 1)
            if j == self.n:
                return True
            stack.append([j, self.options(j), None])
        return False


def _run_branch(
    diagram: ChordDiagram, cfg: SearchConfig, key: BlockKey, new: Tuple[Chord, ...], budget: Optional[int]
) -> Tuple[Optional[Tuple[BlockKey, ...]], int, bool]:
    """Search one top-level branch; returns (certificate keys, nodes, exhausted)."""
    search = _Search(diagram, cfg, budget)
    search.apply(key, new)
    try:
        found = search.run(1)
    except BudgetExhaustedError:
        return None, search.nodes, True
    return (tuple(search.keys) if found else None), search.nodes, False


def _verdict(diagram: ChordDiagram, keys: Optional[Tuple[BlockKey, ...]], examined: int) -> Verdict:
    odd = is_odd_diagram(diagram)
    if keys is not None:
        return Verdict(kind=VerdictKind.SLICE, certificate=pairing_from_keys(diagram.n, keys),
                       odd=odd, pairings_examined=examined)
    kind = VerdictKind.NOT_SLICE if odd else VerdictKind.INCONCLUSIVE
    return Verdict(kind=kind, odd=odd, pairings_examined=examined)


def _decide_parallel(diagram: ChordDiagram, cfg: SearchConfig) -> Tuple[Optional[Tuple[BlockKey, ...]], int]:
    root = _Search(diagram, cfg, cfg.node_budget)
    branches = list(root.options(0))
    budget = cfg.node_budget
    # the root node is shared by all branches
    branch_budget = None if budget is None else max(budget - 1, 0)
    if budget is not None and budget < 1:
        raise BudgetExhaustedError(1, budget)

    tasks = (delayed(_run_branch)(diagram, cfg, key, new, branch_budget) for key, new in branches)
    return_as = "generator" if cfg.deterministic_certificate else "generator_unordered"
    results = Parallel(n_jobs=cfg.threads, prefer="threads", return_as=return_as)(tasks)

    # Walk branches in certificate order and count only the nodes a sequential
    # run would have visited, so the verdict is independent of scheduling.
    examined = 1
    for keys, nodes, exhausted in results:
        examined += nodes
        if exhausted or (budget is not None and examined > budget):
            raise BudgetExhaustedError(budget + 1, budget)
        if keys is not None:
            return keys, examined
    return None, examined


def decide_slice(diagram: ChordDiagram, cfg: Optional[SearchConfig] = None) -> Verdict:
    """Decide sliceness with the pruned backtracking search.

    Returns Slice with the minimal certificate when a pairing with no
    intersections exists, otherwise NotSlice for odd diagrams and Inconclusive
    for the rest. `pairings_examined` is the number of search nodes visited.

    Raises:
        BudgetExhaustedError: more than cfg.node_budget nodes were needed.
    """
    cfg = cfg or SearchConfig()
    with timed_search("decide_slice", n=diagram.n) as extra:
        if cfg.threads > 1 and diagram.n > 1:
            keys, examined = _decide_parallel(diagram, cfg)
        else:
            search = _Search(diagram, cfg, cfg.node_budget)
            found = search.run(0)
            keys, examined = (tuple(search.keys) if found else None), search.nodes
        verdict = _verdict(diagram, keys, examined)
        extra.update(verdict=verdict.kind.value, nodes=examined, threads=cfg.threads)
    logger.debug(f"decide_slice on {diagram.n} chords: {verdict.kind.value} after {examined} nodes")
    return verdict


def oracle_decide(diagram: ChordDiagram, max_chords: Optional[int] = None) -> Verdict:
    """Check every pairing in certificate order, without pruning.

    The first pairing with no intersections is returned as the certificate;
    `pairings_examined` counts the pairings checked.

    Raises:
        OracleBoundError: the diagram has more chords than the bound
            (settings.oracle_max_chords unless given).
    """
    bound = get_settings().oracle_max_chords if max_chords is None else max_chords
    if diagram.n > bound:
        raise OracleBoundError(diagram.n, bound)
    with timed_search("oracle_decide", n=diagram.n) as extra:
        examined = 0
        certificate = None
        for keys in iter_block_keys(diagram.n):
            examined += 1
            if first_linked_pair(derived_chords(diagram.chords, keys), diagram.size) is None:
                certificate = keys
                break
        verdict = _verdict(diagram, certificate, examined)
        extra.update(verdict=verdict.kind.value, pairings=examined)
    return verdict


def explain_certificate(diagram: ChordDiagram, pairing: Pairing) -> CertificateReport:
    """Check a certificate and name the first violated condition, if any."""
    if pairing.chord_count != diagram.n:
        return CertificateReport(
            valid=False, reason="chord_count",
            message=f"pairing is for {pairing.chord_count} chords, diagram has {diagram.n}",
        )
    try:
        _validate_partition(diagram.n, [block.chords for block in pairing.blocks])
    except PairingError as e:
        return CertificateReport(valid=False, reason=e.kind, message=str(e))
    linked_pair = first_linked_pair(derived_chords(diagram.chords, [b.sort_key() for b in pairing.blocks]),
                                    diagram.size)
    if linked_pair is not None:
        x, y = linked_pair
        return CertificateReport(
            valid=False, reason="linked_pair", linked_pair=linked_pair,
            message=f"linked pair in C(P): chords {x} and {y} interleave",
        )
    return CertificateReport(valid=True, message="pairing has no intersections")


def check_certificate(diagram: ChordDiagram, pairing: Pairing) -> bool:
    report = explain_certificate(diagram, pairing)
    if not report.valid:
        logger.info(f"Certificate rejected ({report.reason}): {report.message}")
    return report.valid


def mirror_certificate(knot: ChordDiagram) -> Tuple[ChordDiagram, Pairing]:
    """K # mirror(K), spliced at both basepoints, with each chord paired to its mirror twin.

    The sum reads mirror(K) followed by K, so position p of K and its twin
    2n-1-p of mirror(K) sit symmetrically around the splice. Crossed glueing of
    a chord with its twin gives chords (2n+p, 2n-1-p), all concentric.
    """
    twin_code = mirror(knot)
    total = connected_sum(knot, 0, twin_code, 0)
    offset = knot.size
    owner = total.owners()
    blocks = []
    for a, _b in knot.chords:
        chord = owner[offset + a]
        twin = owner[offset - 1 - a]
        blocks.append(Pair(first=chord, second=twin, correspondence=Correspondence.CROSSED))
    return total, make_pairing(total, blocks)

"""Interlacement of chords and their Gaussian parity."""
import logging
from typing import List

import numpy as np

from .errors import ChordIndexError
from .models import ChordDiagram, Parity

logger = logging.getLogger(__name__)


def _check_index(diagram: ChordDiagram, i: int) -> None:
    if not 0 <= i < diagram.n:
        raise ChordIndexError(f"chord index {i} out of range for a diagram with {diagram.n} chords")


def linked(diagram: ChordDiagram, i: int, j: int) -> bool:
    """True iff exactly one endpoint of chord j lies strictly inside chord i."""
    _check_index(diagram, i)
    _check_index(diagram, j)
    if i == j:
        raise ValueError("linked() needs two distinct chords")
    a, b = diagram.chords[i]
    c, d = diagram.chords[j]
    return (a < c < b) != (a < d < b)


def interlacement(diagram: ChordDiagram) -> np.ndarray:
    """n x n symmetric boolean matrix of linked(); diagonal is False."""
    if diagram.n == 0:
        return np.zeros((0, 0), dtype=bool)
    ends = np.asarray(diagram.chords, dtype=np.int64)
    a = ends[:, 0][:, None]
    b = ends[:, 1][:, None]
    c = ends[:, 0][None, :]
    d = ends[:, 1][None, :]
    matrix = ((a < c) & (c < b)) ^ ((a < d) & (d < b))
    np.fill_diagonal(matrix, False)
    return matrix


def parities(diagram: ChordDiagram) -> List[Parity]:
    degrees = interlacement(diagram).sum(axis=1)
    return [Parity.ODD if int(k) % 2 else Parity.EVEN for k in degrees]


def gaussian_parity(diagram: ChordDiagram, i: int) -> Parity:
    """Odd iff chord i is linked with an odd number of chords."""
    _check_index(diagram, i)
    first, second = diagram.chords[i]
    # Each chord linked with i has exactly one endpoint inside; the others have 0 or 2
    return Parity.ODD if (second - first - 1) % 2 else Parity.EVEN


def is_odd_diagram(diagram: ChordDiagram) -> bool:
    """Every chord odd. The trivial diagram is vacuously odd."""
    return all(p is Parity.ODD for p in parities(diagram))

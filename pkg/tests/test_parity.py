import numpy as np
import pytest

from free_knots.errors import ChordIndexError
from free_knots.gauss_code import TRIVIAL, enumerate_diagrams, parse_gauss_code
from free_knots.models import Parity
from free_knots.parity import gaussian_parity, interlacement, is_odd_diagram, linked, parities


def test_linked_examples():
    assert linked(parse_gauss_code("a b a b"), 0, 1)
    assert not linked(parse_gauss_code("a b b a"), 0, 1)
    assert not linked(parse_gauss_code("a a b b"), 0, 1)


def test_linked_rejects_bad_indices(interleaved):
    with pytest.raises(ChordIndexError):
        linked(interleaved, 0, 2)
    with pytest.raises(ValueError):
        linked(interleaved, 1, 1)


def test_interlacement_examples():
    assert interlacement(TRIVIAL).shape == (0, 0)
    star = interlacement(parse_gauss_code("a b c a b c"))
    assert star.dtype == bool
    assert (star == ~np.eye(3, dtype=bool)).all()


def test_gaussian_parity_examples():
    assert gaussian_parity(parse_gauss_code("a a"), 0) is Parity.EVEN
    assert gaussian_parity(parse_gauss_code("a b a b"), 0) is Parity.ODD
    star = parse_gauss_code("a b c a b c")
    assert [gaussian_parity(star, i) for i in range(3)] == [Parity.EVEN] * 3


def test_is_odd_diagram_examples():
    assert is_odd_diagram(TRIVIAL)
    assert is_odd_diagram(parse_gauss_code("a b a b"))
    assert not is_odd_diagram(parse_gauss_code("a b c a b c"))
    assert is_odd_diagram(parse_gauss_code("a b c d a b c d"))


def test_parity_properties_exhaustive():
    for n in range(1, 6):
        for diagram in enumerate_diagrams(n):
            matrix = interlacement(diagram)
            assert (matrix == matrix.T).all()
            assert not matrix.diagonal().any()
            for i in range(n):
                for j in range(n):
                    if i != j:
                        assert matrix[i, j] == linked(diagram, i, j)
            table = parities(diagram)
            # interval length and linking count agree
            assert table == [gaussian_parity(diagram, i) for i in range(n)]
            assert sum(p is Parity.ODD for p in table) % 2 == 0
            if is_odd_diagram(diagram):
                assert n % 2 == 0

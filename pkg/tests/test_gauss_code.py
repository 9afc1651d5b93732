import pytest

from free_knots.errors import GaussCodeError
from free_knots.gauss_code import (
    TRIVIAL,
    canonical_form,
    canonical_key,
    count_diagrams,
    enumerate_diagrams,
    parse_gauss_code,
    random_diagram,
    render_ascii,
    serialize,
    star_diagram,
)
from free_knots.models import ChordDiagram
from free_knots.parity import is_odd_diagram


def test_parse_examples():
    assert parse_gauss_code("").n == 0
    assert parse_gauss_code("   \n").n == 0
    assert parse_gauss_code("a b a b").chords == ((0, 2), (1, 3))
    assert parse_gauss_code("a b b a").chords == ((0, 3), (1, 2))


def test_parse_keeps_labels_in_first_appearance_order():
    diagram = parse_gauss_code("x y z y x z")
    assert diagram.labels == ("x", "y", "z")
    assert diagram.chords == ((0, 4), (1, 3), (2, 5))


@pytest.mark.parametrize("code, label", [("a b a", "b"), ("a a a", "a"), ("a b c a b", "c"), ("a a b b b", "b")])
def test_parse_rejects_bad_label_counts(code, label):
    with pytest.raises(GaussCodeError) as excinfo:
        parse_gauss_code(code)
    assert excinfo.value.label == label
    assert repr(label) in str(excinfo.value)


def test_serialize_examples():
    assert serialize(TRIVIAL) == ""
    assert serialize(ChordDiagram(chords=((0, 2), (1, 3)))) == "c0 c1 c0 c1"
    assert serialize(ChordDiagram(chords=((0, 3), (1, 2)))) == "c0 c1 c1 c0"
    assert serialize(parse_gauss_code("b a b a")) == "b a b a"
    assert serialize(parse_gauss_code("b a b a"), relabel=True) == "c0 c1 c0 c1"


def test_parse_serialize_roundtrip():
    for n in range(5):
        for diagram in enumerate_diagrams(n):
            assert parse_gauss_code(serialize(diagram)) == diagram


def test_canonical_form_examples():
    assert canonical_form(parse_gauss_code("b a b a")) == "c0 c1 c0 c1"
    assert canonical_form(parse_gauss_code("a b b a")) == canonical_form(parse_gauss_code("b a a b"))
    assert canonical_form(TRIVIAL) == ""
    forms = {canonical_form(d) for d in enumerate_diagrams(2)}
    assert len(forms) == 2


def _rotate(diagram, shift):
    size = diagram.size
    return ChordDiagram.from_chords([((a + shift) % size, (b + shift) % size) for a, b in diagram.chords])


def _reflect(diagram):
    last = diagram.size - 1
    return ChordDiagram.from_chords([(last - a, last - b) for a, b in diagram.chords])


def test_canonical_form_constant_on_orbits_and_separating():
    for n in range(1, 5):
        classes = {}
        for diagram in enumerate_diagrams(n):
            key = canonical_key(diagram)
            for shift in range(diagram.size):
                assert canonical_key(_rotate(diagram, shift)) == key
            assert canonical_key(_reflect(diagram)) == key
            classes.setdefault(key, set()).add(diagram.chords)
        # each class is exactly one orbit
        for key, members in classes.items():
            seed = ChordDiagram(chords=next(iter(members)))
            orbit = set()
            for shift in range(seed.size):
                rotated = _rotate(seed, shift)
                orbit.add(rotated.chords)
                orbit.add(_reflect(rotated).chords)
            assert members == orbit


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 3), (3, 15), (4, 105), (5, 945)])
def test_enumeration_counts(n, expected):
    diagrams = list(enumerate_diagrams(n))
    assert len(diagrams) == expected == count_diagrams(n)
    assert len({d.chords for d in diagrams}) == expected


def test_random_diagram_is_deterministic_per_seed():
    assert random_diagram(6, seed=7) == random_diagram(6, seed=7)
    assert random_diagram(0, seed=1).n == 0
    samples = {random_diagram(4, seed=s).chords for s in range(40)}
    assert len(samples) > 1


def test_star_diagram_parity():
    assert serialize(star_diagram(2)) == "c0 c1 c0 c1"
    assert is_odd_diagram(star_diagram(4))
    assert not is_odd_diagram(star_diagram(3))


def test_render_ascii():
    picture = render_ascii(parse_gauss_code("a b a b"))
    lines = picture.splitlines()
    assert lines[0].split() == ["a", "b", "a", "b"]
    assert lines[1].endswith("a") and lines[1].count("+") == 2
    assert "trivial" in render_ascii(TRIVIAL)


def test_diagram_validation():
    with pytest.raises(ValueError):
        ChordDiagram(chords=((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        ChordDiagram(chords=((1, 0),))
    with pytest.raises(ValueError):
        ChordDiagram(chords=((0, 1),), labels=("a b",))

import pytest

from free_knots.config import get_settings
from free_knots.gauss_code import parse_gauss_code

LONG_CHORDS = 5


def long_short_diagram(wrap_second):
    """Five pairwise linked long chords a0..a4 plus five short chords b0..b4.

    Short chord b_i crosses only a_i by wrapping one of its endpoints: the
    second one when wrap_second[i] is true, the first one otherwise.
    """
    tokens = []
    for slot in range(2 * LONG_CHORDS):
        i = slot % LONG_CHORDS
        if (slot >= LONG_CHORDS) == bool(wrap_second[i]):
            tokens += [f"b{i}", f"a{i}", f"b{i}"]
        else:
            tokens.append(f"a{i}")
    return parse_gauss_code(" ".join(tokens))


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached per process; tests that patch the env need a clean read."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def long_short_family():
    family = []
    for mask in range(2 ** LONG_CHORDS):
        wrap_second = [(mask >> i) & 1 for i in range(LONG_CHORDS)]
        family.append(long_short_diagram(wrap_second))
    return family


@pytest.fixture
def interleaved():
    return parse_gauss_code("a b a b")


@pytest.fixture
def nested():
    return parse_gauss_code("a b b a")

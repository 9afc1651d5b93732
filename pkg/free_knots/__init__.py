"""Sliceness of odd free knots through pairings of chords with no intersections."""
from .decider import (
    check_certificate,
    decide_slice,
    explain_certificate,
    mirror_certificate,
    oracle_decide,
)
from .errors import (
    BudgetExhaustedError,
    ChordIndexError,
    FreeKnotError,
    GaussCodeError,
    MoveError,
    OracleBoundError,
    PairingError,
    ScriptReplayError,
)
from .gauss_code import (
    canonical_form,
    enumerate_diagrams,
    parse_gauss_code,
    random_diagram,
    serialize,
    star_diagram,
)
from .models import (
    ChordDiagram,
    Correspondence,
    MoveKind,
    MoveScript,
    MoveSite,
    Pair,
    Pairing,
    PairingFilter,
    Parity,
    R2Variant,
    SearchConfig,
    Singleton,
    Verdict,
    VerdictKind,
)
from .moves import (
    apply_move,
    connected_sum,
    find_move_sites,
    insert_with_certificate,
    mirror,
    r1_insert,
    r1_remove,
    r2_insert,
    r2_remove,
    r3,
    random_walk,
    replay_script,
)
from .pairing import derived_diagram, enumerate_pairings, is_noncrossing, make_pairing
from .parity import gaussian_parity, interlacement, is_odd_diagram, linked

__version__ = "0.1.0"

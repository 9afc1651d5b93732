from enum import Enum
from typing import Annotated, Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Chord = Tuple[int, int]


# --- Chord diagrams ---
class ChordDiagram(BaseModel):
    """A free-knot diagram as a perfect matching on 2n circle positions.

    Chord i is `chords[i] = (first, second)` with first < second. Positions are
    0..2n-1 around an oriented circle. Labels are display-only; every algorithm
    works on positions. The empty diagram (n = 0) is the trivial knot.
    """
    model_config = ConfigDict(frozen=True)

    chords: Tuple[Chord, ...] = ()
    labels: Tuple[str, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _default_labels(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("labels"):
            chords = data.get("chords") or ()
            data = {**data, "labels": tuple(f"c{i}" for i in range(len(chords)))}
        return data

    @model_validator(mode="after")
    def _check_matching(self) -> "ChordDiagram":
        n = len(self.chords)
        if len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels given for {n} chords")
        seen = [False] * (2 * n)
        for i, (first, second) in enumerate(self.chords):
            if not first < second:
                raise ValueError(f"chord {i} = ({first}, {second}) must have first < second")
            for p in (first, second):
                if not 0 <= p < 2 * n:
                    raise ValueError(f"chord {i} uses position {p} outside 0..{2 * n - 1}")
                if seen[p]:
                    raise ValueError(f"position {p} is used by more than one chord endpoint")
                seen[p] = True
        if len(set(self.labels)) != n:
            raise ValueError("chord labels must be unique")
        for label in self.labels:
            if not label or any(ch.isspace() for ch in label):
                raise ValueError(f"label {label!r} is empty or contains whitespace")
        return self

    @property
    def n(self) -> int:
        return len(self.chords)

    @property
    def size(self) -> int:
        """Number of circle positions, 2n."""
        return 2 * len(self.chords)

    @classmethod
    def from_chords(cls, chords: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> "ChordDiagram":
        """Build a diagram with chords normalised and ordered by first endpoint."""
        normalised = [(min(a, b), max(a, b)) for a, b in chords]
        if labels is None:
            normalised.sort()
            return cls(chords=tuple(normalised))
        order = sorted(range(len(normalised)), key=lambda i: normalised[i])
        return cls(chords=tuple(normalised[i] for i in order), labels=tuple(labels[i] for i in order))

    def owners(self) -> List[int]:
        """owners()[p] is the index of the chord with an endpoint at position p."""
        owner = [0] * self.size
        for i, (first, second) in enumerate(self.chords):
            owner[first] = i
            owner[second] = i
        return owner

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def same_chords(self, other: "ChordDiagram") -> bool:
        return self.chords == other.chords


# --- Parity ---
class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


# --- Pairings ---
class Correspondence(str, Enum):
    # Relative to each chord's position order (first < second)
    PARALLEL = "parallel"
    CROSSED = "crossed"

    @property
    def rank(self) -> int:
        return 0 if self is Correspondence.PARALLEL else 1


class Singleton(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["singleton"] = "singleton"
    chord: int = Field(ge=0)

    @property
    def chords(self) -> Tuple[int, ...]:
        return (self.chord,)

    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.chord, 0, self.chord, 0)


class Pair(BaseModel):
    """Two chords glued endpoint to endpoint; stored with first < second."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["pair"] = "pair"
    first: int = Field(ge=0)
    second: int = Field(ge=0)
    correspondence: Correspondence = Correspondence.PARALLEL

    @model_validator(mode="before")
    @classmethod
    def _order_chords(cls, data: Any) -> Any:
        # Both correspondences are symmetric in the two chords, so swapping is safe
        if isinstance(data, dict) and "first" in data and "second" in data:
            a, b = data["first"], data["second"]
            if isinstance(a, int) and isinstance(b, int) and a > b:
                data = {**data, "first": b, "second": a}
        return data

    @property
    def chords(self) -> Tuple[int, ...]:
        return (self.first, self.second)

    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.first, 1, self.second, self.correspondence.rank)


Block = Annotated[Union[Singleton, Pair], Field(discriminator="kind")]


class Pairing(BaseModel):
    """A partition of chords 0..chord_count-1 into singletons and pairs.

    Blocks are kept in certificate order (see `sort_key`), so two pairings
    compare by their block key sequences.
    """
    model_config = ConfigDict(frozen=True)

    chord_count: int = Field(ge=0)
    blocks: Tuple[Block, ...] = ()

    def sort_key(self) -> Tuple[Tuple[int, int, int, int], ...]:
        return tuple(block.sort_key() for block in self.blocks)

    @property
    def singletons(self) -> List[Singleton]:
        return [b for b in self.blocks if isinstance(b, Singleton)]

    @property
    def pairs(self) -> List[Pair]:
        return [b for b in self.blocks if isinstance(b, Pair)]

    def to_json(self, diagram: ChordDiagram) -> List[Dict[str, Any]]:
        """Certificate JSON fragment, chords named by the diagram's labels."""
        out: List[Dict[str, Any]] = []
        for block in self.blocks:
            if isinstance(block, Singleton):
                out.append({"chord": diagram.labels[block.chord]})
            else:
                out.append({
                    "chords": [diagram.labels[block.first], diagram.labels[block.second]],
                    "correspondence": block.correspondence.value,
                })
        return out


class PairingFilter(BaseModel):
    """Restrictions for enumerate_pairings; none are applied unless asked for."""
    perfect_only: bool = False
    parity_compatible: bool = False


# --- Decisions ---
class VerdictKind(str, Enum):
    SLICE = "slice"
    NOT_SLICE = "not_slice"
    INCONCLUSIVE = "inconclusive"


class Verdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: VerdictKind
    certificate: Optional[Pairing] = None
    odd: bool
    pairings_examined: int = 0

    @model_validator(mode="after")
    def _check_consistency(self) -> "Verdict":
        if (self.kind is VerdictKind.SLICE) != (self.certificate is not None):
            raise ValueError("exactly the slice verdict carries a certificate")
        if self.kind is VerdictKind.NOT_SLICE and not self.odd:
            raise ValueError("not_slice requires an odd diagram")
        if self.kind is VerdictKind.INCONCLUSIVE and self.odd:
            raise ValueError("inconclusive is only possible for non-odd diagrams")
        return self

    def to_dict(self, diagram: ChordDiagram) -> Dict[str, Any]:
        return {
            "odd": self.odd,
            "verdict": self.kind.value,
            "certificate": self.certificate.to_json(diagram) if self.certificate is not None else None,
            "pairings_examined": self.pairings_examined,
        }


class SearchConfig(BaseModel):
    use_singleton_even_pruning: bool = True
    use_equal_parity_pruning: bool = True
    deterministic_certificate: bool = True
    node_budget: Optional[int] = Field(default=None, ge=0)
    threads: int = Field(default=1, ge=1)


class CertificateReport(BaseModel):
    valid: bool
    reason: Optional[str] = None  # chord_count | partition | self_pair | correspondence | linked_pair
    message: str = ""
    linked_pair: Optional[Tuple[Chord, Chord]] = None


# --- Moves ---
class MoveKind(str, Enum):
    R1_INSERT = "r1_insert"
    R1_REMOVE = "r1_remove"
    R2_INSERT = "r2_insert"
    R2_REMOVE = "r2_remove"
    R3 = "r3"


class R2Variant(str, Enum):
    NESTED = "nested"            # x y ... y x
    INTERLEAVED = "interleaved"  # x y ... x y


class MoveSite(BaseModel):
    """Where a move applies.

    params are gaps for insertions (gap g sits just before position g),
    chord indices for removals, and the first positions of the three
    adjacent pairs for r3.
    """
    model_config = ConfigDict(frozen=True)

    kind: MoveKind
    params: Tuple[int, ...]
    variant: Optional[R2Variant] = None

    def to_json(self) -> Dict[str, Any]:
        params: List[Union[int, str]] = list(self.params)
        if self.variant is not None:
            params.append(self.variant.value)
        return {"kind": self.kind.value, "params": params}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "MoveSite":
        params = list(data.get("params", []))
        variant = None
        if params and isinstance(params[-1], str):
            variant = R2Variant(params.pop())
        return cls(kind=MoveKind(data["kind"]), params=tuple(int(p) for p in params), variant=variant)


class MoveScript(BaseModel):
    seed: Optional[int] = None
    start: str = ""
    end: str = ""
    moves: List[MoveSite] = Field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "start": self.start,
            "end": self.end,
            "moves": [m.to_json() for m in self.moves],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "MoveScript":
        return cls(
            seed=data.get("seed"),
            start=data.get("start", ""),
            end=data.get("end", ""),
            moves=[MoveSite.from_json(m) for m in data.get("moves", [])],
        )

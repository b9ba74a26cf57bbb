""" Sequents, states and the sequent literal grammar """

from dataclasses import dataclass, field

from infoflow.common import BundleError, LanguageMismatch, is_identifier, subsets

TURNSTILE = "|-"


@dataclass(frozen=True)
class Sequent:
    antecedent: frozenset = field(default_factory=frozenset)
    consequent: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'antecedent', frozenset(self.antecedent))
        object.__setattr__(self, 'consequent', frozenset(self.consequent))

    @property
    def types(self) -> frozenset:
        return self.antecedent | self.consequent

    @property
    def sort_key(self) -> tuple:
        return (len(self.antecedent), sorted(self.antecedent), len(self.consequent), sorted(self.consequent))

    def is_tautology(self) -> bool:
        return len(self.antecedent & self.consequent) > 0

    def rename(self, mapping: dict) -> "Sequent":
        return Sequent(
            {mapping[t] for t in self.antecedent},
            {mapping[t] for t in self.consequent},
        )

    def to_dict(self) -> dict:
        return {'ant': sorted(self.antecedent), 'con': sorted(self.consequent)}

    def __str__(self) -> str:
        left = ", ".join(sorted(self.antecedent))
        right = ", ".join(sorted(self.consequent))
        return f"{left} {TURNSTILE} {right}".strip()


@dataclass(frozen=True)
class State:
    holds: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'holds', frozenset(self.holds))


def canonical(sequents) -> tuple:
    return tuple(sorted(set(sequents), key=lambda s: s.sort_key))

def check_language(sequent: Sequent, types, label: str = "sequent") -> None:
    outside = sequent.types - frozenset(types)
    if outside:
        raise LanguageMismatch(f"{label} {sequent} uses types outside the language: {sorted(outside)}")

def state_satisfies(s: Sequent, x: State, types=None) -> bool:
    if types is not None:
        check_language(s, types)
        if not x.holds <= frozenset(types):
            raise LanguageMismatch(f"state {sorted(x.holds)} is not over the language")
    return not (s.antecedent <= x.holds and not (s.consequent & x.holds))

def parse_sequent(text: str) -> Sequent:
    if text.count(TURNSTILE) != 1:
        raise BundleError(f"sequent literal must contain exactly one {TURNSTILE!r}", token=text)
    left, right = text.split(TURNSTILE)
    sides = []
    for side in (left, right):
        names = [name.strip() for name in side.split(",")]
        if names == [""]:
            names = []
        for name in names:
            if not is_identifier(name):
                raise BundleError("bad identifier in sequent literal", token=name or text)
        sides.append(names)
    return Sequent(sides[0], sides[1])

def all_sequents(types, max_side: int = None):
    """Every sequent over ``types`` in canonical order, optionally with bounded sides."""
    sides = list(subsets(types, max_side))
    for antecedent in sides:
        for consequent in sides:
            yield Sequent(antecedent, consequent)


class TypeIndex:
    """Bit positions for a language so states and sequent sides become integers."""

    def __init__(self, types) -> None:
        self.types = tuple(sorted(types))
        self.position = {t: n for n, t in enumerate(self.types)}
        self.full = (1 << len(self.types)) - 1

    def __len__(self) -> int:
        return len(self.types)

    def encode(self, types) -> int:
        mask = 0
        for t in types:
            mask |= 1 << self.position[t]
        return mask

    def decode(self, mask: int) -> frozenset:
        return frozenset(t for n, t in enumerate(self.types) if mask >> n & 1)

    def encode_sequent(self, s: Sequent) -> tuple:
        return self.encode(s.antecedent), self.encode(s.consequent)

    def decode_sequent(self, antecedent: int, consequent: int) -> Sequent:
        return Sequent(self.decode(antecedent), self.decode(consequent))


def mask_refutes(state: int, antecedent: int, consequent: int) -> bool:
    return antecedent & state == antecedent and not consequent & state

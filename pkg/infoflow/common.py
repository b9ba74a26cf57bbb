"""Shared constants, exceptions and small helpers"""

from dataclasses import dataclass, field
from itertools import chain, combinations
import logging
import re

DEFAULT_LIFT_CAP = 4096
DEFAULT_CLOSURE_CAP = 65536
DEFAULT_STATE_CAP = 65536
DEFAULT_INSTANCE_CAP = 100000
DEFAULT_DELTA_BOUND = 2
CONCEPT_TYPE_GUARD = 20

IDENTIFIER = re.compile(r"^\S+$")

logger = logging.getLogger(__name__)


class InfoFlowError(Exception):
    pass

class UnknownElement(InfoFlowError):
    pass

class LanguageMismatch(InfoFlowError):
    pass

class EndpointMismatch(InfoFlowError):
    pass

class NonTotalMap(InfoFlowError):
    pass

class UnknownAxiom(InfoFlowError):
    pass

class NotBijective(InfoFlowError):
    pass

class NoMediator(InfoFlowError):
    pass

class InvalidSystem(InfoFlowError):
    pass

class CapExceeded(InfoFlowError):

    def __init__(self, phase: str, required: int, cap: int) -> None:
        super().__init__(f"{phase}: requires {required} but cap is {cap}")
        self.phase = phase
        self.required = required
        self.cap = cap

    def to_dict(self) -> dict:
        return {
            'error': 'cap exceeded',
            'phase': self.phase,
            'required': self.required,
            'cap': self.cap,
        }

class BundleError(InfoFlowError):

    def __init__(self, message: str, line: int = None, column: int = None, token: str = None) -> None:
        location = ""
        if line is not None:
            location = f" (line {line}, column {column})"
        if token is not None:
            location += f" near {token!r}"
        super().__init__(message + location)
        self.line = line
        self.column = column
        self.token = token

class BundleInvalid(InfoFlowError):

    def __init__(self, defects: list) -> None:
        super().__init__(f"{len(defects)} validation defect(s): " + "; ".join(defects[:3]))
        self.defects = list(defects)


@dataclass(frozen=True)
class ValidationResult:
    defects: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return len(self.defects) == 0

    def __bool__(self) -> bool:
        return self.ok

    def __add__(self, other: "ValidationResult") -> "ValidationResult":
        return ValidationResult(tuple(self.defects) + tuple(other.defects))

    def to_dict(self) -> dict:
        if self.ok:
            return {'ok': True}
        return {'ok': False, 'defects': list(self.defects)}

def validation(defects) -> ValidationResult:
    return ValidationResult(tuple(defects))


def is_identifier(value) -> bool:
    return isinstance(value, str) and IDENTIFIER.match(value) is not None

def check_cap(phase: str, required: int, cap: int) -> None:
    if required > cap:
        raise CapExceeded(phase, required, cap)

def subsets(items, max_size: int = None):
    """All subsets of ``items`` as frozensets, smallest first, in sorted order."""
    ordered = sorted(items)
    top = len(ordered) if max_size is None else min(max_size, len(ordered))
    return (frozenset(combo) for combo in chain.from_iterable(
        combinations(ordered, size) for size in range(top + 1)))

def check_total_map(mapping: dict, domain, codomain, label: str) -> list:
    defects = []
    for element in sorted(domain):
        if element not in mapping:
            defects.append(f"{label}: no image for {element}")
        elif mapping[element] not in codomain:
            defects.append(f"{label}: image {mapping[element]} of {element} is outside the codomain")
    for element in sorted(set(mapping) - set(domain)):
        defects.append(f"{label}: {element} is not in the domain")
    return defects

def require_total_map(mapping: dict, domain, codomain, label: str) -> None:
    defects = check_total_map(mapping, domain, codomain, label)
    if defects:
        raise NonTotalMap("; ".join(defects))

def optional_progress(iterable, show_progress: bool = False, total: int = None):
    if not show_progress:
        return iterable
    try:
        from tqdm import tqdm
    except ImportError:
        logger.error("Progress bar requested, but tqdm not installed!")
        return iterable
    return tqdm(iterable, total=total)

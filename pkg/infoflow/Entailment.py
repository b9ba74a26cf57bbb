"""Decision procedures for sequent entailment.

A sequent <G, D> over a language is the clause "some G-type fails or some
D-type holds". Theories are clause sets; entailment is refutation: the theory
plus units asserting G and denying D must be unsatisfiable. The DPLL search
below does the work; the state enumeration functions are the exhaustive
oracle used by tests and by materialization.
"""

import logging

from infoflow.Sequent import Sequent, TypeIndex, mask_refutes

logger = logging.getLogger(__name__)


def sequent_clause(s: Sequent, index: TypeIndex) -> frozenset:
    return frozenset(
        [-(index.position[t] + 1) for t in s.antecedent]
        + [index.position[t] + 1 for t in s.consequent]
    )

def theory_clauses(axioms, index: TypeIndex) -> list:
    clauses = []
    for axiom in axioms:
        clause = sequent_clause(axiom, index)
        if any(-literal in clause for literal in clause):
            continue  # tautology
        clauses.append(clause)
    return clauses

def refutation_units(s: Sequent, index: TypeIndex) -> list:
    return ([frozenset([index.position[t] + 1]) for t in s.antecedent]
            + [frozenset([-(index.position[t] + 1)]) for t in s.consequent])


def _assign(clauses: list, literal: int):
    reduced = []
    for clause in clauses:
        if literal in clause:
            continue
        if -literal in clause:
            clause = clause - {-literal}
            if not clause:
                return None
        reduced.append(clause)
    return reduced

def _propagate(clauses: list):
    while clauses:
        unit = next((clause for clause in clauses if len(clause) == 1), None)
        if unit is None:
            break
        (literal,) = unit
        clauses = _assign(clauses, literal)
        if clauses is None:
            return None
    return clauses

def _branch_literal(clauses: list) -> int:
    counts = {}
    for clause in clauses:
        for literal in clause:
            counts[abs(literal)] = counts.get(abs(literal), 0) + 1
    return max(sorted(counts), key=lambda var: counts[var])

def satisfiable(clauses) -> bool:
    clauses = [frozenset(clause) for clause in clauses]
    if any(len(clause) == 0 for clause in clauses):
        return False
    clauses = _propagate(clauses)
    if clauses is None:
        return False
    if not clauses:
        return True
    var = _branch_literal(clauses)
    for literal in (var, -var):
        reduced = _assign(clauses, literal)
        if reduced is not None and satisfiable(reduced):
            return True
    return False

def entails(axioms, s: Sequent, index: TypeIndex) -> bool:
    return not satisfiable(theory_clauses(axioms, index) + refutation_units(s, index))


def axiom_masks(axioms, index: TypeIndex) -> list:
    return [index.encode_sequent(axiom) for axiom in axioms]

def models_by_enumeration(masks: list, size: int) -> list:
    """Every state (as a bitmask) satisfying all encoded axioms."""
    return [
        state for state in range(1 << size)
        if not any(mask_refutes(state, antecedent, consequent) for antecedent, consequent in masks)
    ]

def entails_by_enumeration(axioms, s: Sequent, index: TypeIndex) -> bool:
    antecedent, consequent = index.encode_sequent(s)
    return not any(
        mask_refutes(state, antecedent, consequent)
        for state in models_by_enumeration(axiom_masks(axioms, index), len(index))
    )

def submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask

def entailed_masks(models, size: int) -> list:
    """(antecedent, consequent) masks refuted by none of ``models``, canonical mask order."""
    full = (1 << size) - 1
    refuted = bytearray(1 << (2 * size))
    for model in set(models):
        for antecedent in submasks(model):
            row = antecedent << size
            for consequent in submasks(full & ~model):
                refuted[row | consequent] = 1
    logger.debug("%d models refute %d of %d sequents", len(set(models)), sum(refuted), len(refuted))
    return [
        (code >> size, code & full)
        for code in range(1 << (2 * size))
        if not refuted[code]
    ]

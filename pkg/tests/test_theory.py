from itertools import combinations

from hypothesis import given
import pytest

from infoflow.Sequent import Sequent, all_sequents
from infoflow.Theory import (
    Analogy,
    Contract,
    Expand,
    FlatTheory,
    Revise,
    SequentTheory,
    bottom_theory,
    check_theory_morphism,
    close,
    flat_closure,
    flat_entails,
    is_closed,
    is_consistent,
    lot_navigate,
    theory_equivalent,
    theory_leq,
    top_theory,
    validate_theory,
)
from infoflow.common import CapExceeded, LanguageMismatch, NotBijective, UnknownAxiom
from tests.strategies import laws, theories
from tests.samples import CLF_A

HP = SequentTheory({"h", "p"}, [Sequent({"h"}, {"p"})])


def closure_set(t):
    return set(close(t).axioms)

def test_is_consistent():
    assert(is_consistent(top_theory({"h", "p"})))
    assert(not is_consistent(bottom_theory({"h", "p"})))
    clash = SequentTheory({"h", "p"}, [Sequent({"h"}, {"p"}), Sequent({"p"}, ()), Sequent((), {"h"})])
    assert(not is_consistent(clash))

def test_entails():
    assert(HP.entails(Sequent({"h"}, {"h"})))
    weakened = SequentTheory({"h", "p", "q"}, [Sequent({"h"}, {"p"})])
    assert(weakened.entails(Sequent({"h", "q"}, {"p", "q"})))
    assert(bottom_theory({"h"}).entails(Sequent((), {"h"})))
    with pytest.raises(LanguageMismatch):
        HP.entails(Sequent({"x"}, ()))

def test_close():
    assert(close(top_theory({"h"})).axioms == (Sequent({"h"}, {"h"}),))
    assert(len(close(bottom_theory({"h", "p"})).axioms) == 16)
    with pytest.raises(CapExceeded):
        close(top_theory(set("abcdefghi")))
    with pytest.raises(CapExceeded):
        close(HP, cap=15)

def test_theory_leq():
    assert(theory_leq(HP, HP))
    assert(theory_leq(bottom_theory(HP.types), HP))
    assert(theory_leq(HP, top_theory(HP.types)))
    assert(not theory_leq(top_theory(HP.types), HP))
    with pytest.raises(LanguageMismatch):
        theory_leq(HP, top_theory({"h"}))

def test_top_and_bottom():
    top = top_theory({"h"})
    assert([s for s in all_sequents({"h"}) if top.entails(s)] == [Sequent({"h"}, {"h"})])
    assert(theory_leq(top, top))
    assert(theory_leq(bottom_theory({"h"}), top))

def test_theory_equivalent_and_is_closed():
    redundant = SequentTheory(HP.types, [Sequent({"h"}, {"p"}), Sequent({"h"}, {"h", "p"})])
    assert(theory_equivalent(HP, redundant))
    assert(not is_closed(HP))
    assert(is_closed(close(HP)))

def test_lot_navigate():
    extra = (Sequent({"p"}, {"h"}),)
    expanded = lot_navigate(HP, Expand(extra))
    assert(lot_navigate(expanded, Contract(extra)) == HP)
    assert(theory_leq(expanded, HP))
    revised = lot_navigate(HP, Revise((Sequent({"h"}, {"p"}),), extra))
    assert(revised.axioms == extra)
    renamed = lot_navigate(HP, Analogy({"h": "person", "p": "mortal"}))
    assert(renamed.axioms == (Sequent({"person"}, {"mortal"}),))
    with pytest.raises(UnknownAxiom):
        lot_navigate(HP, Contract(extra))
    with pytest.raises(NotBijective):
        lot_navigate(HP, Analogy({"h": "u", "p": "u"}))
    with pytest.raises(LanguageMismatch):
        lot_navigate(HP, Expand((Sequent({"z"}, ()),)))

def test_check_theory_morphism():
    assert(check_theory_morphism({"h": "h", "p": "p"}, HP, HP).ok)
    identity_axiom = SequentTheory({"x"}, [Sequent({"x"}, {"x"})])
    assert(check_theory_morphism({"x": "h"}, identity_axiom, top_theory({"h", "p"})).ok)
    xy = SequentTheory({"x", "y"}, [Sequent({"x"}, {"y"})])
    result = check_theory_morphism({"x": "h", "y": "p"}, xy, top_theory({"h", "p"}))
    assert(len(result.defects) == 1)
    assert("x |- y" in result.defects[0])

def test_validate_theory():
    assert(validate_theory(HP).ok)
    assert(not validate_theory(SequentTheory({"h"}, [Sequent({"h"}, {"z"})])).ok)

def test_flat_closure():
    assert(flat_closure(CLF_A, FlatTheory(CLF_A.types, {"human"})).members == {"human", "philosopher"})
    assert(flat_closure(CLF_A, FlatTheory(CLF_A.types)).members == frozenset())
    assert(flat_entails(CLF_A, FlatTheory(CLF_A.types, {"car"}), "car"))
    with pytest.raises(LanguageMismatch):
        flat_closure(CLF_A, FlatTheory({"human"}))

def test_flat_closure_is_a_closure_operator():
    for size in range(len(CLF_A.types) + 1):
        for members in combinations(sorted(CLF_A.types), size):
            closed = flat_closure(CLF_A, FlatTheory(CLF_A.types, members)).members
            assert(set(members) <= closed)
            assert(flat_closure(CLF_A, FlatTheory(CLF_A.types, closed)).members == closed)


def test_closure_laws_exhaustively():
    types = {"a", "b", "c"}
    sequents = list(all_sequents(types))
    closures = {}
    for size in range(3):
        for axioms in combinations(sequents, size):
            closures[axioms] = closure_set(SequentTheory(types, axioms))
    for axioms, closed in closures.items():
        assert(set(axioms) <= closed)
        assert(closure_set(SequentTheory(types, closed)) == closed)
        for size in range(len(axioms)):
            for smaller in combinations(axioms, size):
                assert(closures[smaller] <= closed)

def test_empty_theory_closes_to_tautologies():
    for types in (set(), {"a"}, {"a", "b"}, {"a", "b", "c"}, {"a", "b", "c", "d"}):
        expected = {s for s in all_sequents(types) if s.is_tautology()}
        assert(closure_set(top_theory(types)) == expected)

def test_regular_theory_laws():
    t = SequentTheory({"a", "b", "c"}, [Sequent({"a"}, {"b"}), Sequent({"b"}, {"c"})])
    closed = closure_set(t)
    for x in t.types:
        assert(Sequent({x}, {x}) in closed)
    for s in closed:
        for extra in all_sequents(t.types, 1):
            assert(Sequent(s.antecedent | extra.antecedent, s.consequent | extra.consequent) in closed)
    assert(Sequent({"a"}, {"c"}) in closed)


@laws(200)
@given(theories(max_types=3, max_axioms=3).flatmap(lambda t: theories(types=t.types, max_axioms=3).map(lambda u: (t, u))))
def test_leq_is_closure_containment(pair):
    t1, t2 = pair
    assert(theory_leq(t1, t2) == (closure_set(t1) >= closure_set(t2)))

@laws(200)
@given(theories(max_types=4, max_axioms=4))
def test_closure_laws_at_four_types(t):
    closed = close(t)
    assert(set(t.axioms) <= set(closed.axioms))
    assert(close(closed).axioms == closed.axioms)
    assert(theory_equivalent(t, closed))

import random

from hypothesis import given

from infoflow.Entailment import entailed_masks, entails, entails_by_enumeration, satisfiable, submasks
from infoflow.Sequent import Sequent, TypeIndex, all_sequents
from tests.strategies import laws, sequents, theories

POOL = tuple("abcdefghij")


def test_satisfiable():
    assert(satisfiable([]))
    assert(not satisfiable([frozenset()]))
    assert(satisfiable([{1, 2}, {-1}]))
    assert(not satisfiable([{1}, {-1, 2}, {-2}]))
    assert(not satisfiable([{1, 2}, {1, -2}, {-1, 2}, {-1, -2}]))

def test_entails():
    index = TypeIndex({"h", "p"})
    axioms = [Sequent({"h"}, {"p"})]
    assert(entails(axioms, Sequent({"h"}, {"p"}), index))
    assert(not entails(axioms, Sequent({"p"}, {"h"}), index))
    assert(entails(axioms, Sequent({"h"}, {"h"}), index))
    assert(not entails([], Sequent(), index))

def test_submasks():
    assert(sorted(submasks(0b101)) == [0, 1, 4, 5])
    assert(list(submasks(0)) == [0])

def test_entailed_masks_of_no_models():
    assert(len(entailed_masks([], 2)) == 16)

def test_entailed_masks_match_enumeration():
    index = TypeIndex({"a", "b", "c"})
    axioms = [Sequent({"a"}, {"b"}), Sequent({"b", "c"}, ())]
    models = [index.encode(s) for s in (set(), {"b"}, {"c"}, {"a", "b"})]
    found = {index.decode_sequent(a, c) for a, c in entailed_masks(models, 3)}
    expected = {s for s in all_sequents(index.types) if entails_by_enumeration(axioms, s, index)}
    assert(found == expected)


def test_engine_agrees_with_enumeration():
    rng = random.Random(20240)
    mismatches = 0
    for _ in range(500):
        types = rng.sample(POOL, rng.randint(0, 10))
        index = TypeIndex(types)

        def pick():
            return {t for t in types if rng.random() < 0.25}

        axioms = [Sequent(pick(), pick()) for _ in range(rng.randint(0, 6))]
        query = Sequent(pick(), pick())
        if entails(axioms, query, index) != entails_by_enumeration(axioms, query, index):
            mismatches += 1
    assert(mismatches == 0)

@laws(200)
@given(theories(max_types=5, max_axioms=5).flatmap(lambda t: sequents(t.types).map(lambda s: (t, s))))
def test_engine_agrees_with_enumeration_on_generated_theories(pair):
    t, s = pair
    assert(t.entails(s) == entails_by_enumeration(t.axioms, s, t.index))

import pytest

from infoflow.Sequent import Sequent, State, TypeIndex, all_sequents, canonical, parse_sequent, state_satisfies
from infoflow.common import BundleError, LanguageMismatch


def test_parse_sequent():
    assert(parse_sequent("philosopher |- human") == Sequent({"philosopher"}, {"human"}))
    assert(parse_sequent("a, b |- c") == Sequent({"a", "b"}, {"c"}))
    assert(parse_sequent("|-") == Sequent())
    assert(parse_sequent(" |- x") == Sequent((), {"x"}))

def test_parse_sequent_errors():
    for bad in ("a b", "a |- b |- c", "a, , b |- c"):
        with pytest.raises(BundleError):
            parse_sequent(bad)

def test_str():
    assert(str(Sequent({"b", "a"}, {"c"})) == "a, b |- c")
    assert(str(Sequent()) == "|-")

def test_state_satisfies():
    s = Sequent({"human"}, {"mortal"})
    assert(state_satisfies(s, State({"human", "mortal"})))
    assert(state_satisfies(s, State()))
    assert(not state_satisfies(s, State({"human"})))
    assert(not state_satisfies(Sequent(), State({"human"})))
    with pytest.raises(LanguageMismatch):
        state_satisfies(s, State({"human"}), types={"human"})

def test_canonical():
    a = Sequent({"b"}, {"a"})
    b = Sequent((), {"z"})
    c = Sequent({"a"}, {"c"})
    assert(canonical([a, b, c, a]) == (b, c, a))

def test_all_sequents():
    assert(len(list(all_sequents({"a", "b"}))) == 16)
    assert(len(list(all_sequents({"a", "b", "c"}, 1))) == 16)
    assert(next(iter(all_sequents({"a"}))) == Sequent())

def test_type_index():
    index = TypeIndex({"b", "a", "c"})
    assert(index.encode({"a", "c"}) == 0b101)
    assert(index.decode(0b110) == {"b", "c"})
    assert(index.full == 0b111)
    s = Sequent({"a"}, {"b", "c"})
    assert(index.decode_sequent(*index.encode_sequent(s)) == s)

import json

import pytest

from infoflow.Sequent import Sequent
from infoflow.bundle_support import (
    build_bundle,
    fill_placeholders,
    load_document,
    parse_bundle,
    serialize_bundle,
    validate_bundle,
)
from infoflow.common import BundleError, BundleInvalid
from tests.samples import CLF_A, O2, bundle_text

CLF_A_BUNDLE = """
{"classifications": {"CLF-A": {
    "instances": ["aristotle", "civic87"],
    "types": ["human", "philosopher", "car"],
    "incidence": [["aristotle", "human"], ["aristotle", "philosopher"], ["civic87", "car"]]}}}
"""


def test_parse_clf_a():
    bundle = parse_bundle(CLF_A_BUNDLE)
    assert(len(bundle.classifications) == 1)
    assert(bundle.classifications["CLF-A"] == CLF_A)

def test_parse_fixture():
    bundle = parse_bundle(bundle_text())
    assert(sorted(bundle.systems) == ["clash", "vee", "vee-pop"])
    assert(bundle.theories["O2"] == O2)
    assert(bundle.systems["vee-pop"].is_populated())
    assert(not bundle.systems["vee"].is_populated())
    assert(bundle.system_refs["vee"]["M"] == {"theory": "M", "classification": None})

def test_round_trip():
    bundle = parse_bundle(bundle_text())
    text = serialize_bundle(bundle)
    again = parse_bundle(text)
    assert(again == bundle)
    assert(serialize_bundle(again) == text)

def test_empty_document():
    assert(validate_bundle(build_bundle(load_document(""))).ok)
    assert(validate_bundle(build_bundle(load_document("{}"))).ok)

def test_axioms_use_the_array_form():
    bundle = parse_bundle('{"theories": {"T": {"types": ["philosopher", "human"], '
                          '"axioms": [{"ant": ["philosopher"], "con": ["human"]}]}}}')
    assert(bundle.theories["T"].axioms == (Sequent({"philosopher"}, {"human"}),))
    with pytest.raises(BundleError) as error:
        parse_bundle('{"theories": {"T": {"types": ["philosopher", "human"], "axioms": ["philosopher |- human"]}}}')
    assert(error.value.token == "philosopher |- human")

def test_dangling_reference():
    text = json.dumps({
        "classifications": {"A": {"instances": [], "types": []}},
        "infomorphisms": {"f": {"source": "A", "target": "ghost", "type_map": {}, "instance_map": {}}},
    })
    with pytest.raises(BundleError) as error:
        parse_bundle(text)
    assert("ghost" in str(error.value))

def test_syntax_error_position():
    with pytest.raises(BundleError) as error:
        load_document('{"classifications": {\n  "A": [}\n}')
    assert(error.value.line == 2)
    assert(error.value.column is not None)

def test_unknown_section():
    with pytest.raises(BundleError):
        load_document('{"ontologies": {}}')

def test_validation_defects():
    text = json.dumps({
        "classifications": {"A": {"instances": ["a", "a"], "types": ["t"], "incidence": [["a", "robot"]]}},
    })
    with pytest.raises(BundleInvalid) as error:
        parse_bundle(text)
    assert(len(error.value.defects) == 2)
    assert("duplicate identifier a" in error.value.defects[0])

def test_invalid_infomorphism_is_a_defect():
    text = json.dumps({
        "classifications": {
            "A": {"instances": ["a"], "types": ["t"], "incidence": [["a", "t"]]},
            "B": {"instances": ["b"], "types": ["u"], "incidence": []},
        },
        "infomorphisms": {"f": {"source": "A", "target": "B", "type_map": {"t": "u"}, "instance_map": {"b": "a"}}},
    })
    result = validate_bundle(build_bundle(load_document(text)))
    assert(result.defects == ("f: invariance fails at (b, t, source)",))

def test_fill_placeholders():
    text = 'NAME: CLF-B\n---\n{"classifications": {"{{ NAME }}": {"instances": [], "types": []}}}'
    assert(fill_placeholders(text).strip() == '{"classifications": {"CLF-B": {"instances": [], "types": []}}}')
    assert(list(parse_bundle(text).classifications) == ["CLF-B"])
    assert(fill_placeholders(CLF_A_BUNDLE) == CLF_A_BUNDLE)
    with pytest.raises(BundleError):
        fill_placeholders("NAME: x\n---\n{{ MISSING }}")

def test_preamble_errors():
    with pytest.raises(BundleError) as error:
        fill_placeholders('- a\n- b\n---\n{"classifications": {}}')
    assert("preamble" in str(error.value))
    with pytest.raises(BundleError) as error:
        fill_placeholders('A: [\n---\n{"classifications": {}}')
    assert(str(error.value).startswith("placeholder preamble:"))
    assert(error.value.line is not None)

def test_duplicate_keys():
    text = '{"classifications": {"A": {"instances": [], "types": []},\n  "A": {"instances": ["a"], "types": []}}}'
    with pytest.raises(BundleError) as error:
        load_document(text)
    assert("duplicate key A" in str(error.value))
    assert(error.value.line == 2)
    repeated_map = json.dumps({"classifications": {}}).replace("{}", '{"B": {"instances": [], "types": [], "instances": ["b"]}}')
    with pytest.raises(BundleError):
        load_document(repeated_map)

def test_classification_named_null():
    text = json.dumps({
        "classifications": {"null": {"instances": ["a"], "types": ["t"], "incidence": [["a", "t"]]}},
        "theories": {"T": {"types": ["t"], "axioms": []}},
        "systems": {
            "S": {"nodes": {"N": {"theory": "T", "classification": "null"}}, "edges": []},
            "U": {"nodes": {"N": {"theory": "T", "classification": None}}, "edges": []},
        },
    })
    bundle = parse_bundle(text)
    assert(bundle.systems["S"].node_cls["N"].name == "null")
    assert(bundle.systems["U"].node_cls == {})

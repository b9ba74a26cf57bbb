"""Bundle document support functions"""

from dataclasses import dataclass, field
import json
import logging
import re

import jinja2
import yaml

from infoflow.Classification import (
    Classification,
    Infomorphism,
    check_infomorphism,
    check_map_defects,
    validate_classification,
)
from infoflow.Diagram import Edge, ShapeGraph
from infoflow.Integration import InformationSystem, validate_system
from infoflow.Sequent import Sequent
from infoflow.Theory import SequentTheory, validate_theory
from infoflow.common import BundleError, BundleInvalid, ValidationResult, validation

logger = logging.getLogger(__name__)

environment = jinja2.Environment(undefined=jinja2.StrictUndefined)

SECTIONS = ('classifications', 'theories', 'infomorphisms', 'systems')


@dataclass(eq=False)
class Bundle:
    classifications: dict = field(default_factory=dict)
    theories: dict = field(default_factory=dict)
    infomorphisms: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    system_refs: dict = field(default_factory=dict)
    load_defects: list = field(default_factory=list)

    def __eq__(self, other) -> bool:
        return isinstance(other, Bundle) and bundle_to_dict(self) == bundle_to_dict(other)


class BundleLoader(yaml.BaseLoader):
    """BaseLoader that refuses repeated mapping keys."""

    def construct_mapping(self, node, deep=False):
        if isinstance(node, yaml.MappingNode):
            seen = set()
            for key_node, _ in node.value:
                if not isinstance(key_node, yaml.ScalarNode):
                    continue
                if key_node.value in seen:
                    raise yaml.constructor.ConstructorError(
                        "while constructing a mapping", node.start_mark,
                        f"duplicate key {key_node.value}", key_node.start_mark,
                    )
                seen.add(key_node.value)
        return super().construct_mapping(node, deep=deep)


# only plain scalars resolve to null; a quoted "null" stays an identifier
BundleLoader.add_implicit_resolver('tag:yaml.org,2002:null', re.compile(r"^(?:~|null|Null|NULL|)$"), list('~nN') + [''])
BundleLoader.add_constructor('tag:yaml.org,2002:null', lambda loader, node: None)


def load_yaml(text: str, where: str = "syntax error"):
    try:
        return yaml.load(text, Loader=BundleLoader)
    except yaml.MarkedYAMLError as error:
        mark = error.problem_mark
        token = None
        if mark is not None:
            lines = text.splitlines()
            if mark.line < len(lines):
                rest = lines[mark.line][mark.column:].split()
                token = rest[0] if rest else None
        raise BundleError(
            f"{where}: {error.problem}",
            None if mark is None else mark.line + 1,
            None if mark is None else mark.column + 1,
            token,
        )

def fill_placeholders(text: str) -> str:
    if '\n---' not in text and not text.startswith('---'):
        return text
    render_content, template_content = text.split('---', 1)
    variables = load_yaml(render_content, "placeholder preamble") or {}
    if not isinstance(variables, dict):
        raise BundleError("placeholder preamble must be a mapping of names to values")
    try:
        return environment.from_string(template_content).render(**variables)
    except jinja2.TemplateError as error:
        raise BundleError(f"placeholder error: {error}", getattr(error, 'lineno', None))

def load_document(text: str) -> dict:
    document = load_yaml(text)
    if document is None:
        document = {}
    if not isinstance(document, dict):
        raise BundleError("a bundle must be a mapping with sections " + ", ".join(SECTIONS))
    unknown = set(document) - set(SECTIONS)
    if unknown:
        raise BundleError(f"unknown section(s): {', '.join(sorted(unknown))}")
    return document


def _expect(value, kind, where: str):
    if not isinstance(value, kind):
        raise BundleError(f"{where}: expected a {'mapping' if kind is dict else 'list'}")
    return value

def _section(document: dict, name: str) -> dict:
    value = document.get(name)
    if value is None:
        return {}
    return _expect(value, dict, name)

def _identifiers(values, where: str, defects: list) -> list:
    values = _expect(values, list, where)
    for value in values:
        if not isinstance(value, str):
            raise BundleError(f"{where}: expected identifiers", token=str(value))
    seen = set()
    for value in values:
        if value in seen:
            defects.append(f"{where}: duplicate identifier {value}")
        seen.add(value)
    return values

def _mapping(value, where: str) -> dict:
    value = _expect(value, dict, where)
    for key, image in value.items():
        if not isinstance(image, str):
            raise BundleError(f"{where}: image of {key} must be an identifier")
    return dict(value)

def _reference(table: dict, name, kind: str, where: str):
    if not isinstance(name, str) or name not in table:
        raise BundleError(f"{where}: dangling reference to {kind} {name!r}", token=str(name))
    return table[name]

def translate_classification(name: str, data: dict, defects: list) -> Classification:
    data = _expect(data, dict, f"classification {name}")
    incidence = []
    for pair in _expect(data.get('incidence', []), list, f"classification {name} incidence"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise BundleError(f"classification {name}: incidence entries are [instance, type] pairs", token=str(pair))
        incidence.append(tuple(pair))
    return Classification(
        name,
        _identifiers(data.get('instances', []), f"classification {name} instances", defects),
        _identifiers(data.get('types', []), f"classification {name} types", defects),
        incidence,
    )

def translate_axiom(data, where: str) -> Sequent:
    if isinstance(data, str):
        raise BundleError(f"{where}: sequent literals are not accepted in bundles; use {{\"ant\": [...], \"con\": [...]}}", token=data)
    data = _expect(data, dict, where)
    return Sequent(
        _identifiers(data.get('ant', []), f"{where} ant", []),
        _identifiers(data.get('con', []), f"{where} con", []),
    )

def translate_theory(name: str, data: dict, defects: list) -> SequentTheory:
    data = _expect(data, dict, f"theory {name}")
    axioms = _expect(data.get('axioms', []), list, f"theory {name} axioms")
    return SequentTheory(
        _identifiers(data.get('types', []), f"theory {name} types", defects),
        [translate_axiom(axiom, f"theory {name} axiom {n}") for n, axiom in enumerate(axioms)],
    )

def translate_infomorphism(name: str, data: dict, classifications: dict) -> Infomorphism:
    where = f"infomorphism {name}"
    data = _expect(data, dict, where)
    return Infomorphism(
        name,
        _reference(classifications, data.get('source'), 'classification', where),
        _reference(classifications, data.get('target'), 'classification', where),
        _mapping(data.get('type_map', {}), f"{where} type_map"),
        _mapping(data.get('instance_map', {}), f"{where} instance_map"),
    )

def translate_system(name: str, data: dict, theories: dict, classifications: dict) -> tuple:
    where = f"system {name}"
    data = _expect(data, dict, where)
    refs = {}
    node_theory = {}
    node_cls = {}
    for node, node_data in _expect(data.get('nodes', {}), dict, f"{where} nodes").items():
        node_data = _expect(node_data, dict, f"{where} node {node}")
        theory_name = node_data.get('theory')
        cls_name = node_data.get('classification')
        node_theory[node] = _reference(theories, theory_name, 'theory', f"{where} node {node}")
        if cls_name is not None:
            node_cls[node] = _reference(classifications, cls_name, 'classification', f"{where} node {node}")
        refs[node] = {'theory': theory_name, 'classification': cls_name}
    edges = []
    edge_map = {}
    edge_instance_map = {}
    for n, edge_data in enumerate(_expect(data.get('edges', []), list, f"{where} edges")):
        edge_where = f"{where} edge {n}"
        edge_data = _expect(edge_data, dict, edge_where)
        for key in ('id', 'src', 'dst'):
            if not isinstance(edge_data.get(key), str):
                raise BundleError(f"{edge_where}: missing {key}")
        for key in ('src', 'dst'):
            _reference(node_theory, edge_data[key], 'node', edge_where)
        edge_id = edge_data['id']
        edges.append(Edge(edge_id, edge_data['src'], edge_data['dst']))
        edge_map[edge_id] = _mapping(edge_data.get('type_map', {}), f"{edge_where} type_map")
        instance_map = edge_data.get('instance_map')
        if instance_map is not None:
            edge_instance_map[edge_id] = _mapping(instance_map, f"{edge_where} instance_map")
    system = InformationSystem(
        ShapeGraph(node_theory.keys(), edges),
        node_theory,
        edge_map,
        node_cls,
        edge_instance_map,
    )
    return system, refs

def build_bundle(document: dict) -> Bundle:
    bundle = Bundle()
    for name, data in _section(document, 'classifications').items():
        bundle.classifications[name] = translate_classification(name, data, bundle.load_defects)
    for name, data in _section(document, 'theories').items():
        bundle.theories[name] = translate_theory(name, data, bundle.load_defects)
    for name, data in _section(document, 'infomorphisms').items():
        bundle.infomorphisms[name] = translate_infomorphism(name, data, bundle.classifications)
    for name, data in _section(document, 'systems').items():
        system, refs = translate_system(name, data, bundle.theories, bundle.classifications)
        bundle.systems[name] = system
        bundle.system_refs[name] = refs
    logger.debug(
        "Loaded bundle: %d classifications, %d theories, %d infomorphisms, %d systems",
        len(bundle.classifications), len(bundle.theories), len(bundle.infomorphisms), len(bundle.systems),
    )
    return bundle

def validate_bundle(bundle: Bundle) -> ValidationResult:
    defects = list(bundle.load_defects)
    for c in bundle.classifications.values():
        defects.extend(validate_classification(c).defects)
    for name, theory in sorted(bundle.theories.items()):
        defects.extend(validate_theory(theory, f"theory {name}").defects)
    for name, f in sorted(bundle.infomorphisms.items()):
        map_defects = check_map_defects(f)
        defects.extend(map_defects or check_infomorphism(f).defects)
    for name, system in sorted(bundle.systems.items()):
        defects.extend(f"system {name}: {defect}" for defect in validate_system(system).defects)
    return validation(defects)

def parse_bundle(text: str) -> Bundle:
    bundle = build_bundle(load_document(fill_placeholders(text)))
    result = validate_bundle(bundle)
    if not result.ok:
        raise BundleInvalid(list(result.defects))
    return bundle


def system_to_dict(system: InformationSystem, refs: dict) -> dict:
    return {
        'nodes': {node: dict(refs[node]) for node in sorted(refs)},
        'edges': [
            {
                'id': edge.id,
                'src': edge.source,
                'dst': edge.target,
                'type_map': dict(sorted(system.edge_map[edge.id].items())),
                'instance_map': (
                    dict(sorted(system.edge_instance_map[edge.id].items()))
                    if edge.id in system.edge_instance_map else None
                ),
            }
            for edge in system.shape.edges
        ],
    }

def bundle_to_dict(bundle: Bundle) -> dict:
    return {
        'classifications': {name: c.to_dict() for name, c in sorted(bundle.classifications.items())},
        'theories': {name: t.to_dict() for name, t in sorted(bundle.theories.items())},
        'infomorphisms': {name: f.to_dict() for name, f in sorted(bundle.infomorphisms.items())},
        'systems': {
            name: system_to_dict(system, bundle.system_refs[name])
            for name, system in sorted(bundle.systems.items())
        },
    }

def serialize_bundle(bundle: Bundle) -> str:
    return json.dumps(bundle_to_dict(bundle), sort_keys=True, indent=2) + "\n"

""" execution """

import argparse
import json
import logging
from pathlib import Path
import random
import sys

from infoflow.Concept import lattice, lattice_to_dict, to_dot
from infoflow.Diagram import sum_classification, verify_channel_covers
from infoflow.Entailment import entails_by_enumeration
from infoflow.Integration import (
    conflicting_pairs,
    cosmology,
    integrate,
    is_monocosmic,
    is_pointwise_consistent,
)
from infoflow.Sequent import Sequent, parse_sequent
from infoflow.Theory import close
from infoflow.bundle_support import Bundle, build_bundle, fill_placeholders, load_document, parse_bundle, validate_bundle
from infoflow.common import (
    DEFAULT_CLOSURE_CAP,
    DEFAULT_DELTA_BOUND,
    DEFAULT_INSTANCE_CAP,
    BundleError,
    BundleInvalid,
    CapExceeded,
    InfoFlowError,
    LanguageMismatch,
    validation,
)

logger = logging.getLogger(__name__)

OK = 0
DEFECTS = 1
USAGE = 2
SELF_CHECK_LIMIT = 12
SELF_CHECK_SAMPLES = 20


class UsageError(Exception):
    pass


def report_text(report: dict) -> str:
    return json.dumps(report, sort_keys=True) + "\n"

def read_bundle_text(path: Path) -> str:
    if not path.exists():
        raise UsageError(f"{path} does not exist!")
    try:
        return path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as error:
        raise BundleError(f"bundle is not valid UTF-8: {error.reason} at byte {error.start}")

def lookup(table: dict, name: str, kind: str):
    if name not in table:
        raise UsageError(f"no {kind} named {name!r} in the bundle")
    return table[name]


def self_check(bundle: Bundle, seed: int) -> list:
    """Cross-check the entailment engine against state enumeration on random sequents."""
    rng = random.Random(seed)
    defects = []
    for name, theory in sorted(bundle.theories.items()):
        if len(theory.types) > SELF_CHECK_LIMIT:
            continue
        types = sorted(theory.types)
        for _ in range(SELF_CHECK_SAMPLES):
            query = Sequent(
                {t for t in types if rng.random() < 0.3},
                {t for t in types if rng.random() < 0.3},
            )
            if theory.entails(query) != entails_by_enumeration(theory.axioms, query, theory.index):
                defects.append(f"theory {name}: engine and enumeration disagree on {query}")
    return defects

def command_validate(arguments, text: str) -> tuple:
    try:
        bundle = build_bundle(load_document(fill_placeholders(text)))
    except BundleError as error:
        return DEFECTS, report_text({'ok': False, 'defects': [str(error)]})
    result = validate_bundle(bundle)
    if result.ok and arguments.seed is not None:
        result = validation(self_check(bundle, arguments.seed))
    return (OK if result.ok else DEFECTS), report_text(result.to_dict())

def command_close(arguments, bundle: Bundle) -> tuple:
    closed = close(lookup(bundle.theories, arguments.theory, 'theory'), arguments.cap, show_progress=arguments.progress)
    return OK, report_text({'theory': arguments.theory, **closed.to_dict()})

def command_entails(arguments, bundle: Bundle) -> tuple:
    theory = lookup(bundle.theories, arguments.theory, 'theory')
    query = parse_sequent(arguments.sequent)
    return OK, report_text({
        'theory': arguments.theory,
        'sequent': query.to_dict(),
        'entails': theory.entails(query),
    })

def command_lattice(arguments, bundle: Bundle) -> tuple:
    concept_lattice = lattice(lookup(bundle.classifications, arguments.classification, 'classification'))
    if arguments.format == 'dot':
        return OK, to_dot(concept_lattice) + "\n"
    return OK, report_text(lattice_to_dict(concept_lattice))

def command_sum(arguments, bundle: Bundle) -> tuple:
    system = lookup(bundle.systems, arguments.system, 'system')
    if not system.is_populated():
        return DEFECTS, report_text({
            'ok': False,
            'defects': [f"system {arguments.system} needs a classification on every node and an instance map on every edge"],
        })
    diagram = system.cls_diagram()
    channel = sum_classification(diagram, arguments.instance_cap)
    return OK, report_text({
        'core': channel.core.to_dict(),
        'legs': {node: leg.to_dict() for node, leg in sorted(channel.legs.items())},
        'covers': verify_channel_covers(channel, diagram).ok,
    })

def command_integrate(arguments, bundle: Bundle) -> tuple:
    system = lookup(bundle.systems, arguments.system, 'system')
    result = integrate(
        system,
        cap=arguments.cap,
        delta_bound=arguments.delta_bound,
        instance_cap=arguments.instance_cap,
        show_progress=arguments.progress,
    )
    return OK, report_text(result.to_dict())

def command_consistency(arguments, bundle: Bundle) -> tuple:
    system = lookup(bundle.systems, arguments.system, 'system')
    report = {
        'pointwise': is_pointwise_consistent(system),
        'monocosmic': is_monocosmic(system),
        'verdict': cosmology(system),
    }
    if arguments.conflicts:
        report['conflicts'] = [list(pair) for pair in conflicting_pairs(system)]
    return OK, report_text(report)

COMMANDS = {
    'close': command_close,
    'entails': command_entails,
    'lattice': command_lattice,
    'sum': command_sum,
    'integrate': command_integrate,
    'consistency': command_consistency,
}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("bundle_path", help="Path to the bundle document", type=Path)
    shared.add_argument("--output", help="Write the report here instead of standard output", type=Path)
    shared.add_argument("--seed", help="Seed for randomized self-checks", type=int)
    shared.add_argument("--verbose", help="Log every phase", action="store_true")
    shared.add_argument("--progress", help="Show a progress bar (needs tqdm)", action="store_true")

    parser = argparse.ArgumentParser(
        prog='ifk',
        description='Classifications, sequent theories, information flow and semantic integration',
    )
    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('validate', parents=[shared], help="Check every object in a bundle")
    close_parser = commands.add_parser('close', parents=[shared], help="Materialize the closure of a theory")
    close_parser.add_argument("--theory", required=True)
    close_parser.add_argument("--cap", type=int, default=DEFAULT_CLOSURE_CAP)
    entails_parser = commands.add_parser('entails', parents=[shared], help="Decide one sequent")
    entails_parser.add_argument("--theory", required=True)
    entails_parser.add_argument("--sequent", required=True, help="e.g. 'philosopher |- human'")
    lattice_parser = commands.add_parser('lattice', parents=[shared], help="Concept lattice of a classification")
    lattice_parser.add_argument("--classification", required=True)
    lattice_parser.add_argument("--format", choices=['dot', 'json'], default='json')
    sum_parser = commands.add_parser('sum', parents=[shared], help="Sum channel of a populated system")
    sum_parser.add_argument("--system", required=True)
    sum_parser.add_argument("--instance-cap", type=int, default=DEFAULT_INSTANCE_CAP)
    integrate_parser = commands.add_parser('integrate', parents=[shared], help="Alignment closure of a system")
    integrate_parser.add_argument("--system", required=True)
    integrate_parser.add_argument("--delta-bound", type=int, default=DEFAULT_DELTA_BOUND)
    integrate_parser.add_argument("--cap", type=int, default=DEFAULT_CLOSURE_CAP)
    integrate_parser.add_argument("--instance-cap", type=int, default=DEFAULT_INSTANCE_CAP)
    consistency_parser = commands.add_parser('consistency', parents=[shared], help="Monocosmic/polycosmic verdict")
    consistency_parser.add_argument("--system", required=True)
    consistency_parser.add_argument("--conflicts", action="store_true", help="List jointly inconsistent node pairs")
    return parser

def execute(arguments) -> tuple:
    try:
        text = read_bundle_text(arguments.bundle_path)
        if arguments.command == 'validate':
            return command_validate(arguments, text)
        bundle = parse_bundle(text)
        return COMMANDS[arguments.command](arguments, bundle)
    except UsageError as error:
        logger.error(str(error))
        return USAGE, ""
    except BundleInvalid as error:
        return DEFECTS, report_text({'ok': False, 'defects': error.defects})
    except CapExceeded as error:
        logger.error(str(error))
        return DEFECTS, report_text(error.to_dict())
    except (BundleError, LanguageMismatch) as error:
        if arguments.command == 'entails':
            logger.error(str(error))
            return USAGE, ""
        return DEFECTS, report_text({'ok': False, 'defects': [str(error)]})
    except InfoFlowError as error:
        return DEFECTS, report_text({'ok': False, 'defects': [str(error)]})

def run(argv: list, stdout=None) -> int:
    """Execute one command line, write its report, and return the exit status."""
    try:
        arguments = build_parser().parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else USAGE
    if arguments.verbose:
        logging.getLogger('infoflow').setLevel(logging.DEBUG)
    status, text = execute(arguments)
    if text:
        if arguments.output is not None:
            arguments.output.write_text(text)
        else:
            (stdout or sys.stdout).write(text)
    return status

def main(argv: list = None) -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run(sys.argv[1:] if argv is None else argv))

if __name__ == "__main__":
    main()

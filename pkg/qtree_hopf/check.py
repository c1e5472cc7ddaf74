# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import argparse
import json
from dataclasses import dataclass

from tabulate import tabulate

from .algebra import BasisMonomial, Sector, associativity_probe
from .hopf import (ResidualReport, coassociativity_residual, counit_residuals, lemma1_residual,
                   left_antipode_residual, q_minus1_probe, right_antipode_residual, right_defect_closed_form)
from .trees import forests_up_to, trees_up_to

GREEN_FORMATTING = ""
RED_FORMATTING = ""
NO_FORMATTING = ""

LEMMA1_SUITE = 'lemma1'
COASSOC_SUITE = 'coassoc'
COUNIT_SUITE = 'counit'
LEFT_ANTIPODE_SUITE = 'left-antipode'
DEFECT_CROSSCHECK_SUITE = 'defect-crosscheck'
SUITES = [LEMMA1_SUITE, COASSOC_SUITE, COUNIT_SUITE, LEFT_ANTIPODE_SUITE, DEFECT_CROSSCHECK_SUITE]

ASSOC_PROBE = 'assoc'
QMINUS1_PROBE = 'qminus1'
PROBES = [ASSOC_PROBE, QMINUS1_PROBE]

# Hat trees in the coassociativity suite stop here whatever --vmax says
HAT_COASSOC_VMAX = 4

@dataclass
class SuiteEntry:
    report: ResidualReport
    # Only asserted subjects can fail the suite, the rest are reported for information
    asserted: bool

def _tree_monomial(tree, sector: Sector = Sector.PLAIN) -> BasisMonomial:
    return BasisMonomial(sector, (tree,))

def _suite_trees(v_max: int, ladders_only: bool = False) -> list:
    return [tree for tree in trees_up_to(v_max) if tree.is_ladder or not ladders_only]

def lemma1_suite(v_max: int, ladders_only: bool = False) -> list[SuiteEntry]:
    trees = _suite_trees(v_max, ladders_only)
    return [SuiteEntry(lemma1_residual(t1, t2), (t1.is_ladder and t2.is_ladder) or t1 == t2)
            for t1 in trees for t2 in trees]

def coassoc_suite(v_max: int, ladders_only: bool = False) -> list[SuiteEntry]:
    entries = [SuiteEntry(coassociativity_residual(_tree_monomial(tree)), tree.is_ladder)
               for tree in _suite_trees(v_max, ladders_only)]
    entries += [SuiteEntry(coassociativity_residual(_tree_monomial(tree, Sector.HAT)), tree.is_ladder)
                for tree in _suite_trees(min(v_max, HAT_COASSOC_VMAX), ladders_only)]
    return entries

def counit_monomials(v_max: int) -> list[BasisMonomial]:
    found = {}
    for sector in Sector:
        for forest in forests_up_to(v_max):
            for e_power in (-1, 0, 1):
                # The empty word collapses to the plain unit, keep it once
                monomial = BasisMonomial(sector, forest.trees, e_power)
                found.setdefault(monomial, None)
    return list(found)

def counit_suite(v_max: int) -> list[SuiteEntry]:
    return [SuiteEntry(report, True) for m in counit_monomials(v_max) for report in counit_residuals(m)]

def left_antipode_suite(v_max: int, twist: bool = True) -> list[SuiteEntry]:
    entries = [SuiteEntry(left_antipode_residual(_tree_monomial(tree), twist), True)
               for tree in trees_up_to(v_max)]
    entries.append(SuiteEntry(left_antipode_residual(BasisMonomial(Sector.PLAIN, (), 1), twist), False))
    return entries

def defect_crosscheck_suite(v_max: int) -> list[SuiteEntry]:
    entries = []
    for tree in trees_up_to(v_max):
        m = _tree_monomial(tree)
        direct = right_antipode_residual(m).residual
        entries.append(SuiteEntry(ResidualReport(m, direct - right_defect_closed_form(tree)), True))
    return entries

def run_suite(args: argparse.Namespace) -> list[SuiteEntry]:
    suite = args.suite
    if suite == LEMMA1_SUITE:
        return lemma1_suite(args.vmax, args.ladders_only)
    elif suite == COASSOC_SUITE:
        return coassoc_suite(args.vmax, args.ladders_only)
    elif suite == COUNIT_SUITE:
        return counit_suite(args.vmax)
    elif suite == LEFT_ANTIPODE_SUITE:
        return left_antipode_suite(args.vmax, twist=not args.no_twist)
    elif suite == DEFECT_CROSSCHECK_SUITE:
        return defect_crosscheck_suite(args.vmax)
    raise ValueError(f'Unknown suite: {suite}')

def prepare_check_args(parser: argparse.ArgumentParser):
    parser.add_argument('suite', choices=SUITES,
                        help='Identity suite to run')
    parser.add_argument('--vmax', type=int, default=4,
                        help='Largest number of vertices of the trees in the suite')
    parser.add_argument('--ladders-only', action='store_true', default=False,
                        help='Restrict lemma1 and coassoc to ladder trees')
    parser.add_argument('--no-twist', action='store_true', default=False,
                        help='Use the coefficient-preserving hat map in left-antipode')
    parser.add_argument('--colour', '--color', action='store_true',
                        help='Use colours in report')

def prepare_probe_args(parser: argparse.ArgumentParser):
    parser.add_argument('probe', choices=PROBES,
                        help='Probe to run')
    parser.add_argument('--vmax', type=int, default=3,
                        help='Largest number of vertices of the sampled trees (at most 4)')
    parser.add_argument('--samples', type=int, default=500,
                        help='Number of random triples for the associativity probe')
    parser.add_argument('--seed', type=int, default=0,
                        help='Random seed for the associativity probe')
    parser.add_argument('--colour', '--color', action='store_true',
                        help='Use colours in report')

def setup_colour(enabled: bool):
    global GREEN_FORMATTING
    global NO_FORMATTING
    global RED_FORMATTING

    if not enabled:
        GREEN_FORMATTING = RED_FORMATTING = NO_FORMATTING = ""
        return

    from colorama import init, Fore, Style

    # `strip=False` keeps the colours when the output is piped
    init(strip=False)
    GREEN_FORMATTING = Fore.GREEN
    NO_FORMATTING = Style.RESET_ALL
    RED_FORMATTING = Fore.RED

def format_flag(value: bool, failing: bool = True) -> str:
    if value:
        return f'{GREEN_FORMATTING}yes{NO_FORMATTING}'
    if failing:
        return f'{RED_FORMATTING}no{NO_FORMATTING}'
    return 'no'

def check(args: argparse.Namespace) -> int:
    if args.vmax < 1:
        raise ValueError(f'--vmax must be at least 1, got {args.vmax}')
    setup_colour(args.colour)
    entries = run_suite(args)
    failed = [entry for entry in entries if entry.asserted and not entry.report.vanished]

    if args.json:
        print(json.dumps([{
            'subject': entry.report.label,
            'residual': str(entry.report.residual),
            'vanished': entry.report.vanished,
            'asserted': entry.asserted,
        } for entry in entries]))
    else:
        data = [[entry.report.label, str(entry.report.residual),
                 format_flag(entry.report.vanished, failing=entry.asserted),
                 'yes' if entry.asserted else 'no'] for entry in entries]
        print(tabulate(data, headers=['Subject', 'Residual', 'Vanished', 'Asserted'], tablefmt='rounded_grid'))

        asserted = sum(1 for entry in entries if entry.asserted)
        print(f'{args.suite}: {asserted - len(failed)}/{asserted} asserted subjects vanished')
        informational = sum(1 for entry in entries if not entry.asserted and not entry.report.vanished)
        if informational:
            print(f'{args.suite}: {informational} unasserted subjects leave a nonzero residual')

    return 1 if failed else 0

def _assoc_probe_output(args: argparse.Namespace):
    report = associativity_probe(args.vmax, args.samples, args.seed)
    if args.json:
        print(json.dumps({
            'samples': report.samples,
            'associative': report.associative,
            'mismatched': report.mismatched,
            'discrepancies': {
                pattern: {str(exponent): count for exponent, count in sorted(counter.items())}
                for pattern, counter in sorted(report.discrepancies.items())
            },
        }))
        return

    data = [[pattern, f'q^{exponent}', count]
            for pattern, counter in sorted(report.discrepancies.items())
            for exponent, count in sorted(counter.items())]
    print(tabulate(data, headers=['Sectors', 'Discrepancy', 'Count'], tablefmt='rounded_grid'))
    print(f'{report.associative}/{report.samples} triples associative, '
          f'{report.mismatched} with bracketings on different basis monomials')

def _qminus1_probe_output(args: argparse.Namespace):
    rows = q_minus1_probe(args.vmax)
    if args.json:
        print(json.dumps([{
            'tree': str(row.tree),
            'left_at_minus1': row.left_at_minus1,
            'right_at_minus1': row.right_at_minus1,
            'left_classical': row.left_classical,
            'right_classical': row.right_classical,
        } for row in rows]))
        return

    data = [[str(row.tree), format_flag(row.left_at_minus1), format_flag(row.right_at_minus1),
             format_flag(row.left_classical), format_flag(row.right_classical)] for row in rows]
    print(tabulate(data, headers=['Tree', 'Left q=-1', 'Right q=-1', 'Left q=1', 'Right q=1'],
                   tablefmt='rounded_grid'))

def probe(args: argparse.Namespace) -> int:
    if not 1 <= args.vmax <= 4:
        raise ValueError(f'Probes support 1 <= --vmax <= 4, got {args.vmax}')
    setup_colour(args.colour)
    if args.probe == ASSOC_PROBE:
        _assoc_probe_output(args)
    else:
        _qminus1_probe_output(args)
    # Probes are informational and never fail
    return 0

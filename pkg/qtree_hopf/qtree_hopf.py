# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import argparse
import sys
from typing import Optional, Sequence

from . import check
from . import numeric
from . import symbolic
from .textio import ParseError, format_parse_error

NORMALIZE_CMD = 'normalize'
COPRODUCT_CMD = 'coproduct'
ANTIPODE_CMD = 'antipode'
SQ_CMD = 'sq'
DEFECT_CMD = 'defect'
CUTS_CMD = 'cuts'
ENUMERATE_CMD = 'enumerate'
CHECK_CMD = 'check'
PROBE_CMD = 'probe'
QINT_CMD = 'qint'
TREEINT_CMD = 'treeint'
MANIN_CMD = 'manin'
WORDX_CMD = 'wordx'

EXIT_USAGE = 2

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='qtree-hopf',
                                     description='q-deformed Hopf algebra of rooted trees and q-calculus toys')
    parser.add_argument('--json', action='store_true', default=False,
                        help='Print machine-readable JSON instead of text')

    # Lets --json also follow the subcommand without clobbering the global flag
    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument('--json', action='store_true', default=argparse.SUPPRESS,
                           help='Print machine-readable JSON instead of text')

    subparsers = parser.add_subparsers(dest='command_name')
    def add(name: str, help: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help, parents=[json_flag])

    symbolic.prepare_expression_args(
        add(NORMALIZE_CMD, 'Bring an element to normal form'))
    symbolic.prepare_expression_args(
        add(COPRODUCT_CMD, 'Compute the coproduct of an element'))
    symbolic.prepare_tree_args(
        add(ANTIPODE_CMD, 'Compute the classical antipode of a tree'))
    symbolic.prepare_sq_args(
        add(SQ_CMD, 'Apply the left antipode S_q to an element'))
    symbolic.prepare_tree_args(
        add(DEFECT_CMD, 'Evaluate the right-antipode defect of a tree in closed form'))
    symbolic.prepare_tree_args(
        add(CUTS_CMD, 'List the admissible cuts of a tree'))
    symbolic.prepare_enumerate_args(
        add(ENUMERATE_CMD, 'Enumerate the rooted trees with a given number of vertices'))
    check.prepare_check_args(
        add(CHECK_CMD, 'Run an identity suite over small trees'))
    check.prepare_probe_args(
        add(PROBE_CMD, 'Run an informational probe'))
    numeric.prepare_qint_args(
        add(QINT_CMD, 'Evaluate a truncated Jackson q-integral'))
    numeric.prepare_treeint_args(
        add(TREEINT_CMD, 'Evaluate the nested q-integral of a tree'))
    numeric.prepare_manin_args(
        add(MANIN_CMD, 'Check the delta_n relation on truncated Manin-plane operators'))
    numeric.prepare_wordx_args(
        add(WORDX_CMD, 'Exchange exponent of two formal integral words'))
    return parser

def dispatch(args: argparse.Namespace) -> int:
    cmd = args.command_name
    if cmd == NORMALIZE_CMD:
        return symbolic.normalize(args)
    elif cmd == COPRODUCT_CMD:
        return symbolic.coproduct(args)
    elif cmd == ANTIPODE_CMD:
        return symbolic.antipode(args)
    elif cmd == SQ_CMD:
        return symbolic.sq(args)
    elif cmd == DEFECT_CMD:
        return symbolic.defect(args)
    elif cmd == CUTS_CMD:
        return symbolic.cuts(args)
    elif cmd == ENUMERATE_CMD:
        return symbolic.list_trees(args)
    elif cmd == CHECK_CMD:
        return check.check(args)
    elif cmd == PROBE_CMD:
        return check.probe(args)
    elif cmd == QINT_CMD:
        return numeric.qint(args)
    elif cmd == TREEINT_CMD:
        return numeric.treeint(args)
    elif cmd == MANIN_CMD:
        return numeric.manin(args)
    elif cmd == WORDX_CMD:
        return numeric.wordx(args)
    else:
        print(f'Invalid subcommand: {cmd}', file=sys.stderr)
        return EXIT_USAGE

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors and 0 after --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.command_name is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        return dispatch(args)
    except ParseError as e:
        print(format_parse_error(e), file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE

# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import argparse
import json
import sys

from tabulate import tabulate

from . import hopf
from . import textio
from .algebra import BasisMonomial, Sector
from .trees import admissible_cuts, enumerate_trees

def read_expression(text: str) -> str:
    # "-" reads the expression from stdin
    if text == '-':
        return sys.stdin.read().strip()
    return text

def prepare_expression_args(parser: argparse.ArgumentParser):
    parser.add_argument('expression', type=str, metavar='EXPR',
                        help='Element in canonical text form, "-" reads it from stdin')

def prepare_sq_args(parser: argparse.ArgumentParser):
    prepare_expression_args(parser)
    parser.add_argument('--no-twist', action='store_true', default=False,
                        help='Keep coefficients unchanged when moving to the hat sector')

def prepare_tree_args(parser: argparse.ArgumentParser):
    parser.add_argument('--tree', type=str, required=True,
                        help='Rooted tree in bracket encoding, e.g. "[[][]]"')

def prepare_enumerate_args(parser: argparse.ArgumentParser):
    parser.add_argument('--n', type=int, required=True,
                        help='Number of vertices')

def emit(args: argparse.Namespace, value) -> int:
    if args.json:
        print(textio.dumps(value))
    else:
        print(value)
    return 0

def normalize(args: argparse.Namespace) -> int:
    return emit(args, textio.parse_element(read_expression(args.expression)))

def coproduct(args: argparse.Namespace) -> int:
    element = textio.parse_element(read_expression(args.expression))
    return emit(args, hopf.coproduct(element))

def antipode(args: argparse.Namespace) -> int:
    tree = textio.parse_tree(args.tree)
    return emit(args, hopf.antipode_classical(BasisMonomial(Sector.PLAIN, (tree,))))

def sq(args: argparse.Namespace) -> int:
    element = textio.parse_element(read_expression(args.expression))
    return emit(args, hopf.s_q(element, twist=not args.no_twist))

def defect(args: argparse.Namespace) -> int:
    return emit(args, hopf.right_defect_closed_form(textio.parse_tree(args.tree)))

def cuts(args: argparse.Namespace) -> int:
    tree = textio.parse_tree(args.tree)
    found = admissible_cuts(tree)
    if args.json:
        print(json.dumps([{
            'edges': list(cut.edges),
            'pruned': [str(t) for t in cut.pruned.trees],
            'trunk': str(cut.trunk),
        } for cut in found]))
        return 0

    if not found:
        print(f'{tree} has no admissible cuts')
        return 0
    data = [[','.join(str(e) for e in cut.edges), str(cut.pruned), str(cut.trunk)] for cut in found]
    print(tabulate(data, headers=['Edges', 'Pruned', 'Trunk'], tablefmt='rounded_grid'))
    return 0

def list_trees(args: argparse.Namespace) -> int:
    found = enumerate_trees(args.n)
    if args.json:
        print(json.dumps([str(tree) for tree in found]))
    else:
        for tree in found:
            print(tree)
    return 0

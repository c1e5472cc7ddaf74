# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import argparse
import json
from typing import Optional

from . import qcalc
from .textio import parse_integrand, parse_tree

SIGNIFICANT_DIGITS = 12

def format_number(value: Optional[float]) -> str:
    if value is None:
        return '-'
    return f'{value:.{SIGNIFICANT_DIGITS}g}'

def _rounded(value: Optional[float]) -> Optional[float]:
    return None if value is None else float(format_number(value))

def print_record(args: argparse.Namespace, record: dict):
    if args.json:
        print(json.dumps({key: _rounded(value) if isinstance(value, float) else value
                          for key, value in record.items()}))
        return
    for key, value in record.items():
        print(f'{key}: {value if isinstance(value, str) else format_number(value)}')

def _fit_record(fit: Optional[qcalc.GrowthFit]) -> dict:
    if fit is None:
        return {'slope': None, 'intercept': None, 'residual': None}
    return {'slope': fit.slope, 'intercept': fit.intercept, 'residual': fit.residual}

def prepare_qint_args(parser: argparse.ArgumentParser):
    parser.add_argument('--kind', choices=[kind.value for kind in qcalc.IntegralKind], required=True,
                        help='lower integrates over [0, c], upper over [c, oo)')
    parser.add_argument('--f', type=str, required=True,
                        help='Integrand in x and c, e.g. "1/(x+c)"')
    parser.add_argument('--c', type=float, default=1.0,
                        help='Integration boundary c')
    parser.add_argument('--q', type=float, required=True,
                        help='Deformation parameter in (0, 1)')
    parser.add_argument('--K', type=int, required=True,
                        help='Number of terms of the truncated sum')
    parser.add_argument('--window', type=int, default=qcalc.DEFAULT_FIT_WINDOW,
                        help='Trailing truncations used for the growth fit')

def prepare_treeint_args(parser: argparse.ArgumentParser):
    parser.add_argument('--tree', type=str, required=True,
                        help='Rooted tree in bracket encoding')
    parser.add_argument('--c', type=float, default=1.0,
                        help='Constant c of the root denominator')
    parser.add_argument('--q', type=float, required=True,
                        help='Deformation parameter in (0, 1)')
    parser.add_argument('--K', type=int, required=True,
                        help='Number of terms of every truncated sum')
    parser.add_argument('--alternate', action='store_true', default=False,
                        help='Integrate odd-depth vertices over [0, c] with x replaced by 1/x')
    parser.add_argument('--window', type=int, default=qcalc.DEFAULT_FIT_WINDOW,
                        help='Trailing truncations used for the growth fit')

def prepare_manin_args(parser: argparse.ArgumentParser):
    parser.add_argument('--n', type=int, required=True,
                        help='Index of the first generator delta_n')
    parser.add_argument('--m', type=int, required=True,
                        help='Index of the second generator delta_m')
    parser.add_argument('--N', type=int, default=16,
                        help='Dimension of the truncated basis')

def prepare_wordx_args(parser: argparse.ArgumentParser):
    parser.add_argument('--n', type=int, required=True,
                        help='Length of the first integral word')
    parser.add_argument('--m', type=int, required=True,
                        help='Length of the second integral word')

def qint(args: argparse.Namespace) -> int:
    spec = qcalc.QIntegralSpec(qcalc.IntegralKind(args.kind), args.c, args.q, args.K)
    sums = qcalc.jackson_partial_sums(spec, parse_integrand(args.f))
    record = {'value': float(sums[-1])}
    record.update(_fit_record(qcalc.trailing_fit(sums, args.window)))
    print_record(args, record)
    return 0

def treeint(args: argparse.Namespace) -> int:
    tree = parse_tree(args.tree)
    result = qcalc.evaluate_tree_integral(tree, args.c, args.q, args.K, args.alternate, args.window)
    record = {'integrand': str(qcalc.tree_to_integrand(tree)), 'value': result.value}
    record.update(_fit_record(result.fit))
    print_record(args, record)
    return 0

def manin(args: argparse.Namespace) -> int:
    report = qcalc.delta_relation_check(args.n, args.m, args.N)
    first, last = report.region
    if args.json:
        print(json.dumps({'n': report.n, 'm': report.m, 'N': report.N,
                          'holds': report.holds, 'region': [first, last]}))
    else:
        print(f'delta_{report.n} delta_{report.m} = q^{report.m - report.n} delta_{report.m} delta_{report.n}: '
              f'{"holds" if report.holds else "fails"} on columns {first}..{last} of {report.N}')
    return 0 if report.holds else 1

def wordx(args: argparse.Namespace) -> int:
    exponent = qcalc.integral_word_exchange(args.n, args.m)
    if args.json:
        print(json.dumps({'n': args.n, 'm': args.m, 'exponent': exponent}))
    else:
        print(f'q^{exponent}')
    return 0

# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .algebra import (BasisMonomial, Element, EPower, Generator, Sector, Tensor, UNIT_ELEMENT,
                      ZERO_ELEMENT, accumulate_term, classical_project, hat_twist, multiply, tensor_multiply)
from .coeff import Laurent, ONE
from .trees import RootedTree, admissible_cuts, trees_up_to

Subject = Union[BasisMonomial, Element, tuple[RootedTree, RootedTree]]

@dataclass(frozen=True)
class ResidualReport:
    subject: Subject
    residual: Union[Element, Tensor]

    @property
    def vanished(self) -> bool:
        return not self.residual

    @property
    def label(self) -> str:
        if isinstance(self.subject, tuple):
            return '(' + ', '.join(str(tree) for tree in self.subject) + ')'
        return str(self.subject)

def _generator_coproduct(generator: Generator, sector: Sector) -> Tensor:
    if isinstance(generator, EPower):
        power = BasisMonomial(sector, (), generator.power)
        return Tensor(2, {(power, power): ONE})

    e = BasisMonomial(sector, (), 1)
    tree = BasisMonomial(sector, (generator,))
    support: dict = {}
    accumulate_term(support, (e, tree), ONE)
    accumulate_term(support, (tree, e), ONE)
    for cut in admissible_cuts(generator):
        # Cuts are counted by edge set, equal (P, R) pairs add up
        key = (BasisMonomial(sector, cut.pruned.trees), BasisMonomial(sector, (cut.trunk,)))
        accumulate_term(support, key, ONE)
    return Tensor(2, support)

@lru_cache(maxsize=None)
def monomial_coproduct(m: BasisMonomial) -> Tensor:
    result = Tensor.unit(2)
    for generator in m.word():
        result = tensor_multiply(result, _generator_coproduct(generator, m.sector))
    return result

def coproduct(a: Element) -> Tensor:
    result = Tensor(2)
    for monomial, coefficient in a.items():
        result = result + monomial_coproduct(monomial).scale(coefficient)
    return result

def monomial_counit(m: BasisMonomial) -> int:
    return 0 if m.trees else 1

def counit(a: Element) -> Laurent:
    result = Laurent()
    for monomial, coefficient in a.items():
        if monomial_counit(monomial):
            result = result + coefficient
    return result

@lru_cache(maxsize=None)
def _tree_antipode(tree: RootedTree) -> Element:
    result = -Element.from_tree(tree)
    e_inverse = Element.e(-1)
    for cut in admissible_cuts(tree):
        pruned = _forest_antipode(cut.pruned.trees)
        result = result - pruned * e_inverse * Element.from_tree(cut.trunk)
    return result

def _forest_antipode(trees: tuple[RootedTree, ...]) -> Element:
    # S is an antihomomorphism, the factors come out in reverse order
    result = UNIT_ELEMENT
    for tree in reversed(trees):
        result = result * _tree_antipode(tree)
    return result

def antipode_classical(m: BasisMonomial) -> Element:
    """ Antipode recursion with e^-1 inserted between S(P) and R, on plain monomials. """
    assert m.sector is Sector.PLAIN, f'The classical antipode is defined on the plain sector, got {m}'
    result = Element.e(m.e_power) if m.e_power else UNIT_ELEMENT
    return result * _forest_antipode(m.trees)

def antipode(a: Element) -> Element:
    result = ZERO_ELEMENT
    for monomial, coefficient in a.items():
        result = result + antipode_classical(monomial).scale(coefficient)
    return result

def s_q_monomial(m: BasisMonomial, twist: bool = True) -> Element:
    if m.sector is Sector.PLAIN:
        return hat_twist(antipode_classical(m), invert_coefficients=twist)
    return antipode_classical(m.with_sector(Sector.PLAIN))

def s_q(a: Element, twist: bool = True) -> Element:
    """ Left antipode of the extended algebra.

    Plain monomials go to the hat image of their classical antipode, hat
    monomials to the classical antipode of the plain monomial of the same
    shape. With twist=False the hat image keeps its coefficients as they are.
    """
    result = ZERO_ELEMENT
    for monomial, coefficient in a.items():
        result = result + s_q_monomial(monomial, twist).scale(coefficient)
    return result

def _unit_term(m: BasisMonomial) -> Element:
    return UNIT_ELEMENT if monomial_counit(m) else ZERO_ELEMENT

def _convolve(m: BasisMonomial, left, right) -> Element:
    # Contract left(first slot) * right(second slot) over the coproduct of m
    result = ZERO_ELEMENT
    for (first, second), coefficient in monomial_coproduct(m).items():
        result = result + multiply(left(first), right(second)).scale(coefficient)
    return result

def left_antipode_residual(m: BasisMonomial, twist: bool = True) -> ResidualReport:
    residual = _convolve(m, lambda x: s_q_monomial(x, twist), Element.from_monomial)
    return ResidualReport(m, residual - _unit_term(m))

def right_antipode_residual(m: BasisMonomial, twist: bool = True) -> ResidualReport:
    residual = _convolve(m, Element.from_monomial, lambda x: s_q_monomial(x, twist))
    return ResidualReport(m, residual - _unit_term(m))

def right_defect_closed_form(tree: RootedTree) -> Element:
    result = ZERO_ELEMENT
    for cut in admissible_cuts(tree):
        pruned = Element.from_monomial(BasisMonomial(Sector.PLAIN, cut.pruned.trees))
        trunk = Element.from_tree(cut.trunk)
        term = hat_twist(pruned) * s_q(trunk) - s_q(pruned) * hat_twist(trunk)
        result = result + term.scale(Laurent.monomial(-cut.pruned.vertices))
    return result

def lemma1_residual(t1: RootedTree, t2: RootedTree) -> ResidualReport:
    d1 = monomial_coproduct(BasisMonomial(Sector.PLAIN, (t1,)))
    d2 = monomial_coproduct(BasisMonomial(Sector.PLAIN, (t2,)))
    exchange = Laurent.monomial(t2.vertices - t1.vertices)
    return ResidualReport((t1, t2), d1 * d2 - (d2 * d1).scale(exchange))

def coassociativity_residual(a: Union[Element, BasisMonomial]) -> ResidualReport:
    element = Element.from_monomial(a) if isinstance(a, BasisMonomial) else a
    pairs = coproduct(element)
    left = pairs.expand_slot(0, monomial_coproduct)
    right = pairs.expand_slot(1, monomial_coproduct)
    return ResidualReport(a, left - right)

def counit_residuals(m: BasisMonomial) -> tuple[ResidualReport, ResidualReport]:
    """ Residuals of (eps x id)Delta(m) - m and (id x eps)Delta(m) - m. """
    left = ZERO_ELEMENT
    right = ZERO_ELEMENT
    for (first, second), coefficient in monomial_coproduct(m).items():
        if monomial_counit(first):
            left = left + Element.from_monomial(second, coefficient)
        if monomial_counit(second):
            right = right + Element.from_monomial(first, coefficient)
    subject = Element.from_monomial(m)
    return ResidualReport(m, left - subject), ResidualReport(m, right - subject)

@dataclass(frozen=True)
class QMinus1Row:
    tree: RootedTree
    left_at_minus1: bool
    right_at_minus1: bool
    left_classical: bool
    right_classical: bool

def _vanishes_at(residual: Element, at: Fraction) -> bool:
    return not residual.specialize(at)

def q_minus1_probe(v_max: int) -> list[QMinus1Row]:
    """ Check both antipode identities of the classical S at q = -1 and at the classical point. """
    assert v_max <= 4, f'The q = -1 probe supports v_max <= 4, got {v_max=}'
    rows = []
    for tree in trees_up_to(v_max):
        m = BasisMonomial(Sector.PLAIN, (tree,))
        left = _convolve(m, antipode_classical, Element.from_monomial) - _unit_term(m)
        right = _convolve(m, Element.from_monomial, antipode_classical) - _unit_term(m)
        rows.append(QMinus1Row(
            tree,
            _vanishes_at(left, Fraction(-1)),
            _vanishes_at(right, Fraction(-1)),
            not classical_project(left),
            not classical_project(right),
        ))
    return rows

# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import math
from fractions import Fraction
from typing import Mapping, Optional, Union

Rational = Union[int, Fraction]

def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'

class Laurent:
    """ Laurent polynomial in the formal parameter q with rational coefficients.

    Stored as a map from exponent to nonzero coefficient, the empty map is 0.
    Instances are treated as immutable values.
    """
    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None):
        cleaned: dict[int, Fraction] = {}
        for exponent, value in (terms or {}).items():
            value = Fraction(value)
            if value != 0:
                cleaned[int(exponent)] = value
        self._terms = cleaned

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1) -> 'Laurent':
        return cls({exponent: coefficient})

    @classmethod
    def promote(cls, value: Union['Laurent', Rational]) -> 'Laurent':
        if isinstance(value, Laurent):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls({0: value})
        raise TypeError(f'Cannot use {value!r} as a Laurent coefficient')

    @property
    def terms(self) -> list[tuple[int, Fraction]]:
        # Decreasing exponent order, the printing order
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def shifted(self, exponent: int) -> 'Laurent':
        if exponent == 0:
            return self
        return Laurent({e + exponent: v for e, v in self._terms.items()})

    def q_invert(self) -> 'Laurent':
        return Laurent({-e: v for e, v in self._terms.items()})

    def evaluate(self, at: Union[Rational, float]) -> Union[Fraction, float]:
        if at == 0:
            raise ValueError('Laurent polynomials cannot be evaluated at q = 0')
        if isinstance(at, float):
            return math.fsum(float(v) * at ** e for e, v in self.terms)
        at = Fraction(at)
        return sum((v * at ** e for e, v in self.terms), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other) -> 'Laurent':
        try:
            other = Laurent.promote(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for exponent, value in other._terms.items():
            result[exponent] = result.get(exponent, 0) + value
        return Laurent(result)

    __radd__ = __add__

    def __neg__(self) -> 'Laurent':
        return Laurent({e: -v for e, v in self._terms.items()})

    def __sub__(self, other) -> 'Laurent':
        try:
            other = Laurent.promote(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'Laurent':
        return Laurent.promote(other) - self

    def __mul__(self, other) -> 'Laurent':
        try:
            other = Laurent.promote(other)
        except TypeError:
            return NotImplemented
        result: dict[int, Fraction] = {}
        for e1, v1 in self._terms.items():
            for e2, v2 in other._terms.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + v1 * v2
        return Laurent(result)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            other = Laurent.promote(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        # Constants hash like the rationals they compare equal to
        if not self._terms.keys() - {0}:
            return hash(self.coefficient(0))
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        output = ''
        for exponent, value in self.terms:
            if exponent == 0:
                term = format_rational(value)
            else:
                power = 'q' if exponent == 1 else f'q^{exponent}'
                if value == 1:
                    term = power
                elif value == -1:
                    term = f'-{power}'
                else:
                    term = f'{format_rational(value)}*{power}'
            if output and not term.startswith('-'):
                output += '+'
            output += term
        return output

    def __repr__(self) -> str:
        return f'Laurent({str(self)!r})'

ZERO = Laurent()
ONE = Laurent.monomial(0)
Q = Laurent.monomial(1)

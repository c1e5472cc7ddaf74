# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np

from .algebra import (BasisMonomial, Element, EPower, Generator, Sector, Tensor, UNIT_ELEMENT, ZERO_ELEMENT,
                      accumulate_term, normalize_word)
from .coeff import Laurent, ONE
from .trees import RootedTree

@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int

class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, text: str):
        super().__init__(message)
        self.message = message
        self.span = span
        self.text = text

    def caret_line(self) -> str:
        width = max(1, self.span.end - self.span.begin)
        return ' ' * self.span.begin + '^' * width

class SchemaError(ValueError):
    def __init__(self, message: str, path: str):
        super().__init__(f'{path}: {message}')
        self.path = path

def format_parse_error(error: ParseError) -> str:
    lines = [f'error: {error.message}']
    if '\n' not in error.text:
        lines += [error.text, error.caret_line()]
    return '\n'.join(lines)

TOKEN_RE = re.compile(r'(?P<decimal>\d+\.\d*|\.\d+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)'
                      r'|(?P<punct>[\[\]()*+\-^/&])|(?P<space>\s+)')

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan

def tokenize(text: str) -> list[Token]:
    tokens = []
    position = 0
    while position < len(text):
        m = TOKEN_RE.match(text, position)
        if m is None:
            raise ParseError(f'Unknown token {text[position]!r}', SourceSpan(position, position + 1), text)
        if m.lastgroup != 'space':
            tokens.append(Token(m.lastgroup, m.group(), SourceSpan(m.start(), m.end())))
        position = m.end()
    tokens.append(Token('eof', '', SourceSpan(len(text), len(text))))
    return tokens

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        self.index += 1
        return token

    def at(self, text: str) -> bool:
        token = self.peek()
        return token.kind in ('punct', 'ident') and token.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.index += 1
            return True
        return False

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.peek()
        found = 'end of input' if token.kind == 'eof' else repr(token.text)
        return ParseError(f'{message}, found {found}', token.span, self.text)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f'Expected {text!r}')
        return self.advance()

    def expect_int(self) -> int:
        token = self.peek()
        if token.kind != 'int':
            raise self.error('Expected an integer')
        self.advance()
        return int(token.text)

    def finish(self):
        if self.peek().kind != 'eof':
            raise self.error('Unexpected trailing input')

    # Coefficients
    def laurent(self) -> Laurent:
        negate = self.accept('-')
        result = self.laurent_term()
        if negate:
            result = -result
        while self.at('+') or self.at('-'):
            sign = self.advance().text
            term = self.laurent_term()
            result = result + term if sign == '+' else result - term
        return result

    def laurent_term(self) -> Laurent:
        token = self.peek()
        if token.kind == 'int':
            value = self.rational()
            exponent = self.q_power() if self.accept('*') else 0
            return Laurent.monomial(exponent, value)
        if self.at('q'):
            return Laurent.monomial(self.q_power())
        raise self.error('Malformed coefficient')

    def rational(self) -> Fraction:
        numerator = self.expect_int()
        if self.accept('/'):
            token = self.peek()
            denominator = self.expect_int()
            if denominator == 0:
                raise self.error('Zero denominator', token)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def q_power(self) -> int:
        self.expect('q')
        return self.signed_exponent() if self.accept('^') else 1

    def signed_exponent(self) -> int:
        negate = self.accept('-')
        value = self.expect_int()
        return -value if negate else value

    def coefficient(self) -> Laurent:
        self.expect('(')
        value = self.laurent()
        self.expect(')')
        return value

    # Trees and monomials
    def tree(self) -> RootedTree:
        self.expect('[')
        children = []
        while self.at('['):
            children.append(self.tree())
        self.expect(']')
        return RootedTree(tuple(children))

    def generator(self) -> Generator:
        if self.at('['):
            return self.tree()
        if self.accept('e'):
            return EPower(self.signed_exponent() if self.accept('^') else 1)
        raise self.error('Expected a tree or e')

    def plain_word(self) -> list[Generator]:
        word = [self.generator()]
        while self.accept('*'):
            word.append(self.generator())
        return word

    def monomial(self) -> Element:
        token = self.peek()
        if token.kind == 'int':
            if token.text not in ('0', '1'):
                raise self.error('Expected a monomial')
            self.advance()
            return UNIT_ELEMENT if token.text == '1' else ZERO_ELEMENT
        if self.accept('hat'):
            self.expect('(')
            word = self.plain_word()
            self.expect(')')
            return normalize_word(Sector.HAT, word)
        return normalize_word(Sector.PLAIN, self.plain_word())

    def scaled(self) -> Laurent:
        # Optional "(coeff)*" prefix of a term
        if self.at('('):
            value = self.coefficient()
            self.expect('*')
            return value
        return ONE

    def element(self) -> Element:
        negate = self.accept('-')
        result = self.element_term()
        if negate:
            result = -result
        while self.at('+') or self.at('-'):
            sign = self.advance().text
            term = self.element_term()
            result = result + term if sign == '+' else result - term
        return result

    def element_term(self) -> Element:
        coefficient = self.scaled()
        return self.monomial().scale(coefficient)

    def tensor(self) -> Tensor:
        negate = self.accept('-')
        result = self.tensor_term()
        if negate:
            result = -result
        while self.at('+') or self.at('-'):
            sign = self.advance().text
            start = self.peek()
            term = self.tensor_term()
            if term.arity != result.arity:
                raise ParseError(f'Tensor term of arity {term.arity} in a sum of arity {result.arity}',
                                 SourceSpan(start.span.begin, self.peek().span.begin), self.text)
            result = result + term if sign == '+' else result - term
        return result

    def tensor_term(self) -> Tensor:
        coefficient = self.scaled()
        factors = [self.monomial()]
        while self.accept('&'):
            factors.append(self.monomial())
        return Tensor.outer(*factors).scale(coefficient)

def parse_tree(text: str) -> RootedTree:
    parser = _Parser(text)
    tree = parser.tree()
    parser.finish()
    return tree

def parse_laurent(text: str) -> Laurent:
    parser = _Parser(text)
    value = parser.laurent()
    parser.finish()
    return value

def parse_element(text: str) -> Element:
    parser = _Parser(text)
    value = parser.element()
    parser.finish()
    return value

def parse_tensor(text: str, arity: int = 2) -> Tensor:
    parser = _Parser(text)
    if parser.peek().text == '0' and parser.peek(1).kind == 'eof':
        return Tensor(arity)
    value = parser.tensor()
    parser.finish()
    if value.arity != arity:
        raise ParseError(f'Expected a tensor of arity {arity}, got {value.arity}', SourceSpan(0, len(text)), text)
    return value

def print_monomial(m: BasisMonomial) -> str:
    if m.is_unit:
        return '1'
    generators = [str(tree) for tree in m.trees]
    if m.e_power == 1:
        generators.append('e')
    elif m.e_power != 0:
        generators.append(f'e^{m.e_power}')
    body = '*'.join(generators)
    return f'hat({body})' if m.sector is Sector.HAT else body

def _print_sum(terms: list[tuple[str, Laurent]]) -> str:
    if not terms:
        return '0'
    output = ''
    for body, coefficient in terms:
        if not output:
            output = body if coefficient == 1 else f'({coefficient})*{body}'
        elif coefficient == 1:
            output += f'+{body}'
        elif coefficient == -1:
            output += f'-{body}'
        else:
            output += f'+({coefficient})*{body}'
    return output

def print_element(a: Element) -> str:
    return _print_sum([(print_monomial(m), c) for m, c in a.items()])

def print_tensor(t: Tensor) -> str:
    return _print_sum([('&'.join(print_monomial(m) for m in key), c) for key, c in t.items()])

# JSON

def _coefficient_record(c: Laurent) -> list[list[int]]:
    return [[e, v.numerator, v.denominator] for e, v in c.terms]

def _monomial_record(m: BasisMonomial) -> dict[str, Any]:
    return {
        'sector': m.sector.value,
        'trees': [str(tree) for tree in m.trees],
        'epow': m.e_power,
    }

def element_to_json(a: Element) -> list[dict[str, Any]]:
    return [{**_monomial_record(m), 'coeff': _coefficient_record(c)} for m, c in a.items()]

def tensor_to_json(t: Tensor) -> list[dict[str, Any]]:
    return [{'factors': [_monomial_record(m) for m in key], 'coeff': _coefficient_record(c)}
            for key, c in t.items()]

def to_json(value: Union[Element, Tensor]) -> list[dict[str, Any]]:
    if isinstance(value, Tensor):
        return tensor_to_json(value)
    return element_to_json(value)

def dumps(value: Union[Element, Tensor], indent: Optional[int] = None) -> str:
    return json.dumps(to_json(value), indent=indent)

def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)

def _expect(condition: bool, message: str, path: str):
    if not condition:
        raise SchemaError(message, path)

def _coefficient_from_json(value: Any, path: str) -> Laurent:
    _expect(isinstance(value, list), 'coeff must be a list', path)
    result = Laurent()
    for i, term in enumerate(value):
        term_path = f'{path}[{i}]'
        _expect(isinstance(term, list) and len(term) == 3 and all(_is_int(x) for x in term),
                'coefficient terms must be [exponent, numerator, denominator] integers', term_path)
        _expect(term[2] != 0, 'zero denominator', term_path)
        result = result + Laurent.monomial(term[0], Fraction(term[1], term[2]))
    return result

def _monomial_from_json(value: Any, path: str) -> BasisMonomial:
    _expect(isinstance(value, dict), 'monomial record must be an object', path)
    for key in ('sector', 'trees', 'epow'):
        _expect(key in value, f'missing key {key!r}', path)
    _expect(value['sector'] in ('plain', 'hat'), 'sector must be "plain" or "hat"', f'{path}.sector')
    _expect(_is_int(value['epow']), 'epow must be an integer', f'{path}.epow')
    _expect(isinstance(value['trees'], list), 'trees must be a list', f'{path}.trees')
    trees = []
    for i, text in enumerate(value['trees']):
        tree_path = f'{path}.trees[{i}]'
        _expect(isinstance(text, str), 'trees are bracket strings', tree_path)
        try:
            trees.append(parse_tree(text))
        except ParseError as e:
            raise SchemaError(e.message, tree_path) from e
    _expect(trees == sorted(trees), 'trees must be in canonical order', f'{path}.trees')
    return BasisMonomial(Sector(value['sector']), tuple(trees), value['epow'])

def element_from_json(value: Any, path: str = '$') -> Element:
    _expect(isinstance(value, list), 'element must be a list of monomial records', path)
    support: dict = {}
    for i, record in enumerate(value):
        record_path = f'{path}[{i}]'
        monomial = _monomial_from_json(record, record_path)
        _expect('coeff' in record, "missing key 'coeff'", record_path)
        accumulate_term(support, monomial, _coefficient_from_json(record['coeff'], f'{record_path}.coeff'))
    return Element(support)

def tensor_from_json(value: Any, arity: int = 2, path: str = '$') -> Tensor:
    _expect(isinstance(value, list), 'tensor must be a list of entries', path)
    support: dict = {}
    for i, entry in enumerate(value):
        entry_path = f'{path}[{i}]'
        _expect(isinstance(entry, dict) and 'factors' in entry and 'coeff' in entry,
                'tensor entries need "factors" and "coeff"', entry_path)
        factors = entry['factors']
        _expect(isinstance(factors, list) and len(factors) == arity,
                f'factors must be a list of {arity} monomial records', f'{entry_path}.factors')
        key = tuple(_monomial_from_json(f, f'{entry_path}.factors[{j}]') for j, f in enumerate(factors))
        accumulate_term(support, key, _coefficient_from_json(entry['coeff'], f'{entry_path}.coeff'))
    return Tensor(arity, support)

def loads_element(text: str) -> Element:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f'invalid JSON: {e.msg}', '$') from e
    return element_from_json(value)

# Integrands

@dataclass(frozen=True)
class Constant:
    value: Fraction

    def evaluate(self, x: np.ndarray, c: float) -> np.ndarray:
        return np.full_like(x, float(self.value))

    def __str__(self) -> str:
        return str(self.value)

@dataclass(frozen=True)
class Variable:
    name: str

    def evaluate(self, x: np.ndarray, c: float) -> np.ndarray:
        return x if self.name == 'x' else np.full_like(x, c)

    def __str__(self) -> str:
        return self.name

@dataclass(frozen=True)
class Negate:
    operand: 'Expression'

    def evaluate(self, x: np.ndarray, c: float) -> np.ndarray:
        return -self.operand.evaluate(x, c)

    def __str__(self) -> str:
        return f'-({self.operand})'

@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: 'Expression'
    right: 'Expression'

    def evaluate(self, x: np.ndarray, c: float) -> np.ndarray:
        lhs = self.left.evaluate(x, c)
        rhs = self.right.evaluate(x, c)
        if self.op == '+':
            return lhs + rhs
        if self.op == '-':
            return lhs - rhs
        if self.op == '*':
            return lhs * rhs
        if self.op == '/':
            return lhs / rhs
        return lhs ** rhs

    def __str__(self) -> str:
        return f'({self.left}{self.op}{self.right})'

Expression = Union[Constant, Variable, Negate, BinaryOp]

class _IntegrandParser(_Parser):
    def expression(self) -> Expression:
        result = self.product()
        while self.at('+') or self.at('-'):
            op = self.advance().text
            result = BinaryOp(op, result, self.product())
        return result

    def product(self) -> Expression:
        result = self.unary()
        while self.at('*') or self.at('/'):
            op = self.advance().text
            result = BinaryOp(op, result, self.unary())
        return result

    def unary(self) -> Expression:
        if self.accept('-'):
            return Negate(self.unary())
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.accept('^'):
            return BinaryOp('^', base, Constant(Fraction(self.signed_exponent())))
        return base

    def atom(self) -> Expression:
        token = self.peek()
        if token.kind in ('int', 'decimal'):
            self.advance()
            return Constant(Fraction(token.text))
        if self.at('x') or self.at('c'):
            return Variable(self.advance().text)
        if self.accept('('):
            inner = self.expression()
            self.expect(')')
            return inner
        raise self.error('Expected a number, x, c or a parenthesised expression')

def parse_integrand(text: str) -> Expression:
    parser = _IntegrandParser(text)
    value = parser.expression()
    parser.finish()
    return value

# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np

from .coeff import Laurent, ONE, ZERO
from .textio import Expression
from .trees import RootedTree, vertex_table

# Trailing truncations used to fit the growth of a divergent sum
DEFAULT_FIT_WINDOW = 16
# Bound on the kernel entries one tree integral may sum over its fit window
MAX_TREE_INTEGRAL_TERMS = 10 ** 9
TREE_INTEGRAL_BLOCK_ROWS = 256

class QCalcError(ArithmeticError):
    pass

class IntegralKind(Enum):
    LOWER = 'lower'
    UPPER = 'upper'

@dataclass(frozen=True)
class QIntegralSpec:
    """ Truncated Jackson integral over [0, c] (lower) or [c, oo) (upper). """
    kind: IntegralKind
    c: float
    q: float
    K: int

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ValueError(f'q must lie in (0, 1), got {self.q}')
        if not self.c > 0:
            raise ValueError(f'c must be positive, got {self.c}')
        if self.K < 1:
            raise ValueError(f'The truncation K must be at least 1, got {self.K}')

    def nodes(self) -> np.ndarray:
        """ Partition points x_0 .. x_K. """
        k = np.arange(self.K + 1, dtype=float)
        sign = 1.0 if self.kind is IntegralKind.LOWER else -1.0
        return self.c * self.q ** (sign * k)

    def weights(self) -> np.ndarray:
        x = self.nodes()
        return x[:-1] - x[1:] if self.kind is IntegralKind.LOWER else x[1:] - x[:-1]

Integrand = Union[Expression, Callable[[np.ndarray], np.ndarray]]

def _as_function(f: Integrand, c: float) -> Callable[[np.ndarray], np.ndarray]:
    if hasattr(f, 'evaluate'):
        return lambda x: f.evaluate(x, c)
    return f

def _checked(values: np.ndarray, nodes: np.ndarray, what: str) -> np.ndarray:
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise QCalcError(f'{what} is not finite at x = {nodes[bad[0]]:.12g} (k = {bad[0]})')
    return values

def jackson_partial_sums(spec: QIntegralSpec, f: Integrand) -> np.ndarray:
    """ Truncated values for K' = 1 .. K, summed in ascending k. """
    x = spec.nodes()[:-1]
    with np.errstate(all='ignore'):
        samples = np.asarray(_as_function(f, spec.c)(x), dtype=float) * np.ones_like(x)
        _checked(samples, x, 'The integrand')
        sums = np.cumsum(spec.weights() * samples)
    return _checked(sums, x, 'The accumulated sum')

def jackson_integral(spec: QIntegralSpec, f: Integrand) -> float:
    return float(jackson_partial_sums(spec, f)[-1])

@dataclass(frozen=True)
class GrowthFit:
    slope: float
    intercept: float
    # Root mean square deviation from the fitted line
    residual: float

def fit_growth(truncations: np.ndarray, values: np.ndarray) -> GrowthFit:
    truncations = np.asarray(truncations, dtype=float)
    values = np.asarray(values, dtype=float)
    assert truncations.size >= 2, 'A growth fit needs at least two truncations'
    slope, intercept = np.polyfit(truncations, values, 1)
    deviation = values - (slope * truncations + intercept)
    return GrowthFit(float(slope), float(intercept), float(np.sqrt(np.mean(deviation ** 2))))

def trailing_fit(values: np.ndarray, window: int = DEFAULT_FIT_WINDOW) -> Optional[GrowthFit]:
    """ Fit value against K' over the last `window` truncations, None below two points. """
    window = min(window, len(values))
    if window < 2:
        return None
    truncations = np.arange(len(values) - window + 1, len(values) + 1)
    return fit_growth(truncations, values[-window:])

@dataclass(frozen=True)
class UvIrReport:
    c: float
    q: float
    K: int
    # Upper nodes are c^2 over the lower nodes, index by index
    bijection: bool
    upper: float
    lower: float
    mirrored_lower: float
    scale: float
    mirror_error: float
    discrepancy: float
    ratio: Optional[float]

def _node_bijection(c: float, q: float, K: int) -> bool:
    upper = QIntegralSpec(IntegralKind.UPPER, c, q, K).nodes()
    lower = QIntegralSpec(IntegralKind.LOWER, c, q, K).nodes()
    # x -> c^2/x sends the k-th lower node to the k-th upper node
    return bool(np.all(np.diff(upper) > 0) and np.all(np.diff(lower) < 0)
                and np.allclose(upper * lower, c * c, rtol=1e-12, atol=0))

def uvir_exchange_check(f: Integrand, c: float, q: float, K: int) -> UvIrReport:
    """ Compare the upper sum of f with the lower sums of f and of its mirror image.

    The mirror x -> c^2/x maps the lower nodes onto the upper ones, so term by
    term the upper sum of f equals 1/q times the lower sum of
    g(y) = f(c^2/y) c^2/y^2. The discrepancy upper + lower/q is the constant
    left over by the exchange, K(1-q)/q for f = 1/(x+c).
    """
    function = _as_function(f, c)
    mirrored = lambda y: function(c * c / y) * c * c / y ** 2
    upper = jackson_integral(QIntegralSpec(IntegralKind.UPPER, c, q, K), function)
    lower = jackson_integral(QIntegralSpec(IntegralKind.LOWER, c, q, K), function)
    mirrored_lower = jackson_integral(QIntegralSpec(IntegralKind.LOWER, c, q, K), mirrored)
    scale = 1 / q
    return UvIrReport(
        c=c, q=q, K=K,
        bijection=_node_bijection(c, q, K),
        upper=upper,
        lower=lower,
        mirrored_lower=mirrored_lower,
        scale=scale,
        mirror_error=abs(upper - scale * mirrored_lower),
        discrepancy=upper + scale * lower,
        ratio=upper / lower if lower != 0 else None,
    )

@dataclass(frozen=True)
class TreeIntegrand:
    tree: RootedTree
    # Preorder numbering, the root is x1
    parents: tuple[Optional[int], ...]
    depths: tuple[int, ...]

    @property
    def denominators(self) -> list[str]:
        return [f'x{i + 1}+c' if parent is None else f'x{parent + 1}+x{i + 1}'
                for i, parent in enumerate(self.parents)]

    def __str__(self) -> str:
        denominators = self.denominators
        if len(denominators) == 1:
            return f'1/({denominators[0]})'
        return '1/(' + ''.join(f'({d})' for d in denominators) + ')'

def tree_to_integrand(tree: RootedTree) -> TreeIntegrand:
    table = vertex_table(tree)
    return TreeIntegrand(tree, tuple(v.parent for v in table), tuple(v.depth for v in table))

@dataclass(frozen=True)
class TreeIntegralResult:
    value: float
    K: int
    values: tuple[float, ...]
    fit: Optional[GrowthFit]

def _vertex_nodes(depth: int, c: float, q: float, K: int, alternate: bool) -> tuple[np.ndarray, np.ndarray]:
    # Points where the vertex variable is sampled and the matching weights
    if alternate and depth % 2 == 1:
        spec = QIntegralSpec(IntegralKind.LOWER, c, q, K)
        return 1.0 / spec.nodes()[:-1], spec.weights()
    spec = QIntegralSpec(IntegralKind.UPPER, c, q, K)
    return spec.nodes()[:-1], spec.weights()

def _kernel_sums(points: np.ndarray, child_points: np.ndarray, child_weights: np.ndarray) -> np.ndarray:
    # Row sums of w_j / (x_i + y_j), built TREE_INTEGRAL_BLOCK_ROWS rows at a time
    sums = np.empty_like(points)
    for start in range(0, points.size, TREE_INTEGRAL_BLOCK_ROWS):
        block = points[start:start + TREE_INTEGRAL_BLOCK_ROWS, np.newaxis]
        kernel = child_weights[np.newaxis, :] / (block + child_points[np.newaxis, :])
        sums[start:start + block.shape[0]] = kernel.sum(axis=1)
    return sums

def _nested_value(tree: RootedTree, c: float, q: float, K: int, alternate: bool) -> float:
    with np.errstate(all='ignore'):
        def inner(subtree: RootedTree, depth: int) -> tuple[np.ndarray, np.ndarray]:
            # Weighted product of the children integrals at this vertex's points
            points, weights = _vertex_nodes(depth, c, q, K, alternate)
            integrand = weights.copy()
            for child in subtree.children:
                child_points, child_weights = inner(child, depth + 1)
                integrand = integrand * _kernel_sums(points, child_points, child_weights)
            return points, integrand

        points, integrand = inner(tree, 0)
        value = float(np.sum(integrand / (points + c)))
    if not np.isfinite(value):
        raise QCalcError(f'The integral of {tree} at K = {K} is not finite')
    return value

def tree_integral_terms(tree: RootedTree, K: int, window: int = DEFAULT_FIT_WINDOW) -> int:
    """ Kernel entries summed by evaluate_tree_integral, K'^2 per edge for every fitted K'. """
    edges = tree.vertices - 1
    return sum(edges * k * k for k in range(max(1, K - window + 1), K + 1))

def evaluate_tree_integral(tree: RootedTree, c: float, q: float, K: int, alternate: bool = False,
                           window: int = DEFAULT_FIT_WINDOW) -> TreeIntegralResult:
    """ Nested q-integrals of the tree integrand, innermost first.

    Every vertex integrates over [c, oo). With `alternate`, vertices at odd
    depth integrate over [0, c] with their variable replaced by 1/x.
    The growth in K is fitted over the trailing `window` truncations.
    """
    QIntegralSpec(IntegralKind.UPPER, c, q, K)
    assert window >= 1, f'The fit window must be positive, got {window=}'
    terms = tree_integral_terms(tree, K, window)
    if terms > MAX_TREE_INTEGRAL_TERMS:
        raise QCalcError(f'The integral of {tree} at K = {K} with a window of {window} needs {terms} terms, '
                         f'above the limit of {MAX_TREE_INTEGRAL_TERMS}')
    first = max(1, K - window + 1)
    values = np.array([_nested_value(tree, c, q, k, alternate) for k in range(first, K + 1)])
    fit = fit_growth(np.arange(first, K + 1), values) if values.size >= 2 else None
    return TreeIntegralResult(float(values[-1]), K, tuple(float(v) for v in values), fit)

def integral_word(n: int, tag: str = '') -> list[str]:
    assert n >= 1, f'An integral word needs n >= 1, got {n=}'
    return [f'dy{tag}'] + [f'dx{i}{tag}' for i in range(1, n)]

def _exchange_exponent(left: str, right: str) -> int:
    # dy dx = q dx dy, dx's commute and so do the outer dy's
    if left.startswith('dy') and right.startswith('dx'):
        return 1
    if left.startswith('dx') and right.startswith('dy'):
        return -1
    return 0

def integral_word_exchange(n: int, m: int) -> int:
    """ Exponent p with word(n) word(m) = q^p word(m) word(n). """
    if n < 1 or m < 1:
        raise ValueError(f'Integral words need n, m >= 1, got {n=}, {m=}')
    word = [(1, letter) for letter in integral_word(n, "'")] + [(0, letter) for letter in integral_word(m, '"')]
    exponent = 0
    # Bubble the second word to the front, tracking each adjacent exchange
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i][0] > word[i + 1][0]:
                exponent += _exchange_exponent(word[i][1], word[i + 1][1])
                word[i], word[i + 1] = word[i + 1], word[i]
                changed = True
    return exponent

class TruncatedOperator:
    """ N x N matrix with exact Laurent entries acting on |0> .. |N-1>. """

    def __init__(self, entries: np.ndarray):
        entries = np.asarray(entries, dtype=object)
        assert entries.ndim == 2 and entries.shape[0] == entries.shape[1], \
            f'Truncated operators are square, got shape {entries.shape}'
        self.entries = entries

    @classmethod
    def zeros(cls, N: int) -> 'TruncatedOperator':
        entries = np.empty((N, N), dtype=object)
        entries.fill(ZERO)
        return cls(entries)

    @classmethod
    def identity(cls, N: int) -> 'TruncatedOperator':
        result = cls.zeros(N)
        for k in range(N):
            result.entries[k, k] = ONE
        return result

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def column(self, j: int) -> list[Laurent]:
        return [Laurent.promote(x) for x in self.entries[:, j]]

    def scale(self, coefficient: Laurent) -> 'TruncatedOperator':
        return TruncatedOperator(np.vectorize(lambda x: x * coefficient, otypes=[object])(self.entries))

    def __matmul__(self, other: 'TruncatedOperator') -> 'TruncatedOperator':
        assert self.dimension == other.dimension, \
            f'Cannot compose operators of dimension {self.dimension} and {other.dimension}'
        N = self.dimension
        result = TruncatedOperator.zeros(N)
        for i in range(N):
            for j in range(N):
                total = ZERO
                for k in range(N):
                    if self.entries[i, k] and other.entries[k, j]:
                        total = total + self.entries[i, k] * other.entries[k, j]
                result.entries[i, j] = total
        return result

    def __pow__(self, exponent: int) -> 'TruncatedOperator':
        assert exponent >= 0, f'Only nonnegative powers are defined, got {exponent}'
        result = TruncatedOperator.identity(self.dimension)
        for _ in range(exponent):
            result = result @ self
        return result

    def __sub__(self, other: 'TruncatedOperator') -> 'TruncatedOperator':
        return TruncatedOperator(self.entries - other.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedOperator):
            return NotImplemented
        return self.entries.shape == other.entries.shape and \
            all(Laurent.promote(a) == Laurent.promote(b) for a, b in zip(self.entries.flat, other.entries.flat))

def manin_operators(N: int, n: int) -> tuple[TruncatedOperator, TruncatedOperator, TruncatedOperator]:
    """ X|k> = q^k |k>, Y|k> = |k+1> (truncated at N) and delta_n = X Y^n. """
    if not 1 <= n < N:
        raise ValueError(f'The index n must satisfy 1 <= n < N, got {n=}, {N=}')
    X = TruncatedOperator.zeros(N)
    Y = TruncatedOperator.zeros(N)
    for k in range(N):
        X.entries[k, k] = Laurent.monomial(k)
        if k + 1 < N:
            Y.entries[k + 1, k] = ONE
    return X, Y, X @ (Y ** n)

@dataclass(frozen=True)
class DeltaRelationReport:
    n: int
    m: int
    N: int
    holds: bool
    # First and last column of the truncation-safe region
    region: tuple[int, int]

def delta_relation_check(n: int, m: int, N: int) -> DeltaRelationReport:
    """ delta_n delta_m = q^(m-n) delta_m delta_n on columns j with j + n + m < N. """
    if n + m >= N:
        raise ValueError(f'The truncation-safe region is empty for {n=}, {m=}, {N=}')
    delta_n = manin_operators(N, n)[2]
    delta_m = manin_operators(N, m)[2]
    lhs = delta_n @ delta_m
    rhs = (delta_m @ delta_n).scale(Laurent.monomial(m - n))
    last = N - n - m - 1
    holds = all(lhs.column(j) == rhs.column(j) for j in range(last + 1))
    return DeltaRelationReport(n, m, N, holds, (0, last))

# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Generator, Iterable, Optional, Sequence, Union

# Enumeration beyond this size is refused, the count grows roughly like 3^n
MAX_ENUMERATION_VERTICES = 14

class EnumerationLimitError(ValueError):
    pass

@dataclass(frozen=True, eq=False)
class RootedTree:
    """ Unordered rooted tree kept in canonical form.

    Children are sorted on construction, so two trees are equal exactly when
    their bracket encodings are equal.
    """
    children: tuple['RootedTree', ...] = ()
    encoding: str = field(init=False, repr=False)
    vertices: int = field(init=False, repr=False)

    def __post_init__(self):
        assert all(isinstance(child, RootedTree) for child in self.children), \
            f'Children of a rooted tree must be rooted trees: {self.children!r}'
        children = tuple(sorted(self.children))
        object.__setattr__(self, 'children', children)
        object.__setattr__(self, 'encoding', '[' + ''.join(child.encoding for child in children) + ']')
        object.__setattr__(self, 'vertices', 1 + sum(child.vertices for child in children))

    @property
    def sort_key(self) -> tuple[int, str]:
        return (self.vertices, self.encoding)

    @property
    def is_ladder(self) -> bool:
        return len(self.children) == 0 or (len(self.children) == 1 and self.children[0].is_ladder)

    def __lt__(self, other: 'RootedTree') -> bool:
        return self.sort_key < other.sort_key

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.encoding == other.encoding

    def __hash__(self) -> int:
        return hash(self.encoding)

    def __str__(self) -> str:
        return self.encoding

    def __repr__(self) -> str:
        return f'RootedTree({self.encoding!r})'

# Nested sequences in any child order, e.g. [[[]], []]
RawTree = Union[RootedTree, Sequence[Any]]

SINGLE_VERTEX = RootedTree()

def canonicalize(raw: RawTree) -> RootedTree:
    children = raw.children if isinstance(raw, RootedTree) else raw
    return RootedTree(tuple(canonicalize(child) for child in children))

def tree_order(a: RootedTree, b: RootedTree) -> int:
    """ Three-way comparison: vertex count first, then the bracket encoding. """
    return (a.sort_key > b.sort_key) - (a.sort_key < b.sort_key)

def vertex_count(x) -> int:
    # Trees, forests and basis monomials all expose their grading as `vertices`
    return x.vertices

def graft(forest: Iterable[RootedTree]) -> RootedTree:
    return RootedTree(tuple(forest))

def ladder(n: int) -> RootedTree:
    assert n >= 1, f'A ladder needs at least one vertex, got {n=}'
    tree = SINGLE_VERTEX
    for _ in range(n - 1):
        tree = graft([tree])
    return tree

@dataclass(frozen=True)
class Forest:
    trees: tuple[RootedTree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'trees', tuple(sorted(self.trees)))

    @property
    def vertices(self) -> int:
        return sum(tree.vertices for tree in self.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __str__(self) -> str:
        return '*'.join(str(tree) for tree in self.trees) if self.trees else '1'

@dataclass(frozen=True)
class Cut:
    pruned: Forest
    trunk: RootedTree
    # Preorder indices of the lower endpoints of the cut edges
    edges: tuple[int, ...]

@dataclass(frozen=True)
class Vertex:
    index: int
    parent: Optional[int]
    depth: int
    subtree: RootedTree

def vertex_table(tree: RootedTree) -> list[Vertex]:
    """ Preorder numbering of the vertices, children visited in canonical order. """
    table: list[Vertex] = []
    def visit(subtree: RootedTree, parent: Optional[int], depth: int):
        index = len(table)
        table.append(Vertex(index, parent, depth, subtree))
        for child in subtree.children:
            visit(child, index, depth + 1)
    visit(tree, None, 0)
    return table

def _partial_cuts(tree: RootedTree, root_index: int) -> list[tuple[tuple[int, ...], tuple[RootedTree, ...], RootedTree]]:
    # Every admissible edge set of the subtree, the empty one included,
    # as (edges, pruned trees, remaining trunk)
    per_child = []
    child_index = root_index + 1
    for child in tree.children:
        options = _partial_cuts(child, child_index)
        options.append(((child_index,), (child,), None))
        per_child.append(options)
        child_index += child.vertices

    result = []
    for combination in itertools.product(*per_child):
        edges = tuple(itertools.chain.from_iterable(option[0] for option in combination))
        pruned = tuple(itertools.chain.from_iterable(option[1] for option in combination))
        trunk = RootedTree(tuple(option[2] for option in combination if option[2] is not None))
        result.append((edges, pruned, trunk))
    return result

@lru_cache(maxsize=None)
def _admissible_cuts(tree: RootedTree) -> tuple[Cut, ...]:
    return tuple(Cut(Forest(pruned), trunk, edges)
                 for edges, pruned, trunk in _partial_cuts(tree, 0) if edges)

def admissible_cuts(tree: RootedTree) -> list[Cut]:
    return list(_admissible_cuts(tree))

def _forests_of_size(total: int, bound: Optional[RootedTree]) -> Generator[tuple[RootedTree, ...], Any, None]:
    # Forests listed as non-increasing tree sequences, so each multiset appears once
    if total == 0:
        yield ()
        return
    largest = total if bound is None else min(total, bound.vertices)
    for size in range(largest, 0, -1):
        for tree in _trees_of_size(size):
            if bound is not None and bound < tree:
                continue
            for rest in _forests_of_size(total - size, tree):
                yield (tree,) + rest

@lru_cache(maxsize=None)
def _trees_of_size(n: int) -> tuple[RootedTree, ...]:
    if n == 1:
        return (SINGLE_VERTEX,)
    return tuple(sorted({graft(forest) for forest in _forests_of_size(n - 1, None)}))

def enumerate_trees(n: int) -> list[RootedTree]:
    if n < 1:
        raise ValueError(f'Trees have at least one vertex, got {n=}')
    if n > MAX_ENUMERATION_VERTICES:
        raise EnumerationLimitError(f'Enumerating trees with {n} vertices exceeds the limit of {MAX_ENUMERATION_VERTICES}')
    return list(_trees_of_size(n))

def trees_up_to(v_max: int) -> list[RootedTree]:
    return [tree for n in range(1, v_max + 1) for tree in enumerate_trees(n)]

def forests_up_to(v_max: int) -> list[Forest]:
    """ Every forest with at most v_max vertices, the empty forest first. """
    if v_max > MAX_ENUMERATION_VERTICES:
        raise EnumerationLimitError(f'Enumerating forests with {v_max} vertices exceeds the limit of {MAX_ENUMERATION_VERTICES}')
    return [Forest(trees) for total in range(v_max + 1) for trees in _forests_of_size(total, None)]

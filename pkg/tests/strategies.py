from hypothesis import strategies as st

from qtree_hopf.algebra import BasisMonomial, Element, Sector
from qtree_hopf.coeff import Laurent
from qtree_hopf.trees import trees_up_to

# Nested lists in arbitrary child order, e.g. [[], [[]]]
raw_trees = st.recursive(st.just([]), lambda children: st.lists(children, max_size=3), max_leaves=6)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)

laurents = st.dictionaries(st.integers(-3, 3), rationals, max_size=3).map(Laurent)
nonzero_laurents = laurents.filter(bool)
nonzero_rationals = rationals.filter(lambda x: x != 0)

def trees(v_max: int = 4, ladders_only: bool = False):
    pool = [tree for tree in trees_up_to(v_max) if tree.is_ladder or not ladders_only]
    return st.sampled_from(pool)

@st.composite
def monomials(draw, v_max: int = 4, sectors=(Sector.PLAIN, Sector.HAT), ladders_only: bool = False):
    pool = [tree for tree in trees_up_to(v_max) if tree.is_ladder or not ladders_only]
    budget = draw(st.integers(0, v_max))
    chosen = []
    while budget > 0:
        candidates = [tree for tree in pool if tree.vertices <= budget]
        tree = draw(st.sampled_from(candidates))
        chosen.append(tree)
        budget -= tree.vertices
        if draw(st.booleans()):
            break
    sector = draw(st.sampled_from(list(sectors)))
    return BasisMonomial(sector, tuple(sorted(chosen)), draw(st.integers(-1, 1)))

def elements(v_max: int = 4, sectors=(Sector.PLAIN, Sector.HAT)):
    return st.dictionaries(monomials(v_max, sectors), nonzero_laurents, max_size=3).map(Element)

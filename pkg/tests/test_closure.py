import math

import pytest

from misere import (
    AtlasMismatchError,
    Outcome,
    blue_mutant_flower,
    closure_atoms,
    element_outcome,
    element_sum,
    enumerate_elements,
)


def test_atoms_of_star2(store):
    atlas = closure_atoms(store, [store.nimber(2)])
    assert atlas.atoms == (store.nimber(1), store.nimber(2))
    assert atlas.basis == atlas.atoms


def test_atoms_of_flower_family(store):
    flower = blue_mutant_flower(store, {0, 1, 2, 3})
    atlas = closure_atoms(store, [store.nimber(4), flower])
    assert atlas.atoms == tuple(store.nimber(k) for k in (1, 2, 3, 4)) + (flower,)


def test_empty_generator_list(store):
    atlas = closure_atoms(store, [])
    assert atlas.atoms == ()
    assert [str(e) for e in enumerate_elements(atlas, 5)] == ["0"]


def test_materialized_sums_are_not_basis_atoms(store):
    flower = blue_mutant_flower(store, {0, 1})
    ender = store.make_game((store.sum_as_game((flower, flower)),), ())
    atlas = closure_atoms(store, [ender])
    assert set(atlas.basis) == {store.nimber(1), store.nimber(2), flower, ender}
    assert set(atlas.basis) < set(atlas.atoms)


def test_enumerate_star_atlas(store):
    atlas = closure_atoms(store, [store.nimber(1)])
    assert [str(e) for e in enumerate_elements(atlas, 3)] == ["0", "*", "2*", "3*"]


def test_enumerate_counts(store):
    atlas = closure_atoms(store, [store.nimber(2)])
    elems = enumerate_elements(atlas, 2)
    assert len(elems) == 6  # multisets of size <= 2 over two atoms
    atlas4 = closure_atoms(store, [store.nimber(4)])
    elems4 = enumerate_elements(atlas4, 3)
    assert len(elems4) == math.comb(4 + 3, 3)


def test_enumeration_is_duplicate_free_and_downward_closed(store):
    atlas = closure_atoms(store, [store.nimber(2)])
    elems = enumerate_elements(atlas, 4)
    seen = {e.counts for e in elems}
    assert len(seen) == len(elems)
    for e in elems:
        for i, c in enumerate(e.counts):
            if c:
                smaller = e.counts[:i] + (c - 1,) + e.counts[i + 1 :]
                assert smaller in seen


def test_enumeration_is_graded(store):
    atlas = closure_atoms(store, [store.nimber(2)])
    sizes = [e.size for e in enumerate_elements(atlas, 4)]
    assert sizes == sorted(sizes)


def test_element_sum_identity_and_commutativity(store):
    atlas = closure_atoms(store, [store.nimber(2)])
    zero = atlas.zero()
    x = atlas.parse_element("*+*2")
    y = atlas.parse_element("*2")
    assert element_sum(zero, x) == x
    assert element_sum(x, y) == element_sum(y, x)
    assert str(element_sum(x, y)) == "*+2*2"


def test_element_sum_rejects_mixed_atlases(store):
    a = closure_atoms(store, [store.nimber(2)])
    b = closure_atoms(store, [store.nimber(1)])
    with pytest.raises(AtlasMismatchError):
        element_sum(a.zero(), b.zero())


def test_element_from_games_rejects_foreign_games(store):
    atlas = closure_atoms(store, [store.nimber(1)])
    with pytest.raises(ValueError):
        atlas.element([store.one()])


def test_element_outcomes(store):
    flower = blue_mutant_flower(store, {0, 1, 2, 3})
    atlas = closure_atoms(store, [store.nimber(4), flower])
    assert element_outcome(atlas.parse_element("2*2")) is Outcome.P
    assert element_outcome(atlas.zero()) is Outcome.N
    assert element_outcome(atlas.element([flower])) in (Outcome.N, Outcome.L)


def test_fast_path_matches_engine():
    from misere import GameStore

    fast_store = GameStore()
    fast = closure_atoms(fast_store, [fast_store.nimber(8)], fast_path=True)
    slow = closure_atoms(fast_store, [fast_store.nimber(8)], fast_path=False)
    for e_fast, e_slow in zip(enumerate_elements(fast, 6), enumerate_elements(slow, 6)):
        assert fast.outcome(e_fast) is slow.outcome(e_slow), e_fast


def test_sum_generator_yields_same_atlas_as_parts(store):
    one, star = store.one(), store.nimber(1)
    combined = store.sum_as_game((one, star))
    atlas = closure_atoms(store, [combined])
    assert set(atlas.basis) == {one, star}

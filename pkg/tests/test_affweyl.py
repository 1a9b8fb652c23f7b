from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affdemazure.affring import AffWeight, rho_hat
from affdemazure.affweyl import (AffWeylElement, LatticeError, UnsupportedInputError,
                                 affine_reflect, apply_affine_word, dominant_reduce,
                                 element_length, is_affine_dominant, translate,
                                 translation_element)
from affdemazure.rootsys import build_root_system


def bfs_lengths(rs, radius):
    """Cayley-graph distances from the identity, keyed by ``(w, mu)``."""
    e = AffWeylElement.identity(rs)
    gens = [AffWeylElement.simple_reflection(rs, i) for i in range(rs.rank + 1)]
    dist = {(e.w, e.mu): 0}
    queue = deque([e])
    out = [(e, 0)]
    while queue:
        x = queue.popleft()
        d = dist[x.w, x.mu]
        if d == radius:
            continue
        for g in gens:
            y = x * g
            if (y.w, y.mu) not in dist:
                dist[y.w, y.mu] = d + 1
                queue.append(y)
                out.append((y, d + 1))
    return out


def test_r0_on_lambda0():
    for t in ("A1", "A2", "B2", "G2"):
        rs = build_root_system(t)
        got = affine_reflect(rs, 0, AffWeight(rs.zero, 1, 0))
        assert got == AffWeight(rs.highest_root, 1, -1)


def test_reflection_fixed_point():
    rs = build_root_system("A2")
    xi = AffWeight((0, 3), 2, 5)
    assert affine_reflect(rs, 1, xi) == xi


def test_translate_examples():
    rs = build_root_system("A1")
    delta = AffWeight((0,), 0, 1)
    assert translate(rs, (2,), delta) == delta
    assert translate(rs, (-2,), AffWeight((0,), 1, 0)) == AffWeight((-2,), 1, -1)


def test_dominant_reduce_examples():
    rs = build_root_system("A1")
    lam = AffWeight((0,), 1, 0)
    assert dominant_reduce(rs, lam) == (lam, ())
    xi = AffWeight((-2,), 1, 0)
    big, word = dominant_reduce(rs, xi)
    assert len(word) == 2
    assert is_affine_dominant(rs, big) and big.level == 1
    assert apply_affine_word(rs, word, big) == xi
    with pytest.raises(UnsupportedInputError):
        dominant_reduce(rs, AffWeight((2,), 0, 0))


def test_lengths_of_generators():
    for t in ("A1", "A2", "G2"):
        rs = build_root_system(t)
        assert element_length(rs, AffWeylElement.identity(rs)) == 0
        for i in range(rs.rank + 1):
            assert element_length(rs, AffWeylElement.simple_reflection(rs, i)) == 1


def test_translation_element():
    rs = build_root_system("A1")
    assert translation_element(rs, (0,)) == AffWeylElement.identity(rs)
    assert element_length(rs, translation_element(rs, (2,))) == 2
    with pytest.raises(LatticeError):
        translation_element(rs, (1,))


@pytest.mark.parametrize("t,radius", [("A1", 7), ("A2", 5), ("B2", 5), ("G2", 5)])
def test_length_matches_cayley_bfs(t, radius):
    rs = build_root_system(t)
    for x, d in bfs_lengths(rs, radius):
        assert element_length(rs, x) == d
        word = x.reduced_word()
        assert len(word) == d
        assert AffWeylElement.from_word(rs, word) == x


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
def test_tie_breaking_gives_same_element(t):
    rs = build_root_system(t)
    for x, d in bfs_lengths(rs, 4):
        a = x.reduced_word()
        b = x.reduced_word(largest_first=True)
        assert len(a) == len(b) == d
        assert AffWeylElement.from_word(rs, b) == x


@st.composite
def elements_and_weight(draw):
    rs = build_root_system(draw(st.sampled_from(["A1", "A2", "B2", "G2"])))
    letters = st.lists(st.integers(0, rs.rank), max_size=7)
    x = AffWeylElement.from_word(rs, draw(letters))
    y = AffWeylElement.from_word(rs, draw(letters))
    fin = tuple(draw(st.integers(-4, 4)) for _ in range(rs.rank))
    xi = AffWeight(fin, draw(st.integers(0, 3)), draw(st.integers(-3, 3)))
    return rs, x, y, xi


@given(elements_and_weight())
def test_group_law_matches_action(data):
    rs, x, y, xi = data
    assert (x * y).act(xi) == x.act(y.act(xi))
    assert x.inverse().act(x.act(xi)) == xi
    assert (x * x.inverse()) == AffWeylElement.identity(rs)


@given(elements_and_weight())
def test_word_evaluation_agrees_with_elements(data):
    rs, x, _, xi = data
    word = x.reduced_word()
    assert apply_affine_word(rs, word, xi) == x.act(xi)


@given(elements_and_weight())
def test_dominant_reduce_positive_level(data):
    rs, _, _, xi = data
    xi = AffWeight(xi.fin, xi.level + 1, xi.degree)
    big, word = dominant_reduce(rs, xi)
    assert is_affine_dominant(rs, big)
    assert apply_affine_word(rs, word, big) == xi
    # the word is reduced: its length is the element's length
    assert element_length(rs, AffWeylElement.from_word(rs, word)) == len(word)


def test_rho_hat_is_regular_dominant():
    for t in ("A1", "A2", "B2", "G2"):
        rs = build_root_system(t)
        p = rho_hat(rs)
        from affdemazure.affring import affine_pairing
        assert all(affine_pairing(rs, i, p) == 1 for i in range(rs.rank + 1))


def test_str_form():
    rs = build_root_system("A1")
    assert str(AffWeylElement.simple_reflection(rs, 0)) == "r1 · t_(-2)"
    assert str(AffWeylElement.identity(rs)) == "1 · t_(0)"

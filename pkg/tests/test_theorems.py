import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affdemazure.demazure import PreconditionError, demazure_character, demazure_op_word, finite_character
from affdemazure.affring import AffWeight, CharElement
from affdemazure.rootsys import build_root_system
from affdemazure.theorems import (SUITES, FusionSpec, GridConfig, count_S_generating_function,
                                  enumerate_S, exactfg_shift, exactfg_terms, m_plus_weights,
                                  partitions, run_suite, suffix_dominates, v_module_character,
                                  verify_level_constancy, verify_dlk_decomposition, verify_exactfg_graded,
                                  verify_factor_out, verify_hchar_product, verify_mtone_dims,
                                  verify_schur_dominance, verify_xi_tuple, w0_translation,
                                  xi_tuple)

A1, A2 = build_root_system("A1"), build_root_system("A2")


def grade_dims(rs, ell, lam):
    return {g: p.dim() for g, p in demazure_character(rs, ell, lam).pieces().items()}


def test_dlk_examples():
    assert grade_dims(A1, 2, (2,)) == {0: 3}
    assert grade_dims(A1, 1, (2,)) == {0: 3, 1: 1}
    assert grade_dims(A2, 3, (2, 2)) == {0: 27, 1: 8}
    assert verify_dlk_decomposition(A2, 2, 3).passed
    with pytest.raises(PreconditionError):
        verify_dlk_decomposition(A1, 2, 5)


def test_mtone_examples():
    rep = verify_mtone_dims(A1, FusionSpec(2, 1, 1), 1)
    assert rep.passed
    assert verify_mtone_dims(A1, FusionSpec(4, 3, 2, ((2,),)), 2).passed
    assert verify_mtone_dims(A1, FusionSpec(4, 3, 2), 2).passed
    with pytest.raises(PreconditionError):
        verify_mtone_dims(A1, FusionSpec(3, 3, 2), 2)
    with pytest.raises(PreconditionError):
        verify_mtone_dims(A1, FusionSpec(4, 1, 1, ((1,),)), 1)


def test_exactfg_examples():
    rep = verify_exactfg_graded(A1, FusionSpec(4, 2, 2, ((2,),)), 1)
    assert rep.passed and rep.inputs["shift"] == 3
    rep = verify_exactfg_graded(A1, FusionSpec(4, 3, 2, ((2,),)), 2)
    assert rep.passed and rep.inputs["shift"] == 6
    assert verify_exactfg_graded(A2, FusionSpec(3, 2, 2), 3).passed
    # l = m = k = 2 violates m < l, so regime 3 does not apply
    with pytest.raises(PreconditionError):
        verify_exactfg_graded(A2, FusionSpec(2, 2, 2), 3)


def test_exactfg_shift_is_not_solved_for():
    lam = (2,)
    middle, sub, quotient = exactfg_terms(A1, lam, 4, 2, 2, 1)
    s = exactfg_shift(A1, lam, 4, 2, 2, 1)
    from affdemazure.theorems import check_graded_identity
    assert check_graded_identity(middle.graded(), sub.graded(), quotient.graded(), s) is None
    for wrong in (s - 1, s + 1):
        assert check_graded_identity(middle.graded(), sub.graded(), quotient.graded(), wrong)


@pytest.mark.parametrize("rs", [A1, A2], ids=["A1", "A2"])
def test_v_module_shapes_agree_at_m_equal_2k(rs):
    for lam in m_plus_weights(rs, 2):
        for k in (1, 2):
            le = v_module_character(rs, 2 * k + 1, lam, 2 * k, k, shape="le")
            ge = v_module_character(rs, 2 * k + 1, lam, 2 * k, k, shape="ge")
            assert le.graded() == ge.graded()


def test_hchar_examples():
    assert verify_hchar_product(A1, [2], [(2,)], 2, (0,)).passed
    assert verify_hchar_product(A1, [3], [(2,)], 2, (4,)).passed
    assert verify_hchar_product(A2, [2], [(1, 1)], 1, (1, 1)).passed
    with pytest.raises(PreconditionError):
        verify_hchar_product(A1, [1], [(2,)], 2, (0,))
    with pytest.raises(PreconditionError):
        verify_hchar_product(A1, [2], [(1,)], 1, (0,))


def test_schur_examples():
    rep = verify_schur_dominance(A2, (2, 1), (2, 1))
    assert rep.passed
    # suffix sums: (2,) does not dominate (1, 1); the reverse direction holds
    with pytest.raises(PreconditionError):
        verify_schur_dominance(A1, (2,), (1, 1))
    assert verify_schur_dominance(A1, (1, 1), (2,)).passed


def test_partitions_and_suffix_sums():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert suffix_dominates((1, 1), (2,))
    assert not suffix_dominates((2,), (1, 1))


def test_level_constancy_and_factor_out():
    assert verify_level_constancy(A2, 2, (1, 1)).passed
    rep = verify_factor_out(A1, (2,), 1, 0, (1,))
    assert rep.passed


def test_factor_out_is_false_before_specializing_delta():
    # a counterexample to the unspecialized identity: it only holds modulo e^delta = 1
    word = w0_translation(A1, (2,)).reduced_word()
    base = CharElement.monomial(AffWeight((0,), 1, 0))
    chv = finite_character(A1, (1,))
    lhs = demazure_op_word(A1, word, base * chv)
    rhs = demazure_op_word(A1, word, base) * chv
    assert lhs != rhs
    assert lhs.specialize_delta() == rhs.specialize_delta()
    assert verify_factor_out(A1, (2,), 1, 0, (1,)).inputs["exact_before_specialization"] is False


def test_xi_examples():
    xi = xi_tuple(A2, FusionSpec(2, 2, 1))
    th = A2.highest_root
    assert xi[th] == (2,)
    for a in A2.simple_roots:
        assert xi[a] == (1,)
    assert xi_tuple(A2, FusionSpec(3, 3, 1))[th] == (2,)
    assert verify_xi_tuple(A2, FusionSpec(2, 2, 1, (th,))).passed
    with pytest.raises(PreconditionError):
        xi_tuple(A2, FusionSpec(2, 3, 1))


@pytest.mark.parametrize("t", ["A1", "A2", "B2", "G2", "B3", "C3"])
def test_xi_invariants(t):
    rs = build_root_system(t)
    for lam in m_plus_weights(rs, 2):
        for ell, m, k in itertools.product(range(1, 5), repeat=3):
            if not ell >= m >= k:
                continue
            spec = FusionSpec(ell, m, k, (lam,))
            assert verify_xi_tuple(rs, spec).passed


def test_enumerate_S_examples():
    assert enumerate_S(3, 0) == [(3,)]
    assert enumerate_S(2, 1) == [(1, 1)]
    assert enumerate_S(2, 2) == [(0, 2, 0), (1, 0, 1)]
    assert enumerate_S(0, 0) == [(0,)]
    assert enumerate_S(0, 2) == []
    with pytest.raises(ValueError):
        enumerate_S(-1, 0)


def brute_S(r, s, mode, K):
    out = []
    for b in itertools.product(range(r + 1), repeat=s + 1):
        if sum(b) != r or sum(p * x for p, x in enumerate(b)) != s:
            continue
        if mode == "upper_K" and any(b[p] for p in range(K, s + 1)):
            continue
        if mode == "lower_K" and any(b[p] for p in range(min(K, s + 1))):
            continue
        out.append(b)
    return out


@given(st.integers(0, 4), st.integers(0, 5), st.sampled_from(["all", "upper_K", "lower_K"]),
       st.integers(0, 6))
def test_enumerate_S_against_brute_force_and_series(r, s, mode, K):
    got = enumerate_S(r, s, mode, K)
    assert got == sorted(set(got))
    assert got == brute_S(r, s, mode, K)
    assert len(got) == count_S_generating_function(r, s, mode, K)


def test_grid_config():
    g = GridConfig.from_mapping({"max_level": 2, "types": ["A1"]})
    assert g.max_level == 2 and g.types == ("A1",)
    with pytest.raises(ValueError):
        GridConfig.from_mapping({"nope": 1})


@pytest.mark.parametrize("suite", SUITES)
def test_fault_injection_is_detected(suite):
    grid = GridConfig(types=("A1",), fusion_types=("A1",), max_level=3, max_k=2, max_m=2,
                      finite_coord_sum=2, word_length=4, length_bound=2, schur_n=3, s_max=3)
    clean = run_suite(suite, grid)
    faulty = run_suite(suite, grid, fault=True)
    assert clean and all(r.passed for r in clean)
    assert len(faulty) == len(clean)
    assert all(not r.passed and r.witness for r in faulty)


def test_reports_are_deterministic_and_sampled():
    a = run_suite("xi", seed=3, sample=10)
    b = run_suite("xi", seed=3, sample=10)
    assert [r.to_json(timing=False) for r in a] == [r.to_json(timing=False) for r in b]
    assert len(a) == 10 and all(r.seed == 3 for r in a)

from __future__ import annotations

import numpy as np
import pytest

from charbound.grouprep import (GroupSpec, Representation, adjoint_operator,
                                evaluate_word, random_representation,
                                relator_residual)
from charbound.tangent import (NewtonConvergenceError,
                               finite_difference_jacobian, fox_matrix,
                               fox_selftest_deviation, newton_refine,
                               random_selftest_pair, relator_jacobian,
                               tangent_report)
from charbound.words import GroupPresentation, Word, free_reduce, parse_word
from conftest import fixture_path, random_sl
from charbound import load_document

GENS = ("a", "b")
SL2 = GroupSpec(2)
SL3 = GroupSpec(3)


def random_rep(seed, n=2, k=2):
    p = GroupPresentation(tuple("abcd"[:k]))
    return random_representation(p, GroupSpec(n), seed=seed)


def random_reduced_word(rng, num_gens=2, max_len=10) -> Word:
    while True:
        letters = tuple(
            (int(rng.integers(0, num_gens)), int(rng.choice((1, -1))))
            for _ in range(int(rng.integers(1, max_len + 1)))
        )
        w = free_reduce(Word(letters))
        if w:
            return w


def test_fox_base_cases():
    for n in (2, 3):
        rep = random_rep(0, n=n)
        d = n * n - 1
        g = Word(((0, 1),))
        assert np.allclose(fox_matrix(g, 0, rep), np.eye(d))
        assert np.allclose(fox_matrix(g, 1, rep), np.zeros((d, d)))


def test_fox_inverse_letter():
    rep = random_rep(1)
    ginv = Word(((0, -1),))
    expected = -adjoint_operator(np.linalg.inv(rep.images[0]))
    assert np.allclose(fox_matrix(ginv, 0, rep), expected)


def test_fox_product_rule():
    rng = np.random.default_rng(2)
    rep = random_rep(3)
    for _ in range(30):
        u = random_reduced_word(rng)
        v = random_reduced_word(rng)
        uv = free_reduce(Word(u.letters + v.letters))
        for gen in (0, 1):
            lhs = fox_matrix(uv, gen, rep)
            rhs = (fox_matrix(u, gen, rep)
                   + adjoint_operator(evaluate_word(u, rep))
                   @ fox_matrix(v, gen, rep))
            assert np.max(np.abs(lhs - rhs)) < 1e-10 * max(1, np.max(np.abs(rhs)))


def test_fox_rejects_unreduced():
    rep = random_rep(4)
    with pytest.raises(ValueError):
        fox_matrix(Word(((0, 1), (0, -1))), 0, rep)


def test_relator_jacobian_free_group():
    rep = random_rep(5, n=3, k=2)
    p = GroupPresentation(GENS)
    J = relator_jacobian(p, rep)
    assert J.shape == (0, 16)


def test_relator_jacobian_trivial_rep_commutator():
    p = GroupPresentation(GENS, (parse_word("abAB", GENS),))
    rep = Representation(SL2, (np.eye(2), np.eye(2)))
    J = relator_jacobian(p, rep)
    # Ad is trivial, so the commutator derivatives cancel exactly
    assert np.max(np.abs(J)) == 0.0
    report = tangent_report(p, rep)
    assert report.dim_Z1 == 6
    assert report.dim_B1 == 0


def test_finite_difference_agreement_small():
    for seed in range(5):
        p, rep = random_selftest_pair(seed)
        assert fox_selftest_deviation(p, rep) < 1e-6


def test_finite_difference_shapes():
    p, rep = random_selftest_pair(12)
    J = relator_jacobian(p, rep)
    F = finite_difference_jacobian(p, rep)
    assert J.shape == F.shape


def test_newton_exact_input_unchanged(fig8_sl2_doc):
    doc = fig8_sl2_doc
    refined = newton_refine(doc.presentation, doc.representation)
    for a, b in zip(refined.images, doc.representation.images):
        assert np.array_equal(a, b)


def test_newton_recovers_from_perturbation(fig8_sl2_doc):
    doc = fig8_sl2_doc
    rng = np.random.default_rng(6)
    noisy = tuple(
        m + 1e-4 * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        for m in doc.representation.images
    )
    rep = Representation(SL2, noisy)
    assert relator_residual(doc.presentation, rep) > 1e-6
    refined = newton_refine(doc.presentation, rep)
    assert relator_residual(doc.presentation, refined) < 1e-12
    assert refined.max_det_deviation() < 1e-12


def test_newton_far_point_fails(fig8_sl2_doc):
    doc = fig8_sl2_doc
    rep = random_representation(doc.presentation, SL2, seed=7)
    with pytest.raises(NewtonConvergenceError) as info:
        newton_refine(doc.presentation, rep)
    assert info.value.last_residual > 0


def test_newton_basin_guard_none_skips_entry_check(fig8_sl2_doc):
    doc = fig8_sl2_doc
    rng = np.random.default_rng(8)
    noisy = tuple(
        m + 5e-2 * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        for m in doc.representation.images
    )
    rep = Representation(SL2, noisy)
    with pytest.raises(NewtonConvergenceError):
        newton_refine(doc.presentation, rep, basin_guard=1e-3)
    refined = newton_refine(doc.presentation, rep, basin_guard=None)
    assert relator_residual(doc.presentation, refined) < 1e-12


def test_tangent_report_free_groups():
    for n in (2, 3):
        d = n * n - 1
        for k in (2, 3):
            rep = random_rep(9 + k, n=n, k=k)
            p = GroupPresentation(tuple("abcd"[:k]))
            report = tangent_report(p, rep)
            assert report.jacobian_rank == 0
            assert report.dim_Z1 == k * d
            assert report.dim_B1 == d
            assert report.dim_H1 == (k - 1) * d
            assert report.deficiency_floor == k * d
            assert report.reliable is True


def test_tangent_report_trivial_rep_has_no_coboundaries():
    p = GroupPresentation(GENS, (parse_word("abAbaBAbAB", GENS),))
    rep = Representation(SL2, (np.eye(2), np.eye(2)))
    assert tangent_report(p, rep).dim_B1 == 0


def test_tangent_report_requires_solution():
    p = GroupPresentation(GENS, (parse_word("abAB", GENS),))
    rep = random_rep(10)
    with pytest.raises(ValueError):
        tangent_report(p, rep)


def test_tangent_report_figure_eight(fig8_sl2_doc):
    doc = fig8_sl2_doc
    report = tangent_report(doc.presentation, doc.representation)
    assert report.jacobian_rank == 2
    assert report.dim_Z1 == 4
    assert report.dim_B1 == 3
    assert report.dim_H1 == 1
    assert report.deficiency_floor == 3
    assert report.dim_Z1 >= report.deficiency_floor
    assert report.reliable is True
    assert report.singular_values_margin >= 10


def test_tangent_report_stable_under_rerefinement(fig8_sl2_doc):
    doc = fig8_sl2_doc
    p = doc.presentation
    first = newton_refine(p, doc.representation)
    again = newton_refine(p, first)
    a = tangent_report(p, first)
    b = tangent_report(p, again)
    assert (a.jacobian_rank, a.dim_Z1, a.dim_B1, a.dim_H1) == \
        (b.jacobian_rank, b.dim_Z1, b.dim_B1, b.dim_H1)


def test_tangent_dims_conjugation_invariant(fig8_sl2_doc):
    doc = fig8_sl2_doc
    p = doc.presentation
    base = tangent_report(p, doc.representation)
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = random_sl(rng, 2)
        conj = doc.representation.conjugate(g)
        conj = newton_refine(p, conj)  # conjugation inflates roundoff
        rep = tangent_report(p, conj)
        assert (rep.jacobian_rank, rep.dim_Z1, rep.dim_B1, rep.dim_H1) == \
            (base.jacobian_rank, base.dim_Z1, base.dim_B1, base.dim_H1)


def test_commuting_pair_tangent_dimension():
    # rank-2 Jacobian at a regular semisimple commuting pair: the
    # remaining singular values vanish identically, so the margin is inf
    p = GroupPresentation(GENS, (parse_word("abAB", GENS),))
    rep = Representation(SL2, (np.diag([2.0, 0.5]), np.diag([4.0, 0.25])))
    report = tangent_report(p, rep)
    assert report.dim_Z1 == 4
    assert report.singular_values_margin == float("inf")

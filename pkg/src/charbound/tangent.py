"""Fox calculus Jacobians, Newton refinement, and tangent-space dimensions.

The differential of the relator evaluation map at a representation is
assembled from Fox derivatives evaluated through the adjoint action; its
nullspace is the cocycle space Z^1 of the group with coefficients in the
Lie algebra.  Tangent directions are measured by left translation: the
perturbation of a generator image A is exp(eps X) A for X trace-zero, and a
word's perturbation is read off as (d/deps rho_eps(w)) rho(w)^{-1}.  This
makes the Jacobian exact at every representation, not only at solutions,
which the finite-difference cross-check exploits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cxla
from .grouprep import (GroupSpec, Representation, adjoint_operator,
                       evaluate_word, project_det, random_representation,
                       relator_residual, sl_basis, sl_coords)
from .structure import centralizer_dim
from .words import GroupPresentation, Word, free_reduce, is_reduced

__all__ = [
    "TangentReport",
    "NewtonConvergenceError",
    "fox_matrix",
    "relator_jacobian",
    "finite_difference_jacobian",
    "newton_refine",
    "tangent_report",
    "random_selftest_pair",
    "fox_selftest_deviation",
    "MARGIN_CERTIFIED",
    "RESIDUAL_CERT_BOUND",
]

#: A rank decision is certified only if kept/dropped singular values are
#: separated by at least this factor.
MARGIN_CERTIFIED = 10.0

#: Residual below which a representation counts as a point of Hom for
#: dimension reporting.
RESIDUAL_CERT_BOUND = 1e-9

DEFAULT_NEWTON_TOL = 1e-12
DEFAULT_NEWTON_MAX_ITER = 50
DEFAULT_BASIN_GUARD = 1e-2


class NewtonConvergenceError(RuntimeError):
    """Newton refinement failed; carries the last residual seen."""

    def __init__(self, last_residual: float, message: str):
        self.last_residual = last_residual
        super().__init__(f"{message} (last residual {last_residual:.3e})")


@dataclass(frozen=True)
class TangentReport:
    """Dimensions at one representation.  All dimensions are complex.

    dim_Z1 = d m1 - jacobian_rank is the cocycle space dimension,
    dim_B1 = d - (centralizer dim of the full image) the coboundaries,
    dim_H1 their difference.  deficiency_floor = d (m1 - m2) is the a
    priori lower bound on dim_Z1 from counting equations.  reliable is
    false when the singular-value margin is below MARGIN_CERTIFIED or the
    realified rank came out odd (both mean the rank decision is suspect).
    """

    jacobian_rank: int
    dim_Z1: int
    dim_B1: int
    dim_H1: int
    deficiency_floor: int
    singular_values_margin: float
    reliable: bool


def fox_matrix(w: Word, gen_index: int, rep: Representation) -> np.ndarray:
    """Fox derivative of w by generator gen_index, evaluated through Ad(rho).

    Returns the d x d operator on trace-zero matrices
        sum over positive occurrences of Ad(rho(prefix before the letter))
      - sum over inverse occurrences of Ad(rho(prefix through the letter)).
    """
    if not is_reduced(w):
        raise ValueError("fox_matrix expects a freely reduced word")
    n = rep.spec.n
    d = rep.spec.d
    invs = {k: cxla.inverse(rep.images[k]) for k, s in w.letters if s == -1}
    D = np.zeros((d, d), dtype=np.complex128)
    P = np.eye(n, dtype=np.complex128)
    for k, s in w.letters:
        if s == 1:
            if k == gen_index:
                D += adjoint_operator(P)
            P = P @ rep.images[k]
        else:
            P = P @ invs[k]
            if k == gen_index:
                D -= adjoint_operator(P)
    return D


def relator_jacobian(p: GroupPresentation, rep: Representation) -> np.ndarray:
    """d m2 x d m1 block matrix of Fox derivatives; nullspace = Z^1."""
    d = rep.spec.d
    m1 = p.num_generators
    if not p.relators:
        return np.zeros((0, d * m1), dtype=np.complex128)
    blocks = [
        [fox_matrix(rel, j, rep) for j in range(m1)] for rel in p.relators
    ]
    return np.block(blocks)


def finite_difference_jacobian(p: GroupPresentation, rep: Representation,
                               step: float = 1e-7) -> np.ndarray:
    """Central-difference Jacobian of the relator map, same layout as
    relator_jacobian.  Perturbs each generator image A to (I + eps X) A
    along trace-zero directions X and right-translates the difference
    quotient by rho(r)^{-1}; even-order errors cancel, so agreement with
    the analytic Jacobian holds at any representation.
    """
    n = rep.spec.n
    d = rep.spec.d
    m1 = rep.num_generators
    basis = sl_basis(n)
    base_invs = [cxla.inverse(evaluate_word(rel, rep)) for rel in p.relators]
    eye = np.eye(n, dtype=np.complex128)
    cols = []
    for j in range(m1):
        for X in basis:
            col = []
            for sign in (+1, -1):
                images = list(rep.images)
                images[j] = (eye + sign * step * X) @ images[j]
                # bypass Representation's det guard: (I + eps X) drifts det
                # by O(eps^2) only, but keep the raw product evaluation
                col.append([_evaluate_raw(rel, images) for rel in p.relators])
            plus, minus = col
            entries = []
            for rel_idx in range(len(p.relators)):
                delta = (plus[rel_idx] - minus[rel_idx]) / (2.0 * step)
                entries.append(sl_coords(delta @ base_invs[rel_idx]))
            cols.append(np.concatenate(entries) if entries
                        else np.zeros(0, dtype=np.complex128))
    if not p.relators:
        return np.zeros((0, d * m1), dtype=np.complex128)
    return np.column_stack(cols)


def _evaluate_raw(w: Word, images: list) -> np.ndarray:
    n = images[0].shape[0]
    out = np.eye(n, dtype=np.complex128)
    inv_cache: dict = {}
    for k, s in w.letters:
        if s == 1:
            out = out @ images[k]
        else:
            if k not in inv_cache:
                inv_cache[k] = np.linalg.inv(images[k])
            out = out @ inv_cache[k]
    return out


def _ambient_system(p: GroupPresentation, rep: Representation):
    """Residual vector and Jacobian of the relator + determinant equations
    in ambient coordinates (all matrix entries, row-major per generator).

    Word-map derivative per letter occurrence, with P = prefix product and
    S = suffix product: positive letters contribute kron(P, S^T), inverse
    letters -kron(P', S'^T) with P', S' the products including the letter.
    Everything is polynomial in the entries, so the complex (holomorphic)
    Newton step is valid.
    """
    n = rep.spec.n
    nn = n * n
    m1 = rep.num_generators
    imgs = list(rep.images)
    invs = [cxla.inverse(m) for m in imgs]
    num_rows = nn * len(p.relators) + m1
    J = np.zeros((num_rows, nn * m1), dtype=np.complex128)
    F = np.zeros(num_rows, dtype=np.complex128)
    eye = np.eye(n, dtype=np.complex128)
    for ri, rel in enumerate(p.relators):
        mats = [imgs[k] if s == 1 else invs[k] for k, s in rel.letters]
        length = len(mats)
        prefixes = [eye]
        for m in mats:
            prefixes.append(prefixes[-1] @ m)
        suffixes = [eye] * (length + 1)
        for t in range(length - 1, -1, -1):
            suffixes[t] = mats[t] @ suffixes[t + 1]
        F[ri * nn:(ri + 1) * nn] = (prefixes[length] - eye).reshape(-1)
        for t, (k, s) in enumerate(rel.letters):
            if s == 1:
                block = np.kron(prefixes[t], suffixes[t + 1].T)
            else:
                block = -np.kron(prefixes[t + 1], suffixes[t].T)
            J[ri * nn:(ri + 1) * nn, k * nn:(k + 1) * nn] += block
    base = nn * len(p.relators)
    for g in range(m1):
        det = np.linalg.det(imgs[g])
        F[base + g] = det - 1.0
        J[base + g, g * nn:(g + 1) * nn] = det * invs[g].T.reshape(-1)
    return F, J


def _total_residual(p: GroupPresentation, rep: Representation) -> float:
    return max(relator_residual(p, rep), rep.max_det_deviation())


def newton_refine(p: GroupPresentation, rep: Representation,
                  tol_residual: float = DEFAULT_NEWTON_TOL,
                  max_iter: int = DEFAULT_NEWTON_MAX_ITER,
                  basin_guard: "float | None" = DEFAULT_BASIN_GUARD,
                  ) -> Representation:
    """Refine rep onto the solution set of the relator equations.

    Minimum-norm least-squares Newton steps on the ambient system, with
    every image re-projected to determinant 1 after each step.  An input
    already at tolerance is returned unchanged.  basin_guard rejects
    starting points with residual above the guard (pass None to skip, e.g.
    for survey perturbations that are known rough but safe).
    """
    n = rep.spec.n
    nn = n * n
    res = _total_residual(p, rep)
    if basin_guard is not None and res > basin_guard:
        raise NewtonConvergenceError(
            res, f"starting residual exceeds the basin guard {basin_guard:g}"
        )
    cur = rep
    for _ in range(max_iter):
        if res < tol_residual:
            return cur
        F, J = _ambient_system(p, cur)
        step = cxla.least_squares_step(J, F)
        images = []
        for g in range(cur.num_generators):
            m = cur.images[g] + step[g * nn:(g + 1) * nn].reshape(n, n)
            images.append(project_det(m))
        cur = Representation(cur.spec, tuple(images))
        res = _total_residual(p, cur)
    if res < tol_residual:
        return cur
    raise NewtonConvergenceError(
        res, f"no convergence within {max_iter} iterations"
    )


def random_selftest_pair(seed: int):
    """Seeded random (presentation, representation) pair for the
    Fox-vs-finite-difference comparison: up to 3 generators, 1 or 2
    relators of length <= 12, n in {2, 3}.  The representation need not
    satisfy the relators; the comparison is valid at any point.

    Images are special-unitary so word products stay at norm O(1); with
    unnormalized draws the products reach ~1e5 and the cancellation noise
    of the difference quotient alone would swamp an absolute threshold.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    num_gens = int(rng.integers(1, 4))
    num_rels = int(rng.integers(1, 3))
    names = tuple("abc"[:num_gens])
    relators = []
    while len(relators) < num_rels:
        length = int(rng.integers(2, 13))
        letters = tuple(
            (int(rng.integers(0, num_gens)), int(rng.choice((1, -1))))
            for _ in range(length)
        )
        w = free_reduce(Word(letters))
        if w:
            relators.append(w)
    p = GroupPresentation(names, tuple(relators))
    images = []
    for _ in range(num_gens):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        q, r = np.linalg.qr(g)
        q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
        images.append(project_det(q))
    rep = Representation(GroupSpec(n=n), tuple(images))
    return p, rep


def fox_selftest_deviation(p: GroupPresentation, rep: Representation,
                           step: float = 1e-7) -> float:
    """Max absolute entry deviation between the analytic and
    central-difference Jacobians."""
    analytic = relator_jacobian(p, rep)
    numeric = finite_difference_jacobian(p, rep, step)
    if analytic.size == 0:
        return 0.0
    return float(np.max(np.abs(analytic - numeric)))


def tangent_report(p: GroupPresentation, rep: Representation,
                   tol: float = cxla.DEFAULT_RANK_TOL) -> TangentReport:
    """Ranks and dimensions at a representation satisfying the relators.

    The rank is decided on the realified Jacobian [[Re, -Im], [Im, Re]],
    whose rank is twice the complex rank; an odd real rank means the
    threshold fell inside a split complex pair and flags the report
    unreliable, as does a kept/dropped singular value margin below
    MARGIN_CERTIFIED.  Reported dimensions are complex dimensions.
    """
    res = relator_residual(p, rep)
    if res >= RESIDUAL_CERT_BOUND:
        raise ValueError(
            f"relator residual {res:.3e} exceeds the certification bound "
            f"{RESIDUAL_CERT_BOUND:g}; refine the representation first"
        )
    spec = rep.spec
    d = spec.d
    m1 = p.num_generators
    m2 = p.num_relators
    J = relator_jacobian(p, rep)
    realified = np.block([[J.real, -J.imag], [J.imag, J.real]])
    real_rank, margin = cxla.rank_and_margin(realified, tol)
    even = real_rank % 2 == 0
    rank = real_rank // 2
    dim_Z1 = d * m1 - rank
    dim_B1 = d - centralizer_dim(list(rep.images), spec, tol)
    return TangentReport(
        jacobian_rank=rank,
        dim_Z1=dim_Z1,
        dim_B1=dim_B1,
        dim_H1=dim_Z1 - dim_B1,
        deficiency_floor=d * (m1 - m2),
        singular_values_margin=margin,
        reliable=even and margin >= MARGIN_CERTIFIED,
    )

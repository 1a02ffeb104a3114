"""Hypothesis checks at a representation.

Centralizer dimension in the trace-zero Lie algebra, regularity of
commutative (peripheral) subgroups, irreducibility via the Burnside span
criterion, and the length-ordered search for a companion element that makes
a peripheral subgroup irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cxla
from .grouprep import (GroupSpec, Representation, evaluate_word, sl_basis)
from .words import TORUS, GroupPresentation, Word, free_reduce

__all__ = [
    "StructureReport",
    "NonCommutingPeripheralError",
    "CompanionSearchError",
    "centralizer_dim",
    "is_regular",
    "is_irreducible_burnside",
    "find_companion",
    "analyze_structure",
]

#: Relative tolerance for the pairwise-commutation precondition of
#: regularity checks.  Certified representations commute far below this.
COMMUTE_TOL = 1e-8

DEFAULT_COMPANION_MAX_LEN = 6


class NonCommutingPeripheralError(ValueError):
    """A torus peripheral subgroup was handed non-commuting images."""


class CompanionSearchError(RuntimeError):
    """The companion search exhausted its length cap without success.

    This bounds only the search; it says nothing about longer words.
    """

    def __init__(self, max_len: int):
        self.max_len = max_len
        super().__init__(
            f"no companion word of length <= {max_len} makes the peripheral "
            "subgroup irreducible; the cap bounds the search, not existence"
        )


@dataclass(frozen=True)
class StructureReport:
    centralizer_dim_full_image: int
    peripheral_centralizer_dims: tuple
    irreducible: bool
    boundary_regular: bool
    companion_word: "Word | None" = None


def centralizer_dim(mats, spec: GroupSpec, tol: float = cxla.DEFAULT_RANK_TOL) -> int:
    """dim of {X in sl(n) : X A_i = A_i X for all i}.

    Columns of the stacked operator are commutators [B_k, A_i] of the
    trace-zero basis elements, vectorized; its nullspace is the centralizer.
    """
    mats = [cxla.as_matrix(m) for m in mats]
    n = spec.n
    for m in mats:
        if m.shape != (n, n):
            raise ValueError(f"expected ({n}, {n}) matrices, got {m.shape}")
    if not mats:
        return spec.d
    basis = sl_basis(n)
    cols = []
    for b in basis:
        cols.append(np.concatenate([(b @ a - a @ b).reshape(-1) for a in mats]))
    op = np.column_stack(cols)
    return cxla.nullspace_dim(op, tol)


def _check_commuting(mats) -> None:
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            a, b = mats[i], mats[j]
            dev = np.linalg.norm(a @ b - b @ a)
            scale = max(1.0, float(np.linalg.norm(a) * np.linalg.norm(b)))
            if dev > COMMUTE_TOL * scale:
                raise NonCommutingPeripheralError(
                    f"peripheral images {i} and {j} do not commute "
                    f"(relative deviation {dev / scale:.3e})"
                )


def is_regular(peripheral_images, spec: GroupSpec,
               tol: float = cxla.DEFAULT_RANK_TOL) -> bool:
    """True iff the commuting set's centralizer has the minimal dim r + z."""
    mats = [cxla.as_matrix(m) for m in peripheral_images]
    _check_commuting(mats)
    return centralizer_dim(mats, spec, tol) == spec.r + spec.z


def _orthonormal_rows(rows: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis (as rows) of the row span, via SVD."""
    if rows.size == 0:
        return rows.reshape(0, rows.shape[1])
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return rows[:0]
    return vh[s > tol * s[0]]


def is_irreducible_burnside(mats, spec: GroupSpec,
                            tol: float = cxla.DEFAULT_RANK_TOL) -> bool:
    """Burnside criterion: the algebra generated by the inputs is all of
    M_n(C) iff the inputs have no common proper invariant subspace.

    Grows the span of products from {I} union inputs by right-multiplying
    the current span basis by the inputs, re-orthonormalizing each round;
    stabilization is the normal exit, with a hard cap of 2 n^2 rounds.
    """
    mats = [cxla.as_matrix(m) for m in mats]
    if not mats:
        raise ValueError("irreducibility needs at least one matrix")
    n = spec.n
    for m in mats:
        if m.shape != (n, n):
            raise ValueError(f"expected ({n}, {n}) matrices, got {m.shape}")
    seed_rows = np.vstack([np.eye(n, dtype=np.complex128).reshape(1, -1)]
                          + [m.reshape(1, -1) for m in mats])
    basis = _orthonormal_rows(seed_rows, tol)
    for _ in range(2 * n * n):
        dim = basis.shape[0]
        if dim == n * n:
            return True
        products = [
            (b.reshape(n, n) @ m).reshape(-1) for b in basis for m in mats
        ]
        basis = _orthonormal_rows(np.vstack([basis, np.array(products)]), tol)
        if basis.shape[0] == dim:
            break
    return basis.shape[0] == n * n


def _reduced_words_of_length(length: int, num_gens: int):
    """Freely reduced words of exactly this length, in length-lex order.

    Letter order per generator index: the generator before its inverse
    (a < A < b < B ...).
    """
    alphabet = [(k, s) for k in range(num_gens) for s in (1, -1)]

    def extend(prefix):
        if len(prefix) == length:
            yield Word(tuple(prefix))
            return
        last = prefix[-1] if prefix else None
        for letter in alphabet:
            if last is not None and last[0] == letter[0] and last[1] == -letter[1]:
                continue
            yield from extend(prefix + [letter])

    yield from extend([])


def find_companion(p: GroupPresentation, rep: Representation, torus_index: int = 0,
                   max_len: int = DEFAULT_COMPANION_MAX_LEN,
                   tol: float = cxla.DEFAULT_RANK_TOL) -> Word:
    """Shortest word g (length-lex order) whose image, together with the
    torus peripheral images, generates an irreducible matrix set."""
    if not 0 <= torus_index < len(p.peripheral):
        raise ValueError(f"torus_index {torus_index} out of range "
                         f"({len(p.peripheral)} peripheral markings)")
    marking = p.peripheral[torus_index]
    if marking.kind != TORUS:
        raise ValueError(f"peripheral marking {torus_index} is not a torus")
    peripheral_images = [evaluate_word(w, rep) for w in marking.words]
    for length in range(1, max_len + 1):
        for cand in _reduced_words_of_length(length, p.num_generators):
            img = evaluate_word(cand, rep)
            if is_irreducible_burnside(peripheral_images + [img], rep.spec, tol):
                return free_reduce(cand)
    raise CompanionSearchError(max_len)


def analyze_structure(p: GroupPresentation, rep: Representation,
                      tol: float = cxla.DEFAULT_RANK_TOL,
                      companion_max_len: "int | None" = None) -> StructureReport:
    """Full-image irreducibility plus per-torus regularity.

    boundary_regular is vacuously true with no torus markings.  A companion
    search for torus 0 runs only when companion_max_len is given; its
    failure leaves companion_word unset rather than failing the report.
    """
    cdim = centralizer_dim(list(rep.images), rep.spec, tol)
    irreducible = is_irreducible_burnside(list(rep.images), rep.spec, tol)
    peripheral_dims = []
    boundary_regular = True
    for marking in p.peripheral:
        if marking.kind != TORUS:
            continue
        mats = [evaluate_word(w, rep) for w in marking.words]
        _check_commuting(mats)
        pdim = centralizer_dim(mats, rep.spec, tol)
        peripheral_dims.append(pdim)
        if pdim != rep.spec.r + rep.spec.z:
            boundary_regular = False
    companion = None
    if companion_max_len is not None and p.torus_count > 0:
        try:
            companion = find_companion(p, rep, 0, companion_max_len, tol)
        except CompanionSearchError:
            companion = None
    return StructureReport(
        centralizer_dim_full_image=cdim,
        peripheral_centralizer_dims=tuple(peripheral_dims),
        irreducible=irreducible,
        boundary_regular=boundary_regular,
        companion_word=companion,
    )

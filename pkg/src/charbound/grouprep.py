"""Target-group data and representations of finitely presented groups.

A representation assigns one unimodular n x n complex matrix to each
generator of a presentation.  This module evaluates words under such an
assignment, measures relator residuals, builds the irreducible embedding
SL(2) -> SL(n) on symmetric powers, and draws seeded random representations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import cxla
from .words import GroupPresentation, Word

__all__ = [
    "GroupSpec",
    "Representation",
    "evaluate_word",
    "relator_residual",
    "sym_power_embedding",
    "random_representation",
    "project_det",
    "sl_basis",
    "sl_coords",
    "adjoint_operator",
]

#: Construction-time sanity cap on |det - 1|.  Deliberately loose: points in
#: a Newton basin or a survey perturbation are still representable; strict
#: unimodularity is enforced where certification needs it.
DET_SANITY_TOL = 0.5


@dataclass(frozen=True)
class GroupSpec:
    """Numerical invariants of the target group SL(n, C).

    d = dimension, r = rank of the semisimple part, z = center dimension.
    Only the SL family is implemented; d, r, z are stored explicitly so
    other reductive targets remain a documented extension point.
    """

    n: int
    family: str = "SL"
    d: int = field(init=False)
    r: int = field(init=False)
    z: int = field(init=False)

    def __post_init__(self):
        if self.family != "SL":
            raise ValueError(f"unsupported group family {self.family!r}; only SL")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        object.__setattr__(self, "d", self.n * self.n - 1)
        object.__setattr__(self, "r", self.n - 1)
        object.__setattr__(self, "z", 0)


@dataclass(frozen=True)
class Representation:
    """Generator-indexed matrix images, immutable after construction."""

    spec: GroupSpec
    images: tuple

    def __post_init__(self):
        images = tuple(cxla.as_matrix(m) for m in self.images)
        object.__setattr__(self, "images", images)
        n = self.spec.n
        for k, m in enumerate(images):
            if m.shape != (n, n):
                raise ValueError(
                    f"image {k} has shape {m.shape}, expected ({n}, {n})"
                )
            dev = abs(np.linalg.det(m) - 1.0)
            if dev > DET_SANITY_TOL:
                raise ValueError(
                    f"image {k} has |det - 1| = {dev:.3e}; not close to SL({n})"
                )

    @property
    def num_generators(self) -> int:
        return len(self.images)

    def max_det_deviation(self) -> float:
        return max(
            (abs(np.linalg.det(m) - 1.0) for m in self.images), default=0.0
        )

    def inverses(self) -> tuple:
        return tuple(cxla.inverse(m) for m in self.images)

    def conjugate(self, g: np.ndarray) -> "Representation":
        ginv = cxla.inverse(g)
        return Representation(self.spec, tuple(g @ m @ ginv for m in self.images))


def evaluate_word(w: Word, rep: Representation) -> np.ndarray:
    """Product of generator images along the word; empty word -> identity."""
    n = rep.spec.n
    out = np.eye(n, dtype=np.complex128)
    inv_cache: dict = {}
    for k, s in w.letters:
        if k >= rep.num_generators:
            raise ValueError(f"word uses generator index {k}; representation has "
                             f"{rep.num_generators} images")
        if s == 1:
            out = out @ rep.images[k]
        else:
            if k not in inv_cache:
                inv_cache[k] = cxla.inverse(rep.images[k])
            out = out @ inv_cache[k]
    return out


def relator_residual(p: GroupPresentation, rep: Representation) -> float:
    """max over relators of the Frobenius distance of the image from I."""
    n = rep.spec.n
    eye = np.eye(n)
    worst = 0.0
    for rel in p.relators:
        worst = max(worst, float(np.linalg.norm(evaluate_word(rel, rep) - eye)))
    return worst


def sym_power_embedding(m: np.ndarray, n: int) -> np.ndarray:
    """Action of a 2x2 unimodular matrix on degree-(n-1) binary forms.

    Basis: monomials x^{n-1}, x^{n-2} y, ..., y^{n-1}.  The matrix
    [[a, b], [c, d]] substitutes x -> a x + c y, y -> b x + d y, so the
    assignment is a homomorphism and unipotent inputs give integer output
    matrices.  Result has determinant 1 (det(m)^{(n-1)n/2} for det(m) = 1).
    """
    if n < 2:
        raise ValueError(f"target size must be >= 2, got {n}")
    m = cxla.as_matrix(m)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    det_dev = abs(np.linalg.det(m) - 1.0)
    if det_dev > 1e-8:
        raise ValueError(f"|det - 1| = {det_dev:.3e}; input must be unimodular")
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    deg = n - 1
    out = np.zeros((n, n), dtype=np.complex128)
    for col in range(n):
        # image of x^(deg-col) y^col = (a x + c y)^(deg-col) (b x + d y)^col
        p = deg - col
        for i in range(p + 1):
            ci = comb(p, i) * a ** (p - i) * c ** i
            for j in range(col + 1):
                out[i + j, col] += ci * comb(col, j) * b ** (col - j) * d ** j
    return out


def project_det(m: np.ndarray) -> np.ndarray:
    """Rescale by the principal n-th root of det so the result has det 1."""
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    det = np.linalg.det(m)
    if det == 0:
        raise ValueError("cannot normalize a singular matrix to determinant 1")
    return m / np.exp(np.log(det) / n)


def random_representation(p: GroupPresentation, spec: GroupSpec,
                          seed: int = 0) -> Representation:
    """Seeded standard-normal complex images, normalized to determinant 1."""
    rng = np.random.default_rng(seed)
    n = spec.n
    images = []
    for _ in range(p.num_generators):
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        images.append(project_det(m))
    return Representation(spec, tuple(images))


def sl_basis(n: int) -> list:
    """Basis of trace-zero n x n matrices: E_ij (i != j, row-major order),
    then H_k = E_kk - E_{k+1,k+1} for k = 0..n-2."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.zeros((n, n), dtype=np.complex128)
                e[i, j] = 1.0
                out.append(e)
    for k in range(n - 1):
        h = np.zeros((n, n), dtype=np.complex128)
        h[k, k] = 1.0
        h[k + 1, k + 1] = -1.0
        out.append(h)
    return out


def sl_coords(m: np.ndarray) -> np.ndarray:
    """Coordinates of a trace-zero matrix in the sl_basis ordering.

    Off-diagonal entries are their own coordinates; the H_k coordinate of a
    diagonal (d_0, ..., d_{n-1}) with zero sum is the partial sum
    d_0 + ... + d_k.
    """
    n = m.shape[0]
    off = [m[i, j] for i in range(n) for j in range(n) if i != j]
    diag = np.cumsum(np.diag(m))[:-1]
    return np.concatenate([np.asarray(off, dtype=np.complex128), diag])


def adjoint_operator(a: np.ndarray) -> np.ndarray:
    """Matrix of X -> a X a^{-1} on sl(n) in the sl_basis coordinates."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    ainv = cxla.inverse(a)
    cols = [sl_coords(a @ b @ ainv) for b in sl_basis(n)]
    return np.column_stack(cols)

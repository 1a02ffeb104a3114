from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from charbound import load_document
from charbound.grouprep import project_det

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES_DIR / name)


def random_sl(rng: np.random.Generator, n: int) -> np.ndarray:
    """One random determinant-1 matrix with complex Gaussian entries."""
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return project_det(m)


def random_su(rng: np.random.Generator, n: int) -> np.ndarray:
    """One random special-unitary matrix (norm-controlled conjugator)."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return project_det(q)


@pytest.fixture(scope="session")
def fig8_sl2_doc():
    return load_document(fixture_path("figure_eight_sl2.json"))


@pytest.fixture(scope="session")
def fig8_sl3_doc():
    return load_document(fixture_path("figure_eight_sl3.json"))


@pytest.fixture(scope="session")
def handlebody_doc():
    return load_document(fixture_path("handlebody_f2_sl2.json"))

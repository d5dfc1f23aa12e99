"""Shared pytest fixtures for PencilSpec."""

import logging
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture(autouse=True)
def app_home(tmp_path, monkeypatch):
    """Keep config and log files of every test inside its own temporary directory."""
    home = tmp_path / 'pencilspec_home'
    monkeypatch.setenv('PENCILSPEC_HOME', str(home))
    yield home
    root = logging.getLogger('PencilSpec')
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def hermitian_with_spectrum(eigenvalues, rng):
    """Q diag(eigenvalues) Q* for a random unitary Q."""
    n = len(eigenvalues)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, _ = np.linalg.qr(Z)
    H = (Q * np.asarray(eigenvalues)) @ Q.conj().T
    return (H + H.conj().T) / 2


def random_hermitian(n, rng):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (G + G.conj().T) / 2

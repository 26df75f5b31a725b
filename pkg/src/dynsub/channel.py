"""Geometric multipath channel for a ULA transmitter.

Each user's channel is a sum of rank-one path contributions. Transmit and
receive steering vectors are scaled to unit norm inside the assembly, so
the average channel energy comes out to n_tx * n_rx regardless of array
size; codebook entries stay unit-modulus.
"""

from dataclasses import dataclass

import numpy as np

from .config import SystemConfig
from .linalg import frobenius_norm_sq, svd_thin


@dataclass(frozen=True)
class PathSet:
    """Per-path parameters of one user's channel."""

    gains: np.ndarray  # (L,) complex, unit-variance circular Gaussian
    aoa: np.ndarray    # (L,) azimuth angle of arrival, radians
    aod: np.ndarray    # (L,) azimuth angle of departure, radians


@dataclass(frozen=True)
class ChannelRealization:
    """One Monte Carlo drop: channel state for every candidate user."""

    paths: tuple          # PathSet per candidate
    h_full: tuple         # (n_rx, n_tx) matrix per candidate
    combiner_full: tuple  # (n_streams, n_rx) combiner per candidate


def _as_antenna_indices(indices) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.int64)
    if idx.ndim != 1 or idx.size == 0:
        raise ValueError("antenna index list must be non-empty and 1-D")
    if idx[0] < 1 or np.any(np.diff(idx) <= 0):
        raise ValueError("antenna indices must be 1-based and strictly increasing")
    return idx


def sample_paths(cfg: SystemConfig, rng: np.random.Generator) -> PathSet:
    """Draw one user's path gains and azimuth angles.

    Gains are standard circular complex Gaussian (unit mean-square), both
    angles i.i.d. uniform over [-pi, pi].
    """
    n = cfg.n_paths
    gains = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
    aoa = rng.uniform(-np.pi, np.pi, size=n)
    aod = rng.uniform(-np.pi, np.pi, size=n)
    return PathSet(gains=gains, aoa=aoa, aod=aod)


def steering_vector(angle: float, indices, spacing: float) -> np.ndarray:
    """ULA response at `angle` for 1-based antenna `indices`.

    Entry i is exp(1j * (indices[i]-1) * 2*pi * spacing * sin(angle)); all
    entries are unit-modulus, the vector is not normalized.
    """
    idx = _as_antenna_indices(indices)
    return np.exp(1j * 2.0 * np.pi * spacing * np.sin(angle) * (idx - 1))


def assemble_channel(paths: PathSet, n_tx: int, n_rx: int, spacing: float) -> np.ndarray:
    """Sum of per-path outer products with norm-one steering vectors."""
    tx_idx = np.arange(1, n_tx + 1)
    rx_idx = np.arange(1, n_rx + 1)
    h = np.zeros((n_rx, n_tx), dtype=np.complex128)
    for alpha, theta, phi in zip(paths.gains, paths.aoa, paths.aod):
        a_ms = steering_vector(theta, rx_idx, spacing) / np.sqrt(n_rx)
        a_bs = steering_vector(phi, tx_idx, spacing) / np.sqrt(n_tx)
        h += alpha * np.outer(a_ms.conj(), a_bs)
    return np.sqrt(n_tx * n_rx / len(paths.gains)) * h


def restrict_channel(h: np.ndarray, subset) -> np.ndarray:
    """Columns of `h` at the 1-based antenna indices in `subset`."""
    idx = _as_antenna_indices(subset)
    if idx[-1] > h.shape[1]:
        raise IndexError(f"antenna index {idx[-1]} beyond array size {h.shape[1]}")
    return h[:, idx - 1]


def compute_combiner(h: np.ndarray, n_streams: int) -> np.ndarray:
    """Receive combiner: conjugate-transposed dominant left singular vectors."""
    if frobenius_norm_sq(h) == 0.0:
        raise ValueError("cannot build a combiner for an all-zero channel")
    u, _, _ = svd_thin(h)
    return u[:, :n_streams].conj().T


def realize_channels(cfg: SystemConfig, rng: np.random.Generator) -> ChannelRealization:
    """Sample every candidate user's channel and full-array combiner."""
    paths, h_full, combiners = [], [], []
    for _ in range(cfg.n_candidates):
        p = sample_paths(cfg, rng)
        h = assemble_channel(p, cfg.n_tx, cfg.n_rx, cfg.antenna_spacing_wavelengths)
        paths.append(p)
        h_full.append(h)
        combiners.append(compute_combiner(h, cfg.n_streams))
    return ChannelRealization(tuple(paths), tuple(h_full), tuple(combiners))

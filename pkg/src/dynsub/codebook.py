"""Beam-steering codebook for a uniform linear transmit array."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Codebook:
    """Finite set of unit-modulus steering codewords.

    ``codewords[q, i] = exp(1j * i * 2*pi * spacing * sin(2*pi*q / n_q))``
    for array positions ``i = 0 .. n_tx-1``. Note the sine argument runs a
    full circle, so codewords ``q`` and ``n_q/2 - q`` coincide elementwise.
    """

    n_q: int
    n_tx: int
    spacing: float
    codewords: np.ndarray  # (n_q, n_tx) complex


def build_codebook(n_q: int, n_tx: int, spacing: float) -> Codebook:
    if n_q < 1 or n_tx < 1:
        raise ValueError("n_q and n_tx must be positive")
    q = np.arange(n_q)
    positions = np.arange(n_tx)
    per_element_phase = 2.0 * np.pi * spacing * np.sin(2.0 * np.pi * q / n_q)
    codewords = np.exp(1j * np.outer(per_element_phase, positions))
    return Codebook(n_q=n_q, n_tx=n_tx, spacing=spacing, codewords=codewords)


def restrict_codeword(cb: Codebook, q: int, subset) -> np.ndarray:
    """Codeword ``q`` seen by a subarray: element selection at 1-based indices."""
    if not 0 <= q < cb.n_q:
        raise IndexError(f"codeword index {q} out of range 0..{cb.n_q - 1}")
    idx = np.asarray(subset, dtype=np.int64)
    if idx.size == 0 or idx[0] < 1 or idx[-1] > cb.n_tx or np.any(np.diff(idx) <= 0):
        raise IndexError("subset must be strictly increasing 1-based indices within the array")
    return cb.codewords[q][idx - 1]

"""Hybrid precoder assembly: per-subarray analog beams, ZF/MF digital stage,
and per-user power normalization."""

from dataclasses import dataclass

import numpy as np

from .codebook import Codebook
from .linalg import right_pinv
from .partition import Partition
from .selection import best_beam


@dataclass(frozen=True)
class HybridPrecoder:
    """Block-sparse analog stage with a small digital stage behind it.

    `partition` is None for the fully-connected architecture, where every
    analog column spans the whole array. Analog entries on a column's
    support are unit-modulus; off-support entries are exactly zero.
    """

    partition: Partition | None
    analog: np.ndarray   # (n_tx, k)
    digital: np.ndarray  # (k, k), one column per user


def analog_for_subarray(h_eff_sub: np.ndarray, cb: Codebook, subset):
    """Best codeword for one subarray, scored on the restricted channel.

    Args:
        h_eff_sub: (n_streams, len(subset)) combined channel over the subarray.
        subset: the subarray's 1-based antenna indices.
    Returns:
        (q, restricted codeword vector); ties go to the smallest q.
    """
    if len(subset) == 0:
        raise ValueError("empty antenna subset")
    idx = np.asarray(subset, dtype=np.int64) - 1
    proj = h_eff_sub @ cb.codewords[:, idx].T  # (n_streams, n_q)
    gains = np.sum(np.abs(proj) ** 2, axis=0)
    q = int(np.argmax(gains))
    return q, cb.codewords[q][idx]


def build_analog(partition, beam_qs, cb: Codebook, n_tx: int) -> np.ndarray:
    """Dense (n_tx, k) analog matrix; zero rows outside each column's support."""
    f = np.zeros((n_tx, len(beam_qs)), dtype=np.complex128)
    if partition is None:
        for k, q in enumerate(beam_qs):
            f[:, k] = cb.codewords[q]
    else:
        for k, (subset, q) in enumerate(zip(partition.subsets, beam_qs)):
            idx = np.asarray(subset, dtype=np.int64) - 1
            f[idx, k] = cb.codewords[q][idx]
    return f


def effective_mu_channel(analog: np.ndarray, h_effs) -> np.ndarray:
    """K x K channel after combining and analog precoding.

    Row k is user k's view of every RF chain's beam; entry (k, i) equals
    user k's channel restricted to chain i's antennas times chain i's
    restricted codeword.
    """
    return np.vstack([h @ analog for h in h_effs])


def zf_digital(g: np.ndarray) -> np.ndarray:
    """Interference-nulling digital stage: g @ result = I."""
    return right_pinv(g)


def mf_digital(g: np.ndarray) -> np.ndarray:
    """Matched-filter digital stage: column k is the conjugate of user k's
    row, scaled by that row's squared norm."""
    g = np.asarray(g)
    norms_sq = np.sum(np.abs(g) ** 2, axis=1)
    if np.any(norms_sq == 0.0):
        raise ValueError("zero row in the effective channel")
    return g.conj().T / norms_sq[np.newaxis, :]


def normalize_power(precoder: HybridPrecoder, n_s: int = 1) -> HybridPrecoder:
    """Rescale each digital column so its transmitted power equals n_s."""
    tx = precoder.analog @ precoder.digital
    col_power = np.sum(np.abs(tx) ** 2, axis=0)
    if np.any(col_power == 0.0):
        raise ValueError("cannot normalize a zero precoding column")
    digital = precoder.digital * np.sqrt(n_s / col_power)[np.newaxis, :]
    return HybridPrecoder(precoder.partition, precoder.analog, digital)


def _digital_stage(g: np.ndarray, mode: str) -> np.ndarray:
    if mode == "zf":
        return zf_digital(g)
    if mode == "mf":
        return mf_digital(g)
    raise ValueError(f"unknown digital mode {mode!r}")


def hybrid_precoder_for_partition(partition: Partition, h_effs, cb: Codebook,
                                  mode: str = "zf", n_s: int = 1) -> HybridPrecoder:
    """Full subarray precoder: analog beam per subarray, digital stage,
    power scaling.

    `h_effs` are the users' full-array channels combined with receivers
    matched to their subarray channels.
    """
    beam_qs = []
    for k, subset in enumerate(partition.subsets):
        idx = np.asarray(subset, dtype=np.int64) - 1
        q, _ = analog_for_subarray(h_effs[k][:, idx], cb, subset)
        beam_qs.append(q)
    analog = build_analog(partition, beam_qs, cb, cb.n_tx)
    g = effective_mu_channel(analog, h_effs)
    return normalize_power(HybridPrecoder(partition, analog, _digital_stage(g, mode)), n_s)


def fully_connected_precoder(h_effs, cb: Codebook, mode: str = "zf",
                             n_s: int = 1) -> HybridPrecoder:
    """Baseline with every RF chain spanning the whole array: per-user best
    beams for the analog stage, then the same digital stage as above."""
    beam_qs = [best_beam(h, cb)[0] for h in h_effs]
    analog = build_analog(None, beam_qs, cb, cb.n_tx)
    g = effective_mu_channel(analog, h_effs)
    return normalize_power(HybridPrecoder(None, analog, _digital_stage(g, mode)), n_s)

"""Per-user best-beam initialization and greedy SINR-based user scheduling."""

from dataclasses import dataclass

import numpy as np

from .codebook import Codebook
from .linalg import frobenius_norm_sq


@dataclass(frozen=True)
class BeamAssignment:
    """Initial analog beam per candidate: codeword index and its gain."""

    best_q: tuple
    gain: tuple


@dataclass(frozen=True)
class SelectedSet:
    """Scheduled users in selection order (first = strongest channel)."""

    users: tuple


def best_beam(h_eff: np.ndarray, cb: Codebook):
    """Codeword maximizing the effective-channel beamforming gain.

    Args:
        h_eff: (n_streams, n_tx) receive-combined channel.
        cb: full-array codebook.
    Returns:
        (q, gain) with ties broken towards the smallest codeword index.
    """
    proj = h_eff @ cb.codewords.T  # (n_streams, n_q)
    gains = np.sum(np.abs(proj) ** 2, axis=0)
    q = int(np.argmax(gains))
    return q, float(gains[q])


def assign_beams(h_effs, cb: Codebook) -> BeamAssignment:
    pairs = [best_beam(h, cb) for h in h_effs]
    return BeamAssignment(best_q=tuple(q for q, _ in pairs),
                          gain=tuple(g for _, g in pairs))


def initial_sinr(n, beams: BeamAssignment, h_effs, cb: Codebook,
                 interferer_set, noise_var: float) -> float:
    """SINR of candidate `n` under everyone's initial beams.

    The interference sum runs over `interferer_set` exactly as given (the
    caller excludes `n`), so one routine serves both the all-candidates
    variant and the selected-prefix variant used during scheduling.
    """
    if noise_var <= 0:
        raise ValueError("noise variance must be positive")
    own = frobenius_norm_sq(h_effs[n] @ cb.codewords[beams.best_q[n]])
    denom = noise_var
    for i in interferer_set:
        denom += frobenius_norm_sq(h_effs[n] @ cb.codewords[beams.best_q[i]])
    return own / denom


def select_users(candidates, beams: BeamAssignment, h_effs, k_users: int,
                 cb: Codebook, noise_var: float) -> SelectedSet:
    """Greedy scheduler: strongest effective channel first, then repeatedly
    the candidate with maximal SINR against the already-selected users'
    beams. Ties go to the smallest candidate index.
    """
    remaining = sorted(candidates)
    if len(remaining) < k_users:
        raise ValueError(f"need at least {k_users} candidates, got {len(remaining)}")

    best_n, best_gain = None, None
    for n in remaining:
        g = frobenius_norm_sq(h_effs[n])
        if best_gain is None or g > best_gain:
            best_n, best_gain = n, g
    selected = [best_n]
    remaining.remove(best_n)

    while len(selected) < k_users:
        best_n, best_sinr = None, None
        for n in remaining:
            sinr = initial_sinr(n, beams, h_effs, cb, selected, noise_var)
            if best_sinr is None or sinr > best_sinr:
                best_n, best_sinr = n, sinr
        selected.append(best_n)
        remaining.remove(best_n)
    return SelectedSet(users=tuple(selected))

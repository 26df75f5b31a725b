"""Antenna-to-RF-chain assignment.

Three strategies share one SINR evaluation: a greedy pass handing each
antenna to the user whose SINR rises most, two static layouts (adjacent
blocks and interlaced combs), and a brute-force search over all labeled
partitions for small arrays. Interference between subarrays is always
taken through the victim's channel restricted to the interferer's
antennas, since that is where the interfering beam radiates from.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .codebook import Codebook
from .linalg import frobenius_norm_sq


class ExhaustiveCapError(RuntimeError):
    """Search space larger than the configured enumeration cap."""


@dataclass(frozen=True)
class Partition:
    """Disjoint 1-based antenna subsets, one per RF chain."""

    subsets: tuple

    @property
    def sizes(self) -> tuple:
        return tuple(len(s) for s in self.subsets)

    def validate_cover(self, n_tx: int) -> None:
        """Check disjointness, full coverage, and non-empty subsets."""
        if any(len(s) == 0 for s in self.subsets):
            raise ValueError("every RF chain needs at least one antenna")
        flat = sorted(i for s in self.subsets for i in s)
        if flat != list(range(1, n_tx + 1)):
            raise ValueError("subsets must partition the antenna set 1..n_tx")


def beam_gain(h_eff: np.ndarray, subset, q: int, cb: Codebook) -> float:
    """Gain of codeword `q` restricted to `subset`, seen by `h_eff`."""
    if len(subset) == 0:
        return 0.0
    idx = np.asarray(subset, dtype=np.int64) - 1
    return frobenius_norm_sq(h_eff[:, idx] @ cb.codewords[q][idx])


def subarray_sinr(k: int, subsets, beam_qs, h_effs, cb: Codebook,
                  noise_var: float) -> float:
    """Partitioning-stage SINR of user `k` under fixed initial beams.

    `subsets` may be a partial assignment: an empty own subset yields 0 and
    empty interferer subsets contribute nothing.
    """
    own = subsets[k]
    if len(own) == 0:
        return 0.0
    signal = beam_gain(h_effs[k], own, beam_qs[k], cb)
    denom = noise_var
    for i, s in enumerate(subsets):
        if i != k and len(s):
            denom += beam_gain(h_effs[k], s, beam_qs[i], cb)
    return signal / denom


def partition_objective(subsets, beam_qs, h_effs, cb: Codebook,
                        noise_var: float) -> float:
    """Sum over users of log2(1 + SINR), the score both searches maximize."""
    return float(sum(
        math.log2(1.0 + subarray_sinr(k, subsets, beam_qs, h_effs, cb, noise_var))
        for k in range(len(subsets))))


def gain_objective(subsets, beam_qs, h_effs, cb: Codebook) -> float:
    """Sum of own-beam gains, ignoring interference."""
    return float(sum(beam_gain(h_effs[k], subsets[k], beam_qs[k], cb)
                     for k in range(len(subsets))))


def greedy_partition(beam_qs, h_effs, cb: Codebook, noise_var: float,
                     n_tx: int) -> Partition:
    """Scan antennas in index order; each goes to the user whose SINR
    increment is largest (ties to the lowest user position).

    Once as many antennas remain as there are still-empty subsets, the
    choice is restricted to the empty subsets so that every RF chain ends
    up with at least one antenna.
    """
    k_users = len(beam_qs)
    if n_tx < k_users:
        raise ValueError("need at least one antenna per RF chain")
    subsets = [[] for _ in range(k_users)]
    for j in range(1, n_tx + 1):
        empty = [k for k in range(k_users) if not subsets[k]]
        eligible = empty if len(empty) == (n_tx - j + 1) else range(k_users)
        best_k, best_inc = None, None
        for k in eligible:
            before = subarray_sinr(k, subsets, beam_qs, h_effs, cb, noise_var)
            subsets[k].append(j)
            after = subarray_sinr(k, subsets, beam_qs, h_effs, cb, noise_var)
            subsets[k].pop()
            inc = after - before
            if best_inc is None or inc > best_inc:
                best_k, best_inc = k, inc
        subsets[best_k].append(j)
    return Partition(subsets=tuple(tuple(s) for s in subsets))


def _block_size(n_tx: int, k_users: int) -> int:
    if k_users < 1 or n_tx % k_users != 0:
        raise ValueError("the RF-chain count must divide the antenna count")
    return n_tx // k_users


def fixed_adjacent(n_tx: int, k_users: int) -> Partition:
    """Static layout: RF chain k drives the k-th block of adjacent antennas."""
    m = _block_size(n_tx, k_users)
    return Partition(subsets=tuple(
        tuple(range(k * m + 1, (k + 1) * m + 1)) for k in range(k_users)))


def fixed_interlaced(n_tx: int, k_users: int) -> Partition:
    """Static layout: RF chain k drives antennas k, k+K, k+2K, ..."""
    _block_size(n_tx, k_users)
    return Partition(subsets=tuple(
        tuple(range(k + 1, n_tx + 1, k_users)) for k in range(k_users)))


def labeled_assignments(n_tx: int, k_users: int):
    """Yield every assignment of antennas 1..n_tx to k labeled non-empty
    subsets, in lexicographic label order."""
    for labels in itertools.product(range(k_users), repeat=n_tx):
        if len(set(labels)) != k_users:
            continue
        subsets = [[] for _ in range(k_users)]
        for antenna, k in enumerate(labels, start=1):
            subsets[k].append(antenna)
        yield tuple(tuple(s) for s in subsets)


def _best_restricted_q(h_eff: np.ndarray, subset, cb: Codebook) -> int:
    idx = np.asarray(subset, dtype=np.int64) - 1
    proj = h_eff[:, idx] @ cb.codewords[:, idx].T
    gains = np.sum(np.abs(proj) ** 2, axis=0)
    return int(np.argmax(gains))


def exhaustive_partition(beam_qs, h_effs, cb: Codebook, noise_var: float,
                         n_tx: int, objective: str = "rate",
                         mode: str = "joint",
                         cap: int = 1_000_000) -> Partition:
    """Best labeled partition by brute force.

    ``joint`` mode re-selects each user's codeword on every candidate
    subarray; ``beams_fixed`` keeps the initial beams, which makes the
    result a true upper bound for the greedy pass under the same score.
    The first maximizer in enumeration order wins.
    """
    if mode not in ("joint", "beams_fixed"):
        raise ValueError(f"unknown search mode {mode!r}")
    if objective not in ("rate", "gain"):
        raise ValueError(f"unknown objective {objective!r}")
    k_users = len(beam_qs)
    n_unlabeled = partition_count(n_tx, k_users)
    if n_unlabeled > cap:
        raise ExhaustiveCapError(
            f"{n_unlabeled} partitions exceed the enumeration cap {cap}")

    best_subsets, best_score = None, None
    for subsets in labeled_assignments(n_tx, k_users):
        if mode == "joint":
            qs = [_best_restricted_q(h_effs[k], subsets[k], cb)
                  for k in range(k_users)]
        else:
            qs = beam_qs
        if objective == "rate":
            score = partition_objective(subsets, qs, h_effs, cb, noise_var)
        else:
            score = gain_objective(subsets, qs, h_effs, cb)
        if best_score is None or score > best_score:
            best_subsets, best_score = subsets, score
    return Partition(subsets=best_subsets)


def partition_count(n_tx: int, n_rf: int) -> int:
    """Number of ways to split n_tx antennas into n_rf unlabeled non-empty
    subsets (a Stirling number of the second kind), as an exact integer."""
    if n_rf < 1 or n_tx < n_rf:
        raise ValueError("need 1 <= n_rf <= n_tx")
    acc = 0
    for k in range(n_rf + 1):
        acc += (-1) ** (n_rf - k) * math.comb(n_rf, k) * k ** n_tx
    return acc // math.factorial(n_rf)

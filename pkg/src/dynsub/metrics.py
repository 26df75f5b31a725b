"""Per-user rates, hardware element counts, and energy efficiency."""

import math
from dataclasses import dataclass

import numpy as np

from .precoding import HybridPrecoder, effective_mu_channel

FULLY_CONNECTED = "fully_connected"


@dataclass(frozen=True)
class PowerModel:
    """Consumed-power budget: amplifier, RF chains, phase shifters."""

    p_rf: float = 0.250  # W per RF chain
    p_ps: float = 0.001  # W per phase shifter
    eta: float = 0.38    # power-amplifier efficiency
    p_t: float = 1.0     # W transmitted

    def __post_init__(self):
        if min(self.p_rf, self.p_ps, self.p_t) <= 0 or not 0 < self.eta <= 1:
            raise ValueError("power-model parameters out of range")


@dataclass(frozen=True)
class ExperimentResult:
    """Outcome of one architecture on one channel drop."""

    drop_index: int
    architecture: str
    rates: tuple
    sum_rate: float
    energy_efficiency: float
    skipped: bool = False


def _rate_from_row(row: np.ndarray, k: int, noise_var: float) -> float:
    signal = abs(row[k]) ** 2
    interference = sum(abs(row[i]) ** 2 for i in range(len(row)) if i != k)
    return math.log2(1.0 + signal / (noise_var + interference))


def per_user_rate(k: int, precoder: HybridPrecoder, h_effs,
                  noise_var: float) -> float:
    """Achievable rate of user k in bps/Hz.

    Signal and interference terms go through the user's combined channel
    and the full precoder, so interference from chain i radiates from
    chain i's antennas exactly as in the partitioning-stage SINR.
    """
    g = effective_mu_channel(precoder.analog, h_effs)
    received = g @ precoder.digital
    return _rate_from_row(received[k], k, noise_var)


def user_rates(precoder: HybridPrecoder, h_effs, noise_var: float) -> list:
    """All users' rates from one shared effective-channel product."""
    g = effective_mu_channel(precoder.analog, h_effs)
    received = g @ precoder.digital
    return [_rate_from_row(received[k], k, noise_var)
            for k in range(received.shape[0])]


def ps_count(architecture: str, n_tx: int, n_rf: int) -> int:
    """Phase shifters: one per (chain, antenna) pair when fully connected,
    one per antenna for any subarray architecture."""
    return n_rf * n_tx if architecture == FULLY_CONNECTED else n_tx


def rf_adder_count(architecture: str, n_tx: int, n_rf: int) -> int:
    """Per-antenna signal adders; only the fully-connected network needs them."""
    return n_tx if architecture == FULLY_CONNECTED else 0


def energy_efficiency(sum_rate: float, pm: PowerModel, n_rf: int,
                      n_ps: int) -> float:
    """Sum rate divided by total consumed power, bps/Hz/W."""
    total_power = pm.p_t / pm.eta + n_rf * pm.p_rf + n_ps * pm.p_ps
    return sum_rate / total_power

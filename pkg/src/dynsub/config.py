"""Scenario configuration shared by every stage of the simulator."""

from dataclasses import dataclass


@dataclass(frozen=True)
class SystemConfig:
    """All scenario scalars for one simulated cell.

    The transmitter serves exactly one stream per scheduled user, so the
    number of scheduled users always equals the number of RF chains.
    Antenna indices are 1-based everywhere; codeword indices are 0-based.
    """

    n_tx: int = 64                # transmit antennas (ULA)
    n_rx: int = 2                 # receive antennas per user
    n_rf: int = 2                 # RF chains at the transmitter
    n_candidates: int = 4         # candidate users the scheduler picks from
    n_users: int = 2              # scheduled users K (= n_rf)
    n_streams: int = 1            # data streams per user
    n_paths: int = 4              # scatterers per user
    codebook_size: int = 32       # analog codewords N_Q
    antenna_spacing_wavelengths: float = 0.5
    snr_db: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n_tx < 1 or self.n_rx < 1:
            raise ValueError("antenna counts must be positive")
        if self.n_rf < 1 or self.n_rf > self.n_tx:
            raise ValueError("need 1 <= n_rf <= n_tx")
        if self.n_users != self.n_rf:
            raise ValueError("one scheduled user per RF chain: n_users must equal n_rf")
        if self.n_users > self.n_candidates:
            raise ValueError("need n_users <= n_candidates")
        if self.n_streams != 1:
            raise ValueError("only single-stream users are supported")
        if self.n_paths < 1:
            raise ValueError("need at least one propagation path")
        if self.codebook_size < self.n_rf:
            raise ValueError("need codebook_size >= n_rf")
        if self.antenna_spacing_wavelengths <= 0:
            raise ValueError("antenna spacing must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def noise_var(self) -> float:
        """Noise power under unit average received power."""
        return 10.0 ** (-self.snr_db / 10.0)

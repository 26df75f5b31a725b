"""Link-level simulator for multi-user hybrid precoding with dynamic
antenna subarrays on a mmWave massive MIMO downlink."""

from .channel import (ChannelRealization, PathSet, assemble_channel,
                      compute_combiner, realize_channels, restrict_channel,
                      sample_paths, steering_vector)
from .codebook import Codebook, build_codebook, restrict_codeword
from .config import SystemConfig
from .harness import (ARCHITECTURES, MODES, PRESETS, AggregateRow,
                      DropContext, ExperimentSpec, SpecError,
                      evaluate_architecture, preset_spec, realize_drop,
                      run_drop, run_experiment)
from .linalg import (SingularChannelError, frobenius_norm_sq, right_pinv,
                     svd_thin)
from .metrics import (ExperimentResult, PowerModel, energy_efficiency,
                      per_user_rate, ps_count, rf_adder_count, user_rates)
from .partition import (ExhaustiveCapError, Partition, exhaustive_partition,
                        fixed_adjacent, fixed_interlaced, greedy_partition,
                        partition_count, partition_objective, subarray_sinr)
from .precoding import (HybridPrecoder, analog_for_subarray,
                        effective_mu_channel, fully_connected_precoder,
                        hybrid_precoder_for_partition, mf_digital,
                        normalize_power, zf_digital)
from .selection import (BeamAssignment, SelectedSet, assign_beams, best_beam,
                        initial_sinr, select_users)

__version__ = "0.1.0"

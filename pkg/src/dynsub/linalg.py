"""Dense complex-matrix helpers used throughout the simulator.

All matrices here are small (the receiver side has a handful of rows at
most), so numpy's LAPACK-backed routines are used behind the residual
contracts the callers rely on.
"""

import numpy as np

# Right inversion is refused when the smallest singular value drops below
# this fraction of the largest: zero-forcing such a channel is meaningless.
SINGULARITY_RTOL = 1e-12


class SingularChannelError(ValueError):
    """Channel (or effective channel) too ill-conditioned to invert."""


def frobenius_norm_sq(m) -> float:
    """Sum of squared entry magnitudes."""
    m = np.asarray(m)
    return float(np.sum(np.abs(m) ** 2))


def svd_thin(m):
    """Thin SVD ``m = u @ diag(s) @ v.conj().T``.

    Returns ``(u, s, v)`` with orthonormal columns in ``u`` and ``v`` and
    ``s`` sorted descending. Non-finite input is rejected.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("expected a non-empty 2-D matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    return u, s, vh.conj().T


def right_pinv(m) -> np.ndarray:
    """Right inverse ``p`` with ``m @ p = I`` for a full-row-rank matrix."""
    u, s, v = svd_thin(m)
    if s[0] == 0.0 or s[-1] < SINGULARITY_RTOL * s[0]:
        raise SingularChannelError(
            f"singular values span [{s[-1]:.3e}, {s[0]:.3e}], refusing to invert"
        )
    return (v / s) @ u.conj().T

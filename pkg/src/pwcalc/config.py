"""Numerical tolerance settings used by every operation in the library."""

from dataclasses import dataclass

import numpy as np

from .errors import InputError

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class ToleranceConfig:
    """Bundle of tolerances controlling validation and spectral classification.

    Attributes
    ----------
    herm_tol : float
        Allowed deviation from Hermitian symmetry, relative to
        ``max(1, max |entry|)``.
    psd_tol : float
        Eigenvalues in ``[-psd_tol * scale, 0)`` are treated as rounding
        noise and clamped to zero, where ``scale`` is the spectral norm.
        Anything more negative is a hard error.
    support_tol : float or None
        Absolute threshold separating the support of a positive matrix
        from its kernel. ``None`` selects ``dim * eps * max_eigenvalue``.
    zero_tol : float
        Eigenvalues of the commuting representative within ``zero_tol``
        of 0 are classified as exactly 0 (absolute, valid because that
        spectrum lives in [0, 1]).
    one_tol : float
        Same classification at the other endpoint 1.
    weight_tol : float
        Spectral weights at or below this value contribute nothing to a
        pairing, implementing the convention ``0 * inf = 0``.
    conv_tol : float
        Convergence threshold for iterative limits (Frobenius gaps,
        Cauchy gaps of pairing sequences).
    max_doublings : int
        Cap on the number of doubling steps in parallel-sum limits.
    """

    herm_tol: float = 1e-10
    psd_tol: float = 1e-9
    support_tol: float | None = None
    zero_tol: float = 1e-8
    one_tol: float = 1e-8
    weight_tol: float = 1e-12
    conv_tol: float = 1e-9
    max_doublings: int = 60

    def __post_init__(self):
        for name in ("herm_tol", "psd_tol", "zero_tol", "one_tol",
                     "weight_tol", "conv_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0):
                raise InputError(f"{name} must be strictly positive, got {value!r}")
        if self.support_tol is not None and not self.support_tol > 0:
            raise InputError(f"support_tol must be strictly positive or None, "
                             f"got {self.support_tol!r}")
        if not (isinstance(self.max_doublings, int) and self.max_doublings > 0):
            raise InputError(f"max_doublings must be a positive integer, "
                             f"got {self.max_doublings!r}")

    def support_threshold(self, dim: int, max_eig: float) -> float:
        """Effective kernel/support cutoff for a positive matrix."""
        if self.support_tol is not None:
            return self.support_tol
        return dim * EPS * max(max_eig, 0.0)


DEFAULT_TOL = ToleranceConfig()

"""Derivative-like factorizations of calculus values over a definite base.

When the first matrix of the pair is positive definite, the absolutely
continuous part of the second admits a factorization ``Z* Z`` with
``Z = H^(1/2) a^(1/2)``, where ``H`` applies ``h(x) = (1 - x) / x`` to
the outer Gram of the first contraction. The same congruence shape
``a^(1/2) (...) a^(1/2)`` works for every nonnegative bounded profile
vanishing on the ray x = 0, which recovers the familiar mean/connection
form of those operators. The ratio blows up toward 0, so the spectral
classification there is safety-critical: suppressed directions and
near-threshold eigenvalues are counted and reported rather than silently
dropped.
"""

import math
from dataclasses import dataclass

import numpy as np

from .calculus import PwRep, build_rep
from .config import DEFAULT_TOL, ToleranceConfig
from .errors import InputError
from .functions import PwFunction, abs_part
from .linalg import (SpectralDecomposition, eig_hermitian, hermitian_norm,
                     hermitize, psd_sqrt)


@dataclass(frozen=True)
class RnFactorization:
    """Derivative factor with its conditioning diagnostics.

    ``value = root* root`` reproduces the target operator with relative
    ``residual``; ``condition`` is the largest ratio value used, which
    scales the attainable accuracy. ``infinite_directions`` counts
    eigenvalues suppressed to zero by classification and
    ``near_singular`` those retained but within a factor 10 of the
    threshold; ``margin`` is the distance of the closest retained
    eigenvalue to the suppression threshold (+inf if nothing is retained).
    """

    factor: np.ndarray
    root: np.ndarray
    value: np.ndarray
    residual: float
    condition: float
    infinite_directions: int
    near_singular: int
    margin: float


def _require_definite(rep: PwRep, tol: ToleranceConfig) -> None:
    dec = eig_hermitian(rep.a, tol)
    smallest = float(dec.eigenvalues[0]) if rep.n else 0.0
    th = tol.support_threshold(rep.n, float(dec.eigenvalues[-1]) if rep.n else 0.0)
    if smallest <= th or rep.rank != rep.n:
        raise InputError(
            f"base matrix must be positive definite: smallest eigenvalue "
            f"{smallest:.3e} at support threshold {th:.3e}")


def _outer_gram_spec(rep: PwRep) -> SpectralDecomposition:
    return eig_hermitian(hermitize(rep.contr_a @ rep.contr_a.conj().T), rep.tol)


def _classify_ratio(w: np.ndarray, tol: ToleranceConfig):
    suppressed = w <= tol.zero_tol
    near = int(((w > tol.zero_tol) & (w <= 10.0 * tol.zero_tol)).sum())
    retained = w > tol.zero_tol
    margin = float((w[retained] - tol.zero_tol).min()) if retained.any() else math.inf
    return suppressed, near, margin


def _ratio_values(w: np.ndarray, suppressed: np.ndarray,
                  tol: ToleranceConfig) -> np.ndarray:
    # endpoint classification matches the direct evaluation route, so the
    # two sides of the reconstruction identity kill the same directions
    ones = w >= 1.0 - tol.one_tol
    return np.where(suppressed | ones, 0.0,
                    np.maximum(1.0 - w, 0.0) / np.maximum(w, tol.zero_tol))


def rn_factor(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> RnFactorization:
    """Factor the absolutely continuous part of ``b`` over definite ``a``.

    Returns ``H`` (the ratio ``(1 - x)/x`` of the first contraction's
    outer Gram, zero on classified directions), the root
    ``Z = H^(1/2) a^(1/2)`` and the reconstruction ``Z* Z``, which
    matches ``abs_cont_part(a, b)`` up to a condition-scaled residual.

    Raises
    ------
    InputError
        If ``a`` is singular at the support threshold. Near-singular
        spectra only warn through the ``near_singular`` count.
    """
    rep = build_rep(a, b, tol)
    _require_definite(rep, tol)
    dec = _outer_gram_spec(rep)
    w = dec.eigenvalues
    suppressed, near, margin = _classify_ratio(w, tol)
    hvals = _ratio_values(w, suppressed, tol)
    factor = hermitize(dec.apply(hvals))
    root = psd_sqrt(factor, tol) @ rep.a_half
    value = hermitize(root.conj().T @ root)
    split = rep.classify()
    target = rep.from_support(rep.gram_a_spec.apply(
        abs_part().values(rep.gram_a_spec.eigenvalues, split.zero, split.one)))
    scale = max(hermitian_norm(target), 1e-300)
    residual = hermitian_norm(value - target) / scale
    condition = float(hvals.max()) if hvals.size else 0.0
    return RnFactorization(factor=factor, root=root, value=value,
                           residual=residual, condition=condition,
                           infinite_directions=int(suppressed.sum()),
                           near_singular=near, margin=margin)


def kubo_ando_form(a, b, fn: PwFunction,
                   tol: ToleranceConfig = DEFAULT_TOL) -> RnFactorization:
    """Congruence form ``a^(1/2) h(outer gram) a^(1/2)`` of a calculus value.

    Requires a nonnegative bounded profile with ``fn(0) = 0`` and a
    positive definite base. The ratio profile ``fn(x)/x`` is applied to
    the outer Gram of the first contraction; the reconstruction residual
    against the direct evaluation is reported.
    """
    if not fn.vanishes_at_zero or fn.at_zero != 0.0:
        raise InputError(
            f"profile {fn.name!r} must vanish on the ray x = 0")
    if math.isinf(fn.at_one):
        raise InputError(
            f"profile {fn.name!r} is unbounded; the congruence form "
            f"requires a bounded profile")
    rep = build_rep(a, b, tol)
    _require_definite(rep, tol)
    dec = _outer_gram_spec(rep)
    w = dec.eigenvalues
    suppressed, near, margin = _classify_ratio(w, tol)
    one_mask = w >= 1.0 - tol.one_tol
    fvals = fn.values(w, suppressed, one_mask)
    if (fvals < 0.0).any():
        raise InputError(
            f"profile {fn.name!r} is negative on the spectrum; the "
            f"congruence form requires a nonnegative profile")
    hvals = np.where(suppressed, 0.0, fvals / np.maximum(w, tol.zero_tol))
    factor = hermitize(dec.apply(hvals))
    root = psd_sqrt(factor, tol) @ rep.a_half
    value = hermitize(root.conj().T @ root)
    target = rep.eval(fn)
    scale = max(hermitian_norm(target), 1e-300)
    residual = hermitian_norm(value - target) / scale
    condition = float(hvals.max()) if hvals.size else 0.0
    return RnFactorization(factor=factor, root=root, value=value,
                           residual=residual, condition=condition,
                           infinite_directions=int(suppressed.sum()),
                           near_singular=near, margin=margin)


def rn_quadratic_form(a, b, xi, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Quadratic form of the derivative factor at a vector.

    Integrates ``(1 - x)/x`` against the spectral weights of ``xi`` in
    the outer Gram of the first contraction, with the same suppression
    of classified-zero directions as :func:`rn_factor`. At finite
    dimension the value is always finite; it is returned as a float for
    interface uniformity with the pairings.
    """
    rep = build_rep(a, b, tol)
    _require_definite(rep, tol)
    vec = np.asarray(xi, dtype=np.complex128).reshape(-1)
    if vec.shape[0] != rep.n:
        raise InputError(
            f"vector length {vec.shape[0]} does not match dimension {rep.n}")
    dec = _outer_gram_spec(rep)
    w = dec.eigenvalues
    suppressed, _, _ = _classify_ratio(w, tol)
    hvals = _ratio_values(w, suppressed, tol)
    coords = np.abs(dec.basis.conj().T @ vec) ** 2
    return float((hvals * coords).sum())

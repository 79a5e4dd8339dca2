"""Lebesgue decomposition of one positive matrix relative to another.

For PSD matrices ``a`` and ``b``, ``b`` splits uniquely into a part that
is absolutely continuous with respect to ``a`` (an increasing limit of
pieces dominated by multiples of ``a``) and a part mutually singular
with ``a``. On the support side this is just a spectral split of the
commuting representative at 0: directions where the ``a``-component
vanishes carry the singular part, everything else the continuous part.
The same split drives the parallel-sum limit characterization, and both
routes are exposed here so they can check each other.
"""

import math
from dataclasses import dataclass

import numpy as np

from .calculus import PwRep, build_rep
from .config import DEFAULT_TOL, ToleranceConfig
from .errors import InputError, NumericError
from .functions import abs_part, parallel, scaled_parallel
from .linalg import (eig_hermitian, frobenius, hermitian_norm, hermitize,
                     psd_sqrt, support_projection, validate_psd)


@dataclass(frozen=True)
class LebesgueDecomposition:
    """Result of splitting ``b`` relative to ``a``.

    ``abs_part + sing_part`` reproduces ``b`` up to rounding (the two
    parts are computed spectrally, not by subtraction, so the residual
    is an honest diagnostic). ``projection`` is the orthogonal
    projection implementing ``abs_part = b^(1/2) P b^(1/2)``.
    """

    abs_part: np.ndarray
    sing_part: np.ndarray
    projection: np.ndarray
    rank: int
    num_zero_eigs: int
    spectral_margin: float
    residual_sum: float
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class SingularityCheck:
    """Mutual-singularity verdict with the worst offending eigenvalue."""

    is_singular: bool
    witness: float | None
    distance: float


@dataclass(frozen=True)
class ParallelSumLimit:
    """Doubling iteration toward the absolutely continuous part."""

    value: np.ndarray
    iterates: list[np.ndarray]
    gaps: list[float]
    converged: bool
    doublings: int


def _zero_margin(rep: PwRep) -> tuple[float, int]:
    x = rep.gram_a_spec.eigenvalues
    retained = x > rep.tol.zero_tol
    margin = float((x[retained] - rep.tol.zero_tol).min()) if retained.any() else math.inf
    near = int(((x > rep.tol.zero_tol) & (x <= 10.0 * rep.tol.zero_tol)).sum())
    return margin, near


def abs_cont_part(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Maximal part of ``b`` absolutely continuous with respect to ``a``."""
    return build_rep(a, b, tol).eval(abs_part())


def _projection_from_rep(rep: PwRep) -> np.ndarray:
    w = hermitize(rep.contr_b @ rep.contr_b.conj().T)
    dec = eig_hermitian(w, rep.tol)
    keep = dec.eigenvalues < 1.0 - rep.tol.one_tol
    return hermitize(dec.apply(np.where(keep, 1.0, 0.0)))


def _singular_part_from_rep(rep: PwRep) -> np.ndarray:
    split = rep.classify()
    v0 = rep.gram_a_spec.basis[:, split.zero]
    if v0.shape[1] == 0:
        return np.zeros((rep.n, rep.n), dtype=np.complex128)
    core = hermitize(v0.conj().T @ rep.gram_b @ v0)
    factor = psd_sqrt(core, rep.tol) @ v0.conj().T @ rep.coord_map
    return hermitize(factor.conj().T @ factor)


def lebesgue_decompose(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> LebesgueDecomposition:
    """Split ``b`` into absolutely continuous and singular parts.

    Both parts come from the spectral split of the commuting
    representative, so ``abs_part + sing_part = b`` holds only up to
    floating error; the deviation is reported in ``residual_sum`` rather
    than hidden by computing one part as a difference.
    """
    rep = build_rep(a, b, tol)
    split = rep.classify()
    vals = abs_part().values(rep.gram_a_spec.eigenvalues, split.zero, split.one)
    bc = rep.from_support(rep.gram_a_spec.apply(vals))
    bs = _singular_part_from_rep(rep)
    proj = _projection_from_rep(rep)
    margin, near = _zero_margin(rep)
    warnings = []
    if near:
        warnings.append(
            f"low spectral margin: {near} eigenvalue(s) retained within "
            f"10*zero_tol of the classification threshold zero_tol="
            f"{tol.zero_tol:g}, margin={margin:.3e}")
    residual = hermitian_norm(rep.b - bc - bs)
    return LebesgueDecomposition(
        abs_part=bc, sing_part=bs, projection=proj, rank=rep.rank,
        num_zero_eigs=int(split.zero.sum()), spectral_margin=margin,
        residual_sum=residual, warnings=tuple(warnings))


def abs_continuity_projection(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Projection ``P`` with ``abs_cont_part(a, b) = b^(1/2) P b^(1/2)``.

    Computed spectrally from the second contraction's outer Gram, whose
    eigenvalue-1 eigenspace is exactly the direction killed by the
    decomposition.
    """
    return _projection_from_rep(build_rep(a, b, tol))


def solvable_subspace_projection(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Projection onto ``{v : b^(1/2) v lies in ran(a^(1/2))}``.

    Computed without the pair representation: a vector qualifies exactly
    when the component of ``b^(1/2) v`` outside the range of ``a``
    vanishes, so this is the null-space projection of
    ``(I - P_ran(a)) b^(1/2)``. Serves as an independent route to
    :func:`abs_continuity_projection`.
    """
    av, _ = validate_psd(a, tol)
    bv, _ = validate_psd(b, tol)
    if av.shape != bv.shape:
        raise InputError(
            f"pair members differ in size: {av.shape} vs {bv.shape}")
    n = av.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    pa = support_projection(av, tol)
    g = (np.eye(n, dtype=np.complex128) - pa) @ psd_sqrt(bv, tol)
    gram = hermitize(g.conj().T @ g)
    dec = eig_hermitian(gram, tol)
    # the cutoff lives on the scale of b, not of the residual Gram, so a
    # residual that is pure rounding noise still counts as zero
    th = tol.support_threshold(n, hermitian_norm(bv))
    return hermitize(dec.apply(np.where(dec.eigenvalues <= th, 1.0, 0.0)))


def is_mutually_singular(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> SingularityCheck:
    """Decide mutual singularity via the spectrum of the representative.

    The pair is mutually singular exactly when that spectrum sits inside
    {0, 1}; the witness is the eigenvalue farthest from the endpoints.
    The zero pair is singular vacuously.
    """
    rep = build_rep(a, b, tol)
    x = rep.gram_a_spec.eigenvalues
    if rep.rank == 0:
        return SingularityCheck(True, None, 0.0)
    dist = np.minimum(np.abs(x), np.abs(1.0 - x))
    idx = int(np.argmax(dist))
    threshold = max(tol.zero_tol, tol.one_tol)
    return SingularityCheck(bool(dist[idx] <= threshold), float(x[idx]),
                            float(dist[idx]))


def is_abs_continuous(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when ``b`` is absolutely continuous with respect to ``a``.

    Equivalent characterizations: the decomposition returns ``b`` itself
    as the absolutely continuous part, and the associated projection is
    the identity. The implementation tests the projection.
    """
    proj = abs_continuity_projection(a, b, tol)
    n = proj.shape[0]
    return hermitian_norm(proj - np.eye(n, dtype=np.complex128)) < 1e-7


def parallel_sum(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Parallel sum of two PSD matrices (series-parallel composition)."""
    return build_rep(a, b, tol).eval(parallel())


def parallel_sum_limit(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> ParallelSumLimit:
    """Doubling limit of parallel sums with the first slot scaled by 2^k.

    Each iterate equals the parallel sum of ``2^k a`` with ``b`` and is
    computed from a single representation of the pair by rescaling the
    profile; the profile family is pointwise nondecreasing, which makes
    the iterates nondecreasing in the PSD order. Iteration stops once
    the successive Frobenius gap drops below ``conv_tol`` or after
    ``max_doublings`` steps; running out of steps is reported through
    the ``converged`` flag, not as an exception.
    """
    rep = build_rep(a, b, tol)
    split = rep.classify()
    x = rep.gram_a_spec.eigenvalues

    def scaled_values(n):
        return scaled_parallel(n).values(x, split.zero, split.one)

    prev_vals = scaled_values(1.0)
    prev = rep.from_support(rep.gram_a_spec.apply(prev_vals))
    iterates = [prev]
    gaps: list[float] = []
    converged = False
    doublings = 0
    for k in range(1, tol.max_doublings + 1):
        cur_vals = scaled_values(2.0 ** k)
        if float((cur_vals - prev_vals).min(initial=0.0)) < -1e-9:
            raise NumericError(
                "parallel-sum profile family failed to be nondecreasing")
        cur = rep.from_support(rep.gram_a_spec.apply(cur_vals))
        gap = frobenius(cur - prev)
        gaps.append(gap)
        iterates.append(cur)
        prev, prev_vals = cur, cur_vals
        doublings = k
        if gap < tol.conv_tol:
            converged = True
            break
    return ParallelSumLimit(value=prev, iterates=iterates, gaps=gaps,
                            converged=converged, doublings=doublings)


def parallel_sum_expressions(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> dict[str, np.ndarray]:
    """Four classical closed forms of the parallel sum for cross-checks.

    ``e1`` and ``e2`` are the congruence forms through ``b^(1/2)`` and
    ``a^(1/2)``; ``e3`` and ``e4`` are the mixed forms built from both
    contractions. All four agree with :func:`parallel_sum` up to
    rounding.
    """
    rep = build_rep(a, b, tol)
    eye = np.eye(rep.n, dtype=np.complex128)
    yy = rep.contr_b @ rep.contr_b.conj().T
    xx = rep.contr_a @ rep.contr_a.conj().T
    e1 = hermitize(rep.b_half @ (eye - yy) @ rep.b_half)
    e2 = hermitize(rep.a_half @ (eye - xx) @ rep.a_half)
    e3 = rep.a_half @ rep.contr_a @ rep.contr_b.conj().T @ rep.b_half
    e4 = rep.b_half @ rep.contr_b @ rep.contr_a.conj().T @ rep.a_half
    return {"e1": e1, "e2": e2, "e3": e3, "e4": e4}

"""Binary functional calculus for pairs of positive semidefinite matrices.

Given PSD matrices ``a`` and ``b`` of the same size, the pair is
transported to a commuting pair on the support of ``a + b``: with the
spectral decomposition ``a + b = Q diag(lam) Q*`` restricted to
eigenvalues above the support threshold, the coordinate map is
``T = diag(sqrt(lam)) Q*`` and the contractions ``X = a^(1/2) Q
diag(lam)^(-1/2)``, ``Y = b^(1/2) Q diag(lam)^(-1/2)`` satisfy
``X T = a^(1/2)`` and ``Y T = b^(1/2)``. Their Grams ``X* X`` and
``Y* Y`` commute and sum to the identity, so any profile of a
homogeneous binary function can be evaluated on them by ordinary
functional calculus and pushed back through the congruence
``m -> T* m T``.

Pairings against a positive functional ``rho`` integrate the profile
against the spectral weights of ``T rho T*`` and extend gracefully to
+inf, which is how unbounded values (entropy against a singular second
slot, for instance) are reported.
"""

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DominationError, ExtendedValueError, InputError, NumericError
from .functions import PwFunction
from .linalg import (SpectralDecomposition, eig_hermitian, frobenius, hermitian_part,
                     hermitize, polar_isometry, psd_sqrt, validate_psd)

_REP_RESIDUAL_LIMIT = 1e-6
_ROUNDTRIP_LIMIT = 1e-8
_SPECTRUM_SLACK = 1e-9


@dataclass(frozen=True)
class SpectrumSplit:
    """Classification of the commuting representative's spectrum.

    ``zero`` and ``one`` mark eigenvalues within ``zero_tol`` of 0 and
    within ``one_tol`` of 1; ``retained`` marks the rest. ``margin`` is
    the smallest distance of a retained eigenvalue to either threshold
    (+inf when nothing is retained); the classification is inherently
    discontinuous, so callers should surface it. ``near_zero`` counts
    retained eigenvalues below ``10 * zero_tol``.
    """

    zero: np.ndarray
    one: np.ndarray
    retained: np.ndarray
    margin: float
    near_zero: int


@dataclass(frozen=True)
class PairingResult:
    """Scalar pairing value with its +inf bookkeeping.

    ``value`` is ``finite_part`` when the total spectral weight sitting
    on infinite profile values stays at or below ``weight_tol``, and
    ``math.inf`` otherwise.
    """

    value: float
    finite_part: float
    infinite_weight: float


@dataclass(frozen=True)
class SequenceResult:
    """Values of a profile sequence paired against one fixed state."""

    values: list[float]
    gaps: list[float]
    converged: bool


@dataclass(frozen=True)
class PwRep:
    """Support-side representation of a PSD pair.

    Fields
    ------
    n, rank : int
        Ambient dimension and the rank of ``a + b``.
    basis : (n, rank) ndarray
        Orthonormal columns spanning the range of ``a + b``.
    sum_eigs : (rank,) ndarray
        Eigenvalues of ``a + b`` on its support, ascending.
    coord_map : (rank, n) ndarray
        ``diag(sqrt(sum_eigs)) basis*``; full row rank.
    contr_a, contr_b : (n, rank) ndarray
        Contractions carrying the square roots of ``a`` and ``b``.
    gram_a, gram_b : (rank, rank) ndarray
        Commuting PSD pair summing to the identity. ``gram_b`` is stored
        as ``I - gram_a`` exactly (symmetrized), so the structural
        identity holds by construction; ``contr_b* contr_b`` is kept only
        as a cross-check quantity.
    iso_a, iso_b : (n, rank) ndarray
        Polar partial isometries of the contractions.
    gram_a_spec : SpectralDecomposition
        Spectral decomposition of ``gram_a``; its spectrum lies in [0, 1]
        up to rounding.
    a, b, a_half, b_half : ndarray
        Validated inputs and their PSD square roots.
    """

    n: int
    rank: int
    basis: np.ndarray
    sum_eigs: np.ndarray
    coord_map: np.ndarray
    contr_a: np.ndarray
    contr_b: np.ndarray
    gram_a: np.ndarray
    gram_b: np.ndarray
    iso_a: np.ndarray
    iso_b: np.ndarray
    gram_a_spec: SpectralDecomposition
    a: np.ndarray
    b: np.ndarray
    a_half: np.ndarray
    b_half: np.ndarray
    tol: ToleranceConfig

    def classify(self) -> SpectrumSplit:
        """Split the spectrum of ``gram_a`` at the 0 and 1 thresholds."""
        x = self.gram_a_spec.eigenvalues
        zero = x <= self.tol.zero_tol
        one = x >= 1.0 - self.tol.one_tol
        retained = ~(zero | one)
        if retained.any():
            xr = x[retained]
            margin = float(np.minimum(xr - self.tol.zero_tol,
                                      (1.0 - self.tol.one_tol) - xr).min())
        else:
            margin = math.inf
        near_zero = int(((x > self.tol.zero_tol)
                         & (x <= 10.0 * self.tol.zero_tol)).sum())
        return SpectrumSplit(zero, one, retained, margin, near_zero)

    def from_support(self, m) -> np.ndarray:
        """Push a support-side Hermitian matrix through ``T* m T``.

        Order preserving: it maps operators dominated by a multiple of
        the identity to operators dominated by the same multiple of
        ``a + b``.
        """
        mm = hermitian_part(m, self.tol)
        if mm.shape != (self.rank, self.rank):
            raise InputError(
                f"expected a {self.rank}x{self.rank} support-side matrix, "
                f"got {mm.shape}")
        return hermitize(self.coord_map.conj().T @ mm @ self.coord_map)

    def to_support(self, c) -> np.ndarray:
        """Invert :meth:`from_support` on operators dominated by ``a + b``.

        Implemented by factoring ``c = (c^(1/2)) (c^(1/2))*`` and solving
        against the coordinate map, which is exact precisely when the
        range of ``c`` lies inside the range of ``a + b``. A round-trip
        residual above tolerance means no multiple of ``a + b`` dominates
        ``c`` and raises :class:`DominationError`.
        """
        cv, _ = validate_psd(c, self.tol)
        if cv.shape != (self.n, self.n):
            raise InputError(
                f"expected a {self.n}x{self.n} matrix, got {cv.shape}")
        c_half = psd_sqrt(cv, self.tol)
        scaled = self.basis / np.sqrt(self.sum_eigs)[None, :]
        d = scaled.conj().T @ c_half
        ct = hermitize(d @ d.conj().T)
        back = self.from_support(ct)
        resid = frobenius(back - cv)
        norm = frobenius(cv)
        if resid > _ROUNDTRIP_LIMIT * max(norm, 1e-300):
            raise DominationError(
                f"matrix is not dominated by any multiple of the pair sum: "
                f"round-trip residual {resid:.3e} against norm {norm:.3e}")
        return ct

    def eval(self, fn: PwFunction) -> np.ndarray:
        """Evaluate a profile on the pair, returning a Hermitian matrix.

        Raises
        ------
        ExtendedValueError
            If the profile takes +inf on a present (classified)
            eigenvalue; the operator is unbounded and only pairings can
            represent it.
        """
        split = self.classify()
        vals = fn.values(self.gram_a_spec.eigenvalues, split.zero, split.one)
        if np.isinf(vals).any():
            raise ExtendedValueError(
                f"extended value: profile {fn.name!r} is infinite on the "
                f"spectrum of the pair; use a pairing (pair/trace) instead")
        return self.from_support(self.gram_a_spec.apply(vals))

    def pairing_weights(self, rho) -> np.ndarray:
        """Spectral weights of ``T rho T*`` in the ``gram_a`` eigenbasis."""
        rv, _ = validate_psd(rho, self.tol)
        if rv.shape != (self.n, self.n):
            raise InputError(
                f"state must be {self.n}x{self.n}, got {rv.shape}")
        m = self.coord_map @ rv @ self.coord_map.conj().T
        vecs = self.gram_a_spec.basis
        w = np.real(np.sum(vecs.conj() * (m @ vecs), axis=0))
        return np.maximum(w, 0.0)

    def pairing(self, fn: PwFunction, rho) -> PairingResult:
        """Pair a profile with a positive functional, +inf allowed.

        The value is the integral of the profile against the spectral
        weights; weights at or below ``weight_tol`` contribute nothing
        regardless of the profile value (the 0 * inf = 0 convention),
        and the result is +inf exactly when the total weight on infinite
        profile values exceeds ``weight_tol``.
        """
        w = self.pairing_weights(rho)
        return self._pairing_from_weights(fn, w)

    def _pairing_from_weights(self, fn: PwFunction, w: np.ndarray) -> PairingResult:
        split = self.classify()
        vals = fn.values(self.gram_a_spec.eigenvalues, split.zero, split.one)
        inf_mask = np.isinf(vals)
        infinite_weight = float(w[inf_mask].sum())
        keep = (~inf_mask) & (w > self.tol.weight_tol)
        finite_part = float((vals[keep] * w[keep]).sum())
        if infinite_weight > self.tol.weight_tol:
            value = math.inf
        else:
            value = finite_part
        return PairingResult(value, finite_part, infinite_weight)

    def eval_sequence(self, fns, rho) -> SequenceResult:
        """Pair each profile of a sequence with one state and track gaps.

        The Cauchy gaps ``|v[k+1] - v[k]|`` treat two consecutive +inf
        values as gap zero. The sequence counts as converged when the
        last three gaps (or all of them, if fewer) stay below
        ``conv_tol``.
        """
        fns = list(fns)
        if not fns:
            raise InputError("profile sequence must be nonempty")
        w = self.pairing_weights(rho)
        values = [self._pairing_from_weights(fn, w).value for fn in fns]
        gaps = []
        for prev, cur in zip(values, values[1:]):
            if math.isinf(prev) and math.isinf(cur):
                gaps.append(0.0)
            elif math.isinf(prev) or math.isinf(cur):
                gaps.append(math.inf)
            else:
                gaps.append(abs(cur - prev))
        tail = gaps[-3:]
        converged = bool(tail) and all(g < self.tol.conv_tol for g in tail)
        return SequenceResult(values, gaps, converged)


def build_rep(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> PwRep:
    """Construct the support-side representation of a PSD pair.

    Parameters
    ----------
    a, b : array_like
        Square PSD matrices of the same size (validated, rounding-level
        negative eigenvalues clamped).
    tol : ToleranceConfig

    Returns
    -------
    PwRep

    Raises
    ------
    InputError
        On dimension mismatch or failed validation.
    NumericError
        If the reconstruction residuals of the contractions exceed 1e-6,
        which indicates a numerically hopeless input.
    """
    av, _ = validate_psd(a, tol)
    bv, _ = validate_psd(b, tol)
    if av.shape != bv.shape:
        raise InputError(
            f"pair members differ in size: {av.shape} vs {bv.shape}")
    n = av.shape[0]
    total = hermitize(av + bv)
    dec = eig_hermitian(total, tol)
    th = tol.support_threshold(n, float(dec.eigenvalues[-1]) if n else 0.0)
    keep = dec.eigenvalues > th
    lam = dec.eigenvalues[keep]
    q = dec.basis[:, keep]
    rank = int(keep.sum())
    root = np.sqrt(lam)
    coord_map = root[:, None] * q.conj().T
    a_half = psd_sqrt(av, tol)
    b_half = psd_sqrt(bv, tol)
    scaled = q / root[None, :] if rank else q
    contr_a = a_half @ scaled
    contr_b = b_half @ scaled
    gram_a = hermitize(scaled.conj().T @ av @ scaled)
    gram_b = hermitize(np.eye(rank, dtype=np.complex128) - gram_a)
    spec = eig_hermitian(gram_a, tol)
    if rank:
        lo = float(spec.eigenvalues[0])
        hi = float(spec.eigenvalues[-1])
        if lo < -_SPECTRUM_SLACK or hi > 1.0 + _SPECTRUM_SLACK:
            raise NumericError(
                f"commuting representative has spectrum outside [0, 1]: "
                f"[{lo:.3e}, {hi:.3e}]")
    resid_a = frobenius(contr_a @ coord_map - a_half)
    resid_b = frobenius(contr_b @ coord_map - b_half)
    limit_a = _REP_RESIDUAL_LIMIT * max(1.0, frobenius(a_half))
    limit_b = _REP_RESIDUAL_LIMIT * max(1.0, frobenius(b_half))
    if resid_a > limit_a or resid_b > limit_b:
        raise NumericError(
            f"representation residuals too large: {resid_a:.3e}, {resid_b:.3e}")
    iso_a = polar_isometry(contr_a, tol)
    iso_b = polar_isometry(contr_b, tol)
    return PwRep(n=n, rank=rank, basis=q, sum_eigs=lam, coord_map=coord_map,
                 contr_a=contr_a, contr_b=contr_b, gram_a=gram_a,
                 gram_b=gram_b, iso_a=iso_a, iso_b=iso_b, gram_a_spec=spec,
                 a=av, b=bv, a_half=a_half, b_half=b_half, tol=tol)


def pw_eval(a, b, fn: PwFunction, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """One-shot profile evaluation on a PSD pair."""
    return build_rep(a, b, tol).eval(fn)


def pw_pairing(a, b, fn: PwFunction, rho,
               tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """One-shot pairing value; returns ``math.inf`` for unbounded values."""
    return build_rep(a, b, tol).pairing(fn, rho).value


def eval_sequence(a, b, fns, rho,
                  tol: ToleranceConfig = DEFAULT_TOL) -> SequenceResult:
    """One-shot sequence pairing with a convergence report."""
    return build_rep(a, b, tol).eval_sequence(fns, rho)

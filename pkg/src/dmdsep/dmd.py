"""Lag-pair propagator estimators and the full factorization pipeline.

The central object is the least-squares propagator ``A = X1 @ pinv(X0)``
for snapshot matrices offset by ``tau`` time steps.  When the latent unit
signals are (nearly) uncorrelated with their tau-shifted selves across
sources, the top eigenvectors of ``A`` recover the mixing directions and
the top eigenvalues recover the lag-tau autocorrelations: fitting the
propagator *is* blind source separation.

Variants: ``tsvd_dmd_fit`` front-ends the same fit with a rank-k truncated
SVD to fill zeroed-out missing entries, and ``dmf`` wraps the fit into a
mean-aware factorization ``X ~= Q_hat @ C_hat.T`` for raw data matrices.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import ComplexEig


@dataclass
class LagPair:
    """Snapshot matrices offset by ``tau`` columns: X0[:, j] = X[:, j],
    X1[:, j] = X[:, j + tau]."""

    X0: np.ndarray
    X1: np.ndarray
    tau: int


@dataclass
class DmdResult:
    """Top-k eigenpairs of the lag-tau propagator.

    ``a_hat`` is the dense propagator, retained only on request;
    ``observed_q`` records the observation probability when the fit came
    through the missing-data path (diagnostic only).
    """

    eig: ComplexEig
    tau: int
    rank: int
    a_hat: np.ndarray = None
    observed_q: float = None


@dataclass
class DmfResult:
    """Mean-aware factorization X ~= Q_hat @ C_hat.T + (dropped residual mean).

    ``mean_residual`` is the norm of the part of the column mean lying
    outside span(Q_hat); it is exactly the reconstruction defect
    introduced by folding the mean back through the rank-k factors.
    """

    Q_hat: np.ndarray
    C_hat: np.ndarray
    mu_hat: np.ndarray
    eigvals: np.ndarray
    mean_residual: float


def make_lag_pair(X, tau):
    """Split ``X`` into snapshot matrices ``tau`` steps apart."""
    X = np.asarray(X, dtype=float)
    n = X.shape[1]
    if not 1 <= tau <= n - 2:
        raise ValueError(f"lag tau={tau} outside [1, {n - 2}] for n={n} samples")
    return LagPair(X0=X[:, : n - tau], X1=X[:, tau:], tau=tau)


def _top_k(eig, k):
    return ComplexEig(values=eig.values[:k], vectors=eig.vectors[:, :k])


def _fit_dense(pair, k, keep_operator):
    """Materialize A = X1 @ pinv(X0) and eigendecompose it."""
    res = linalg.svd(pair.X0)
    r = res.rank
    if r < k:
        warnings.warn(
            f"snapshot matrix has numerical rank {r} < requested k={k}; "
            "trailing modes are noise",
            stacklevel=3,
        )
    # (X1 @ V_r / s_r) @ U_r.T is exactly X1 @ pinv(X0)
    if r == 0:
        a_hat = np.zeros((pair.X0.shape[0],) * 2)
    else:
        a_hat = (pair.X1 @ (res.V[:, :r] / res.sigma[:r])) @ res.U[:, :r].T
    eig = linalg.eig_nonsymmetric(a_hat)
    return _top_k(eig, k), r, (a_hat if keep_operator else None)


def _fit_projected(pair, k):
    """Solve the eigenproblem in the k-dimensional left singular basis of X0.

    On data whose numerical rank is k this has the same nonzero spectrum
    as the dense propagator; it avoids the p x p matrix entirely.
    """
    res = linalg.svd(pair.X0)
    r = res.rank
    if r < k:
        warnings.warn(
            f"snapshot matrix has numerical rank {r} < requested k={k}; "
            "trailing modes are noise",
            stacklevel=3,
        )
    U, s, V = res.U[:, :k], res.sigma[:k], res.V[:, :k]
    small = U.T @ (pair.X1 @ (V / np.where(s > 0, s, 1.0)))
    eig = linalg.eig_nonsymmetric(small)
    lifted = U.astype(complex) @ eig.vectors
    return ComplexEig(values=eig.values, vectors=linalg._phase_fix(lifted)), r


def dmd_fit(X, tau, k, keep_operator=False, dense_threshold=2000):
    """Fit the lag-``tau`` propagator and return its top-``k`` eigenpairs.

    Parameters
    ----------
    X : (p, n) array
        Multivariate time series, one column per sample.
    tau : int
        Lag between the two snapshot matrices.
    k : int
        Number of modes to return (the assumed number of sources).
    keep_operator : bool
        Retain the dense propagator in the result (dense path only).
    dense_threshold : int
        Above this channel count the p x p propagator is never formed;
        the eigenproblem is solved in the k-dimensional SVD basis of the
        first snapshot matrix and the eigenvectors are lifted back.

    Eigenpairs are sorted by modulus descending with the phase convention
    of :mod:`dmdsep.linalg`.  A numerically rank-deficient snapshot matrix
    (rank < k) triggers a warning with the detected rank.
    """
    X = np.asarray(X, dtype=float)
    pair = make_lag_pair(X, tau)
    p, m = pair.X0.shape
    if not 1 <= k <= min(p, m):
        raise ValueError(f"k={k} outside [1, {min(p, m)}] for p={p}, n-tau={m}")
    if p <= dense_threshold:
        eig, rank, a_hat = _fit_dense(pair, k, keep_operator)
    else:
        eig, rank = _fit_projected(pair, k)
        a_hat = None
    return DmdResult(eig=eig, tau=tau, rank=min(rank, k), a_hat=a_hat)


def tsvd_dmd_fit(X_masked, q, tau, k, dense_threshold=2000):
    """Missing-data variant: rank-``k`` truncated SVD fill-in, then DMD.

    ``X_masked`` has unobserved entries set to zero.  With ``q == 1``
    there is nothing to fill in and the data passes through unchanged, so
    the result is identical to :func:`dmd_fit` bit for bit.  ``q`` is
    recorded for diagnostics only; no 1/q rescaling is applied because the
    propagator (hence its spectrum and eigenvectors) is invariant under
    global rescaling of the data.
    """
    if not 0.0 < q <= 1.0:
        raise ValueError(f"observation probability q={q} outside (0, 1]")
    X_masked = np.asarray(X_masked, dtype=float)
    if q == 1.0:
        fit = dmd_fit(X_masked, tau, k, dense_threshold=dense_threshold)
    else:
        ts = linalg.truncated_svd(X_masked, k)
        filled = (ts.U * ts.sigma) @ ts.V.T
        fit = dmd_fit(filled, tau, k, dense_threshold=dense_threshold)
    fit.observed_q = q
    return fit


def _pinv_any(M, rel_tol=1e-12):
    """Pseudoinverse with the package rank-cutoff convention, complex-safe."""
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    cutoff = rel_tol * (s[0] if s.size else 0.0) * max(M.shape)
    keep = s > cutoff
    if not np.any(keep):
        return np.zeros((M.shape[1], M.shape[0]), dtype=M.dtype)
    return (Vt[keep].conj().T / s[keep]) @ U[:, keep].conj().T


def left_vectors(Q_hat):
    """Rows of pinv(Q_hat): the matched left eigenvectors used for unmixing."""
    return _pinv_any(np.asarray(Q_hat))


def recover_signals(X, left_vecs, imag_tol=1e-6):
    """Recover unit-norm latent signals by projecting onto the left eigenvectors.

    ``left_vecs`` must be the rows of the pseudoinverse of the estimated
    mode matrix (see :func:`left_vectors`).  Each projected column is
    phase-rotated to be as real as possible; if the residual imaginary
    energy exceeds ``imag_tol`` times the column norm a warning is issued
    (genuinely complex modes mean the sources are not real-separable) and
    the real part is taken regardless.
    """
    X = np.asarray(X, dtype=float)
    W = np.asarray(left_vecs)
    raw = (W @ X).T  # n x k
    k = raw.shape[1]
    out = np.empty(raw.shape, dtype=float)
    for j in range(k):
        z = raw[:, j]
        if np.iscomplexobj(z):
            # e^{2i theta} = sum(z^2)/|sum(z^2)| for z = e^{i theta} * real
            m = np.sum(z * z)
            if abs(m) > 0:
                z = z * np.exp(-0.5j * np.angle(m))
            residue = np.linalg.norm(z.imag)
            if residue > imag_tol * np.linalg.norm(z):
                warnings.warn(
                    f"recovered signal {j} has imaginary residue "
                    f"{residue:.3e}; modes appear genuinely complex",
                    stacklevel=2,
                )
            z = z.real
        nrm = np.linalg.norm(z)
        if nrm == 0.0:
            raise ValueError(f"recovered signal {j} is identically zero")
        out[:, j] = z / nrm
    return out


def dmf(X, tau, k, dense_threshold=2000):
    """Dynamic mode factorization: de-mean, fit, and factor ``X ~= Q_hat @ C_hat.T``.

    Steps: estimate the column mean ``mu_hat``, fit the lag-``tau``
    propagator of the de-meaned data, take the top-``k`` eigenvectors as
    ``Q_hat``, and push both the de-meaned data and the mean back through
    ``pinv(Q_hat)`` to get coordinates ``C_hat`` that include the mean.
    The part of ``mu_hat`` outside span(Q_hat) cannot be represented by a
    rank-k factorization; it is dropped and its norm reported.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[1]
    if not 1 <= k <= min(X.shape[0], n - tau - 1):
        raise ValueError(f"k={k} out of range for shape {X.shape} at tau={tau}")
    mu = X.mean(axis=1)
    Xbar = X - mu[:, None]
    fit = dmd_fit(Xbar, tau, k, dense_threshold=dense_threshold)
    Q_hat = fit.eig.vectors
    if np.all(fit.eig.values.imag == 0.0):
        Q_hat = Q_hat.real
    W = _pinv_any(Q_hat)
    coords_mean = W @ mu
    C_hat = (np.outer(coords_mean, np.ones(n)) + W @ Xbar).T
    mean_residual = float(np.linalg.norm(mu - Q_hat @ coords_mean))
    return DmfResult(
        Q_hat=Q_hat,
        C_hat=C_hat,
        mu_hat=mu,
        eigvals=fit.eig.values,
        mean_residual=mean_residual,
    )

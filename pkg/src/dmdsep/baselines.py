"""Comparison unmixers: AMUSE and plain PCA.

AMUSE whitens the data, forms the (non-circular) lag-tau covariance of
the whitened series, and eigendecomposes its symmetric part; the
estimated rotation is then unwhitened, so general mixing matrices are
reachable through the whitening step.  PCA has no such step: its modes
are orthonormal outright, which is exactly why it fails on
non-orthogonal mixtures.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg


@dataclass
class UnmixResult:
    """Estimated mixing directions and unit-norm recovered signals."""

    Q_hat: np.ndarray
    S_hat: np.ndarray
    method: str


def whiten_top_k(X, k):
    """De-mean and whiten onto the top-``k`` covariance eigenspace.

    Returns ``(Y, V, lam)`` where ``Y = diag(lam)^{-1/2} V^T (X - mean)``
    satisfies ``(1/n) Y Y^T = I_k`` and ``V, lam`` are the leading
    eigenpairs of the sample covariance (needed to unwhiten).  Rank-k
    noiseless data leaves the full p x p inverse square root undefined,
    which is why the reduced form is used.
    """
    X = np.asarray(X, dtype=float)
    p, n = X.shape
    if not 1 <= k <= p:
        raise ValueError(f"k={k} outside [1, {p}]")
    Xc = X - X.mean(axis=1, keepdims=True)
    cov = Xc @ Xc.T / n
    lam, V = linalg.eig_symmetric(cov)
    lam, V = lam[:k], V[:, :k]
    if lam[-1] <= 0.0 or lam[-1] <= 1e-12 * lam[0]:
        raise ValueError(
            f"sample covariance is degenerate on the top-{k} eigenspace "
            f"(eigenvalues {lam})"
        )
    Y = (V / np.sqrt(lam)).T @ Xc
    return Y, V, lam


def amuse(X, tau, k):
    """AMUSE unmixing at a single lag.

    Whitens via :func:`whiten_top_k`, symmetrizes the (non-circular)
    lag-``tau`` covariance of the whitened series, eigendecomposes it,
    and unwhitens the resulting rotation.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[1]
    if not 1 <= tau <= n - 2:
        raise ValueError(f"lag tau={tau} outside [1, {n - 2}]")
    Y, V, lam = whiten_top_k(X, k)
    B = Y[:, tau:] @ Y[:, : n - tau].T / (n - tau)
    ev, G = linalg.eig_symmetric((B + B.T) / 2.0)
    if k > 1 and np.min(np.abs(np.diff(ev))) < 1e-12 * (1.0 + np.abs(ev).max()):
        raise ValueError(
            f"tied eigenvalues in the whitened lag covariance ({ev}); "
            "sources are unidentifiable at this lag"
        )
    Q_hat = (V * np.sqrt(lam)) @ G
    Q_hat = Q_hat / np.linalg.norm(Q_hat, axis=0)
    S_hat = (G.T @ Y).T
    S_hat = S_hat / np.linalg.norm(S_hat, axis=0)
    return UnmixResult(Q_hat=Q_hat, S_hat=S_hat, method="amuse")


def pca_unmix(X, k):
    """PCA baseline: top-k left singular vectors of the de-meaned data.

    ``Q_hat`` is column-orthonormal by construction, so this estimator
    cannot represent a non-orthogonal mixing matrix.
    """
    X = np.asarray(X, dtype=float)
    if not 1 <= k <= min(X.shape):
        raise ValueError(f"k={k} outside [1, {min(X.shape)}]")
    Xc = X - X.mean(axis=1, keepdims=True)
    res = linalg.truncated_svd(Xc, k)
    S_hat = res.V / np.linalg.norm(res.V, axis=0)
    return UnmixResult(Q_hat=res.U, S_hat=S_hat, method="pca")

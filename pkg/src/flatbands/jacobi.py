"""Cyclic Jacobi eigenvalue iteration for batches of small Hermitian matrices."""

from __future__ import annotations

import numpy as np


class JacobiError(RuntimeError):
    pass


def jacobi_eigvalsh(mats: np.ndarray, max_sweeps: int = 30, rtol: float = 1e-15) -> np.ndarray:
    """Eigenvalues (ascending) of every Hermitian matrix in a (B, n, n) stack.

    Each (p, q) rotation is applied to the whole batch at once. Raises
    JacobiError if the off-diagonal mass has not vanished after
    ``max_sweeps`` sweeps.
    """
    a = np.array(mats, dtype=complex, copy=True)
    if a.ndim == 2:
        a = a[None]
    b, n, _ = a.shape
    if n == 1:
        return a[:, 0, 0].real.reshape(b, 1).copy()
    scale = np.maximum(np.sqrt((np.abs(a) ** 2).sum(axis=(1, 2))), 1e-300)
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt((np.abs(a[:, mask]) ** 2).sum(axis=1))
        if np.all(off <= rtol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                r = np.abs(apq)
                active = r > 1e-300
                phase = np.where(active, apq / np.where(active, r, 1.0), 1.0)
                app = a[:, p, p].real
                aqq = a[:, q, q].real
                tau = np.where(active, (aqq - app) / (2 * np.where(active, r, 1.0)), 0.0)
                sgn = np.where(tau >= 0, 1.0, -1.0)
                t = np.where(active, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                upp = c
                upq = s
                uqp = -s * np.conj(phase)
                uqq = c * np.conj(phase)
                colp = a[:, :, p].copy()
                colq = a[:, :, q].copy()
                a[:, :, p] = colp * upp[:, None] + colq * uqp[:, None]
                a[:, :, q] = colp * upq[:, None] + colq * uqq[:, None]
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :].copy()
                a[:, p, :] = np.conj(upp)[:, None] * rowp + np.conj(uqp)[:, None] * rowq
                a[:, q, :] = np.conj(upq)[:, None] * rowp + np.conj(uqq)[:, None] * rowq
    else:
        off = np.sqrt((np.abs(a[:, mask]) ** 2).sum(axis=1))
        if not np.all(off <= 1e3 * rtol * scale):
            raise JacobiError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(np.real(np.diagonal(a, axis1=1, axis2=2)), axis=1)

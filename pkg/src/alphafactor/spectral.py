"""Alpha-weighted graph matrices and their eigenvalues.

The matrix of a graph at weight ``a`` is a*D + (1-a)*A (degree-diagonal
plus adjacency); a=0 gives the adjacency matrix and a=1/2 gives half the
signless Laplacian. Row i always sums to degree(i), so the largest
eigenvalue lies between the minimum and maximum degree.

Two independent eigenvalue routes are provided on purpose: a shifted
power iteration for the dominant pair, and a cyclic Jacobi solver for the
full spectrum. They cross-check each other in the test suite.
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10
_JACOBI_ROTATION_THRESHOLD = 1e-13
_JACOBI_MAX_SWEEPS = 60
_RQI_POLISH_STEPS = 6


class ConvergenceError(RuntimeError):
    """Iteration cap reached; carries the last residual seen."""

    def __init__(self, message, residual, iterations):
        super().__init__(f"{message} (residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


def check_alpha(a, upper_open=False):
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {a}")
    if upper_open and a == 1.0:
        raise ValueError("alpha = 1 not supported here (requires alpha < 1)")
    return float(a)


def alpha_matrix(g, a):
    """Dense a*D + (1-a)*A of a graph, as a symmetric float array."""
    a = check_alpha(a)
    n = g.n
    mat = np.zeros((n, n))
    off = 1.0 - a
    for u in range(n):
        bits = g.rows[u]
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            mat[u, v] = off
        mat[u, u] = a * g.degree(u)
    return mat


@dataclass(frozen=True)
class SpectralResult:
    radius: float
    perron: np.ndarray
    residual: float
    iterations: int


def spectral_radius(g, a, tol=DEFAULT_TOL):
    """Largest eigenvalue of the alpha matrix, with its nonnegative eigenvector.

    Power iteration on (a*D + (1-a)*A) + I from the all-ones vector: the +1
    shift kills the period-2 oscillation of bipartite adjacency matrices, and
    the deterministic start makes results reproducible. When the two top
    eigenvalues nearly tie, the residual decays too slowly for the 200*n
    iteration cap even though the Rayleigh quotient has long converged; a
    few Rayleigh-quotient-iteration steps then polish the pair to the
    residual tolerance (still deterministic). For a disconnected graph this
    converges to the maximum eigenvalue over all components (the documented
    meaning of the radius here); the eigenvector is then only guaranteed
    nonnegative, not positive.
    """
    if g.n < 1:
        raise ValueError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    a = check_alpha(a)
    mat = alpha_matrix(g, a)
    n = g.n
    x = np.full(n, 1.0 / np.sqrt(n))
    cap = 200 * n
    lam = 0.0
    res = np.inf
    for it in range(1, cap + 1):
        z = mat @ x
        lam = float(x @ z)
        res = float(np.linalg.norm(z - lam * x))
        if res <= tol:
            return SpectralResult(radius=lam, perron=x, residual=res, iterations=it)
        y = z + x  # one matvec per step: (M + I) x = z + x
        x = y / np.linalg.norm(y)
    scale = max(1.0, float(np.max(np.abs(mat))))
    for extra in range(1, _RQI_POLISH_STEPS + 1):
        shift = lam
        try:
            y = np.linalg.solve(mat - shift * np.eye(n), x)
        except np.linalg.LinAlgError:
            y = np.linalg.solve(mat - (shift + 1e-14 * scale) * np.eye(n), x)
        x = y / np.linalg.norm(y)
        z = mat @ x
        lam = float(x @ z)
        res = float(np.linalg.norm(z - lam * x))
        if res <= tol:
            if float(x.sum()) < 0.0:
                x = -x
            return SpectralResult(radius=lam, perron=x, residual=res, iterations=cap + extra)
    raise ConvergenceError("power iteration did not converge", res, cap)


def full_spectrum(mat, tol=DEFAULT_TOL):
    """All eigenvalues of a symmetric matrix, nonincreasing, via cyclic Jacobi.

    Cyclic-by-row sweeps; rotations with pivot magnitude <= 1e-13 are
    skipped; terminates when the off-diagonal Frobenius norm drops to
    ``tol``. The eigenvalue sum then matches the trace to n*tol.
    """
    A = np.array(mat, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    n = A.shape[0]
    if n and np.max(np.abs(A - A.T)) > 1e-12 * max(1.0, np.max(np.abs(A))):
        raise ValueError("matrix must be symmetric")
    if n <= 1:
        return np.diag(A).copy()
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _offdiag_norm(A) <= tol:
            vals = np.sort(np.diag(A))[::-1]
            return vals
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= _JACOBI_ROTATION_THRESHOLD:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, q] = 0.0
                A[q, p] = 0.0
    raise ConvergenceError(
        "Jacobi sweeps did not converge", _offdiag_norm(A), _JACOBI_MAX_SWEEPS
    )


def _offdiag_norm(A):
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def quadratic_form_delta(g_after, g_before, x, a):
    """x^T (M(g_after) - M(g_before)) x, accumulated edge-wise.

    Each edge uv present only in g_after contributes
    a*(x_u^2 + x_v^2) + 2*(1-a)*x_u*x_v; edges only in g_before contribute
    the negative. The two graphs must share the vertex set.
    """
    if g_after.n != g_before.n:
        raise ValueError("graphs must share a vertex set")
    a = check_alpha(a)
    x = np.asarray(x, dtype=float)
    if x.shape != (g_after.n,):
        raise ValueError(f"vector length {x.shape} does not match n={g_after.n}")
    total = 0.0
    for u in range(g_after.n):
        changed = (g_after.rows[u] ^ g_before.rows[u]) >> (u + 1) << (u + 1)
        while changed:
            v = (changed & -changed).bit_length() - 1
            changed &= changed - 1
            term = a * (x[u] * x[u] + x[v] * x[v]) + 2.0 * (1.0 - a) * x[u] * x[v]
            if g_after.rows[u] >> v & 1:
                total += term
            else:
                total -= term
    return total

"""f-approximate metric reconstruction.

A sampled vertex u answers its whole row. Every v in the small ball
S_u = {v : 2*delta(u, v) <= f - 1} then gets estimates for free: 1 to the rest
of the ball, delta(u, w) - delta(u, v) to everything outside it. The loop
stops once every pair has an estimate.
"""

import logging

import numpy as np

from ..errors import ArgumentError, StructuralError
from ..graph_types import DistanceMatrix
from ..oracle import CountingOracle
from ..recon_types import ApproxMetric, ApproxVerification, ApproxViolation

logger = logging.getLogger(__name__)

RATIO_TOLERANCE = 1e-9


def approx_reconstruct(oracle: CountingOracle, f: float, rng: np.random.Generator) -> ApproxMetric:
    """Estimate every pairwise distance within a factor f.

    Later assignments overwrite earlier ones; each one alone satisfies
    est <= delta <= f * est.

    Raises:
        ArgumentError: f < 1.
        StructuralError: a free estimate would fall below 1.
    """
    if f < 1:
        raise ArgumentError(f"approximation factor must be >= 1, got {f}")
    n = oracle.n
    everyone = np.arange(n)
    est = np.zeros((n, n), dtype=np.int64)
    defined = np.eye(n, dtype=bool)
    remaining = n * (n - 1) // 2
    samples = 0

    def mark(v: int) -> int:
        fresh = int(np.count_nonzero(~defined[v]))
        defined[v, :] = True
        defined[:, v] = True
        return fresh

    while remaining > 0:
        u = int(rng.integers(n))
        samples += 1
        du = oracle.query_row(u, everyone).astype(np.int64)
        est[u, :] = du
        est[:, u] = du
        remaining -= mark(u)

        ball = 2 * du <= f - 1
        outside = du[~ball]
        for v in np.flatnonzero(ball):
            v = int(v)
            if v == u:
                continue
            if np.any(outside - du[v] < 1):
                raise StructuralError(f"estimate below 1 from sample {u} for vertex {v}")
            row = np.where(ball, 1, du - du[v])
            row[v] = 0
            est[v, :] = row
            est[:, v] = row
            remaining -= mark(v)

    logger.info("approx_reconstruct: n=%d f=%g after %d samples", n, f, samples)
    return ApproxMetric(f=f, est=est, samples=samples)


def verify_approx(metric: ApproxMetric, truth: DistanceMatrix) -> ApproxVerification:
    """Check est <= delta <= f * est on every pair."""
    if metric.n != truth.n:
        raise ArgumentError(f"estimate has n={metric.n}, truth has n={truth.n}")
    if truth.n == 1:
        return ApproxVerification(ok=True, worst_ratio=1.0)

    us, vs = np.triu_indices(truth.n, k=1)
    est = metric.est[us, vs].astype(float)
    true = truth.d[us, vs].astype(float)
    violations = []
    for kind, mask in (
        ("lower", est > true),
        ("upper", true > metric.f * est + RATIO_TOLERANCE),
    ):
        for k in np.flatnonzero(mask):
            violations.append(
                ApproxViolation(
                    u=int(us[k]), v=int(vs[k]),
                    estimate=int(est[k]), true_distance=int(true[k]), kind=kind,
                )
            )
    violations.sort(key=lambda viol: (viol.u, viol.v, viol.kind))
    return ApproxVerification(
        ok=not violations,
        worst_ratio=float((true / est).max()),
        violations=violations,
    )

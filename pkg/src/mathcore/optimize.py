"""
RelSpin EPR - Derivative-free Minimization

Thin wrapper around scipy's Nelder-Mead that stops on the simplex f-spread
alone and reports iteration-budget exhaustion as a flag.
"""
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from src.errors import MaxIterExceeded
from src.models.schemas import MinimizeResult

MAX_DIMENSION = 8


def minimize(
    f: Callable[[np.ndarray], float],
    x0: Sequence[float],
    tol: float = 1e-12,
    max_iter: int = 4000,
    step: Optional[float] = None,
    strict: bool = False,
) -> MinimizeResult:
    """
    Nelder-Mead minimization of ``f`` from ``x0``.

    Args:
        f: Real-valued objective on R^k, k <= 8
        x0: Starting point
        tol: Stop once max |f(v_i) - f(v_best)| over the simplex is below tol
        max_iter: Iteration budget
        step: Edge length of the initial simplex (x0 + step * e_i); scipy's
            5%-of-coordinate default when None
        strict: Raise MaxIterExceeded instead of returning converged=False

    Returns:
        MinimizeResult with the best vertex found. Deterministic given x0.
    """
    x_start = np.asarray(x0, dtype=float)
    k = x_start.size
    if x_start.ndim != 1 or not 1 <= k <= MAX_DIMENSION:
        raise ValueError(f"x0 must be a vector of length 1..{MAX_DIMENSION}")

    options = {
        "xatol": np.inf,  # terminate on f-spread only
        "fatol": tol,
        "maxiter": max_iter,
        "maxfev": max_iter * (k + 2),
    }
    if step is not None:
        options["initial_simplex"] = np.vstack([x_start, x_start + step * np.eye(k)])

    f_start = float(f(x_start))
    res = scipy_minimize(f, x_start, method="Nelder-Mead", options=options)

    # The start point is a simplex vertex; keep it unless strictly beaten
    if f_start <= float(res.fun):
        x_best, f_best = x_start, f_start
    else:
        x_best, f_best = np.asarray(res.x, dtype=float), float(res.fun)

    result = MinimizeResult(
        x=tuple(float(v) for v in x_best),
        fun=f_best,
        iterations=int(res.nit),
        evaluations=int(res.nfev) + 1,
        converged=bool(res.status == 0),
        message=str(res.message),
    )
    if strict and not result.converged:
        raise MaxIterExceeded(
            f"Nelder-Mead stopped after {result.iterations} iterations: {result.message}",
            result,
        )
    return result

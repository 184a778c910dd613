"""Backend selector for the batch kernels.

Imports the compiled extension when it is available and the
``WULFFKIT_PURE_PYTHON`` environment variable is unset (or "0");
otherwise falls back to the numpy implementations.  Both backends
export the same three functions with identical semantics:

- ``min_slack(X, M)``: per-row min of ``X @ M.T``
- ``max_dot(X, M)``: per-row max of ``X @ M.T``
- ``angles_to_point(X, p)``: stable geodesic angle from each row to p
"""

import os

import numpy as np

from . import _kernels_py

_FORCE_PURE = os.environ.get("WULFFKIT_PURE_PYTHON", "0") not in ("0", "", None)

if not _FORCE_PURE:
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"
else:
    _impl = _kernels_py
    BACKEND = "python"


def _prep(X):
    X = np.ascontiguousarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError("expected a 2-d point block")
    return X


def min_slack(X, M):
    X = _prep(X)
    M = _prep(M)
    if M.shape[0] == 0:
        return np.full(X.shape[0], np.inf)
    if X.shape[1] != M.shape[1]:
        raise ValueError("point block and direction set disagree on dimension")
    return _impl.min_slack(X, M)


def max_dot(X, M):
    X = _prep(X)
    M = _prep(M)
    if M.shape[0] == 0:
        return np.full(X.shape[0], -np.inf)
    if X.shape[1] != M.shape[1]:
        raise ValueError("point block and direction set disagree on dimension")
    return _impl.max_dot(X, M)


def angles_to_point(X, p):
    X = _prep(X)
    p = np.ascontiguousarray(np.asarray(p, dtype=float).reshape(-1))
    if X.shape[1] != p.size:
        raise ValueError("point block and reference point disagree on dimension")
    return _impl.angles_to_point(X, p)

"""Backend parity and edge-case behavior for the batch kernels."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from wulffkit import _kernels_py, kernels


def reference_min_slack(X, M):
    return (X @ M.T).min(axis=1)


def reference_max_dot(X, M):
    return (X @ M.T).max(axis=1)


def reference_angles(X, p):
    out = np.empty(X.shape[0])
    for i, row in enumerate(X):
        c = float(row @ p)
        perp = p - c * row
        out[i] = math.atan2(float(np.linalg.norm(perp)), c)
    return out


def random_blocks(seed, n=400, m=17, d=4):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, d))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    M = rng.normal(size=(m, d))
    M /= np.linalg.norm(M, axis=1, keepdims=True)
    return X, M


class TestActiveBackend:
    def test_matches_reference(self):
        X, M = random_blocks(1)
        assert np.abs(kernels.min_slack(X, M) - reference_min_slack(X, M)).max() <= 1e-14
        assert np.abs(kernels.max_dot(X, M) - reference_max_dot(X, M)).max() <= 1e-14
        p = M[0]
        assert np.abs(kernels.angles_to_point(X, p) - reference_angles(X, p)).max() <= 1e-12

    def test_matches_pure_backend(self):
        X, M = random_blocks(2)
        assert np.abs(kernels.min_slack(X, M) - _kernels_py.min_slack(X, M)).max() <= 1e-15
        assert np.abs(kernels.max_dot(X, M) - _kernels_py.max_dot(X, M)).max() <= 1e-15
        p = M[3]
        assert (
            np.abs(kernels.angles_to_point(X, p) - _kernels_py.angles_to_point(X, p)).max()
            <= 1e-15
        )

    def test_read_only_inputs_accepted(self):
        X, M = random_blocks(3)
        X.flags.writeable = False
        M.flags.writeable = False
        kernels.min_slack(X, M)
        kernels.max_dot(X, M)
        kernels.angles_to_point(X, M[0])  # read-only row view

    def test_non_contiguous_inputs_accepted(self):
        X, M = random_blocks(4, d=6)
        Xs = X[:, ::2]
        Ms = M[:, ::2]
        expect = reference_min_slack(np.ascontiguousarray(Xs), np.ascontiguousarray(Ms))
        assert np.abs(kernels.min_slack(Xs, Ms) - expect).max() <= 1e-14

    def test_angle_precision_near_zero(self):
        # arccos of the dot loses half the digits near zero angle; the
        # perpendicular form must not
        p = np.array([0.0, 0.0, 1.0])
        eps = 1e-9
        X = np.array([[math.sin(eps), 0.0, math.cos(eps)]])
        got = kernels.angles_to_point(X, p)[0]
        assert got == pytest.approx(eps, rel=1e-6)

    def test_empty_direction_set(self):
        X, _ = random_blocks(5)
        M = np.empty((0, 4))
        assert (kernels.min_slack(X, M) == np.inf).all()
        assert (kernels.max_dot(X, M) == -np.inf).all()

    def test_dimension_mismatch(self):
        X, M = random_blocks(6)
        with pytest.raises(ValueError):
            kernels.min_slack(X, M[:, :3])
        with pytest.raises(ValueError):
            kernels.max_dot(X, M[:, :3])
        with pytest.raises(ValueError):
            kernels.angles_to_point(X, M[0, :3])
        with pytest.raises(ValueError):
            kernels.min_slack(X[0], M)

    def test_large_block_chunking(self):
        # the pure backend processes large blocks in chunks; make sure
        # results are seam-free on a block crossing the chunk size
        X, M = random_blocks(7, n=70_000, m=5, d=3)
        assert (
            np.abs(_kernels_py.min_slack(X, M) - reference_min_slack(X, M)).max()
            <= 1e-14
        )


class TestBackendSelection:
    def test_backend_name_is_exposed(self):
        assert kernels.BACKEND in ("compiled", "python")

    def test_env_forces_pure(self):
        code = (
            "import wulffkit.kernels as k; print(k.BACKEND)"
        )
        env = dict(os.environ, WULFFKIT_PURE_PYTHON="1")
        out = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        assert out.stdout.strip() == "python"

    def test_cross_backend_parity_subprocess(self):
        # run the same computation under WULFFKIT_PURE_PYTHON=1 and
        # compare against the in-process (possibly compiled) backend
        X, M = random_blocks(8)
        expect = kernels.min_slack(X, M)
        code = (
            "import sys, numpy as np\n"
            "from wulffkit import kernels\n"
            "assert kernels.BACKEND == 'python'\n"
            "data = np.load(sys.argv[1])\n"
            "np.save(sys.argv[2], kernels.min_slack(data['X'], data['M']))\n"
        )
        import tempfile

        with tempfile.TemporaryDirectory() as td:
            inp = os.path.join(td, "in.npz")
            outp = os.path.join(td, "out.npy")
            np.savez(inp, X=X, M=M)
            env = dict(os.environ, WULFFKIT_PURE_PYTHON="1")
            subprocess.run(
                [sys.executable, "-c", code, inp, outp],
                check=True,
                env=env,
                capture_output=True,
            )
            got = np.load(outp)
        assert np.abs(got - expect).max() <= 1e-15

"""Primitive operations on unit vectors of the n-sphere.

Points of S^n are unit vectors in (n+1)-space.  Everything here is pure
and immutable; the tolerances are module constants so the whole package
agrees on what "zero" means at each layer.
"""

import numbers

import numpy as np

from .errors import DimensionMismatchError, NormalizationError

# Construction guarantee: unit vectors are normalized to this accuracy.
NORM_TOL = 1e-12
# Vectors shorter than this cannot be normalized meaningfully; the arc
# formula is never evaluated at (numerically) zero vectors.
NEAR_ZERO = 1e-9
# Closed-set membership slack for "dot >= 0" style tests.  Boundary
# points of closed sets must test as members despite rounding.
MEMBERSHIP_TOL = 1e-10


class Angle(float):
    """A geodesic length/radius/distance in radians, clamped to [0, pi].

    Values that overshoot the range by more than 1e-9 are rejected;
    smaller excursions are rounding noise and get clamped.
    """

    def __new__(cls, radians):
        r = float(radians)
        if r < 0.0:
            if r < -1e-9:
                raise ValueError(f"angle {r!r} is negative")
            r = 0.0
        elif r > np.pi:
            if r > np.pi + 1e-9:
                raise ValueError(f"angle {r!r} exceeds pi")
            r = float(np.pi)
        return super().__new__(cls, r)

    def __repr__(self):
        return f"Angle({float(self)!r})"


class UnitPoint:
    """A point of S^n stored as a read-only unit vector in (n+1)-space."""

    __slots__ = ("_vec",)

    def __init__(self, coords):
        v = np.array(coords, dtype=float).reshape(-1)
        if v.size < 2:
            raise ValueError("a sphere point needs at least 2 coordinates")
        n = float(np.linalg.norm(v))
        if n < NEAR_ZERO:
            raise NormalizationError(
                f"vector with norm {n:.3e} cannot define a direction"
            )
        v = v / n
        v.flags.writeable = False
        self._vec = v

    @property
    def vec(self):
        return self._vec

    @property
    def ambient_dim(self):
        return self._vec.size - 1

    def dot(self, other):
        return float(self._vec @ as_vector(other))

    def __iter__(self):
        return iter(self._vec.tolist())

    def __len__(self):
        return self._vec.size

    def __repr__(self):
        inner = ", ".join(repr(float(c)) for c in self._vec)
        return f"UnitPoint(({inner}))"

    def __eq__(self, other):
        if not isinstance(other, UnitPoint):
            return NotImplemented
        return self._vec.shape == other._vec.shape and bool(
            np.array_equal(self._vec, other._vec)
        )

    def __hash__(self):
        return hash(self._vec.tobytes())


def as_unit_point(value):
    """Coerce a UnitPoint or coordinate sequence to a UnitPoint."""
    if isinstance(value, UnitPoint):
        return value
    return UnitPoint(value)


def as_vector(value):
    """Coerce a UnitPoint or coordinate sequence to a float vector."""
    if isinstance(value, UnitPoint):
        return value.vec
    v = np.asarray(value, dtype=float).reshape(-1)
    return v


def _check_same_dim(p, q):
    if p.vec.size != q.vec.size:
        raise DimensionMismatchError(
            f"points live in R^{p.vec.size} and R^{q.vec.size}"
        )


def geodesic_distance(p, q):
    """Great-circle angle between two sphere points.

    Computed as atan2(|perp component|, dot): arccos of the dot product
    alone loses half the significant digits near 0 and pi, which would
    sink the 1e-8 agreement the dual-isometry checks need.
    """
    p = as_unit_point(p)
    q = as_unit_point(q)
    _check_same_dim(p, q)
    c = float(p.vec @ q.vec)
    perp = q.vec - c * p.vec
    s = float(np.linalg.norm(perp))
    return Angle(np.arctan2(s, c))


def arc_point(p, q, t):
    """Point at parameter t of the normalized-chord arc from p to q.

    Returns ((1-t) p + t q) / |(1-t) p + t q|.  Antipodal endpoints are
    rejected: the chord passes through the origin at some t, so the arc
    is not defined.
    """
    p = as_unit_point(p)
    q = as_unit_point(q)
    _check_same_dim(p, q)
    if not isinstance(t, numbers.Real) or not 0.0 <= float(t) <= 1.0:
        raise ValueError(f"arc parameter {t!r} outside [0, 1]")
    if geodesic_distance(p, q) > np.pi - NEAR_ZERO:
        raise ValueError("arc endpoints are (numerically) antipodal")
    t = float(t)
    chord = (1.0 - t) * p.vec + t * q.vec
    n = float(np.linalg.norm(chord))
    if n < NEAR_ZERO:
        raise ValueError("arc chord passes through the origin")
    return UnitPoint(chord / n)


def hemisphere_contains(center, q, tol=MEMBERSHIP_TOL):
    """Whether q lies in the closed hemisphere H(center)."""
    center = as_unit_point(center)
    q = as_unit_point(q)
    _check_same_dim(center, q)
    return float(center.vec @ q.vec) >= -tol


def subspace_canonical_basis(projector, expected_dim=None):
    """Deterministic orthonormal basis (rows) of a subspace.

    The input is the orthogonal projector onto the subspace, which is
    basis-independent, so two different computations of the same
    subspace produce the same canonical basis.  The construction is
    Gram-Schmidt over the projected standard basis vectors with a sign
    fix (largest-magnitude entry made positive).
    """
    P = np.asarray(projector, dtype=float)
    d = P.shape[0]
    rows = []
    for j in range(d):
        w = P[:, j].copy()
        # two orthogonalization passes keep the basis orthonormal to
        # machine precision even for nearly dependent projections
        for _ in range(2):
            for b in rows:
                w -= (b @ w) * b
        nw = float(np.linalg.norm(w))
        if nw > 1e-9:
            w /= nw
            k = int(np.argmax(np.abs(w)))
            if w[k] < 0:
                w = -w
            rows.append(w)
    basis = np.array(rows) if rows else np.zeros((0, d))
    if expected_dim is not None and basis.shape[0] != expected_dim:
        raise NormalizationError(
            f"subspace basis has dimension {basis.shape[0]}, "
            f"expected {expected_dim}"
        )
    return basis


def complement_basis(p):
    """Canonical orthonormal basis (rows) of the complement of span(p)."""
    v = as_vector(p)
    n = float(np.linalg.norm(v))
    if n < NEAR_ZERO:
        raise NormalizationError("cannot complement a zero vector")
    v = v / n
    proj = np.eye(v.size) - np.outer(v, v)
    return subspace_canonical_basis(proj, expected_dim=v.size - 1)


def sample_cap(center, radius, rng_seed, count):
    """Deterministic area-uniform samples in the open cap around center.

    The colatitude density on S^n is proportional to sin(theta)^(n-1);
    we draw theta by rejection against the uniform envelope (sin is
    increasing on (0, pi/2), so the acceptance ratio is bounded by the
    value at the cap rim), then pick an independent uniform tangent
    direction.
    """
    center = as_unit_point(center)
    r = float(radius)
    if not 0.0 < r < np.pi / 2:
        raise ValueError(f"cap radius {r!r} outside (0, pi/2)")
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    n = center.ambient_dim
    rng = np.random.default_rng(int(rng_seed))
    basis = complement_basis(center)  # (n, n+1)
    sin_r = np.sin(r)
    out = []
    while len(out) < count:
        theta = rng.uniform(0.0, r)
        if n > 1:
            if rng.uniform() > (np.sin(theta) / sin_r) ** (n - 1):
                continue
        w = rng.normal(size=n)
        nw = float(np.linalg.norm(w))
        if nw < NEAR_ZERO:
            continue
        w /= nw
        vec = np.cos(theta) * center.vec + np.sin(theta) * (w @ basis)
        out.append(UnitPoint(vec))
    return out

"""Distances on the sphere: point-to-body, directed, Pompeiu-Hausdorff.

Exact point-to-body distances come from two independent routes that are
combined (each produces genuine body members, so each candidate is an
upper bound and the best route is exact):

- face enumeration: project the query onto the linear span of every
  generator subset, normalize, keep feasible projections (used for
  bodies with few generators, and vectorized over large point blocks);
- cone projection: Euclidean nearest point in the underlying cone via
  non-negative least squares, polished by an exact projection onto the
  span of the active generators.

Directed distances are exact when the pair is certified quarter-turn
free (some point of the target within a strict quarter turn of the
whole source): the squared cosine of the distance is then C^1, every
interior extremum over a source face is an eigenvector of a small
projected operator, and the finite candidate set (source generators
plus those eigenvectors) provably contains the maximizer.  The
maximum can land strictly inside a face — generators alone are NOT
enough; a regression test pins a pair where the best generator is
off by more than 1e-2.  Outside the certified regime the directed
distance falls back to dense sampling of the source with an explicit
error bound.
"""

import itertools
import math
import os

import numpy as np
from scipy.optimize import linprog

from . import kernels, oracles
from .body import SphericalBody, contains, hemisphere_body
from .cones import (
    FEAS_EPS,
    project_onto_cone,
    span_basis,
)
from .errors import ResolutionError, SeparationError
from .geometry import (
    MEMBERSHIP_TOL,
    NEAR_ZERO,
    Angle,
    UnitPoint,
    as_vector,
    geodesic_distance,
)
from .transforms import polar, polar_admissible

#: default sampling resolution (radians) for all sampled distances
DEFAULT_RESOLUTION = 0.005

#: bodies with a smaller minimum gap than this are treated as touching
DISJOINTNESS_GAP = 1e-7

#: boundary band excluded by the dilation-intersection identity check
IDENTITY_BAND = 1e-6

# face enumeration is used when the subset count stays desk-scale;
# keyed by ambient dimension (subset sizes grow with the rank)
_FACE_CAP = {2: 48, 3: 30, 4: 18, 5: 13}

# sampled paths refuse to expand more than this many band points
_BAND_LIMIT = 2_000_000

_SAFE_ASSIGN = 1e-12


def default_resolution():
    """Sampling resolution: WULFF_DEFAULT_RESOLUTION override or 0.005."""
    raw = os.environ.get("WULFF_DEFAULT_RESOLUTION")
    if raw is None or raw == "":
        return DEFAULT_RESOLUTION
    try:
        value = float(raw)
    except ValueError as exc:
        raise ResolutionError(
            f"WULFF_DEFAULT_RESOLUTION is not a number: {raw!r}"
        ) from exc
    _check_resolution(value)
    return value


def _check_resolution(resolution):
    if not (0.0 < resolution < 0.1):
        raise ResolutionError(
            f"sampling resolution must lie in (0, 0.1) radians, got {resolution}"
        )


def _resolve_resolution(resolution):
    if resolution is None:
        return default_resolution()
    resolution = float(resolution)
    _check_resolution(resolution)
    return resolution


def _stable_angle(x, y):
    """Geodesic angle between unit vectors via the perpendicular part."""
    c = float(x @ y)
    perp = y - c * x
    return math.atan2(float(np.linalg.norm(perp)), c)


# ---------------------------------------------------------------------------
# face spans
# ---------------------------------------------------------------------------


def _face_spans(body):
    """Orthonormal bases (stacked rows) for candidate face spans.

    Enumerates generator subsets of size up to the body's rank, keeps
    one orthonormal basis per distinct span, and drops spans filling
    the whole ambient space (projection there is the identity, which
    the membership test already covers).  Returns None when the
    generator count exceeds the per-dimension enumeration cap.
    """
    cached = body._cache.get("face_spans", False)
    if cached is not False:
        return cached
    G = body.generator_array
    m, d = G.shape
    cap = _FACE_CAP.get(d, 12)
    if m > cap:
        body._cache["face_spans"] = None
        return None
    rank = body.span()[1]
    # a proper face span never needs more generators than its dimension,
    # which is at most d - 1 for full-rank bodies and `rank` otherwise
    # (the body's own span carries relative-interior projections)
    max_size = min(m, rank if rank < d else d - 1)
    seen = {}
    for size in range(1, max_size + 1):
        for subset in itertools.combinations(range(m), size):
            B, r = span_basis(G[list(subset)])
            if r == d:
                continue
            P = B.T @ B
            key = np.round(P, 9).tobytes()
            if key not in seen:
                seen[key] = np.ascontiguousarray(B)
    spans = list(seen.values())
    body._cache["face_spans"] = spans
    return spans


# ---------------------------------------------------------------------------
# point-to-body distance (exact)
# ---------------------------------------------------------------------------


def _projection_candidates(v, body):
    """Body members that are candidate nearest points to v (unit rows)."""
    G = body.generator_array
    N = body.normal_array
    out = []
    proj, lam = project_onto_cone(G, v)
    pnorm = float(np.linalg.norm(proj))
    if pnorm > NEAR_ZERO:
        y = proj / pnorm
        if N.shape[0] == 0 or float((N @ y).min()) >= -MEMBERSHIP_TOL:
            out.append(y)
        # polish: the NNLS point identifies the active face; the exact
        # least-squares projection onto that face's span removes the
        # solver's iteration residue
        active = lam > 1e-12
        if active.any():
            B, _ = span_basis(G[active])
            w = (v @ B.T) @ B
            wn = float(np.linalg.norm(w))
            if wn > NEAR_ZERO:
                y2 = w / wn
                if N.shape[0] == 0 or float((N @ y2).min()) >= -MEMBERSHIP_TOL:
                    out.append(y2)
    return out


def point_body_distance(x, body):
    """Exact geodesic distance from a point to a body (an Angle)."""
    v = as_vector(x)
    if v.size != body.generator_array.shape[1]:
        raise ValueError(
            f"point lives in R^{v.size}, body in R^{body.generator_array.shape[1]}"
        )
    if contains(body, v):
        return Angle(0.0)
    G = body.generator_array
    N = body.normal_array
    # generator candidates; these are also exactly the nearest points
    # whenever the cone projection of v degenerates to the origin
    best = min(_stable_angle(v, g) for g in G)
    for y in _projection_candidates(v, body):
        best = min(best, _stable_angle(v, y))
    spans = _face_spans(body)
    if spans is not None:
        for B in spans:
            w = (v @ B.T) @ B
            wn = float(np.linalg.norm(w))
            if wn <= NEAR_ZERO:
                continue
            y = w / wn
            if N.shape[0] == 0 or float((N @ y).min()) >= -MEMBERSHIP_TOL:
                best = min(best, _stable_angle(v, y))
    return Angle(max(best, 0.0))


def batch_point_body_distance(X, body):
    """Exact distances from each row of X to the body (vectorized).

    Mirrors point_body_distance over a block: generator candidates
    always, face-span projections when the body admits enumeration,
    per-point cone projections otherwise.
    """
    X = np.ascontiguousarray(np.asarray(X, dtype=float))
    if X.ndim != 2 or X.shape[1] != body.generator_array.shape[1]:
        raise ValueError("point block does not match the body's ambient space")
    G = body.generator_array
    N = body.normal_array
    n = X.shape[0]
    if n == 0:
        return np.empty(0)
    best_cos = kernels.max_dot(X, G)
    if N.shape[0]:
        member = kernels.min_slack(X, N) >= -MEMBERSHIP_TOL
    else:
        member = np.ones(n, dtype=bool)
    spans = _face_spans(body)
    if spans is not None:
        for B in spans:
            C = X @ B.T
            cos = np.linalg.norm(C, axis=1)
            gain = cos > best_cos + 1e-15
            gain &= cos > 1e-12
            if not gain.any():
                continue
            Y = (C[gain] @ B) / cos[gain, None]
            if N.shape[0]:
                ok = kernels.min_slack(np.ascontiguousarray(Y), N) >= -MEMBERSHIP_TOL
            else:
                ok = np.ones(Y.shape[0], dtype=bool)
            idx = np.flatnonzero(gain)[ok]
            best_cos[idx] = cos[idx]
    else:
        for i in np.flatnonzero(~member):
            for y in _projection_candidates(X[i], body):
                best_cos[i] = max(best_cos[i], float(X[i] @ y))
    out = np.arccos(np.clip(best_cos, -1.0, 1.0))
    out[member] = 0.0
    return out


# ---------------------------------------------------------------------------
# dense body sampling
# ---------------------------------------------------------------------------


def _body_sample_points(body, resolution):
    """Sample the body within geodesic covering radius resolution/2.

    Grid points already inside the body are kept; grid points whose
    worst constraint slack puts them within one covering radius of the
    body are replaced by their nearest body point (cone projection).
    Together with the generators these samples cover the body: every
    body point has a sample within 2 * (resolution/2.05) < resolution.
    """
    d = body.generator_array.shape[1]
    sphere_dim = d - 1
    r_cov = resolution / 2.05
    spacing = r_cov / oracles.COVERING_COEFF.get(sphere_dim, math.inf)
    grid = oracles.sphere_grid(sphere_dim, spacing)
    N = body.normal_array
    if N.shape[0] == 0:
        return grid
    slack = kernels.min_slack(grid, N)
    inside = slack >= -MEMBERSHIP_TOL
    # a grid point within r_cov of a body point violates each
    # constraint by at most the chord length 2 sin(r_cov / 2)
    band_width = 2.0 * math.sin(r_cov / 2.0) + MEMBERSHIP_TOL
    band = (~inside) & (slack >= -band_width)
    band_idx = np.flatnonzero(band)
    if band_idx.size > _BAND_LIMIT:
        raise ResolutionError(
            f"sampling at resolution {resolution} needs {band_idx.size} projections; "
            "increase the resolution"
        )
    G = body.generator_array
    parts = [grid[inside], G]
    if band_idx.size:
        projected = np.empty((band_idx.size, d))
        keep = np.zeros(band_idx.size, dtype=bool)
        for row, i in enumerate(band_idx):
            proj, _ = project_onto_cone(G, grid[i])
            nrm = float(np.linalg.norm(proj))
            if nrm > NEAR_ZERO:
                projected[row] = proj / nrm
                keep[row] = True
        parts.append(projected[keep])
    return np.ascontiguousarray(np.vstack(parts))


def point_body_distance_sampled(x, body, resolution=None):
    """Sampled distance oracle; within `resolution` of the exact value."""
    v = as_vector(x)
    resolution = _resolve_resolution(resolution)
    samples = _body_sample_points(body, resolution)
    return Angle(float(kernels.angles_to_point(samples, v).min()))


# ---------------------------------------------------------------------------
# directed and Hausdorff distances
# ---------------------------------------------------------------------------


def _extrema_spans(body):
    """Orthonormal bases of the proper face spans of the body's cone.

    The directed-distance extremum search needs every span that can
    carry a boundary face of the body: generator pairs (edges), the
    zero sets of single support normals (facets), zero sets of normal
    pairs (lower faces in dimension >= 4), and the body's own span when
    it is rank-deficient.  Distinct spans are returned once each.
    """
    cached = body._cache.get("extrema_spans")
    if cached is not None:
        return cached
    G = body.generator_array
    N = body.normal_array
    m, d = G.shape
    rank = body.span()[1]
    seen = {}

    def add(rows):
        if rows.shape[0] < 2:
            return
        B, r = span_basis(rows)
        if r < 2 or r > d - 1:
            return
        key = np.round(B.T @ B, 9).tobytes()
        seen.setdefault(key, np.ascontiguousarray(B))

    for i in range(m):
        for j in range(i + 1, m):
            add(G[[i, j]])
    if N.shape[0]:
        tight = np.abs(G @ N.T) <= 1e-9
        for jn in range(N.shape[0]):
            add(G[tight[:, jn]])
        if d >= 4:
            for jn in range(N.shape[0]):
                for kn in range(jn + 1, N.shape[0]):
                    add(G[tight[:, jn] & tight[:, kn]])
    spans = list(seen.values())
    if rank < d:
        B, _ = body.span()
        spans.append(np.ascontiguousarray(B))
    body._cache["extrema_spans"] = spans
    return spans


def _deep_witness(a, b):
    """A point of b making a quarter-turn-free pair with a, or None.

    Solves a small linear program for a convex combination w of b's
    generators maximizing the worst inner product with a's generators.
    A strictly positive optimum certifies that every point of a is
    strictly within a quarter turn of w (hence of b), which keeps all
    point-to-body distances in the regime where the exact extremum
    enumeration is complete.
    """
    Ga = a.generator_array
    Gb = b.generator_array
    mb = Gb.shape[0]
    # variables (lambda, t): maximize t subject to Ga (Gb^T lambda) >= t
    c = np.zeros(mb + 1)
    c[mb] = -1.0
    A_ub = np.hstack([-(Ga @ Gb.T), np.ones((Ga.shape[0], 1))])
    A_eq = np.zeros((1, mb + 1))
    A_eq[0, :mb] = 1.0
    bounds = [(0.0, None)] * mb + [(None, 2.0)]
    res = linprog(
        c,
        A_ub=A_ub,
        b_ub=np.zeros(Ga.shape[0]),
        A_eq=A_eq,
        b_eq=np.ones(1),
        bounds=bounds,
        method="highs",
    )
    if not res.success or res.x is None or res.x[mb] <= 1e-9:
        return None
    w = Gb.T @ res.x[:mb]
    nw = float(np.linalg.norm(w))
    if nw < NEAR_ZERO:
        return None
    w = w / nw
    if float((Ga @ w).min()) <= 1e-9:
        return None
    return w


def _exact_directed(a, b):
    """Exact directed distance, or None outside the certified regime.

    Valid when some point of b is strictly within a quarter turn of all
    of a (then every point-to-body distance involved stays below pi/2,
    where the squared spherical support x -> |proj_cone(x)|^2 is
    continuously differentiable).  Any interior maximizer on a face
    with span F, whose nearest point has active span E, is then an
    eigenvector of P_F P_E P_F; vertices cover the rest.  Candidates
    are screened by their branch value before the exact evaluation.
    """
    if _deep_witness(a, b) is None:
        return None
    Ga = a.generator_array
    Na = a.normal_array
    d = Ga.shape[1]
    best = float(batch_point_body_distance(Ga, b).max())
    parts = []
    sigs = []
    by_dim_a = {}
    for B in _extrema_spans(a):
        by_dim_a.setdefault(B.shape[0], []).append(B)
    by_dim_b = {}
    for B in _extrema_spans(b):
        by_dim_b.setdefault(B.shape[0], []).append(B)
    for f, bases_a in by_dim_a.items():
        TF = np.stack(bases_a)
        for e, bases_b in by_dim_b.items():
            TE = np.stack(bases_b)
            T = np.einsum("afd,bed->abfe", TF, TE, optimize=True)
            M = (T @ np.swapaxes(T, 2, 3)).reshape(-1, f, f)
            vals, vecs = np.linalg.eigh(M)
            BF = np.broadcast_to(
                TF[:, None, :, :], (TF.shape[0], TE.shape[0], f, d)
            ).reshape(-1, f, d)
            X = np.einsum("pjk,pjd->pkd", vecs, BF).reshape(-1, d)
            sig = np.sqrt(np.clip(vals.reshape(-1), 0.0, 1.0))
            nrm = np.linalg.norm(X, axis=1)
            ok = nrm > 1e-9
            X = X[ok] / nrm[ok, None]
            parts.append(X)
            sigs.append(sig[ok])
    if parts:
        X = np.vstack(parts)
        sig = np.concatenate(sigs)
        # a candidate whose own stationary branch value cannot beat the
        # running maximum cannot be the true maximizer either: the true
        # maximizer appears with its exact branch value sigma = cos(dist)
        keep = np.arccos(np.clip(sig, -1.0, 1.0)) > best + 1e-15
        X = X[keep]
        if X.shape[0]:
            X = np.vstack([X, -X])
            if Na.shape[0]:
                X = X[kernels.min_slack(np.ascontiguousarray(X), Na) >= -1e-9]
        if X.shape[0]:
            _, idx = np.unique(np.round(X, 12), axis=0, return_index=True)
            dist = batch_point_body_distance(np.ascontiguousarray(X[idx]), b)
            best = max(best, float(dist.max()))
    if best >= math.pi / 2.0 - 1e-9:
        return None
    return best


def directed_distance_sampled(a, b, resolution=None):
    """Dense-sampling route for the directed distance.

    Always samples the source body, regardless of whether the exact
    path applies; the result is within `resolution` of the true value.
    """
    resolution = _resolve_resolution(resolution)
    samples = _body_sample_points(a, resolution)
    dist = batch_point_body_distance(samples, b)
    return Angle(float(dist.max())), resolution


def directed_distance_with_bound(a, b, resolution=None):
    """Directed distance with provenance: (value, error_bound, path).

    path is "exact" (error bound 0) when the face-extremum enumeration
    is certified complete for the pair, and "sampled" (error bound =
    resolution) for the dense fallback.
    """
    if a.generator_array.shape[1] != b.generator_array.shape[1]:
        raise ValueError("bodies live in different ambient spaces")
    Ga = a.generator_array
    if Ga.shape[0] == 1:
        return point_body_distance(Ga[0], b), 0.0, "exact"
    exact = _exact_directed(a, b)
    if exact is not None:
        return Angle(max(exact, 0.0)), 0.0, "exact"
    value, err = directed_distance_sampled(a, b, resolution)
    return value, err, "sampled"


def directed_distance(a, b, resolution=None):
    """max over x in a of point_body_distance(x, b)."""
    return directed_distance_with_bound(a, b, resolution)[0]


def hausdorff_with_bound(a, b, resolution=None):
    """Pompeiu-Hausdorff distance with its worst-case error bound."""
    d_ab, e_ab, p_ab = directed_distance_with_bound(a, b, resolution)
    d_ba, e_ba, p_ba = directed_distance_with_bound(b, a, resolution)
    path = "exact" if (p_ab == "exact" and p_ba == "exact") else "sampled"
    return Angle(max(d_ab, d_ba)), max(e_ab, e_ba), path


def hausdorff(a, b, resolution=None):
    """max of the two directed distances."""
    return hausdorff_with_bound(a, b, resolution)[0]


def hemisphere_hausdorff(p, q, validate_resolution=None):
    """Closed-form Hausdorff distance between hemisphere bodies.

    Equals the angle between the centers, saturating at pi/2 once the
    centers are more than a quarter turn apart.  When
    validate_resolution is given, the closed form is checked against
    the dense-sampling route on the actual hemisphere bodies (which
    always take the sampling path) and an assertion enforces agreement
    within max(1e-8, 2 * resolution).
    """
    d = geodesic_distance(p, q)
    closed = Angle(min(float(d), math.pi / 2.0))
    if validate_resolution is not None:
        sampled, err, path = hausdorff_with_bound(
            hemisphere_body(p), hemisphere_body(q), resolution=validate_resolution
        )
        assert path == "sampled"
        tol = max(1e-8, 2.0 * err)
        assert abs(float(closed) - float(sampled)) <= tol, (
            f"closed form {float(closed)} vs sampled {float(sampled)} "
            f"disagree beyond {tol}"
        )
    return closed


# ---------------------------------------------------------------------------
# dilations
# ---------------------------------------------------------------------------


def dilation_contains(body, r, x):
    """Whether x lies in the closed r-dilation of the body."""
    r = float(r)
    if not (0.0 < r < math.pi):
        raise ValueError(f"dilation radius must lie in (0, pi), got {r}")
    return float(point_body_distance(x, body)) <= r + 1e-10


def dilation_intersection_mismatches(w, r, samples, seed, route="body"):
    """Count sample points where the two r-dilation routes disagree.

    Route one: membership in the r-dilation of the polar body.  Route
    two: membership in the intersection of the r-dilations of the
    single hemispheres carried by the body's points:

    - route="body" intersects over every point P of the body.  The
      worst hemisphere deficit sup_P max(0, angle(x, P) - pi/2) is
      computed exactly from the antipode, because max_P angle(x, P)
      = pi - min_P angle(-x, P) = pi - (distance from -x to the body);
      no convexity argument is involved.
    - route="generators" intersects over the generators only, with
      deficit max over g of max(0, angle(x, g) - pi/2).  This is NOT
      equivalent: angle(x, .) is not geodesically convex past pi/2,
      so its maximum over the body can land in a face interior and
      exceed the generator maximum (points between the two routes'
      thresholds then disagree).  Kept as the literal finite formula;
      tests pin a concrete square where it fails while "body" agrees.

    Points within IDENTITY_BAND of either boundary are excluded.
    Returns (mismatches, tested).
    """
    r = float(r)
    if not (0.0 < r < math.pi / 2.0):
        raise ValueError(f"identity check needs 0 < r < pi/2, got {r}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if route not in ("body", "generators"):
        raise ValueError(f"route must be 'body' or 'generators', got {route!r}")
    if not polar_admissible(w):
        raise ValueError("body has a trivial polar; identity check undefined")
    pw = polar(w)
    d = w.generator_array.shape[1]
    X = oracles.uniform_sphere_points(d - 1, samples, seed)
    dist_polar = batch_point_body_distance(X, pw)
    if route == "body":
        worst = math.pi - batch_point_body_distance(-X, w)
    else:
        worst = np.arccos(np.clip(kernels.min_slack(X, w.generator_array), -1.0, 1.0))
    dist_hemis = np.maximum(worst - math.pi / 2.0, 0.0)
    in_polar = dist_polar <= r + 1e-10
    in_hemis = dist_hemis <= r + 1e-10
    near = (np.abs(dist_polar - r) <= IDENTITY_BAND) | (
        np.abs(dist_hemis - r) <= IDENTITY_BAND
    )
    mismatch = (in_polar != in_hemis) & ~near
    return int(mismatch.sum()), int((~near).sum())


def dilation_intersection_check(w, r, samples, seed, route="body"):
    """True iff both r-dilation routes agree away from the boundary."""
    bad, _ = dilation_intersection_mismatches(w, r, samples, seed, route=route)
    return bad == 0


# ---------------------------------------------------------------------------
# separation
# ---------------------------------------------------------------------------


def min_body_gap(a, b, max_iter=120):
    """Smallest geodesic distance between points of two bodies.

    Alternating nearest-point iteration on the two cones, started from
    the closest generator pair.  For bodies in a common open hemisphere
    this converges to the minimizing pair; it is used as a disjointness
    gate, with the separation solve providing the final certificate.
    """
    Ga = a.generator_array
    Gb = b.generator_array
    if Ga.shape[1] != Gb.shape[1]:
        raise ValueError("bodies live in different ambient spaces")
    dots = Ga @ Gb.T
    i, j = np.unravel_index(int(np.argmax(dots)), dots.shape)
    x, y = Ga[i], Gb[j]
    best = _stable_angle(x, y)
    for _ in range(max_iter):
        px, _ = project_onto_cone(Ga, y)
        nx = float(np.linalg.norm(px))
        if nx > NEAR_ZERO:
            x = px / nx
        else:
            x = Ga[int(np.argmax(Ga @ y))]
        py, _ = project_onto_cone(Gb, x)
        ny = float(np.linalg.norm(py))
        if ny > NEAR_ZERO:
            y = py / ny
        else:
            y = Gb[int(np.argmax(Gb @ x))]
        current = _stable_angle(x, y)
        if best - current < 1e-14:
            best = min(best, current)
            break
        best = current
    return Angle(best)


def separate(a, b):
    """Unit normal of a great sphere with a inside and b strictly outside.

    Solves a small linear program maximizing the two-sided margin over
    the generator sets, then re-verifies both clauses before returning.
    Margin positivity at the generators transfers to the whole bodies:
    every body member is a convex-cone combination y = sum(lam_i g_i)
    with sum(lam_i) >= |y| = 1, so q . y <= -eps carries over.
    """
    Ga = a.generator_array
    Gb = b.generator_array
    if Ga.shape[1] != Gb.shape[1]:
        raise ValueError("bodies live in different ambient spaces")
    gap = min_body_gap(a, b)
    if float(gap) <= DISJOINTNESS_GAP:
        raise SeparationError(
            f"no-separator: bodies are closer than the disjointness gap ({float(gap):.3e})"
        )
    d = Ga.shape[1]
    # variables (q, t): maximize t subject to  Ga q >= t,  Gb q <= -t
    c = np.zeros(d + 1)
    c[d] = -1.0
    A_ub = np.zeros((Ga.shape[0] + Gb.shape[0], d + 1))
    A_ub[: Ga.shape[0], :d] = -Ga
    A_ub[: Ga.shape[0], d] = 1.0
    A_ub[Ga.shape[0] :, :d] = Gb
    A_ub[Ga.shape[0] :, d] = 1.0
    bounds = [(-1.0, 1.0)] * d + [(None, 2.0)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(A_ub.shape[0]), bounds=bounds, method="highs")
    if not res.success or res.x is None or res.x[d] <= _SAFE_ASSIGN:
        raise SeparationError()
    q = res.x[:d]
    nq = float(np.linalg.norm(q))
    if nq < NEAR_ZERO:
        raise SeparationError()
    q = q / nq
    if float((Ga @ q).min()) < -MEMBERSHIP_TOL or float((Gb @ q).max()) > -FEAS_EPS:
        raise SeparationError()
    return UnitPoint(q)

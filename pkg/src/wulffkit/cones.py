"""Polyhedral cone computations on raw coordinate arrays.

Every function here works on (m, d) float arrays whose rows are ray or
constraint directions.  Bodies on the sphere are handled one level up;
this module only knows cones.

Conventions
-----------
* A cone is given by generating rays (V-form) or by constraint normals
  (H-form, meaning {x : n . x >= 0 for all n}).
* Non-pointed cones are reported as (pointed rays, lineality basis);
  callers that need a plain generator list append +/- each lineality
  basis vector.
* Tolerance hierarchy: ray identity RAY_TOL = 1e-9 is coarser than
  sign classification CLASS_TOL = 1e-10, which is coarser than the
  construction accuracy (~1e-12), so canonicalization decisions stay
  stable under downstream arithmetic.
"""

from itertools import combinations

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from .errors import NormalizationError
from .geometry import NEAR_ZERO, subspace_canonical_basis

RAY_TOL = 1e-9    # two unit rays within this chordal distance are one ray
CLASS_TOL = 1e-10  # sign classification of dot products / membership slack
FEAS_EPS = 1e-9   # strict-positivity margin demanded of LP witnesses
SPAN_TOL = 1e-10  # singular values below this do not extend a span


def unitize(M):
    """Normalize rows to unit length; reject near-zero rows."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        M = M.reshape(1, -1) if M.ndim == 1 else M
    if M.shape[0] == 0:
        return M
    norms = np.linalg.norm(M, axis=1)
    if (norms < NEAR_ZERO).any():
        raise NormalizationError("zero row cannot define a ray")
    return M / norms[:, None]


def dedupe_rays(M, tol=RAY_TOL):
    """Drop rows that repeat an earlier row within chordal distance tol."""
    if M.shape[0] <= 1:
        return M
    keep = []
    for i in range(M.shape[0]):
        if keep:
            gaps = np.linalg.norm(M[keep] - M[i], axis=1)
            if gaps.min() <= tol:
                continue
        keep.append(i)
    return M[keep]


def lex_sorted_rows(M):
    """Rows sorted lexicographically (first coordinate is primary)."""
    if M.shape[0] <= 1:
        return M
    order = np.lexsort(M[:, ::-1].T)
    return M[order]


def span_basis(M, tol=SPAN_TOL):
    """Orthonormal basis (rows) of the row span of M, plus its rank."""
    M = np.asarray(M, dtype=float)
    if M.shape[0] == 0:
        return np.zeros((0, M.shape[1] if M.ndim == 2 else 0)), 0
    _, sv, Vt = np.linalg.svd(M, full_matrices=False)
    rank = int((sv > tol).sum())
    return Vt[:rank], rank


def nonneg_lstsq(A, b, max_iter=None):
    """min |A x - b| over x >= 0 by the classical active-set algorithm.

    scipy.optimize.nnls (the >= 1.12 rewrite) returns KKT-violating
    coefficient vectors with a wrong (often zero) reported residual on
    underdetermined systems — and every cone fit here is underdetermined
    (d equations, m > d generator columns) — so this module carries its
    own implementation with exact least-squares subproblems.  Returns
    (x, residual_norm); the residual is recomputed from x, never trusted
    from intermediate state.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if max_iter is None:
        max_iter = 6 * n + 60
    scale = float(np.abs(A).max(initial=0.0)) * float(np.linalg.norm(b))
    grad_tol = 1e-12 * max(1.0, scale)
    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    for _ in range(max_iter):
        grad = A.T @ (b - A @ x)
        grad[passive] = -np.inf
        j = int(np.argmax(grad))
        if not np.isfinite(grad[j]) or grad[j] <= grad_tol:
            break
        passive[j] = True
        for _ in range(max_iter):
            idx = np.flatnonzero(passive)
            sol, *_ = np.linalg.lstsq(A[:, idx], b, rcond=None)
            s = np.zeros(n)
            s[idx] = sol
            neg = passive & (s <= 0.0)
            if not neg.any():
                x = s
                break
            # back-step to the first passive coordinate that hits zero,
            # then drop every coordinate pinned at the boundary
            ratios = x[neg] / (x[neg] - s[neg])
            alpha = float(ratios.min())
            x = x + alpha * (s - x)
            drop = passive & (x <= 1e-14)
            x[drop] = 0.0
            passive[drop] = False
            if not passive.any():
                x = np.zeros(n)
                break
    x = np.where(x > 0.0, x, 0.0)
    return x, float(np.linalg.norm(A @ x - b))


def cone_member(G, x, tol=RAY_TOL):
    """Whether x lies in cone(rows of G), via a nonnegative fit."""
    if G.shape[0] == 0:
        return float(np.linalg.norm(x)) <= tol
    _, res = nonneg_lstsq(G.T, np.asarray(x, dtype=float))
    return res <= tol


def project_onto_cone(G, x):
    """Euclidean projection of x onto cone(rows of G).

    Returns (projection, coefficient vector).  The projection solves
    min |G^T lam - x| over lam >= 0, which is exactly the nearest point
    of the cone.
    """
    x = np.asarray(x, dtype=float)
    if G.shape[0] == 0:
        return np.zeros_like(x), np.zeros(0)
    lam, _ = nonneg_lstsq(G.T, x)
    return G.T @ lam, lam


def pointed_witness(G):
    """Unit q with q . g >= FEAS_EPS for every row g, or None.

    Existence of such a q says cone(G) is pointed (equivalently: the
    rows sit in a common open half-space).  The LP maximizes the worst
    slack inside the unit box; the witness is re-verified after
    normalization rather than trusted from the solver.
    """
    G = np.asarray(G, dtype=float)
    m, d = G.shape
    if m == 0:
        return None
    c = np.zeros(d + 1)
    c[-1] = -1.0
    A = np.hstack([-G, np.ones((m, 1))])
    bounds = [(-1.0, 1.0)] * d + [(None, 2.0)]
    res = linprog(c, A_ub=A, b_ub=np.zeros(m), bounds=bounds, method="highs")
    if not res.success:
        return None
    q = res.x[:d]
    nq = float(np.linalg.norm(q))
    if nq < NEAR_ZERO:
        return None
    q = q / nq
    if float((G @ q).min()) >= FEAS_EPS:
        return q
    return None


def interior_witness(N, dim):
    """Unit q with q . n >= FEAS_EPS for all constraint normals, or None.

    With no constraints at all the whole space qualifies and the first
    canonical direction is returned.
    """
    N = np.asarray(N, dtype=float).reshape(-1, dim)
    if N.shape[0] == 0:
        e = np.zeros(dim)
        e[0] = 1.0
        return e
    return pointed_witness(N)


def nontrivial_dual_witness(G):
    """A nonzero q with q . g >= 0 for all rows, or None if the dual
    cone is the origin alone.

    Sweeps the +/- coordinate objectives over the feasible box; the
    dual cone is nontrivial iff one sweep finds a point with positive
    norm (any unit dual vector has box-norm >= 1/sqrt(d), far above the
    decision threshold).
    """
    G = np.asarray(G, dtype=float)
    m, d = G.shape
    for j in range(d):
        for sgn in (1.0, -1.0):
            c = np.zeros(d)
            c[j] = -sgn
            res = linprog(
                c,
                A_ub=-G,
                b_ub=np.zeros(m),
                bounds=[(-1.0, 1.0)] * d,
                method="highs",
            )
            if res.success and sgn * res.x[j] > 1e-7:
                q = res.x / np.linalg.norm(res.x)
                if float((G @ q).min()) >= -FEAS_EPS:
                    return q
    return None


def _orthonormalize(rows):
    """Gram-Schmidt with a repeat pass; drops dependent rows."""
    out = []
    for w in rows:
        w = w.copy()
        for _ in range(2):
            for b in out:
                w -= (b @ w) * b
        nw = float(np.linalg.norm(w))
        if nw > NEAR_ZERO:
            out.append(w / nw)
    return out


def _project_off(v, basis_rows):
    for b in basis_rows:
        v = v - (b @ v) * b
    return v


def _dd_in_span(C):
    """Incremental double description for {q in R^s : C q >= 0}.

    C rows must be unit vectors.  State is an orthonormal lineality
    basis L plus unit rays R kept orthogonal to span(L); constraints
    are added one at a time.  A constraint acting on the lineality
    triggers a pivot cut; otherwise rays are split by sign and adjacent
    positive/negative pairs are combined (adjacency decided by the
    combinatorial zero-set containment test against the constraints
    processed so far).

    Returns (rays (k, s), leftover lineality rows).  When C spans R^s
    the leftover lineality is empty and the rays are exactly the
    extreme rays of the (pointed) solution cone.
    """
    m, s = C.shape
    L = [np.eye(s)[j] for j in range(s)]
    R = np.zeros((0, s))
    processed = np.zeros((0, s))
    for g in C:
        if L:
            dl = np.array([g @ l for l in L])
            k = int(np.argmax(np.abs(dl)))
            if abs(dl[k]) > CLASS_TOL:
                # lineality cut: the pivot direction w leaves the
                # lineality and becomes the one ray with g . w = 1
                w = L[k] / dl[k]
                newL = _orthonormalize(
                    [L[j] - (g @ L[j]) * w for j in range(len(L)) if j != k]
                )
                newR = []
                for r in R:
                    r2 = _project_off(r - (g @ r) * w, newL)
                    nr = float(np.linalg.norm(r2))
                    if nr > NEAR_ZERO:
                        newR.append(r2 / nr)
                w2 = _project_off(w, newL)
                newR.append(w2 / np.linalg.norm(w2))
                L = newL
                R = dedupe_rays(np.array(newR))
                processed = np.vstack([processed, g[None, :]])
                continue
        # ray step: g vanishes on the current lineality
        sv = R @ g if R.shape[0] else np.zeros(0)
        pos = sv > CLASS_TOL
        neg = sv < -CLASS_TOL
        zer = ~pos & ~neg
        if not neg.any():
            processed = np.vstack([processed, g[None, :]])
            continue
        if not pos.any():
            R = R[zer]
            processed = np.vstack([processed, g[None, :]])
            continue
        if processed.shape[0]:
            Zb = np.abs(R @ processed.T) <= CLASS_TOL
        else:
            Zb = np.zeros((R.shape[0], 0), dtype=bool)
        not_Zb = (~Zb).astype(float)
        pi = np.where(pos)[0]
        ni = np.where(neg)[0]
        new_rays = []
        for p in pi:
            common = Zb[p] & Zb[ni]  # (n_neg, n_processed)
            # viol[j, r] counts active constraints of the pair (p, ni[j])
            # that ray r misses; zero means Z(r) contains the pair's
            # common zero set, which kills adjacency
            viol = common.astype(float) @ not_Zb.T
            viol[:, p] = 1.0
            viol[np.arange(len(ni)), ni] = 1.0
            adjacent = (viol > 0.5).all(axis=1)
            for jj in np.where(adjacent)[0]:
                mneg = ni[jj]
                comb = sv[p] * R[mneg] - sv[mneg] * R[p]
                nc = float(np.linalg.norm(comb))
                if nc > NEAR_ZERO:
                    new_rays.append(comb / nc)
        kept = R[pos | zer]
        if new_rays:
            R = dedupe_rays(np.vstack([kept, np.array(new_rays)]))
        else:
            R = kept
        processed = np.vstack([processed, g[None, :]])
    return R, L


def dual_cone_rays(G):
    """Extreme structure of the dual cone {q : q . g >= 0 for rows g}.

    Returns (rays, lineality_basis), both with lexicographically sorted
    rows.  The computation runs in span(G) coordinates, where the dual
    is pointed; the orthogonal complement of span(G) is the dual's
    lineality and is appended directly.
    """
    G = dedupe_rays(unitize(np.asarray(G, dtype=float)))
    d = G.shape[1]
    B, s = span_basis(G)
    if s == 0:
        raise NormalizationError("cone has no span")
    Gs = unitize(G @ B.T)
    rays_s, leftover = _dd_in_span(lex_sorted_rows(Gs))
    rays = rays_s @ B if rays_s.shape[0] else np.zeros((0, d))
    perp = np.eye(d) - B.T @ B
    if leftover:
        M = np.array(leftover) @ B
        perp = perp + M.T @ M
    lin = subspace_canonical_basis(perp)
    if lin.shape[0] and rays.shape[0]:
        rays = rays - (rays @ lin.T) @ lin
        norms = np.linalg.norm(rays, axis=1)
        rays = rays[norms > NEAR_ZERO]
        if rays.shape[0]:
            rays = unitize(rays)
    rays = lex_sorted_rows(dedupe_rays(rays)) if rays.shape[0] else rays
    return rays, lin


def dual_cone_rays_bruteforce(G):
    """Subset-enumeration oracle for dual_cone_rays.

    Every extreme ray of the (pointed, in span coordinates) dual cone
    has at least s-1 linearly independent active constraints, so the
    nullspace directions of all (s-1)-subsets of the generators, kept
    when feasible, enumerate all extreme rays.  Slow and independent of
    the double-description code; used for cross-validation.
    """
    G = dedupe_rays(unitize(np.asarray(G, dtype=float)))
    d = G.shape[1]
    B, s = span_basis(G)
    if s == 0:
        raise NormalizationError("cone has no span")
    Gs = unitize(G @ B.T)
    m = Gs.shape[0]
    cands = []
    for subset in combinations(range(m), s - 1):
        if subset:
            A = Gs[list(subset)]
            _, sv, Vt = np.linalg.svd(A)
            rank = int((sv > 1e-8).sum())
            if rank < s - 1:
                continue
            q = Vt[-1]
        else:
            q = np.ones(1)
        for cand in (q, -q):
            if float((Gs @ cand).min()) >= -RAY_TOL:
                cands.append(cand / np.linalg.norm(cand))
    rays_s = dedupe_rays(np.array(cands)) if cands else np.zeros((0, s))
    rays = rays_s @ B if rays_s.shape[0] else np.zeros((0, d))
    lin = subspace_canonical_basis(np.eye(d) - B.T @ B)
    rays = lex_sorted_rows(rays) if rays.shape[0] else rays
    return rays, lin


def _nnls_reduce(R):
    """Irredundant rays of a pointed cone by per-ray membership tests.

    A deduplicated ray is extreme iff it is not a nonnegative
    combination of the others; the tests are independent of each other,
    so they can run against the full list.
    """
    m = R.shape[0]
    keep = []
    for i in range(m):
        others = np.delete(R, i, axis=0)
        if others.shape[0] == 0 or not cone_member(others, R[i]):
            keep.append(i)
    return R[keep]


def extreme_rays_nnls(G):
    """Slow-path canonical V-form (pointed part only); cross-check API."""
    G = dedupe_rays(unitize(np.asarray(G, dtype=float)))
    return lex_sorted_rows(_nnls_reduce(G))


def _pointed_extreme(R):
    """Extreme rays of cone(R) assuming the cone is pointed."""
    m, d = R.shape
    B, s = span_basis(R)
    if m <= s or s == 1:
        # linearly independent rays span a simplicial cone; a pointed
        # 1-dimensional cone is a single ray
        return R if m <= s else R[:1]
    Rs = unitize(R @ B.T)
    w = pointed_witness(Rs)
    if w is None:
        return _nnls_reduce(R)
    if s == 2:
        wp = np.array([-w[1], w[0]])
        ang = np.arctan2(Rs @ wp, Rs @ w)
        idx = sorted({int(np.argmin(ang)), int(np.argmax(ang))})
        return R[idx]
    # gnomonic section: rays scaled to the hyperplane {x . w = 1} turn
    # extreme rays into vertices of a convex polytope
    t = Rs @ w
    X = Rs / t[:, None]
    Bw = subspace_canonical_basis(np.eye(s) - np.outer(w, w))
    U = (X - w) @ Bw.T
    try:
        hull = ConvexHull(U)
    except QhullError:
        return _nnls_reduce(R)
    idx = sorted(int(v) for v in hull.vertices)
    return R[idx]


def extreme_rays(G):
    """Canonical irredundant V-form of cone(rows of G).

    Returns (pointed rays, lineality basis), rows lex-sorted.  The
    lineality space is the span of the two-sided generators (those g
    with -g also in the cone): any vanishing nonnegative combination
    only involves two-sided generators, so they span every line the
    cone contains.
    """
    G = dedupe_rays(unitize(np.asarray(G, dtype=float)))
    d = G.shape[1]
    m = G.shape[0]
    two = [i for i in range(m) if cone_member(G, -G[i])]
    if two:
        Bl, _ = span_basis(G[two])
        lin = subspace_canonical_basis(Bl.T @ Bl)
        rest = G - (G @ lin.T) @ lin
        norms = np.linalg.norm(rest, axis=1)
        rest = rest[norms > NEAR_ZERO]
        if rest.shape[0]:
            rest = dedupe_rays(unitize(rest))
    else:
        lin = np.zeros((0, d))
        rest = G
    if rest.shape[0] == 0:
        return np.zeros((0, d)), lin
    rays = _pointed_extreme(rest)
    return lex_sorted_rows(rays), lin


def rays_with_lineality(rays, lin):
    """Plain generator list: pointed rays plus +/- lineality basis."""
    parts = [rays] if rays.shape[0] else []
    if lin.shape[0]:
        parts.append(lin)
        parts.append(-lin)
    if not parts:
        d = rays.shape[1] if rays.ndim == 2 else lin.shape[1]
        return np.zeros((0, d))
    return lex_sorted_rows(np.vstack(parts))

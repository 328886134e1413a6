"""Shared numeric helpers: direction sets, seeded streams, clustering, pmap."""

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def frob(a):
    return float(np.linalg.norm(a))


def rng_stream(seed, *path):
    """Deterministic generator for a (seed, index...) address.

    Splitting by path index keeps parallel and serial sweeps identical.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=path))


def unit_directions(d, count, seed=0):
    """`count` unit vectors in R^d.

    d = 1: alternating +/-1; d = 2: uniform angles with a seed-derived phase;
    d = 3: Fibonacci sphere with a seed-derived golden-angle offset;
    d >= 4: seeded Gaussian normalization.
    """
    if d < 1:
        raise ValueError("direction dimension must be >= 1")
    if count < 1:
        raise ValueError("direction count must be >= 1")
    if d == 1:
        u = np.ones((count, 1))
        u[1::2, 0] = -1.0
        return u
    if d == 2:
        phase = (seed * (_GOLDEN - 1.0)) % 1.0
        theta = 2.0 * np.pi * (np.arange(count) + phase) / count
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if d == 3:
        phase = (seed * (_GOLDEN - 1.0)) % 1.0
        i = np.arange(count)
        z = 1.0 - 2.0 * (i + 0.5) / count
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        theta = 2.0 * np.pi * ((i + phase) / _GOLDEN % 1.0)
        return np.column_stack([r * np.cos(theta), r * np.sin(theta), z])
    rng = rng_stream(seed, 0xD1)
    g = rng.standard_normal((count, d))
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0.0] = 1.0
    return g / norms[:, None]


def normalize(u):
    u = np.asarray(u, dtype=float)
    n = np.linalg.norm(u)
    if n == 0.0:
        raise ValueError("zero direction")
    return u / n


def cluster_points(points, radius):
    """Greedy first-fit clustering in input order.

    Returns (means, members) where members[i] lists input indices of cluster i.
    Deterministic; used for vertex dedup at tolerance `radius`.
    """
    means = []
    sums = []
    members = []
    for idx, p in enumerate(points):
        placed = False
        for ci, mu in enumerate(means):
            if np.linalg.norm(p - mu) <= radius:
                sums[ci] += p
                members[ci].append(idx)
                means[ci] = sums[ci] / len(members[ci])
                placed = True
                break
        if not placed:
            means.append(np.array(p, dtype=float))
            sums.append(np.array(p, dtype=float))
            members.append([idx])
    return means, members


def thread_count():
    raw = os.environ.get("JNR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items):
    """Ordered map honoring the JNR_THREADS cap.

    Work items must be independent; per-item seeding keeps results identical
    between serial and threaded runs.
    """
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def affine_rank(points, tol):
    """Affine rank of a point set with an SVD cutoff at `tol`.

    Returns (rank, origin, basis) where basis rows span the affine hull.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("need a nonempty 2-d point array")
    origin = pts.mean(axis=0)
    centered = pts - origin
    if pts.shape[0] == 1:
        return 0, origin, np.zeros((0, pts.shape[1]))
    u, s, vt = np.linalg.svd(centered, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return 0, origin, np.zeros((0, pts.shape[1]))
    rank = int(np.sum(s > tol))
    return rank, origin, vt[:rank]

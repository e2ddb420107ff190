"""Hot integer kernels: alcove reduction and the spanning-tree orbit walk.

Each function is compiled with numba unless ``E8ORBITS_NUMBA=0``; the same
source then runs as ordinary Python on numpy arrays.  All arithmetic is
int64.  Reflection index ``0`` is the affine reflection in ``alpha_0``;
``k >= 1`` is the simple reflection ``s_k``.
"""
import numpy as np

from ._accel import njit

REDUCE_OK = 0
REDUCE_CAP = 1


@njit
def in_closed_alcove_kernel(x, hc, p):
    for j in range(x.shape[0]):
        if x[j] < 0:
            return False
    s = 0
    for j in range(x.shape[0]):
        s += x[j] * hc[j]
    return s <= p


@njit
def reduce_kernel(x0, p, cartan, alpha0, hc, max_steps):
    """Move ``x0`` into the closed alcove for ``W_p``.

    Returns ``(status, rep, word, n_steps, L, Linv)`` where ``word[:n_steps]``
    lists the applied reflections, ``x0 @ L == rep (mod p)`` and
    ``Linv`` is the inverse of ``L``.
    """
    r = x0.shape[0]
    x = x0.copy()
    L = np.eye(r, dtype=np.int64)
    Linv = np.eye(r, dtype=np.int64)
    word = np.empty(64, dtype=np.int64)
    bound = p * r * 30
    if not in_closed_alcove_kernel(x, hc, p):
        for t in range(r):
            x[t] = x[t] % p
    steps = 0
    col = np.empty(r, dtype=np.int64)
    row = np.empty(r, dtype=np.int64)
    while True:
        k = -1
        for j in range(r):
            if x[j] < 0:
                k = j
                break
        if k >= 0:
            c = x[k]
            for t in range(r):
                x[t] -= c * cartan[k, t]
            # L <- L s_k ; Linv <- s_k Linv
            for i in range(r):
                col[i] = L[i, k]
            for t in range(r):
                row[t] = 0
                for i in range(r):
                    row[t] += cartan[k, i] * Linv[i, t]
            for i in range(r):
                for t in range(r):
                    L[i, t] -= col[i] * cartan[k, t]
            for t in range(r):
                Linv[k, t] -= row[t]
            code = k + 1
        else:
            h = 0
            for t in range(r):
                h += x[t] * hc[t]
            if h <= p:
                break
            c = h - p
            for t in range(r):
                x[t] -= c * alpha0[t]
            # L <- L s_0 ; Linv <- s_0 Linv with s_0 = I - hc^T alpha0
            for i in range(r):
                col[i] = 0
                for t in range(r):
                    col[i] += L[i, t] * hc[t]
            for t in range(r):
                row[t] = 0
                for i in range(r):
                    row[t] += alpha0[i] * Linv[i, t]
            for i in range(r):
                for t in range(r):
                    L[i, t] -= col[i] * alpha0[t]
                    Linv[i, t] -= hc[i] * row[t]
            code = 0
        if steps == word.shape[0]:
            grown = np.empty(2 * steps, dtype=np.int64)
            grown[:steps] = word
            word = grown
        word[steps] = code
        steps += 1
        if steps >= max_steps:
            return REDUCE_CAP, x, word[:steps], steps, L, Linv
        for t in range(r):
            if x[t] > bound or x[t] < -bound:
                for u in range(r):
                    x[u] = x[u] % p
                break
    return REDUCE_OK, x, word[:steps], steps, L, Linv


@njit
def reduce_reps_kernel(xs, p, cartan, alpha0, hc, max_steps):
    """Representatives and step parities for a batch of rows of ``xs``."""
    n = xs.shape[0]
    reps = np.empty_like(xs)
    parities = np.empty(n, dtype=np.int64)
    for i in range(n):
        status, rep, word, steps, L, Linv = reduce_kernel(
            xs[i], p, cartan, alpha0, hc, max_steps
        )
        if status != REDUCE_OK:
            parities[i] = -1
        else:
            parities[i] = steps & 1
        reps[i] = rep
    return reps, parities


@njit
def gcd_signature_kernel(y):
    g = 0
    y0 = y[0]
    for k in range(1, y.shape[0]):
        a = y[k] - y0
        if a < 0:
            a = -a
        while a:
            g, a = a, g % a
    return g


@njit
def _visit(y, depth, primes, hits, wild, stats, depth_counts):
    """Record one orbit node.

    ``hits[q, c, parity]`` counts nodes congruent to ``c * rho`` modulo
    ``primes[q]``; ``wild[sign, parity]`` counts the two nodes ``+-rho`` whose
    gcd signature is 0.  ``stats = [nodes, max_gcd, max_abs_coord]``.
    """
    stats[0] += 1
    depth_counts[depth] += 1
    par = depth & 1
    r = y.shape[0]
    m = 0
    for k in range(r):
        a = y[k]
        if a < 0:
            a = -a
        if a > m:
            m = a
    if m > stats[2]:
        stats[2] = m
    g = gcd_signature_kernel(y)
    if g == 0:
        if y[0] > 0:
            wild[0, par] += 1
        else:
            wild[1, par] += 1
        return
    if g > stats[1]:
        stats[1] = g
    if g < 2:
        return
    for q in range(primes.shape[0]):
        pr = primes[q]
        if pr > g:
            break
        if g % pr == 0:
            hits[q, y[0] % pr, par] += 1


@njit
def scan_subtree_kernel(start, start_depth, cartan, max_level, primes, hits, wild,
                        stats, depth_counts):
    """Depth-first walk of the descent tree below ``start``.

    The parent of ``z`` is ``z s_k`` for the smallest ``k`` with ``z_k < 0``,
    so ``z = y s_j`` is a child of ``y`` iff ``y_j > 0`` and no coordinate of
    ``z`` before ``j`` is negative.  Only ``max_level`` levels below
    ``start`` are visited (``-1`` for no limit).  No visited set is kept.
    """
    r = start.shape[0]
    cap = depth_counts.shape[0] - start_depth
    if max_level >= 0 and max_level + 1 < cap:
        cap = max_level + 1
    ys = np.empty((cap, r), dtype=np.int64)
    nxt = np.zeros(cap, dtype=np.int64)
    for t in range(r):
        ys[0, t] = start[t]
    _visit(ys[0], start_depth, primes, hits, wild, stats, depth_counts)
    level = 0
    while level >= 0:
        j = nxt[level]
        if j == r:
            level -= 1
            continue
        nxt[level] = j + 1
        yj = ys[level, j]
        if yj <= 0 or level + 1 >= cap:
            continue
        ok = True
        for k in range(j):
            if ys[level, k] - yj * cartan[j, k] < 0:
                ok = False
                break
        if not ok:
            continue
        lv = level + 1
        for t in range(r):
            ys[lv, t] = ys[level, t] - yj * cartan[j, t]
        nxt[lv] = 0
        level = lv
        _visit(ys[lv], start_depth + lv, primes, hits, wild, stats, depth_counts)

"""Hot inner loops, each in two interchangeable implementations.

Every kernel has a loop form compiled with ``numba.njit`` and a vectorized
pure-numpy form.  The numba form is used when numba imports and the
environment variable ``LULC_DISABLE_NUMBA`` is unset (or ``0``).  Both forms
return identical results; ``tests/test_kernels.py`` checks this and
``benchmarks/bench_kernels.py`` times them against each other.

Kernels:

* ``gray_search``        first valid point of an F2 solution space, Gray order
* ``permutation_match``  column-permutation search behind split isomorphism
* ``incidence_scan``     first pair/triple with odd common-neighbor count
* ``graph_state_signs``  (-1)^Q(x) over all basis states
* ``apply_1q``           in-place single-qubit gate on a state vector
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from itertools import islice, permutations

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _env_disabled() -> bool:
    return os.environ.get("LULC_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


_backend = "numba" if HAVE_NUMBA and not _env_disabled() else "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


@contextmanager
def use_backend(name: str):
    old = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def _jit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


# ---------------------------------------------------------------- popcount


@_jit
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into uint64 words along the last axis (bit j of word j//64)."""
    dense = np.asarray(dense, dtype=np.uint8)
    rows, cols = dense.shape
    words = max(1, (cols + 63) // 64)
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = dense
    bits = padded.reshape(rows, words, 64).astype(np.uint64)
    return (bits << np.arange(64, dtype=np.uint64)).sum(axis=2, dtype=np.uint64)


def ints_to_words(values, words: int) -> np.ndarray:
    """Python ints to a (len, words) uint64 array, little-endian words."""
    out = np.zeros((len(values), words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, v in enumerate(values):
        for w in range(words):
            out[i, w] = (v >> (64 * w)) & mask
    return out


# ------------------------------------------------------------- gray_search


@_jit
def _gray_search_loop(basis, full, limit):
    k = basis.shape[0]
    words = basis.shape[2]
    cur = np.zeros((4, words), dtype=np.uint64)
    for i in range(limit):
        if i > 0:
            j = 0
            t = i
            while (t & 1) == 0:
                t >>= 1
                j += 1
            if j >= k:
                return -1, i
            for q in range(4):
                for w in range(words):
                    cur[q, w] ^= basis[j, q, w]
        ok = True
        for w in range(words):
            if ((cur[0, w] & cur[3, w]) ^ (cur[1, w] & cur[2, w])) != full[w]:
                ok = False
                break
        if ok:
            return i, i + 1
    return -1, limit


def _gray_search_numpy(basis, full, limit):
    k, _, words = basis.shape
    low = min(k, 14)
    # table[x] = XOR of basis[j] over set bits j of x, x < 2**low
    table = np.zeros((1 << low, 4, words), dtype=np.uint64)
    for j in range(low):
        table[1 << j : 2 << j] = table[: 1 << j] ^ basis[j]
    chunk = 1 << low
    start = 0
    while start < limit:
        stop = min(limit, start + chunk)
        i = np.arange(start, stop, dtype=np.int64)
        g = i ^ (i >> 1)
        hi = int(g[0] >> low)
        high_part = np.zeros((4, words), dtype=np.uint64)
        for j in range(low, k):
            if hi >> (j - low) & 1:
                high_part ^= basis[j]
        cand = table[g & (chunk - 1)] ^ high_part
        good = np.all(((cand[:, 0] & cand[:, 3]) ^ (cand[:, 1] & cand[:, 2])) == full, axis=1)
        hit = np.flatnonzero(good)
        if hit.size:
            first = start + int(hit[0])
            return first, first + 1
        start = stop
    return -1, limit


def gray_search(basis: np.ndarray, full: np.ndarray, limit: int) -> tuple[int, int]:
    """Scan ``limit`` points of span(basis) in Gray-code order.

    ``basis`` has shape ``(k, 4, words)``: each basis vector is four packed
    bit masks ``(a, b, c, d)`` over the vertices.  A point is valid when
    ``a & d ^ b & c == full`` word-wise.  Returns ``(index, examined)`` where
    ``index`` is the Gray-code step of the first valid point or -1.
    """
    basis = np.ascontiguousarray(basis, dtype=np.uint64)
    full = np.ascontiguousarray(full, dtype=np.uint64)
    limit = min(int(limit), 1 << basis.shape[0])
    if _backend == "numba":
        found, examined = _gray_search_loop(basis, full, limit)
        return int(found), int(examined)
    return _gray_search_numpy(basis, full, limit)


def gray_point(basis: np.ndarray, index: int) -> np.ndarray:
    """The point visited at Gray-code step ``index``."""
    g = index ^ (index >> 1)
    out = np.zeros(basis.shape[1:], dtype=np.uint64)
    j = 0
    while g:
        if g & 1:
            out ^= basis[j]
        g >>= 1
        j += 1
    return out


# ------------------------------------------------------- permutation_match


@_jit
def _remap_sorted(codes, perm, out):
    k = perm.shape[0]
    for i in range(codes.shape[0]):
        c = codes[i]
        m = 0
        for j in range(k):
            if (c >> j) & 1:
                m |= 1 << perm[j]
        out[i] = m
    out.sort()


@_jit
def _permutation_match_loop(ca, cb, k):
    perm = np.arange(k)
    out = np.empty_like(ca)
    _remap_sorted(ca, perm, out)
    if np.all(out == cb):
        return True
    # Heap's algorithm, iterative
    c = np.zeros(k, dtype=np.int64)
    i = 1
    while i < k:
        if c[i] < i:
            if i % 2 == 0:
                perm[0], perm[i] = perm[i], perm[0]
            else:
                perm[c[i]], perm[i] = perm[i], perm[c[i]]
            _remap_sorted(ca, perm, out)
            if np.all(out == cb):
                return True
            c[i] += 1
            i = 1
        else:
            c[i] = 0
            i += 1
    return False


def _permutation_match_numpy(ca, cb, k, chunk=20000):
    if k == 0:
        return bool(np.array_equal(ca, cb))
    bits = (ca[:, None] >> np.arange(k)) & 1  # (s, k)
    it = permutations(range(k))
    while True:
        block = np.array(list(islice(it, chunk)), dtype=np.int64)
        if block.size == 0:
            return False
        # mapped[p, i] = sum_j bits[i, j] << block[p, j]
        mapped = (bits[None, :, :] << block[:, None, :]).sum(axis=2)
        mapped.sort(axis=1)
        if np.any(np.all(mapped == cb[None, :], axis=1)):
            return True


def permutation_match(ca: np.ndarray, cb: np.ndarray, k: int) -> bool:
    """Is there a permutation of ``k`` bit positions mapping sorted codes ``ca`` onto ``cb``?"""
    ca = np.ascontiguousarray(ca, dtype=np.int64)
    cb = np.ascontiguousarray(cb, dtype=np.int64)
    if ca.shape != cb.shape:
        return False
    if _backend == "numba":
        return bool(_permutation_match_loop(ca, cb, k))
    return _permutation_match_numpy(ca, cb, k)


# --------------------------------------------------------- incidence_scan


@_jit
def _incidence_scan_loop(packed):
    m, words = packed.shape
    for u in range(m):
        for v in range(u + 1, m):
            cnt = 0
            for w in range(words):
                cnt += _popcount64(packed[u, w] & packed[v, w])
            if cnt & 1:
                return 2, u, v, -1
    for u in range(m):
        for v in range(u + 1, m):
            for x in range(v + 1, m):
                cnt = 0
                for w in range(words):
                    cnt += _popcount64(packed[u, w] & packed[v, w] & packed[x, w])
                if cnt & 1:
                    return 3, u, v, x
    return 0, -1, -1, -1


def _incidence_scan_numpy(dense):
    b = dense.astype(np.int64)
    m = b.shape[0]
    pair = (b @ b.T) & 1
    iu, iv = np.triu_indices(m, 1)
    bad = np.flatnonzero(pair[iu, iv])
    if bad.size:
        return 2, int(iu[bad[0]]), int(iv[bad[0]]), -1
    for u in range(m):
        tri = ((b[u] * b) @ b.T) & 1
        tri[: u + 1, :] = 0
        tri = np.triu(tri, 1)
        hit = np.argwhere(tri)
        if hit.size:
            return 3, u, int(hit[0, 0]), int(hit[0, 1])
    return 0, -1, -1, -1


def incidence_scan(dense: np.ndarray) -> tuple[int, int, int, int]:
    """First odd pair, else first odd triple, of rows of a 0/1 matrix.

    Returns ``(kind, u, v, w)`` with ``kind`` 0 (none), 2 (pair) or 3
    (triple); indices are row positions in lexicographic order.
    """
    dense = np.ascontiguousarray(dense, dtype=np.uint8)
    if dense.shape[0] < 2:
        return 0, -1, -1, -1
    if _backend == "numba":
        kind, u, v, w = _incidence_scan_loop(pack_rows(dense))
        return int(kind), int(u), int(v), int(w)
    return _incidence_scan_numpy(dense)


# ------------------------------------------------------ graph_state_signs


@_jit
def _graph_state_signs_loop(n, lower):
    out = np.empty(1 << n, dtype=np.float64)
    out[0] = 1.0
    for v in range(n):
        size = 1 << v
        mask = lower[v]
        for x in range(size):
            y = x & mask
            par = 0
            while y:
                y &= y - 1
                par ^= 1
            out[size + x] = -out[x] if par else out[x]
    return out


def _graph_state_signs_numpy(n, lower):
    out = np.empty(1 << n, dtype=np.float64)
    out[0] = 1.0
    for v in range(n):
        size = 1 << v
        idx = np.arange(size, dtype=np.int64)
        par = np.bitwise_count(idx & lower[v]) & 1
        out[size : 2 * size] = out[:size] * (1.0 - 2.0 * par)
    return out


def graph_state_signs(n: int, lower: np.ndarray) -> np.ndarray:
    """Signs ``(-1)^{#edges inside supp(x)}``; ``lower[v]`` = neighbors of v below v."""
    lower = np.ascontiguousarray(lower, dtype=np.int64)
    if _backend == "numba":
        return _graph_state_signs_loop(n, lower)
    return _graph_state_signs_numpy(n, lower)


# ---------------------------------------------------------------- apply_1q


@_jit
def _apply_1q_loop(state, v, m):
    step = 1 << v
    size = state.shape[0]
    for base in range(0, size, 2 * step):
        for off in range(step):
            i0 = base + off
            i1 = i0 + step
            a0 = state[i0]
            a1 = state[i1]
            state[i0] = m[0, 0] * a0 + m[0, 1] * a1
            state[i1] = m[1, 0] * a0 + m[1, 1] * a1


def _apply_1q_numpy(state, v, m):
    view = state.reshape(-1, 2, 1 << v)
    view[:] = np.einsum("ij,ajb->aib", m, view)


def apply_1q(state: np.ndarray, v: int, m: np.ndarray) -> None:
    """Apply the 2x2 matrix ``m`` to qubit ``v`` (little-endian) in place."""
    m = np.ascontiguousarray(m, dtype=np.complex128)
    if _backend == "numba":
        _apply_1q_loop(state, v, m)
    else:
        _apply_1q_numpy(state, v, m)

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph traversal kernels.

Graphs arrive in CSR form (``indptr``, ``indices`` as int32) and vertex
subsets as uint8 masks. Every function here has a twin in ``_pure`` with the
same signature and results.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def bfs_distances(const int[::1] indptr, const int[::1] indices, int source,
                  const unsigned char[::1] mask):
    """Distances from ``source`` inside the masked subgraph, -1 if unreached."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dist = np.full(n, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int head = 0, tail = 0, u, w
    cdef Py_ssize_t k
    if not mask[source]:
        return dist
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if mask[w] and dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = w
                tail += 1
    return dist


def component_labels(const int[::1] indptr, const int[::1] indices,
                     const unsigned char[::1] mask):
    """Label masked vertices by component, in order of smallest vertex.

    Returns ``(labels, count)``; unmasked vertices get -1.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] labels = np.full(n, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] stack = np.empty(max(n, 1), dtype=np.int32)
    cdef int count = 0, top, u, w
    cdef Py_ssize_t s, k
    for s in range(n):
        if not mask[s] or labels[s] >= 0:
            continue
        labels[s] = count
        top = 0
        stack[top] = <int>s
        top += 1
        while top > 0:
            top -= 1
            u = stack[top]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if mask[w] and labels[w] < 0:
                    labels[w] = count
                    stack[top] = w
                    top += 1
        count += 1
    return labels, count


def boundary(const int[::1] indptr, const int[::1] indices,
             const unsigned char[::1] source_mask,
             const unsigned char[::1] target_mask):
    """Sorted target vertices having at least one neighbour in the source set."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t v, k
    out = []
    for v in range(n):
        if not target_mask[v]:
            continue
        for k in range(indptr[v], indptr[v + 1]):
            if source_mask[indices[k]]:
                out.append(v)
                break
    return out

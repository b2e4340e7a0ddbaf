"""Pure-Python versions of the traversal kernels in ``_core.pyx``."""

from collections import deque

import numpy as np


def bfs_distances(indptr, indices, source, mask):
    n = len(indptr) - 1
    ptr = indptr.tolist() if hasattr(indptr, "tolist") else list(indptr)
    idx = indices.tolist() if hasattr(indices, "tolist") else list(indices)
    alive = mask.tolist() if hasattr(mask, "tolist") else list(mask)
    dist = [-1] * n
    if alive[source]:
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for k in range(ptr[u], ptr[u + 1]):
                w = idx[k]
                if alive[w] and dist[w] < 0:
                    dist[w] = du
                    queue.append(w)
    return np.asarray(dist, dtype=np.int32)


def component_labels(indptr, indices, mask):
    n = len(indptr) - 1
    ptr = indptr.tolist() if hasattr(indptr, "tolist") else list(indptr)
    idx = indices.tolist() if hasattr(indices, "tolist") else list(indices)
    alive = mask.tolist() if hasattr(mask, "tolist") else list(mask)
    labels = [-1] * n
    count = 0
    for s in range(n):
        if not alive[s] or labels[s] >= 0:
            continue
        labels[s] = count
        stack = [s]
        while stack:
            u = stack.pop()
            for k in range(ptr[u], ptr[u + 1]):
                w = idx[k]
                if alive[w] and labels[w] < 0:
                    labels[w] = count
                    stack.append(w)
        count += 1
    return np.asarray(labels, dtype=np.int32), count


def boundary(indptr, indices, source_mask, target_mask):
    n = len(indptr) - 1
    ptr = indptr.tolist() if hasattr(indptr, "tolist") else list(indptr)
    idx = indices.tolist() if hasattr(indices, "tolist") else list(indices)
    src = source_mask.tolist() if hasattr(source_mask, "tolist") else list(source_mask)
    tgt = target_mask.tolist() if hasattr(target_mask, "tolist") else list(target_mask)
    out = []
    for v in range(n):
        if tgt[v] and any(src[idx[k]] for k in range(ptr[v], ptr[v + 1])):
            out.append(v)
    return out

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same traversal order as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

NAME = "cython"

ctypedef Py_ssize_t idx_t


def index_array(values):
    return np.ascontiguousarray(np.asarray(values, dtype=np.intp))


def zeros(size):
    return np.zeros(size, dtype=np.uint8)


cdef idx_t _augment_once(const idx_t[::1] out_start, const idx_t[::1] out_arc,
                         const idx_t[::1] in_start, const idx_t[::1] in_arc,
                         const idx_t[::1] tail, const idx_t[::1] head,
                         unsigned char[::1] flow, idx_t s, idx_t t,
                         idx_t[::1] parent, idx_t[::1] queue) noexcept nogil:
    cdef idx_t n = out_start.shape[0] - 1
    cdef idx_t i, a, u, v, w, code, qhead = 0, qtail = 0
    cdef bint found = False
    for v in range(n):
        parent[v] = -1
    parent[s] = -2
    queue[qtail] = s
    qtail += 1
    while qhead < qtail and not found:
        u = queue[qhead]
        qhead += 1
        for i in range(out_start[u], out_start[u + 1]):
            a = out_arc[i]
            if flow[a]:
                continue
            w = head[a]
            if parent[w] == -1:
                parent[w] = 2 * a
                if w == t:
                    found = True
                    break
                queue[qtail] = w
                qtail += 1
        if found:
            break
        for i in range(in_start[u], in_start[u + 1]):
            a = in_arc[i]
            if not flow[a]:
                continue
            w = tail[a]
            if parent[w] == -1:
                parent[w] = 2 * a + 1
                if w == t:
                    found = True
                    break
                queue[qtail] = w
                qtail += 1
    if not found:
        return 0
    v = t
    while v != s:
        code = parent[v]
        a = code >> 1
        if code & 1:
            flow[a] = 0
            v = head[a]
        else:
            flow[a] = 1
            v = tail[a]
    return 1


def augment(const idx_t[::1] out_start, const idx_t[::1] out_arc,
            const idx_t[::1] in_start, const idx_t[::1] in_arc,
            const idx_t[::1] tail, const idx_t[::1] head,
            unsigned char[::1] flow, idx_t s, idx_t t, idx_t limit):
    cdef idx_t n = out_start.shape[0] - 1
    cdef idx_t[::1] parent = np.empty(n, dtype=np.intp)
    cdef idx_t[::1] queue = np.empty(n, dtype=np.intp)
    cdef idx_t value = 0
    with nogil:
        while value < limit:
            if not _augment_once(out_start, out_arc, in_start, in_arc, tail, head,
                                 flow, s, t, parent, queue):
                break
            value += 1
    return value


def residual_reach(const idx_t[::1] out_start, const idx_t[::1] out_arc,
                   const idx_t[::1] in_start, const idx_t[::1] in_arc,
                   const idx_t[::1] tail, const idx_t[::1] head,
                   const unsigned char[::1] flow, idx_t s):
    cdef idx_t n = out_start.shape[0] - 1
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef idx_t[::1] queue = np.empty(n, dtype=np.intp)
    cdef idx_t i, a, u, w, qhead = 0, qtail = 0
    with nogil:
        seen[s] = 1
        queue[qtail] = s
        qtail += 1
        while qhead < qtail:
            u = queue[qhead]
            qhead += 1
            for i in range(out_start[u], out_start[u + 1]):
                a = out_arc[i]
                w = head[a]
                if not flow[a] and not seen[w]:
                    seen[w] = 1
                    queue[qtail] = w
                    qtail += 1
            for i in range(in_start[u], in_start[u + 1]):
                a = in_arc[i]
                w = tail[a]
                if flow[a] and not seen[w]:
                    seen[w] = 1
                    queue[qtail] = w
                    qtail += 1
    return seen_arr


def reach(const idx_t[::1] start, const idx_t[::1] adj_arc, const idx_t[::1] other,
          const unsigned char[::1] blocked, idx_t s):
    cdef idx_t n = start.shape[0] - 1
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef idx_t[::1] queue = np.empty(n, dtype=np.intp)
    cdef idx_t i, a, u, w, qhead = 0, qtail = 0
    with nogil:
        seen[s] = 1
        queue[qtail] = s
        qtail += 1
        while qhead < qtail:
            u = queue[qhead]
            qhead += 1
            for i in range(start[u], start[u + 1]):
                a = adj_arc[i]
                if blocked[a]:
                    continue
                w = other[a]
                if not seen[w]:
                    seen[w] = 1
                    queue[qtail] = w
                    qtail += 1
    return seen_arr

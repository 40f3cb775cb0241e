# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled retraction search kernel; same contract as ``_retract_py.search``.

Vertex sets are ``uint64`` masks, so at most 64 vertices are supported.
Subcomplexes are byte arrays over face indices, one row per search depth.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

MAX_VERTICES = 64


cdef struct State:
    int nfaces
    int nverts
    uint64_t *masks
    int *star_ptr
    int *star_idx
    unsigned char *allowed
    unsigned char *B          # (nverts + 1) x nfaces
    int *path_v
    int *path_f
    long long nodes
    long long budget
    long long cap
    bint aborted


cdef int free_face(State *s, unsigned char *B, int v):
    cdef uint64_t acc = 0
    cdef int k, f
    for k in range(s.star_ptr[v], s.star_ptr[v + 1]):
        f = s.star_idx[k]
        if B[f]:
            acc |= s.masks[f]
    for k in range(s.star_ptr[v], s.star_ptr[v + 1]):
        f = s.star_idx[k]
        if B[f] and s.masks[f] == acc:
            return f
    return -1


cdef bint dfs(State *s, int depth, uint64_t remaining, list results) except -1:
    cdef int left = s.nverts - depth
    cdef int v, f, k, i
    cdef unsigned char *B = s.B + depth * s.nfaces
    cdef unsigned char *Bn = s.B + (depth + 1) * s.nfaces
    if left == 0:
        results.append([(s.path_v[i], s.path_f[i]) for i in range(s.nverts)])
        return s.cap > 0 and len(results) >= s.cap
    for v in range(s.nverts):
        if not (remaining >> v) & 1:
            continue
        f = free_face(s, B, v)
        if f < 0:
            continue
        if s.allowed != NULL and left > 1 and not s.allowed[f * s.nverts + v]:
            continue
        s.nodes += 1
        if s.budget > 0 and s.nodes > s.budget:
            s.aborted = True
            return True
        memcpy(Bn, B, s.nfaces)
        for k in range(s.star_ptr[v], s.star_ptr[v + 1]):
            Bn[s.star_idx[k]] = 0
        s.path_v[depth] = v
        s.path_f[depth] = f
        if dfs(s, depth + 1, remaining & ~((<uint64_t>1) << v), results):
            return True
    return False


def search(face_masks, int nverts, allowed=None, long long cap=0, long long budget=0):
    if nverts > MAX_VERTICES:
        raise ValueError(f"compiled kernel supports at most {MAX_VERTICES} vertices")
    cdef State s
    cdef int nfaces = len(face_masks)
    cdef int f, v, k
    cdef bytes allowed_b
    s.nfaces = nfaces
    s.nverts = nverts
    s.nodes = 0
    s.budget = budget
    s.cap = cap
    s.aborted = False
    s.masks = <uint64_t *> malloc(max(nfaces, 1) * sizeof(uint64_t))
    s.star_ptr = <int *> malloc((nverts + 1) * sizeof(int))
    s.star_idx = <int *> malloc(max(nfaces * nverts, 1) * sizeof(int))
    s.B = <unsigned char *> malloc((nverts + 1) * max(nfaces, 1))
    s.path_v = <int *> malloc(max(nverts, 1) * sizeof(int))
    s.path_f = <int *> malloc(max(nverts, 1) * sizeof(int))
    s.allowed = NULL
    results = []
    try:
        for f in range(nfaces):
            s.masks[f] = <uint64_t> face_masks[f]
        k = 0
        for v in range(nverts):
            s.star_ptr[v] = k
            for f in range(nfaces):
                if (s.masks[f] >> v) & 1:
                    s.star_idx[k] = f
                    k += 1
        s.star_ptr[nverts] = k
        for f in range(nfaces):
            s.B[f] = 1
        if allowed is not None:
            allowed_b = bytes(allowed)
            if len(allowed_b) < nfaces * nverts:
                raise ValueError("allowed table too short")
            s.allowed = <unsigned char *> allowed_b
        dfs(&s, 0, ((<uint64_t>1) << nverts) - 1 if nverts < 64 else ~(<uint64_t>0), results)
    finally:
        free(s.masks)
        free(s.star_ptr)
        free(s.star_idx)
        free(s.B)
        free(s.path_v)
        free(s.path_f)
    return results, s.nodes, bool(s.aborted)

# cython: language_level=3, boundscheck=False, wraparound=False
"""Masked reachability over a CSR arc index (compiled kernel)."""


def reach(const int[:] indptr, const int[:] heads, const int[:] arc_ids,
          int source, const unsigned char[:] arc_blocked=None,
          const unsigned char[:] vertex_blocked=None):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef bytearray seen = bytearray(n)
    cdef unsigned char[:] mark = seen
    cdef int[:] stack
    cdef int top = 0, u, v, j
    cdef bint use_arcs = arc_blocked is not None
    cdef bint use_verts = vertex_blocked is not None
    if use_verts and vertex_blocked[source]:
        return seen
    stack_buf = bytearray(4 * (n + 1))
    stack = memoryview(stack_buf).cast('i')
    mark[source] = 1
    stack[0] = source
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for j in range(indptr[u], indptr[u + 1]):
            if use_arcs and arc_blocked[arc_ids[j]]:
                continue
            v = heads[j]
            if mark[v]:
                continue
            if use_verts and vertex_blocked[v]:
                continue
            mark[v] = 1
            stack[top] = v
            top += 1
    return seen

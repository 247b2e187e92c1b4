"""Pure-Python twin of the compiled ``_reach`` kernel."""


def reach(indptr, heads, arc_ids, source, arc_blocked=None, vertex_blocked=None):
    n = len(indptr) - 1
    seen = bytearray(n)
    if vertex_blocked is not None and vertex_blocked[source]:
        return seen
    seen[source] = 1
    stack = [source]
    while stack:
        u = stack.pop()
        for j in range(indptr[u], indptr[u + 1]):
            if arc_blocked is not None and arc_blocked[arc_ids[j]]:
                continue
            v = heads[j]
            if seen[v] or (vertex_blocked is not None and vertex_blocked[v]):
                continue
            seen[v] = 1
            stack.append(v)
    return seen

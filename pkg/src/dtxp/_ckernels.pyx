# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.  Signatures mirror dtxp._pykernels exactly."""

from libc.stdlib cimport malloc, free


cdef int _reach(const int[::1] child_ptr, const int[::1] child, const int[::1] node_feat,
                const int[::1] node_class, int root, int c, const unsigned char[::1] edge_ok,
                const unsigned char[::1] universal, int* stack, long* visits) nogil:
    cdef int top = 0, r, f, e
    stack[top] = root
    top += 1
    while top > 0:
        top -= 1
        r = stack[top]
        visits[0] += 1
        f = node_feat[r]
        if f == 0:
            if node_class[r] != c:
                return 1
            continue
        for e in range(child_ptr[r], child_ptr[r + 1]):
            if universal[f] or edge_ok[e]:
                stack[top] = child[e]
                top += 1
    return 0


def reach(const int[::1] child_ptr, const int[::1] child, const int[::1] node_feat,
          const int[::1] node_class, int root, int c, const unsigned char[::1] edge_ok,
          const unsigned char[::1] universal):
    """Return (found, visits): whether a walk from the root reaches a terminal of class != c."""
    cdef long visits = 0
    cdef int n = node_feat.shape[0]
    cdef int* stack = <int*> malloc(n * sizeof(int))
    cdef int found
    if stack == NULL:
        raise MemoryError()
    try:
        with nogil:
            found = _reach(child_ptr, child, node_feat, node_class, root, c, edge_ok, universal, stack, &visits)
    finally:
        free(stack)
    return bool(found), visits


def shrink(const int[::1] child_ptr, const int[::1] child, const int[::1] node_feat,
           const int[::1] node_class, int root, int c, const unsigned char[::1] edge_ok,
           unsigned char[::1] universal, const int[::1] candidates):
    """Tentatively universalize each candidate in order; restore it when an
    opposing terminal becomes reachable.  Returns (visits, traversals)."""
    cdef long visits = 0
    cdef int n = node_feat.shape[0]
    cdef int k, i
    cdef int* stack = <int*> malloc(n * sizeof(int))
    if stack == NULL:
        raise MemoryError()
    try:
        with nogil:
            for k in range(candidates.shape[0]):
                i = candidates[k]
                universal[i] = 1
                if _reach(child_ptr, child, node_feat, node_class, root, c, edge_ok, universal, stack, &visits):
                    universal[i] = 0
    finally:
        free(stack)
    return visits, candidates.shape[0]


def horn_propagate(int nvars, const int[::1] body_ptr, const int[::1] body, const int[::1] head,
                   const int[::1] occ_ptr, const int[::1] occ, const int[::1] assumptions,
                   unsigned char[::1] value, int[::1] reason):
    """Forward chaining from facts and assumptions.

    Returns (conflict, visits); conflict is the index of a clause with head
    bottom whose body became true, or -1.  ``value`` and ``reason`` are
    overwritten: reason[v] is the clause that forced v (-1 for assumptions).
    """
    cdef int nclauses = head.shape[0]
    cdef int* count = <int*> malloc((nclauses + 1) * sizeof(int))
    cdef int* queue = <int*> malloc((nvars + 1) * sizeof(int))
    cdef int qh = 0, qt = 0, k, v, cl, h, conflict = -1
    cdef long visits = 0
    if count == NULL or queue == NULL:
        free(count)
        free(queue)
        raise MemoryError()
    try:
        with nogil:
            for v in range(nvars + 1):
                value[v] = 0
                reason[v] = -1
            for k in range(assumptions.shape[0]):
                v = assumptions[k]
                if not value[v]:
                    value[v] = 1
                    queue[qt] = v
                    qt += 1
            for cl in range(nclauses):
                count[cl] = body_ptr[cl + 1] - body_ptr[cl]
                if count[cl] == 0:
                    h = head[cl]
                    if h == 0:
                        conflict = cl
                        break
                    if not value[h]:
                        value[h] = 1
                        reason[h] = cl
                        queue[qt] = h
                        qt += 1
            while conflict < 0 and qh < qt:
                v = queue[qh]
                qh += 1
                for k in range(occ_ptr[v], occ_ptr[v + 1]):
                    visits += 1
                    cl = occ[k]
                    count[cl] -= 1
                    if count[cl] == 0:
                        h = head[cl]
                        if h == 0:
                            conflict = cl
                            break
                        if not value[h]:
                            value[h] = 1
                            reason[h] = cl
                            queue[qt] = h
                            qt += 1
    finally:
        free(count)
        free(queue)
    return conflict, visits

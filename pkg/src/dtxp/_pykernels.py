"""Pure-Python kernels; same signatures and results as the compiled module."""


def _reach(child_ptr, child, node_feat, node_class, root, c, edge_ok, universal):
    visits = 0
    stack = [root]
    pop, push = stack.pop, stack.append
    while stack:
        r = pop()
        visits += 1
        f = node_feat[r]
        if f == 0:
            if node_class[r] != c:
                return True, visits
            continue
        if universal[f]:
            for e in range(child_ptr[r], child_ptr[r + 1]):
                push(child[e])
        else:
            for e in range(child_ptr[r], child_ptr[r + 1]):
                if edge_ok[e]:
                    push(child[e])
    return False, visits


def reach(child_ptr, child, node_feat, node_class, root, c, edge_ok, universal):
    return _reach(child_ptr, child, node_feat, node_class, root, c, edge_ok, universal)


def shrink(child_ptr, child, node_feat, node_class, root, c, edge_ok, universal, candidates):
    visits = 0
    for i in candidates:
        universal[i] = 1
        found, n = _reach(child_ptr, child, node_feat, node_class, root, c, edge_ok, universal)
        visits += n
        if found:
            universal[i] = 0
    return visits, len(candidates)


def horn_propagate(nvars, body_ptr, body, head, occ_ptr, occ, assumptions, value, reason):
    nclauses = len(head)
    for v in range(nvars + 1):
        value[v] = 0
        reason[v] = -1
    queue = []
    for v in assumptions:
        if not value[v]:
            value[v] = 1
            queue.append(v)
    count = [body_ptr[k + 1] - body_ptr[k] for k in range(nclauses)]
    for cl in range(nclauses):
        if count[cl] == 0:
            h = head[cl]
            if h == 0:
                return cl, 0
            if not value[h]:
                value[h] = 1
                reason[h] = cl
                queue.append(h)
    visits = 0
    qh = 0
    while qh < len(queue):
        v = queue[qh]
        qh += 1
        for k in range(occ_ptr[v], occ_ptr[v + 1]):
            visits += 1
            cl = occ[k]
            count[cl] -= 1
            if count[cl] == 0:
                h = head[cl]
                if h == 0:
                    return cl, visits
                if not value[h]:
                    value[h] = 1
                    reason[h] = cl
                    queue.append(h)
    return -1, visits

"""Pure-Python kernels; reference semantics for the compiled module."""

from __future__ import annotations

from collections import deque

NAME = "python"


def index_array(values):
    return list(values)


def zeros(size):
    return [0] * size


def augment(out_start, out_arc, in_start, in_arc, tail, head, flow, s, t, limit):
    """Push up to ``limit`` units of unit-capacity flow from s to t.

    Each round is a breadth-first search of the residual graph: from a
    vertex, forward arcs with no flow are scanned first, then reverse
    residual arcs (arcs carrying flow into the vertex), both in ascending
    arc order.  Returns the number of units pushed; ``flow`` is updated.
    """
    n = len(out_start) - 1
    value = 0
    while value < limit:
        # parent[v] = 2a for forward arc a, 2a + 1 for reversed arc a
        parent = [-1] * n
        parent[s] = -2
        queue = deque([s])
        found = False
        while queue and not found:
            u = queue.popleft()
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
                    queue.append(w)
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
                    queue.append(w)
        if not found:
            break
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
        value += 1
    return value


def residual_reach(out_start, out_arc, in_start, in_arc, tail, head, flow, s):
    """0/1 mask of vertices reachable from s in the residual graph of ``flow``."""
    n = len(out_start) - 1
    seen = [0] * n
    seen[s] = 1
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for i in range(out_start[u], out_start[u + 1]):
            a = out_arc[i]
            if not flow[a] and not seen[head[a]]:
                seen[head[a]] = 1
                queue.append(head[a])
        for i in range(in_start[u], in_start[u + 1]):
            a = in_arc[i]
            if flow[a] and not seen[tail[a]]:
                seen[tail[a]] = 1
                queue.append(tail[a])
    return seen


def reach(start, adj_arc, other, blocked, s):
    """0/1 mask of vertices reachable from s along non-blocked arcs.

    With (out_start, out_arc, head) this is forward reachability; with
    (in_start, in_arc, tail) it is reachability *to* s.
    """
    n = len(start) - 1
    seen = [0] * n
    seen[s] = 1
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for i in range(start[u], start[u + 1]):
            a = adj_arc[i]
            if blocked[a]:
                continue
            w = other[a]
            if not seen[w]:
                seen[w] = 1
                queue.append(w)
    return seen

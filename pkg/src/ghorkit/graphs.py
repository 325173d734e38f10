"""Small graph routines over plain adjacency dicts."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping


def strongly_connected_components(
    graph: Mapping[Hashable, Iterable[Hashable]],
) -> list[list[Hashable]]:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit.

    Components are returned in reverse topological order of the condensation.
    """
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    components: list[list] = []
    counter = 0

    for root in graph:
        if root in index:
            continue
        work = [(root, iter(graph[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, neighbours = work[-1]
            advanced = False
            for nxt in neighbours:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(graph.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                components.append(comp)
    return components


def is_strongly_connected(vertices: Iterable[Hashable], edges: Iterable[tuple]) -> bool:
    vertices = list(vertices)
    if len(vertices) <= 1:
        return True
    graph: dict = {v: [] for v in vertices}
    for t, h in edges:
        graph[t].append(h)
    return len(strongly_connected_components(graph)) == 1


def is_weakly_connected(vertices: Iterable[Hashable], edges: Iterable[tuple]) -> bool:
    vertices = list(vertices)
    if not vertices:
        return True
    adj: dict = {v: set() for v in vertices}
    for t, h in edges:
        adj[t].add(h)
        adj[h].add(t)
    seen = {vertices[0]}
    todo = [vertices[0]]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(vertices)

"""Undirected simple graphs and trees.

Vertices are positive integer labels.  Graphs read from files or built by the
generators use 1..n; induced subgraphs keep the labels of their host.
"""

from __future__ import annotations

import heapq
import itertools
import os
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "PathFamily",
    "Whirl",
    "Figure14",
    "is_tree",
    "connected_components",
    "diameter",
    "find_special_path",
    "path_cover_number",
    "path_cover_number_bruteforce",
    "max_coverage_by_k_paths",
    "delete_paths",
    "whirl",
    "detect_whirl",
    "figure2_tree",
    "figure6_tree",
    "figure14_graph",
    "path_graph",
    "cycle_graph",
    "star_graph",
    "random_tree",
    "parse_graph",
    "format_graph",
]

BRUTE_CAP = 14

Path = tuple[int, ...]
PathFamily = list[Path]


def _cap(default: int) -> int:
    env = os.environ.get("ACYCLIC_SPECTRA_MAX_N")
    return int(env) if env else default


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {u}-{v} has an unknown endpoint")
            e = (u, v) if u < v else (v, u)
            norm.add(e)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Graph on 1..n.  Duplicate edges are rejected."""
        edges = list(edges)
        seen = set()
        for u, v in edges:
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {u}-{v}")
            seen.add(e)
        return cls(frozenset(range(1, n + 1)), frozenset(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def adj(self) -> dict[int, tuple[int, ...]]:
        nb: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nb.items()}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def induced(self, keep: Iterable[int]) -> "Graph":
        k = frozenset(keep)
        return Graph(k, frozenset(e for e in self.edges if e[0] in k and e[1] in k))

    def remove(self, drop: Iterable[int]) -> "Graph":
        return self.induced(self.vertices - frozenset(drop))

    def bfs(self, src: int, avoid: frozenset[int] = frozenset()) -> dict[int, int]:
        dist = {src: 0}
        dq = deque([src])
        while dq:
            v = dq.popleft()
            for u in self.adj[v]:
                if u not in dist and u not in avoid:
                    dist[u] = dist[v] + 1
                    dq.append(u)
        return dist

    def tree_path(self, u: int, v: int) -> Path:
        """The vertex sequence of the (first BFS) shortest u-v path."""
        parent = {u: u}
        dq = deque([u])
        while dq:
            w = dq.popleft()
            if w == v:
                break
            for y in self.adj[w]:
                if y not in parent:
                    parent[y] = w
                    dq.append(y)
        if v not in parent:
            raise ValueError(f"no path between {u} and {v}")
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return tuple(reversed(out))

    def is_path(self, seq: Sequence[int]) -> bool:
        return (
            len(seq) >= 1
            and len(set(seq)) == len(seq)
            and all(v in self.vertices for v in seq)
            and all(self.has_edge(a, b) for a, b in zip(seq, seq[1:]))
        )


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for v in g.sorted_vertices():
        if v in seen:
            continue
        c = frozenset(g.bfs(v))
        seen |= c
        comps.append(c)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(g.bfs(min(g.vertices))) == g.n


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and len(g.edges) == g.n - 1 and is_connected(g)


def is_forest(g: Graph) -> bool:
    return len(g.edges) == g.n - len(connected_components(g))


def is_path_graph(g: Graph) -> bool:
    return is_tree(g) and all(g.degree(v) <= 2 for v in g.vertices)


def _require_tree(g: Graph) -> None:
    if not is_tree(g):
        raise ValueError("expected a tree")


def diameter(g: Graph) -> int:
    """Maximum shortest-path distance; raises ``ValueError`` if disconnected."""
    if g.n == 0:
        raise ValueError("diameter of the empty graph")
    best = 0
    for v in g.vertices:
        dist = g.bfs(v)
        if len(dist) != g.n:
            raise ValueError("diameter of a disconnected graph")
        best = max(best, max(dist.values()))
    return best


def _farthest(g: Graph, src: int) -> int:
    dist = g.bfs(src)
    far = max(dist.values())
    return min(v for v, d in dist.items() if d == far)


def longest_path(t: Graph) -> Path:
    """A diametral path of a tree (double BFS)."""
    u = _farthest(t, min(t.vertices))
    w = _farthest(t, u)
    return t.tree_path(u, w)


# ----------------------------------------------------------- special paths


def find_special_path(t: Graph) -> Path:
    """Path whose end vertices are pendant and which has at most one vertex
    of degree >= 3 in t.

    Follows the induction: drop the pendant end u of a diametral path
    u-v-a1-..., solve the smaller tree, and reattach u (or return u-v-w)
    according to how the smaller solution meets v.
    """
    _require_tree(t)
    if t.n <= 2:
        return tuple(t.sorted_vertices())
    if is_path_graph(t):
        ends = [v for v in t.sorted_vertices() if t.degree(v) == 1]
        return t.tree_path(ends[0], ends[1])
    lp = longest_path(t)
    if len(lp) == 3:
        # diameter 2: a star; any leaf-center-leaf path works
        center = lp[1]
        leaves = t.adj[center]
        return (leaves[0], center, leaves[1])
    u, v, a1 = lp[0], lp[1], lp[2]
    sub = find_special_path(t.remove([u]))
    if v not in sub:
        return sub
    if sub[0] == v:
        return (u,) + sub
    if sub[-1] == v:
        return (u,) + tuple(reversed(sub))
    w = min(x for x in t.adj[v] if x not in (u, a1))
    return (u, v, w)


def path_cover_number(t: Graph) -> tuple[int, PathFamily]:
    """p(t) with a witness cover, by peeling special paths.

    Works on forests: each component is handled independently.
    """
    if not is_forest(t):
        raise ValueError("path_cover_number expects a tree or forest")
    family: PathFamily = []
    stack = [t.induced(c) for c in connected_components(t)]
    while stack:
        comp = stack.pop()
        if comp.n == 0:
            continue
        p = find_special_path(comp)
        family.append(p)
        rest = comp.remove(p)
        stack.extend(rest.induced(c) for c in connected_components(rest))
    family.sort(key=lambda p: (-len(p), p))
    return len(family), family


# ------------------------------------------------------ exhaustive searches


def _linear_forests(g: Graph):
    """Yield every edge set in which all degrees are <= 2 and there is no cycle."""
    edges = sorted(g.edges)
    deg = {v: 0 for v in g.vertices}
    parent = {v: v for v in g.vertices}
    chosen: list[tuple[int, int]] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i: int):
        if i == len(edges):
            yield list(chosen)
            return
        yield from rec(i + 1)
        u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2:
            ru, rv = find(u), find(v)
            if ru != rv:
                deg[u] += 1
                deg[v] += 1
                parent[ru] = rv
                chosen.append((u, v))
                yield from rec(i + 1)
                chosen.pop()
                parent[ru] = ru
                deg[u] -= 1
                deg[v] -= 1

    yield from rec(0)


def _paths_of(g: Graph, edge_set: Sequence[tuple[int, int]]) -> PathFamily:
    h = Graph(g.vertices, frozenset(edge_set))
    out = []
    for comp in connected_components(h):
        if len(comp) == 1:
            out.append(tuple(comp))
            continue
        ends = sorted(v for v in comp if h.degree(v) == 1)
        out.append(h.tree_path(ends[0], ends[1]))
    return out


def path_cover_number_bruteforce(g: Graph, cap: int | None = None) -> int:
    """Minimum number of disjoint paths covering g, by exhaustive search.

    Every path cover is a spanning linear forest, so p = n - (max edges in
    a linear forest).  Branches that cannot beat the incumbent are pruned.
    """
    limit = _cap(BRUTE_CAP) if cap is None else cap
    if g.n > limit:
        raise ValueError(f"brute-force path cover capped at n <= {limit}")
    if g.n == 0:
        return 0
    return g.n - _max_linear_forest(g)


def _max_linear_forest(g: Graph) -> int:
    edges = sorted(g.edges)
    deg = {v: 0 for v in g.vertices}
    parent = {v: v for v in g.vertices}
    ceiling = g.n - len(connected_components(g))
    best = 0

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i: int, taken: int) -> None:
        nonlocal best
        best = max(best, taken)
        if i == len(edges) or best == ceiling or taken + len(edges) - i <= best:
            return
        u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2:
            ru, rv = find(u), find(v)
            if ru != rv:
                deg[u] += 1
                deg[v] += 1
                parent[ru] = rv
                rec(i + 1, taken + 1)
                parent[ru] = ru
                deg[u] -= 1
                deg[v] -= 1
        rec(i + 1, taken)

    rec(0, 0)
    return best


def max_coverage_by_k_paths(
    t: Graph, k: int, strategy: str = "auto", cap: int | None = None
) -> tuple[int, PathFamily]:
    """Most vertices coverable by at most k disjoint paths of tree t, with a witness.

    ``strategy`` is ``"exhaustive"`` (all spanning linear forests, keeping
    the k largest components; n <= 14 by default), ``"dp"`` (rooted-tree
    dynamic program) or ``"auto"`` (exhaustive when small, else dp).
    """
    _require_tree(t)
    if k < 1:
        raise ValueError("k must be >= 1")
    limit = _cap(BRUTE_CAP) if cap is None else cap
    if strategy == "auto":
        strategy = "exhaustive" if t.n <= limit else "dp"
    if strategy == "exhaustive":
        if t.n > limit:
            raise ValueError(f"exhaustive coverage capped at n <= {limit}")
        best, witness = -1, []
        for es in _linear_forests(t):
            paths = sorted(_paths_of(t, es), key=lambda p: (-len(p), p))[:k]
            cov = sum(len(p) for p in paths)
            if cov > best:
                best, witness = cov, paths
        return best, witness
    if strategy == "dp":
        return _coverage_dp(t, k)
    raise ValueError(f"unknown strategy {strategy!r}")


# vertex states in the coverage DP
_U, _E0, _E1, _E2 = 0, 1, 2, 3


def _coverage_dp(t: Graph, k: int) -> tuple[int, PathFamily]:
    """Knapsack over children.

    State of a vertex v: uncovered, or covered with 0/1/2 of its child edges
    on v's path.  ``j`` counts paths, with v's own path counted when v is
    first covered; joining a child's open path to v merges two paths.
    """
    root = min(t.vertices)
    order: list[int] = []
    par = {root: 0}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for u in t.adj[v]:
            if u != par[v]:
                par[u] = v
                stack.append(u)
    children = {v: [u for u in t.adj[v] if u != par[v]] for v in t.vertices}
    NEG = None
    # history[v][i] is the table after merging the first i children
    history: dict[int, list[list[list]]] = {}

    for v in reversed(order):
        tab = [[NEG] * (k + 1) for _ in range(4)]
        tab[_U][0] = (0, None)
        tab[_E0][1] = (1, None)
        hist = [tab]
        for c in children[v]:
            ct = history[c][-1]
            new = [[NEG] * (k + 1) for _ in range(4)]
            for s in range(4):
                for j1 in range(k + 1):
                    a = tab[s][j1]
                    if a is None:
                        continue
                    for cs in range(4):
                        for j2 in range(k + 1):
                            b = ct[cs][j2]
                            if b is None:
                                continue
                            val = a[0] + b[0]
                            j = j1 + j2
                            if j <= k:
                                cur = new[s][j]
                                if cur is None or val > cur[0]:
                                    new[s][j] = (val, (s, j1, cs, j2, False))
                            if s in (_E0, _E1) and cs in (_E0, _E1):
                                j = j1 + j2 - 1
                                if j <= k:
                                    cur = new[s + 1][j]
                                    if cur is None or val > cur[0]:
                                        new[s + 1][j] = (val, (s, j1, cs, j2, True))
            tab = new
            hist.append(tab)
        history[v] = hist

    top = history[root][-1]
    best = None
    for s in range(4):
        for j in range(k + 1):
            e = top[s][j]
            if e is not None and (best is None or e[0] > best[0]):
                best = (e[0], s, j)
    value, s0, j0 = best

    covered: set[int] = set()
    links: list[tuple[int, int]] = []
    todo = [(root, s0, j0)]
    while todo:
        v, s, j = todo.pop()
        if s != _U:
            covered.add(v)
        hist = history[v]
        for idx in range(len(children[v]), 0, -1):
            _, back = hist[idx][s][j]
            ps, pj, cs, cj, joined = back
            c = children[v][idx - 1]
            todo.append((c, cs, cj))
            if joined:
                links.append((v, c))
            s, j = ps, pj
    sub = Graph(frozenset(covered), frozenset(links))
    paths = _paths_of(sub, links)
    paths.sort(key=lambda p: (-len(p), p))
    return value, paths


def delete_paths(t: Graph, family: Sequence[Sequence[int]]) -> Graph:
    """Induced subgraph on the vertices no path of ``family`` covers."""
    used: set[int] = set()
    for p in family:
        if not t.is_path(p):
            raise ValueError(f"{tuple(p)} is not a path of the graph")
        if used & set(p):
            raise ValueError("paths are not disjoint")
        used |= set(p)
    return t.remove(used)


def validate_family(t: Graph, family: Sequence[Sequence[int]]) -> None:
    delete_paths(t, family)


# ---------------------------------------------------------------- generators


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 1."""
    return Graph.from_edges(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


def random_tree(n: int, seed: int | random.Random) -> Graph:
    """Uniform labelled tree on 1..n from a random Pruefer sequence."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(1, 2)])
    seq = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class Whirl:
    """A (k, l)-whirl with its named parts.

    ``legs[(i, j)]`` lists the vertices of leg alpha^i_j from the spoke outward.
    """

    k: int
    ell: int
    graph: Graph
    axis: int
    spokes: tuple[int, ...]
    legs: dict[tuple[int, int], tuple[int, ...]] = field(hash=False, compare=False)

    @property
    def n(self) -> int:
        return self.graph.n


def whirl(k: int, ell: int) -> Whirl:
    """Axis 1, spokes 2..k+1, leg vertices labelled breadth-first."""
    if k < 2 or ell < 1:
        raise ValueError("whirl needs k >= 2 and l >= 1")
    spokes = tuple(range(2, k + 2))
    edges = [(1, s) for s in spokes]
    legs: dict[tuple[int, int], list[int]] = {(i, j): [] for i in range(1, k + 1) for j in (1, 2)}
    label = k + 2
    for depth in range(ell):
        for i in range(1, k + 1):
            for j in (1, 2):
                prev = spokes[i - 1] if depth == 0 else legs[(i, j)][-1]
                edges.append((prev, label))
                legs[(i, j)].append(label)
                label += 1
    n = 2 * k * ell + k + 1
    g = Graph.from_edges(n, edges)
    return Whirl(k, ell, g, 1, spokes, {key: tuple(v) for key, v in legs.items()})


def detect_whirl(g: Graph) -> Whirl | None:
    """Recognise a (k, l)-whirl up to relabelling; returns its parts in g's labels."""
    if not is_tree(g):
        return None
    for axis in g.sorted_vertices():
        k = g.degree(axis)
        if k < 2 or (g.n - k - 1) % (2 * k):
            continue
        ell = (g.n - k - 1) // (2 * k)
        if ell < 1:
            continue
        spokes = g.adj[axis]
        legs: dict[tuple[int, int], tuple[int, ...]] = {}
        ok = True
        for i, s in enumerate(spokes, start=1):
            outs = [u for u in g.adj[s] if u != axis]
            if len(outs) != 2:
                ok = False
                break
            for j, first in enumerate(outs, start=1):
                leg = [first]
                prev = s
                while True:
                    nxt = [u for u in g.adj[leg[-1]] if u != prev]
                    if not nxt:
                        break
                    if len(nxt) > 1:
                        ok = False
                        break
                    prev = leg[-1]
                    leg.append(nxt[0])
                if not ok or len(leg) != ell:
                    ok = False
                    break
                legs[(i, j)] = tuple(leg)
            if not ok:
                break
        if ok:
            return Whirl(k, ell, g, axis, tuple(spokes), legs)
    return None


def figure2_tree() -> Graph:
    """Tree of the 10x10 counterexample matrix; vertex 6 joins the hubs 1, 2, 3."""
    return Graph.from_edges(
        10, [(1, 4), (1, 5), (1, 6), (2, 6), (2, 7), (2, 8), (3, 6), (3, 9), (3, 10)]
    )


def figure6_tree() -> Graph:
    return Graph.from_edges(
        10, [(3, 1), (1, 4), (1, 6), (6, 5), (6, 7), (7, 8), (7, 2), (2, 9), (2, 10)]
    )


@dataclass(frozen=True)
class Figure14:
    """Graph H with two pendant legs of l vertices hung on each anchor v_s.

    ``legs`` is (L1, .., L6) ordered (i_1, j_1, i_2, j_2, i_3, j_3), each
    listed from the anchor outward; ``i_ends[s]`` / ``j_ends[s]`` are the
    pendant vertices of the two legs on anchor s + 1.
    """

    graph: Graph
    h: Graph
    anchors: tuple[int, int, int]
    ell: int
    legs: tuple[tuple[int, ...], ...]
    i_ends: tuple[int, int, int]
    j_ends: tuple[int, int, int]

    @property
    def m(self) -> int:
        return self.h.n


def unique_shortest_path(h: Graph, s: int, t: int, avoid: int) -> bool:
    """True iff exactly one shortest s-t path exists in h minus ``avoid``."""
    dist = h.bfs(s, avoid=frozenset([avoid]))
    if t not in dist:
        return False
    count = {s: 1}
    for v in sorted(dist, key=dist.get):
        if v == s:
            continue
        count[v] = sum(count[u] for u in h.adj[v] if u in dist and dist[u] == dist[v] - 1)
    return count[t] == 1


def figure14_graph(h: Graph, anchors: tuple[int, int, int], ell: int) -> Figure14:
    if ell < 1:
        raise ValueError("legs need at least one vertex")
    if not is_connected(h) or h.n == 0:
        raise ValueError("H must be connected")
    if len(set(anchors)) != 3 or any(a not in h.vertices for a in anchors):
        raise ValueError("anchors must be three distinct vertices of H")
    for s, t, k in itertools.permutations(range(3)):
        if not unique_shortest_path(h, anchors[s], anchors[t], anchors[k]):
            raise ValueError(
                f"no unique shortest path from {anchors[s]} to {anchors[t]} avoiding {anchors[k]}"
            )
    if h.vertices != frozenset(range(1, h.n + 1)):
        raise ValueError("H must be labelled 1..m")
    m = h.n
    edges = list(h.edges)
    label = m + 1
    legs = []
    for a in anchors:
        for _ in range(2):
            leg = []
            prev = a
            for _ in range(ell):
                edges.append((prev, label))
                leg.append(label)
                prev = label
                label += 1
            legs.append(tuple(leg))
    g = Graph.from_edges(m + 6 * ell, edges)
    i_ends = tuple(legs[2 * s][-1] for s in range(3))
    j_ends = tuple(legs[2 * s + 1][-1] for s in range(3))
    return Figure14(g, h, tuple(anchors), ell, tuple(legs), i_ends, j_ends)


# --------------------------------------------------------------- file format


def parse_graph(text: str) -> Graph:
    """Line 1 ``n``; then ``u v`` per edge; ``#`` starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty graph file")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge {u} {v} outside 1..{n}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(str(g.n))
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"

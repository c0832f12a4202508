"""Simple undirected graphs on at most 64 vertices.

Adjacency is stored as one bitmask per vertex, so a neighborhood is a single
machine word and the counting kernels elsewhere stay branch-light.  Every
graph is immutable after construction; all operations here are pure
functions and safe to share across threads.

The graph6 wire format is implemented bit-exactly: header byte n+63 for
n <= 62 (the extended '~' header for 63 and 64), then the upper triangle
read column-major (0,1),(0,2),(1,2),(0,3),... packed into 6-bit groups with
zero padding, each group stored as its value plus 63.

Canonical codes are computed by iterated neighborhood-multiset refinement
followed by backtracking over the refined cells, taking the
lexicographically smallest adjacency encoding.  The search prunes with
automorphisms discovered along the way, so it is exact (never heuristic)
while staying fast on the small, often highly symmetric graphs this package
works with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import Graph6Error, InputError, UnsupportedSizeError

MAX_VERTICES = 64

AUT_EXACT_LIMIT = 16


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbor bitmask of vertex v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if not 0 <= n <= MAX_VERTICES:
            raise InputError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != n:
            raise InputError(f"adjacency has {len(self.adj)} rows, expected {n}")
        for v, row in enumerate(self.adj):
            if row < 0 or row >> n:
                raise InputError(f"row {v} has bits at or above index {n}")
            if (row >> v) & 1:
                raise InputError(f"self-loop at vertex {v}")
        for v in range(n):
            for u in range(v):
                if ((self.adj[v] >> u) & 1) != ((self.adj[u] >> v) & 1):
                    raise InputError(f"adjacency not symmetric at pair ({u}, {v})")

    # -- basic accessors -------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            row = self.adj[v] >> (v + 1)
            u = v + 1
            while row:
                if row & 1:
                    yield (v, u)
                row >>= 1
                u += 1

    def vertices(self) -> range:
        return range(self.n)

    def isolated_mask(self) -> int:
        mask = 0
        for v, row in enumerate(self.adj):
            if row == 0:
                mask |= 1 << v
        return mask

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << v) for v in range(n)))

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise InputError("cycle needs at least 3 vertices")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def complete_bipartite(a: int, b: int) -> "Graph":
        left = ((1 << b) - 1) << a
        right = (1 << a) - 1
        rows = [left] * a + [right] * b
        return Graph(a + b, tuple(rows))

    @staticmethod
    def star(leaves: int) -> "Graph":
        return Graph.complete_bipartite(1, leaves)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    if g1.n + g2.n > MAX_VERTICES:
        raise InputError("union exceeds the 64-vertex limit")
    rows = list(g1.adj) + [row << g1.n for row in g2.adj]
    return Graph(g1.n + g2.n, tuple(rows))


def with_isolated(g: Graph, extra: int) -> Graph:
    """g plus `extra` fresh isolated vertices."""
    return disjoint_union(g, Graph.empty(extra))


# -- graph6 ---------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line; errors identify the offending byte offset."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6Error(f"non-ASCII byte at offset {exc.start}") from None
    if not data:
        raise Graph6Error("empty graph6 input")
    c0 = data[0]
    if c0 == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("8-byte vertex-count header at offset 0 (n > 64 unsupported)")
        if len(data) < 4:
            raise Graph6Error("truncated extended header starting at offset 0")
        n = 0
        for off in (1, 2, 3):
            b = data[off]
            if not 63 <= b <= 126:
                raise Graph6Error(f"byte {b} out of range [63, 126] at offset {off}")
            n = (n << 6) | (b - 63)
        body = 4
    else:
        if not 63 <= c0 <= 126:
            raise Graph6Error(f"byte {c0} out of range [63, 126] at offset 0")
        n = c0 - 63
        body = 1
    if n > MAX_VERTICES:
        raise Graph6Error(
            f"vertex count {n} exceeds the {MAX_VERTICES}-vertex limit"
            f" (header ends at offset {body - 1})"
        )
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - body != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes after offset {body - 1},"
            f" got {len(data) - body}"
        )
    rows = [0] * n
    i, j = 0, 1
    done = 0
    for idx in range(nbytes):
        b = data[body + idx]
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} out of range [63, 126] at offset {body + idx}")
        val = b - 63
        for shift in (5, 4, 3, 2, 1, 0):
            bit = (val >> shift) & 1
            if done < nbits:
                if bit:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                done += 1
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error(f"nonzero padding bit at offset {body + idx}")
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        header = [n + 63]
    else:
        header = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    out = list(header)
    val = 0
    width = 0
    for j in range(1, n):
        for i in range(j):
            val = (val << 1) | ((g.adj[i] >> j) & 1)
            width += 1
            if width == 6:
                out.append(val + 63)
                val, width = 0, 0
    if width:
        out.append((val << (6 - width)) + 63)
    return bytes(out).decode("ascii")


# -- elementary operations ------------------------------------------------


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((full ^ row ^ (1 << v)) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, w: Iterable[int]) -> Graph:
    """Subgraph on vertex set w under the order-preserving relabeling."""
    verts = sorted(set(w))
    for v in verts:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = g.adj[v]
        new = 0
        for u in verts:
            if (row >> u) & 1:
                new |= 1 << pos[u]
        rows.append(new)
    return Graph(len(verts), tuple(rows))


def _induced_rows(adj: Sequence[int], verts: Sequence[int]) -> tuple[int, ...]:
    # fast path used by hot counting loops; verts must be sorted and in range
    rows = []
    for v in verts:
        row = adj[v]
        new = 0
        for i, u in enumerate(verts):
            new |= ((row >> u) & 1) << i
        rows.append(new)
    return tuple(rows)


@dataclass(frozen=True, eq=True)
class DegreeProfile:
    """Degree statistics consumed throughout the package."""

    degrees: tuple[int, ...]
    max_degree: int
    edge_count: int
    m: int
    m1: int
    m_ge2: int
    k_hist: dict[int, int] = field(compare=False)

    def __post_init__(self) -> None:
        if sum(self.degrees) != 2 * self.edge_count:
            raise InputError("degree sum is not twice the edge count")


def degree_profile(g: Graph) -> DegreeProfile:
    degs = g.degrees()
    hist: dict[int, int] = {}
    for d in degs:
        hist[d] = hist.get(d, 0) + 1
    m1 = hist.get(1, 0)
    m = sum(1 for d in degs if d > 0)
    return DegreeProfile(
        degrees=degs,
        max_degree=max(degs, default=0),
        edge_count=sum(degs) // 2,
        m=m,
        m1=m1,
        m_ge2=m - m1,
        k_hist=hist,
    )


def non_isolated_core(g: Graph) -> Graph:
    """Induced subgraph on the vertices of positive degree (possibly null)."""
    return induced_subgraph(g, [v for v in range(g.n) if g.adj[v]])


# -- canonical forms and automorphisms ------------------------------------


def _refine(n: int, adj: Sequence[int], colors: list[int]) -> list[int]:
    """Stable partition under (color, multiset of neighbor colors) recoloring."""
    while True:
        sigs = []
        for v in range(n):
            row = adj[v]
            nb = []
            while row:
                low = row & -row
                nb.append(colors[low.bit_length() - 1])
                row ^= low
            nb.sort()
            sigs.append((colors[v], tuple(nb)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if new == colors:
            return new
        colors = new


def _individualize(n: int, colors: Sequence[int], v: int) -> list[int]:
    keys = [(colors[u], 0 if u == v else 1) for u in range(n)]
    rank = {s: i for i, s in enumerate(sorted(set(keys)))}
    return [rank[k] for k in keys]


def _encode_order(n: int, adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    enc = []
    for j in range(1, n):
        row = adj[order[j]]
        bits = 0
        for i in range(j):
            bits |= ((row >> order[i]) & 1) << i
        enc.append(bits)
    return tuple(enc)


def _canonical_columns(n: int, adj: tuple[int, ...]) -> tuple[int, ...]:
    if n == 0:
        return ()
    full = (1 << n) - 1
    if all(row == 0 for row in adj) or all(
        adj[v] == (full ^ (1 << v)) for v in range(n)
    ):
        # every labeling of the edgeless / complete graph encodes identically
        return _encode_order(n, adj, range(n))

    base = _refine(n, adj, [0] * n)
    best: tuple[int, ...] | None = None

    def rec(colors: list[int]) -> None:
        nonlocal best
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        target: list[int] | None = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = sorted(range(n), key=colors.__getitem__)
            enc = _encode_order(n, adj, order)
            if best is None or enc < best:
                best = enc
            return
        # one branch per orbit of the target cell: a colored automorphism
        # fixes every earlier individualized vertex (each is a singleton
        # cell), so equivalent candidates explore identical subtrees
        reps: list[list[int]] = []
        for u in target:
            cu = _refine(n, adj, _individualize(n, colors, u))
            if any(_colored_iso_exists(n, adj, cr, cu) for cr in reps):
                continue
            reps.append(cu)
        for cu in reps:
            rec(cu)

    rec(base)
    assert best is not None
    return best


@lru_cache(maxsize=1 << 18)
def _canon_cached(n: int, adj: tuple[int, ...]) -> bytes:
    cols = _canonical_columns(n, adj)
    stream = 0
    width = 0
    for j, col in enumerate(cols, start=1):
        # column bits re-emitted most-significant-first for a stable byte stream
        for i in range(j):
            stream = (stream << 1) | ((col >> i) & 1)
            width += 1
    pad = (-width) % 8
    stream <<= pad
    width += pad
    return bytes([n]) + stream.to_bytes(width // 8, "big")


@dataclass(frozen=True)
class CanonicalCode:
    """Relabeling-invariant code: equal iff the graphs are isomorphic."""

    data: bytes


def canonical_code(g: Graph) -> CanonicalCode:
    return CanonicalCode(_canon_cached(g.n, g.adj))


def canonical_key(g: Graph) -> bytes:
    """Raw canonical bytes; the cheap form used by counting loops."""
    return _canon_cached(g.n, g.adj)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return _canon_cached(g1.n, g1.adj) == _canon_cached(g2.n, g2.adj)


def _colored_iso_exists(
    n: int, adj: Sequence[int], c1: Sequence[int], c2: Sequence[int]
) -> bool:
    """Is there a permutation preserving adjacency with c2[pi(x)] = c1[x]?"""
    hist1: dict[int, int] = {}
    hist2: dict[int, int] = {}
    for x in range(n):
        hist1[c1[x]] = hist1.get(c1[x], 0) + 1
        hist2[c2[x]] = hist2.get(c2[x], 0) + 1
    if hist1 != hist2:
        return False
    by_color: dict[int, list[int]] = {}
    for y in range(n):
        by_color.setdefault(c2[y], []).append(y)
    # most constrained first: small classes early
    domain = sorted(range(n), key=lambda x: (hist1[c1[x]], c1[x], x))
    mapped_dom: list[int] = []
    mapped_rng: list[int] = []
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        x = domain[pos]
        rowx = adj[x]
        for y in by_color[c1[x]]:
            if used[y]:
                continue
            rowy = adj[y]
            ok = True
            for xd, yd in zip(mapped_dom, mapped_rng):
                if ((rowx >> xd) & 1) != ((rowy >> yd) & 1):
                    ok = False
                    break
            if not ok:
                continue
            used[y] = True
            mapped_dom.append(x)
            mapped_rng.append(y)
            if extend(pos + 1):
                return True
            used[y] = False
            mapped_dom.pop()
            mapped_rng.pop()
        return False

    return extend(0)


def _aut_order(n: int, adj: tuple[int, ...], colors: list[int]) -> int:
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    target: list[int] | None = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        return 1
    v = target[0]
    cv = _refine(n, adj, _individualize(n, colors, v))
    stab = _aut_order(n, adj, cv)
    orbit = 1
    for u in target[1:]:
        cu = _refine(n, adj, _individualize(n, colors, u))
        if _colored_iso_exists(n, adj, cv, cu):
            orbit += 1
    return orbit * stab


def automorphism_count(g: Graph) -> int:
    """Exact order of the automorphism group (orbit-stabilizer recursion)."""
    if g.n > AUT_EXACT_LIMIT:
        raise UnsupportedSizeError(
            f"automorphism_count supports n <= {AUT_EXACT_LIMIT}, got {g.n}"
        )
    if g.n <= 1:
        return 1
    return _aut_order(g.n, g.adj, _refine(g.n, g.adj, [0] * g.n))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of g under the vertex map v -> perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise InputError("perm is not a permutation of the vertex set")
    rows = [0] * g.n
    for v in range(g.n):
        row = g.adj[v]
        new = 0
        while row:
            low = row & -row
            new |= 1 << perm[low.bit_length() - 1]
            row ^= low
        rows[perm[v]] = new
    return Graph(g.n, tuple(rows))


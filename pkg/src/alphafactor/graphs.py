"""Simple undirected graphs on labeled vertices 0..n-1.

Adjacency is stored as one integer bitmask per vertex, which keeps the
component/degree machinery fast for the desk-scale orders this package
targets. Graphs are immutable values; every "mutation" returns a new
graph, so instances are safe to share across threads.
"""

import random
from dataclasses import dataclass
from math import comb


class GraphParseError(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the defect."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class SizeLimitError(ValueError):
    """Input exceeds the size this routine supports."""


class Graph:
    """Immutable simple graph: ``n`` vertices, adjacency row bitmasks."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError("adjacency rows must match vertex count")
        mask = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~mask:
                raise ValueError(f"row {v} references vertices outside 0..{n-1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for u in range(n):
            for_bits = rows[u]
            while for_bits:
                v = (for_bits & -for_bits).bit_length() - 1
                for_bits &= for_bits - 1
                if not rows[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at ({u},{v})")
        self.n = n
        self.rows = rows

    @classmethod
    def empty(cls, n):
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n-1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def complete(cls, n):
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n):
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

    @classmethod
    def path(cls, n):
        return cls.from_edges(n, [(v, v + 1) for v in range(n - 1)])

    def degree(self, v):
        return (self.rows[v]).bit_count()

    def degrees(self):
        return [row.bit_count() for row in self.rows]

    def min_degree(self):
        if self.n == 0:
            raise ValueError("empty graph has no minimum degree")
        return min(row.bit_count() for row in self.rows)

    def max_degree(self):
        if self.n == 0:
            raise ValueError("empty graph has no maximum degree")
        return max(row.bit_count() for row in self.rows)

    @property
    def m(self):
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, u, v):
        return bool(self.rows[u] >> v & 1)

    def neighbors_mask(self, v):
        return self.rows[v]

    def edges(self):
        """Edges as (u, v) with u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            higher = self.rows[u] >> (u + 1) << (u + 1)
            while higher:
                v = (higher & -higher).bit_length() - 1
                higher &= higher - 1
                out.append((u, v))
        return out

    def non_edges(self):
        """Vertex pairs (u, v), u < v, that are not edges."""
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if not self.rows[u] >> v & 1:
                    out.append((u, v))
        return out

    def add_edges(self, edges):
        rows = list(self.rows)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    def remove_edges(self, edges):
        rows = list(self.rows)
        for u, v in edges:
            if not rows[u] >> v & 1:
                raise ValueError(f"edge ({u},{v}) not present")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    def components(self, removed_mask=0):
        """Vertex masks of the connected components of G minus ``removed_mask``."""
        remaining = ((1 << self.n) - 1) & ~removed_mask
        rows = self.rows
        comps = []
        while remaining:
            comp = remaining & -remaining
            frontier = comp
            while frontier:
                reach = 0
                f = frontier
                while f:
                    v = (f & -f).bit_length() - 1
                    f &= f - 1
                    reach |= rows[v]
                frontier = reach & remaining & ~comp
                comp |= frontier
            comps.append(comp)
            remaining &= ~comp
        return comps

    def is_connected(self):
        if self.n <= 1:
            return True
        return len(self.components()) == 1

    def __eq__(self, other):
        return (
            isinstance(other, Graph) and self.n == other.n and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class JoinUnionSpec:
    """Parameters (s; n1..nt) of the clique family K_s v (K_n1 u ... u K_nt).

    ``parts`` must be sorted nonincreasing with every part >= 1.
    """

    s: int
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.s < 0:
            raise ValueError("join-clique size must be nonnegative")
        if any(p < 1 for p in self.parts):
            raise ValueError("all parts must be >= 1")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be sorted nonincreasing")

    @property
    def n(self):
        return self.s + sum(self.parts)

    @property
    def t(self):
        return len(self.parts)

    def edge_count(self):
        s, n = self.s, self.n
        return comb(s, 2) + s * (n - s) + sum(comb(p, 2) for p in self.parts)


def build_join_union(spec):
    """Build K_s v (K_n1 u ... u K_nt).

    Vertex layout: the s join vertices come first (adjacent to everything),
    then each part as a consecutive internal clique, in spec order.
    """
    n = spec.n
    rows = [0] * n
    full = (1 << n) - 1
    for v in range(spec.s):
        rows[v] = full ^ (1 << v)
    join_mask = (1 << spec.s) - 1
    offset = spec.s
    for size in spec.parts:
        block = ((1 << size) - 1) << offset
        for v in range(offset, offset + size):
            rows[v] = join_mask | (block ^ (1 << v))
        offset += size
    return Graph(n, rows)


def odd_components(g, subset):
    """Number of odd-order components of G minus the vertex subset."""
    mask = 0
    for v in subset:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside 0..{g.n-1}")
        mask |= 1 << v
    return sum(1 for comp in g.components(mask) if comp.bit_count() & 1)


# --- graph6 codec (n <= 62, single-byte order) ---------------------------

_G6_MAX_N = 62


def _pairs_column_major(n):
    # graph6 bit order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(data):
    """Decode one graph6 value (bytes or ASCII str) into a Graph."""
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as exc:
            raise GraphParseError("non-ASCII byte in graph6 input", exc.start) from None
    if len(data) == 0:
        raise GraphParseError("empty graph6 input", 0)
    head = data[0]
    if head == 126:
        raise GraphParseError("multi-byte vertex count (n > 62) not supported", 0)
    if not 63 <= head <= 126:
        raise GraphParseError(f"byte {head} outside graph6 range [63,126]", 0)
    n = head - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) < 1 + nbytes:
        raise GraphParseError(
            f"truncated graph6 payload: need {1 + nbytes} bytes for n={n}", len(data)
        )
    if len(data) > 1 + nbytes:
        raise GraphParseError("trailing garbage after graph6 payload", 1 + nbytes)
    rows = [0] * n
    pair = _pairs_column_major(n)
    bit = 0
    for k in range(1, len(data)):
        byte = data[k]
        if not 63 <= byte <= 126:
            raise GraphParseError(f"byte {byte} outside graph6 range [63,126]", k)
        group = byte - 63
        for shift in (5, 4, 3, 2, 1, 0):
            b = group >> shift & 1
            if bit < nbits:
                if b:
                    i, j = next(pair)
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                else:
                    next(pair)
            elif b:
                raise GraphParseError("nonzero padding bit", k)
            bit += 1
    return Graph(n, rows)


def write_graph6(g):
    """Encode a graph (n <= 62) as canonical graph6 bytes."""
    if g.n > _G6_MAX_N:
        raise SizeLimitError(f"graph6 writer supports n <= {_G6_MAX_N}, got n={g.n}")
    out = bytearray([g.n + 63])
    group = 0
    filled = 0
    for i, j in _pairs_column_major(g.n):
        group = group << 1 | (g.rows[i] >> j & 1)
        filled += 1
        if filled == 6:
            out.append(group + 63)
            group, filled = 0, 0
    if filled:
        out.append((group << (6 - filled)) + 63)
    return bytes(out)


def iter_graph6_file(path):
    """Yield (line_number, raw_bytes) per non-empty line of a graph6 file.

    Tolerates and skips an optional ``>>graph6<<`` header; lines are
    LF-terminated, CR stripped if present. No parsing happens here so a
    caller can report bad lines and continue.
    """
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip(b"\r\n")
            if line.startswith(b">>graph6<<"):
                line = line[len(b">>graph6<<"):]
            if line:
                yield lineno, line


# --- enumeration, sampling, isomorphism -----------------------------------

_ENUM_MAX_N = 7


def _pairs_lex(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph_from_pair_mask(n, mask):
    """Graph whose edges are the set bits of ``mask`` over lexicographic pairs."""
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if mask >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows)


def enumerate_labeled_graphs(n, predicate=None):
    """Yield every labeled simple graph on n vertices (n <= 7) passing ``predicate``.

    Deterministic order: increasing adjacency bitmask over lexicographic
    vertex pairs. Isomorphic duplicates are intentionally not removed.
    """
    if n > _ENUM_MAX_N:
        raise SizeLimitError(
            f"exhaustive enumeration supports n <= {_ENUM_MAX_N}; "
            "ingest a graph6 corpus for larger orders"
        )
    npairs = n * (n - 1) // 2
    for mask in range(1 << npairs):
        g = graph_from_pair_mask(n, mask)
        if predicate is None or predicate(g):
            yield g


def random_graph(n, edge_prob, seed):
    """Seeded Erdos-Renyi graph G(n, p).

    Uses the stdlib Mersenne Twister (``random.Random``) with the given
    64-bit seed; edges are drawn for pairs (i, j), i < j, in lexicographic
    order, so the same seed yields the same graph on every platform.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, rows)


def relabel(g, perm):
    """Image of g under the vertex bijection v -> perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    rows = [0] * g.n
    for u in range(g.n):
        bits = g.rows[u]
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            rows[perm[u]] |= 1 << perm[v]
    return Graph(g.n, rows)


_ISO_MAX_N = 10


def is_isomorphic_small(g, h):
    """Exact isomorphism test for n <= 10 via degree-pruned backtracking."""
    if g.n != h.n:
        return False
    if g.n > _ISO_MAX_N:
        raise SizeLimitError(f"isomorphism test supports n <= {_ISO_MAX_N}")
    n = g.n
    if n == 0:
        return True
    gdeg = g.degrees()
    hdeg = h.degrees()
    if sorted(gdeg) != sorted(hdeg) or g.m != h.m:
        return False

    def signature(graph, deg, v):
        return (deg[v], tuple(sorted(deg[u] for u in _bits(graph.rows[v]))))

    gsig = [signature(g, gdeg, v) for v in range(n)]
    hsig = [signature(h, hdeg, v) for v in range(n)]
    if sorted(gsig) != sorted(hsig):
        return False

    # map g-vertices in an order that stays adjacent to the mapped prefix
    order = []
    placed = 0
    while len(order) < n:
        best = None
        for v in range(n):
            if placed >> v & 1:
                continue
            anchored = (g.rows[v] & placed).bit_count()
            key = (anchored, gdeg[v])
            if best is None or key > best[0]:
                best = (key, v)
        order.append(best[1])
        placed |= 1 << best[1]

    mapping = [-1] * n
    used = [False] * n

    def extend(idx):
        if idx == n:
            return True
        v = order[idx]
        for w in range(n):
            if used[w] or hsig[w] != gsig[v]:
                continue
            ok = True
            for prev in order[:idx]:
                if (g.rows[v] >> prev & 1) != (h.rows[w] >> mapping[prev] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(idx + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return extend(0)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low

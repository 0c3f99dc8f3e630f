"""Exact even-factor existence oracles.

An even factor is a spanning subgraph in which every vertex has nonzero
even degree. Edge sets with all degrees even are exactly the GF(2) cycle
space, so existence is equivalent to some cycle-space member covering
every vertex; ``find_even_factor`` enumerates that space. A second,
deliberately independent route (``naive_even_factor``) brute-forces every
edge subset and exists to cross-check the first.
"""

from dataclasses import dataclass

import numpy as np

from .graphs import SizeLimitError, odd_components

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

DEFAULT_DIM_BUDGET = 24
DEFAULT_SUBSET_BUDGET = 20

_WITNESS_METHODS = ("cycle-space", "naive")


@dataclass(frozen=True)
class FactorVerdict:
    """Tri-state even-factor answer.

    ``witness`` is present and verified for the witness-producing methods
    (cycle-space, naive); a yan-kano-implied yes is witness-free, its
    existence guaranteed by the odd-component condition.
    """

    exists: str  # YES | NO | UNKNOWN
    method: str  # "cycle-space" | "naive" | "yan-kano-implied" | "degree-shortcut"
    witness: frozenset = None

    def __post_init__(self):
        if self.exists == YES and self.method in _WITNESS_METHODS and self.witness is None:
            raise ValueError(f"method {self.method} must supply a witness")


def verify_even_factor(g, edge_set):
    """True iff the edge set gives every vertex of g a nonzero even degree."""
    deg = [0] * g.n
    seen = set()
    for u, v in edge_set:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise ValueError(f"edge ({u},{v}) not in the host graph")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        deg[u] += 1
        deg[v] += 1
    return all(d and d % 2 == 0 for d in deg)


def _component_vertices(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _fundamental_cycles(g, comp_mask, edge_index):
    """Fundamental cycles of one component, as lists of (edge_id, u, v)."""
    root = (comp_mask & -comp_mask).bit_length() - 1
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        bits = g.rows[u] & comp_mask
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            if v not in parent:
                parent[v] = u
                depth[v] = depth[u] + 1
                order.append(v)
    tree_edges = set()
    for v, u in parent.items():
        if u is not None:
            tree_edges.add((min(u, v), max(u, v)))
    cycles = []
    for u in _component_vertices(comp_mask):
        bits = g.rows[u] >> (u + 1) << (u + 1)
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            if not comp_mask >> v & 1 or (u, v) in tree_edges:
                continue
            cycle = [(edge_index[(u, v)], u, v)]
            x, y = u, v
            while x != y:
                if depth[x] >= depth[y]:
                    px = parent[x]
                    cycle.append((edge_index[(min(x, px), max(x, px))], x, px))
                    x = px
                else:
                    py = parent[y]
                    cycle.append((edge_index[(min(y, py), max(y, py))], y, py))
                    y = py
            cycles.append(cycle)
    return cycles


_CANCEL_CHECK_STRIDE = 4096


def find_even_factor(g, dim_budget=DEFAULT_DIM_BUDGET, should_stop=None):
    """Cycle-space search for an even factor.

    Per component: take a spanning tree, build the fundamental cycles, and
    walk every GF(2) combination in Gray-code order (one cycle toggled per
    step, degrees updated incrementally) until a combination covers all the
    component's vertices. The whole space for a component exhausted without
    a covering member means no even factor exists. When the total cycle
    space dimension m - n + c exceeds ``dim_budget`` the verdict is
    UNKNOWN rather than an error. ``should_stop`` is an optional callable
    polled during long enumerations; cancelling yields UNKNOWN.
    """
    if g.n == 0:
        return FactorVerdict(exists=YES, method="cycle-space", witness=frozenset())
    edges = g.edges()
    comps = g.components()
    dim_total = len(edges) - g.n + len(comps)
    if dim_total > dim_budget:
        return FactorVerdict(exists=UNKNOWN, method="cycle-space")
    edge_index = {e: i for i, e in enumerate(edges)}
    witness_ids = set()
    for comp_mask in comps:
        cycles = _fundamental_cycles(g, comp_mask, edge_index)
        # short cycles first: Gray code toggles low indices most often
        cycles.sort(key=lambda cyc: (len(cyc), cyc[0][0]))
        found = _cover_component(g, comp_mask, cycles, should_stop)
        if found is None:
            return FactorVerdict(exists=NO, method="cycle-space")
        if found is _CANCELLED:
            return FactorVerdict(exists=UNKNOWN, method="cycle-space")
        witness_ids |= found
    witness = frozenset(edges[i] for i in witness_ids)
    return FactorVerdict(exists=YES, method="cycle-space", witness=witness)


_CANCELLED = object()


def _cover_component(g, comp_mask, cycles, should_stop):
    """First Gray-order cycle combination covering the component, as edge ids.

    Returns None when the space holds no covering member.
    """
    comp_n = comp_mask.bit_count()
    if comp_n == 1:
        return None  # a lone vertex can never gain nonzero degree
    deg = {v: 0 for v in _component_vertices(comp_mask)}
    zero_count = comp_n
    current = set()
    dim = len(cycles)
    for step in range(1, 1 << dim):
        if should_stop is not None and step % _CANCEL_CHECK_STRIDE == 0 and should_stop():
            return _CANCELLED
        toggle = (step & -step).bit_length() - 1
        for eid, u, v in cycles[toggle]:
            if eid in current:
                current.remove(eid)
                for w in (u, v):
                    deg[w] -= 1
                    if deg[w] == 0:
                        zero_count += 1
            else:
                current.add(eid)
                for w in (u, v):
                    if deg[w] == 0:
                        zero_count -= 1
                    deg[w] += 1
        if zero_count == 0:
            return set(current)
    return None


def naive_even_factor(g):
    """Ground-truth oracle: test all 2^m edge subsets (m <= 20).

    Vectorized over subset bitmasks, but still literal brute force: every
    subset is checked independently for all-even nonzero degrees. The
    witness, when one exists, is the smallest qualifying bitmask over
    lexicographic edge order.
    """
    edges = g.edges()
    m = len(edges)
    if m > 20:
        raise SizeLimitError(f"naive oracle supports m <= 20, got m={m}")
    if g.n == 0:
        return FactorVerdict(exists=YES, method="naive", witness=frozenset())
    incident = [0] * g.n
    for i, (u, v) in enumerate(edges):
        incident[u] |= 1 << i
        incident[v] |= 1 << i
    subsets = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(1 << m, dtype=bool)
    for v in range(g.n):
        masked = subsets & incident[v]
        ok &= masked != 0
        parity = masked
        parity ^= parity >> 16
        parity ^= parity >> 8
        parity ^= parity >> 4
        parity ^= parity >> 2
        parity ^= parity >> 1
        ok &= (parity & 1) == 0
    hits = np.nonzero(ok)[0]
    if hits.size == 0:
        return FactorVerdict(exists=NO, method="naive")
    first = int(hits[0])
    witness = frozenset(edges[i] for i in range(m) if first >> i & 1)
    return FactorVerdict(exists=YES, method="naive", witness=witness)


HOLDS = "holds"
VIOLATED = "violated"


@dataclass(frozen=True)
class YanKanoResult:
    status: str  # HOLDS | VIOLATED | UNKNOWN
    violating_set: tuple = None


def _subsets_lex(n):
    # sorted-tuple lexicographic order: (0,1), (0,1,2), ..., (0,2), ...
    stack = []
    for first in range(n):
        stack.append(((first,), first + 1))
        while stack:
            prefix, start = stack.pop()
            if len(prefix) >= 2:
                yield prefix
            for nxt in range(n - 1, start - 1, -1):
                stack.append((prefix + (nxt,), nxt + 1))


def yan_kano_check(g, subset_budget=DEFAULT_SUBSET_BUDGET, should_stop=None):
    """Exhaustively test o(G-S) < |S| over all S with |S| >= 2.

    HOLDS together with even order implies an even factor exists. Returns
    the lexicographically first violating subset if there is one, and
    UNKNOWN when n exceeds the subset budget (2^n subsets) or the check is
    cancelled.
    """
    if g.n > subset_budget:
        return YanKanoResult(status=UNKNOWN)
    for count, subset in enumerate(_subsets_lex(g.n)):
        if should_stop is not None and count % _CANCEL_CHECK_STRIDE == 0 and should_stop():
            return YanKanoResult(status=UNKNOWN)
        if odd_components(g, subset) >= len(subset):
            return YanKanoResult(status=VIOLATED, violating_set=subset)
    return YanKanoResult(status=HOLDS)

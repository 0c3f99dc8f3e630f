"""Threshold theorem machinery: order thresholds, the extremal clique
family, per-graph classification against the spectral bound, corpus
verification, and numerical checks of the comparison arguments behind the
bound (characteristic-cubic dominance and the edge-surgery monotonicity).

The claim under test: a connected graph of even order n with minimum
degree d >= 2 and n above the alpha-dependent threshold contains an even
factor whenever its spectral radius reaches that of the extremal graph
K_d v (K_{n-2d+1} u (d-1)K_1) -- unless it is that graph.  A
"counterexample" record is a graph meeting the bound, not extremal, and
provably without an even factor; the claim says there are none.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import factor as factor_mod
from .factor import (
    DEFAULT_DIM_BUDGET,
    DEFAULT_SUBSET_BUDGET,
    FactorVerdict,
    find_even_factor,
    yan_kano_check,
)
from .graphs import JoinUnionSpec, build_join_union, is_isomorphic_small, random_graph
from .quotient import charpoly_join, largest_real_root
from .spectral import check_alpha, quadratic_form_delta, spectral_radius

DEFAULT_EPS = 1e-9


def min_order(a, delta):
    """Smallest even-order threshold at which the bound applies.

    7d-7 for a in [0,1/2]; 8d-8 for a in (1/2,2/3]; (3d-3)/(1-a) for a in
    (2/3,1). alpha = 1 is outside the theorem's domain.
    """
    a = check_alpha(a, upper_open=True)
    if delta < 2:
        raise ValueError("minimum degree must be >= 2")
    if a <= 0.5:
        return float(7 * delta - 7)
    if a <= 2.0 / 3.0:
        return float(8 * delta - 8)
    return (3.0 * delta - 3.0) / (1.0 - a)


@dataclass(frozen=True)
class ExtremalSpec:
    """Order/minimum-degree parameters of the extremal graph."""

    n: int
    delta: int

    def __post_init__(self):
        if self.n % 2:
            raise ValueError("extremal order must be even")
        if self.delta < 2:
            raise ValueError("minimum degree must be >= 2")
        if self.n < 2 * self.delta:
            raise ValueError("need n >= 2*delta so the large clique is nonempty")

    def join_union(self):
        return JoinUnionSpec(
            s=self.delta, parts=(self.n - 2 * self.delta + 1,) + (1,) * (self.delta - 1)
        )


def build_extremal(spec):
    """K_d v (K_{n-2d+1} u (d-1)K_1); its minimum degree is exactly d."""
    return build_join_union(spec.join_union())


def rho_star(spec, a):
    """Spectral radius of the extremal graph via its quotient cubic."""
    a = check_alpha(a, upper_open=True)
    poly = charpoly_join(spec.n, spec.delta, a)
    return largest_real_root(poly, bracket_hi=float(spec.n))


def recognize_extremal(g):
    """The ExtremalSpec such that g is isomorphic to the extremal graph, else None.

    Structural test: with d the minimum degree, the degree-d vertices must
    form the independent block (d-1 of them; d when n = 2d, where the
    size-1 large clique is indistinguishable from them), sharing a common
    neighborhood S of size d; S induces a clique adjacent to everything,
    and the rest is a clique of size n-2d+1 joined to S with no edges to
    the independent block.
    """
    n = g.n
    if n < 4 or n % 2:
        return None
    delta = g.min_degree()
    if delta < 2 or n < 2 * delta:
        return None
    low = [v for v in range(n) if g.degree(v) == delta]
    if n == 2 * delta:
        if len(low) != delta:
            return None
        indep = low[: delta - 1]
    else:
        if len(low) != delta - 1:
            return None
        indep = low
    indep_mask = sum(1 << v for v in indep)
    common = (1 << n) - 1
    for v in indep:
        if g.rows[v] & indep_mask:
            return None  # not independent
        common &= g.rows[v]
    if common.bit_count() != delta:
        return None
    s_mask = common
    if s_mask & indep_mask:
        return None
    clique_mask = ((1 << n) - 1) ^ s_mask ^ indep_mask
    for u in _mask_bits(s_mask):
        if g.rows[u] != ((1 << n) - 1) ^ (1 << u):
            return None  # join vertices see everything
    for w in _mask_bits(clique_mask):
        if g.rows[w] != (clique_mask ^ (1 << w)) | s_mask:
            return None
    spec = ExtremalSpec(n=n, delta=delta)
    if n <= 10 and not is_isomorphic_small(g, build_extremal(spec)):
        raise AssertionError("structural recognizer disagrees with isomorphism test")
    return spec


def _mask_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class VerdictRecord:
    """Outcome of checking one (graph, alpha) pair against the bound."""

    graph_id: object
    n: int
    delta: int
    alpha: float
    applicable: bool
    skip_reason: str = None
    rho_g: float = None
    rho_star: float = None
    meets_bound: bool = None
    is_extremal: bool = None
    factor: FactorVerdict = None
    counterexample: bool = False

    def to_json_dict(self):
        return {
            "id": self.graph_id,
            "n": self.n,
            "delta": self.delta,
            "alpha": self.alpha,
            "applicable": self.applicable,
            "skip_reason": self.skip_reason,
            "rho_g": self.rho_g,
            "rho_star": self.rho_star,
            "meets_bound": self.meets_bound,
            "is_extremal": self.is_extremal,
            "factor": None if self.factor is None else self.factor.exists,
            "factor_method": None if self.factor is None else self.factor.method,
            "counterexample": self.counterexample,
        }


def even_factor_verdict(g, dim_budget=DEFAULT_DIM_BUDGET, subset_budget=DEFAULT_SUBSET_BUDGET):
    """Cheapest-first even-factor decision.

    Degree shortcut (a vertex of degree < 2 kills every candidate), then
    the odd-component sufficient condition (decisive only for existence,
    on even order), then the cycle-space oracle within its budget.
    """
    if g.n == 0:
        return FactorVerdict(exists=factor_mod.YES, method="cycle-space", witness=frozenset())
    if g.min_degree() < 2:
        return FactorVerdict(exists=factor_mod.NO, method="degree-shortcut")
    if g.n % 2 == 0:
        yk = yan_kano_check(g, subset_budget=subset_budget)
        if yk.status == factor_mod.HOLDS:
            return FactorVerdict(exists=factor_mod.YES, method="yan-kano-implied")
    return find_even_factor(g, dim_budget=dim_budget)


_SKIP_CHECKS = (
    ("empty graph", lambda g, a: g.n == 0),
    ("not connected", lambda g, a: not g.is_connected()),
    ("minimum degree < 2", lambda g, a: g.min_degree() < 2),
    ("odd order", lambda g, a: g.n % 2 == 1),
    (
        "order below threshold",
        lambda g, a: g.n < min_order(a, g.min_degree()),
    ),
)


def classify(
    g,
    a,
    eps=DEFAULT_EPS,
    dim_budget=DEFAULT_DIM_BUDGET,
    subset_budget=DEFAULT_SUBSET_BUDGET,
    graph_id=None,
    factor=None,
):
    """Check one graph against the spectral bound at one alpha.

    Precondition failures (disconnected, min degree < 2, odd order, order
    below the alpha threshold) mark the record inapplicable with a skip
    reason instead of raising. ``factor`` lets a caller reuse an
    alpha-independent verdict.
    """
    a = check_alpha(a, upper_open=True)
    n = g.n
    delta = g.min_degree() if n else 0
    for reason, fails in _SKIP_CHECKS:
        if fails(g, a):
            return VerdictRecord(
                graph_id=graph_id,
                n=n,
                delta=delta,
                alpha=a,
                applicable=False,
                skip_reason=reason,
            )
    rho_g = spectral_radius(g, a).radius
    star = rho_star(ExtremalSpec(n=n, delta=delta), a)
    meets = rho_g >= star - eps
    extremal = recognize_extremal(g) is not None
    verdict = factor
    if verdict is None:
        verdict = even_factor_verdict(g, dim_budget=dim_budget, subset_budget=subset_budget)
    counterexample = bool(meets and not extremal and verdict.exists == factor_mod.NO)
    return VerdictRecord(
        graph_id=graph_id,
        n=n,
        delta=delta,
        alpha=a,
        applicable=True,
        rho_g=rho_g,
        rho_star=star,
        meets_bound=meets,
        is_extremal=extremal,
        factor=verdict,
        counterexample=counterexample,
    )


@dataclass
class CorpusSummary:
    """Per-alpha tallies plus corpus read errors."""

    alphas: list
    counts: dict = field(default_factory=dict)  # alpha -> column dict
    read_errors: list = field(default_factory=list)  # (line_number, message)
    graphs_seen: int = 0

    COLUMNS = (
        "applicable",
        "meets_bound",
        "extremal",
        "no_factor",
        "counterexamples",
        "unknown",
    )

    def __post_init__(self):
        for a in self.alphas:
            self.counts.setdefault(a, {col: 0 for col in self.COLUMNS})

    def add(self, record):
        row = self.counts[record.alpha]
        if not record.applicable:
            return
        row["applicable"] += 1
        if record.meets_bound:
            row["meets_bound"] += 1
        if record.is_extremal:
            row["extremal"] += 1
        if record.factor is not None and record.factor.exists == factor_mod.NO:
            row["no_factor"] += 1
        if record.factor is not None and record.factor.exists == factor_mod.UNKNOWN:
            row["unknown"] += 1
        if record.counterexample:
            row["counterexamples"] += 1

    @property
    def counterexamples(self):
        return sum(row["counterexamples"] for row in self.counts.values())

    def csv_rows(self):
        yield ("alpha",) + self.COLUMNS
        for a in self.alphas:
            row = self.counts[a]
            yield (a,) + tuple(row[col] for col in self.COLUMNS)


def _classify_one(item):
    graph_id, g, alphas, eps, dim_budget, subset_budget = item
    records = []
    verdict = None
    for a in alphas:
        if verdict is None:
            probe = classify(
                g, a, eps=eps, dim_budget=dim_budget,
                subset_budget=subset_budget, graph_id=graph_id,
            )
            verdict = probe.factor  # alpha-independent; reuse for later alphas
        else:
            probe = classify(
                g, a, eps=eps, dim_budget=dim_budget,
                subset_budget=subset_budget, graph_id=graph_id, factor=verdict,
            )
        records.append(probe)
    return records


def verify_corpus(
    graphs,
    alphas,
    eps=DEFAULT_EPS,
    dim_budget=DEFAULT_DIM_BUDGET,
    subset_budget=DEFAULT_SUBSET_BUDGET,
    jobs=1,
    read_errors=(),
):
    """Classify every (graph, alpha) pair of a corpus.

    ``graphs`` yields (graph_id, Graph). Records come back in input order
    (alphas nested inner) regardless of ``jobs``; the even-factor verdict
    is computed once per graph and shared across alphas. Returns
    (records, summary); the theorem stands iff summary.counterexamples == 0.
    """
    alphas = [check_alpha(a, upper_open=True) for a in alphas]
    summary = CorpusSummary(alphas=list(alphas))
    for lineno, message in read_errors:
        summary.read_errors.append((lineno, message))
    items = (
        (graph_id, g, alphas, eps, dim_budget, subset_budget) for graph_id, g in graphs
    )
    records = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = pool.map(_classify_one, items, chunksize=64)
            for batch in batches:
                records.extend(batch)
                summary.graphs_seen += 1
                for record in batch:
                    summary.add(record)
    else:
        for item in items:
            batch = _classify_one(item)
            records.extend(batch)
            summary.graphs_seen += 1
            for record in batch:
                summary.add(record)
    return records, summary


def iter_random_connected(n, edge_prob, count, min_degree=2, start_seed=0):
    """Seeded rejection sampler for connected graphs with a degree floor.

    Seeds are consecutive integers from ``start_seed``; item k is the k-th
    accepted graph, so the stream is reproducible and trivially shardable.
    """
    produced = 0
    seed = start_seed
    while produced < count:
        g = random_graph(n, edge_prob, seed)
        seed += 1
        if g.n and g.min_degree() >= min_degree and g.is_connected():
            yield f"seed={seed - 1}", g
            produced += 1


# --- proof-machinery checks ------------------------------------------------


def f_case1(n, delta, s, a, x):
    """The dominance quadratic f(x): charpoly_join(n,s) - charpoly_join(n,delta)
    equals (s - delta) * f(x) coefficient-for-coefficient.

    Integer-literal coefficients, so exact inputs (Fraction alpha, integer x)
    evaluate exactly; float inputs evaluate in doubles.
    """
    if not 0 <= a <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {a}")
    quad = 1 - a
    lin = a * a * n - s - delta + 2 * (1 - a)
    const = (
        -(a * a) * n * n
        + (2 * a * a - 2 * a + 1) * s * n
        + (2 * a * a - 2 * a + 1) * delta * n
        - (a * a - 3 * a + 1) * n
        - (3 * a * a - 5 * a + 2) * s * s
        - (3 * a * a - 5 * a + 2) * s * delta
        + (3 * a * a - 6 * a + 2) * s
        - (3 * a * a - 5 * a + 2) * delta * delta
        + (3 * a * a - 6 * a + 2) * delta
    )
    return (quad * x + lin) * x + const


@dataclass(frozen=True)
class PositivityScan:
    checked: int
    violations: tuple
    min_value: float = None
    min_point: tuple = None


def subcase_positivity_scan(alpha_grid, delta_range, margin_n):
    """Certify f(n - delta) > 0 over the applicable parameter box.

    For every alpha in the grid, delta in the range, even n in
    [min_order, min_order + margin_n] and integer s in [delta+1, n//2],
    evaluates f at x = n - delta. The sign test runs in exact rational
    arithmetic (each grid alpha taken at its exact binary value): the
    margins shrink to ~1e-15 next to the alpha=2/3 regime boundary, where
    double evaluation noise would report spurious sign flips -- and at the
    exact rational 2/3 itself f(n-delta) genuinely hits zero (s = n/2,
    n = 8*delta-8), which a Fraction(2,3) grid entry faithfully reports as
    a violation of strictness. Violations are reported, not raised.
    """
    checked = 0
    violations = []
    min_value = None
    min_point = None
    for a in alpha_grid:
        if not 0 <= a < 1:
            raise ValueError(f"alpha must lie in [0, 1), got {a}")
        exact_a = Fraction(a)
        for delta in delta_range:
            base = min_order(float(a), delta)
            n = math.ceil(base)
            if n % 2:
                n += 1
            while n <= base + margin_n:
                for s in range(delta + 1, n // 2 + 1):
                    value = f_case1(n, delta, s, exact_a, n - delta)
                    checked += 1
                    if min_value is None or value < min_value:
                        min_value = value
                        min_point = (a, delta, n, s)
                    if value <= 0:
                        violations.append(
                            {
                                "alpha": a,
                                "delta": delta,
                                "n": n,
                                "s": s,
                                "value": float(value),
                            }
                        )
                n += 2
    return PositivityScan(
        checked=checked,
        violations=tuple(violations),
        min_value=None if min_value is None else float(min_value),
        min_point=min_point,
    )


def case3_surgery(n, delta, s):
    """Build the small-separator comparison pair (G3, G4).

    G3 = K_s v (K_m u (s-1)K_{d+1-s}) with m = n - s - (d+1-s)(s-1).
    G4 rewires G3: drop the edges inside the first small clique and the
    star edges v_{i,1}v_{i,j} of the others, then join every small-clique
    vertex to the first d-s large-clique vertices and the non-star
    vertices v_{i,j} (i>=2, j>=2) to the remaining large-clique vertices.
    Returns (G3, G4, edge_delta) where edge_delta = |added| - |removed|
    from the closed form, cross-checked against the constructed sets.
    """
    if not 2 <= s <= delta - 1:
        raise ValueError(f"need 2 <= s <= delta-1, got s={s}, delta={delta}")
    if n % 2:
        raise ValueError("order must be even")
    small = delta + 1 - s
    m_inner = n - s - small * (s - 1)
    if m_inner < small:
        raise ValueError(
            f"large clique (size {m_inner}) would be smaller than the parts (size {small})"
        )
    spec = JoinUnionSpec(s=s, parts=(m_inner,) + (small,) * (s - 1))
    g3 = build_join_union(spec)
    large = list(range(s, s + m_inner))

    def small_vertex(i, j):
        # clique index i in 1..s-1, member index j in 1..small
        return s + m_inner + (i - 1) * small + (j - 1)

    removed = []
    first = [small_vertex(1, j) for j in range(1, small + 1)]
    removed.extend((u, v) for idx, u in enumerate(first) for v in first[idx + 1:])
    for i in range(2, s):
        hub = small_vertex(i, 1)
        removed.extend((hub, small_vertex(i, j)) for j in range(2, small + 1))

    added = []
    for i in range(1, s):
        for j in range(1, small + 1):
            v = small_vertex(i, j)
            added.extend((v, large[r]) for r in range(delta - s))
    for i in range(2, s):
        for j in range(2, small + 1):
            v = small_vertex(i, j)
            added.extend((v, large[r]) for r in range(delta - s, m_inner))

    g4 = g3.remove_edges(removed).add_edges(added)
    closed_form = (2 * s - 3) * math.comb(small, 2) + (m_inner - delta + s - 1) * (
        s - 2
    ) * (delta - s)
    if closed_form != len(added) - len(removed):
        raise AssertionError(
            f"edge delta closed form {closed_form} != constructed {len(added) - len(removed)}"
        )
    return g3, g4, closed_form


def case3_radius_gap(n, delta, s, a):
    """spectral_radius(G4) - spectral_radius(G3); the surgery must raise it."""
    a = check_alpha(a, upper_open=True)
    g3, g4, _ = case3_surgery(n, delta, s)
    return spectral_radius(g4, a).radius - spectral_radius(g3, a).radius


def case3_quadratic_form(n, delta, s, a):
    """Perron quadratic form of the surgery difference, x = Perron(G3)."""
    a = check_alpha(a, upper_open=True)
    g3, g4, _ = case3_surgery(n, delta, s)
    x = spectral_radius(g3, a).perron
    return quadratic_form_delta(g4, g3, x, a)


def merge_bound_check(spec, p, a):
    """Radii of a clique family and its p-merged canonical form.

    Returns (rho(spec graph), rho(K_s v (K_{n-s-p(t-1)} u (t-1)K_p))).
    The first never exceeds the second, with equality exactly when the
    spec already has the canonical shape.
    """
    a = check_alpha(a, upper_open=True)
    if p < 1:
        raise ValueError("p must be >= 1")
    if spec.t < 1:
        raise ValueError("spec needs at least one part")
    if any(part < p for part in spec.parts):
        raise ValueError("every part must be >= p")
    big = spec.n - spec.s - p * (spec.t - 1)
    if spec.parts and spec.parts[0] > big:
        raise ValueError("largest part exceeds the merged clique size")
    merged = JoinUnionSpec(s=spec.s, parts=(big,) + (p,) * (spec.t - 1))
    rho_spec = spectral_radius(build_join_union(spec), a).radius
    rho_merged = spectral_radius(build_join_union(merged), a).radius
    return rho_spec, rho_merged


def is_canonical_merge_shape(spec, p):
    """True iff spec.parts already equals (n-s-p(t-1), p, ..., p)."""
    big = spec.n - spec.s - p * (spec.t - 1)
    return spec.parts == (big,) + (p,) * (spec.t - 1)

"""Equitable partitions, quotient matrices, and the clique-family cubic.

For an equitable partition the quotient's spectrum embeds in the full
spectrum and its largest eigenvalue equals the full spectral radius, which
is what makes the closed-form cubic below an exact route to the radius of
K_s v (K_{n-2s+1} u (s-1)K_1).
"""

from dataclasses import dataclass

import numpy as np

from .spectral import check_alpha, spectral_radius

PERRON_CELL_DEVIATION_BOUND = 1e-8


class PartitionError(ValueError):
    """Cells do not form a valid (or equitable, where required) partition."""


class RootBracketError(ValueError):
    """No sign change found when bracketing a polynomial root."""


class CellDeviationError(RuntimeError):
    """Perron entries varied within a cell beyond the allowed bound."""


def validate_partition(g, cells):
    """Normalize cells to tuples and check disjoint/covering/non-empty."""
    norm = []
    seen = 0
    for idx, cell in enumerate(cells):
        cell = tuple(cell)
        if not cell:
            raise PartitionError(f"cell {idx} is empty")
        for v in cell:
            if not 0 <= v < g.n:
                raise PartitionError(f"vertex {v} outside 0..{g.n-1}")
            if seen >> v & 1:
                raise PartitionError(f"vertex {v} appears in more than one cell")
            seen |= 1 << v
        norm.append(cell)
    if seen != (1 << g.n) - 1:
        raise PartitionError("cells do not cover every vertex")
    return norm


@dataclass(frozen=True)
class QuotientMatrix:
    entries: np.ndarray
    equitable: bool

    @property
    def order(self):
        return self.entries.shape[0]


def quotient_matrix(g, a, cells):
    """Per-cell average block row sums of the alpha matrix.

    The equitable flag is decided from integer neighbor counts alone: the
    partition is equitable for every alpha simultaneously exactly when each
    vertex's neighbor count into every cell depends only on its own cell.
    """
    a = check_alpha(a)
    cells = validate_partition(g, cells)
    k = len(cells)
    masks = [sum(1 << v for v in cell) for cell in cells]
    entries = np.zeros((k, k))
    equitable = True
    for i, cell in enumerate(cells):
        counts = None
        for v in cell:
            row_counts = [(g.rows[v] & masks[j]).bit_count() for j in range(k)]
            if counts is None:
                counts = row_counts
            elif counts != row_counts:
                equitable = False
            for j in range(k):
                entries[i, j] += (1.0 - a) * row_counts[j]
            entries[i, i] += a * g.degree(v)
        entries[i, :] /= len(cell)
    return QuotientMatrix(entries=entries, equitable=equitable)


def natural_partition(spec):
    """Cells of the clique family: join block first, then one cell per part.

    Matches build_join_union's vertex layout; always equitable for the
    constructed graph. An s=0 join block is omitted (no empty cells).
    """
    cells = []
    if spec.s:
        cells.append(tuple(range(spec.s)))
    offset = spec.s
    for size in spec.parts:
        cells.append(tuple(range(offset, offset + size)))
        offset += size
    return cells


@dataclass(frozen=True)
class CubicPoly:
    """Monic real cubic x^3 + c2*x^2 + c1*x + c0."""

    c2: float
    c1: float
    c0: float

    def __call__(self, x):
        return ((x + self.c2) * x + self.c1) * x + self.c0

    def derivative(self, x):
        return (3.0 * x + 2.0 * self.c2) * x + self.c1

    def coefficients(self):
        return (1.0, self.c2, self.c1, self.c0)


def charpoly_join(n, s, a):
    """Characteristic cubic of the 3-cell quotient of K_s v (K_{n-2s+1} u (s-1)K_1).

    Cells: join block, large clique, and the s-1 isolated-part vertices
    together. Its largest root equals the spectral radius of the graph.
    """
    a = check_alpha(a)
    if not n >= 2 * s >= 4:
        raise ValueError(f"need n >= 2s >= 4, got n={n}, s={s}")
    c2 = -((1.0 + a) * n + a * s - s - 1.0)
    c1 = a * n * n + a * a * n * s - n - s * s + 2.0 * (1.0 - a) * s
    c0 = (
        -(a * a) * n * n * s
        + (2.0 * a * a - 2.0 * a + 1.0) * n * s * s
        - (a * a - 3.0 * a + 1.0) * n * s
        - (3.0 * a * a - 5.0 * a + 2.0) * s ** 3
        + (3.0 * a * a - 6.0 * a + 2.0) * s * s
    )
    return CubicPoly(c2=c2, c1=c1, c0=c0)


_ROOT_ABS_ACCURACY = 1e-13
_NEWTON_POLISH_STEPS = 3


def largest_real_root(p, bracket_hi):
    """Largest real root of p below bracket_hi.

    Requires p(bracket_hi) > 0. Scans down from bracket_hi in unit steps to
    the rightmost sign change (robust against the two smaller roots of a
    cubic), bisects, then polishes with a few Newton steps. Absolute
    accuracy is ~1e-12 for simple roots (all quotient cubics of connected
    clique families have a simple largest root); clustered roots are
    limited by double-precision conditioning.
    """
    if p(bracket_hi) <= 0.0:
        raise RootBracketError(f"p({bracket_hi}) must be positive")
    hi = float(bracket_hi)
    lo = None
    x = hi
    while x > 0.0:
        nxt = max(x - 1.0, 0.0)
        if p(nxt) <= 0.0:
            lo, hi = nxt, x
            break
        x = nxt
    if lo is None:
        raise RootBracketError(f"no sign change in [0, {bracket_hi}]")
    while hi - lo > _ROOT_ABS_ACCURACY:
        mid = 0.5 * (lo + hi)
        if p(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    for _ in range(_NEWTON_POLISH_STEPS):
        dp = p.derivative(root)
        if dp == 0.0:
            break
        step = p(root) / dp
        candidate = root - step
        if not lo - 1.0 <= candidate <= hi + 1.0:
            break
        root = candidate
    return root


def perron_cell_values(g, a, cells, deviation_bound=PERRON_CELL_DEVIATION_BOUND):
    """Common Perron value per cell of an equitable partition.

    Returns (values, max_in_cell_deviation). The partition must be
    equitable and the graph connected; a deviation beyond the bound is a
    property violation, not a rounding matter, and raises.
    """
    qm = quotient_matrix(g, a, cells)
    if not qm.equitable:
        raise PartitionError("partition is not equitable")
    if not g.is_connected():
        raise ValueError("Perron cell values need a connected graph")
    cells = validate_partition(g, cells)
    perron = spectral_radius(g, a).perron
    values = []
    max_dev = 0.0
    for cell in cells:
        entries = perron[list(cell)]
        mean = float(entries.mean())
        values.append(mean)
        if len(cell) > 1:
            max_dev = max(max_dev, float(np.max(np.abs(entries - mean))))
    if max_dev > deviation_bound:
        raise CellDeviationError(
            f"in-cell Perron deviation {max_dev:.3e} exceeds {deviation_bound:.1e}"
        )
    return values, max_dev

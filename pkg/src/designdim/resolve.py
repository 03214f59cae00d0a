"""Resolving sets, semi-resolving sets, and exact metric dimension.

A vertex set S resolves a graph when the vectors of hop distances to S are
pairwise distinct.  On the incidence graph of a design, a block is at
distance 1 from the points it contains and distance 3 from the rest, so a
set of blocks distinguishes two points x and y exactly when it meets the
symmetric difference of their pencils B(x) and B(y).  Semi-resolving
questions therefore reduce to hitting-set problems over pencil symmetric
differences, and exact metric dimension reduces to a hitting-set problem
over per-pair separator sets.

Pair bookkeeping uses the flat triangular index (x, y) -> y*(y-1)//2 + x
for x < y; reported witnesses are the smallest in that ordering.  All
randomness comes from 64-bit seeds expanded per trial with a splitmix-style
mixer, so runs are reproducible and independent of PYTHONHASHSEED.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .designs import (
    Design,
    SymmetricDesign,
    dual,
    pencil_masks,
    validate_design,
)
from .incidence import IncidenceGraph, incidence_graph

DEFAULT_EXACT_LIMIT = 40
DEFAULT_NODE_BUDGET = 50_000_000


class RetriesExhausted(RuntimeError):
    """Random sampling never produced a semi-resolving set.  Carries the
    trial count and the best (lowest) unresolved-pair count seen; a small
    per-trial success probability, not a refutation of existence."""

    def __init__(self, trials: int, best_unresolved: int):
        self.trials = trials
        self.best_unresolved = best_unresolved
        super().__init__(
            f"no semi-resolving sample in {trials} trials "
            f"(best trial left {best_unresolved} pairs unresolved)"
        )


class BudgetExceeded(RuntimeError):
    """The exact solver hit its node limit."""


# ---------------------------------------------------------------------------
# pair indexing
# ---------------------------------------------------------------------------

def pair_index(x: int, y: int) -> int:
    if not 0 <= x < y:
        raise ValueError(f"need 0 <= x < y, got ({x}, {y})")
    return y * (y - 1) // 2 + x


def pair_at(p: int) -> tuple[int, int]:
    y = (1 + math.isqrt(1 + 8 * p)) // 2
    while y * (y - 1) // 2 > p:
        y -= 1
    while (y + 1) * y // 2 <= p:
        y += 1
    return p - y * (y - 1) // 2, y


# ---------------------------------------------------------------------------
# pencils and the symmetric-difference characterization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PencilTable:
    """For each point, the bitset of indices of blocks containing it."""

    block_count: int
    masks: tuple[int, ...]


def pencil_table(d: Design) -> PencilTable:
    return PencilTable(block_count=len(d.blocks), masks=tuple(pencil_masks(d)))


def separator_masks(table: PencilTable) -> list[int]:
    """Pencil symmetric differences B(x) ^ B(y), indexed by pair_index."""
    masks = table.masks
    out = []
    for y in range(len(masks)):
        my = masks[y]
        for x in range(y):
            out.append(masks[x] ^ my)
    return out


def _block_set_mask(blocks) -> int:
    m = 0
    for b in blocks:
        m |= 1 << b
    return m


def semi_resolving_witness(d: Design, blocks) -> tuple[int, int] | None:
    """None if every point pair's pencil symmetric difference meets the given
    block set, else the first unseparated pair in triangular order.  This is
    the bitset route; it never looks at graph distances."""
    masks = pencil_masks(d)
    smask = _block_set_mask(blocks)
    for y in range(len(masks)):
        my = masks[y]
        for x in range(y):
            if not (masks[x] ^ my) & smask:
                return (x, y)
    return None


def is_semi_resolving(d: Design, blocks) -> bool:
    return semi_resolving_witness(d, blocks) is None


def _count_unresolved(masks, smask: int) -> int:
    count = 0
    for y in range(len(masks)):
        my = masks[y]
        for x in range(y):
            if not (masks[x] ^ my) & smask:
                count += 1
    return count


def unresolved_pair_count(d: Design, blocks) -> int:
    """Number of point pairs not separated by the given block set."""
    return _count_unresolved(pencil_masks(d), _block_set_mask(blocks))


def symm_diff_sizes(d: Design) -> dict[int, int]:
    """Exhaustive histogram of |B(x) ^ B(y)| over all point pairs."""
    masks = pencil_masks(d)
    hist: dict[int, int] = {}
    for y in range(len(masks)):
        my = masks[y]
        for x in range(y):
            size = (masks[x] ^ my).bit_count()
            hist[size] = hist.get(size, 0) + 1
    return hist


# ---------------------------------------------------------------------------
# distance-vector route
# ---------------------------------------------------------------------------

def resolving_witness(g: IncidenceGraph, vertices) -> tuple[int, int] | None:
    """None if the distance vectors to the given vertices are pairwise
    distinct, else the first colliding vertex pair."""
    landmarks = sorted(set(vertices))
    for s in landmarks:
        if not 0 <= s < g.n:
            raise ValueError(f"landmark {s} out of range")
    seen: dict[tuple[int, ...], int] = {}
    for u in range(g.n):
        row = g.dist[u]
        vec = tuple(row[s] for s in landmarks)
        if vec in seen:
            return (seen[vec], u)
        seen[vec] = u
    return None


def is_resolving(g: IncidenceGraph, vertices) -> bool:
    return resolving_witness(g, vertices) is None


def side_resolving_witness(g, landmarks, side_vertices) -> tuple[int, int] | None:
    """Distance-vector collision among side_vertices only (the distance
    oracle for semi-resolving checks)."""
    landmarks = sorted(set(landmarks))
    seen: dict[tuple[int, ...], int] = {}
    for u in side_vertices:
        vec = tuple(g.dist[u][s] for s in landmarks)
        if vec in seen:
            return (seen[vec], u)
        seen[vec] = u
    return None


# ---------------------------------------------------------------------------
# sample-size bound
# ---------------------------------------------------------------------------

_EXCLUDED_NET_PARAMETERS = {(1, 2), (1, 3), (2, 2)}


def semi_resolving_sample_size(d: Design) -> int:
    """ceil(v*ln(v)/(k-lambda)): a uniform random block sample of this size
    leaves fewer than one unresolved pair in expectation, so a semi-resolving
    set of this size exists.  Natural logarithm throughout."""
    if isinstance(d, SymmetricDesign):
        q = d.k - d.lam
        if q < 2:
            raise ValueError(f"order k - lambda = {q} must be at least 2")
    else:
        if d.lam < 1:
            raise ValueError(f"lambda = {d.lam} must be at least 1")
        if d.g < 2:
            raise ValueError(f"class size g = {d.g} must be at least 2")
        if (d.lam, d.g) in _EXCLUDED_NET_PARAMETERS:
            raise ValueError(
                f"(lambda, g) = ({d.lam}, {d.g}) is excluded: the sample size "
                "would exceed the block count"
            )
    v = d.v
    s = math.ceil(v * math.log(v) / (d.k - d.lam))
    assert s <= v
    return s


def clamped_sample_size(d: Design) -> int:
    """min(ceil(v*ln(v)/(k-lambda)), v): the same bound with the sample size
    capped at the block count, defined for every design with k > lambda."""
    if d.k <= d.lam:
        raise ValueError(f"k - lambda = {d.k - d.lam} must be positive")
    v = d.v
    return min(math.ceil(v * math.log(v) / (d.k - d.lam)), v)


# ---------------------------------------------------------------------------
# deterministic randomness
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1


def _mix64(x: int) -> int:
    x &= _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def trial_rng(seed: int, trial: int) -> random.Random:
    """Deterministic generator for the given (seed, trial) pair."""
    return random.Random(_mix64((seed * 0x9E3779B97F4A7C15 + trial) & _MASK64))


def sample_without_replacement(n: int, s: int, rng: random.Random) -> list[int]:
    """Partial Fisher-Yates draw of s distinct values from range(n)."""
    idx = list(range(n))
    for i in range(s):
        j = rng.randrange(i, n)
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:s]


# ---------------------------------------------------------------------------
# randomized / greedy / exact semi-resolving sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampledSemiResolvingSet:
    blocks: tuple[int, ...]
    trials: int
    sample_size: int
    seed: int


def randomized_semi_resolving(
    d: Design, s: int | None = None, seed: int = 0, max_retries: int = 100
) -> SampledSemiResolvingSet:
    """Repeatedly draw a uniform s-subset of blocks until one semi-resolves
    the points.  Trial t uses the stream derived from (seed, t)."""
    v = d.v
    if s is None:
        s = semi_resolving_sample_size(d)
    if not 1 <= s <= v:
        raise ValueError(f"sample size {s} outside 1..{v}")
    if max_retries < 1:
        raise ValueError(f"max_retries = {max_retries} must be positive")
    masks = pencil_masks(d)
    best_unresolved = None
    for trial in range(1, max_retries + 1):
        rng = trial_rng(seed, trial)
        chosen = sample_without_replacement(v, s, rng)
        smask = _block_set_mask(chosen)
        unresolved = _count_unresolved(masks, smask)
        if unresolved == 0:
            return SampledSemiResolvingSet(
                blocks=tuple(sorted(chosen)), trials=trial, sample_size=s, seed=seed
            )
        if best_unresolved is None or unresolved < best_unresolved:
            best_unresolved = unresolved
    raise RetriesExhausted(trials=max_retries, best_unresolved=best_unresolved)


def _require_valid(d: Design):
    rep = validate_design(d)
    if not rep.ok:
        raise ValueError(f"design does not validate: {rep.violations[0]}")


def _require_separable(separators) -> None:
    for p, sep in enumerate(separators):
        if sep == 0:
            x, y = pair_at(p)
            raise ValueError(
                f"points {x} and {y} lie in exactly the same blocks; no "
                "semi-resolving set exists (complete bipartite incidence "
                "graphs have no split resolving set)"
            )


def greedy_semi_resolving(d: Design) -> tuple[int, ...]:
    """Hitting-set greedy over pencil symmetric differences: take the block
    separating the most still-unseparated pairs, lowest index on ties."""
    _require_valid(d)
    table = pencil_table(d)
    separators = separator_masks(table)
    _require_separable(separators)
    n_blocks = table.block_count
    pair_sets = [0] * n_blocks
    for p, sep in enumerate(separators):
        bit = 1 << p
        while sep:
            b = (sep & -sep).bit_length() - 1
            pair_sets[b] |= bit
            sep &= sep - 1
    uncovered = (1 << len(separators)) - 1
    chosen = []
    while uncovered:
        best_b, best_c = -1, 0
        for b in range(n_blocks):
            c = (pair_sets[b] & uncovered).bit_count()
            if c > best_c:
                best_b, best_c = b, c
        chosen.append(best_b)
        uncovered &= ~pair_sets[best_b]
    result = tuple(sorted(chosen))
    assert is_semi_resolving(d, result)
    return result


# ---------------------------------------------------------------------------
# exact minimum hitting set (shared by min_semi_resolving and metric_dimension)
# ---------------------------------------------------------------------------

def _greedy_hitting_set(sets, n_elements: int) -> list[int]:
    uncovered = list(sets)
    chosen = []
    while uncovered:
        best_e, best_c = -1, 0
        for e in range(n_elements):
            bit = 1 << e
            c = sum(1 for m in uncovered if m & bit)
            if c > best_c:
                best_e, best_c = e, c
        chosen.append(best_e)
        bit = 1 << best_e
        uncovered = [m for m in uncovered if not m & bit]
    return chosen


def _minimum_hitting_set(sets, n_elements: int, budget: int | None, max_size: int | None = None):
    """Branch and bound for a minimum hitting set.

    Works on two bitmap layers: each input set is a bitmask over elements,
    and the collection of still-uncovered sets is itself one bitmask, so
    choosing an element removes all sets it hits in a single AND.  Branches
    on the elements of a smallest uncovered set (most-covering element
    first), prunes with a disjoint-packing lower bound, and starts from the
    greedy upper bound.  With max_size given, searches only for solutions
    of at most that size and returns None when a complete search finds no
    such solution.  Deterministic; returns (solution, nodes visited)."""
    if budget is not None and budget <= 0:
        raise BudgetExceeded(f"node budget {budget} exhausted before search")
    if any(m == 0 for m in sets):
        raise ValueError("an empty set cannot be hit")
    uniq = sorted(set(sets), key=lambda m: (m.bit_count(), m))
    minimal = []
    for m in uniq:
        if not any(kept & m == kept for kept in minimal):
            minimal.append(m)
    covers = [0] * n_elements  # element -> bitmask of set indices it hits
    for i, m in enumerate(minimal):
        while m:
            e = (m & -m).bit_length() - 1
            m &= m - 1
            covers[e] |= 1 << i
    if max_size is None:
        best = sorted(_greedy_hitting_set(minimal, n_elements))
        best_size = len(best)
    else:
        best = None
        best_size = max_size + 1
    nodes = 0
    chosen: list[int] = []

    def packing_exceeds(uncovered: int, slack: int) -> bool:
        # True once pairwise-disjoint uncovered sets outnumber the slack:
        # each needs its own element, so the branch cannot beat best_size
        taken = count = 0
        u = uncovered
        while u:
            i = (u & -u).bit_length() - 1
            u &= u - 1
            m = minimal[i]
            if not m & taken:
                count += 1
                if count > slack:
                    return True
                taken |= m
        return False

    def dfs(uncovered: int):
        nonlocal best, best_size, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded")
        if not uncovered:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best = sorted(chosen)
            return
        slack = best_size - len(chosen) - 1
        if slack <= 0 or packing_exceeds(uncovered, slack):
            return
        pivot = minimal[(uncovered & -uncovered).bit_length() - 1]
        elems = []
        m = pivot
        while m:
            e = (m & -m).bit_length() - 1
            m &= m - 1
            elems.append((-(covers[e] & uncovered).bit_count(), e))
        elems.sort()
        for _, e in elems:
            chosen.append(e)
            dfs(uncovered & ~covers[e])
            chosen.pop()

    dfs((1 << len(minimal)) - 1)
    return (None if best is None else tuple(best)), nodes


def min_semi_resolving(
    d: Design,
    budget: int | None = DEFAULT_NODE_BUDGET,
    limit: int = DEFAULT_EXACT_LIMIT,
) -> tuple[int, ...]:
    """A minimum-cardinality semi-resolving block set, by exact hitting-set
    search over the pencil symmetric differences."""
    v = d.v
    if v > limit:
        raise ValueError(f"{v} points exceeds the exact-solver limit {limit}")
    _require_valid(d)
    separators = separator_masks(pencil_table(d))
    _require_separable(separators)
    solution, _ = _minimum_hitting_set(separators, len(d.blocks), budget)
    assert is_semi_resolving(d, solution)
    return solution


# ---------------------------------------------------------------------------
# exact metric dimension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricDimensionResult:
    lower: int
    upper: int
    landmarks: tuple[int, ...]
    optimal: bool

    @property
    def mu(self) -> int:
        if not self.optimal:
            raise ValueError("only bounds are available for this graph")
        return self.upper


def _vertex_separator_sets(g: IncidenceGraph) -> list[int]:
    """For each vertex pair, the bitset of vertices at different distances
    from the two (never empty: each vertex separates itself from the rest)."""
    sets = []
    for w in range(g.n):
        dw = g.dist[w]
        for u in range(w):
            du = g.dist[u]
            m = 0
            for x in range(g.n):
                if du[x] != dw[x]:
                    m |= 1 << x
            sets.append(m)
    return sets


def metric_dimension(
    g: IncidenceGraph,
    limit: int = DEFAULT_EXACT_LIMIT,
    budget: int | None = DEFAULT_NODE_BUDGET,
) -> MetricDimensionResult:
    """Exact metric dimension as a minimum hitting set over per-pair vertex
    separator sets.  Past the size limit, falls back to the greedy upper
    bound plus the counting lower bound ceil(log(n)/log(diameter+1)),
    flagged non-optimal."""
    sets = _vertex_separator_sets(g)
    if g.n > limit:
        upper = sorted(_greedy_hitting_set(sets, g.n))
        lower = max(1, math.ceil(math.log(g.n) / math.log(g.diameter + 1)))
        return MetricDimensionResult(
            lower=lower, upper=len(upper), landmarks=tuple(upper), optimal=False
        )
    solution, _ = _minimum_hitting_set(sets, g.n, budget)
    assert is_resolving(g, solution)
    return MetricDimensionResult(
        lower=len(solution), upper=len(solution), landmarks=solution, optimal=True
    )


def metric_dimension_bruteforce(
    g: IncidenceGraph, vertex_order=None
) -> MetricDimensionResult:
    """Baseline: increasing-size lexicographic subset enumeration over the
    given vertex order (identity by default).  The pruned solver must agree
    with this on every instance it can reach."""
    order = tuple(vertex_order) if vertex_order is not None else tuple(range(g.n))
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(order, size):
            if is_resolving(g, combo):
                witness = tuple(sorted(combo))
                return MetricDimensionResult(
                    lower=size, upper=size, landmarks=witness, optimal=True
                )
    raise AssertionError("the full vertex set always resolves")


def find_resolving_set(
    g: IncidenceGraph, max_size: int, budget: int | None = None
) -> tuple[int, ...] | None:
    """Complete search for a resolving set with at most max_size vertices.
    None certifies that none exists (so the metric dimension exceeds
    max_size); otherwise the smallest set within the cap is returned."""
    if max_size < 0:
        raise ValueError(f"max_size = {max_size} must be nonnegative")
    sets = _vertex_separator_sets(g)
    solution, _ = _minimum_hitting_set(sets, g.n, budget, max_size=max_size)
    if solution is not None:
        assert is_resolving(g, solution)
    return solution


# ---------------------------------------------------------------------------
# split resolving sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitResolvingSet:
    """points semi-resolve the blocks; blocks semi-resolve the points; the
    union resolves the whole incidence graph."""

    points: tuple[int, ...]
    blocks: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.points) + len(self.blocks)

    def graph_vertices(self, point_count: int) -> tuple[int, ...]:
        return tuple(self.points) + tuple(point_count + b for b in self.blocks)


def split_resolving(
    d: Design,
    method: str = "exact",
    s: int | None = None,
    seed: int = 0,
    max_retries: int = 100,
    budget: int | None = DEFAULT_NODE_BUDGET,
    limit: int = DEFAULT_EXACT_LIMIT,
) -> SplitResolvingSet:
    """Combine a semi-resolving block set for the design with a
    semi-resolving block set of its dual (a point set of the design),
    using the requested method per side, and verify that the union resolves
    the incidence graph.

    For method="random" with s unspecified, each side samples
    min(ceil(v*ln(v)/(k-lambda)), v) blocks; the point side's stream uses
    seed + 1.
    """
    if method not in ("random", "greedy", "exact"):
        raise ValueError(f"unknown method {method!r}")
    d_dual = dual(d)  # validates d
    _require_separable(separator_masks(pencil_table(d)))
    _require_separable(separator_masks(pencil_table(d_dual)))
    if method == "exact":
        s_blocks = min_semi_resolving(d, budget=budget, limit=limit)
        s_points = min_semi_resolving(d_dual, budget=budget, limit=limit)
    elif method == "greedy":
        s_blocks = greedy_semi_resolving(d)
        s_points = greedy_semi_resolving(d_dual)
    else:
        size = s if s is not None else clamped_sample_size(d)
        s_blocks = randomized_semi_resolving(
            d, s=size, seed=seed, max_retries=max_retries
        ).blocks
        s_points = randomized_semi_resolving(
            d_dual, s=size, seed=seed + 1, max_retries=max_retries
        ).blocks
    result = SplitResolvingSet(points=s_points, blocks=s_blocks)
    graph = incidence_graph(d)
    witness = resolving_witness(graph, result.graph_vertices(d.point_count))
    if witness is not None:
        raise AssertionError(
            f"split set fails to resolve the incidence graph at {witness}"
        )
    return result


# ---------------------------------------------------------------------------
# witness files: `RS <role>` header, then one line of indices.
#
# Roles and index spaces:
#   semi-points  block indices (a block set separating the points)
#   semi-blocks  point indices (a point set separating the blocks)
#   split        incidence-graph vertex indices (points 0..v-1, blocks v..2v-1)
#   full         incidence-graph vertex indices
# ---------------------------------------------------------------------------

WITNESS_ROLES = ("semi-points", "semi-blocks", "split", "full")


def witness_to_text(role: str, indices) -> str:
    if role not in WITNESS_ROLES:
        raise ValueError(f"unknown witness role {role!r}")
    return f"RS {role}\n" + " ".join(str(i) for i in sorted(indices)) + "\n"


def witness_from_text(text: str) -> tuple[str, tuple[int, ...]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty witness file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "RS" or head[1] not in WITNESS_ROLES:
        raise ValueError(f"bad witness header: {lines[0]!r}")
    if len(lines) > 2:
        raise ValueError("witness file has trailing content")
    indices: tuple[int, ...] = ()
    if len(lines) == 2:
        try:
            indices = tuple(int(tok) for tok in lines[1].split())
        except ValueError:
            raise ValueError(f"bad witness index line: {lines[1]!r}") from None
    return head[1], indices


def verify_witness(d: Design, role: str, indices) -> tuple[bool, str]:
    """Recheck a witness by both the symmetric-difference route and the
    distance route where applicable.  Returns (ok, detail)."""
    graph = incidence_graph(d)
    v = d.point_count

    def check_semi(design, blocks, landmark_vertices, side_vertices):
        w_mask = semi_resolving_witness(design, blocks)
        w_dist = side_resolving_witness(graph, landmark_vertices, side_vertices)
        if (w_mask is None) != (w_dist is None):
            return False, (
                f"characterizations disagree: bitset route says "
                f"{w_mask}, distance route says {w_dist}"
            )
        if w_mask is not None:
            return False, f"pair {w_mask} is not separated"
        return True, "separates all pairs by both routes"

    if role == "semi-points":
        if any(not 0 <= b < len(d.blocks) for b in indices):
            return False, "block index out of range"
        return check_semi(d, indices, [v + b for b in indices], range(v))
    if role == "semi-blocks":
        if any(not 0 <= x < v for x in indices):
            return False, "point index out of range"
        return check_semi(dual(d), indices, list(indices), range(v, graph.n))
    if role in ("split", "full"):
        if any(not 0 <= u < graph.n for u in indices):
            return False, "vertex index out of range"
        if role == "split":
            points = [u for u in indices if u < v]
            blocks = [u - v for u in indices if u >= v]
            ok_b, detail_b = check_semi(d, blocks, [v + b for b in blocks], range(v))
            if not ok_b:
                return False, f"block side: {detail_b}"
            ok_p, detail_p = check_semi(
                dual(d), points, list(points), range(v, graph.n)
            )
            if not ok_p:
                return False, f"point side: {detail_p}"
        w = resolving_witness(graph, indices)
        if w is not None:
            return False, f"vertices {w} have equal distance vectors"
        return True, "resolves the incidence graph"
    raise ValueError(f"unknown witness role {role!r}")

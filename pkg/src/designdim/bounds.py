"""Exact expectation and inequality calculations for random block samples.

For a design in which every point pair's pencil symmetric difference has
size m, a uniform random s-subset of the v blocks misses a given pair's
separator with probability C(v-m, s) / C(v, s), so the expected number of
unresolved pairs is

    E = C(v,2) * C(v-m, s) / C(v, s),

an exact rational.  E < 1 certifies that a semi-resolving set of size s
exists.  The certificate is checked here link by link:

    C(v,2) < v^2/2 < exp(m/v)^s < (1 + m/v + (m/v)^2)^s
           < prod_{i<s} (1 + m/(v-m-i)) = C(v,s) / C(v-m,s)

with exact rational arithmetic wherever possible and 50-digit decimal
arithmetic where exp appears.  For symmetric nets the separator size is
2k for same-class pairs and 2(k-lambda) otherwise, giving an exact
two-term expectation below the single-term bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb

from .designs import Design, SymmetricDesign, projective_plane
from .fields import prime_power
from .resolve import (
    pencil_table,
    sample_without_replacement,
    separator_masks,
    trial_rng,
)

DECIMAL_PRECISION = 50  # digits; >= 80 effective bits with margin to spare
MARGINAL_SLACK = 1e-9


def expected_unresolved(v: int, m: int, s: int) -> Fraction:
    """Exact C(v,2) * C(v-m, s) / C(v, s); zero whenever s > v - m."""
    if not 0 <= s <= v:
        raise ValueError(f"s = {s} outside 0..{v}")
    if not 0 <= m <= v:
        raise ValueError(f"m = {m} outside 0..{v}")
    return Fraction(comb(v, 2) * comb(v - m, s), comb(v, s))


def expected_unresolved_std(
    g: int, k: int, lam: int, s: int
) -> tuple[Fraction, Fraction]:
    """(exact, upper) expected unresolved pair counts for a symmetric net:
    same-class pairs have separator size 2k, cross-class pairs 2(k-lambda);
    the upper bound applies the larger failure probability to every pair."""
    if g < 2 or lam < 1 or k != lam * g:
        raise ValueError(
            f"invalid symmetric-net parameters (need k = lambda*g, g >= 2, "
            f"lambda >= 1): g={g}, k={k}, lambda={lam}"
        )
    v = lam * g * g
    if not 0 <= s <= v:
        raise ValueError(f"s = {s} outside 0..{v}")
    total = comb(v, s)
    same = k * comb(g, 2)
    cross = comb(v, 2) - same
    exact = Fraction(
        same * comb(v - 2 * k, s) + cross * comb(v - 2 * (k - lam), s), total
    )
    upper = Fraction(comb(v, 2) * comb(v - 2 * (k - lam), s), total)
    assert exact <= upper
    return exact, upper


def design_expected_unresolved(d: Design, s: int) -> Fraction:
    """Exact expected unresolved pair count for a concrete design."""
    if isinstance(d, SymmetricDesign):
        return expected_unresolved(d.v, 2 * (d.k - d.lam), s)
    return expected_unresolved_std(d.g, d.k, d.lam, s)[0]


# ---------------------------------------------------------------------------
# the inequality chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainLink:
    name: str
    lhs: str
    rhs: str
    holds: bool
    exact: bool
    margin: float  # relative gap (rhs - lhs) / max(lhs, rhs); 0.0 for equalities
    marginal: bool  # inexact link holding with margin <= MARGINAL_SLACK


@dataclass(frozen=True)
class ChainReport:
    v: int
    m: int
    s: int
    skipped: bool  # s > v - m: every sample hits every separator, E = 0
    expected: Fraction
    links: tuple[ChainLink, ...]
    equivalence_holds: bool | None

    @property
    def ok(self) -> bool:
        return not self.skipped and all(link.holds for link in self.links)


def _dec(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def _fmt(x: Decimal) -> str:
    return format(x, ".12E")


def _exact_link(name: str, lhs: Fraction, rhs: Fraction) -> ChainLink:
    holds = lhs < rhs
    margin = float((rhs - lhs) / max(lhs, rhs)) if max(lhs, rhs) > 0 else 0.0
    return ChainLink(
        name=name,
        lhs=_fmt(_dec(lhs)),
        rhs=_fmt(_dec(rhs)),
        holds=holds,
        exact=True,
        margin=margin,
        marginal=False,
    )


def _decimal_link(name: str, lhs: Decimal, rhs: Decimal) -> ChainLink:
    holds = lhs < rhs
    denom = max(abs(lhs), abs(rhs))
    margin = float((rhs - lhs) / denom) if denom else 0.0
    return ChainLink(
        name=name,
        lhs=_fmt(lhs),
        rhs=_fmt(rhs),
        holds=holds,
        exact=False,
        margin=margin,
        marginal=holds and margin <= MARGINAL_SLACK,
    )


def _equality_link(name: str, lhs: Fraction, rhs: Fraction) -> ChainLink:
    return ChainLink(
        name=name,
        lhs=_fmt(_dec(lhs)),
        rhs=_fmt(_dec(rhs)),
        holds=lhs == rhs,
        exact=True,
        margin=0.0,
        marginal=False,
    )


def inequality_chain(v: int, m: int, s: int | None = None) -> ChainReport:
    """Evaluate every link of the existence certificate at sample size
    s = ceil(2*v*ln(v)/m) (or as given).  The telescoping product is compared
    with the binomial ratio as an exact equality; exp links get 50-digit
    decimals and must clear a 1e-9 relative slack to avoid the marginal flag."""
    if v < 2:
        raise ValueError(f"v = {v} must be at least 2")
    if not 0 < m < v:
        raise ValueError(f"need 0 < m < v, got m = {m}, v = {v}")
    if s is None:
        s = math.ceil(2 * v * math.log(v) / m)
    expected = expected_unresolved(v, m, s)
    if s > v - m:
        return ChainReport(
            v=v, m=m, s=s, skipped=True, expected=expected, links=(),
            equivalence_holds=None,
        )
    with localcontext() as ctx:
        ctx.prec = DECIMAL_PRECISION
        pairs = Fraction(comb(v, 2))
        half_square = Fraction(v * v, 2)
        exp_power = ((Decimal(m) / Decimal(v)).exp()) ** s
        quad_power = Fraction(v * v + m * v + m * m, v * v) ** s
        prod_num = prod_den = 1
        for i in range(s):
            prod_num *= v - i
            prod_den *= v - m - i
        product = Fraction(prod_num, prod_den)
        ratio = Fraction(comb(v, s), comb(v - m, s))
        links = (
            _exact_link("C(v,2) < v^2/2", pairs, half_square),
            _decimal_link("v^2/2 < exp(m/v)^s", _dec(half_square), exp_power),
            _decimal_link(
                "exp(m/v)^s < (1+m/v+(m/v)^2)^s", exp_power, _dec(quad_power)
            ),
            _exact_link(
                "(1+m/v+(m/v)^2)^s < prod(1+m/(v-m-i))", quad_power, product
            ),
            _equality_link("prod(1+m/(v-m-i)) == C(v,s)/C(v-m,s)", product, ratio),
        )
        # 2*ln(v) - ln(2) < m*s/v must agree with the v^2/2-vs-exp link: both
        # state the same inequality, one on the log scale.
        log_side = 2 * Decimal(v).ln() - Decimal(2).ln() < Decimal(m * s) / Decimal(v)
        equivalence = log_side == links[1].holds
    return ChainReport(
        v=v, m=m, s=s, skipped=False, expected=expected, links=links,
        equivalence_holds=equivalence,
    )


# ---------------------------------------------------------------------------
# order bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderBoundsReport:
    v: int
    k: int
    lam: int
    q: int
    lower: int  # 4q - 1
    upper: int  # q^2 + q + 1
    lower_holds: bool
    upper_holds: bool
    exp_bound: float  # e^q
    exp_holds: bool  # v < e^q
    sqrt_form_holds: bool  # q^2 + q + 1 >= v

    @property
    def ok(self) -> bool:
        return self.lower_holds and self.upper_holds


def order_bounds_check(v: int, k: int, lam: int) -> OrderBoundsReport:
    """Evaluate 4q-1 <= v <= q^2+q+1 for q = k - lambda >= 2, plus the
    consequences v < e^q and q^2+q+1 >= v."""
    q = k - lam
    if q < 2:
        raise ValueError(f"order q = k - lambda = {q} must be at least 2")
    lower, upper = 4 * q - 1, q * q + q + 1
    exp_bound = math.exp(q)
    return OrderBoundsReport(
        v=v,
        k=k,
        lam=lam,
        q=q,
        lower=lower,
        upper=upper,
        lower_holds=lower <= v,
        upper_holds=v <= upper,
        exp_bound=exp_bound,
        exp_holds=v < exp_bound,
        sqrt_form_holds=upper >= v,
    )


# ---------------------------------------------------------------------------
# empirical success rates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonteCarloResult:
    successes: int
    trials: int
    rate: float
    stderr: float
    markov_lower: float  # max(0, 1 - E): any trial succeeds at least this often
    sample_size: int
    seed: int


def monte_carlo_success(
    d: Design, s: int, trials: int = 500, seed: int = 0
) -> MonteCarloResult:
    """Fraction of seeded uniform s-subsets of blocks that semi-resolve the
    points, alongside the exact-expectation lower bound on the rate."""
    if trials < 1:
        raise ValueError(f"trials = {trials} must be positive")
    v = d.v
    if not 0 <= s <= v:
        raise ValueError(f"s = {s} outside 0..{v}")
    separators = separator_masks(pencil_table(d))
    successes = 0
    for trial in range(1, trials + 1):
        rng = trial_rng(seed, trial)
        smask = 0
        for b in sample_without_replacement(v, s, rng):
            smask |= 1 << b
        if all(sep & smask for sep in separators):
            successes += 1
    rate = successes / trials
    stderr = math.sqrt(rate * (1.0 - rate) / trials)
    markov = max(0.0, float(1 - design_expected_unresolved(d, s)))
    return MonteCarloResult(
        successes=successes,
        trials=trials,
        rate=rate,
        stderr=stderr,
        markov_lower=markov,
        sample_size=s,
        seed=seed,
    )


def exhaustive_success_rate(d: Design, s: int) -> Fraction:
    """Exact fraction of all s-subsets of blocks that semi-resolve the
    points, by full enumeration."""
    v = d.v
    if not 0 <= s <= v:
        raise ValueError(f"s = {s} outside 0..{v}")
    separators = separator_masks(pencil_table(d))
    good = 0
    for combo in itertools.combinations(range(v), s):
        smask = 0
        for b in combo:
            smask |= 1 << b
        if all(sep & smask for sep in separators):
            good += 1
    return Fraction(good, comb(v, s))


def exhaustive_expected_unresolved(d: Design, s: int) -> Fraction:
    """Exact average unresolved-pair count over all s-subsets of blocks, by
    full enumeration.  The independent oracle for the closed forms."""
    v = d.v
    if not 0 <= s <= v:
        raise ValueError(f"s = {s} outside 0..{v}")
    separators = separator_masks(pencil_table(d))
    total = 0
    for combo in itertools.combinations(range(v), s):
        smask = 0
        for b in combo:
            smask |= 1 << b
        total += sum(1 for sep in separators if not sep & smask)
    return Fraction(total, comb(v, s))


# ---------------------------------------------------------------------------
# parameter sweeps (CSV rows for the command-line frontend)
# ---------------------------------------------------------------------------

SWEEP_COLUMNS = (
    "v", "k", "lambda", "g", "s",
    "E_exact_num", "E_exact_den", "E_float",
    "chain_ok", "mc_rate", "mc_trials", "seed",
)


def projective_plane_sweep(qmax: int, mc_trials: int = 0, seed: int = 0):
    """One row per prime power q <= qmax with projective-plane parameters
    (q^2+q+1, q+1, 1), sorted by q."""
    rows = []
    for q in range(2, qmax + 1):
        if prime_power(q) is None:
            continue
        v, k, lam = q * q + q + 1, q + 1, 1
        m = 2 * (k - lam)
        s = math.ceil(v * math.log(v) / (k - lam))
        expected = expected_unresolved(v, m, s)
        report = inequality_chain(v, m, s)
        chain_ok = "skipped" if report.skipped else str(report.ok).lower()
        mc_rate = ""
        if mc_trials:
            mc = monte_carlo_success(projective_plane(q), s, trials=mc_trials, seed=seed)
            mc_rate = f"{mc.rate:.6f}"
        rows.append({
            "v": v, "k": k, "lambda": lam, "g": "", "s": s,
            "E_exact_num": expected.numerator,
            "E_exact_den": expected.denominator,
            "E_float": f"{float(expected):.6e}",
            "chain_ok": chain_ok,
            "mc_rate": mc_rate,
            "mc_trials": mc_trials or "",
            "seed": seed,
        })
    return rows

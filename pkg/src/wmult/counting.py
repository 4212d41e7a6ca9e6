"""Exact counting of invariant monomials below a weighted-order cutoff.

The counting substrate is a nonnegative integer orthant: exponent vectors
b in Z_{>=0}^n subject to one modular invariance constraint
sum(g_i * b_i) = 0 (mod r) and graded by the weighted degree
sum(w_i * b_i) with positive rational weights w_i.  ``count_below``
evaluates the Hilbert-type counting function

    N(h) = #{ b : sum(g_i * b_i) = 0 (mod r), sum(w_i * b_i) < h }

with a strict cutoff.  For integer h on a suitable arithmetic progression
N is a quasi-polynomial of degree n; its normalized leading coefficient
(the weighted multiplicity of the corresponding singularity model) is
recovered exactly by ``leading_coefficient`` from finite differences, and
independently by the density-times-volume formula of ``wmult_analytic``.

``BasisFamily`` extends the same counting to monomial bases of
hypersurface normal forms: a fixed prefix monomial times free variables,
with inclusion-exclusion over families handled by ``count_families``.

All arithmetic is exact (Python integers and ``fractions.Fraction``).
Counting runs on a residue-indexed table over integer-scaled weights, so
the cost grows with the scaled cutoff rather than with the number of
counted lattice points.  Every function here is pure and therefore safe
for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import InvalidConeError, InvalidFamilyError, StabilizationError

RatLike = Fraction | int


def _rat(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class CongruenceCone:
    """Nonnegative orthant with one congruence constraint and positive weights.

    ``residues`` are the per-variable residues g_i of the group action
    (reduced mod r on construction) and ``weights`` the per-variable orders
    of vanishing along the exceptional divisor.  All weights must be
    positive, which makes every cutoff count finite.
    """

    r: int
    residues: tuple[int, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise InvalidConeError(f"group order must be >= 1, got {self.r}")
        residues = tuple(int(g) % self.r for g in self.residues)
        weights = tuple(_rat(w) for w in self.weights)
        if len(residues) != len(weights):
            raise InvalidConeError(
                f"{len(residues)} residues vs {len(weights)} weights"
            )
        if any(w <= 0 for w in weights):
            raise InvalidConeError(f"weights must be positive, got {weights}")
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class BasisFamily:
    """One family of a normal-form monomial basis: prefix * free variables.

    The family stands for the monomials  (fixed prefix) * prod x_i^{b_i}
    over free exponents b_i >= 0, subject to the congruence

        residue_offset + sum(residues[i] * b_i) = 0  (mod r),

    graded by  weight_offset + sum(weights[i] * b_i).  ``prefix`` records
    the fixed exponents for display; it carries no arithmetic content
    beyond the two offsets.
    """

    r: int
    residues: tuple[int, ...]
    weights: tuple[Fraction, ...]
    residue_offset: int = 0
    weight_offset: Fraction = Fraction(0)
    prefix: tuple[int, ...] = ()
    label: str = ""

    def __post_init__(self) -> None:
        if self.r < 1:
            raise InvalidFamilyError(f"group order must be >= 1, got {self.r}")
        residues = tuple(int(g) % self.r for g in self.residues)
        weights = tuple(_rat(w) for w in self.weights)
        if len(residues) != len(weights):
            raise InvalidFamilyError(
                f"{len(residues)} residues vs {len(weights)} weights"
            )
        if any(w <= 0 for w in weights):
            raise InvalidFamilyError(f"free weights must be positive, got {weights}")
        offset = _rat(self.weight_offset)
        if offset < 0:
            raise InvalidFamilyError(f"weight offset must be >= 0, got {offset}")
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "residue_offset", int(self.residue_offset) % self.r)
        object.__setattr__(self, "weight_offset", offset)
        object.__setattr__(self, "prefix", tuple(int(p) for p in self.prefix))

    @property
    def free_dim(self) -> int:
        return len(self.weights)

    def count_below(self, h: RatLike) -> int:
        return self.count_below_many([h])[0]

    def count_below_many(self, cutoffs: Sequence[RatLike]) -> list[int]:
        target = (-self.residue_offset) % self.r
        return _counts_below(
            self.r, self.residues, self.weights, cutoffs,
            target=target, offset=self.weight_offset,
        )


# ---------------------------------------------------------------------------
# core table machinery


def _exact_sum_table(r: int, coeffs: Sequence[int], residues: Sequence[int],
                     bound: int) -> list[int]:
    """Table f with f[s*r + t] = #{b >= 0 : sum c_i b_i = s, sum g_i b_i = t (mod r)}.

    Unbounded-knapsack recurrence; processing s in increasing order makes each
    item usable arbitrarily often while the residue index rotates along.
    """
    f = [0] * ((bound + 1) * r)
    f[0] = 1
    for c, g in zip(coeffs, residues):
        if c > bound:
            continue
        if r == 1:
            for s in range(c, bound + 1):
                f[s] += f[s - c]
            continue
        rot = [(t - g) % r for t in range(r)]
        step = c * r
        for dst in range(step, (bound + 1) * r, r):
            src = dst - step
            for t in range(r):
                v = f[src + rot[t]]
                if v:
                    f[dst + t] += v
    return f


def _strict_bound(h: Fraction, offset: Fraction, scale: int) -> int:
    """Largest integer s with s < (h - offset) * scale, i.e. the strict cutoff."""
    H = (h - offset) * scale
    if H.denominator == 1:
        return H.numerator - 1
    return H.numerator // H.denominator


def _weight_scale(weights: Sequence[Fraction], offset: Fraction = Fraction(0)) -> int:
    dens = [w.denominator for w in weights] + [offset.denominator]
    return math.lcm(*dens)


def _counts_below(r: int, residues: Sequence[int], weights: Sequence[Fraction],
                  cutoffs: Sequence[RatLike], target: int = 0,
                  offset: Fraction = Fraction(0)) -> list[int]:
    cuts = [_rat(h) for h in cutoffs]
    if not weights:
        return [1 if (target % r == 0 and h > offset) else 0 for h in cuts]
    scale = _weight_scale(weights, offset)
    bounds = [_strict_bound(h, offset, scale) for h in cuts]
    bmax = max(bounds)
    if bmax < 0:
        return [0] * len(bounds)
    coeffs = [(w * scale).numerator for w in weights]
    f = _exact_sum_table(r, coeffs, residues, bmax)
    prefix = [0] * (bmax + 1)
    acc = 0
    for s in range(bmax + 1):
        acc += f[s * r + target]
        prefix[s] = acc
    return [prefix[b] if b >= 0 else 0 for b in bounds]


# ---------------------------------------------------------------------------
# cone operations


def count_below(cone: CongruenceCone, h: RatLike) -> int:
    """Number of invariant exponent vectors with weighted degree strictly below h."""
    return count_below_many(cone, [h])[0]


def count_below_many(cone: CongruenceCone, cutoffs: Sequence[RatLike]) -> list[int]:
    """``count_below`` at several cutoffs sharing a single counting table."""
    return _counts_below(cone.r, cone.residues, cone.weights, cutoffs)


def graded_slice(cone: CongruenceCone, h: RatLike) -> int:
    """Number of invariant exponent vectors with weighted degree exactly h.

    Equals count_below(h + eps) - count_below(h) for any eps smaller than the
    gap to the next attainable weight.
    """
    h = _rat(h)
    if h < 0:
        return 0
    scale = _weight_scale(cone.weights)
    level = h * scale
    if level.denominator != 1:
        return 0
    s = level.numerator
    coeffs = [(w * scale).numerator for w in cone.weights]
    f = _exact_sum_table(cone.r, coeffs, cone.residues, s)
    return f[s * cone.r]


def iter_points(cone: CongruenceCone, h: RatLike) -> Iterator[tuple[int, ...]]:
    """Yield the counted exponent vectors by bounded depth-first enumeration.

    Reference algorithm: visits every lattice point below the cutoff, so use
    only at desk scale (demos, spot checks).
    """
    h = _rat(h)
    n = cone.n
    point = [0] * n

    def rec(i: int, remaining: Fraction, residue: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if residue % cone.r == 0:
                yield tuple(point)
            return
        w = cone.weights[i]
        # largest b with b*w strictly below the remaining budget
        q = remaining / w
        bmax = q.numerator // q.denominator
        if q.denominator == 1:
            bmax -= 1
        for b in range(bmax + 1):
            point[i] = b
            yield from rec(i + 1, remaining - b * w, residue + b * cone.residues[i])
        point[i] = 0

    yield from rec(0, h, 0)


def count_families(families: Sequence[BasisFamily], h: RatLike,
                   overlap: BasisFamily | None = None) -> int:
    """Inclusion-exclusion count of a multi-family basis below the cutoff.

    ``overlap``, when present, must describe exactly the monomials counted by
    more than one family; its count is subtracted once.
    """
    return count_families_many(families, [h], overlap)[0]


def count_families_many(families: Sequence[BasisFamily], cutoffs: Sequence[RatLike],
                        overlap: BasisFamily | None = None) -> list[int]:
    totals = [0] * len(cutoffs)
    for fam in families:
        for i, c in enumerate(fam.count_below_many(cutoffs)):
            totals[i] += c
    if overlap is not None:
        for i, c in enumerate(overlap.count_below_many(cutoffs)):
            totals[i] -= c
    return totals


# ---------------------------------------------------------------------------
# leading-coefficient extraction


def leading_coefficient(counter: Callable[[int], int], degree: int,
                        period: int, start: int) -> Fraction:
    """Normalized leading coefficient of a quasi-polynomial counting function.

    For N(h) = m * h^degree / degree! + lower order (quasi-period dividing
    ``period``), the degree-th forward difference with step ``period`` equals
    m * period^degree, so the returned value is m.  The difference is
    recomputed one period later and must agree exactly; otherwise a
    StabilizationError is raised (increase ``start`` or ``period``).
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if period < 1:
        raise ValueError(f"period must be >= 1, got {period}")
    vals = [counter(start + i * period) for i in range(degree + 2)]
    binom = [math.comb(degree, i) for i in range(degree + 1)]

    def diff(window: Sequence[int]) -> int:
        return sum((-1) ** (degree - i) * binom[i] * window[i]
                   for i in range(degree + 1))

    d0 = diff(vals[: degree + 1])
    d1 = diff(vals[1:])
    if d0 != d1:
        raise StabilizationError(
            f"{degree}-th difference not stabilized at start={start}, "
            f"period={period} ({d0} vs {d1}); increase h0 or P"
        )
    return Fraction(d0, period ** degree)


def default_period(cone: CongruenceCone) -> int:
    """Safe finite-difference step: r times the lcm of all weight numerators
    and denominators.  Always a multiple of the quasi-period of the counting
    function on integer cutoffs."""
    parts = [x for w in cone.weights for x in (w.numerator, w.denominator)]
    return cone.r * math.lcm(*parts)


def default_period_families(families: Sequence[BasisFamily],
                            overlap: BasisFamily | None = None) -> int:
    pool = list(families) + ([overlap] if overlap is not None else [])
    parts = [x for fam in pool for w in fam.weights
             for x in (w.numerator, w.denominator)]
    r = math.lcm(*(fam.r for fam in pool))
    return r * math.lcm(*parts)


def default_start(period: int) -> int:
    """Default window start: past boundary effects for desk-scale group orders."""
    return 10 * period


def wmult_extracted(cone: CongruenceCone, period: int | None = None,
                    start: int | None = None) -> Fraction:
    """Weighted multiplicity of the cone by finite-difference extraction."""
    P = default_period(cone) if period is None else period
    h0 = default_start(P) if start is None else start
    cuts = [h0 + i * P for i in range(cone.n + 2)]
    table = dict(zip(cuts, count_below_many(cone, cuts)))
    return leading_coefficient(table.__getitem__, cone.n, P, h0)


def wmult_extracted_families(families: Sequence[BasisFamily], dim: int,
                             overlap: BasisFamily | None = None,
                             period: int | None = None,
                             start: int | None = None) -> Fraction:
    """Weighted multiplicity of a multi-family basis of dimension ``dim``."""
    if not families:
        raise InvalidFamilyError("at least one family is required")
    P = default_period_families(families, overlap) if period is None else period
    h0 = default_start(P) if start is None else start
    cuts = [h0 + i * P for i in range(dim + 2)]
    table = dict(zip(cuts, count_families_many(families, cuts, overlap)))
    return leading_coefficient(table.__getitem__, dim, P, h0)


# ---------------------------------------------------------------------------
# analytic oracle


def _congruence_class_count(r: int, residues: Sequence[int], target: int) -> int:
    """#{ c in (Z/r)^n : sum residues[i] * c_i = target (mod r) } by convolution."""
    v = [0] * r
    v[0] = 1
    for g in residues:
        w = [0] * r
        for t in range(r):
            if v[t]:
                for c in range(r):
                    w[(t + g * c) % r] += v[t]
        v = w
    return v[target % r]


def wmult_analytic(cone: CongruenceCone) -> Fraction:
    """Independent leading-coefficient oracle: congruence-class density times
    the volume coefficient of the simplex {sum w_i x_i < 1}.

    Returns G / (r^n * prod(w_i)) with G the number of residue classes in
    (Z/r)^n satisfying the invariance constraint, by exact enumeration.
    """
    G = _congruence_class_count(cone.r, cone.residues, 0)
    value = Fraction(G, cone.r ** cone.n)
    for w in cone.weights:
        value /= w
    return value


def family_analytic(family: BasisFamily, dim: int) -> Fraction:
    """Density-times-volume contribution of one family at top dimension ``dim``.

    Families with fewer free variables than ``dim`` only affect lower-order
    terms and contribute zero.
    """
    if family.free_dim < dim:
        return Fraction(0)
    target = (-family.residue_offset) % family.r
    G = _congruence_class_count(family.r, family.residues, target)
    value = Fraction(G, family.r ** family.free_dim)
    for w in family.weights:
        value /= w
    return value


def families_analytic(families: Sequence[BasisFamily], dim: int,
                      overlap: BasisFamily | None = None) -> Fraction:
    """Analytic weighted multiplicity of a multi-family basis: per-family
    densities times volumes, minus the overlap contribution."""
    total = sum((family_analytic(f, dim) for f in families), Fraction(0))
    if overlap is not None:
        total -= family_analytic(overlap, dim)
    return total


# ---------------------------------------------------------------------------
# closed slice count for the smooth 3-space case


def smooth_slice_floor_sum(a: int, b: int, h: int) -> int:
    """Closed floor-sum count of {(s, j, k) >= 0 : s + a*j + b*k = h}.

    Organizes the solutions by the number of (y z)-pairs:  the slice of
    weight h splits into monomials x^s y^t (yz)^l and x^s (yz)^l z^u, the
    shared x^s (yz)^l term counted once.
    """
    if a < 1 or b < 1:
        raise ValueError("weights a, b must be positive integers")
    if h < 0:
        return 0
    total = 0
    for l in range(h // (a + b) + 1):
        rem = h - l * (a + b)
        total += rem // a + rem // b + 1
    return total

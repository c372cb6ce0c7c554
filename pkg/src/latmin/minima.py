"""Exact enumeration of lattice points in dilates of a body, successive
minima, and restricted successive minima.

Enumeration walks an axis-aligned integer box in lattice coordinates; the
per-coordinate bounds come from the support function of the body at the
dual basis of the lattice span.  Membership, gauges and minima are exact
rationals throughout.  Restricted minima terminate either under a proved
bound radius (when the forbidden collection matches one of the bound
evaluators' hypotheses) or by geometric doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _intmat as im
from . import kernel
from .body import Box, ConvexBody
from .errors import (
    BudgetExceededError,
    EmptyAdmissibleSetError,
    PackingConditionError,
    RankError,
    UnsupportedBodyError,
)
from .exactarith import format_rational, nth_root_enclosure
from .lattice import Lattice, ZRowSpan, union_covers

DEFAULT_BUDGET = 10**7

CERT_MINKOWSKI = "minkowski"
CERT_THM_LOWER = "theorem-1.1"
CERT_THM_FULL = "theorem-1.2"
CERT_COR_LOWER = "corollary-2.2"
CERT_COR_FULL = "corollary-3.5"
CERT_DOUBLING = "doubling"


@dataclass(frozen=True)
class MinimaResult:
    """Exact minima with witnesses and the enumeration termination radius."""

    values: tuple
    witnesses: tuple
    certificate_radius: Fraction
    certificate_kind: str

    def to_dict(self) -> dict:
        return {
            "values": [format_rational(v) for v in self.values],
            "witnesses": [[format_rational(x) for x in w] for w in self.witnesses],
            "certificate": {
                "kind": self.certificate_kind,
                "radius": format_rational(self.certificate_radius),
            },
        }


class ForbiddenCollection:
    """Sublattices whose points are excluded from the admissible set."""

    def __init__(self, ambient: Lattice, sublattices):
        subs = list(sublattices)
        if not subs:
            raise ValueError("need at least one forbidden sublattice")
        for sub in subs:
            if sub.rank < 1:
                raise ValueError("forbidden sublattices must have rank >= 1")
            if not ambient.contains_lattice(sub):
                # coeff_matrix raises the structured error with detail
                ambient.coeff_matrix(sub)
        self.ambient = ambient
        self.sublattices = tuple(subs)
        self._spans = [ZRowSpan(ambient.coeff_matrix(sub)) for sub in subs]
        ranks = {sub.rank for sub in subs}
        if ranks == {ambient.rank}:
            self.classification = "all-full-rank"
        elif all(r < ambient.rank for r in ranks):
            self.classification = "all-lower-rank"
        else:
            self.classification = "mixed"

    def admissible_coords(self, z) -> bool:
        return not any(span.contains(z) for span in self._spans)

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "sublattices": [sub.to_dict() for sub in self.sublattices],
        }


# ---------------------------------------------------------------------------
# enumeration core
# ---------------------------------------------------------------------------


def _scaled_basis(lat: Lattice):
    rows = [list(r) for r in lat.basis]
    scale = im.lcm_denominators(rows) if rows else 1
    return [[int(x * scale) for x in row] for row in rows], scale


def _constraint_system(body: ConvexBody, lat: Lattice, radius: Fraction):
    """Integer constraints |(G z)_j| <= t_j equivalent to gauge(z B) <= radius."""
    bint, scale = _scaled_basis(lat)
    r = lat.rank
    p, q = radius.numerator, radius.denominator
    g, t = [], []
    if isinstance(body, Box):
        for j, a in enumerate(body.halfwidths):
            g.append([bint[i][j] * q * a.denominator for i in range(r)])
            t.append(p * a.numerator * scale)
    else:
        for c in body.facets:
            cd = im.lcm_denominators([c])
            cint = [int(x * cd) for x in c]
            g.append(
                [q * sum(cint[j] * bint[i][j] for j in range(lat.ambient_dim)) for i in range(r)]
            )
            t.append(p * cd * scale)
    return g, t


def _coordinate_bounds(body: ConvexBody, lat: Lattice, radius: Fraction):
    bounds = []
    for d in lat.dual_in_span():
        m = math.floor(radius * body.support(d))
        bounds.append(m)
    return bounds


def _enumerate_coords(body, lat, radius, budget):
    """All nonzero z (lattice coordinates) with gauge(z B) <= radius."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if lat.rank == 0 or radius == 0:
        return []
    bounds = _coordinate_bounds(body, lat, radius)
    lo = [-m for m in bounds]
    hi = bounds
    size = kernel.box_size(lo, hi)
    if size > budget:
        raise BudgetExceededError(
            f"enumeration box has {size} points, budget is {budget}"
        )
    g, t = _constraint_system(body, lat, radius)
    return kernel.collect_passing(g, t, lo, hi)


def _count_coords(body, lat, radius, budget):
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if lat.rank == 0 or radius == 0:
        return 0
    bounds = _coordinate_bounds(body, lat, radius)
    lo = [-m for m in bounds]
    hi = bounds
    size = kernel.box_size(lo, hi)
    if size > budget:
        raise BudgetExceededError(
            f"enumeration box has {size} points, budget is {budget}"
        )
    g, t = _constraint_system(body, lat, radius)
    return kernel.count_passing(g, t, lo, hi)


def _to_vector(z, basis):
    return tuple(
        sum(Fraction(z[i]) * basis[i][j] for i in range(len(z)))
        for j in range(len(basis[0]))
    )


def point_sort_key(vector, gauge):
    """Deterministic extraction order: gauge, then componentwise absolute
    values, then a sign pattern preferring nonnegative entries."""
    return (
        gauge,
        tuple(abs(x) for x in vector),
        tuple(0 if x >= 0 else 1 for x in vector),
    )


def enumerate_points(
    body: ConvexBody, lat: Lattice, radius, budget: int = DEFAULT_BUDGET
):
    """Exactly the nonzero lattice points with gauge <= radius, with gauges.

    Sorted by ``point_sort_key``; the zero vector is never included.
    """
    radius = Fraction(radius)
    coords = _enumerate_coords(body, lat, radius, budget)
    basis = [list(r) for r in lat.basis]
    out = []
    for z in coords:
        x = _to_vector(z, basis)
        out.append((x, body.gauge(x)))
    out.sort(key=lambda pair: point_sort_key(pair[0], pair[1]))
    return out


# ---------------------------------------------------------------------------
# successive minima
# ---------------------------------------------------------------------------


def _greedy_minima(candidates, k):
    """First k gauge-sorted candidates that are linearly independent.

    candidates: iterable of (coords, vector, gauge) sorted by gauge key.
    Returns (values, witnesses) or None if fewer than k independent.
    """
    chosen_coords = []
    values, witnesses = [], []
    for z, x, gauge in candidates:
        if not chosen_coords:
            independent = any(z)
        else:
            stack = chosen_coords + [list(z)]
            independent = im.frac_rank(stack) == len(stack)
        if independent:
            chosen_coords.append(list(z))
            values.append(gauge)
            witnesses.append(x)
            if len(values) == k:
                return tuple(values), tuple(witnesses)
    return None


def _sorted_candidates(body, lat, radius, budget, admissible=None):
    basis = [list(r) for r in lat.basis]
    triples = []
    for z in _enumerate_coords(body, lat, radius, budget):
        if admissible is not None and not admissible(z):
            continue
        x = _to_vector(z, basis)
        triples.append((z, x, body.gauge(x)))
    triples.sort(key=lambda tr: point_sort_key(tr[1], tr[2]))
    return triples


def successive_minima(
    body: ConvexBody, lat: Lattice, k: int, budget: int = DEFAULT_BUDGET
) -> MinimaResult:
    """lambda_1 .. lambda_k with linearly independent witnesses, exact."""
    if not 1 <= k <= lat.rank:
        raise RankError(f"k must lie in [1, rank]; got k={k}, rank={lat.rank}")
    if body.dim != lat.ambient_dim:
        raise ValueError("body and lattice dimension mismatch")
    basis_gauges = sorted(body.gauge(b) for b in lat.basis)
    full_rank = lat.rank == lat.ambient_dim
    if full_rank:
        n = lat.ambient_dim
        ratio = (2**n) * lat.det() / body.volume()
        mink_hi = nth_root_enclosure(ratio, n).hi
        radius = min(mink_hi, basis_gauges[0])
        kind = CERT_MINKOWSKI
    else:
        radius = basis_gauges[k - 1]
        kind = CERT_DOUBLING
    cands = _sorted_candidates(body, lat, radius, budget)
    if full_rank and k > 1:
        lam1 = cands[0][2]
        radius = min(ratio / lam1 ** (n - 1), basis_gauges[k - 1])
        cands = _sorted_candidates(body, lat, radius, budget)
    got = _greedy_minima(cands, k)
    assert got is not None, "termination radius failed to contain the minima"
    values, witnesses = got
    return MinimaResult(values, witnesses, radius, kind)


def restricted_minima(
    body: ConvexBody,
    lat: Lattice,
    forbidden: ForbiddenCollection,
    k: int,
    budget: int = DEFAULT_BUDGET,
    method: str = "auto",
) -> MinimaResult:
    """Minima over lattice points avoiding every forbidden sublattice.

    Termination radius: the matching bound evaluator when the collection is
    purely lower-rank or purely full-rank (and the ambient lattice has full
    rank), otherwise geometric doubling.  Enumeration proceeds in doubling
    rungs under the certified cap, so typical instances stop far below it.
    """
    if forbidden.ambient != lat:
        raise ValueError("forbidden collection belongs to a different lattice")
    if not 1 <= k <= lat.rank:
        raise RankError(f"k must lie in [1, rank]; got k={k}, rank={lat.rank}")
    n = lat.ambient_dim
    # A union covers the lattice iff its full-rank members do; lower-rank
    # sublattices are too sparse to finish a cover.
    full_members = [s for s in forbidden.sublattices if s.rank == lat.rank]
    if (
        full_members
        and lat.rank == lat.ambient_dim
        and union_covers(lat, full_members)
    ):
        raise EmptyAdmissibleSetError(
            "the forbidden sublattices cover the whole lattice"
        )
    cert_radius = None
    kind = CERT_DOUBLING
    if method == "auto" and lat.rank == n and n >= 2:
        from . import bounds  # deferred: bounds uses this module's minima

        if forbidden.classification == "all-full-rank":
            if k == 1:
                bd = bounds.avoidance_bound_full_rank(body, lat, forbidden.sublattices)
                kind = CERT_THM_FULL
            else:
                bd = bounds.higher_minima_bound_full_rank(
                    body, lat, forbidden.sublattices, k
                )
                kind = CERT_COR_FULL
            cert_radius = bd.final.hi
        elif forbidden.classification == "all-lower-rank":
            if k == 1:
                bd = bounds.avoidance_bound_lower_rank(body, lat, forbidden.sublattices)
                kind = CERT_THM_LOWER
            else:
                bd = bounds.higher_minima_bound_lower_rank(
                    body, lat, forbidden.sublattices, k - 1
                )
                kind = CERT_COR_LOWER
            cert_radius = bd.final.hi
    lam1 = successive_minima(body, lat, 1, budget=budget).values[0]
    radius = lam1 if cert_radius is None else min(lam1, cert_radius)
    while True:
        cands = _sorted_candidates(
            body, lat, radius, budget, admissible=forbidden.admissible_coords
        )
        got = _greedy_minima(cands, k)
        if got is not None and got[0][k - 1] <= radius:
            values, witnesses = got
            final_radius = cert_radius if cert_radius is not None else radius
            return MinimaResult(values, witnesses, final_radius, kind)
        if cert_radius is not None and radius >= cert_radius:
            raise AssertionError(
                "certified radius failed to contain the restricted minima"
            )
        radius = 2 * radius
        if cert_radius is not None:
            radius = min(radius, cert_radius)


# ---------------------------------------------------------------------------
# counting and torus helpers
# ---------------------------------------------------------------------------


def count_points(
    body: ConvexBody, lat: Lattice, lam, budget: int = DEFAULT_BUDGET
) -> int:
    """|lam K  intersect  lattice|, origin included."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("dilation factor must be nonnegative")
    return _count_coords(body, lat, lam, budget) + 1


def distinct_cosets_in_body(
    body: ConvexBody,
    lat: Lattice,
    sub: Lattice,
    lam,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Number of cosets of lat modulo sub met by points of lam K."""
    lam = Fraction(lam)
    m = lat.coeff_matrix(sub)
    if len(m) != lat.rank:
        raise RankError("sublattice must have full rank in the lattice")
    _, d, v = im.snf(m)
    diag = [d[i][i] for i in range(len(m))]
    vrows = [list(row) for row in v]
    labels = {tuple(0 for _ in diag)}  # origin
    for z in _enumerate_coords(body, lat, lam, budget):
        zv = im.vec_mat(list(z), vrows)
        labels.add(tuple(int(zv[i]) % diag[i] for i in range(len(diag))))
    return len(labels)


def covering_radius_diagonal(body: ConvexBody, lat: Lattice) -> Fraction:
    """Exact covering radius for a box and a diagonal lattice."""
    if not isinstance(body, Box):
        raise UnsupportedBodyError("exact covering radius needs a box")
    if lat.rank != lat.ambient_dim:
        raise RankError("covering radius needs a full-rank lattice")
    diag = []
    for i, row in enumerate(lat.basis):
        if any(row[j] != 0 for j in range(lat.ambient_dim) if j != i):
            raise UnsupportedBodyError("exact covering radius needs a diagonal lattice")
        diag.append(row[i])
    return max(d / (2 * a) for d, a in zip(diag, body.halfwidths))


def torus_packing_volume(
    body: ConvexBody, sub: Lattice, lam, budget: int = DEFAULT_BUDGET
) -> Fraction:
    """Exact torus volume of (lam K)/sub while lam K packs: lam^n vol(K)."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("dilation factor must be nonnegative")
    if sub.rank != sub.ambient_dim or sub.ambient_dim != body.dim:
        raise RankError("torus volume needs a full-rank lattice of matching dimension")
    lam1 = successive_minima(body, sub, 1, budget=budget).values[0]
    if lam > lam1 / 2:
        raise PackingConditionError(
            f"dilate {lam} exceeds the packing threshold {lam1}/2; "
            "use the torus volume lower bound instead"
        )
    return lam**body.dim * body.volume()

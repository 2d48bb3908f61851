"""Canonical module generators, Cohen-Macaulay type and a-invariant.

Closed forms for the (n, i, j) family sit next to a brute-force oracle that
works for any transversal presentation: enumerate the interior points of
each degree slice of N A and keep those not reachable from a lower-degree
interior point by adding one generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from .cone_geometry import NormalVector, build_cone, polymatroid_halfspaces
from .errors import DomainError, InconclusiveBound
from .exact_linalg import integer_rank
from .presentation import Case, FamilyParams, Presentation, Vector, compositions, enumerate_base
from .semigroup import SliceTower, semigroup_contains  # noqa: F401  (re-exported)


def binomial(a: int, b: int) -> int:
    """C(a, b), taken as 0 whenever b < 0 or a < b."""
    if b < 0 or a < b or a < 0:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class CanonicalGenerators:
    generators: tuple[Vector, ...]
    degrees: dict

    def __len__(self) -> int:
        return len(self.generators)

    def as_set(self) -> frozenset:
        return frozenset(self.generators)

    @property
    def min_degree(self) -> int:
        return min(self.degrees.values())

    @property
    def max_degree(self) -> int:
        return max(self.degrees.values())


def _generators(vectors, n: int) -> CanonicalGenerators:
    gens = tuple(sorted(tuple(int(c) for c in v) for v in vectors))
    return CanonicalGenerators(gens, {g: sum(g) // n for g in gens})


@dataclass(frozen=True)
class TypeReport:
    type_value: int
    r: int
    a_invariant: int
    gorenstein: bool


def type_formula(params: FamilyParams) -> int:
    n, i, j = params.n, params.i, params.j
    if params.case is Case.LOW_SUM:
        return 1 + sum(
            binomial(n + i - j + t - 1, i - 1) * binomial(n - i + j - t - 1, n - i - 1)
            for t in range(1, n - i - j)
        )
    r = params.r
    return sum(
        binomial(r * (n - j) - t - 1, i - 1) * binomial(r * j + t - 1, n - i - 1)
        for t in range(1, r * (n - j) - i + 1)
    )


def _positive_compositions(total: int, parts: int):
    for c in compositions(total - parts, parts):
        yield tuple(v + 1 for v in c)


def enumerate_M(params: FamilyParams) -> CanonicalGenerators:
    """Closed-form minimal generators of the canonical module.

    LowSum: (1, ..., 1) together with every alpha >= 1 whose first i
    coordinates sum to n+i-j+t and last n-i to n-i+j-t, t = 1..n-i-j-1
    (all of degree 2). HighSum: alpha >= 1 with splits r(n-j)-t and rj+t,
    t = 1..r(n-j)-i (all of degree r).
    """
    n, i, j = params.n, params.i, params.j
    out = []
    if params.case is Case.LOW_SUM:
        out.append((1,) * n)
        splits = [(n + i - j + t, n - i + j - t) for t in range(1, n - i - j)]
    else:
        r = params.r
        splits = [(r * (n - j) - t, r * j + t) for t in range(1, r * (n - j) - i + 1)]
    for u, v in splits:
        for head in _positive_compositions(u, i):
            for tail in _positive_compositions(v, n - i):
                out.append(head + tail)
    return _generators(out, n)


def _block_reducible(n: int, i: int, j: int, s: int, c: int) -> bool:
    """Can some base vector b be removed from an interior w (degree s, head sum c)
    leaving an interior point? Needs b <= w - 1 with head sum c_b in range."""
    q1 = c - i                   # head slack above 1
    q2 = n * s - c - (n - i)     # tail slack above 1
    lo = max(0, n - q2, c - (n - j) * (s - 1) + 1)
    hi = min(n - j, q1)
    return lo <= hi


def block_generators(params: FamilyParams) -> CanonicalGenerators:
    """Minimal canonical generators from the cone and normality alone.

    The family cone is {x >= 0, head sum c <= (n-j)|x|/n} and N A is every
    point of it with n dividing |x|. An interior point of degree s has all
    coordinates >= 1 and c <= (n-j)s - 1; it is a minimal generator exactly
    when no base vector can be subtracted keeping it interior, and that
    depends only on (s, c). Independent of :func:`enumerate_M`.
    """
    n, i, j = params.n, params.i, params.j
    # beyond this degree either the tail slack reaches j or (s - 1)(n - j) > i
    top = max(params.r, (n - i + j - 2) // j) + 1
    out = []
    for s in range(1, top + 1):
        for c in range(i, min((n - j) * s - 1, n * s - (n - i)) + 1):
            if s > 1 and _block_reducible(n, i, j, s, c):
                continue
            for head in _positive_compositions(c, i):
                for tail in _positive_compositions(n * s - c, n - i):
                    out.append(head + tail)
    return _generators(out, n)


def block_type(params: FamilyParams) -> int:
    return len(block_generators(params))


def a_invariant(params: FamilyParams) -> int:
    return -1 if params.case is Case.LOW_SUM else -params.r


def is_gorenstein(params: FamilyParams) -> bool:
    return params.j == params.n - params.i - 1


def type_report(params: FamilyParams) -> TypeReport:
    return TypeReport(type_formula(params), params.r, a_invariant(params), is_gorenstein(params))


def degree_split(beta: Sequence[int], params: FamilyParams) -> tuple[int, int]:
    """(beta_1 + ... + beta_i, beta_{i+1} + ... + beta_n) with its degree identity checked."""
    n, i, j = params.n, params.i, params.j
    beta = tuple(beta)
    if len(beta) != n:
        raise DomainError(f"beta has length {len(beta)}, expected {n}")
    total = sum(beta)
    if total % n:
        raise DomainError(f"n = {n} does not divide |beta| = {total}")
    s = total // n
    head, tail = sum(beta[:i]), sum(beta[i:])
    pairing = build_cone(params).normals[0].pair(beta)
    if params.case is Case.LOW_SUM:
        # pairing = n(n - i - j - t), 1 <= t <= n - i - j - 1
        if pairing % n:
            raise DomainError(f"<beta, nu> = {pairing} is not a multiple of n")
        t = n - i - j - pairing // n
        if not 1 <= t <= n - i - j - 1:
            raise DomainError(f"<beta, nu> = {pairing} gives t = {t} outside [1, {n - i - j - 1}]")
        if s < 2:
            raise DomainError(f"degree s = {s} < 2")
        want = ((n - j) * (s - 1) + i + t, n + j * (s - 1) - i - t)
    else:
        if pairing % n or pairing <= 0:
            raise DomainError(f"<beta, nu> = {pairing} is not n*t with t >= 1")
        t = pairing // n
        want = ((n - j) * s - t, j * s + t)
    if (head, tail) != want:
        raise DomainError(f"split {(head, tail)} disagrees with {want}")
    return head, tail


# --- brute force -----------------------------------------------------------


def _interior_mask(points: np.ndarray, normals: Sequence[NormalVector]) -> np.ndarray:
    mat = np.array([a.coords for a in normals], dtype=np.int64)
    return np.all(points @ mat.T > 0, axis=1)


class CanonicalOracle:
    """Interior slices W_s = N A ∩ ri(R_+ A) ∩ {|x| = s d}, one presentation at a time.

    ``normals`` must be valid inequalities of the cone; by default the
    polymatroid rank inequalities are used. The cone must be full
    dimensional, otherwise strict positivity on the normals is not the
    relative interior.
    """

    def __init__(self, base, max_degree: int, normals: Optional[Sequence[NormalVector]] = None,
                 presentation: Optional[Presentation] = None):
        self.base = sorted({tuple(b) for b in base})
        self.n = len(self.base[0])
        if integer_rank(self.base) < self.n:
            raise DomainError("base vectors do not span R^n; the cone is not full dimensional")
        if normals is None:
            if presentation is None:
                raise ValueError("need either normals or the presentation")
            normals = polymatroid_halfspaces(presentation)
        self.normals = list(normals)
        self.tower = SliceTower(self.base, max_degree)
        self._interior: dict[int, np.ndarray] = {0: np.empty(0, dtype=np.int64)}

    def interior(self, s: int) -> np.ndarray:
        if s not in self._interior:
            codes = self.tower.slice(s)
            keep = _interior_mask(self.tower.decode(codes), self.normals)
            self._interior[s] = codes[keep]
        return self._interior[s]

    def first_interior_degree(self, cap: int) -> Optional[int]:
        for s in range(1, min(cap, self.tower.max_degree) + 1):
            if len(self.interior(s)):
                return s
        return None

    def new_generators(self, s: int) -> np.ndarray:
        """Interior points of degree s not of the form w + b with w interior of degree s-1."""
        reached = self.tower.sumset(self.interior(s - 1))
        return np.setdiff1d(self.interior(s), reached, assume_unique=True)


def _family_or_general_normals(pres: Presentation, normals):
    return normals if normals is not None else polymatroid_halfspaces(pres)


def bruteforce_a_invariant(pres: Presentation, scan_cap: Optional[int] = None) -> int:
    """-(least s with a nonzero interior point of degree s), scanning s <= n."""
    scan_cap = pres.n if scan_cap is None else scan_cap
    oracle = CanonicalOracle(enumerate_base(pres), scan_cap, presentation=pres)
    s = oracle.first_interior_degree(scan_cap)
    if s is None:
        raise InconclusiveBound(f"no interior point up to degree {scan_cap}", scan_cap)
    return -s


def canonical_generators_bruteforce(
    pres: Presentation,
    degree_cap: Optional[int] = None,
    normals: Optional[Sequence[NormalVector]] = None,
) -> CanonicalGenerators:
    """Minimal monomial generators of the canonical ideal, by enumeration.

    Default cap is n: a Cohen-Macaulay quotient that is not a polynomial
    ring has its canonical module generated in degrees at most n - 1. A
    generator at the cap itself means the search may be incomplete and
    raises :class:`InconclusiveBound`.
    """
    n = pres.n
    base = enumerate_base(pres)
    normals = _family_or_general_normals(pres, normals)
    scan = max(n, degree_cap or 0)
    oracle = CanonicalOracle(base, scan + 1, normals=normals)
    r = oracle.first_interior_degree(scan)
    if r is None:
        raise InconclusiveBound(f"no interior point up to degree {scan}", scan)
    cap = n if degree_cap is None else degree_cap
    if cap < r:
        raise InconclusiveBound(f"degree cap {cap} is below the first interior degree {r}", cap)
    if cap > oracle.tower.max_degree:
        oracle = CanonicalOracle(base, cap, normals=normals)

    found = []
    for s in range(1, cap + 1):
        new = oracle.new_generators(s)
        if len(new) and s == cap:
            raise InconclusiveBound(
                f"{len(new)} generators appear at the cap degree {cap}; rerun with a larger --degree-cap", cap
            )
        found.extend(map(tuple, oracle.tower.decode(new).tolist()))
    return _generators(found, n)

"""Hilbert function, Ehrhart counts, h-vector and the type conjecture harness."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .canonical_type import (
    CanonicalOracle,
    binomial,
    block_type,
    canonical_generators_bruteforce,
    type_formula,
)
from .cone_geometry import build_cone
from .errors import DomainError, InconclusiveBound
from .exact_linalg import feasible_point, hermite_basis, integer_rank, lattice_contains_many
from .presentation import FamilyParams, Presentation, build_family_presentation, enumerate_base, identify_family
from .semigroup import SliceTower


def hilbert_function(params: FamilyParams, t: int) -> int:
    """Closed-form Hilbert function of the family base ring in degree t."""
    if t < 0:
        raise DomainError(f"degree t must be >= 0, got {t}")
    n, i, j = params.n, params.i, params.j
    nt = n * t
    return sum(
        binomial(k + i - 1, k) * binomial(nt - k + n - i - 1, nt - k)
        for k in range((n - j) * t + 1)
    )


@lru_cache(maxsize=64)
def _compositions_array(total: int, parts: int) -> np.ndarray:
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for first in range(total + 1):
        rest = _compositions_array(total - first, parts - 1)
        head = np.full((len(rest), 1), first, dtype=np.int64)
        blocks.append(np.hstack([head, rest]))
    out = np.vstack(blocks)
    out.flags.writeable = False
    return out


def compositions_array(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer rows of length ``parts`` summing to ``total`` (read-only)."""
    if total < 0 or parts < 1:
        raise ValueError("need total >= 0 and parts >= 1")
    return _compositions_array(total, parts)


def base_lattice(base) -> "LatticeBasis":  # noqa: F821
    """HNF of Z A: differences of the generators plus one generator."""
    vecs = sorted(tuple(b) for b in base)
    first = vecs[0]
    gens = [first] + [tuple(a - b for a, b in zip(v, first)) for v in vecs[1:]]
    return hermite_basis(gens)


def _in_dilated_hull(base: Sequence[tuple], x: Sequence[int], t: int) -> bool:
    """x in t * conv(base), by exact rational feasibility of the convex weights."""
    n = len(x)
    a_eq = [[b[k] for b in base] for k in range(n)] + [[1] * len(base)]
    b_eq = list(x) + [t]
    return feasible_point(a_eq=a_eq, b_eq=b_eq, nvars=len(base), nonneg=True) is not None


def ehrhart_count(pres: Presentation, t: int, method: str = "auto") -> int:
    """|Z A ∩ t P| with P = conv(A).

    ``method="cone"`` decides t P membership by the facet normals of the
    family cone (only for family presentations); ``method="lp"`` by exact
    linear feasibility over the base vectors. ``"auto"`` picks ``cone`` for
    family presentations.
    """
    if t < 0:
        raise DomainError(f"dilation t must be >= 0, got {t}")
    if t == 0:
        return 1
    n = pres.n
    base = sorted(enumerate_base(pres))
    params = identify_family(pres)
    if method == "auto":
        method = "cone" if params is not None else "lp"

    pts = compositions_array(n * t, n)
    lattice = base_lattice(base)
    pts = pts[lattice_contains_many(lattice, pts)]
    if method == "cone":
        if params is None:
            raise DomainError("cone membership needs a family presentation")
        normals = np.array([a.coords for a in build_cone(params).normals], dtype=np.int64)
        return int(np.count_nonzero(np.all(pts @ normals.T >= 0, axis=1)))
    if method == "lp":
        return sum(1 for x in pts.tolist() if _in_dilated_hull(base, x, t))
    raise ValueError(f"unknown method {method!r}")


def monomial_counts(pres: Presentation, max_t: int) -> list[int]:
    """Number of distinct degree-t monomials of the base ring, t = 0..max_t."""
    tower = SliceTower(enumerate_base(pres), max(max_t, 1))
    return [len(tower.slice(t)) for t in range(max_t + 1)]


def numerator_from_values(values: Sequence[int], n: int) -> list[int]:
    """h_j = sum_{s=0}^{j} (-1)^s h(j - s) C(n, s) for j < len(values)."""
    return [sum((-1) ** s * values[j - s] * binomial(n, s) for s in range(j + 1)) for j in range(len(values))]


def difference_closed_form(values: Sequence[int], k: int, j: int) -> int:
    """Delta^k(h)_j = sum_{s=0}^{k} (-1)^s h(j - s) C(k, s), with h(negative) = 0."""
    return sum((-1) ** s * values[j - s] * binomial(k, s) for s in range(k + 1) if j - s >= 0)


def iterated_differences(values: Sequence[int], k: int) -> list[int]:
    """Apply the first-difference operator k times (h(-1) = 0)."""
    cur = list(values)
    for _ in range(k):
        cur = [cur[0]] + [cur[m] - cur[m - 1] for m in range(1, len(cur))]
    return cur


def h_vector(params: FamilyParams) -> list[int]:
    top = params.n - params.r
    values = [hilbert_function(params, t) for t in range(top + 1)]
    return numerator_from_values(values, params.n)


def _term(coef: int, power: int) -> str:
    mag = abs(coef)
    if power == 0:
        return str(mag)
    var = "t" if power == 1 else f"t^{power}"
    return var if mag == 1 else f"{mag}{var}"


def hilbert_series_render(numerator: Sequence[int], n: int) -> str:
    terms = [(c, p) for p, c in enumerate(numerator) if c != 0]
    denom = f"(1-t)^{n}"
    if not terms:
        return f"0/{denom}"
    if len(terms) == 1 and terms[0] == (1, 0):
        return f"1/{denom}"
    c0, p0 = terms[0]
    text = ("-" if c0 < 0 else "") + _term(c0, p0)
    for c, p in terms[1:]:
        text += (" - " if c < 0 else " + ") + _term(c, p)
    return f"({text})/{denom}"


@dataclass
class HilbertSummary:
    h_values: list[int]
    numerator: list[int]
    a_invariant: int
    type_value: int
    conjecture_holds: bool


def predicted_type(numerator: Sequence[int], n: int, r: int) -> int:
    """Type predicted from the h-vector: 1 + h_{n-2} - h_1 if r = 1, else h_{n-r}."""
    if r == 1:
        return 1 + numerator[n - 2] - numerator[1]
    return numerator[n - r]


def hilbert_summary(params: FamilyParams) -> HilbertSummary:
    n, r = params.n, params.r
    values = [hilbert_function(params, t) for t in range(n - r + 1)]
    numerator = numerator_from_values(values, n)
    typ = type_formula(params)
    return HilbertSummary(values, numerator, -r, typ, typ == predicted_type(numerator, n, r))


class Mode(enum.Enum):
    FAMILY_CLOSED_FORM = "family"
    FAMILY_EXACT = "family-exact"  # type from the block oracle, h-vector closed form
    BRUTE_FORCE = "bruteforce"


@dataclass
class ConjectureReport:
    instance: str
    n: int
    status: str  # "holds", "fails" or "skipped"
    r: Optional[int] = None
    type_value: Optional[int] = None
    predicted: Optional[int] = None
    numerator: list[int] = field(default_factory=list)
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def _instance_label(pres: Presentation, params: Optional[FamilyParams]) -> str:
    if params is not None:
        return f"family({params.n},{params.i},{params.j})"
    return "[" + " | ".join(",".join(map(str, s)) for s in pres.sets()) + "]"


def conjecture_check(
    pres: Presentation,
    mode: Mode = Mode.BRUTE_FORCE,
    max_n: int = 6,
    degree_cap: Optional[int] = None,
) -> ConjectureReport:
    """Compare the type with the value predicted from the h-vector.

    Brute-force mode needs nothing from the closed forms: r comes from the
    least interior degree of N A, the h-vector from monomial counts, the
    type from the canonical-generator search. Default degree cap there is
    n + 1: for a non-polynomial Cohen-Macaulay quotient the canonical
    module is generated in degrees at most n - 1, and at most n for a
    polynomial ring.
    """
    n = pres.n
    params = identify_family(pres)
    label = _instance_label(pres, params)

    if mode in (Mode.FAMILY_CLOSED_FORM, Mode.FAMILY_EXACT):
        if params is None:
            raise DomainError(f"{mode.value} mode needs a family presentation")
        r = params.r
        numerator = h_vector(params)
        if mode is Mode.FAMILY_EXACT:
            typ = block_type(params)
            label += "/exact"
        else:
            typ = type_formula(params)
        pred = predicted_type(numerator, n, r)
        return ConjectureReport(label, n, "holds" if typ == pred else "fails", r, typ, pred, numerator)

    if n > max_n:
        raise DomainError(f"brute force guard: n = {n} > {max_n}")
    if n < 3:
        return ConjectureReport(label, n, "skipped", detail="n < 3")
    base = enumerate_base(pres)
    if integer_rank(sorted(base)) < n:
        return ConjectureReport(label, n, "skipped", detail="Krull dimension < n")

    cap = n + 1 if degree_cap is None else degree_cap
    try:
        gens = canonical_generators_bruteforce(pres, degree_cap=cap)
    except InconclusiveBound as exc:
        return ConjectureReport(label, n, "skipped", detail=f"inconclusive: {exc}")
    r = gens.min_degree
    if r > n:
        return ConjectureReport(label, n, "skipped", r, len(gens), detail=f"r = {r} > n")
    counts = monomial_counts(pres, n)
    full = numerator_from_values(counts, n)
    numerator = full[: n - r + 1]
    if any(full[n - r + 1 :]) or numerator[-1] == 0:
        return ConjectureReport(label, n, "skipped", r, len(gens), None, full,
                                detail="numerator degree differs from n - r")
    pred = predicted_type(numerator, n, r)
    status = "holds" if len(gens) == pred else "fails"
    return ConjectureReport(label, n, status, r, len(gens), pred, numerator)


def family_conjecture_check(params: FamilyParams, mode: Mode = Mode.FAMILY_CLOSED_FORM, **kw) -> ConjectureReport:
    return conjecture_check(build_family_presentation(params), mode, **kw)

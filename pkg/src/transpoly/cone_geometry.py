"""Facets and extremal rays of the cone spanned by a family base set.

The cone of the (n, i, j) family is cut out by the n coordinate halfspaces
and one extra halfspace whose normal has ``-j`` on a cyclic window of ``i``
coordinates and ``n - j`` elsewhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ConsistencyError, ShapeError
from .exact_linalg import bareiss_determinant, feasible_point, integer_rank, nullspace, primitive
from .presentation import FamilyParams, Presentation, Vector, rotate_vector


@dataclass(frozen=True)
class NormalVector:
    """Inner normal of a facet.

    ``label`` is ``("nu", j, t, i)`` for the window normal and ``("axis", k)``
    for the k-th unit vector (1-indexed), or ``("rank", subset)`` for a
    polymatroid inequality of a general presentation.
    """

    coords: Vector
    label: tuple

    def pair(self, x: Sequence) -> int:
        return sum(a * b for a, b in zip(self.coords, x))

    def describe(self) -> str:
        kind = self.label[0]
        if kind == "nu":
            _, j, t, i = self.label
            return f"nu^{j}_{{sigma^{t}[{i}]}}"
        if kind == "axis":
            return f"e_{self.label[1]}"
        return "rank" + "{" + ",".join(map(str, self.label[1])) + "}"


@dataclass(frozen=True)
class ConeRepresentation:
    normals: tuple[NormalVector, ...]
    rays: tuple[Vector, ...]
    dimension: int

    def contains(self, x: Sequence) -> bool:
        return all(a.pair(x) >= 0 for a in self.normals)


def nu_normal(params: FamilyParams, t: int = 0) -> NormalVector:
    n, i, j = params.n, params.i, params.j
    if not 0 <= t <= n - 1:
        raise ValueError(f"shift must satisfy 0 <= t <= n-1, got {t}")
    window = {(t + k) % n for k in range(i)}
    coords = tuple(-j if k in window else n - j for k in range(n))
    return NormalVector(coords, ("nu", j, t, i))


def axis_normal(n: int, k: int) -> NormalVector:
    return NormalVector(tuple(int(c == k - 1) for c in range(n)), ("axis", k))


def build_cone(params: FamilyParams, t: int = 0) -> ConeRepresentation:
    """Closed-form facet normals and extremal rays.

    ``t > 0`` gives the cone of the rotated presentation: the window normal
    moves to ``sigma^t[i]`` and every ray is rotated.
    """
    n, i, j = params.n, params.i, params.j
    normals = (nu_normal(params, t),) + tuple(axis_normal(n, k) for k in range(1, n + 1))
    rays: list[Vector] = []
    for k in range(i, n):
        v = [0] * n
        v[k] = n
        rays.append(tuple(v))
    for r in range(i):
        for s in range(i, n):
            v = [0] * n
            v[r] = n - j
            v[s] = j
            rays.append(tuple(v))
    rays = [rotate_vector(v, t) for v in rays]
    return ConeRepresentation(normals, tuple(sorted(rays)), n)


def extremal_rays_from_normals(normals: Sequence[NormalVector], dim: int) -> list[Vector]:
    """Rays of the cone {x : <x, a> >= 0 for all a}, found by brute force.

    Every (dim - 1)-subset of normals of rank dim - 1 determines a line; the
    primitive direction on it that satisfies all inequalities (if any) is a
    ray. Independent of any closed-form ray list.
    """
    rays = set()
    for subset in itertools.combinations(normals, dim - 1):
        rows = [a.coords for a in subset]
        if integer_rank(rows) != dim - 1:
            continue
        (kernel,) = nullspace(rows)
        v = primitive(kernel)
        for cand in (v, tuple(-c for c in v)):
            if all(a.pair(cand) >= 0 for a in normals):
                rays.add(cand)
    return sorted(rays)


@dataclass
class IrreducibilityCheck:
    """Outcome of :func:`verify_irreducible_representation`.

    Truthy iff all four conditions hold. ``witnesses[k]`` is a rational point
    satisfying every normal except the k-th, which it violates.
    """

    ok: bool
    failures: list[str] = field(default_factory=list)
    witnesses: dict[int, tuple[Fraction, ...]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _separating_point(kept: Sequence[NormalVector], dropped: NormalVector, n: int) -> Optional[tuple]:
    # cheap candidates first: multiples of unit vectors
    for k in range(n):
        x = tuple(n * int(c == k) for c in range(n))
        if dropped.pair(x) < 0 and all(a.pair(x) >= 0 for a in kept):
            return tuple(Fraction(v) for v in x)
    a_ub = [[-c for c in a.coords] for a in kept] + [list(dropped.coords)]
    b_ub = [0] * len(kept) + [-1]
    x = feasible_point(a_ub, b_ub, nvars=n)
    return None if x is None else tuple(x)


def verify_irreducible_representation(
    base: Iterable[Sequence[int]], cone: ConeRepresentation
) -> IrreducibilityCheck:
    """Check that ``cone.normals`` give an irreducible representation of R_+ base.

    (1) base vectors satisfy every inequality; (2) every listed ray is a base
    vector; (3) each normal meets the base in a rank n-1 set; (4) no normal
    can be dropped: a rational point violating only that normal exists;
    (5) the normals cut out nothing more than R_+ A: every extremal ray of
    their cone is a nonnegative combination of base vectors.
    """
    base = [tuple(v) for v in base]
    if not base:
        raise ValueError("base set must be nonempty")
    n = cone.dimension
    if any(len(v) != n for v in base):
        raise ShapeError("base vectors and cone live in different dimensions")
    members = set(base)
    check = IrreducibilityCheck(ok=True)

    bad = [(v, a.describe()) for v in base for a in cone.normals if a.pair(v) < 0]
    if bad:
        check.failures.append(f"(1) {len(bad)} base/normal pairs violate the halfspace, e.g. {bad[0]}")

    stray = [r for r in cone.rays if r not in members]
    if stray:
        check.failures.append(f"(2) rays outside the base set: {stray[:5]}")

    for a in cone.normals:
        contact = [v for v in base if a.pair(v) == 0]
        rk = integer_rank(contact) if contact else 0
        if rk != n - 1:
            check.failures.append(f"(3) {a.describe()} touches the base in rank {rk}, not {n - 1}")

    for k, a in enumerate(cone.normals):
        kept = cone.normals[:k] + cone.normals[k + 1 :]
        x = _separating_point(kept, a, n)
        if x is None:
            check.failures.append(f"(4) {a.describe()} is redundant")
        else:
            check.witnesses[k] = x

    if integer_rank([a.coords for a in cone.normals]) < n:
        check.failures.append("(5) the normals cut out a cone containing a line")
    else:
        for ray in extremal_rays_from_normals(cone.normals, n):
            if not _in_base_cone(base, members, ray):
                check.failures.append(f"(5) ray {ray} of the normal cone lies outside R_+ A")
                break

    check.ok = not check.failures
    return check


def _in_base_cone(base: Sequence[Vector], members: set, ray: Sequence[int]) -> bool:
    """Is ``ray`` a nonnegative combination of base vectors (all of one degree)?"""
    total = sum(ray)
    if total <= 0 or min(ray) < 0:
        return False
    deg = sum(base[0])
    scaled = [Fraction(c * deg, total) for c in ray]
    if all(c.denominator == 1 for c in scaled) and tuple(int(c) for c in scaled) in members:
        return True
    n = len(ray)
    a_eq = [[v[k] for v in base] for k in range(n)] + [[1] * len(base)]
    return feasible_point(a_eq=a_eq, b_eq=scaled + [1], nvars=len(base), nonneg=True) is not None


def det_certificate(params: FamilyParams) -> int:
    """|det C| for the n independent base vectors used to certify dim = n."""
    n, i, j = params.n, params.i, params.j

    def vec(entries: dict[int, int]) -> list[int]:
        v = [0] * n
        for pos, val in entries.items():
            v[pos - 1] += val
        return v

    rows = [vec({k: n - j, i + 1: j}) for k in range(1, i + 1)]
    rows += [vec({1: n - j, r: j}) for r in range(i + 2, n + 1)]
    rows.append(vec({n: n}))
    value = abs(bareiss_determinant(rows))
    expected = n * (n - j) ** i * j ** (n - i - 1)
    if value != expected:
        raise ConsistencyError(f"{params}: |det C| = {value}, closed form gives {expected}")
    return value


def in_relative_interior(x: Sequence[int], cone: ConeRepresentation) -> bool:
    if len(x) != cone.dimension:
        raise ShapeError(f"vector of length {len(x)} against a cone in R^{cone.dimension}")
    return all(a.pair(x) > 0 for a in cone.normals)


def polymatroid_halfspaces(pres: Presentation) -> list[NormalVector]:
    """Valid inequalities for the cone of an arbitrary transversal presentation.

    The base polytope is {x >= 0 : x(S) <= rho(S), |x| = n} where rho(S)
    counts the sets A_k meeting S. Homogenised this is <x, rho(S) 1 - n 1_S> >= 0.
    Returns the unit normals plus one normal per nonempty proper S whose
    inequality is not implied by x >= 0. Not reduced to facets.
    """
    n = pres.n
    normals = [axis_normal(n, k) for k in range(1, n + 1)]
    seen = set()
    for s in range(1, (1 << n) - 1):
        rho = sum(1 for m in pres.masks if m & s)
        coords = tuple(rho - n * ((s >> k) & 1) for k in range(n))
        if all(c >= 0 for c in coords) or coords in seen:
            continue
        seen.add(coords)
        subset = tuple(k + 1 for k in range(n) if (s >> k) & 1)
        normals.append(NormalVector(coords, ("rank", subset)))
    return normals


def facet_normals(base: Iterable[Sequence[int]], normals: Sequence[NormalVector]) -> list[NormalVector]:
    """Those ``normals`` whose hyperplane meets ``base`` in rank dim - 1."""
    base = [tuple(v) for v in base]
    n = len(base[0])
    out = []
    for a in normals:
        contact = [v for v in base if a.pair(v) == 0]
        if contact and integer_rank(contact) == n - 1:
            out.append(a)
    return out

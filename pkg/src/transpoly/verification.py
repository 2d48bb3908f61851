"""Formula-versus-oracle checks for one family instance or a whole grid."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .canonical_type import (
    CanonicalGenerators,
    a_invariant,
    block_generators,
    canonical_generators_bruteforce,
    enumerate_M,
    type_formula,
)
from .cone_geometry import (
    build_cone,
    det_certificate,
    extremal_rays_from_normals,
    facet_normals,
    polymatroid_halfspaces,
    verify_irreducible_representation,
)
from .errors import ConsistencyError, InconclusiveBound
from .exact_linalg import primitive
from .hilbert_ehrhart import (
    difference_closed_form,
    ehrhart_count,
    h_vector,
    hilbert_function,
    iterated_differences,
    numerator_from_values,
)
from .presentation import (
    FamilyParams,
    build_family_presentation,
    check_exchange_property,
    enumerate_base,
    family_base,
    family_grid,
    rotate_presentation,
    rotate_vector,
)


@dataclass(frozen=True)
class OracleCheck:
    name: str
    status: str  # pass / fail / skipped
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@lru_cache(maxsize=8)
def _base(p: FamilyParams) -> frozenset:
    return enumerate_base(build_family_presentation(p))


@lru_cache(maxsize=8)
def _bruteforce(p: FamilyParams) -> CanonicalGenerators:
    return canonical_generators_bruteforce(build_family_presentation(p))


def check_base(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    base = _base(p)
    ok = base == family_base(p) and len(base) == hilbert_function(p, 1)
    return ok, f"|B| = {len(base)}, h(1) = {hilbert_function(p, 1)}"


def check_exchange(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    return check_exchange_property(_base(p)), f"{len(_base(p))} base vectors"


def check_irreducible(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    res = verify_irreducible_representation(_base(p), build_cone(p))
    return res.ok, "; ".join(res.failures) or "N = {nu, e_1..e_n} irreducible"


def check_facets(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    found = {a.coords for a in facet_normals(_base(p), polymatroid_halfspaces(build_family_presentation(p)))}
    want = {a.coords for a in build_cone(p).normals}
    return found == want, f"{len(found)} facets from rank inequalities"


def check_rays(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    cone = build_cone(p)
    brute = extremal_rays_from_normals(cone.normals, p.n)
    expected = (p.i + 1) * (p.n - p.i)
    base = _base(p)
    scaled = sorted(tuple(primitive(r)) for r in cone.rays)
    ok = scaled == sorted(brute) and len(brute) == expected and all(r in base for r in cone.rays)
    return ok, f"{len(brute)} rays, expected {expected}"


def check_det(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    try:
        value = det_certificate(p)
    except ConsistencyError as exc:
        return False, str(exc)
    return True, f"|det C| = {value}"


def check_rotation(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    pres = build_family_presentation(p)
    base = _base(p)
    for t in range(p.n):
        rot = enumerate_base(rotate_presentation(pres, t))
        if rot != {rotate_vector(v, t) for v in base}:
            return False, f"base of sigma^{t} presentation is not the rotated base"
        if not verify_irreducible_representation(rot, build_cone(p, t)):
            return False, f"rotated cone t={t} fails irreducibility"
    return True, f"{p.n} rotations"


def check_type(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    try:
        gens = _bruteforce(p)
    except InconclusiveBound as exc:
        return False, str(exc)
    closed = enumerate_M(p)
    ok = gens.as_set() == closed.as_set() and len(gens) == type_formula(p)
    return ok, f"brute force {len(gens)}, formula {type_formula(p)}"


def check_block(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    try:
        gens = _bruteforce(p)
    except InconclusiveBound as exc:
        return False, str(exc)
    block = block_generators(p)
    return gens.as_set() == block.as_set(), f"brute force {len(gens)}, block oracle {len(block)}"


def check_a_invariant(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    try:
        gens = _bruteforce(p)
    except InconclusiveBound as exc:
        return False, str(exc)
    num = h_vector(p)
    ok = -a_invariant(p) == gens.min_degree and len(num) - 1 == p.n - p.r and num[-1] > 0
    return ok, f"a = {a_invariant(p)}, least generator degree {gens.min_degree}"


def check_hilbert(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    pres = build_family_presentation(p)
    closed = [hilbert_function(p, t) for t in range(max_t + 1)]
    counted = [ehrhart_count(pres, t) for t in range(max_t + 1)]
    return closed == counted, f"h = {closed}, E = {counted}"


def check_delta(p: FamilyParams, max_t: int) -> tuple[bool, str]:
    top = p.n - p.r
    values = [hilbert_function(p, t) for t in range(top + 1)]
    for k in range(1, p.n + 1):
        iterated = iterated_differences(values, k)
        if iterated != [difference_closed_form(values, k, j) for j in range(top + 1)]:
            return False, f"Delta^{k} mismatch"
    ok = iterated == numerator_from_values(values, p.n) == h_vector(p)
    return ok, f"numerator {h_vector(p)}"


CHECKS: dict[str, Callable[[FamilyParams, int], tuple[bool, str]]] = {
    "base": check_base,
    "exchange": check_exchange,
    "irreducible": check_irreducible,
    "facets": check_facets,
    "rays": check_rays,
    "det": check_det,
    "rotation": check_rotation,
    "type": check_type,
    "block": check_block,
    "a_invariant": check_a_invariant,
    "hilbert": check_hilbert,
    "delta": check_delta,
}


def run_checks(p: FamilyParams, max_t: int = 3, only: Optional[Iterable[str]] = None) -> list[OracleCheck]:
    names = list(CHECKS) if not only else [c for c in CHECKS if c in set(only)]
    out = []
    for name in names:
        ok, detail = CHECKS[name](p, max_t)
        out.append(OracleCheck(f"{name}[{p.n},{p.i},{p.j}]", "pass" if ok else "fail", detail))
    return out


def run_grid(max_n: int, max_t: int = 3, only: Optional[Iterable[str]] = None, min_n: int = 3) -> list[OracleCheck]:
    out = []
    for p in family_grid(max_n, min_n):
        out.extend(run_checks(p, max_t, only))
    return out

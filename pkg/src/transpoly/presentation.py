"""Transversal presentations, the (n, i, j) family and base-set enumeration.

Ground-set elements and set positions are 1-indexed in every public
input/output (``{1, ..., n}``); internally a set is a bitmask with bit
``k`` standing for element ``k + 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ParameterError, PresentationParseError

Vector = tuple[int, ...]


class Case(enum.Enum):
    LOW_SUM = "LowSum"  # i + j <= n - 1
    HIGH_SUM = "HighSum"  # i + j >= n


@dataclass(frozen=True, order=True)
class FamilyParams:
    n: int
    i: int
    j: int

    def __post_init__(self):
        n, i, j = self.n, self.i, self.j
        if n < 3:
            raise ParameterError(f"n must satisfy n >= 3 (got n={n})")
        if not 1 <= i <= n - 2:
            raise ParameterError(f"i must satisfy 1 <= i <= n-2 = {n - 2} (got i={i})")
        if not 1 <= j <= n - 1:
            raise ParameterError(f"j must satisfy 1 <= j <= n-1 = {n - 1} (got j={j})")

    @property
    def case(self) -> Case:
        return Case.LOW_SUM if self.i + self.j <= self.n - 1 else Case.HIGH_SUM

    @property
    def r(self) -> int:
        """ceil((i + 1) / (n - j)); equals 1 exactly in the LowSum case."""
        return -(-(self.i + 1) // (self.n - self.j))

    def __str__(self) -> str:
        return f"(n={self.n}, i={self.i}, j={self.j})"


def family_grid(max_n: int, min_n: int = 3) -> Iterator[FamilyParams]:
    """All valid parameter triples with ``min_n <= n <= max_n``, sorted."""
    for n in range(max(3, min_n), max_n + 1):
        for i in range(1, n - 1):
            for j in range(1, n):
                yield FamilyParams(n, i, j)


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    k = 0
    while mask >> k:
        if (mask >> k) & 1:
            out.append(k + 1)
        k += 1
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    """Ordered list of ``n`` nonempty subsets ``A_1..A_n`` of ``[n]``."""

    n: int
    masks: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("presentation needs n >= 1")
        if len(self.masks) != self.n:
            raise ValueError(f"presentation over [{self.n}] needs {self.n} sets, got {len(self.masks)}")
        full = (1 << self.n) - 1
        for pos, m in enumerate(self.masks, start=1):
            if m == 0:
                raise ValueError(f"set A_{pos} is empty")
            if m & ~full:
                raise ValueError(f"set A_{pos} has elements outside [{self.n}]")

    @classmethod
    def from_sets(cls, sets: Sequence[Iterable[int]]) -> "Presentation":
        sets = [list(s) for s in sets]
        n = len(sets)
        for pos, s in enumerate(sets, start=1):
            bad = [e for e in s if not 1 <= e <= n]
            if bad:
                raise ValueError(f"set A_{pos} has elements outside [{n}]: {bad}")
        return cls(n, tuple(mask_of(s) for s in sets))

    def sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self.masks]

    def __str__(self) -> str:
        return "; ".join(" ".join(map(str, s)) for s in self.sets())


def parse_presentation(text: str) -> Presentation:
    """Parse ``n`` on the first line followed by ``n`` lines of elements."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise PresentationParseError("empty presentation file")
    try:
        n = int(lines[0])
    except ValueError:
        raise PresentationParseError(f"first line must be n, got {lines[0]!r}") from None
    if n < 1:
        raise PresentationParseError(f"n must be positive, got {n}")
    body = lines[1:]
    if len(body) != n:
        raise PresentationParseError(f"expected {n} set lines, got {len(body)}")
    sets = []
    for pos, ln in enumerate(body, start=1):
        try:
            elems = [int(tok) for tok in ln.split()]
        except ValueError:
            raise PresentationParseError(f"line for A_{pos} is not a list of integers: {ln!r}") from None
        if not elems:
            raise PresentationParseError(f"set A_{pos} is empty")
        bad = [e for e in elems if not 1 <= e <= n]
        if bad:
            raise PresentationParseError(f"set A_{pos} has elements outside [1, {n}]: {bad}")
        sets.append(elems)
    return Presentation.from_sets(sets)


def read_presentation(path) -> Presentation:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PresentationParseError(f"cannot read {path}: {exc}") from None
    return parse_presentation(text)


def format_presentation(pres: Presentation) -> str:
    return "\n".join([str(pres.n)] + [" ".join(map(str, s)) for s in pres.sets()]) + "\n"


def build_family_presentation(params: FamilyParams) -> Presentation:
    n, i, j = params.n, params.i, params.j
    full = (1 << n) - 1
    restricted = full & ~((1 << i) - 1)  # [n] \ [i]
    if params.case is Case.LOW_SUM:
        positions = range(i + 1, i + j + 1)
    else:
        positions = [*range(1, i + j - n + 1), *range(i + 1, n + 1)]
    masks = [full] * n
    for p in positions:
        masks[p - 1] = restricted
    return Presentation(n, tuple(masks))


def identify_family(pres: Presentation) -> Optional[FamilyParams]:
    """The family parameters whose presentation equals ``pres``, if any."""
    if pres.n < 3:
        return None
    for p in family_grid(pres.n, pres.n):
        if build_family_presentation(p) == pres:
            return p
    return None


def enumerate_base(pres: Presentation) -> frozenset[Vector]:
    """All vectors sum_k e_{j_k} with j_k in A_k, deduplicated.

    Builds the product one set at a time and deduplicates each layer, so the
    work is bounded by the number of distinct partial sums rather than by
    prod |A_k|.
    """
    n = pres.n
    layer = {(0,) * n}
    for m in pres.masks:
        elems = [e - 1 for e in elements_of(m)]
        nxt = set()
        for v in layer:
            for e in elems:
                w = list(v)
                w[e] += 1
                nxt.add(tuple(w))
        layer = nxt
    return frozenset(layer)


def compositions(total: int, parts: int) -> Iterator[Vector]:
    """Nonnegative integer vectors of length ``parts`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def family_base(params: FamilyParams) -> frozenset[Vector]:
    """Closed description {x : |x| = n, x_1 + ... + x_i <= n - j} of the base."""
    n, i, j = params.n, params.i, params.j
    return frozenset(x for x in compositions(n, n) if sum(x[:i]) <= n - j)


def check_exchange_property(base: Iterable[Sequence[int]]) -> bool:
    """Discrete-polymatroid base axiom (equal degree plus symmetric exchange)."""
    vecs = [tuple(v) for v in base]
    if not vecs:
        raise ValueError("base set must be nonempty")
    members = set(vecs)
    deg = sum(vecs[0])
    if any(sum(v) != deg for v in vecs):
        return False
    n = len(vecs[0])
    for u in vecs:
        for v in vecs:
            for a in range(n):
                if u[a] <= v[a]:
                    continue
                found = False
                for b in range(n):
                    if u[b] < v[b]:
                        w = list(u)
                        w[b] += 1
                        w[a] -= 1
                        if tuple(w) in members:
                            found = True
                            break
                if not found:
                    return False
    return True


def rotate_vector(x: Sequence[int], t: int) -> Vector:
    """Apply the cycle (1 2 ... n) t times to coordinates: y_{sigma^t(k)} = x_k."""
    n = len(x)
    y = [0] * n
    for k, v in enumerate(x):
        y[(k + t) % n] = v
    return tuple(y)


def rotate_mask(mask: int, t: int, n: int) -> int:
    t %= n
    full = (1 << n) - 1
    return ((mask << t) | (mask >> (n - t))) & full


def rotate_presentation(pres: Presentation, t: int) -> Presentation:
    """Move A_k to position sigma^t(k) and relabel its elements by sigma^t."""
    n = pres.n
    if not 0 <= t <= n - 1:
        raise ValueError(f"shift must satisfy 0 <= t <= n-1, got {t}")
    masks = [0] * n
    for k, m in enumerate(pres.masks):
        masks[(k + t) % n] = rotate_mask(m, t, n)
    return Presentation(n, tuple(masks))

"""Degree slices of the affine semigroup N A for an equal-degree generator set.

Vectors are packed into int64 codes in a fixed radix so that adding codes
adds vectors; that keeps sumsets and set differences inside numpy.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ShapeError

_CHUNK = 1 << 22


def semigroup_contains(base: Iterable[Sequence[int]], x: Sequence[int], memo: Optional[dict] = None) -> bool:
    """Whether ``x`` is a finite sum of vectors from ``base``.

    Memoised descent: x is in N A iff x = 0 or x - b is for some b <= x.
    Pass the same ``memo`` dict across calls for one base set; never share
    it between different base sets.
    """
    gens = sorted({tuple(b) for b in base})
    x = tuple(x)
    if memo is None:
        memo = {}
    if gens and any(len(b) != len(x) for b in gens):
        raise ShapeError("vector length does not match the generators")
    degrees = {sum(b) for b in gens}
    if len(degrees) == 1:
        (d,) = degrees
        if d > 0 and sum(x) % d:
            return False

    def member(v: tuple) -> bool:
        if not any(v):
            return True
        if min(v) < 0:
            return False
        hit = memo.get(v)
        if hit is not None:
            return hit
        ans = False
        for b in gens:
            if all(bi <= vi for bi, vi in zip(b, v)):
                if member(tuple(vi - bi for vi, bi in zip(v, b))):
                    ans = True
                    break
        memo[v] = ans
        return ans

    return member(x)


class SliceTower:
    """Lazily computed slices S_s = {sum of s generators}, s = 0, 1, ..., max_degree."""

    def __init__(self, base: Iterable[Sequence[int]], max_degree: int):
        gens = sorted({tuple(int(c) for c in b) for b in base})
        if not gens:
            raise ValueError("empty generator set")
        self.dim = len(gens[0])
        degrees = {sum(b) for b in gens}
        if len(degrees) != 1:
            raise ValueError("generators must all have the same coordinate sum")
        (self.degree,) = degrees
        self.max_degree = max_degree
        self.radix = max_degree * self.degree + 1
        if self.radix ** self.dim >= 2**62:
            raise OverflowError("slice codes would overflow int64; lower the degree cap")
        self.powers = self.radix ** np.arange(self.dim, dtype=np.int64)
        self.gens = np.array(gens, dtype=np.int64)
        self.gen_codes = self.encode(self.gens)
        self._slices: list[np.ndarray] = [np.zeros(1, dtype=np.int64)]

    def encode(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=np.int64) @ self.powers

    def decode(self, codes: np.ndarray) -> np.ndarray:
        out = np.empty((len(codes), self.dim), dtype=np.int64)
        rest = np.array(codes, dtype=np.int64)
        for k in range(self.dim):
            rest, out[:, k] = np.divmod(rest, self.radix)
        return out

    def sumset(self, codes: np.ndarray) -> np.ndarray:
        """Sorted unique codes of {c + b : c in codes, b in generators}."""
        if len(codes) == 0:
            return codes
        step = max(1, _CHUNK // len(codes))
        acc = np.empty(0, dtype=np.int64)
        for start in range(0, len(self.gen_codes), step):
            part = (codes[:, None] + self.gen_codes[None, start : start + step]).ravel()
            acc = np.union1d(acc, part)
        return acc

    def slice(self, s: int) -> np.ndarray:
        """Sorted codes of the degree-``s`` slice."""
        if s > self.max_degree:
            raise ValueError(f"degree {s} beyond the tower cap {self.max_degree}")
        while len(self._slices) <= s:
            self._slices.append(self.sumset(self._slices[-1]))
        return self._slices[s]

    def slice_points(self, s: int) -> np.ndarray:
        return self.decode(self.slice(s))

"""Dimensions of the irreducible H(D_n)-modules indexed by double partitions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Optional


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts if p)
        if any(a < b for a, b in zip(parts, parts[1:])) or any(p < 0 for p in parts):
            raise ValueError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > k) for k in range(self.parts[0])))

    def hooks(self) -> list:
        conj = self.conjugate().parts
        return [(p - j - 1) + (conj[j] - i - 1) + 1
                for i, p in enumerate(self.parts) for j in range(p)]

    def removable(self) -> list:
        """Rows whose last box can be removed."""
        ps = self.parts
        return [i for i in range(len(ps)) if i == len(ps) - 1 or ps[i] > ps[i + 1]]

    def remove_box(self, row: int) -> "Partition":
        ps = list(self.parts)
        ps[row] -= 1
        return Partition(tuple(ps))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts or (0,))) + ")"


def partitions(k: int, largest: Optional[int] = None):
    """All partitions of k in reverse lexicographic order."""
    if k == 0:
        yield Partition(())
        return
    largest = k if largest is None else largest
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield Partition((first,) + rest.parts)


def syt_count(p: Partition) -> int:
    """Hook length formula."""
    prod = 1
    for h in p.hooks():
        prod *= h
    return factorial(p.size) // prod


def syt_enumerate(p: Partition) -> int:
    """Count standard fillings by placing 1, 2, ... one box at a time."""
    shape = p.parts
    rows = [0] * len(shape)

    def fill(placed):
        if placed == p.size:
            return 1
        total = 0
        for i in range(len(shape)):
            # next box in row i must be inside the shape and below a filled box
            if rows[i] < shape[i] and (i == 0 or rows[i - 1] > rows[i]):
                rows[i] += 1
                total += fill(placed + 1)
                rows[i] -= 1
        return total

    return fill(0)


@dataclass(frozen=True)
class DoublePartition:
    lam: Partition
    mu: Partition
    split: Optional[str] = None

    def __post_init__(self):
        lam, mu = Partition(tuple(self.lam.parts if isinstance(self.lam, Partition) else self.lam)), \
            Partition(tuple(self.mu.parts if isinstance(self.mu, Partition) else self.mu))
        if (lam.size, lam.parts) > (mu.size, mu.parts):
            lam, mu = mu, lam
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        if lam == mu and self.split not in ("+", "-"):
            raise ValueError("equal components need a split sign '+' or '-'")
        if lam != mu and self.split is not None:
            raise ValueError("split sign only applies when lam = mu")

    @property
    def n(self) -> int:
        return self.lam.size + self.mu.size

    def __str__(self):
        return f"{self.lam},{self.mu}" + (self.split or "")


def double_partitions(n: int) -> list:
    """Canonical double partitions of n, split ones listed as + and -."""
    out = []
    for a in range(0, n // 2 + 1):
        b = n - a
        for lam in partitions(a):
            for mu in partitions(b):
                if a == b and lam.parts > mu.parts:
                    continue
                if lam == mu:
                    out.append(DoublePartition(lam, mu, "+"))
                    out.append(DoublePartition(lam, mu, "-"))
                elif a < b or lam.parts < mu.parts:
                    out.append(DoublePartition(lam, mu))
    return out


def dn_dim(dp: DoublePartition) -> int:
    d = comb(dp.n, dp.lam.size) * syt_count(dp.lam) * syt_count(dp.mu)
    return d // 2 if dp.lam == dp.mu else d


def degree_witnesses(n: int, bound: Optional[int] = None) -> dict:
    """degree -> double partitions of that degree, for degrees below bound."""
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    bound = n * (n - 1) if bound is None else bound
    out = {}
    for dp in double_partitions(n):
        d = dn_dim(dp)
        if bound is None or d < bound:
            out.setdefault(d, []).append(dp)
    return dict(sorted(out.items()))


def degree_list(n: int, bound: Optional[int] = None) -> list:
    """Sorted degrees below bound (default n(n-1)); bound = float('inf') for all."""
    return list(degree_witnesses(n, bound))


def dim_sum_check(n: int) -> bool:
    """sum of squared dimensions equals |W(D_n)| = 2^(n-1) n!."""
    return sum(dn_dim(dp) ** 2 for dp in double_partitions(n)) == 2 ** (n - 1) * factorial(n)


def restrict_dims(dp: DoublePartition) -> list:
    """Remove one removable box from either component."""
    if dp.lam == dp.mu:
        raise ValueError("restriction of split modules is not supported")
    out = []
    for row in dp.lam.removable():
        out.append(_make(dp.lam.remove_box(row), dp.mu))
    for row in dp.mu.removable():
        out.append(_make(dp.lam, dp.mu.remove_box(row)))
    return out


def _make(a: Partition, b: Partition) -> DoublePartition:
    return DoublePartition(a, b, "+" if a == b else None)


def generic_degrees(n: int) -> list:
    """The small degrees expected for every n: 1, n-1, n, n(n-3)/2, (n-1)(n-2)/2."""
    return sorted({1, n - 1, n, n * (n - 3) // 2, (n - 1) * (n - 2) // 2})

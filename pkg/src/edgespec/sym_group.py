"""Permutations of {0..n-1} and the character of the (n-2,2) irreducible.

Composition convention: ``(s * t)(x) = s(t(x))``, so in a word of
transpositions the rightmost factor acts first.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


class RepresentationAbsentError(ValueError):
    """Raised for n <= 3, where the (n-2,2) component does not exist."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def cycle_type(self) -> "CycleType":
        return CycleType.of(self.images)


@dataclass(frozen=True)
class CycleType:
    n: int
    counts: tuple[tuple[int, int], ...]  # sorted (length, multiplicity), multiplicity > 0

    def __post_init__(self):
        if sum(length * mult for length, mult in self.counts) != self.n:
            raise ValueError("cycle lengths do not sum to n")

    @classmethod
    def of(cls, images: Sequence[int]) -> "CycleType":
        n = len(images)
        seen = [False] * n
        tally: Counter[int] = Counter()
        for start in range(n):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = images[x]
                length += 1
            tally[length] += 1
        return cls(n, tuple(sorted(tally.items())))

    @classmethod
    def from_partition(cls, parts: Iterable[int], n: int) -> "CycleType":
        """``(3, 2)`` with n=7 gives the type (3, 2, 1, 1)."""
        tally = Counter(p for p in parts if p > 1)
        fixed = n - sum(p * k for p, k in tally.items())
        if fixed < 0:
            raise ValueError(f"partition {tuple(parts)} does not fit in n={n}")
        if fixed:
            tally[1] += fixed
        return cls(n, tuple(sorted(tally.items())))

    def count(self, length: int) -> int:
        return dict(self.counts).get(length, 0)

    @property
    def fixed_points(self) -> int:
        return self.count(1)

    @property
    def two_cycles(self) -> int:
        return self.count(2)


def transposition(u: int, v: int, n: int) -> Permutation:
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise ValueError(f"invalid transposition ({u} {v}) for n={n}")
    images = list(range(n))
    images[u], images[v] = v, u
    return Permutation(tuple(images))


def word_product(word: Iterable[tuple[int, int]], n: int) -> Permutation:
    """tau_{e_1} * ... * tau_{e_r}.

    Right-multiplying by a transposition (i j) swaps the images at i and j,
    so the product is built left to right with one swap per letter.
    """
    images = list(range(n))
    for u, v in word:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError(f"invalid edge ({u}, {v}) for n={n}")
        images[u], images[v] = images[v], images[u]
    return Permutation(tuple(images))


def chi22(c1: int, c2: int) -> int:
    """Character value from the fixed-point and 2-cycle counts."""
    return c1 * (c1 - 1) // 2 + c2 - c1


def character_22(ct: CycleType) -> int:
    if ct.n <= 3:
        raise RepresentationAbsentError(f"(n-2,2) is absent for n={ct.n}")
    return chi22(ct.fixed_points, ct.two_cycles)


def permutation_character_22(sigma: Permutation) -> int:
    return character_22(sigma.cycle_type())


def dim_22(n: int) -> int:
    if n <= 3:
        raise RepresentationAbsentError(f"(n-2,2) is absent for n={n}")
    return n * (n - 3) // 2


@dataclass(frozen=True)
class ClosedCharacterValues:
    """Closed-form character values; ``inapplicable`` names the entries whose
    cycle type needs more than n points (the formula value is still given)."""

    n: int
    d: int
    c2: int
    alpha: int
    beta: int
    c4: int
    c32: int
    c222: int
    inapplicable: frozenset[str]

    CYCLE_TYPES = {
        "d": (),
        "c2": (2,),
        "alpha": (3,),
        "beta": (2, 2),
        "c4": (4,),
        "c32": (3, 2),
        "c222": (2, 2, 2),
    }


def closed_character_values(n: int) -> ClosedCharacterValues:
    if n < 4:
        raise RepresentationAbsentError(f"(n-2,2) is absent for n={n}")
    values = dict(
        d=n * (n - 3) // 2,
        c2=(n - 3) * (n - 4) // 2,
        alpha=(n * n - 9 * n + 18) // 2,
        beta=(n * n - 11 * n + 32) // 2,
        c4=(n * n - 11 * n + 28) // 2,
        c32=(n * n - 13 * n + 42) // 2,
        c222=(n * n - 15 * n + 60) // 2,
    )
    bad = frozenset(k for k, parts in ClosedCharacterValues.CYCLE_TYPES.items() if sum(parts) > n)
    return ClosedCharacterValues(n=n, inapplicable=bad, **values)


"""Integer polynomials, exact characteristic polynomials and Newton's identities."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients stored constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c) or (0,))

    @classmethod
    def monomial(cls, degree: int) -> "IntPolynomial":
        return cls((0,) * degree + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __divmod__(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        if not divisor.is_monic:
            raise ValueError("division is only defined here for monic divisors")
        rem = list(self.coeffs)
        dd = divisor.degree
        if self.degree < dd:
            return IntPolynomial((0,)), self
        quot = [0] * (self.degree - dd + 1)
        for k in range(self.degree - dd, -1, -1):
            c = rem[k + dd]
            quot[k] = c
            if c:
                for j, b in enumerate(divisor.coeffs):
                    rem[k + j] -= c * b
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dd] or [0]))

    def __floordiv__(self, divisor: "IntPolynomial") -> "IntPolynomial":
        quot, rem = divmod(self, divisor)
        if any(rem.coeffs):
            raise ArithmeticError("polynomial division is not exact")
        return quot

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str | int]) -> "IntPolynomial":
        return cls(tuple(int(x) for x in items))

    @classmethod
    def from_json(cls, text: str) -> "IntPolynomial":
        return cls.from_strings(json.loads(text))

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "t" if k == 1 else f"t^{k}" if k else ""
            coef = "" if mag == 1 and k else str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {t}" for s, t in terms[1:])


def _sparse_rows(a: IntMatrix) -> list[list[tuple[int, int]]]:
    return [[(k, x) for k, x in enumerate(row) if x] for row in a]


def _sparse_matmul(rows: list[list[tuple[int, int]]], b: IntMatrix) -> IntMatrix:
    size = len(b[0]) if b else 0
    out = []
    for nz in rows:
        acc = [0] * size
        for k, a in nz:
            bk = b[k]
            if a == 1:
                acc = [p + x for p, x in zip(acc, bk)]
            else:
                acc = [p + a * x for p, x in zip(acc, bk)]
        out.append(acc)
    return out


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return _sparse_matmul(_sparse_rows(a), b)


def charpoly_exact(a: IntMatrix) -> IntPolynomial:
    """det(tI - A) by the Faddeev-LeVerrier recursion over Python integers.

    Every division ``-tr(A M_k) / k`` is exact for integer A.
    """
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("charpoly_exact needs a square matrix")
    coeffs = [0] * (size + 1)
    coeffs[size] = 1
    rows = _sparse_rows(a)
    m = [[int(i == j) for j in range(size)] for i in range(size)]
    for k in range(1, size + 1):
        am = _sparse_matmul(rows, m)
        tr = sum(am[i][i] for i in range(size))
        c, rem = divmod(-tr, k)
        if rem:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[size - k] = c
        if k < size:
            for i in range(size):
                am[i][i] += c
            m = am
    return IntPolynomial(tuple(coeffs))


def power_traces(a: IntMatrix, r_max: int) -> list[int]:
    """[tr(A), tr(A^2), ..., tr(A^r_max)] in exact arithmetic."""
    rows = _sparse_rows(a)
    size = len(a)
    out = []
    power = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(r_max):
        power = _sparse_matmul(rows, power)
        out.append(sum(power[i][i] for i in range(size)))
    return out


def power_sums_from_charpoly(p: IntPolynomial, r_max: int) -> list[int]:
    """Newton's identities: power sums p_1..p_r_max of the roots of monic p."""
    if not p.is_monic:
        raise ValueError("Newton's identities need a monic polynomial")
    deg = p.degree
    # e-style coefficients: p(t) = t^deg + a_1 t^(deg-1) + ... + a_deg
    a = [p.coeffs[deg - i] for i in range(deg + 1)]
    sums: list[int] = []
    for k in range(1, r_max + 1):
        total = -k * a[k] if k <= deg else 0
        for i in range(1, min(k - 1, deg) + 1):
            total -= a[i] * sums[k - i - 1]
        sums.append(total)
    return sums


def charpoly_roots(p: IntPolynomial, digits: int = 30) -> list[float]:
    """Real parts of the roots of p with multiplicity, sorted.

    Square-free factors are solved separately so repeated roots stay
    well conditioned.
    """
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(p.coeffs)), t)
    roots: list[float] = []
    _, factors = poly.sqf_list()
    for factor, mult in factors:
        if factor.degree() == 0:
            continue
        for z in factor.nroots(n=digits, maxsteps=200):
            roots.extend([float(sympy.re(z))] * mult)
    return sorted(roots)

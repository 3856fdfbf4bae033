"""Exact linear algebra over a prime field or over the rationals.

Everything rank-critical in the package goes through here. There is no
floating point: rigidity ranks sit exactly on their thresholds, so an epsilon
would be a correctness hazard rather than a convenience.

Random configurations stand in for generic ones. For a matrix whose entries
are polynomials in the coordinates, evaluating at uniform random points of a
field of size ``q`` drops below the generic rank with probability at most
``deg(minor) / q`` (Schwartz-Zippel), so with the default 62-bit prime a
single trial is already overwhelmingly reliable. Repeating trials and taking
the maximum can only help, because evaluation never overshoots generic rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

#: Largest prime below 2**62.
DEFAULT_PRIME = (1 << 62) - 57

# Rational-mode coordinates are integers drawn from [-RATIONAL_RANGE, RATIONAL_RANGE].
RATIONAL_RANGE = 1 << 24


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either GF(prime) or, when ``prime`` is None, the exact rationals."""

    prime: int | None = DEFAULT_PRIME

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(prime=None)

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    @property
    def name(self) -> str:
        return "QQ" if self.prime is None else f"GF({self.prime})"

    def element(self, x):
        if self.prime is None:
            return Fraction(x)
        return x % self.prime

    def inv(self, x):
        if self.prime is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.prime)

    def random_element(self, rng: random.Random):
        if self.prime is None:
            return Fraction(rng.randint(-RATIONAL_RANGE, RATIONAL_RANGE))
        return rng.randrange(self.prime)


class RandomSource:
    """Seeded stream of field elements.

    Two sources built from the same seed produce the same stream. Sources are
    cheap; derive a child with :meth:`spawn` instead of sharing one between
    independent computations.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed) & ((1 << 64) - 1)
        self._rng = random.Random(self.seed)

    def __repr__(self):
        return f"RandomSource(seed={self.seed})"

    def element(self, fs: FieldSpec):
        return fs.random_element(self._rng)

    def next_seed(self) -> int:
        return self._rng.getrandbits(64)

    def spawn(self) -> "RandomSource":
        return RandomSource(self.next_seed())

    def choice(self, seq):
        return self._rng.choice(seq)

    def sample(self, seq, k):
        return self._rng.sample(seq, k)

    def randrange(self, *args):
        return self._rng.randrange(*args)


@dataclass
class Matrix:
    rows: list[list]
    ncols: int
    field: FieldSpec = field(default_factory=FieldSpec)

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError(f"row of length {len(r)} in a matrix with {self.ncols} columns")

    @classmethod
    def from_ints(cls, rows: Sequence[Sequence[int]], fs: FieldSpec | None = None) -> "Matrix":
        fs = fs or FieldSpec()
        rows = [[fs.element(x) for x in r] for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(rows, ncols, fs)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, fs: FieldSpec | None = None) -> "Matrix":
        fs = fs or FieldSpec()
        z = fs.element(0)
        return cls([[z] * ncols for _ in range(nrows)], ncols, fs)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix([[] for _ in range(self.ncols)], 0, self.field)
        return Matrix([list(c) for c in zip(*self.rows)], self.nrows, self.field)

    def matvec(self, v: Sequence) -> list:
        p = self.field.prime
        out = [sum(a * b for a, b in zip(r, v)) for r in self.rows]
        return out if p is None else [x % p for x in out]

    def select_rows(self, keep: Sequence[int]) -> "Matrix":
        return Matrix([self.rows[i] for i in keep], self.ncols, self.field)


def _eliminate(m: Matrix, full: bool):
    """Gauss-Jordan (``full``) or plain forward elimination.

    Returns the nonzero rows of the echelon form and the pivot columns.
    """
    p = m.field.prime
    rows = [list(r) for r in m.rows]
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = m.field.inv(rows[r][c])
        if p is None:
            prow = [x * inv for x in rows[r]]
        else:
            prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        start = 0 if full else r + 1
        for i in range(start, nrows):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            if p is None:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
            else:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: Matrix) -> int:
    """Exact rank."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    # eliminating along the shorter side is cheaper
    if m.nrows > m.ncols:
        m = m.transpose()
    return len(_eliminate(m, full=False)[1])


def rref(m: Matrix) -> tuple[list[list], list[int]]:
    return _eliminate(m, full=True)


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the right null space ``{v : m v = 0}``."""
    fs = m.field
    zero, one = fs.element(0), fs.element(1)
    reduced, pivots = rref(m) if m.nrows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [zero] * m.ncols
        v[free] = one
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = fs.element(-row[free])
        basis.append(v)
    return basis


def random_config(n: int, d: int, rng: RandomSource, fs: FieldSpec | None = None) -> tuple:
    """``n`` points in F^d with independently drawn coordinates."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    fs = fs or FieldSpec()
    return tuple(tuple(rng.element(fs) for _ in range(d)) for _ in range(n))

"""Exact linear algebra over cyclotomic fields.

Matrices are immutable row-tuples of :class:`~glider_ring.cyclotomic.Cyc`
scalars sharing one conductor.  Elimination is plain Gauss-Jordan with exact
division; canonical reduced row echelon form doubles as the canonical
representative of a row space (and hence of a point on a Grassmannian).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .cyclotomic import Cyc


def _common_conductor(values) -> int:
    n = 1
    for v in values:
        if isinstance(v, Cyc):
            n = n * v.n // gcd(n, v.n)
    return n


class CycMatrix:
    """Immutable matrix with entries in one cyclotomic field Q(zeta_n)."""

    __slots__ = ("rows", "nrows", "ncols", "n")

    def __init__(self, rows, n: int | None = None, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            assert len(r) == ncols, "ragged matrix"
        if n is None:
            n = _common_conductor(x for r in rows for x in r)
        fixed = []
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, (int, Fraction)):
                    x = Cyc.rational(x, n)
                elif x.n != n:
                    x = x.embed(n)
                row.append(x)
            fixed.append(tuple(row))
        object.__setattr__(self, "rows", tuple(fixed))
        object.__setattr__(self, "nrows", len(fixed))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "n", n)

    def __setattr__(self, *a):
        raise AttributeError("CycMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(k: int, n: int = 1) -> "CycMatrix":
        return CycMatrix([[Cyc.one(n) if i == j else Cyc.zero(n)
                           for j in range(k)] for i in range(k)], n)

    @staticmethod
    def zeros(r: int, c: int, n: int = 1) -> "CycMatrix":
        z = Cyc.zero(n)
        return CycMatrix([[z] * c for _ in range(r)], n, ncols=c)

    @staticmethod
    def row_vector(v, n: int | None = None) -> "CycMatrix":
        return CycMatrix([list(v)], n)

    # -- shape and access --------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    # -- arithmetic --------------------------------------------------------

    def _join(self, other: "CycMatrix") -> int:
        return self.n * other.n // gcd(self.n, other.n)

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        assert self.shape == other.shape
        m = self._join(other)
        return CycMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.rows, other.rows)], m)

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        assert self.shape == other.shape
        m = self._join(other)
        return CycMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.rows, other.rows)], m)

    def scale(self, s) -> "CycMatrix":
        return CycMatrix([[x * s for x in r] for r in self.rows])

    def __neg__(self) -> "CycMatrix":
        return CycMatrix([[-x for x in r] for r in self.rows], self.n)

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        assert self.ncols == other.nrows, (self.shape, other.shape)
        m = self._join(other)
        z = Cyc.zero(m)
        ocols = list(zip(*other.rows)) if other.rows else []
        out = []
        for ra in self.rows:
            row = []
            for cb in ocols:
                acc = z
                for a, b in zip(ra, cb):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CycMatrix(out, m)

    def apply(self, vec):
        """Matrix times column vector (vector given/returned as a tuple)."""
        assert len(vec) == self.ncols
        m = _common_conductor(vec)
        m = self.n * m // gcd(self.n, m)
        z = Cyc.zero(m)
        out = []
        for r in self.rows:
            acc = z
            for a, v in zip(r, vec):
                if not a.is_zero():
                    av = a * v if isinstance(v, Cyc) else a * Fraction(v)
                    acc = acc + av
            out.append(acc.embed(m) if acc.n != m else acc)
        return tuple(out)

    def transpose(self) -> "CycMatrix":
        return CycMatrix([list(c) for c in zip(*self.rows)] if self.rows
                         else [], self.n)

    def conj_transpose(self) -> "CycMatrix":
        return CycMatrix([[x.conj() for x in c] for c in zip(*self.rows)]
                         if self.rows else [], self.n)

    def kron(self, other: "CycMatrix") -> "CycMatrix":
        """Kronecker (tensor) product."""
        m = self._join(other)
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        return CycMatrix(out, m)

    def trace(self) -> Cyc:
        assert self.nrows == self.ncols
        acc = Cyc.zero(self.n)
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        m = self._join(other)
        return all(a.embed(m) == b.embed(m)
                   for ra, rb in zip(self.rows, other.rows)
                   for a, b in zip(ra, rb))

    def __hash__(self):
        return hash((self.n, self.rows))

    def sort_key(self):
        return tuple(x.sort_key() for r in self.rows for x in r)

    # -- formatting / serialization ---------------------------------------

    def __str__(self):
        cells = [[str(x) for x in r] for r in self.rows]
        widths = [max((len(cells[i][j]) for i in range(self.nrows)), default=0)
                  for j in range(self.ncols)]
        return "\n".join("[" + "  ".join(c.rjust(w) for c, w in zip(r, widths))
                         + "]" for r in cells)

    def __repr__(self):
        return f"CycMatrix({self.nrows}x{self.ncols}, n={self.n})"

    def to_json(self):
        return {"n": self.n, "shape": [self.nrows, self.ncols],
                "rows": [[x.to_json() for x in r] for r in self.rows]}

    @staticmethod
    def from_json(data) -> "CycMatrix":
        rows = [[Cyc.from_json(x) for x in r] for r in data["rows"]]
        if not rows or not rows[0]:
            r, c = data["shape"]
            return CycMatrix.zeros(r, c, data["n"])
        return CycMatrix(rows, data["n"])


def rref(M: CycMatrix) -> tuple[CycMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns ``(R, rank, pivot_cols)``; ``R`` has unit pivots, zeros above and
    below each pivot, and is the unique canonical representative of the row
    space of ``M``.
    """
    rows = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return CycMatrix(rows, M.n), len(pivots), tuple(pivots)


def rank(M: CycMatrix) -> int:
    return rref(M)[1]


def solve(M: CycMatrix, b):
    """One exact solution of M x = b, or the string ``"inconsistent"``.

    Free variables are set to zero, so the answer is deterministic.
    """
    assert len(b) == M.nrows
    aug = CycMatrix([list(r) + [v] for r, v in zip(M.rows, b)])
    if M.nrows == 0:
        return tuple(Cyc.zero(M.n) for _ in range(M.ncols))
    R, rk, piv = rref(aug)
    if piv and piv[-1] == M.ncols:
        return "inconsistent"
    x = [Cyc.zero(R.n) for _ in range(M.ncols)]
    for i, p in enumerate(piv):
        x[p] = R.rows[i][M.ncols]
    return tuple(x)


def inverse(M: CycMatrix) -> CycMatrix:
    """Exact matrix inverse; raises on singular input."""
    assert M.nrows == M.ncols
    k = M.nrows
    eye = CycMatrix.identity(k, M.n)
    aug = CycMatrix([list(r) + list(e) for r, e in zip(M.rows, eye.rows)], M.n)
    R, rk, _ = rref(aug)
    if rk < k:
        raise ZeroDivisionError("matrix is singular")
    return CycMatrix([r[k:] for r in R.rows], R.n)


def kernel(M: CycMatrix) -> CycMatrix:
    """Basis of the right null space, rows in canonical RREF form.

    Returns a matrix whose rows span {x : M x = 0}; a 0 x ncols matrix means
    the kernel is trivial.
    """
    R, rk, piv = rref(M)
    free = [c for c in range(M.ncols) if c not in piv]
    if not free:
        return CycMatrix.zeros(0, M.ncols, M.n)
    basis = []
    for f in free:
        v = [Cyc.zero(R.n) for _ in range(M.ncols)]
        v[f] = Cyc.one(R.n)
        for i, p in enumerate(piv):
            v[p] = -R.rows[i][f]
        basis.append(v)
    K, krank, _ = rref(CycMatrix(basis, R.n))
    assert krank == len(basis)
    return K

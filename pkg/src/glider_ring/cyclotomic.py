"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored on the power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n),
with coefficients reduced modulo the n-th cyclotomic polynomial.  The
representation is canonical: two equal field elements always have identical
coefficient tuples, so equality, hashing and sorting are exact and cheap.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (remainder must be zero)."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(a[i + len(b) - 1], b[-1])
        assert r == 0
        out[i] = q
        for j, bj in enumerate(b):
            a[i + j] -= q * bj
    assert all(c == 0 for c in a)
    return out


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


_FIELD_CACHE: dict[int, tuple[int, list[tuple[int, ...]]]] = {}


def _field(n: int) -> tuple[int, list[tuple[int, ...]]]:
    """(phi(n), table) where table[k] = coefficients of z^k on the power basis.

    The table covers k = 0 .. max(n, 2*phi(n)) - 1, enough for products of
    reduced elements and for conjugation z^k -> z^(n-k).
    """
    cached = _FIELD_CACHE.get(n)
    if cached is not None:
        return cached
    phi_poly = cyclotomic_polynomial(n)
    phi = len(phi_poly) - 1
    # x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
    top = [-c for c in phi_poly[:-1]]
    table: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    limit = max(n, 2 * phi)
    for _ in range(limit):
        table.append(tuple(cur))
        lead = cur[phi - 1] if phi > 0 else 0
        nxt = [0] + cur[:-1]
        if phi > 0:
            nxt = nxt[:phi]
            if lead:
                nxt = [nxt[i] + lead * top[i] for i in range(phi)]
        cur = nxt
    _FIELD_CACHE[n] = (phi, table)
    return phi, table


def _coerce_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot build a cyclotomic scalar from {type(x).__name__}")


class Cyc:
    """A scalar in Q(zeta_n), canonically reduced.

    ``n`` is the conductor, ``c`` the coefficient tuple on the power basis
    (length phi(n), entries Fraction).  Instances are immutable and hashable;
    equality and hashing include the conductor, so scalars inside one group
    context (which shares a single conductor) behave as plain field values.
    Use :func:`eq_embedded` to compare values living in different conductors.
    """

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs: Iterable[Fraction]):
        phi, _ = _field(n)
        c = tuple(_coerce_fraction(x) for x in coeffs)
        assert len(c) == phi
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", c)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("Cyc is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int = 1) -> "Cyc":
        phi, _ = _field(n)
        return Cyc(n, (Fraction(0),) * phi)

    @staticmethod
    def one(n: int = 1) -> "Cyc":
        return Cyc.rational(1, n)

    @staticmethod
    def rational(q, n: int = 1) -> "Cyc":
        phi, _ = _field(n)
        q = _coerce_fraction(q)
        return Cyc(n, (q,) + (Fraction(0),) * (phi - 1))

    @staticmethod
    def root(n: int, k: int = 1) -> "Cyc":
        """zeta_n^k as an element of Q(zeta_n)."""
        phi, table = _field(n)
        return Cyc(n, tuple(Fraction(x) for x in table[k % n]))

    # -- conversions -------------------------------------------------------

    def embed(self, m: int) -> "Cyc":
        """Image under Q(zeta_n) -> Q(zeta_m) for n | m (zeta_n -> zeta_m^(m/n))."""
        if m == self.n:
            return self
        assert m % self.n == 0
        step = m // self.n
        out = Cyc.zero(m)
        for j, cj in enumerate(self.c):
            if cj:
                out = out + Cyc.root(m, j * step) * cj
        return out

    def descend(self, m: int) -> "Cyc":
        """Rewrite in Q(zeta_m) for m | n; raises if the value is not there."""
        if m == self.n:
            return self
        assert self.n % m == 0
        phi_m, _ = _field(m)
        phi_n, _ = _field(self.n)
        # columns: coefficients of zeta_m^j embedded in Q(zeta_n)
        cols = [Cyc.root(m, j).embed(self.n).c for j in range(phi_m)]
        # solve the rational system cols * x = self.c by Gauss elimination
        aug = [[cols[j][i] for j in range(phi_m)] + [self.c[i]]
               for i in range(phi_n)]
        piv_rows = []
        r = 0
        for c in range(phi_m):
            pr = next((i for i in range(r, phi_n) if aug[i][c] != 0), None)
            if pr is None:
                continue
            aug[r], aug[pr] = aug[pr], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(phi_n):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
            piv_rows.append(c)
            r += 1
        out = [Fraction(0)] * phi_m
        for i, c in enumerate(piv_rows):
            out[c] = aug[i][phi_m]
        for i in range(r, phi_n):
            if aug[i][phi_m] != 0:
                raise ValueError(f"{self} does not lie in Q(zeta_{m})")
        got = Cyc(m, out)
        assert got.embed(self.n) == self
        return got

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def as_int(self) -> int:
        f = self.as_fraction()
        if f.denominator != 1:
            raise ValueError(f"{self} is not a rational integer")
        return f.numerator

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other) -> tuple["Cyc", "Cyc"]:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other, self.n)
        if not isinstance(other, Cyc):
            return NotImplemented, NotImplemented
        if self.n == other.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyc) else -_coerce_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        phi, table = _field(a.n)
        acc = [Fraction(0)] * phi
        for i, ai in enumerate(a.c):
            if ai:
                for j, bj in enumerate(b.c):
                    if bj:
                        v = ai * bj
                        for k, t in enumerate(table[i + j]):
                            if t:
                                acc[k] += v * t
        return Cyc(a.n, acc)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        if self.is_rational():
            return Cyc.rational(1 / self.c[0], self.n)
        # work in Q[x] modulo the cyclotomic polynomial
        mod = [Fraction(x) for x in cyclotomic_polynomial(self.n)]
        a = list(self.c)
        while a and a[-1] == 0:
            a.pop()
        # extended gcd of a and mod: find u with u*a = gcd (a unit) mod `mod`
        r0, r1 = mod, a
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def degree(p):
            return len(p) - 1

        def step(num, den):
            q = [Fraction(0)] * (degree(num) - degree(den) + 1)
            num = list(num)
            for i in range(len(q) - 1, -1, -1):
                coef = num[i + degree(den)] / den[-1]
                q[i] = coef
                for j, dj in enumerate(den):
                    num[i + j] -= coef * dj
            while num and num[-1] == 0:
                num.pop()
            return q, num

        def poly_addmul(p, q, f):
            # p - q*f
            out = list(p) + [Fraction(0)] * max(0, len(q) + len(f) - 1 - len(p))
            for i, qi in enumerate(q):
                if qi:
                    for j, fj in enumerate(f):
                        out[i + j] -= qi * fj
            while out and out[-1] == 0:
                out.pop()
            return out

        while degree(r1) > 0:
            f, r = step(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_addmul(s0, s1, f)
        assert r1, "cyclotomic polynomial must be coprime to nonzero element"
        unit = r1[0]
        phi, _ = _field(self.n)
        inv = [x / unit for x in s1] + [Fraction(0)] * (phi - len(s1))
        out = Cyc(self.n, inv[:phi])
        assert (out * self) == Cyc.one(self.n)
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / Cyc.rational(other, self.n)
        a, b = self._pair(other)
        return a * b.inverse()

    def conj(self) -> "Cyc":
        """Complex conjugation zeta^k -> zeta^(-k)."""
        _, table = _field(self.n)
        phi, _ = _field(self.n)
        acc = [Fraction(0)] * phi
        for j, cj in enumerate(self.c):
            if cj:
                for k, t in enumerate(table[(self.n - j) % self.n]):
                    if t:
                        acc[k] += cj * t
        return Cyc(self.n, acc)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyc.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        return hash((self.n, self.c))

    def sort_key(self):
        return tuple((x.numerator, x.denominator) for x in self.c)

    # -- formatting / serialization ---------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for j, cj in enumerate(self.c):
            if cj == 0:
                continue
            if j == 0:
                parts.append(str(cj))
                continue
            z = f"z{self.n}" if j == 1 else f"z{self.n}^{j}"
            if cj == 1:
                term = z
            elif cj == -1:
                term = f"-{z}"
            else:
                term = f"{cj}*{z}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__

    def to_json(self):
        return [self.n, [[j, f"{x.numerator}/{x.denominator}"]
                         for j, x in enumerate(self.c) if x != 0]]

    @staticmethod
    def from_json(data) -> "Cyc":
        n, entries = data
        phi, _ = _field(n)
        coeffs = [Fraction(0)] * phi
        for j, s in entries:
            coeffs[j] = Fraction(s)
        return Cyc(n, coeffs)


def eq_embedded(a: Cyc, b: Cyc) -> bool:
    """Value equality across conductors (embed both into the lcm)."""
    m = a.n * b.n // gcd(a.n, b.n)
    return a.embed(m) == b.embed(m)


def cyc_arith(op: str, a: Cyc, b: Cyc | None = None):
    """Dispatcher for the scalar field operations.

    ``op`` is one of ``add``, ``mul``, ``inv``, ``conj``, ``eq``.  Binary
    operations auto-embed operands with different conductors into the lcm
    conductor.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "conj":
        return a.conj()
    if op == "eq":
        return eq_embedded(a, b)
    raise ValueError(f"unknown scalar op {op!r}")

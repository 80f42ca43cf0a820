"""Finite groups as dense Cayley tables, with the derived data the rest of
the engine consumes: conjugacy classes, commutator structure, quotients, and
the full subgroup lattice.

Elements are integer indices into an order x order multiplication table.
Everything is validated at construction time and the canonical orderings
(elements, classes, subgroups) are deterministic, so downstream canonical
forms are stable across sessions.
"""

from __future__ import annotations

from math import gcd

import numpy as np


class GroupDataError(ValueError):
    """Raised for invalid group input (bad table, action, or cocycle)."""


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------

class FiniteGroup:
    """A finite group given by its Cayley table of element indices."""

    def __init__(self, mul, element_names=None, metadata=None, validate=True):
        mul = np.asarray(mul, dtype=np.int32)
        n = mul.shape[0]
        if mul.shape != (n, n) or n == 0:
            raise GroupDataError(f"multiplication table must be square, got {mul.shape}")
        self.order = n
        self.mul = mul
        if element_names is None:
            element_names = [str(i) for i in range(n)]
        if len(element_names) != n:
            raise GroupDataError("element_names length does not match order")
        self.element_names = list(element_names)
        self.metadata = dict(metadata or {})
        self.identity = self._find_identity()
        self.inv = self._find_inverses()
        if validate:
            self._validate()
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)
        self._cache = {}
        # (ancestor group, element map into it); identity for a root group.
        # Overwritten when this group is built as a standalone subgroup copy.
        self._origin = (self, tuple(range(n)))

    # -- construction-time checks -----------------------------------------

    def _find_identity(self):
        n = self.order
        ar = np.arange(n)
        for e in range(n):
            if np.array_equal(self.mul[e], ar) and np.array_equal(self.mul[:, e], ar):
                return e
        raise GroupDataError("table has no two-sided identity")

    def _find_inverses(self):
        n = self.order
        inv = np.full(n, -1, dtype=np.int32)
        for g in range(n):
            hits = np.nonzero(self.mul[g] == self.identity)[0]
            if len(hits) != 1 or self.mul[hits[0], g] != self.identity:
                raise GroupDataError(f"element {g} has no two-sided inverse")
            inv[g] = hits[0]
        return inv

    def _validate(self):
        n = self.order
        if self.mul.min() < 0 or self.mul.max() >= n:
            raise GroupDataError("table entries out of range")
        ar = np.arange(n)
        for g in range(n):
            if not (np.array_equal(np.sort(self.mul[g]), ar)
                    and np.array_equal(np.sort(self.mul[:, g]), ar)):
                raise GroupDataError(f"row/column {g} is not a permutation")
        if n <= 64:
            left = self.mul[self.mul]              # (g,h,k) -> (gh)k
            right = self.mul[:, self.mul]          # (g,h,k) -> g(hk)
            if not np.array_equal(left, right):
                raise GroupDataError("multiplication table is not associative")
        else:
            rng = np.random.default_rng(0)
            g, h, k = rng.integers(0, n, size=(3, 4096))
            if not np.array_equal(self.mul[self.mul[g, h], k],
                                  self.mul[g, self.mul[h, k]]):
                raise GroupDataError("multiplication table is not associative")

    # -- basic element operations -----------------------------------------

    def mulx(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(int(self.inv[g]), -k)
        out = self.identity
        base = g
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def exponent(self) -> int:
        if "exponent" not in self._cache:
            e = 1
            for g in range(self.order):
                o = self.element_order(g)
                e = e * o // gcd(e, o)
            self._cache["exponent"] = e
        return self._cache["exponent"]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def name_of(self, g: int) -> str:
        return self.element_names[g]

    def index_of(self, name: str) -> int:
        try:
            return self.element_names.index(name)
        except ValueError:
            raise GroupDataError(f"no element named {name!r}") from None

    def conjugate(self, g: int, x: int) -> int:
        """g x g^{-1}."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


class Subgroup:
    """A subgroup of a fixed parent group, stored as sorted element indices."""

    def __init__(self, parent: FiniteGroup, elements, check=True):
        self.parent = parent
        self.elements = tuple(sorted(set(int(x) for x in elements)))
        if check:
            s = frozenset(self.elements)
            if parent.identity not in s:
                raise GroupDataError("subgroup does not contain the identity")
            arr = np.asarray(self.elements)
            prods = parent.mul[np.ix_(arr, arr)]
            if not frozenset(int(x) for x in prods.ravel()) <= s:
                raise GroupDataError("subgroup is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: int) -> bool:
        return g in self._set()

    def _set(self) -> frozenset:
        if not hasattr(self, "_fs"):
            self._fs = frozenset(self.elements)
        return self._fs

    def __le__(self, other: "Subgroup") -> bool:
        return self._set() <= other._set()

    def __lt__(self, other: "Subgroup") -> bool:
        return self._set() < other._set()

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def is_normal(self) -> bool:
        G = self.parent
        s = self._set()
        arr = np.asarray(self.elements)
        for g in range(G.order):
            conj = G.mul[G.mul[g, arr], G.inv[g]]
            if frozenset(int(x) for x in conj) != s:
                return False
        return True

    def as_group(self):
        """(H, embed) with H a standalone FiniteGroup and embed[i] the parent
        index of H's element i.

        Cached on the outermost ancestor per element set, so equal subgroups
        share one standalone group object even when reached through different
        towers of nested subgroups (characters and glider data attached to it
        then compare by identity).
        """
        G = self.parent
        embed = list(self.elements)
        if len(embed) == G.order:
            return G, embed
        root, to_root = G._origin
        key = ("as_group", tuple(to_root[g] for g in embed))
        if key in root._cache:
            return root._cache[key], embed
        pos = {g: i for i, g in enumerate(embed)}
        k = len(embed)
        table = [[pos[int(G.mul[embed[i], embed[j]])] for j in range(k)]
                 for i in range(k)]
        names = [G.element_names[g] for g in embed]
        H = FiniteGroup(table, names, validate=False)
        H._origin = (root, key[1])
        root._cache[key] = H
        return H, embed

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={self.elements})"


class QuotientGroup:
    """G/N packaged with its cosets and the projection map."""

    def __init__(self, parent: FiniteGroup, normal_subgroup: Subgroup,
                 cosets, quotient: FiniteGroup, projection):
        self.parent = parent
        self.normal_subgroup = normal_subgroup
        self.cosets = cosets              # list of sorted element tuples
        self.quotient = quotient          # FiniteGroup on coset indices
        self.projection = projection      # parent index -> coset index

    def __repr__(self):
        return (f"QuotientGroup(parent order {self.parent.order} / "
                f"N order {self.normal_subgroup.order})")


# ---------------------------------------------------------------------------
# element-set utilities
# ---------------------------------------------------------------------------

def closure(G: FiniteGroup, seed) -> tuple:
    """Indices of the subgroup generated by ``seed``, sorted."""
    cur = np.unique(np.asarray(sorted(set(int(x) for x in seed) | {G.identity}),
                               dtype=np.int32))
    while True:
        prods = np.unique(G.mul[np.ix_(cur, cur)])
        if len(prods) == len(cur):
            return tuple(int(x) for x in cur)
        cur = prods


def generated_subgroup(G: FiniteGroup, seed) -> Subgroup:
    return Subgroup(G, closure(G, seed), check=False)


def normalizer(G: FiniteGroup, elements) -> tuple:
    arr = np.asarray(sorted(elements), dtype=np.int32)
    s = frozenset(int(x) for x in arr)
    out = []
    for g in range(G.order):
        conj = G.mul[G.mul[g, arr], G.inv[g]]
        if frozenset(int(x) for x in conj) == s:
            out.append(g)
    return tuple(out)


def center(G: FiniteGroup) -> Subgroup:
    if "center" not in G._cache:
        mask = (G.mul == G.mul.T).all(axis=1)
        G._cache["center"] = Subgroup(G, np.nonzero(mask)[0], check=False)
    return G._cache["center"]


# ---------------------------------------------------------------------------
# conjugacy classes, commutator structure, quotients
# ---------------------------------------------------------------------------

def conjugacy_classes(G: FiniteGroup) -> list:
    """Partition of element indices; classes sorted by (size, min element)."""
    if "classes" in G._cache:
        return G._cache["classes"]
    seen = set()
    classes = []
    for g in range(G.order):
        if g in seen:
            continue
        orbit = frozenset(G.conjugate(h, g) for h in range(G.order))
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: (len(c), c[0]))
    G._cache["classes"] = classes
    return classes


def commutator_subgroup(G: FiniteGroup, A, B) -> tuple:
    """Subgroup generated by commutators [a,b], a in A, b in B."""
    comms = set()
    for a in A:
        for b in B:
            comms.add(int(G.mul[G.mul[a, b], G.mul[G.inv[a], G.inv[b]]]))
    return closure(G, comms)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    if "derived" not in G._cache:
        full = range(G.order)
        G._cache["derived"] = Subgroup(G, commutator_subgroup(G, full, full),
                                       check=False)
    return G._cache["derived"]


def quotient_group(G: FiniteGroup, N: Subgroup) -> QuotientGroup:
    if N.parent is not G:
        raise GroupDataError("subgroup belongs to a different parent group")
    if not N.is_normal():
        raise GroupDataError("subgroup is not normal")
    arr = np.asarray(N.elements, dtype=np.int32)
    coset_of = {}
    cosets = []
    for g in range(G.order):
        if g in coset_of:
            continue
        cs = tuple(sorted(int(x) for x in G.mul[g, arr]))
        for x in cs:
            coset_of[x] = len(cosets)
        cosets.append(cs)
    # canonical coset order: identity coset first, the rest by least element
    order = sorted(range(len(cosets)),
                   key=lambda i: (0 if G.identity in cosets[i] else 1,
                                  cosets[i][0]))
    relabel = {old: new for new, old in enumerate(order)}
    cosets = [cosets[i] for i in order]
    projection = np.array([relabel[coset_of[g]] for g in range(G.order)],
                          dtype=np.int32)
    reps = [c[0] for c in cosets]
    k = len(cosets)
    table = [[int(projection[G.mul[reps[i], reps[j]]]) for j in range(k)]
             for i in range(k)]
    names = [G.element_names[r] for r in reps]
    Q = FiniteGroup(table, names, validate=False)
    return QuotientGroup(G, N, cosets, Q, projection)


def abelianization(G: FiniteGroup) -> QuotientGroup:
    if "abelianization" not in G._cache:
        G._cache["abelianization"] = quotient_group(G, derived_subgroup(G))
    return G._cache["abelianization"]


def lower_central_series(G: FiniteGroup) -> list:
    """G = G_1 >= [G,G] >= [G,[G,G]] >= ..., listed until it stabilizes."""
    series = [Subgroup(G, range(G.order), check=False)]
    full = range(G.order)
    while True:
        nxt = commutator_subgroup(G, full, series[-1].elements)
        if nxt == series[-1].elements:
            break
        series.append(Subgroup(G, nxt, check=False))
        if len(nxt) == 1:
            break
    return series


def nilpotency_class(G: FiniteGroup):
    series = lower_central_series(G)
    if series[-1].order == 1:
        return len(series) - 1
    return "not nilpotent"


def is_solvable(G: FiniteGroup) -> bool:
    cur = tuple(range(G.order))
    while True:
        nxt = commutator_subgroup(G, cur, cur)
        if nxt == cur:
            return len(cur) == 1
        cur = nxt


# ---------------------------------------------------------------------------
# subgroup lattice
# ---------------------------------------------------------------------------

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
           61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131,
           137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197,
           199, 211, 223, 227, 229, 233, 239, 241, 251)


def _lattice_sets_cyclic_extension(G: FiniteGroup):
    """All subgroups of a solvable group by cyclic extension from {e}."""
    found = {frozenset((G.identity,))}
    work = [(G.identity,)]
    while work:
        H = work.pop()
        Hset = frozenset(H)
        norm = normalizer(G, H)
        # one candidate generator per nontrivial coset of H in its normalizer
        seen_cosets = set(Hset)
        for g in norm:
            if g in seen_cosets:
                continue
            arr = np.asarray(H, dtype=np.int32)
            seen_cosets.update(int(x) for x in G.mul[g, arr])
            # order of g modulo H; extend only when it is prime
            m, x = 1, g
            while x not in Hset:
                x = int(G.mul[x, g])
                m += 1
            if m not in _PRIMES:
                continue
            ext = closure(G, H + (g,))
            if len(ext) != len(H) * m:
                continue
            fs = frozenset(ext)
            if fs not in found:
                found.add(fs)
                work.append(ext)
    return found


def _lattice_sets_join_closure(G: FiniteGroup):
    """All subgroups of any group: join-closure of the cyclic subgroups."""
    found = {frozenset(closure(G, (g,))) for g in range(G.order)}
    found.add(frozenset((G.identity,)))
    work = list(found)
    while work:
        A = work.pop()
        for B in list(found):
            if A <= B or B <= A:
                continue
            J = frozenset(closure(G, A | B))
            if J not in found:
                found.add(J)
                work.append(J)
    return found


class SubgroupLattice:
    """All subgroups of a group, canonically ordered, with inclusion."""

    def __init__(self, group: FiniteGroup, subgroups, inclusion):
        self.group = group
        self.subgroups = subgroups
        self.inclusion = inclusion      # inclusion[i, j] <=> S_i <= S_j
        self._index = {s.elements: i for i, s in enumerate(subgroups)}

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, i):
        return self.subgroups[i]

    def index_of(self, elements) -> int:
        key = tuple(sorted(set(int(x) for x in elements)))
        if key not in self._index:
            raise GroupDataError("element set is not a subgroup in the lattice")
        return self._index[key]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.inclusion[i, j])


def subgroup_lattice(G: FiniteGroup, bound: int = 256) -> SubgroupLattice:
    if G.order > bound:
        raise GroupDataError(
            f"group order {G.order} exceeds the subgroup-lattice bound {bound}")
    if "lattice" in G._cache:
        return G._cache["lattice"]
    if is_solvable(G):
        sets = _lattice_sets_cyclic_extension(G)
    else:
        sets = _lattice_sets_join_closure(G)
    subs = [Subgroup(G, sorted(s), check=False) for s in sets]
    subs.sort(key=lambda s: (s.order, s.elements))
    k = len(subs)
    incl = np.zeros((k, k), dtype=bool)
    fsets = [s._set() for s in subs]
    for i in range(k):
        for j in range(k):
            incl[i, j] = fsets[i] <= fsets[j]
    lat = SubgroupLattice(G, subs, incl)
    G._cache["lattice"] = lat
    return lat


def maximal_subgroups_between(G: FiniteGroup, lower: Subgroup,
                              upper: Subgroup) -> list:
    """All L with lower <= L < upper, maximal among such."""
    if not lower <= upper:
        raise GroupDataError("lower subgroup is not contained in upper")
    lat = subgroup_lattice(G)
    lo, up = lower._set(), upper._set()
    cand = [s for s in lat if lo <= s._set() and s._set() < up]
    out = [s for s in cand
           if not any(s._set() < t._set() for t in cand)]
    out.sort(key=lambda s: (s.order, s.elements))
    return out


# ---------------------------------------------------------------------------
# catalog constructions
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupDataError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, [str(i) for i in range(n)],
                       metadata={"name": f"cyclic:{n}"})


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given order (order = 2m, m >= 2)."""
    if order < 4 or order % 2:
        raise GroupDataError("dihedral order must be an even integer >= 4")
    m = order // 2

    def idx(a, b):
        return b * m + a

    table = np.zeros((order, order), dtype=np.int32)
    for a in range(m):
        for b in range(2):
            for a2 in range(m):
                for b2 in range(2):
                    # r^a s^b * r^a2 s^b2 = r^(a + (-1)^b a2) s^(b+b2)
                    na = (a + (a2 if b == 0 else -a2)) % m
                    table[idx(a, b), idx(a2, b2)] = idx(na, (b + b2) % 2)
    names = []
    for b in range(2):
        for a in range(m):
            ra = "" if a == 0 else ("r" if a == 1 else f"r{a}")
            sb = "s" if b else ""
            names.append(ra + sb if (ra or sb) else "1")
    return FiniteGroup(table, names, metadata={"name": f"dihedral:{order}"})


def quaternion_group() -> FiniteGroup:
    """Q8 on the elements 1, -1, i, -i, j, -j, k, -k (in that order)."""
    axes = ["1", "i", "j", "k"]
    elems = [(s, a) for a in axes for s in (1, -1)]

    def qmul(x, y):
        (s1, a1), (s2, a2) = x, y
        if a1 == "1":
            return (s1 * s2, a2)
        if a2 == "1":
            return (s1 * s2, a1)
        if a1 == a2:
            return (-s1 * s2, "1")
        prod = {("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")}
        s, a = prod[(a1, a2)]
        return (s * s1 * s2, a)

    pos = {e: n for n, e in enumerate(elems)}
    table = [[pos[qmul(x, y)] for y in elems] for x in elems]
    names = [("" if s == 1 else "-") + a for (s, a) in elems]
    return FiniteGroup(table, names, metadata={"name": "q8"})


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/p, as triples (a, b, c)."""
    if p < 2:
        raise GroupDataError("heisenberg parameter must be >= 2")
    trips = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    pos = {t: i for i, t in enumerate(trips)}
    table = [[pos[((x[0] + y[0]) % p, (x[1] + y[1]) % p,
                   (x[2] + y[2] + x[0] * y[1]) % p)]
              for y in trips] for x in trips]
    names = [f"({a},{b},{c})" for a, b, c in trips]
    return FiniteGroup(table, names, metadata={"name": f"heisenberg:{p}"})


def _cycle_notation(perm) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) if parts else "e"


def _perm_group(perms, meta_name):
    perms = sorted(perms)
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(a[b[x]] for x in range(len(a)))] for b in perms]
             for a in perms]
    names = [_cycle_notation(p) for p in perms]
    return FiniteGroup(table, names, metadata={"name": meta_name})


def symmetric3_group() -> FiniteGroup:
    import itertools
    return _perm_group(list(itertools.permutations(range(3))), "s3")


def alternating4_group() -> FiniteGroup:
    import itertools

    def sign(p):
        s = 1
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    s = -s
        return s

    evens = [p for p in itertools.permutations(range(4)) if sign(p) == 1]
    return _perm_group(evens, "a4")


def klein_group() -> FiniteGroup:
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return FiniteGroup(table, ["1", "a", "b", "ab"], metadata={"name": "c2xc2"})


def direct_product(G: FiniteGroup, H: FiniteGroup, names=None) -> FiniteGroup:
    n, m = G.order, H.order

    def idx(i, j):
        return i * m + j

    table = np.zeros((n * m, n * m), dtype=np.int32)
    for i in range(n):
        for j in range(m):
            for i2 in range(n):
                for j2 in range(m):
                    table[idx(i, j), idx(i2, j2)] = idx(int(G.mul[i, i2]),
                                                        int(H.mul[j, j2]))
    if names is None:
        names = [f"({G.element_names[i]},{H.element_names[j]})"
                 for i in range(n) for j in range(m)]
    return FiniteGroup(table, names)


def semidirect_product(N: FiniteGroup, H: FiniteGroup, action,
                       names=None) -> FiniteGroup:
    """N x| H with H acting by automorphisms.

    ``action[h]`` is a permutation array on N's indices giving the
    automorphism alpha_h; the map h -> alpha_h must be a homomorphism.
    """
    n, m = N.order, H.order
    act = [np.asarray(action[h], dtype=np.int32) for h in range(m)]
    for h in range(m):
        a = act[h]
        if not np.array_equal(np.sort(a), np.arange(n)):
            raise GroupDataError(f"action of element {h} is not a bijection")
        if not np.array_equal(a[N.mul], N.mul[np.ix_(a, a)]):
            raise GroupDataError(f"action of element {h} is not an automorphism")
    for h1 in range(m):
        for h2 in range(m):
            if not np.array_equal(act[h1][act[h2]], act[int(H.mul[h1, h2])]):
                raise GroupDataError("action is not a homomorphism into Aut(N)")

    def idx(i, j):
        return i * m + j

    table = np.zeros((n * m, n * m), dtype=np.int32)
    for i in range(n):
        for j in range(m):
            for i2 in range(n):
                ai2 = int(act[j][i2])
                left = int(N.mul[i, ai2])
                for j2 in range(m):
                    table[idx(i, j), idx(i2, j2)] = idx(left, int(H.mul[j, j2]))
    if names is None:
        names = [f"({N.element_names[i]},{H.element_names[j]})"
                 for i in range(n) for j in range(m)]
    return FiniteGroup(table, names)


def cocycle_twist(G: FiniteGroup, quotient: QuotientGroup, b,
                  names=None, metadata=None) -> FiniteGroup:
    """Twisted group with product g *_b h = b(gbar, hbar) * g * h.

    ``quotient`` is G/Z for a central subgroup Z; ``b(q1, q2)`` returns a
    parent element index lying in Z.  The 2-cocycle identity and
    normalization b(e,q) = b(q,e) = e are validated before twisting.
    """
    Z = quotient.normal_subgroup._set()
    zg = center(G)._set()
    if not Z <= zg:
        raise GroupDataError("cocycle values must lie in a central subgroup")
    Q = quotient.quotient
    k = Q.order
    bv = [[int(b(q1, q2)) for q2 in range(k)] for q1 in range(k)]
    e = G.identity
    for q1 in range(k):
        for q2 in range(k):
            if bv[q1][q2] not in Z:
                raise GroupDataError("b is not a 2-cocycle: value outside Z")
    qe = int(quotient.projection[e])
    for q in range(k):
        if bv[qe][q] != e or bv[q][qe] != e:
            raise GroupDataError("b is not a 2-cocycle: not normalized")
    for x in range(k):
        for y in range(k):
            xy = int(Q.mul[x, y])
            for z in range(k):
                yz = int(Q.mul[y, z])
                lhs = int(G.mul[bv[x][y], bv[xy][z]])
                rhs = int(G.mul[bv[y][z], bv[x][yz]])
                if lhs != rhs:
                    raise GroupDataError("b is not a 2-cocycle: "
                                         "cocycle identity fails")
    proj = quotient.projection
    n = G.order
    table = np.zeros((n, n), dtype=np.int32)
    for g in range(n):
        for h in range(n):
            table[g, h] = G.mul[bv[int(proj[g])][int(proj[h])], G.mul[g, h]]
    return FiniteGroup(table, names or G.element_names, metadata=metadata)


def _g64_names():
    names = []
    for a in range(4):
        for bb in range(4):
            for s in range(2):
                for t in range(2):
                    parts = []
                    if a:
                        parts.append("n1" if a == 1 else f"n1^{a}")
                    if bb:
                        parts.append("n2" if bb == 1 else f"n2^{bb}")
                    if s:
                        parts.append("h1")
                    if t:
                        parts.append("h2")
                    names.append(" ".join(parts) if parts else "1")
    return names


def g64_232_group() -> FiniteGroup:
    """Order-64 class-2 group (Z4 x Z4) x| (C2 x C2).

    Generators n1, n2 of the normal Z4 x Z4 part and commuting involutions
    h1, h2 acting by h1 n2 h1 = n1^2 n2, h2 n1 h2 = n1 n2^2.
    """
    Zn = direct_product(cyclic_group(4), cyclic_group(4))

    def nidx(a, bb):
        return a * 4 + bb

    # the acting Klein group indexed by (s, t) -> s*2 + t, so that the
    # product indexing is the tuple layout a*16 + b*4 + s*2 + t
    Htable = [[i ^ j for j in range(4)] for i in range(4)]
    H = FiniteGroup(Htable, ["1", "h2", "h1", "h1 h2"], validate=False)
    action = []
    for h in range(4):
        s, t = divmod(h, 2)
        perm = np.zeros(16, dtype=np.int32)
        for a in range(4):
            for bb in range(4):
                perm[nidx(a, bb)] = nidx((a + 2 * s * bb) % 4,
                                         (bb + 2 * t * a) % 4)
        action.append(perm)
    G = semidirect_product(Zn, H, action, names=_g64_names())
    G.metadata.update({"name": "g64_232", "smallgroup_id": [64, 232]})
    return G


def g64_236_group() -> FiniteGroup:
    """Twist of g64_232 by the central 2-cocycle b = (n1^2)^(s s') (n2^2)^(t t')."""
    G = g64_232_group()
    z1 = G.index_of("n1^2")
    z2 = G.index_of("n2^2")
    Z = generated_subgroup(G, (z1, z2))
    quo = quotient_group(G, Z)

    def st_of(q):
        g = quo.cosets[q][0]
        return (g // 2) % 2, g % 2        # index layout: a*16 + b*4 + s*2 + t

    def b(q1, q2):
        s, t = st_of(q1)
        s2, t2 = st_of(q2)
        out = G.identity
        if s * s2:
            out = G.mulx(out, z1)
        if t * t2:
            out = G.mulx(out, z2)
        return out

    Gt = cocycle_twist(G, quo, b, names=G.element_names,
                       metadata={"name": "g64_236", "smallgroup_id": [64, 236]})
    return Gt


# ---------------------------------------------------------------------------
# construction dispatcher and file format
# ---------------------------------------------------------------------------

_CATALOG = {
    "q8": quaternion_group,
    "a4": alternating4_group,
    "s3": symmetric3_group,
    "c2xc2": klein_group,
    "g64_232": g64_232_group,
    "g64_236": g64_236_group,
}


def construct_group(spec) -> FiniteGroup:
    """Build a validated group from a descriptor.

    Accepted descriptors: a catalog name (``cyclic:n``, ``dihedral:n``,
    ``q8``, ``heisenberg:p``, ``a4``, ``s3``, ``c2xc2``, ``g64_232``,
    ``g64_236``), an explicit table ``{"table": [...], "names": [...]}``,
    ``{"direct": [specA, specB]}``, ``{"semidirect": {"normal": specN,
    "acting": specH, "action": [...]}}``, or an already-built FiniteGroup.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        name = spec.strip()
        if name in _CATALOG:
            return _CATALOG[name]()
        if ":" in name:
            kind, _, arg = name.partition(":")
            try:
                k = int(arg)
            except ValueError:
                raise GroupDataError(f"bad catalog parameter in {name!r}") from None
            if kind == "cyclic":
                return cyclic_group(k)
            if kind == "dihedral":
                return dihedral_group(k)
            if kind == "heisenberg":
                return heisenberg_group(k)
        raise GroupDataError(f"unknown group descriptor {spec!r}")
    if isinstance(spec, dict):
        if "table" in spec:
            return FiniteGroup(spec["table"], spec.get("names"))
        if "direct" in spec:
            a, b = spec["direct"]
            return direct_product(construct_group(a), construct_group(b))
        if "semidirect" in spec:
            d = spec["semidirect"]
            return semidirect_product(construct_group(d["normal"]),
                                      construct_group(d["acting"]),
                                      d["action"])
    raise GroupDataError(f"unknown group descriptor {spec!r}")


def parse_group_file(text: str) -> FiniteGroup:
    """Parse the text group format: ``order n``, n table rows, optional
    ``names ...`` line."""
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("order"):
        raise GroupDataError("group file must start with 'order n'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise GroupDataError("bad 'order' line in group file") from None
    if len(lines) < 1 + n:
        raise GroupDataError(f"expected {n} table rows, found {len(lines) - 1}")
    table = []
    for ln in lines[1:1 + n]:
        row = [int(tok) for tok in ln.split()]
        if len(row) != n:
            raise GroupDataError("table row has wrong length")
        table.append(row)
    names = None
    for ln in lines[1 + n:]:
        if ln.startswith("names"):
            names = ln.split()[1:]
            if len(names) != n:
                raise GroupDataError("names line has wrong length")
    return FiniteGroup(table, names)

"""Characters and explicit monomial models of irreducible representations.

Every irreducible representation handled here is realized as an induced
representation of a linear character of a subgroup, so all action matrices
are monomial: a permutation of basis vectors combined with root-of-unity
phases.  That shape is preserved by tensor products, direct sums, restriction
and induction, and it makes intertwiner spaces computable by a union-find
sweep with phase tracking instead of dense elimination.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm

import numpy as np

from .cyclotomic import Cyc
from .groups import (FiniteGroup, Subgroup, abelianization, closure,
                     conjugacy_classes, subgroup_lattice)
from .linalg import CycMatrix, inverse, rref


class UnsupportedGroupError(ValueError):
    """The monomial strategy cannot produce a full irreducible table."""


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

class Character:
    """A (possibly reducible) character, stored per conjugacy class.

    Values live in Q(zeta_e) with e = exponent(group), all at that one
    conductor, so value tuples compare exactly.
    """

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        e = group.exponent()
        self.values = tuple(v.embed(e) if v.n != e else v for v in values)
        self.classes = conjugacy_classes(group)
        assert len(self.values) == len(self.classes)
        deg = self.values[self._identity_class()]
        self.degree = deg.as_int()

    def _identity_class(self) -> int:
        if not hasattr(self, "_idcls"):
            self._idcls = next(i for i, c in enumerate(self.classes)
                               if self.group.identity in c)
        return self._idcls

    def _class_of(self, g: int) -> int:
        if not hasattr(self, "_clsmap"):
            m = {}
            for i, c in enumerate(self.classes):
                for x in c:
                    m[x] = i
            self._clsmap = m
        return self._clsmap[g]

    def value_of_element(self, g: int) -> Cyc:
        return self.values[self._class_of(g)]

    def __mul__(self, other: "Character") -> "Character":
        assert self.group is other.group
        return Character(self.group,
                         [a * b for a, b in zip(self.values, other.values)])

    def __add__(self, other: "Character") -> "Character":
        assert self.group is other.group
        return Character(self.group,
                         [a + b for a, b in zip(self.values, other.values)])

    def conj(self) -> "Character":
        return Character(self.group, [v.conj() for v in self.values])

    def inner(self, other: "Character") -> Fraction:
        """Exact inner product <self, other>; always a rational number."""
        assert self.group is other.group
        acc = Cyc.zero(self.group.exponent())
        for cls, a, b in zip(self.classes, self.values, other.values):
            acc = acc + a * b.conj() * len(cls)
        return acc.as_fraction() / self.group.order

    def norm(self) -> Fraction:
        return self.inner(self)

    def is_irreducible(self) -> bool:
        return self.norm() == 1

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def __hash__(self):
        return hash((id(self.group), self.values))

    def table_sort_key(self):
        """(degree, value tuple) with values compared coefficient-descending,
        which puts the trivial character first in every table."""
        vals = tuple(tuple((-f.numerator, f.denominator) for f in v.c)
                     for v in self.values)
        return (self.degree, vals)

    def __repr__(self):
        return f"Character(deg={self.degree}, values={[str(v) for v in self.values]})"


# ---------------------------------------------------------------------------
# the fixed isomorphism  G^ab  ~  linear characters
# ---------------------------------------------------------------------------

def _abelian_data(Q: FiniteGroup):
    """(basis, orders, coords): an independent generating tuple of the
    abelian group Q and exponent coordinates of every element.

    Deterministic: generators are chosen greedily by (max element order, min
    index), with backtracking in the rare case a greedy pick cannot be
    completed to a full decomposition.
    """
    if "abelian_data" in Q._cache:
        return Q._cache["abelian_data"]
    assert Q.is_abelian()
    cands = sorted(range(Q.order), key=lambda g: (-Q.element_order(g), g))

    def extend(sub: frozenset, basis, orders):
        if len(sub) == Q.order:
            return basis, orders
        for g in cands:
            if g in sub:
                continue
            o = Q.element_order(g)
            powers = [Q.power(g, k) for k in range(o)]
            prods = frozenset(Q.mulx(s, p) for s in sub for p in powers)
            if len(prods) == len(sub) * o:
                hit = extend(prods, basis + [g], orders + [o])
                if hit is not None:
                    return hit
        return None

    hit = extend(frozenset((Q.identity,)), [], [])
    assert hit is not None, "abelian decomposition must exist"
    basis, orders = hit
    coords = np.zeros((Q.order, len(basis)), dtype=np.int64)
    seen = set()
    for tup in itertools.product(*(range(o) for o in orders)):
        g = Q.identity
        for gen, a in zip(basis, tup):
            g = Q.mulx(g, Q.power(gen, a))
        assert g not in seen
        seen.add(g)
        coords[g] = tup
    assert len(seen) == Q.order
    Q._cache["abelian_data"] = (basis, orders, coords)
    return basis, orders, coords


def linear_characters(G: FiniteGroup) -> list:
    """All degree-1 characters, indexed by the elements of G^ab.

    The bijection z -> chi_z is the engine's fixed isomorphism between G^ab
    and its character group: chi_z(w) multiplies the pairings of the
    exponent coordinates of z and w along a fixed basis of G^ab.  It is a
    group isomorphism, and chi at index 0 (identity coset) is trivial.
    """
    if "linear_characters" in G._cache:
        return G._cache["linear_characters"]
    ab = abelianization(G)
    Q = ab.quotient
    basis, orders, coords = _abelian_data(Q)
    L = lcm(*orders) if orders else 1
    e = G.exponent()
    assert e % L == 0
    scale = e // L
    weights = [L // o for o in orders]
    classes = conjugacy_classes(G)
    out = []
    for z in range(Q.order):
        cz = coords[z]
        exps = np.zeros(G.order, dtype=np.int64)
        for x in range(G.order):
            cw = coords[int(ab.projection[x])]
            p = sum(int(w * a * b) for w, a, b in zip(weights, cz, cw)) % L
            exps[x] = (p * scale) % e
        ch = Character(G, [Cyc.root(e, int(exps[c[0]])) for c in classes])
        ch.element_exps = exps
        ch.ab_index = z
        out.append(ch)
    G._cache["linear_characters"] = out
    return out


# ---------------------------------------------------------------------------
# character table by the monomial strategy
# ---------------------------------------------------------------------------

def _induced_values(G: FiniteGroup, sub: Subgroup, lam_element_value) -> list:
    """Frobenius induction: value per G-class of Ind_H^G(lambda).

    ``lam_element_value(h)`` gives lambda at parent index h in H.
    """
    e = G.exponent()
    Hset = sub._set()
    vals = []
    for cls in conjugacy_classes(G):
        rep = cls[0]
        counts = {}
        for x in range(G.order):
            y = int(G.mul[G.mul[G.inv[x], rep], x])
            if y in Hset:
                counts[y] = counts.get(y, 0) + 1
        acc = Cyc.zero(e)
        for y, c in counts.items():
            acc = acc + lam_element_value(y) * c
        vals.append(acc / sub.order)
    return vals


def character_table(G: FiniteGroup) -> list:
    """All irreducible characters, built by inducing linear characters of
    subgroups (largest subgroups first), keeping the norm-1 results.

    Canonical order: (degree, value tuple).  Each character carries the
    (subgroup, linear-character index) it was induced from, for the matrix
    models.  Raises UnsupportedGroupError if the strategy cannot reach
    sum(degree^2) = |G|.
    """
    if "character_table" in G._cache:
        return G._cache["character_table"]
    lat = subgroup_lattice(G)
    subs = sorted(lat, key=lambda s: (-s.order, s.elements))
    found = []
    seen_values = set()
    total = 0
    for sub in subs:
        if total == G.order:
            break
        if sub.order == G.order:
            lams = list(linear_characters(G))
            pos = None
        else:
            Hgrp, embed = sub.as_group()
            pos = {p: i for i, p in enumerate(embed)}
            lams = linear_characters(Hgrp)
        for li, lam in enumerate(lams):
            if total == G.order:
                break
            if pos is None:
                chi = lam
            else:
                chi = Character(G, _induced_values(
                    G, sub, lambda h: lam.value_of_element(pos[h])))
            if chi.norm() != 1:
                continue
            if chi.values in seen_values:
                continue
            seen_values.add(chi.values)
            chi.provenance = (sub, li)
            found.append(chi)
            total += chi.degree ** 2
    if total != G.order:
        raise UnsupportedGroupError(
            f"monomial strategy incomplete: sum of degree^2 is {total}, "
            f"group order is {G.order}")
    found.sort(key=Character.table_sort_key)
    G._cache["character_table"] = found
    return found


# ---------------------------------------------------------------------------
# monomial representations
# ---------------------------------------------------------------------------

def generating_set(G: FiniteGroup) -> tuple:
    """Small deterministic generating set (greedy by element index)."""
    if "generators" in G._cache:
        return G._cache["generators"]
    gens = []
    have = {G.identity}
    while len(have) < G.order:
        g = next(x for x in range(G.order) if x not in have)
        gens.append(g)
        have = set(closure(G, gens))
    G._cache["generators"] = tuple(gens)
    return G._cache["generators"]


class MonomialRep:
    """A representation whose matrices are monomial.

    ``perms[g, i]`` is the image basis index and ``phases[g, i]`` the phase
    exponent (of zeta_e) in rho(g) e_i = zeta_e^phases[g,i] * e_{perms[g,i]}.
    """

    def __init__(self, group: FiniteGroup, dim: int, perms, phases,
                 conductor: int | None = None):
        self.group = group
        self.dim = dim
        # Phases normally live at the group exponent; a larger conductor is
        # used when a representation of a subgroup is cut out of a parent
        # module whose phases do not descend.
        self.e = group.exponent() if conductor is None else int(conductor)
        assert self.e % group.exponent() == 0
        self.perms = np.asarray(perms, dtype=np.int64)
        self.phases = np.asarray(phases, dtype=np.int64) % self.e
        assert self.perms.shape == (group.order, dim)
        assert self.phases.shape == (group.order, dim)

    def matrix(self, g: int) -> CycMatrix:
        z = Cyc.zero(self.e)
        rows = [[z] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            rows[int(self.perms[g, i])][i] = Cyc.root(self.e, int(self.phases[g, i]))
        return CycMatrix(rows, self.e)

    def apply(self, g: int, vec):
        out = [Cyc.zero(self.e)] * self.dim
        for i, v in enumerate(vec):
            if not v.is_zero():
                out[int(self.perms[g, i])] = v * Cyc.root(self.e, int(self.phases[g, i]))
        return tuple(out)

    def character_value(self, g: int) -> Cyc:
        acc = Cyc.zero(self.e)
        for i in range(self.dim):
            if self.perms[g, i] == i:
                acc = acc + Cyc.root(self.e, int(self.phases[g, i]))
        return acc

    def tensor(self, other: "MonomialRep") -> "MonomialRep":
        assert self.group is other.group and self.e == other.e
        n, da, db = self.group.order, self.dim, other.dim
        perms = np.zeros((n, da * db), dtype=np.int64)
        phases = np.zeros((n, da * db), dtype=np.int64)
        for g in range(n):
            pa, fa = self.perms[g], self.phases[g]
            pb, fb = other.perms[g], other.phases[g]
            perms[g] = (pa[:, None] * db + pb[None, :]).reshape(-1)
            phases[g] = (fa[:, None] + fb[None, :]).reshape(-1)
        return MonomialRep(self.group, da * db, perms, phases, conductor=self.e)

    def direct_sum(self, other: "MonomialRep") -> "MonomialRep":
        assert self.group is other.group and self.e == other.e
        perms = np.concatenate([self.perms, other.perms + self.dim], axis=1)
        phases = np.concatenate([self.phases, other.phases], axis=1)
        return MonomialRep(self.group, self.dim + other.dim, perms, phases,
                           conductor=self.e)

    def check_homomorphism(self, pairs) -> bool:
        for g, h in pairs:
            gh = self.group.mulx(g, h)
            # rho(g) rho(h) e_i = ph_h[i] ph_g[perm_h[i]] e_{perm_g[perm_h[i]]}
            perm = self.perms[g][self.perms[h]]
            phase = (self.phases[h] + self.phases[g][self.perms[h]]) % self.e
            if not (np.array_equal(perm, self.perms[gh])
                    and np.array_equal(phase, self.phases[gh])):
                return False
        return True


class IrrepModel:
    """Explicit monomial matrices for one irreducible character.

    Built as the representation induced from ``provenance = (subgroup,
    linear character index)`` on a coset-indexed basis.
    """

    def __init__(self, character: Character, rep: MonomialRep, provenance):
        self.character = character
        self.dim = character.degree
        self.rep = rep
        self.provenance = provenance
        G = character.group
        for g in range(G.order):
            assert rep.character_value(g) == character.value_of_element(g), \
                "model trace does not reproduce the character"

    @property
    def matrices(self):
        if not hasattr(self, "_mats"):
            self._mats = [self.rep.matrix(g)
                          for g in range(self.character.group.order)]
        return self._mats


def _induced_monomial(G: FiniteGroup, sub: Subgroup, lam_exps_parent) -> MonomialRep:
    """Monomial model of Ind_H^G(lambda) on the left-coset basis.

    ``lam_exps_parent[h]`` is the phase exponent of lambda (as a power of
    zeta_e, e = exponent(G)) at parent element h of H.
    """
    e = G.exponent()
    Hset = sub._set()
    coset_of = {}
    reps = []
    for g in range(G.order):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        arr = np.asarray(sorted(Hset), dtype=np.int32)
        for x in G.mul[g, arr]:
            coset_of[int(x)] = idx
    m = len(reps)
    perms = np.zeros((G.order, m), dtype=np.int64)
    phases = np.zeros((G.order, m), dtype=np.int64)
    for g in range(G.order):
        for i, t in enumerate(reps):
            u = int(G.mul[g, t])
            j = coset_of[u]
            h = int(G.mul[G.inv[reps[j]], u])
            assert h in Hset
            perms[g, i] = j
            phases[g, i] = lam_exps_parent[h]
    return MonomialRep(G, m, perms, phases)


def irrep_models(G: FiniteGroup) -> list:
    """One explicit monomial model per irreducible character, in table order."""
    if "irrep_models" in G._cache:
        return G._cache["irrep_models"]
    table = character_table(G)
    e = G.exponent()
    models = []
    for chi in table:
        sub, li = chi.provenance
        Hgrp, embed = sub.as_group()
        lam = linear_characters(Hgrp)[li]
        eH = Hgrp.exponent()
        assert e % eH == 0
        lam_exps = {embed[i]: int(lam.element_exps[i]) * (e // eH)
                    for i in range(Hgrp.order)}
        rep = _induced_monomial(G, sub, lam_exps)
        assert rep.dim == chi.degree
        models.append(IrrepModel(chi, rep, (sub, li)))
    G._cache["irrep_models"] = models
    return models


def induce_monomial(G: FiniteGroup, sub: Subgroup, repH: MonomialRep):
    """Induce a monomial representation of H up to G on the coset basis.

    Basis index (coset r, base vector b) -> r * dim + b.  Returns the induced
    MonomialRep together with the block index of the identity coset, where
    the canonical copy of the original module sits.
    """
    e, eH = G.exponent(), repH.e
    assert e % eH == 0
    scale = e // eH
    Hset = sub._set()
    pos = {p: i for i, p in enumerate(sub.elements)}
    coset_of = {}
    reps = []
    arr = np.asarray(sub.elements, dtype=np.int32)
    for g in range(G.order):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for x in G.mul[g, arr]:
            coset_of[int(x)] = idx
    m, d = len(reps), repH.dim
    perms = np.zeros((G.order, m * d), dtype=np.int64)
    phases = np.zeros((G.order, m * d), dtype=np.int64)
    for g in range(G.order):
        for r, t in enumerate(reps):
            u = int(G.mul[g, t])
            j = coset_of[u]
            h = int(G.mul[G.inv[reps[j]], u])
            assert h in Hset
            hh = pos[h]
            base = r * d
            perms[g, base:base + d] = j * d + repH.perms[hh]
            phases[g, base:base + d] = repH.phases[hh] * scale
    return MonomialRep(G, m * d, perms, phases), coset_of[G.identity]


def restrict_monomial(sub: Subgroup, repG: MonomialRep) -> MonomialRep:
    """View a monomial G-representation as a representation of H.

    Phases are kept at the parent conductor: individual monomial phases of a
    restricted matrix need not lie in the smaller cyclotomic field even
    though the representation itself is defined there.
    """
    Hgrp, embed = sub.as_group()
    return MonomialRep(Hgrp, repG.dim, repG.perms[embed], repG.phases[embed],
                       conductor=repG.e)


def scaled_model_rep(model: IrrepModel, conductor: int) -> MonomialRep:
    """The model's representation with phases rewritten at a larger conductor."""
    rep = model.rep
    assert conductor % rep.e == 0
    scale = conductor // rep.e
    return MonomialRep(rep.group, rep.dim, rep.perms, rep.phases * scale,
                       conductor=conductor)


# ---------------------------------------------------------------------------
# Hom spaces between monomial representations (union-find with phases)
# ---------------------------------------------------------------------------

def hom_basis(A: MonomialRep, B: MonomialRep) -> list:
    """Canonical basis of Hom_G(A, B) = {F : F rho_A(g) = rho_B(g) F}.

    The intertwiner constraints tie the matrix entries F[b, a] into orbits
    with fixed relative phases; orbits whose phase relations close
    inconsistently are forced to zero.  Each surviving orbit gives one basis
    map, normalized so its least (b, a) entry is 1; distinct basis maps have
    disjoint supports, so any fixed entry order makes the basis canonical.

    Returns a list of sparse maps, each a tuple of (b, a, Cyc value).
    """
    assert A.group is B.group and A.e == B.e
    G, e = A.group, A.e
    nvars = B.dim * A.dim

    parent = list(range(nvars))
    offset = [0] * nvars          # value(x) = zeta^offset[x] * value(root)
    dead = set()

    def find(x):
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        root = x
        # path compression, accumulating offsets toward the root
        acc = 0
        for y in reversed(path):
            acc = (acc + offset[y]) % e
            parent[y] = root
            offset[y] = acc
        return root, (offset[path[0]] if path else 0)

    def union(x, y, delta):
        # constraint: value(x) = zeta^delta * value(y)
        rx, ox = find(x)
        ry, oy = find(y)
        if rx == ry:
            if (ox - oy - delta) % e:
                dead.add(rx)
            return
        parent[ry] = rx
        offset[ry] = (ox - delta - oy) % e
        if ry in dead:
            dead.discard(ry)
            dead.add(rx)

    for g in generating_set(G):
        pa, fa = A.perms[g], A.phases[g]
        pb, fb = B.perms[g], B.phases[g]
        for b in range(B.dim):
            tb = int(pb[b])
            hb = int(fb[b])
            for a in range(A.dim):
                # F[pb(b), pa(a)] = zeta^(fb[b] - fa[a]) F[b, a]
                union(tb * A.dim + int(pa[a]), b * A.dim + a,
                      (hb - int(fa[a])) % e)

    orbits = {}
    for x in range(nvars):
        r, off = find(x)
        orbits.setdefault(r, []).append((x, off))
    dead_roots = {find(d)[0] for d in dead}
    basis = []
    for root, members in orbits.items():
        if root in dead_roots:
            continue
        members.sort()
        base_off = members[0][1]
        entries = tuple((x // A.dim, x % A.dim,
                         Cyc.root(e, (off - base_off) % e))
                        for x, off in members)
        basis.append(entries)
    basis.sort(key=lambda ent: ent[0][:2])
    return basis


def apply_sparse(entries, vec, out_dim: int, e: int):
    """Apply a sparse map given as (row, col, value) triples to a vector."""
    out = [Cyc.zero(e)] * out_dim
    for r, c, val in entries:
        v = vec[c]
        if not v.is_zero():
            out[r] = out[r] + val * v
    return tuple(out)


def isotypic_maps(W: MonomialRep, model: IrrepModel):
    """(injections, projections) for the isotypic component of ``model`` in W.

    injections F_t : V_i -> W form the canonical Hom basis; projections
    pi_t : W -> V_i are Schur-normalized so that pi_t o F_u = delta_tu Id.
    The component vectors of any w in W are pi_t(w), t = 0..mult-1.
    """
    Vi = model.rep
    inj = hom_basis(Vi, W)
    srj = hom_basis(W, Vi)
    k = len(inj)
    assert len(srj) == k, "Hom-space dimensions disagree between directions"
    if k == 0:
        return [], []
    e = W.e
    C_rows = []
    for Gs in srj:
        gs0 = {c: val for r, c, val in Gs if r == 0}
        row = []
        for Ft in inj:
            acc = Cyc.zero(e)
            for r, c, val in Ft:
                if c == 0 and r in gs0:
                    acc = acc + gs0[r] * val
            row.append(acc)
        C_rows.append(row)
    Ci = inverse(CycMatrix(C_rows, e))
    projections = []
    for t in range(k):
        acc = {}
        for s in range(k):
            coef = Ci[t, s]
            if coef.is_zero():
                continue
            for r, c, val in srj[s]:
                key = (r, c)
                cur = acc.get(key)
                acc[key] = val * coef if cur is None else cur + val * coef
        entries = tuple((r, c, v) for (r, c), v in sorted(acc.items())
                        if not v.is_zero())
        projections.append(entries)
    return inj, projections


# ---------------------------------------------------------------------------
# ambient modules and the cyclic-vector decomposition
# ---------------------------------------------------------------------------

class AmbientModule:
    """A direct sum of irreducible models, M = (+)_i V_i^(m_i).

    Blocks are laid out by ascending irrep index, copies contiguous, and the
    assembled action is again monomial.
    """

    def __init__(self, group: FiniteGroup, components):
        self.group = group
        self.models = irrep_models(group)
        comp = sorted((int(i), int(m)) for i, m in components if m != 0)
        for i, m in comp:
            if m < 0:
                raise ValueError("multiplicities must be nonnegative")
            if not 0 <= i < len(self.models):
                raise ValueError(f"irrep index {i} out of range")
        self.components = comp
        self.total_dim = sum(m * self.models[i].dim for i, m in comp)
        rep = None
        self.offsets = {}
        off = 0
        for i, m in comp:
            for copy in range(m):
                self.offsets[(i, copy)] = off
                off += self.models[i].dim
                block = self.models[i].rep
                rep = block if rep is None else rep.direct_sum(block)
        if rep is None:
            rep = MonomialRep(group, 0,
                              np.zeros((group.order, 0), dtype=np.int64),
                              np.zeros((group.order, 0), dtype=np.int64))
        self.rep = rep

    def action(self, g: int) -> CycMatrix:
        return self.rep.matrix(g)

    def apply(self, g: int, vec):
        return self.rep.apply(g, vec)

    def slice(self, vec, i: int, copy: int):
        off = self.offsets[(i, copy)]
        return tuple(vec[off:off + self.models[i].dim])


def tensor_decompose(chi: Character, psi: Character) -> list:
    """Multiplicities of the irreducibles in chi * psi, as (index, mult)."""
    assert chi.group is psi.group
    table = character_table(chi.group)
    prod = chi * psi
    out = []
    for i, irr in enumerate(table):
        m = prod.inner(irr)
        assert m.denominator == 1 and m >= 0
        if m:
            out.append((i, int(m)))
    assert sum(m * table[i].degree for i, m in out) == prod.degree
    return out


def induce_restrict_character(chi: Character, sub: Subgroup,
                              direction: str) -> Character:
    """Frobenius induction or plain restriction along H <= G.

    ``restrict`` takes a character of the parent to one of H (as the
    standalone group ``sub.as_group()`` with its canonical element order);
    ``induce`` takes a character indexed by that same standalone group back
    up to the parent.
    """
    Hgrp, embed = sub.as_group()
    if direction == "restrict":
        assert chi.group is sub.parent
        eH = Hgrp.exponent()
        vals = [chi.value_of_element(embed[c[0]]).descend(eH)
                for c in conjugacy_classes(Hgrp)]
        return Character(Hgrp, vals)
    if direction == "induce":
        assert chi.group.order == Hgrp.order
        pos = {p: i for i, p in enumerate(embed)}
        G = sub.parent
        vals = _induced_values(G, sub,
                               lambda h: chi.value_of_element(pos[h]))
        return Character(G, vals)
    raise ValueError(f"direction must be 'induce' or 'restrict', got {direction!r}")


def decompose_cyclic(v, M: AmbientModule):
    """Multiplicities and Grassmannian points of the cyclic module K[G]v.

    Returns ``(l, points)`` where ``l[i]`` is the multiplicity of irrep i in
    span{g v : g in G} and ``points[i]`` (for l[i] >= 1) is the canonical
    RREF matrix whose rows span the set of component vectors of v in the
    copies of V_i.  The zero vector yields the empty decomposition.
    """
    v = tuple(v)
    assert len(v) == M.total_dim
    table = character_table(M.group)
    l = [0] * len(table)
    points = {}
    for i, m in M.components:
        rows = [M.slice(v, i, c) for c in range(m)]
        if all(x.is_zero() for row in rows for x in row):
            continue
        R, rank, _ = rref(CycMatrix(rows, M.rep.e))
        if rank == 0:
            continue
        l[i] = rank
        points[i] = CycMatrix(R.rows[:rank], R.n)
    # cross-check: dim of the literal span of the orbit must match
    if M.total_dim:
        orbit_rows = [M.apply(g, v) for g in range(M.group.order)]
        _, wdim, _ = rref(CycMatrix(orbit_rows, M.rep.e))
        assert wdim == sum(l[i] * table[i].degree for i in range(len(table))), \
            "cyclic-span dimension mismatch"
    return tuple(l), points

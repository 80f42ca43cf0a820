"""Irreducible glider keys and their semigroup/ring arithmetic.

A cyclic pair (K v ⊆ K[G] v) inside a G-module is classified, up to
isomorphism, by a pair (A, B): A names the linear characters that appear in
K[G]v (as elements of G^ab under the engine's fixed pairing), and B records,
for every higher-dimensional irreducible V, the canonical Grassmannian point
spanned by the component vectors of v in the copies of V.  This module
implements the calculus of such keys: canonical forms, exact products, power
orbits and their idempotents, induction/restriction along subgroups, and
rational linear combinations of keys.
"""

from __future__ import annotations

from fractions import Fraction
from types import SimpleNamespace

from .cyclotomic import Cyc
from .linalg import CycMatrix, rref
from .groups import FiniteGroup, Subgroup, abelianization
from .characters import (AmbientModule, apply_sparse, character_table,
                         decompose_cyclic, induce_monomial,
                         induce_restrict_character, irrep_models,
                         isotypic_maps, restrict_monomial, scaled_model_rep,
                         tensor_decompose)


def _minimal_conductor_matrix(mat: CycMatrix) -> CycMatrix:
    """Rewrite a matrix at the least conductor containing all its entries.

    This is the canonical representation used inside keys, so that equal
    Grassmannian points computed at different conductors hash identically.
    """
    n = mat.n
    for m in range(1, n + 1):
        if n % m:
            continue
        try:
            rows = [[x.descend(m) for x in row] for row in mat.rows]
        except ValueError:
            continue
        return CycMatrix(rows, m)
    return mat


class GliderKey:
    """Canonical descriptor (A, B) of an irreducible length-1 glider class.

    ``A`` is a sorted tuple of G^ab element indices (one per linear
    character present); ``B`` maps higher-dimensional irrep indices to
    full-row-rank RREF matrices.  (∅, ∅) is the distinguished ZERO key.
    Construct through :meth:`GliderContext.make_key`, which validates and
    canonicalizes.
    """

    __slots__ = ("context", "A", "B", "_hash")

    def __init__(self, context: "GliderContext", A, B):
        self.context = context
        self.A = tuple(sorted(set(int(z) for z in A)))
        items = sorted((int(i), mat) for i, mat in
                       (B.items() if isinstance(B, dict) else B))
        self.B = tuple(items)
        self._hash = hash((self.A, self.B))

    def is_zero(self) -> bool:
        return not self.A and not self.B

    def is_unit(self) -> bool:
        return self.A == (self.context.Q.identity,) and not self.B

    def signature(self) -> tuple:
        """Components (irrep index, multiplicity) of the realizing module."""
        comps = [(self.context.table_of_ab[z], 1) for z in self.A]
        comps += [(i, mat.nrows) for i, mat in self.B]
        return tuple(sorted(comps))

    def b_dict(self) -> dict:
        return dict(self.B)

    def sort_key(self):
        return (self.A,
                tuple((i, mat.nrows, mat.n, mat.sort_key())
                      for i, mat in self.B))

    def __eq__(self, other):
        if not isinstance(other, GliderKey):
            return NotImplemented
        return (self.context is other.context
                and self.A == other.A and self.B == other.B)

    def __hash__(self):
        return self._hash

    def __str__(self):
        if self.is_zero():
            return "ZERO"
        names = self.context.ab_names
        a = "{" + ",".join(names[z] for z in self.A) + "}"
        if not self.B:
            return f"({a}, {{}})"
        parts = []
        for i, mat in self.B:
            rows = "; ".join(",".join(str(x) for x in row) for row in mat.rows)
            parts.append(f"irrep_{i}:[{rows}]")
        return f"({a}, {{{', '.join(parts)}}})"

    def __repr__(self):
        return f"GliderKey{self}"

    def to_json(self):
        names = self.context.ab_names
        return {"A": [names[z] for z in self.A],
                "B": {f"irrep_{i}": [[x.to_json() for x in row]
                                     for row in mat.rows]
                      for i, mat in self.B}}


class MultiplicityVector:
    """Per-irrep multiplicities in canonical table order.

    Each entry is bounded by the dimension of the corresponding irreducible;
    the componentwise order ``<=`` is the partial order used by the tensor
    monotonicity property.
    """

    def __init__(self, m, dims):
        self.m = tuple(int(x) for x in m)
        self.dims = tuple(int(d) for d in dims)
        assert len(self.m) == len(self.dims)
        for x, d in zip(self.m, self.dims):
            assert 0 <= x <= d, "multiplicity exceeds irrep dimension"

    @property
    def total_dimension(self) -> int:
        return sum(x * d for x, d in zip(self.m, self.dims))

    def __eq__(self, other):
        if not isinstance(other, MultiplicityVector):
            return NotImplemented
        return self.m == other.m and self.dims == other.dims

    def __le__(self, other):
        return all(a <= b for a, b in zip(self.m, other.m))

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"MultiplicityVector{self.m}"


class OrbitResult:
    """Power orbit of a key: x, x², … with cycle data once a repeat occurs.

    ``orbit`` lists the pairwise-distinct consecutive powers; ``preperiod``
    is the least s >= 1 with x^(s+period) = x^s; ``idempotent`` is the unique
    idempotent power in the cycle, or the string "unresolved" when no repeat
    appeared within the iteration budget (period/preperiod are then None).
    """

    def __init__(self, orbit, idempotent, period, preperiod):
        self.orbit = tuple(orbit)
        self.idempotent = idempotent
        self.period = period
        self.preperiod = preperiod

    @property
    def resolved(self) -> bool:
        return not isinstance(self.idempotent, str)

    def __repr__(self):
        if not self.resolved:
            return f"OrbitResult(unresolved after {len(self.orbit)} powers)"
        return (f"OrbitResult(len {len(self.orbit)}, preperiod "
                f"{self.preperiod}, period {self.period})")


class _Echelon:
    """Incremental row-echelon basis over Q(zeta) with a rank cap."""

    __slots__ = ("cap", "rows", "full")

    def __init__(self, cap: int):
        self.cap = cap
        self.rows = []            # (pivot column, row with pivot entry 1)
        self.full = cap == 0

    def add(self, row) -> bool:
        if self.full:
            return False
        row = list(row)
        for p, r in self.rows:
            f = row[p]
            if not f.is_zero():
                row = [a - f * b for a, b in zip(row, r)]
        piv = next((k for k, a in enumerate(row) if not a.is_zero()), None)
        if piv is None:
            return False
        inv = row[piv].inverse()
        self.rows.append((piv, tuple(a * inv for a in row)))
        self.rows.sort(key=lambda pr: pr[0])
        if len(self.rows) == self.cap:
            self.full = True
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def matrix(self) -> CycMatrix:
        R, rk, _ = rref(CycMatrix([list(r) for _, r in self.rows]))
        assert rk == len(self.rows)
        return R


class GliderContext:
    """Shared immutable per-group state for glider-key arithmetic.

    Holds the character table, the irreducible models, both directions of
    the linear-character/abelianization correspondence, and memo caches:
    realized ambient modules per component signature, isotypic projections
    per irrep pair, key products, resolved orbits, and induction and
    restriction data per (subgroup, signature).
    """

    def __init__(self, G: FiniteGroup):
        self.group = G
        self.e = G.exponent()
        self.table = character_table(G)
        self.models = irrep_models(G)
        self.dims = tuple(ch.degree for ch in self.table)
        self.ab = abelianization(G)
        self.Q = self.ab.quotient
        self.ab_names = tuple(self.Q.name_of(z) for z in range(self.Q.order))
        self.table_of_ab = {}
        self.ab_of_table = {}
        for ti, ch in enumerate(self.table):
            if ch.degree == 1:
                z = ch.ab_index
                self.table_of_ab[z] = ti
                self.ab_of_table[ti] = z
        assert len(self.table_of_ab) == self.Q.order
        self.zero_key = GliderKey(self, (), {})
        self.unit_key = self.make_key((self.Q.identity,), {})
        self._ambient = {}
        self._pair = {}
        self._prod = {}
        self._orbit = {}
        self._ind = {}
        self._res = {}

    @classmethod
    def for_group(cls, G: FiniteGroup) -> "GliderContext":
        if "glider_context" not in G._cache:
            G._cache["glider_context"] = cls(G)
        return G._cache["glider_context"]

    # -- key construction --------------------------------------------------

    def make_key(self, A, B) -> GliderKey:
        """Validated, conductor-canonical key from raw (A, B) data."""
        for z in A:
            if not 0 <= int(z) < self.Q.order:
                raise ValueError(f"A-part index {z} outside G^ab")
        mats = {}
        for i, mat in (B.items() if isinstance(B, dict) else B):
            i = int(i)
            d = self.dims[i]
            if d < 2:
                raise ValueError("B may only contain irreps of dimension >= 2")
            if not isinstance(mat, CycMatrix):
                mat = CycMatrix([list(r) for r in mat])
            if mat.ncols != d:
                raise ValueError(f"B[{i}] must have {d} columns")
            if not 1 <= mat.nrows <= d:
                raise ValueError(f"B[{i}] must have between 1 and {d} rows")
            R, rk, _ = rref(mat)
            if rk != mat.nrows or R != mat:
                raise ValueError(f"B[{i}] must be a full-row-rank RREF matrix")
            mats[i] = _minimal_conductor_matrix(mat)
        return GliderKey(self, A, mats)

    def key_from_json(self, data) -> GliderKey:
        name_to_z = {nm: z for z, nm in enumerate(self.ab_names)}
        A = [name_to_z[nm] for nm in data["A"]]
        B = {}
        for label, rows in data.get("B", {}).items():
            i = int(label.split("_", 1)[1])
            B[i] = CycMatrix([[Cyc.from_json(x) for x in row] for row in rows])
        return self.make_key(A, B)

    def regular_key(self) -> GliderKey:
        """The key of (K·1 ⊆ K[G]): all of G^ab plus every full point."""
        B = {i: CycMatrix.identity(d, self.e)
             for i, d in enumerate(self.dims) if d >= 2}
        return self.make_key(range(self.Q.order), B)

    # -- realization -------------------------------------------------------

    def ambient(self, sig) -> AmbientModule:
        if sig not in self._ambient:
            self._ambient[sig] = AmbientModule(self.group, sig)
        return self._ambient[sig]

    def realize(self, key: GliderKey):
        """(AmbientModule, vector) whose canonical key is ``key``.

        A-components get the fixed coordinate 1 in their 1-dimensional
        blocks; B-components place the RREF rows in consecutive copies.
        """
        assert key.context is self
        sig = key.signature()
        M = self.ambient(sig)
        vec = [Cyc.zero(self.e)] * M.total_dim
        one = Cyc.one(self.e)
        for z in key.A:
            vec[M.offsets[(self.table_of_ab[z], 0)]] = one
        for i, mat in key.B:
            for c, row in enumerate(mat.rows):
                off = M.offsets[(i, c)]
                for k, x in enumerate(row):
                    vec[off + k] = x
        return M, tuple(vec)

    def _key_components(self, key: GliderKey):
        one = Cyc.one(self.e)
        out = [(self.table_of_ab[z], ((one,),)) for z in key.A]
        out += [(i, mat.rows) for i, mat in key.B]
        return out

    # -- products ----------------------------------------------------------

    def pair_maps(self, i: int, j: int):
        """Isotypic projections of V_i ⊗ V_j, cached per unordered pair.

        Returns ((target index, projections), ...) where each projection is a
        sparse map from the tensor basis (row-major, first factor = smaller
        index) onto the target model.
        """
        a, b = (i, j) if i <= j else (j, i)
        if (a, b) not in self._pair:
            T = self.models[a].rep.tensor(self.models[b].rep)
            out = []
            for tgt, mult in tensor_decompose(self.table[a], self.table[b]):
                _, pis = isotypic_maps(T, self.models[tgt])
                assert len(pis) == mult
                out.append((tgt, tuple(pis)))
            self._pair[(a, b)] = tuple(out)
        return self._pair[(a, b)]

    def product(self, x: GliderKey, y: GliderKey) -> GliderKey:
        """Key of the tensor product glider; ZERO absorbs.

        Linear×linear contributions are set products in G^ab; all other
        component pairs go through the cached isotypic projections with an
        early skip once every target of a pair is at full rank.
        """
        assert x.context is self and y.context is self
        if x.is_zero() or y.is_zero():
            return self.zero_key
        if y.sort_key() < x.sort_key():
            x, y = y, x
        memo = self._prod.get((x, y))
        if memo is not None:
            return memo
        acc = {}

        def bucket(t):
            if t not in acc:
                acc[t] = _Echelon(self.dims[t])
            return acc[t]

        one = Cyc.one(self.e)
        for za in x.A:
            for zc in y.A:
                bucket(self.table_of_ab[self.Q.mulx(za, zc)]).add((one,))
        for i1, rows1 in self._key_components(x):
            d1 = self.dims[i1]
            for i2, rows2 in self._key_components(y):
                if d1 == 1 and self.dims[i2] == 1:
                    continue        # already in the A-part set product
                targets = self.pair_maps(i1, i2)
                if all(t in acc and acc[t].full for t, _ in targets):
                    continue
                swap = i1 > i2
                for u in rows1:
                    for v in rows2:
                        uu, vv = (v, u) if swap else (u, v)
                        tv = [p * q for p in uu for q in vv]
                        for tgt, pis in targets:
                            bt = bucket(tgt)
                            if bt.full:
                                continue
                            for pi in pis:
                                bt.add(apply_sparse(pi, tv,
                                                    self.dims[tgt], self.e))
        A_out = [self.ab_of_table[t] for t, ech in acc.items()
                 if t in self.ab_of_table and ech.rank == 1]
        B_out = {t: ech.matrix() for t, ech in acc.items()
                 if t not in self.ab_of_table and ech.rank >= 1}
        key = self.make_key(A_out, B_out)
        assert not key.is_zero(), "product of nonzero keys must be nonzero"
        self._prod[(x, y)] = key
        return key

    # -- orbits ------------------------------------------------------------

    def orbit(self, x: GliderKey, max_iter: int = 1024) -> OrbitResult:
        """Iterate powers of ``x`` until a key repeats; exact cycle data.

        On a repeat x^(s+p) = x^s the unique idempotent power is the
        smallest multiple of p that is >= s.  Without a repeat within
        ``max_iter`` products the orbit is reported unresolved (this is
        evidence, never a proof, about infinite-orbit membership).
        """
        assert max_iter >= 1
        cached = self._orbit.get(x)
        if cached is not None:
            return cached
        powers = [x]
        seen = {x: 1}
        cur = x
        for n in range(2, max_iter + 2):
            cur = self.product(cur, x)
            s = seen.get(cur)
            if s is not None:
                p = n - s
                npow = p * ((s + p - 1) // p)
                idem = powers[npow - 1]
                assert self.product(idem, idem) == idem
                res = OrbitResult(powers, idem, p, s)
                self._orbit[x] = res
                return res
            powers.append(cur)
            seen[cur] = n
        return OrbitResult(powers, "unresolved", None, None)

    # -- induction and restriction -----------------------------------------

    def sub_context(self, sub: Subgroup):
        """(context over H, H as standalone group, embedding into G)."""
        assert sub.parent is self.group
        Hgrp, embed = sub.as_group()
        return GliderContext.for_group(Hgrp), Hgrp, embed

    def _signature_character(self, components, table):
        chi = None
        for i, m in components:
            for _ in range(m):
                chi = table[i] if chi is None else chi + table[i]
        return chi

    def induce(self, sub: Subgroup, x: GliderKey) -> GliderKey:
        """Key over G of the induced glider of a key over H = sub."""
        ctxH, _, _ = self.sub_context(sub)
        assert x.context is ctxH
        if x.is_zero():
            return self.zero_key
        sig = x.signature()
        ck = (sub.elements, sig)
        data = self._ind.get(ck)
        if data is None:
            MH = ctxH.ambient(sig)
            repG, ident_block = induce_monomial(self.group, sub, MH.rep)
            chiH = self._signature_character(MH.components, ctxH.table)
            chiG = induce_restrict_character(chiH, sub, "induce")
            maps = []
            for j, chj in enumerate(self.table):
                mult = chiG.inner(chj)
                if mult:
                    _, pis = isotypic_maps(repG, self.models[j])
                    assert len(pis) == mult
                    maps.append((j, tuple(pis)))
            data = (MH.total_dim, ident_block, repG.dim, tuple(maps))
            self._ind[ck] = data
        dimH, blk, dimG, maps = data
        _, w = ctxH.realize(x)
        vec = [Cyc.zero(self.e)] * dimG
        off = blk * dimH
        for k, val in enumerate(w):
            vec[off + k] = val
        return self._assemble(maps, vec)

    def restrict(self, sub: Subgroup, y: GliderKey) -> GliderKey:
        """Key over H = sub of the restricted glider of a key over G."""
        ctxH, _, _ = self.sub_context(sub)
        assert y.context is self
        if y.is_zero():
            return ctxH.zero_key
        sig = y.signature()
        ck = (sub.elements, sig)
        data = self._res.get(ck)
        if data is None:
            MG = self.ambient(sig)
            repH = restrict_monomial(sub, MG.rep)
            chiG = self._signature_character(MG.components, self.table)
            chiH = induce_restrict_character(chiG, sub, "restrict")
            maps = []
            for j, chj in enumerate(ctxH.table):
                mult = chiH.inner(chj)
                if mult:
                    shim = SimpleNamespace(
                        rep=scaled_model_rep(ctxH.models[j], repH.e))
                    _, pis = isotypic_maps(repH, shim)
                    assert len(pis) == mult
                    maps.append((j, tuple(pis)))
            data = tuple(maps)
            self._res[ck] = data
        _, w = self.realize(y)
        return ctxH._assemble(data, list(w))

    def _assemble(self, maps, vec) -> GliderKey:
        """Collect projection images of ``vec`` into a canonical key."""
        A_out, B_out = [], {}
        for j, pis in maps:
            d = self.dims[j]
            ech = _Echelon(d)
            for pi in pis:
                ech.add(apply_sparse(pi, vec, d, self.e))
            if ech.rank == 0:
                continue
            if j in self.ab_of_table:
                A_out.append(self.ab_of_table[j])
            else:
                B_out[j] = ech.matrix()
        return self.make_key(A_out, B_out)


class RingElement:
    """A finite rational combination of glider keys (ZERO never stored)."""

    __slots__ = ("context", "terms")

    def __init__(self, context: GliderContext, terms=None):
        self.context = context
        clean = {}
        for key, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff and not key.is_zero():
                clean[key] = coeff
        self.terms = clean

    @classmethod
    def from_key(cls, key: GliderKey, coeff=1) -> "RingElement":
        return cls(key.context, {key: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __add__(self, other):
        assert self.context is other.context
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + coeff
        return RingElement(self.context, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> "RingElement":
        coeff = Fraction(coeff)
        return RingElement(self.context,
                           {k: c * coeff for k, c in self.terms.items()})

    def __mul__(self, other):
        assert self.context is other.context
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                kp = self.context.product(k1, k2)
                out[kp] = out.get(kp, Fraction(0)) + c1 * c2
        return RingElement(self.context, out)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.context is other.context and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for key, coeff in self.items():
            parts.append(f"{coeff}*{key}" if coeff != 1 else str(key))
        return " + ".join(parts)

    def __repr__(self):
        return f"RingElement({self})"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def canonical_key(v, M: AmbientModule) -> GliderKey:
    """Canonical key of the cyclic pair (K v ⊆ K[G] v) inside M.

    Linear components with multiplicity 1 land in the A-part; every
    higher-dimensional component contributes its RREF Grassmannian point to
    the B-part.  The zero vector gives the ZERO key.
    """
    ctx = GliderContext.for_group(M.group)
    l, points = decompose_cyclic(v, M)
    A, B = [], {}
    for ti, li in enumerate(l):
        if li == 0:
            continue
        if ti in ctx.ab_of_table:
            assert li == 1
            A.append(ctx.ab_of_table[ti])
        else:
            B[ti] = points[ti]
    return ctx.make_key(A, B)


def product(x: GliderKey, y: GliderKey) -> GliderKey:
    return x.context.product(x, y)


def multiplicity_vector(x: GliderKey) -> MultiplicityVector:
    ctx = x.context
    m = [0] * len(ctx.table)
    for z in x.A:
        m[ctx.table_of_ab[z]] = 1
    for i, mat in x.B:
        m[i] = mat.nrows
    return MultiplicityVector(m, ctx.dims)


def total_dimension(x: GliderKey) -> int:
    return multiplicity_vector(x).total_dimension


def semigroup_orbit(x: GliderKey, max_iter: int = 1024) -> OrbitResult:
    return x.context.orbit(x, max_iter)


def induce_glider(sub: Subgroup, x: GliderKey) -> GliderKey:
    return GliderContext.for_group(sub.parent).induce(sub, x)


def restrict_glider(sub: Subgroup, y: GliderKey) -> GliderKey:
    return GliderContext.for_group(sub.parent).restrict(sub, y)


def ring_ops(op: str, x: RingElement, y) -> RingElement:
    """Dispatch: add/multiply take two elements, scale takes a rational."""
    if op == "add":
        return x + y
    if op == "multiply":
        return x * y
    if op == "scale":
        return x.scale(y)
    raise ValueError(f"unknown ring operation {op!r}")

"""Tests for glider keys: products, orbits, induction, ring elements."""

from __future__ import annotations

import random
from fractions import Fraction

from glider_ring.cyclotomic import Cyc
from glider_ring.linalg import CycMatrix, rref
from glider_ring.groups import (alternating4_group, cyclic_group,
                                dihedral_group, heisenberg_group, klein_group,
                                quaternion_group, subgroup_lattice)
from glider_ring.characters import AmbientModule, apply_sparse, isotypic_maps
from glider_ring.ring import (GliderContext, RingElement, canonical_key,
                              induce_glider, multiplicity_vector, product,
                              restrict_glider, ring_ops, semigroup_orbit,
                              total_dimension)


def _ctx(G):
    return GliderContext.for_group(G)


def _name_map(ctx):
    return {nm: z for z, nm in enumerate(ctx.ab_names)}


def _random_key(ctx, rng, a_prob=0.35, b_prob=0.5, max_rows=None):
    """A random valid key: random A-subset plus random RREF points."""
    A = [z for z in range(ctx.Q.order) if rng.random() < a_prob]
    B = {}
    for i, d in enumerate(ctx.dims):
        if d >= 2 and rng.random() < b_prob:
            cap = d if max_rows is None else min(d, max_rows)
            l = rng.randint(1, cap)
            while True:
                rows = [[Cyc.rational(rng.randint(-2, 2), ctx.e)
                         for _ in range(d)] for _ in range(l)]
                R, rk, _ = rref(CycMatrix(rows, ctx.e))
                if rk == l:
                    B[i] = CycMatrix([list(r) for r in R.rows[:l]], R.n)
                    break
    return ctx.make_key(A, B)


def _product_oracle(ctx, x, y):
    """Independent product route: one big tensor module, no pair caches.

    Realizes both keys, forms the full tensor representation and the tensor
    vector, and reads every component span through a single Hom computation
    per irrep on the big module.
    """
    Mx, wx = ctx.realize(x)
    My, wy = ctx.realize(y)
    T = Mx.rep.tensor(My.rep)
    w = [a * b for a in wx for b in wy]
    A, B = [], {}
    for j, model in enumerate(ctx.models):
        _, pis = isotypic_maps(T, model)
        if not pis:
            continue
        rows = [apply_sparse(pi, w, model.dim, ctx.e) for pi in pis]
        R, rk, _ = rref(CycMatrix([list(r) for r in rows], ctx.e))
        if rk == 0:
            continue
        if j in ctx.ab_of_table:
            assert rk == 1
            A.append(ctx.ab_of_table[j])
        else:
            B[j] = CycMatrix([list(r) for r in R.rows[:rk]], R.n)
    return ctx.make_key(A, B)


def test_q8_set_product_squares():
    ctx = _ctx(quaternion_group())
    nm = _name_map(ctx)
    x = ctx.make_key((nm["i"], nm["j"]), {})
    x2 = product(x, x)
    assert x2 == ctx.make_key((nm["1"], nm["k"]), {})
    assert product(x2, x) == x
    y = ctx.make_key((nm["i"], nm["k"]), {})
    assert product(y, y) == ctx.make_key((nm["1"], nm["j"]), {})
    # the idempotent over {i,j} is the image of the subgroup {1,k} of G^ab
    assert product(x2, x2) == x2


def test_q8_orbit_idempotent_at_power_two():
    ctx = _ctx(quaternion_group())
    nm = _name_map(ctx)
    x = ctx.make_key((nm["i"], nm["j"]), {})
    orb = semigroup_orbit(x)
    assert orb.resolved
    assert orb.preperiod == 1 and orb.period == 2
    assert len(orb.orbit) == 2
    assert orb.idempotent == ctx.make_key((nm["1"], nm["k"]), {})
    assert orb.idempotent == orb.orbit[1]      # idempotent power is 2
    # an idempotent input closes immediately
    orb2 = semigroup_orbit(orb.idempotent)
    assert len(orb2.orbit) == 1
    assert orb2.idempotent == orb.idempotent
    assert orb2.preperiod == 1 and orb2.period == 1


def test_unit_law_and_zero_absorbs():
    rng = random.Random(11)
    for G in (quaternion_group(), alternating4_group()):
        ctx = _ctx(G)
        unit = ctx.unit_key
        assert unit.is_unit()
        for _ in range(6):
            x = _random_key(ctx, rng)
            assert product(x, unit) == x
            assert product(unit, x) == x
            assert product(x, ctx.zero_key).is_zero()
            assert product(ctx.zero_key, x).is_zero()


def test_regular_key_is_idempotent():
    for G in (quaternion_group(), alternating4_group(), dihedral_group(8)):
        ctx = _ctx(G)
        reg = ctx.regular_key()
        assert product(reg, reg) == reg
        mv = multiplicity_vector(reg)
        assert mv.m == ctx.dims
        assert total_dimension(reg) == G.order


def test_canonical_key_worked_example():
    """v = (t_j, t_k, e1+e2) in T_j + T_k + U gives ({j,k}, {U -> [1:1]})."""
    G = quaternion_group()
    ctx = _ctx(G)
    nm = _name_map(ctx)
    tj, tk = ctx.table_of_ab[nm["j"]], ctx.table_of_ab[nm["k"]]
    iU = ctx.dims.index(2)
    M = AmbientModule(G, [(tj, 1), (tk, 1), (iU, 1)])
    one, zero = Cyc.one(ctx.e), Cyc.zero(ctx.e)
    v = [zero] * M.total_dim
    v[M.offsets[(tj, 0)]] = one
    v[M.offsets[(tk, 0)]] = one
    v[M.offsets[(iU, 0)]] = one
    v[M.offsets[(iU, 0)] + 1] = one
    key = canonical_key(tuple(v), M)
    expected = ctx.make_key((nm["j"], nm["k"]),
                            {iU: CycMatrix([[Cyc.one(1), Cyc.one(1)]], 1)})
    assert key == expected
    assert multiplicity_vector(key).m == (0, 1, 0, 1, 1)
    assert total_dimension(key) == 4


def test_canonical_key_zero_and_full_point():
    G = quaternion_group()
    ctx = _ctx(G)
    nm = _name_map(ctx)
    iU = ctx.dims.index(2)
    M = AmbientModule(G, [(0, 1), (iU, 2)])
    zero, one = Cyc.zero(ctx.e), Cyc.one(ctx.e)
    assert canonical_key((zero,) * M.total_dim, M).is_zero()
    # (t_1, u1, u2) with u1, u2 independent across the two copies of U
    v = [zero] * M.total_dim
    v[M.offsets[(0, 0)]] = one
    v[M.offsets[(iU, 0)]] = one                    # u1 = e1 in copy 0
    v[M.offsets[(iU, 1)] + 1] = one                # u2 = e2 in copy 1
    key = canonical_key(tuple(v), M)
    assert key == ctx.make_key((nm["1"],), {iU: CycMatrix.identity(2, 1)})


def test_product_matches_full_tensor_oracle():
    rng = random.Random(23)
    for G in (quaternion_group(), alternating4_group()):
        ctx = _ctx(G)
        for _ in range(5):
            x = _random_key(ctx, rng, max_rows=2)
            y = _random_key(ctx, rng, max_rows=2)
            assert product(x, y) == _product_oracle(ctx, x, y)


def test_product_associative_and_commutative():
    rng = random.Random(31)
    for G in (quaternion_group(), alternating4_group()):
        ctx = _ctx(G)
        for _ in range(6):
            x = _random_key(ctx, rng)
            y = _random_key(ctx, rng)
            z = _random_key(ctx, rng)
            assert product(x, y) == product(y, x)
            assert product(product(x, y), z) == product(x, product(y, z))


def test_a_part_multiplicativity():
    rng = random.Random(41)
    ctx = _ctx(quaternion_group())
    for _ in range(8):
        x = _random_key(ctx, rng, a_prob=0.6)
        y = _random_key(ctx, rng, a_prob=0.6)
        if not x.A or not y.A:
            continue
        setprod = {ctx.Q.mulx(a, c) for a in x.A for c in y.A}
        assert setprod <= set(product(x, y).A)


def test_abelian_products_are_set_products():
    rng = random.Random(43)
    for G in (cyclic_group(6), klein_group()):
        ctx = _ctx(G)
        for _ in range(8):
            x = _random_key(ctx, rng, a_prob=0.5)
            y = _random_key(ctx, rng, a_prob=0.5)
            if x.is_zero() or y.is_zero():
                continue
            p = product(x, y)
            assert not p.B
            assert set(p.A) == {ctx.Q.mulx(a, c) for a in x.A for c in y.A}


def test_multiplicity_monotonicity_nested_pairs():
    """Enlarging one factor never shrinks the multiplicity vector."""
    rng = random.Random(53)
    for G in (quaternion_group(), alternating4_group()):
        ctx = _ctx(G)
        for _ in range(6):
            x = _random_key(ctx, rng)
            y = _random_key(ctx, rng, a_prob=0.25, b_prob=0.3, max_rows=1)
            big = _enlarge(ctx, y, rng)
            mv_small = multiplicity_vector(product(x, y)) \
                if not (x.is_zero() or y.is_zero()) else None
            if x.is_zero() or big is None:
                continue
            if mv_small is not None:
                assert mv_small <= multiplicity_vector(product(x, big))


def _enlarge(ctx, y, rng):
    """A key strictly containing y: extra A element or an extra B row."""
    b = y.b_dict()
    missing_a = [z for z in range(ctx.Q.order) if z not in y.A]
    growable = [i for i, d in enumerate(ctx.dims)
                if d >= 2 and (i not in b or b[i].nrows < d)]
    options = []
    if missing_a:
        options.append("a")
    if growable:
        options.append("b")
    if not options:
        return None
    if rng.choice(options) == "a":
        return ctx.make_key(y.A + (rng.choice(missing_a),), b)
    i = rng.choice(growable)
    d = ctx.dims[i]
    old = [list(r) for r in b[i].rows] if i in b else []
    while True:
        row = [[Cyc.rational(rng.randint(-2, 2), ctx.e) for _ in range(d)]]
        R, rk, _ = rref(CycMatrix(old + row, ctx.e))
        if rk == len(old) + 1:
            b[i] = CycMatrix([list(r) for r in R.rows[:rk]], R.n)
            return ctx.make_key(y.A, b)


def test_push_pull_formula():
    """Ind(Res(N) * M) equals N * Ind(M) at the key level."""
    rng = random.Random(61)
    cases = []
    A4 = alternating4_group()
    cases.append((A4, next(s for s in subgroup_lattice(A4) if s.order == 3)))
    Q8 = quaternion_group()
    cases.append((Q8, next(s for s in subgroup_lattice(Q8) if s.order == 4)))
    for G, sub in cases:
        ctx = _ctx(G)
        ctxH, _, _ = ctx.sub_context(sub)
        for _ in range(4):
            N = _random_key(ctx, rng, max_rows=2)
            M = _random_key(ctxH, rng, max_rows=2)
            if N.is_zero() or M.is_zero():
                continue
            left = induce_glider(sub, ctxH.product(restrict_glider(sub, N), M))
            right = ctx.product(N, induce_glider(sub, M))
            assert left == right


def test_res_ind_is_identity():
    rng = random.Random(71)
    cases = []
    A4 = alternating4_group()
    cases.append((A4, next(s for s in subgroup_lattice(A4) if s.order == 3)))
    Q8 = quaternion_group()
    for order in (2, 4):
        cases.append((Q8, next(s for s in subgroup_lattice(Q8)
                               if s.order == order)))
    D8 = dihedral_group(8)
    cases.append((D8, next(s for s in subgroup_lattice(D8) if s.order == 4)))
    for G, sub in cases:
        ctx = _ctx(G)
        ctxH, _, _ = ctx.sub_context(sub)
        for _ in range(5):
            x = _random_key(ctxH, rng)
            assert restrict_glider(sub, induce_glider(sub, x)) == x


def test_induction_injective_on_keys():
    """Distinct keys over H induce to distinct keys over G (by hashing)."""
    rng = random.Random(73)
    A4 = alternating4_group()
    sub = next(s for s in subgroup_lattice(A4) if s.order == 3)
    ctx = _ctx(A4)
    ctxH, _, _ = ctx.sub_context(sub)
    keys = set()
    # every A-only key over C3, plus random extras
    import itertools
    for r in range(1, ctxH.Q.order + 1):
        for combo in itertools.combinations(range(ctxH.Q.order), r):
            keys.add(ctxH.make_key(combo, {}))
    for _ in range(5):
        keys.add(_random_key(ctxH, rng))
    keys.discard(ctxH.zero_key)
    induced = {induce_glider(sub, k) for k in keys}
    assert len(induced) == len(keys)


def test_induced_and_restricted_idempotents_stay_idempotent():
    rng = random.Random(79)
    Q8 = quaternion_group()
    ctx = _ctx(Q8)
    sub = next(s for s in subgroup_lattice(Q8) if s.order == 4)
    ctxH, _, _ = ctx.sub_context(sub)
    for _ in range(5):
        x = _random_key(ctxH, rng)
        if x.is_zero():
            continue
        e = semigroup_orbit(x).idempotent
        ind = induce_glider(sub, e)
        assert ctx.product(ind, ind) == ind
    for _ in range(5):
        y = _random_key(ctx, rng)
        if y.is_zero():
            continue
        e = semigroup_orbit(y).idempotent
        res = restrict_glider(sub, e)
        assert ctxH.product(res, res) == res


def test_q8_restriction_to_center_not_injective():
    """All four linear keys of Q8 restrict to the unit key over {1,-1}."""
    Q8 = quaternion_group()
    ctx = _ctx(Q8)
    center = next(s for s in subgroup_lattice(Q8) if s.order == 2)
    ctxH, _, _ = ctx.sub_context(center)
    images = {restrict_glider(center, ctx.make_key((z,), {}))
              for z in range(ctx.Q.order)}
    assert images == {ctxH.unit_key}


def test_induction_c3_to_a4_witness():
    """Inducing the trivial glider of C3 picks up the 3-dimensional irrep."""
    A4 = alternating4_group()
    ctx = _ctx(A4)
    sub = next(s for s in subgroup_lattice(A4) if s.order == 3)
    ctxH, _, _ = ctx.sub_context(sub)
    ind = induce_glider(sub, ctxH.unit_key)
    i3 = ctx.dims.index(3)
    one = Cyc.one(1)
    expected = ctx.make_key((ctx.Q.identity,),
                            {i3: CycMatrix([[one, one, one]], 1)})
    assert ind == expected
    assert restrict_glider(sub, ind) == ctxH.unit_key


def test_ring_element_arithmetic():
    ctx = _ctx(quaternion_group())
    nm = _name_map(ctx)
    x = RingElement.from_key(ctx.make_key((nm["i"], nm["j"]), {}))
    y = RingElement.from_key(ctx.make_key((nm["k"],), {}))
    assert ring_ops("add", x, ring_ops("scale", x, -1)).is_zero()
    lhs = ring_ops("multiply", x + y, x + y)
    rhs = (x * x) + ring_ops("scale", x * y, 2) + (y * y)
    assert lhs == rhs
    # nilpotent difference: (x - x^3)^2 = 0; here x^3 = x cancels directly,
    # and the formal expansion x^2 - 2x^4 + x^6 collapses the same way
    d = x - (x * x * x)
    assert d.is_zero()
    assert (d * d).is_zero()
    x2 = x * x
    x4 = x2 * x2
    x6 = x4 * x2
    assert (x2 - ring_ops("scale", x4, 2) + x6).is_zero()
    half = ring_ops("scale", x, Fraction(1, 2))
    assert ring_ops("add", half, half) == x


def test_class2_orbits_all_resolve():
    rng = random.Random(83)
    ctx = _ctx(heisenberg_group(3))
    for _ in range(30):
        x = _random_key(ctx, rng)
        orb = semigroup_orbit(x, 1024)
        assert orb.resolved


def test_key_json_round_trip():
    rng = random.Random(89)
    for G in (quaternion_group(), alternating4_group()):
        ctx = _ctx(G)
        for _ in range(4):
            key = _random_key(ctx, rng)
            assert ctx.key_from_json(key.to_json()) == key
    ctx = _ctx(quaternion_group())
    assert ctx.key_from_json(ctx.zero_key.to_json()).is_zero()


def test_make_key_rejects_invalid_data():
    ctx = _ctx(quaternion_group())
    iU = ctx.dims.index(2)
    one, zero = Cyc.one(4), Cyc.zero(4)
    try:
        ctx.make_key((99,), {})
        assert False, "A index outside G^ab accepted"
    except ValueError:
        pass
    try:
        ctx.make_key((), {0: CycMatrix([[one]], 4)})
        assert False, "linear irrep accepted in B"
    except ValueError:
        pass
    try:
        # not RREF: pivot not normalized
        two = Cyc.rational(2, 4)
        ctx.make_key((), {iU: CycMatrix([[two, zero]], 4)})
        assert False, "non-RREF matrix accepted"
    except ValueError:
        pass
    try:
        ctx.make_key((), {iU: CycMatrix([[one, zero], [one, zero]], 4)})
        assert False, "rank-deficient matrix accepted"
    except ValueError:
        pass

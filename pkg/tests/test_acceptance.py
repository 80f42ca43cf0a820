"""Acceptance suite: twelve end-to-end checks with time budgets.

Each test prints exactly one ``criterion NN <name>: PASS/FAIL`` line
(visible with ``pytest -s``) and enforces its wall-clock budget.  Groups
are shared across criteria so per-group caches warm once, the way a single
long-running session would behave.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

from glider_ring.cyclotomic import Cyc, eq_embedded
from glider_ring.linalg import CycMatrix, rref
from glider_ring.groups import (Subgroup, closure, conjugacy_classes,
                                construct_group, center, derived_subgroup,
                                generated_subgroup, nilpotency_class,
                                subgroup_lattice)
from glider_ring.characters import AmbientModule, character_table
from glider_ring.ring import GliderContext, canonical_key
from glider_ring import structure as st

_GROUPS = {}


def _group(name):
    if name not in _GROUPS:
        _GROUPS[name] = construct_group(name)
    return _GROUPS[name]


def _ctx(name):
    return GliderContext.for_group(_group(name))


@contextmanager
def _criterion(num, name, budget):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        dt = time.perf_counter() - t0
        print(f"criterion {num:02d} {name}: FAIL ({dt:.2f}s / {budget:.0f}s)")
        raise
    dt = time.perf_counter() - t0
    ok = dt <= budget
    print(f"criterion {num:02d} {name}: "
          f"{'PASS' if ok else 'FAIL (over budget)'} "
          f"({dt:.2f}s / {budget:.0f}s)")
    assert ok, f"time budget exceeded: {dt:.2f}s > {budget}s"


def test_01_a4_character_table_exact():
    with _criterion(1, "a4-character-table", 1.0):
        G = _group("a4")
        classes = conjugacy_classes(G)
        assert [len(c) for c in classes] == [1, 3, 4, 4]
        table = character_table(G)
        assert [ch.degree for ch in table] == [1, 1, 1, 3]

        one = Cyc.one(1)
        w, w2 = Cyc.root(3), Cyc.root(3, 2)
        lin1, lin2 = table[1], table[2]
        for ch in (lin1, lin2):
            assert eq_embedded(ch.values[0], one)
            assert eq_embedded(ch.values[1], one)
        # the two nontrivial linear characters take the primitive cube
        # roots on the two 3-cycle classes and are exchanged by conjugation
        for ch in (lin1, lin2):
            for c in (2, 3):
                assert eq_embedded(ch.values[c], w) or \
                    eq_embedded(ch.values[c], w2)
            assert not eq_embedded(ch.values[2], ch.values[3])
        assert eq_embedded(lin1.values[2], w) != eq_embedded(lin2.values[2], w)
        assert lin1.conj() == lin2

        deg3 = table[3]
        expected = [3, -1, 0, 0]
        for val, q in zip(deg3.values, expected):
            assert eq_embedded(val, Cyc.rational(Fraction(q), 1))


def test_02_q8_worked_example_keys():
    with _criterion(2, "q8-canonical-keys", 1.0):
        ctx = _ctx("q8")
        G = ctx.group
        name_of = {nm: z for z, nm in enumerate(ctx.ab_names)}
        zj, zk = name_of["j"], name_of["k"]
        tj, tk = ctx.table_of_ab[zj], ctx.table_of_ab[zk]
        t1 = ctx.table_of_ab[ctx.Q.identity]
        e = ctx.e
        one, zero = Cyc.one(e), Cyc.zero(e)

        # T_j + T_k + U containing the span of (t_j, t_k, e1 + e2)
        M = AmbientModule(G, [(tj, 1), (tk, 1), (4, 1)])
        key = canonical_key([one, one, one, one], M)
        assert key == ctx.make_key([zj, zk], {4: CycMatrix([[1, 1]], 1)})

        # T_1 + U + U containing the span of (t_1, u1, u2) with u1, u2
        # independent: the Grassmannian part is the full point
        M = AmbientModule(G, [(t1, 1), (4, 2)])
        key = canonical_key([one, one, zero, zero, one], M)
        assert key == ctx.make_key([ctx.Q.identity],
                                   {4: CycMatrix.identity(2, 1)})


def test_03_q8_orbit_idempotent():
    with _criterion(3, "q8-orbit-idempotent", 1.0):
        ctx = _ctx("q8")
        name_of = {nm: z for z, nm in enumerate(ctx.ab_names)}
        x = ctx.make_key([name_of["i"], name_of["j"]], {})
        res = ctx.orbit(x)
        assert res.resolved
        target = ctx.make_key([ctx.Q.identity, name_of["k"]], {})
        assert res.idempotent == target
        power = res.period * ((res.preperiod + res.period - 1) // res.period)
        assert power == 2
        assert res.orbit[1] == target
        assert ctx.product(target, target) == target


def test_04_a4_r_witness_and_nilpotent_triviality():
    with _criterion(4, "r-module-probe", 5.0):
        ctx = _ctx("a4")
        G = ctx.group
        g3 = next(g for g in range(G.order) if G.element_order(g) == 3)
        sub = generated_subgroup(G, [g3])
        assert sub.order == 3
        Hgrp, _ = sub.as_group()
        ctxH = GliderContext.for_group(Hgrp)
        x = ctx.induce(sub, ctxH.unit_key)
        expected = ctx.make_key([ctx.Q.identity],
                                {3: CycMatrix([[1, 1, 1]], 1)})
        assert x == expected
        assert ctx.product(x, x) == x
        # idempotent of shape ({1}, D) with D nonempty: lies outside the
        # group-algebra part of the ring
        assert x.A == (ctx.Q.identity,) and x.B

        rp = st.R_probe(G, samples=60, seed=2026)
        assert rp["r_basis_elements"]
        assert x in rp["r_basis_elements"]
        assert rp["nilpotent_iff_trivial"]

        for name in ("c2xc2", "cyclic:6", "cyclic:8", "q8", "dihedral:8",
                     "heisenberg:3"):
            rp = st.R_probe(_group(name), samples=60, seed=2026)
            assert rp["r_basis_elements"] == []
            assert rp["nilpotent_iff_trivial"]
            assert rp["unresolved"] == []


def test_05_class2_linearization():
    with _criterion(5, "class2-linearization", 5.0):
        assert st.class2_linearization(_group("q8")) == [1, 1, 1, 1, 2]
        assert st.class2_linearization(_group("dihedral:8")) == [1, 1, 1, 1, 2]
        heis = st.class2_linearization(_group("heisenberg:3"))
        assert heis == [1] * 9 + [3, 3]
        for powers in ([1, 1, 1, 1, 2], heis):
            assert all(isinstance(n, int) and n <= 4 for n in powers)
        s3 = st.class2_linearization(_group("s3"))
        assert s3 == [1, 1, "never"]


def test_06_obstruction_probes_class2():
    with _criterion(6, "obstruction-probes", 120.0):
        for name in ("q8", "dihedral:8", "heisenberg:3",
                     "g64_232", "g64_236"):
            G = _group(name)
            obs = st.obstruction_probe(G, samples=200, seed=777)
            assert obs["P_unresolved"] == [], name
            assert obs["E_witnesses"] == [], name
        # the order-64 pair also shows no idempotent of shape ({1}, D) with
        # D nonempty, completing the nilpotent-triviality evidence at a
        # sample size its cost allows
        for name in ("g64_232", "g64_236"):
            rp = st.R_probe(_group(name), samples=30, seed=777)
            assert rp["r_basis_elements"] == [], name
            assert rp["nilpotent_iff_trivial"], name
            assert rp["unresolved"] == [], name


def test_07_decomposition_theorem():
    with _criterion(7, "decomposition-reports", 600.0):
        expect = {"c2xc2": 11, "q8": 19, "dihedral:8": 27, "heisenberg:3": 85}
        for name, dims in expect.items():
            G = _group(name)
            t0 = time.perf_counter()
            rep = st.decompose(G, samples=50, seed=11)
            dt = time.perf_counter() - t0
            assert dt <= (600.0 if G.order > 8 else 60.0), name
            assert rep.verdict == "verified", name
            assert rep.dims == dims, name
            assert rep.rank == dims, name
            lat = subgroup_lattice(G)
            assert len(rep.subgroups) == len(lat), name
            got = sorted(s.elements for s in rep.subgroups)
            assert got == sorted(s.elements for s in lat), name
            assert all(all(row) for row in rep.orthogonal), name
            assert len(rep.samples) >= 50, name
            assert all(n is not None for _, _, n in rep.samples), name


def test_08_nilpotency_witnesses():
    with _criterion(8, "nilpotency-witnesses", 300.0):
        names = ("c2xc2", "s3", "q8", "dihedral:8", "a4", "cyclic:12",
                 "heisenberg:3", "g64_232", "g64_236")
        for name in names:
            ctx = GliderContext.for_group(_group(name))
            rng = random.Random(880000 + ctx.group.order)
            checked = 0
            while checked < 100:
                x = st._random_key(ctx, rng)
                if not x.A:
                    continue
                d, n, reached_zero = st.nilpotency_witness(x)
                assert reached_zero, (name, str(x))
                res = ctx.orbit(x)
                assert n <= res.preperiod + res.period, (name, str(x))
                checked += 1


def test_09_lattice_duality_and_meet_join():
    with _criterion(9, "lattice-duality", 60.0):
        for name in ("c2xc2", "cyclic:12", "s3", "q8", "dihedral:8", "a4",
                     "heisenberg:3"):
            G = _group(name)
            ctx = GliderContext.for_group(G)
            der = set(derived_subgroup(G).elements)
            above = [H for H in subgroup_lattice(G)
                     if der <= set(H.elements)]
            for H in above:
                back = st.L_of(G, st.A_iota(H).elements)
                assert back.elements == H.elements
            for N in subgroup_lattice(ctx.Q):
                assert st.A_iota(st.L_of(G, N.elements)).elements == \
                    N.elements
            for H, E in combinations(above, 2):
                meet = tuple(sorted(set(H.elements) & set(E.elements)))
                join = closure(G, set(H.elements) | set(E.elements))
                a_h = set(st.A_iota(H).elements)
                a_e = set(st.A_iota(E).elements)
                # product of the images is the image of the meet, and the
                # intersection of the images is the image of the join
                prod = set(closure(ctx.Q, a_h | a_e))
                meet_sub = Subgroup(G, meet, check=False)
                join_sub = Subgroup(G, join, check=False)
                assert set(st.A_iota(meet_sub).elements) == prod
                assert set(st.A_iota(join_sub).elements) == a_h & a_e


def test_10_isocategorical_pair_distinguished():
    with _criterion(10, "order64-pair", 600.0):
        G1, G2 = _group("g64_232"), _group("g64_236")
        for G in (G1, G2):
            assert G.order == 64
            assert nilpotency_class(G) == 2
            der = derived_subgroup(G)
            cen = center(G)
            assert der.elements == cen.elements
            assert der.order == 4
        res = st.distinguish(G1, G2)
        assert res["degree_multisets"][0] == res["degree_multisets"][1]
        assert res["class_counts"] == [25, 25]
        assert res["representation_level_equal"]
        assert res["subgroup_counts"] == [197, 181]
        assert not res["subgroup_level_equal"]
        assert res["glider_distinguishable"]
        assert res["verdict"] == "glider-distinguishable"


def test_11_ring_morphism_laws():
    with _criterion(11, "ring-morphism-laws", 300.0):
        rng = random.Random(411)
        pairs = 0
        for name in ("c2xc2", "s3", "q8", "dihedral:8", "cyclic:12", "a4",
                     "heisenberg:3"):
            G = _group(name)
            ctx = GliderContext.for_group(G)
            for sub in subgroup_lattice(G):
                Hgrp, _ = sub.as_group()
                ctxH = GliderContext.for_group(Hgrp)
                for _ in range(4):
                    x = st._random_key(ctxH, rng)
                    y = st._random_key(ctxH, rng)
                    w = st._random_key(ctx, rng)
                    ind_x = ctx.induce(sub, x)
                    # induction is multiplicative
                    assert ctx.induce(sub, ctxH.product(x, y)) == \
                        ctx.product(ind_x, ctx.induce(sub, y))
                    # restriction undoes induction
                    assert ctx.restrict(sub, ind_x) == x
                    # push-pull
                    assert ctx.induce(
                        sub, ctxH.product(ctx.restrict(sub, w), x)) == \
                        ctx.product(w, ind_x)
                    pairs += 1
        assert pairs >= 200


def _isotypic_projectors(G, M, table):
    """Central projector matrices d_i/|G| * sum_g chi_i(g^-1) rho(g)."""
    projs = {}
    for i, _ in M.components:
        acc = CycMatrix.zeros(M.total_dim, M.total_dim, M.rep.e)
        for g in range(G.order):
            val = table[i].value_of_element(int(G.inv[g])).embed(M.rep.e)
            acc = acc + M.action(g).scale(val)
        projs[i] = acc.scale(Fraction(table[i].degree, G.order))
    return projs


def test_12_oracle_equivalence():
    with _criterion(12, "oracle-equivalence", 300.0):
        from glider_ring.characters import decompose_cyclic

        # cyclic-module decomposition against the literal span of the orbit
        # and against isotypic projection ranks
        for name in ("c2xc2", "s3", "q8", "dihedral:8", "cyclic:12", "a4"):
            G = _group(name)
            table = character_table(G)
            rng = random.Random(124000 + G.order)
            proj_cache = {}
            done = 0
            while done < 100:
                sig = []
                total = 0
                for i, ch in enumerate(table):
                    m = rng.randint(0, 2)
                    if m and total + m * ch.degree <= 10:
                        sig.append((i, m))
                        total += m * ch.degree
                if not sig:
                    continue
                done += 1
                M = AmbientModule(G, sig)
                e = M.rep.e
                v = [Cyc.rational(Fraction(rng.randint(-3, 3)), e)
                     for _ in range(M.total_dim)]
                l, points = decompose_cyclic(v, M)
                orbit_rows = [M.apply(g, v) for g in range(G.order)]
                span = rref(CycMatrix(orbit_rows, e))[1]
                assert span == sum(l[i] * table[i].degree
                                   for i in range(len(table)))
                key = tuple(sig)
                if key not in proj_cache:
                    proj_cache[key] = _isotypic_projectors(G, M, table)
                for i, _ in M.components:
                    proj_rows = [proj_cache[key][i].apply(row)
                                 for row in orbit_rows]
                    prank = rref(CycMatrix(proj_rows, e))[1]
                    assert prank == l[i] * table[i].degree
                for i, mat in points.items():
                    assert mat.nrows == l[i]
                    assert rref(mat)[1] == l[i]

        # subgroup lattice against subset-closure brute force
        for name in ("c2xc2", "s3", "q8", "dihedral:8", "cyclic:12", "a4",
                     "cyclic:16", "dihedral:16"):
            G = _group(name)
            found = {frozenset({G.identity})}
            elems = range(G.order)
            for size in (1, 2, 3, 4):
                for subset in combinations(elems, size):
                    found.add(frozenset(closure(G, subset)))
            lat = {frozenset(s.elements) for s in subgroup_lattice(G)}
            assert found == lat, name

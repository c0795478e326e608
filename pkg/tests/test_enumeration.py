import math
from itertools import combinations_with_replacement

import pytest

from fixitylab.enumeration import (
    as_context,
    centralizer,
    conjugacy_classes,
    cyclic_subgroup_bundles,
    enumerate_elements,
    euler_phi,
    is_prime_power,
    is_simple_group,
    normalizer,
    normalizer_brute,
    p_part,
    structure_predicates,
    subgroup_closure,
    subgroups_up_to_conjugacy,
    sylow,
)
from fixitylab.errors import CapExceededError, MembershipError, PreconditionError
from fixitylab.perm import Permutation, build_bsgs, conjugate_table, pack_table
from fixitylab.zoo import resolve_group


def test_euler_phi():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert euler_phi(97) == 96
    assert euler_phi(100) == 40


def test_is_prime_power():
    assert is_prime_power(8) == 2
    assert is_prime_power(81) == 3
    assert is_prime_power(13) == 13
    assert is_prime_power(12) is None
    assert is_prime_power(1) is None


def test_p_part():
    assert p_part(360, 2) == 8
    assert p_part(360, 3) == 9
    assert p_part(360, 7) == 1


def test_elements_sorted_identity_first(sym4):
    elems = enumerate_elements(sym4)
    assert len(elems) == 24
    assert elems == sorted(elems)
    assert elems[0] == pack_table([0, 1, 2, 3])


def test_class_sizes(sym4, alt5):
    assert sorted(c.size for c in conjugacy_classes(sym4)) == [1, 3, 6, 6, 8]
    assert sorted(c.size for c in conjugacy_classes(alt5)) == [1, 12, 12, 15, 20]


def test_class_equation_and_reps(group_cache):
    for sel in ("sym_4", "alt_5", "dihedral_6", "psl2_7"):
        g = group_cache(sel)
        ctx = as_context(g)
        classes = ctx.classes
        assert sum(c.size for c in classes) == g.order
        for cid, c in enumerate(classes):
            assert c.size * c.centralizer_order == g.order
            assert c.rep_index == min(c.indices)
            assert len(c.indices) == c.size
            assert all(ctx.class_of[i] == cid for i in c.indices)
            assert all(ctx.element_orders[i] == c.element_order for i in c.indices)


def test_bundle_invariants(group_cache):
    for sel in ("sym_4", "alt_5", "psl2_7", "cyclic_12"):
        g = group_cache(sel)
        bundles = cyclic_subgroup_bundles(g)
        # every nonidentity element generates exactly one cyclic subgroup
        assert sum(b.n_generators for b in bundles) == g.order - 1
        for b in bundles:
            assert b.n_generators == b.n_subgroups * euler_phi(b.element_order)
            assert b.n_subgroups * b.normalizer_order == g.order


def test_centralizer_matches_brute(sym4):
    ctx = as_context(sym4)
    for c in ctx.classes:
        z = centralizer(ctx, c.representative)
        assert z.group.order == c.centralizer_order
        x = c.representative.images
        brute = [e for e in ctx.elements if conjugate_table(x, e) == x]
        assert sorted(z.group.element_tables()) == brute


def test_normalizer_matches_brute(group_cache):
    for sel in ("sym_4", "alt_5", "dihedral_6"):
        g = group_cache(sel)
        for sc in subgroups_up_to_conjugacy(g):
            fast = normalizer(g, sc.representative)
            brute = normalizer_brute(g, sc.representative)
            assert fast.group.order == brute.group.order == sc.normalizer_order
            assert fast.group.element_tables() == brute.group.element_tables()


def test_sylow(group_cache):
    for sel, facts in (
        ("sym_4", {2: 8, 3: 3}),
        ("alt_5", {2: 4, 3: 3, 5: 5}),
        ("alt_6", {2: 8, 3: 9, 5: 5}),
    ):
        g = group_cache(sel)
        for p, expected in facts.items():
            s = sylow(g, p)
            assert s.group.order == expected == p_part(g.order, p)
            n_p = g.order // normalizer(g, s).group.order
            assert n_p % p == 1


def test_sylow_preconditions(sym4):
    with pytest.raises(PreconditionError):
        sylow(sym4, 5)
    with pytest.raises(PreconditionError):
        sylow(sym4, 4)


def _two_generated_lattice(ctx):
    """Oracle: canonical forms of all subgroup classes, via 2-generated
    closures.  Complete whenever every subgroup of the group happens to be
    2-generated, which holds for Sym(4) and Alt(5)."""
    elems = ctx.elements
    ident = elems[0]
    sets = {frozenset({0})}
    for a, b in combinations_with_replacement(range(1, ctx.n), 2):
        closure = build_bsgs([elems[a], elems[b]], degree=ctx.group.degree)
        sets.add(frozenset(ctx.index[t] for t in closure.element_tables()))
    canonicals = set()
    while sets:
        start = next(iter(sets))
        seen = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            for ct in ctx.conj_tables:
                img = frozenset(ct[i] for i in cur)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        canonicals.add(min(tuple(sorted(m)) for m in seen))
        sets -= seen
    return canonicals


@pytest.mark.parametrize("sel,n_classes", [("sym_4", 11), ("alt_5", 9)])
def test_subgroup_lattice_vs_oracle(group_cache, sel, n_classes):
    g = group_cache(sel)
    ctx = as_context(g)
    lattice = ctx.subgroup_classes()
    assert len(lattice) == n_classes
    assert {sc.canonical for sc in lattice} == _two_generated_lattice(ctx)
    for sc in lattice:
        assert sc.order == sc.representative.group.order == len(sc.indices)
        assert g.order % sc.order == 0
        assert sc.class_size * sc.normalizer_order == g.order
    orders = [sc.order for sc in lattice]
    assert orders == sorted(orders)


def test_lattice_orders(sym4, alt5):
    assert [sc.order for sc in subgroups_up_to_conjugacy(sym4)] == [
        1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24,
    ]
    assert [sc.order for sc in subgroups_up_to_conjugacy(alt5)] == [
        1, 2, 3, 4, 5, 6, 10, 12, 60,
    ]


def _f20():
    # Frobenius group of order 20: x -> x+1 and x -> 2x on Z/5
    return build_bsgs(
        [Permutation(pack_table([1, 2, 3, 4, 0])), Permutation(pack_table([0, 2, 4, 1, 3]))]
    )


def test_structure_predicates(group_cache):
    c6 = structure_predicates(group_cache("cyclic_6"))
    assert c6.is_cyclic and c6.is_abelian and c6.exponent == 6
    assert not c6.is_elementary_abelian

    d6 = structure_predicates(group_cache("dihedral_6"))
    assert d6.is_dihedral and not d6.is_abelian
    assert d6.n_involutions == 7

    v4 = sylow(group_cache("alt_4"), 2)
    r = structure_predicates(v4)
    assert r.is_elementary_abelian and r.p_group_prime == 2 and r.exponent == 2

    a4 = structure_predicates(group_cache("alt_4"))
    assert a4.n_involutions == 3
    assert a4.count_of_order(3) == 8
    assert a4.count_of_order(7) == 0
    assert not a4.is_nilpotent and not a4.is_dihedral

    f20 = structure_predicates(_f20())
    assert f20.is_frobenius_cyclic_complement
    assert f20.frobenius_kernel_order == 5
    assert f20.frobenius_complement_order == 4
    assert not f20.is_cyclic and not f20.is_dihedral


def test_is_simple(group_cache):
    assert is_simple_group(group_cache("alt_5"))
    assert is_simple_group(group_cache("alt_6"))
    assert is_simple_group(group_cache("cyclic_7"))
    assert not is_simple_group(group_cache("sym_4"))
    assert not is_simple_group(group_cache("alt_4"))
    assert not is_simple_group(group_cache("cyclic_6"))


def test_subgroup_closure_membership(alt5):
    odd = Permutation(pack_table([1, 0, 2, 3, 4]))
    with pytest.raises(MembershipError):
        subgroup_closure(alt5, [odd])
    even = Permutation(pack_table([1, 2, 0, 3, 4]))
    assert subgroup_closure(alt5, [even]).group.order == 3
    assert subgroup_closure(alt5, []).group.order == 1


def test_as_context_cached(sym4):
    ctx = as_context(sym4)
    assert as_context(sym4) is ctx
    assert as_context(ctx) is ctx


def test_caps(group_cache):
    # fresh object: a cached context would satisfy the request without work
    fresh = resolve_group("alt_5")[1]
    with pytest.raises(CapExceededError):
        as_context(fresh, element_cap=59)
    with pytest.raises(CapExceededError):
        subgroups_up_to_conjugacy(group_cache("sym_5"), cap=100)


def test_lagrange_over_lattice(group_cache):
    g = group_cache("psl2_7")
    lattice = subgroups_up_to_conjugacy(g)
    assert len(lattice) == 15
    for sc in lattice:
        assert math.gcd(sc.order, g.order) == sc.order

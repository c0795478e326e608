"""Exhaustive structural computations for fully enumerable groups.

Everything here works on a :class:`GroupContext`: the sorted element list of
one group together with lookup tables for conjugation by each generator.
Conjugacy classes, centralizers, normalizers, Sylow subgroups and the
subgroup lattice up to conjugacy all reduce to orbit computations on element
indices (or on frozensets of element indices) under that conjugation action,
with Schreier generators supplying the stabilizers.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from weakref import WeakKeyDictionary

from .errors import CapExceededError, MembershipError, PreconditionError
from .ffield import is_prime
from .perm import (
    ImageTable,
    PermGroup,
    Permutation,
    Subgroup,
    build_bsgs,
    compose_tables,
    conjugate_table,
    identity_table,
    invert_table,
    table_order,
    table_power,
)

ELEMENT_CAP = 200_000
SUBGROUP_CAP = 10_000


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def is_prime_power(n: int) -> int | None:
    """The prime p with n = p^k (k >= 1), or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1
    return n


def p_part(n: int, p: int) -> int:
    pp = 1
    while n % p == 0:
        n //= p
        pp *= p
    return pp


@dataclass(eq=False)
class ConjClass:
    """One conjugacy class of group elements."""

    representative: Permutation
    size: int
    element_order: int
    centralizer_order: int
    rep_index: int
    indices: tuple[int, ...]


@dataclass(eq=False)
class CyclicBundle:
    """One conjugacy class of nontrivial cyclic subgroups.

    Fuses the element classes whose members generate conjugate cyclic
    subgroups; every generator of such a subgroup has the same order and the
    same centralizer order, so the pair (element_order, centralizer_order)
    is well defined per bundle.
    """

    rep_index: int
    element_order: int
    centralizer_order: int
    class_ids: tuple[int, ...]
    n_generators: int
    n_subgroups: int
    normalizer_order: int


@dataclass(frozen=True)
class StructureRecord:
    """Structure flags for one group, computed by definition."""

    order: int
    exponent: int
    is_cyclic: bool
    is_abelian: bool
    is_elementary_abelian: bool
    is_dihedral: bool
    is_nilpotent: bool
    p_group_prime: int | None
    n_involutions: int
    is_frobenius_cyclic_complement: bool
    frobenius_kernel_order: int | None
    frobenius_complement_order: int | None
    order_counts: tuple[tuple[int, int], ...]

    def count_of_order(self, k: int) -> int:
        for o, c in self.order_counts:
            if o == k:
                return c
        return 0


@dataclass(eq=False)
class SubgroupClass:
    """One conjugacy class of subgroups."""

    representative: Subgroup
    normalizer_order: int
    class_size: int
    predicates: StructureRecord
    order: int
    indices: frozenset[int]
    canonical: tuple[int, ...]
    normalizer: Subgroup


class GroupContext:
    """Cached exhaustive data for one fully enumerated group."""

    def __init__(self, group: PermGroup, element_cap: int = ELEMENT_CAP):
        if group.order > element_cap:
            raise CapExceededError(
                f"group order {group.order} exceeds element cap {element_cap}"
            )
        self.group = group
        self.elements: list[ImageTable] = group.element_tables()
        self.n = len(self.elements)
        self.index: dict[ImageTable, int] = {t: i for i, t in enumerate(self.elements)}
        # the identity is lexicographically least: the first moved point of
        # any other element maps strictly upward
        assert self.elements[0] == identity_table(group.degree)
        self._conj_tables: list[list[int]] | None = None
        self._classes: list[ConjClass] | None = None
        self._class_of: list[int] | None = None
        self._element_orders: list[int] | None = None
        self._bundles: list[CyclicBundle] | None = None
        self._bundle_of_class: list[int] | None = None
        self._subgroup_classes: list[SubgroupClass] | None = None

    # -- conjugation action on element indices --------------------------------

    @property
    def conj_tables(self) -> list[list[int]]:
        """conj_tables[j][i] = index of g_j^-1 * e_i * g_j."""
        if self._conj_tables is None:
            tabs = []
            for g in self.group.gen_tables:
                tabs.append([self.index[conjugate_table(e, g)] for e in self.elements])
            self._conj_tables = tabs
        return self._conj_tables

    def conj_index(self, i: int, g: ImageTable) -> int:
        return self.index[conjugate_table(self.elements[i], g)]

    # -- conjugacy classes -----------------------------------------------------

    def _compute_classes(self) -> None:
        n = self.n
        class_of = [-1] * n
        orders = [0] * n
        classes: list[ConjClass] = []
        tabs = self.conj_tables
        for start in range(n):
            if class_of[start] >= 0:
                continue
            cid = len(classes)
            members = [start]
            class_of[start] = cid
            qi = 0
            while qi < len(members):
                cur = members[qi]
                qi += 1
                for ct in tabs:
                    nxt = ct[cur]
                    if class_of[nxt] < 0:
                        class_of[nxt] = cid
                        members.append(nxt)
            o = table_order(self.elements[start])
            for m in members:
                orders[m] = o
            size = len(members)
            if self.n % size:
                raise MembershipError("class size does not divide the group order")
            members.sort()
            classes.append(
                ConjClass(
                    representative=Permutation(self.elements[start], _trusted=True),
                    size=size,
                    element_order=o,
                    centralizer_order=self.n // size,
                    rep_index=start,
                    indices=tuple(members),
                )
            )
        assert sum(c.size for c in classes) == n
        self._classes = classes
        self._class_of = class_of
        self._element_orders = orders

    @property
    def classes(self) -> list[ConjClass]:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    @property
    def class_of(self) -> list[int]:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of

    @property
    def element_orders(self) -> list[int]:
        if self._element_orders is None:
            self._compute_classes()
        return self._element_orders

    # -- classes of cyclic subgroups -------------------------------------------

    def _compute_bundles(self) -> None:
        classes = self.classes
        parent = list(range(len(classes)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for cid, c in enumerate(classes):
            o = c.element_order
            if o == 1:
                continue
            t = self.elements[c.rep_index]
            for k in range(2, o):
                if math.gcd(k, o) == 1:
                    other = find(self.class_of[self.index[table_power(t, k)]])
                    root = find(cid)
                    if other != root:
                        parent[max(root, other)] = min(root, other)
        fused: dict[int, list[int]] = {}
        for cid, c in enumerate(classes):
            if c.element_order == 1:
                continue
            fused.setdefault(find(cid), []).append(cid)
        bundles = []
        for root in sorted(fused):
            cids = sorted(fused[root])
            c0 = classes[cids[0]]
            o = c0.element_order
            assert all(classes[c].element_order == o for c in cids)
            assert all(classes[c].centralizer_order == c0.centralizer_order for c in cids)
            n_gen = sum(classes[c].size for c in cids)
            phi = euler_phi(o)
            # the generators of the conjugates of <x> are exactly the fused
            # classes, phi(o) generators per subgroup
            if n_gen % phi or (self.n * phi) % n_gen:
                raise MembershipError("generator count inconsistent with phi(order)")
            bundles.append(
                CyclicBundle(
                    rep_index=c0.rep_index,
                    element_order=o,
                    centralizer_order=c0.centralizer_order,
                    class_ids=tuple(cids),
                    n_generators=n_gen,
                    n_subgroups=n_gen // phi,
                    normalizer_order=self.n * phi // n_gen,
                )
            )
        self._bundles = bundles

    @property
    def bundles(self) -> list[CyclicBundle]:
        if self._bundles is None:
            self._compute_bundles()
        return self._bundles

    @property
    def bundle_of_class(self) -> list[int]:
        """Class id -> bundle id; -1 for the identity class."""
        if self._bundle_of_class is None:
            boc = [-1] * len(self.classes)
            for bid, b in enumerate(self.bundles):
                for cid in b.class_ids:
                    boc[cid] = bid
            self._bundle_of_class = boc
        return self._bundle_of_class

    # -- stabilizers of the conjugation action ---------------------------------

    def _conjugation_stabilizer(
        self, start, apply_index, seed_tables: list[ImageTable] = ()
    ) -> tuple[int, PermGroup]:
        """Orbit of ``start`` under conjugation by the generators, plus its
        stabilizer built from Schreier generators.

        ``apply_index(state, j)`` advances a state by generator j.  Returns
        (orbit size, stabilizer chain).  ``seed_tables`` are known stabilizer
        members used to prime the generating set.
        """
        ident = identity_table(self.group.degree)
        gen_tables = self.group.gen_tables
        trans = {start: ident}
        members = [start]
        schreier: list[ImageTable] = []
        seen_sgens = set()
        qi = 0
        while qi < len(members):
            cur = members[qi]
            qi += 1
            t_cur = trans[cur]
            for j, gt in enumerate(gen_tables):
                nxt = apply_index(cur, j)
                if nxt not in trans:
                    trans[nxt] = compose_tables(t_cur, gt)
                    members.append(nxt)
                else:
                    s = compose_tables(compose_tables(t_cur, gt), invert_table(trans[nxt]))
                    if s != ident and s not in seen_sgens:
                        seen_sgens.add(s)
                        schreier.append(s)
        orbit_size = len(members)
        if self.n % orbit_size:
            raise MembershipError("orbit size does not divide the group order")
        target = self.n // orbit_size
        chain = _greedy_chain(
            self.group.degree, list(seed_tables) + schreier, target_order=target
        )
        if chain.order != target:
            raise MembershipError(
                f"stabilizer order {chain.order} != |G|/orbit = {target}"
            )
        return orbit_size, chain

    # -- subgroup lattice -------------------------------------------------------

    def _subgroup_orbit(
        self, fs: frozenset[int], chain: PermGroup
    ) -> tuple[int, tuple[int, ...], PermGroup, list[frozenset[int]]]:
        """Conjugation orbit of a subgroup given as an element-index set.

        Returns (class size, canonical form, normalizer chain, orbit).
        """
        conj = self.conj_tables

        def apply_fs(state: frozenset[int], j: int) -> frozenset[int]:
            ct = conj[j]
            return frozenset(ct[i] for i in state)

        ident = identity_table(self.group.degree)
        gen_tables = self.group.gen_tables
        trans = {fs: ident}
        members = [fs]
        schreier: list[ImageTable] = []
        seen_sgens = set()
        qi = 0
        while qi < len(members):
            cur = members[qi]
            qi += 1
            t_cur = trans[cur]
            for j, gt in enumerate(gen_tables):
                nxt = apply_fs(cur, j)
                if nxt not in trans:
                    trans[nxt] = compose_tables(t_cur, gt)
                    members.append(nxt)
                else:
                    s = compose_tables(compose_tables(t_cur, gt), invert_table(trans[nxt]))
                    if s != ident and s not in seen_sgens:
                        seen_sgens.add(s)
                        schreier.append(s)
        class_size = len(members)
        if self.n % class_size:
            raise MembershipError("subgroup class size does not divide |G|")
        target = self.n // class_size
        norm_chain = _greedy_chain(
            self.group.degree, list(chain.gen_tables) + schreier, target_order=target
        )
        if norm_chain.order != target:
            raise MembershipError(
                f"normalizer order {norm_chain.order} != |G|/class size = {target}"
            )
        canonical = min(tuple(sorted(m)) for m in members)
        return class_size, canonical, norm_chain, members

    def _compute_subgroup_classes(self) -> None:
        n = self.n
        g = self.group
        conj = self.conj_tables
        orders = self.element_orders
        pp_order = [is_prime_power(o) is not None for o in orders]

        records: list[dict] = []
        seen: dict[frozenset[int], int] = {}
        queue: deque[int] = deque()

        def add_class(fs: frozenset[int], chain: PermGroup) -> None:
            class_size, canonical, norm_chain, orbit_sets = self._subgroup_orbit(fs, chain)
            cid = len(records)
            records.append(
                {
                    "chain": chain,
                    "indices": fs,
                    "canonical": canonical,
                    "class_size": class_size,
                    "normalizer": norm_chain,
                }
            )
            for member in orbit_sets:
                seen[member] = cid
            queue.append(cid)

        # seeds: trivial subgroup, the whole group, one cyclic subgroup per
        # bundle of element classes
        add_class(frozenset({0}), build_bsgs([], degree=g.degree))
        add_class(frozenset(range(n)), g)
        for b in self.bundles:
            t = self.elements[b.rep_index]
            fs = frozenset(self.index[tab] for tab in _cyclic_tables(t, g.degree))
            if fs not in seen:
                add_class(fs, build_bsgs([t], degree=g.degree))

        # saturate: extend each known class representative A by one element y
        # per N_G(A)-orbit of elements of prime-power order outside A; every
        # subgroup S arises this way from a maximal chain (some prime-power
        # power of any element of S - M lands outside a maximal M < S, and
        # together they generate S)
        while queue:
            cid = queue.popleft()
            rec = records[cid]
            if rec["chain"].order == n:
                continue
            fs = rec["indices"]
            norm_gens = rec["normalizer"].gen_tables
            visited = bytearray(n)
            for i in range(n):
                if visited[i] or i in fs or not pp_order[i]:
                    continue
                # i is the least index in its normalizer-orbit; mark the orbit
                stack = [i]
                visited[i] = 1
                while stack:
                    cur = stack.pop()
                    for ng in norm_gens:
                        nxt = self.conj_index(cur, ng)
                        if not visited[nxt]:
                            visited[nxt] = 1
                            stack.append(nxt)
                ext = build_bsgs(
                    list(rec["chain"].gen_tables) + [self.elements[i]], degree=g.degree
                )
                if ext.order == n:
                    continue
                fs2 = frozenset(self.index[t] for t in ext.element_tables())
                if fs2 not in seen:
                    add_class(fs2, ext)

        records.sort(key=lambda r: (r["chain"].order, r["canonical"]))
        out = []
        for rec in records:
            sub = Subgroup(rec["chain"], g)
            out.append(
                SubgroupClass(
                    representative=sub,
                    normalizer_order=rec["normalizer"].order,
                    class_size=rec["class_size"],
                    predicates=structure_predicates(sub),
                    order=rec["chain"].order,
                    indices=rec["indices"],
                    canonical=rec["canonical"],
                    normalizer=Subgroup(rec["normalizer"], g),
                )
            )
        assert all(c.class_size * c.normalizer_order == n for c in out)
        self._subgroup_classes = out

    def subgroup_classes(self, cap: int = SUBGROUP_CAP) -> list[SubgroupClass]:
        if self.n > cap:
            raise CapExceededError(
                f"group order {self.n} exceeds subgroup-enumeration cap {cap}"
            )
        if self._subgroup_classes is None:
            self._compute_subgroup_classes()
        return self._subgroup_classes


_context_cache: WeakKeyDictionary[PermGroup, GroupContext] = WeakKeyDictionary()


def as_context(g: PermGroup | GroupContext, element_cap: int = ELEMENT_CAP) -> GroupContext:
    if isinstance(g, GroupContext):
        return g
    ctx = _context_cache.get(g)
    if ctx is None:
        ctx = GroupContext(g, element_cap)
        _context_cache[g] = ctx
    return ctx


def _cyclic_tables(t: ImageTable, degree: int) -> list[ImageTable]:
    """All powers of t, identity included."""
    ident = identity_table(degree)
    out = [ident]
    cur = t
    while cur != ident:
        out.append(cur)
        cur = compose_tables(cur, t)
    return out


def _greedy_chain(
    degree: int,
    tables: list[ImageTable],
    target_order: int | None = None,
) -> PermGroup:
    """BSGS from a redundant table list, keeping only non-member generators."""
    gens: list[ImageTable] = []
    chain = build_bsgs([], degree=degree)
    for t in tables:
        if target_order is not None and chain.order == target_order:
            break
        if not chain.contains_table(t):
            gens.append(t)
            chain = build_bsgs(gens, degree=degree)
    return chain


def subgroup_from_tables(
    parent: PermGroup, tables: list[ImageTable], target_order: int | None = None
) -> Subgroup:
    return Subgroup(_greedy_chain(parent.degree, tables, target_order), parent)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def enumerate_elements(g: PermGroup, cap: int = ELEMENT_CAP) -> list[ImageTable]:
    """All elements of g as sorted image tables; errors above the cap."""
    return as_context(g, cap).elements


def conjugacy_classes(g: PermGroup | GroupContext, cap: int = ELEMENT_CAP) -> list[ConjClass]:
    return as_context(g, cap).classes


def cyclic_subgroup_bundles(
    g: PermGroup | GroupContext, cap: int = ELEMENT_CAP
) -> list[CyclicBundle]:
    return as_context(g, cap).bundles


def centralizer(
    g: PermGroup | GroupContext, x: Permutation, cap: int = ELEMENT_CAP
) -> Subgroup:
    """C_G(x), via the conjugation orbit of x and its Schreier generators."""
    ctx = as_context(g, cap)
    t = x.images if isinstance(x, Permutation) else x
    ix = ctx.index.get(t)
    if ix is None:
        raise MembershipError("element is not a member of the group")
    conj = ctx.conj_tables

    def apply_index(i: int, j: int) -> int:
        return conj[j][i]

    size, chain = ctx._conjugation_stabilizer(ix, apply_index, seed_tables=[t])
    return Subgroup(chain, ctx.group)


def normalizer(
    g: PermGroup | GroupContext, u: Subgroup | PermGroup, cap: int = ELEMENT_CAP
) -> Subgroup:
    """N_G(U), via the conjugation orbit of U's element set."""
    ctx = as_context(g, cap)
    ug = u.group if isinstance(u, Subgroup) else u
    try:
        fs = frozenset(ctx.index[t] for t in ug.element_tables())
    except KeyError:
        raise MembershipError("subgroup element is not a member of the group") from None
    _, _, norm_chain, _ = ctx._subgroup_orbit(fs, ug)
    return Subgroup(norm_chain, ctx.group)


def normalizer_brute(
    g: PermGroup | GroupContext, u: Subgroup | PermGroup, cap: int = ELEMENT_CAP
) -> Subgroup:
    """N_G(U) by scanning every element of G; small-scale oracle."""
    ctx = as_context(g, cap)
    ug = u.group if isinstance(u, Subgroup) else u
    fs = frozenset(ctx.index[t] for t in ug.element_tables())
    u_gens = ug.gen_tables
    members = []
    for e in ctx.elements:
        if all(ctx.index[conjugate_table(t, e)] in fs for t in u_gens):
            members.append(e)
    return subgroup_from_tables(ctx.group, members, target_order=len(members))


def sylow(g: PermGroup | GroupContext, p: int, cap: int = ELEMENT_CAP) -> Subgroup:
    """A Sylow p-subgroup, grown through normalizers of p-subgroups."""
    ctx = as_context(g, cap)
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if ctx.n % p:
        raise PreconditionError(f"{p} does not divide the group order {ctx.n}")
    pp = p_part(ctx.n, p)
    orders = ctx.element_orders
    best = -1
    best_order = 0
    for i in range(ctx.n):
        o = orders[i]
        if o > best_order and o == p_part(o, p):
            best_order = o
            best = i
    chain = build_bsgs([ctx.elements[best]], degree=ctx.group.degree)
    while chain.order < pp:
        norm = normalizer(ctx, chain)
        grown = False
        for t in norm.group.element_tables():
            o = table_order(t)
            if o > 1 and o == p_part(o, p) and not chain.contains_table(t):
                chain = build_bsgs(list(chain.gen_tables) + [t], degree=ctx.group.degree)
                grown = True
                break
        if not grown:
            raise MembershipError("p-subgroup stalled below the full p-part")
        if chain.order != p_part(chain.order, p):
            raise MembershipError("extension left the p-group family")
    return Subgroup(chain, ctx.group)


def subgroup_closure(g: PermGroup, seed: list[Permutation]) -> Subgroup:
    """The smallest subgroup of g containing the seed elements."""
    for s in seed:
        if not g.contains(s):
            raise MembershipError(f"seed {s!r} is not a member of the group")
    return Subgroup(build_bsgs(seed, degree=g.degree) if seed else build_bsgs([], degree=g.degree), g)


def subgroups_up_to_conjugacy(
    g: PermGroup | GroupContext, cap: int = SUBGROUP_CAP, element_cap: int = ELEMENT_CAP
) -> list[SubgroupClass]:
    """All conjugacy classes of subgroups, sorted by (order, canonical form)."""
    ctx = as_context(g, element_cap)
    return ctx.subgroup_classes(cap)


# ---------------------------------------------------------------------------
# structure predicates
# ---------------------------------------------------------------------------

def _group_of(u: Subgroup | PermGroup) -> PermGroup:
    return u.group if isinstance(u, Subgroup) else u


def structure_predicates(u: Subgroup | PermGroup) -> StructureRecord:
    """Structure flags computed by definition on the full element list."""
    grp = _group_of(u)
    tables = grp.element_tables()
    n = len(tables)
    degree = grp.degree
    orders = [table_order(t) for t in tables]
    counts: dict[int, int] = {}
    for o in orders:
        counts[o] = counts.get(o, 0) + 1
    exponent = math.lcm(*counts.keys())
    max_order = max(orders)
    gen_tables = grp.gen_tables

    is_cyclic = max_order == n
    is_abelian = all(
        compose_tables(a, b) == compose_tables(b, a)
        for i, a in enumerate(gen_tables)
        for b in gen_tables[i + 1 :]
    )
    p_prime = is_prime_power(n)
    is_elem_ab = is_abelian and p_prime is not None and exponent == p_prime
    n_invol = counts.get(2, 0)

    is_nilpotent = True
    for p in _prime_divisors(n):
        pp = p_part(n, p)
        cnt = sum(1 for o in orders if p_part(o, p) == o)
        if cnt != pp:
            is_nilpotent = False
            break

    is_dihedral = _dihedral_check(tables, orders, gen_tables, n)
    frob, k_ord, j_ord = _frobenius_cyclic_check(tables, orders, gen_tables, n, degree)

    return StructureRecord(
        order=n,
        exponent=exponent,
        is_cyclic=is_cyclic,
        is_abelian=is_abelian,
        is_elementary_abelian=is_elem_ab,
        is_dihedral=is_dihedral,
        is_nilpotent=is_nilpotent,
        p_group_prime=p_prime,
        n_involutions=n_invol,
        is_frobenius_cyclic_complement=frob,
        frobenius_kernel_order=k_ord,
        frobenius_complement_order=j_ord,
        order_counts=tuple(sorted(counts.items())),
    )


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _dihedral_check(tables, orders, gen_tables, n: int) -> bool:
    """Order 2m with a normal cyclic C_m inverted by an outside involution."""
    if n < 4 or n % 2:
        return False
    m = n // 2
    inverted = False
    for t, o in zip(tables, orders):
        if o != m:
            continue
        powers = set(_cyclic_tables(t, len(t)))
        if any(conjugate_table(t, g) not in powers for g in gen_tables):
            continue
        t_inv = invert_table(t)
        for s, os in zip(tables, orders):
            if os == 2 and s not in powers and conjugate_table(t, s) == t_inv:
                inverted = True
                break
        if inverted:
            break
    return inverted


def _frobenius_cyclic_check(
    tables, orders, gen_tables, n: int, degree: int
) -> tuple[bool, int | None, int | None]:
    """Split n = a*b coprime, kernel of order a = {x : x^a = 1} a normal
    nilpotent subgroup, cyclic complement of order b acting without fixed
    points on the kernel; definitional Frobenius test."""
    for a in range(2, n):
        if n % a:
            continue
        b = n // a
        if b == 1 or math.gcd(a, b) != 1:
            continue
        kernel = [t for t, o in zip(tables, orders) if a % o == 0]
        if len(kernel) != a:
            continue
        kernel_set = set(kernel)
        chain = _greedy_chain(degree, kernel, target_order=a)
        if chain.order != a:
            continue
        if any(
            conjugate_table(t, g) not in kernel_set
            for t in chain.gen_tables
            for g in gen_tables
        ):
            continue
        nilpotent = True
        k_orders = [table_order(t) for t in kernel]
        for p in _prime_divisors(a):
            if sum(1 for o in k_orders if p_part(o, p) == o) != p_part(a, p):
                nilpotent = False
                break
        if not nilpotent:
            continue
        y = next((t for t, o in zip(tables, orders) if o == b), None)
        if y is None:
            continue
        comp = _cyclic_tables(y, degree)
        fpf = all(
            conjugate_table(k, j) != k
            for j in comp
            if not all(v == i for i, v in enumerate(j))
            for k in kernel
            if not all(v == i for i, v in enumerate(k))
        )
        if fpf:
            return True, a, b
    return False, None, None


def is_simple_group(u: Subgroup | PermGroup) -> bool:
    """No proper nontrivial normal subgroup: every nontrivial class has full
    normal closure."""
    grp = _group_of(u)
    tables = grp.element_tables()
    n = len(tables)
    if n == 1:
        return False
    index = {t: i for i, t in enumerate(tables)}
    gen_tables = grp.gen_tables
    conj = [[index[conjugate_table(e, g)] for e in tables] for g in gen_tables]
    class_of = [-1] * n
    for start in range(n):
        if class_of[start] >= 0:
            continue
        members = [start]
        class_of[start] = start
        qi = 0
        while qi < len(members):
            cur = members[qi]
            qi += 1
            for ct in conj:
                nxt = ct[cur]
                if class_of[nxt] < 0:
                    class_of[nxt] = start
                    members.append(nxt)
        if start == 0 and len(members) == 1:
            continue
        if start > 0 or len(members) > 1:
            closure = _greedy_chain(grp.degree, [tables[m] for m in sorted(members)], target_order=n)
            if closure.order != n:
                return False
    return True

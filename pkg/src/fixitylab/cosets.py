"""Coset actions and fixed-point counting by four independent routes.

The action of G on the right cosets of U is materialized with one canonical
representative per coset: the lexicographically least image table in U*z.
Coset 0 is U itself and the remaining cosets are numbered in breadth-first
discovery order over the generators in listed order, so coset numberings,
induced permutations, and every downstream report are bit-exact
reproducible.

Counting routes for the fixed points of x on G/U:

  fix_direct            scan cosets, test r*x*r^-1 in U
  fix_by_normalizer_formula   |{<x>^g <= U}| * |N_G(<x>)| / |U|
  fix_by_class_sum      sum over U-classes of <y>, y in x^G cap U, of
                        |N_G(<y>) : N_U(<y>)|
  fix_frobenius         |N_G(<x>)| / |J| for U Frobenius with nilpotent
                        kernel and cyclic complement J, x outside the kernel

The last three are theorems about the first; the test suite holds them
equal on every enumerable pair.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .enumeration import (
    ELEMENT_CAP,
    SUBGROUP_CAP,
    ConjClass,
    GroupContext,
    as_context,
    euler_phi,
    structure_predicates,
)
from .errors import (
    CapExceededError,
    FalsificationError,
    MembershipError,
    PreconditionError,
)
from .perm import (
    _IDENT256,
    ImageTable,
    PermGroup,
    Permutation,
    Subgroup,
    compose_tables,
    conjugate_table,
    identity_table,
    invert_table,
    pack_table,
    table_order,
)

COSET_CAP = 100_000


@dataclass(frozen=True)
class Caps:
    """Work limits; every cap is overridable per call site."""

    elements: int = ELEMENT_CAP
    subgroups: int = SUBGROUP_CAP
    cosets: int = COSET_CAP


DEFAULT_CAPS = Caps()


@dataclass(eq=False)
class CosetAction:
    """The action of ``group`` on right cosets of ``stabilizer``."""

    group: PermGroup
    stabilizer: Subgroup
    degree: int
    images: list[Permutation]
    canonical_reps: list[ImageTable]
    coset_index: dict[ImageTable, int]
    u_tables: list[ImageTable]
    u_set: frozenset[ImageTable]

    def __post_init__(self):
        self._inv_padded: list[ImageTable] | None = None

    @property
    def inv_reps(self) -> list[ImageTable]:
        """Inverses of the canonical reps, padded for byte translation."""
        if self._inv_padded is None:
            inv = [invert_table(r) for r in self.canonical_reps]
            if self.group.degree <= 255:
                inv = [t + _IDENT256[len(t) :] for t in inv]
            self._inv_padded = inv
        return self._inv_padded


@dataclass(eq=False)
class FixityReport:
    """Fixity of one coset action with its witness class."""

    fixity: int
    witness_class: ConjClass | None
    per_class_fix: list[int]
    slow_path: bool = False


@dataclass(frozen=True)
class FixedPointProfile:
    """Rows (element order, centralizer order, fixed cosets), one per
    conjugacy class of nontrivial cyclic subgroups, sorted."""

    rows: tuple[tuple[int, int, int], ...]


def _canonicalizer(u_tables: list[ImageTable], degree: int):
    if degree <= 255:
        pad = _IDENT256

        def canon(z: ImageTable) -> ImageTable:
            zp = z + pad[len(z) :]
            return min(u.translate(zp) for u in u_tables)

    else:

        def canon(z: ImageTable) -> ImageTable:
            return min(compose_tables(u, z) for u in u_tables)

    return canon


def build_coset_action(
    g: PermGroup,
    u: Subgroup,
    max_cosets: int = COSET_CAP,
    element_cap: int = ELEMENT_CAP,
) -> CosetAction:
    """Materialize G acting on G/U by right multiplication."""
    if u.parent is not g:
        for p in u.group.generators:
            if not g.contains(p):
                raise MembershipError("stabilizer is not a subgroup of the group")
    if g.order % u.order:
        raise MembershipError(
            f"|U| = {u.order} does not divide |G| = {g.order}"
        )
    degree = g.order // u.order
    if degree > max_cosets:
        raise CapExceededError(f"coset space size {degree} exceeds cap {max_cosets}")
    if u.group.order > element_cap:
        raise CapExceededError(
            f"stabilizer order {u.order} exceeds element cap {element_cap}"
        )
    u_tables = u.group.element_tables()
    canon = _canonicalizer(u_tables, g.degree)
    ident = identity_table(g.degree)
    reps: list[ImageTable] = [ident]
    index: dict[ImageTable, int] = {ident: 0}
    assert canon(ident) == ident
    gen_tables = g.gen_tables
    image_cols: list[list[int]] = [[] for _ in gen_tables]
    i = 0
    while i < len(reps):
        r = reps[i]
        for j, gt in enumerate(gen_tables):
            c = canon(compose_tables(r, gt))
            k = index.get(c)
            if k is None:
                k = len(reps)
                reps.append(c)
                index[c] = k
            image_cols[j].append(k)
        i += 1
    if len(reps) != degree:
        raise MembershipError(
            f"reached {len(reps)} cosets, index says {degree}"
        )
    images = [Permutation(pack_table(col), _trusted=True) for col in image_cols]

    # homomorphism spot-check: the image of g_j g_k equals image(g_j)image(g_k)
    n_pairs = len(gen_tables) ** 2
    budget = 2_000_000
    full = degree * len(u_tables) * n_pairs <= budget
    checked = 0
    for j in range(len(gen_tables)):
        for k in range(len(gen_tables)):
            if not full and checked >= 2:
                break
            prod = compose_tables(gen_tables[j], gen_tables[k])
            expect = images[j] * images[k]
            for i in range(degree):
                if index[canon(compose_tables(reps[i], prod))] != expect(i):
                    raise MembershipError("induced coset maps are not a homomorphism")
            checked += 1

    return CosetAction(
        group=g,
        stabilizer=u,
        degree=degree,
        images=images,
        canonical_reps=reps,
        coset_index=index,
        u_tables=u_tables,
        u_set=frozenset(u_tables),
    )


def coset_stabilizer_tables(action: CosetAction, i: int) -> list[ImageTable]:
    """Element tables of the stabilizer of coset i: r_i^-1 U r_i."""
    r = action.canonical_reps[i]
    ri = invert_table(r)
    return [compose_tables(compose_tables(ri, t), r) for t in action.u_tables]


# ---------------------------------------------------------------------------
# the four counting routes
# ---------------------------------------------------------------------------

def fix_direct(action: CosetAction, x: Permutation | ImageTable) -> int:
    """Number of cosets U r with r x r^-1 in U."""
    t = x.images if isinstance(x, Permutation) else x
    if not action.group.contains_table(t):
        raise MembershipError("element is not a member of the acting group")
    u_set = action.u_set
    count = 0
    if isinstance(t, bytes):
        tp = t + _IDENT256[len(t) :]
        for r, rip in zip(action.canonical_reps, action.inv_reps):
            if r.translate(tp).translate(rip) in u_set:
                count += 1
    else:
        for r, ri in zip(action.canonical_reps, action.inv_reps):
            if compose_tables(compose_tables(r, t), ri) in u_set:
                count += 1
    return count


def _u_indices(ctx: GroupContext, u: Subgroup) -> list[int]:
    try:
        return [ctx.index[t] for t in u.group.element_tables()]
    except KeyError:
        raise MembershipError("stabilizer is not a subgroup of the group") from None


def stabilizer_bundle_fixes(ctx: GroupContext, u: Subgroup) -> list[int]:
    """Fixed-coset count on G/U for one generator of each cyclic-subgroup
    class, by the normalizer-formula route; one O(|U|) pass for all rows."""
    boc = ctx.bundle_of_class
    class_of = ctx.class_of
    counts = [0] * len(ctx.bundles)
    for i in _u_indices(ctx, u):
        b = boc[class_of[i]]
        if b >= 0:
            counts[b] += 1
    uo = u.order
    fixes = []
    for b, cnt in zip(ctx.bundles, counts):
        phi = euler_phi(b.element_order)
        if cnt % phi:
            raise FalsificationError(
                f"{cnt} generators of order-{b.element_order} subgroups in U "
                f"is not a multiple of phi = {phi}"
            )
        val = (cnt // phi) * b.normalizer_order
        if val % uo:
            raise FalsificationError(
                f"normalizer count {val} not divisible by |U| = {uo}"
            )
        fixes.append(val // uo)
    return fixes


def fix_by_normalizer_formula(
    g: PermGroup | GroupContext, u: Subgroup, x: Permutation
) -> int:
    """|{<x>^g <= U}| * |N_G(<x>)| / |U|, scanning U once."""
    ctx = as_context(g)
    t = x.images
    ix = ctx.index.get(t)
    if ix is None:
        raise MembershipError("element is not a member of the group")
    if ix == 0:
        return ctx.n // u.order
    bid = ctx.bundle_of_class[ctx.class_of[ix]]
    bundle = ctx.bundles[bid]
    fused = set(bundle.class_ids)
    class_of = ctx.class_of
    cnt = sum(1 for i in _u_indices(ctx, u) if class_of[i] in fused)
    phi = euler_phi(bundle.element_order)
    if cnt % phi:
        raise FalsificationError(f"generator count {cnt} not a multiple of {phi}")
    val = (cnt // phi) * bundle.normalizer_order
    if val % u.order:
        raise FalsificationError(f"{val} not divisible by |U| = {u.order}")
    return val // u.order


def fix_by_class_sum(g: PermGroup | GroupContext, u: Subgroup, x: Permutation) -> int:
    """Sum over U-classes of subgroups <y> with y in x^G cap U of the
    normalizer index |N_G(<y>) : N_U(<y>)|."""
    ctx = as_context(g)
    t = x.images
    ix = ctx.index.get(t)
    if ix is None:
        raise MembershipError("element is not a member of the group")
    if ix == 0:
        return ctx.n // u.order
    cx = ctx.class_of[ix]
    ng_order = ctx.bundles[ctx.bundle_of_class[cx]].normalizer_order
    u_gens = u.group.gen_tables
    members = [i for i in _u_indices(ctx, u) if ctx.class_of[i] == cx]
    elements = ctx.elements
    seen: set[frozenset[int]] = set()
    total = 0
    for i in members:
        fsy = frozenset(
            ctx.index[tab] for tab in _powers(elements[i], ctx.group.degree)
        )
        if fsy in seen:
            continue
        orbit = {fsy}
        stack = [fsy]
        while stack:
            cur = stack.pop()
            for gt in u_gens:
                nxt = frozenset(ctx.index[conjugate_table(elements[j], gt)] for j in cur)
                if nxt not in orbit:
                    orbit.add(nxt)
                    stack.append(nxt)
        seen |= orbit
        # |N_U(<y>)| = |U| / (U-orbit length), so the index is
        # |N_G| * orbit / |U|
        val = ng_order * len(orbit)
        if val % u.order:
            raise FalsificationError(
                f"normalizer index {ng_order}*{len(orbit)}/{u.order} is not integral"
            )
        total += val // u.order
    return total


def _powers(t: ImageTable, degree: int) -> list[ImageTable]:
    ident = identity_table(degree)
    out = [ident]
    cur = t
    while cur != ident:
        out.append(cur)
        cur = compose_tables(cur, t)
    return out


def fix_frobenius(g: PermGroup | GroupContext, u: Subgroup, x: Permutation) -> int:
    """|N_G(<x>)| / |J| for U = K : J Frobenius, x in U outside K."""
    rec = structure_predicates(u)
    if not rec.is_frobenius_cyclic_complement:
        raise PreconditionError(
            "stabilizer is not Frobenius with nilpotent kernel and cyclic complement"
        )
    a = rec.frobenius_kernel_order
    b = rec.frobenius_complement_order
    t = x.images
    if not u.group.contains_table(t):
        raise PreconditionError("element must lie in the stabilizer")
    if a % table_order(t) == 0:
        raise PreconditionError("element lies in the Frobenius kernel")
    ctx = as_context(g)
    ix = ctx.index.get(t)
    if ix is None:
        raise MembershipError("element is not a member of the group")
    ng_order = ctx.bundles[ctx.bundle_of_class[ctx.class_of[ix]]].normalizer_order
    if ng_order % b:
        raise FalsificationError(
            f"|N_G(<x>)| = {ng_order} is not divisible by |J| = {b}"
        )
    return ng_order // b


# ---------------------------------------------------------------------------
# fixity, profiles, marks
# ---------------------------------------------------------------------------

def fixity(g: PermGroup, u: Subgroup, caps: Caps = DEFAULT_CAPS) -> FixityReport:
    """Fixity of G on G/U with per-class counts; falls back to a
    subgroup-orbit route when G is too large to enumerate."""
    if g.order > caps.elements:
        return _fixity_slow(g, u, caps)
    ctx = as_context(g, caps.elements)
    action = build_coset_action(g, u, caps.cosets, caps.elements)
    per = [fix_direct(action, c.representative) for c in ctx.classes]
    assert per[0] == action.degree
    best = -1
    witness = None
    for cid, c in enumerate(ctx.classes):
        if c.element_order == 1:
            continue
        if per[cid] > best:
            best = per[cid]
            witness = c
    if best < 0:
        best = 0
    return FixityReport(fixity=best, witness_class=witness, per_class_fix=per)


def canonical_generator(t: ImageTable, degree: int) -> ImageTable:
    """The lexicographically least generator of <t>.

    Conjugation commutes with taking powers, so this is a stable label for
    the cyclic subgroup: <a> = <b> iff their canonical generators coincide.
    """
    o = table_order(t)
    best = t
    cur = t
    for k in range(2, o):
        cur = compose_tables(cur, t)
        if math.gcd(k, o) == 1 and cur < best:
            best = cur
    return best


def _fixity_slow(g: PermGroup, u: Subgroup, caps: Caps) -> FixityReport:
    """Maximum of the normalizer-formula counts over cyclic subgroups of U,
    with conjugates of <y> tracked by least generator; G never enumerated."""
    u_ctx = GroupContext(u.group, caps.elements)
    u_set = frozenset(u_ctx.elements)
    uo = u.group.order
    degree = g.degree
    gen_tables = g.gen_tables
    best = 0
    seen: set[ImageTable] = set()
    for b in u_ctx.bundles:
        y = u_ctx.elements[b.rep_index]
        start = canonical_generator(y, degree)
        if start in seen:
            continue
        orbit = {start}
        stack = [start]
        in_u = 0
        while stack:
            cur = stack.pop()
            # <cur> lies inside U exactly when its generator does
            if cur in u_set:
                in_u += 1
            for gt in gen_tables:
                nxt = canonical_generator(conjugate_table(cur, gt), degree)
                if nxt not in orbit:
                    orbit.add(nxt)
                    stack.append(nxt)
        seen |= orbit
        if g.order % len(orbit):
            raise FalsificationError("subgroup orbit length does not divide |G|")
        val = in_u * (g.order // len(orbit))
        if val % uo:
            raise FalsificationError(f"{val} not divisible by |U| = {uo}")
        fx = val // uo
        if fx > best:
            best = fx
    return FixityReport(fixity=best, witness_class=None, per_class_fix=[], slow_path=True)


def profile(g: PermGroup | GroupContext, u: Subgroup, caps: Caps = DEFAULT_CAPS) -> FixedPointProfile:
    """One row (element order, centralizer order, fixed cosets) per class of
    nontrivial cyclic subgroups, sorted by the triple."""
    ctx = as_context(g, caps.elements)
    fixes = stabilizer_bundle_fixes(ctx, u)
    rows = sorted(
        (b.element_order, b.centralizer_order, fx)
        for b, fx in zip(ctx.bundles, fixes)
    )
    return FixedPointProfile(rows=tuple(rows))


def mark_on_action(action: CosetAction, v_gen_tables: list[ImageTable]) -> int:
    """Cosets fixed simultaneously by every element of V = <v_gen_tables>."""
    if not v_gen_tables:
        return action.degree
    u_set = action.u_set
    count = 0
    for r in action.canonical_reps:
        ri = invert_table(r)
        if all(
            compose_tables(compose_tables(r, t), ri) in u_set for t in v_gen_tables
        ):
            count += 1
    return count


def mark(g: PermGroup, u: Subgroup, v: Subgroup, caps: Caps = DEFAULT_CAPS) -> int:
    action = build_coset_action(g, u, caps.cosets, caps.elements)
    gens = [t for t in v.group.gen_tables if any(x != i for i, x in enumerate(t))]
    return mark_on_action(action, gens)


def marks_row(
    g: PermGroup | GroupContext,
    u: Subgroup,
    classes,
    caps: Caps = DEFAULT_CAPS,
) -> list[int]:
    """Marks of G/U on each subgroup class representative, for the classes
    up to and including U's own class in the given (order, canonical) order."""
    ctx = as_context(g, caps.elements)
    action = build_coset_action(ctx.group, u, caps.cosets, caps.elements)
    fs_u = frozenset(_u_indices(ctx, u))
    _, canon_u, _, _ = ctx._subgroup_orbit(fs_u, u.group)
    pos = None
    for i, c in enumerate(classes):
        if c.order == u.order and c.canonical == canon_u:
            pos = i
            break
    if pos is None:
        raise MembershipError("stabilizer class not present in the given class list")
    row = []
    for c in classes[: pos + 1]:
        gens = [
            t
            for t in c.representative.group.gen_tables
            if any(x != i for i, x in enumerate(t))
        ]
        row.append(mark_on_action(action, gens))
    return row


# ---------------------------------------------------------------------------
# golden-file serialization
# ---------------------------------------------------------------------------

def report_json(
    group_name: str,
    action: CosetAction,
    rep: FixityReport,
    prof: FixedPointProfile,
) -> str:
    obj = {
        "group": group_name,
        "stabilizer_order": action.stabilizer.order,
        "degree": action.degree,
        "fixity": rep.fixity,
        "profile": [list(r) for r in prof.rows],
    }
    return json.dumps(obj, indent=2)

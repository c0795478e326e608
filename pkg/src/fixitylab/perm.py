"""Permutation arithmetic and base-and-strong-generating-set machinery.

Conventions used throughout the package:

* points are 0-based indices 0..degree-1;
* points act on the right and composition reads left to right, so
  ``w^(g*h) = (w^g)^h`` and ``compose(a, b)[i] = b[a[i]]``;
* a permutation is stored as its image table.  For degree <= 255 the table
  is a ``bytes`` object (composition then runs through ``bytes.translate``),
  for larger degrees it is a ``tuple`` of ints.  Both compare
  lexicographically by image table, which every canonical choice in this
  package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DegreeMismatchError,
    MembershipError,
    NotBijectionError,
)

ImageTable = bytes | tuple[int, ...]

_IDENT256 = bytes(range(256))


# ---------------------------------------------------------------------------
# raw image-table arithmetic (hot paths work on these, not on Permutation)
# ---------------------------------------------------------------------------

def identity_table(degree: int) -> ImageTable:
    if degree <= 255:
        return _IDENT256[:degree]
    return tuple(range(degree))


def pack_table(images: Sequence[int], degree: int | None = None) -> ImageTable:
    """Validate and pack an image sequence into the internal representation."""
    imgs = list(images)
    n = len(imgs) if degree is None else degree
    if len(imgs) != n:
        raise NotBijectionError(f"expected {n} images, got {len(imgs)}")
    seen = [False] * n
    for v in imgs:
        if not isinstance(v, int) or not 0 <= v < n:
            raise NotBijectionError(f"image {v!r} out of range 0..{n - 1}")
        if seen[v]:
            raise NotBijectionError(f"image {v} repeated")
        seen[v] = True
    return bytes(imgs) if n <= 255 else tuple(imgs)


def padded(b: bytes) -> bytes:
    """Extend an image table to a 256-byte translate table (identity tail)."""
    return b + _IDENT256[len(b):]


def compose_tables(a: ImageTable, b: ImageTable) -> ImageTable:
    """Image table of a*b, i.e. i -> b[a[i]]."""
    if len(a) != len(b):
        raise DegreeMismatchError(f"degrees {len(a)} and {len(b)} differ")
    if type(a) is bytes:
        return a.translate(b + _IDENT256[len(b):])
    return tuple(b[v] for v in a)


def invert_table(a: ImageTable) -> ImageTable:
    if type(a) is bytes:
        out = bytearray(len(a))
        for i, v in enumerate(a):
            out[v] = i
        return bytes(out)
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def conjugate_table(x: ImageTable, g: ImageTable) -> ImageTable:
    """Image table of g^-1 * x * g, computed in one pass without inverting g."""
    if type(x) is bytes:
        out = bytearray(len(x))
        for i, v in enumerate(x):
            out[g[i]] = g[v]
        return bytes(out)
    out = [0] * len(x)
    for i, v in enumerate(x):
        out[g[i]] = g[v]
    return tuple(out)


def table_order(a: ImageTable) -> int:
    """Order of the permutation: lcm of its cycle lengths."""
    n = len(a)
    seen = [False] * n
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        p = start
        while not seen[p]:
            seen[p] = True
            p = a[p]
            length += 1
        order = math.lcm(order, length)
    return order


def table_power(a: ImageTable, k: int) -> ImageTable:
    """a**k by square-and-multiply; negative k powers the inverse."""
    if k < 0:
        a = invert_table(a)
        k = -k
    result = identity_table(len(a))
    base = a
    while k:
        if k & 1:
            result = compose_tables(result, base)
        base = compose_tables(base, base)
        k >>= 1
    return result


def fixed_points_of_table(a: ImageTable) -> list[int]:
    return [i for i, v in enumerate(a) if v == i]


def cycles_of_table(a: ImageTable) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each rotated to start at its least point."""
    n = len(a)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start] or a[start] == start:
            seen[start] = True
            continue
        cyc = []
        p = start
        while not seen[p]:
            seen[p] = True
            cyc.append(p)
            p = a[p]
        out.append(tuple(cyc))
    return out


# ---------------------------------------------------------------------------
# the public Permutation wrapper
# ---------------------------------------------------------------------------

class Permutation:
    """A permutation of {0, ..., degree-1}, immutable, ordered by image table."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int] | ImageTable, _trusted: bool = False):
        if _trusted and isinstance(images, (bytes, tuple)):
            object.__setattr__(self, "images", images)
        else:
            object.__setattr__(self, "images", pack_table(images))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(identity_table(degree), _trusted=True)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        imgs = list(range(degree))
        for cyc in cycles:
            for i, p in enumerate(cyc):
                imgs[p] = cyc[(i + 1) % len(cyc)]
        return cls(pack_table(imgs), _trusted=True)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(compose_tables(self.images, other.images), _trusted=True)

    def __invert__(self) -> "Permutation":
        return Permutation(invert_table(self.images), _trusted=True)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return Permutation(table_power(invert_table(self.images), -k), _trusted=True)
        return Permutation(table_power(self.images, k), _trusted=True)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def order(self) -> int:
        return table_order(self.images)

    def fixed_points(self) -> list[int]:
        return fixed_points_of_table(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles_of_table(self.images)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Permutation.identity({self.degree})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"Permutation[{body}]"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """w -> (w^a)^b; the package-wide composition order."""
    return a * b


# ---------------------------------------------------------------------------
# deterministic Schreier-Sims
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PermGroup:
    """A permutation group with a verified base and strong generating set.

    ``transversals[i]`` maps each point of the i-th basic orbit to a raw
    image table carrying ``base[i]`` to that point.  ``strong_gens[i]`` are
    the strong generators fixing ``base[:i]`` pointwise.  Construction is
    through :func:`build_bsgs` only; instances are treated as immutable.
    """

    degree: int
    generators: list[Permutation]
    base: list[int]
    strong_gens: list[list[ImageTable]]
    transversals: list[dict[int, ImageTable]]
    order: int
    _elements: list[ImageTable] | None = field(default=None, repr=False, compare=False)

    @property
    def gen_tables(self) -> list[ImageTable]:
        return [g.images for g in self.generators]

    def identity_table(self) -> ImageTable:
        return identity_table(self.degree)

    def sift(self, table: ImageTable) -> ImageTable:
        """Strip an image table through the transversal chain; identity iff member."""
        g = table
        for i, b in enumerate(self.base):
            pt = g[b]
            trans = self.transversals[i]
            if pt not in trans:
                return g
            g = compose_tables(g, invert_table(trans[pt]))
        return g

    def contains_table(self, table: ImageTable) -> bool:
        if len(table) != self.degree:
            return False
        residue = self.sift(table)
        return all(v == i for i, v in enumerate(residue))

    def contains(self, p: Permutation) -> bool:
        return self.contains_table(p.images)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def iter_element_tables(self) -> Iterator[ImageTable]:
        """All elements as raw tables, as products over the transversal chain.

        Runs exactly |G| compositions; no membership hashing involved.
        """
        level_elems: list[ImageTable] = [self.identity_table()]
        for i in range(len(self.base) - 1, -1, -1):
            nxt: list[ImageTable] = []
            if self.degree <= 255:
                for u in self.transversals[i].values():
                    tu = padded(u)
                    nxt.extend(h.translate(tu) for h in level_elems)
            else:
                for u in self.transversals[i].values():
                    nxt.extend(compose_tables(h, u) for h in level_elems)
            level_elems = nxt
        return iter(level_elems)

    def element_tables(self) -> list[ImageTable]:
        """Sorted list of all elements as raw tables (cached)."""
        if self._elements is None:
            elems = sorted(self.iter_element_tables())
            if len(elems) != self.order:
                raise MembershipError(
                    f"enumeration produced {len(elems)} elements, BSGS order is {self.order}"
                )
            self._elements = elems
        return self._elements


def _least_moved(table: ImageTable) -> int | None:
    for i, v in enumerate(table):
        if v != i:
            return i
    return None


def build_bsgs(
    gens: list[Permutation] | list[ImageTable],
    base_hint: Sequence[int] = (),
    degree: int | None = None,
) -> PermGroup:
    """Deterministic (non-randomized) Schreier-Sims.

    Base points are chosen as the first moved point of the offending
    generator whenever the chain must grow, after consuming ``base_hint``
    verbatim; the result depends only on the generator order, never on
    randomness.  Verification is bottom-up with the classic pointer walk:
    every Schreier generator of a verified level sifts to the identity.
    """
    if not gens:
        if degree is None:
            raise ValueError("empty generator list needs an explicit degree")
        ident_perm = Permutation.identity(degree)
        return PermGroup(degree, [ident_perm], [], [], [], 1, _elements=[ident_perm.images])
    perms = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    deg = degree if degree is not None else perms[0].degree
    for p in perms:
        if p.degree != deg:
            raise DegreeMismatchError(f"mixed degrees {deg} and {p.degree}")

    ident = identity_table(deg)
    base: list[int] = [b for b in base_hint]
    sgens: list[list[ImageTable]] = [[] for _ in base]
    transversals: list[dict[int, ImageTable]] = [{} for _ in base]

    def rebuild_orbit(i: int) -> None:
        b = base[i]
        trans = {b: ident}
        queue = [b]
        for pt in queue:
            u = trans[pt]
            for g in sgens[i]:
                img = g[pt]
                if img not in trans:
                    trans[img] = compose_tables(u, g)
                    queue.append(img)
        transversals[i] = trans

    def new_level(g: ImageTable) -> None:
        b = _least_moved(g)
        assert b is not None
        base.append(b)
        sgens.append([])
        transversals.append({})

    def insert_gen(g: ImageTable, from_level: int) -> int:
        """Record g as a strong generator at levels from_level..j; return j."""
        j = from_level
        while j < len(base) and g[base[j]] == base[j]:
            j += 1
        if j == len(base):
            new_level(g)
        for lvl in range(from_level, j + 1):
            sgens[lvl].append(g)
            rebuild_orbit(lvl)
        return j

    # seed with the input generators (identities dropped)
    for p in perms:
        t = p.images
        if _least_moved(t) is not None:
            insert_gen(t, 0)

    if not base:
        # trivial group
        return PermGroup(deg, perms, [], [], [], 1, [ident])

    def strip(g: ImageTable, start: int) -> tuple[ImageTable, int]:
        for j in range(start, len(base)):
            pt = g[base[j]]
            trans = transversals[j]
            if pt not in trans:
                return g, j
            g = compose_tables(g, invert_table(trans[pt]))
        return g, len(base)

    i = len(base) - 1
    while i >= 0:
        verified = True
        b = base[i]
        trans = transversals[i]
        # dict preserves BFS insertion order: deterministic scan
        for pt in list(trans):
            u = trans[pt]
            for g in sgens[i]:
                x = compose_tables(u, g)
                s = compose_tables(x, invert_table(trans[x[b]]))
                if _least_moved(s) is None:
                    continue
                h, j = strip(s, i + 1)
                if _least_moved(h) is None:
                    continue
                if j == len(base):
                    new_level(h)
                for lvl in range(i + 1, j + 1):
                    sgens[lvl].append(h)
                    rebuild_orbit(lvl)
                i = j
                verified = False
                break
            if not verified:
                break
        if verified:
            i -= 1

    order = 1
    for trans in transversals:
        order *= len(trans)
    return PermGroup(deg, perms, base, sgens, transversals, order)


@dataclass(eq=False)
class Subgroup:
    """A subgroup handle: its own PermGroup plus the enclosing parent."""

    group: PermGroup
    parent: PermGroup

    def __post_init__(self):
        if self.group.degree != self.parent.degree:
            raise DegreeMismatchError("subgroup degree differs from parent degree")
        for g in self.group.generators:
            if not self.parent.contains(g):
                raise MembershipError(f"generator {g!r} is not a member of the parent group")

    @property
    def order(self) -> int:
        return self.group.order


@dataclass
class OrbitTransversal:
    """An orbit in BFS-discovery order with a transversal.

    ``transversal[p]`` carries ``point`` to ``p``; raw tables internally.
    """

    point: int
    points: list[int]
    transversal: dict[int, ImageTable]

    def rep(self, p: int) -> Permutation:
        return Permutation(self.transversal[p], _trusted=True)

    def __len__(self) -> int:
        return len(self.points)


def orbit(g: PermGroup, point: int) -> OrbitTransversal:
    """Orbit of a point under the group generators, with transversal."""
    if not 0 <= point < g.degree:
        raise ValueError(f"point {point} out of range for degree {g.degree}")
    ident = g.identity_table()
    trans = {point: ident}
    queue = [point]
    tables = g.gen_tables
    for pt in queue:
        u = trans[pt]
        for t in tables:
            img = t[pt]
            if img not in trans:
                trans[img] = compose_tables(u, t)
                queue.append(img)
    return OrbitTransversal(point, queue, trans)


def point_stabilizer(g: PermGroup, point: int) -> Subgroup:
    """Stabilizer of a point, through a BSGS rebuilt with that point first."""
    if not 0 <= point < g.degree:
        raise ValueError(f"point {point} out of range for degree {g.degree}")
    chain = build_bsgs(g.generators, base_hint=[point])
    stab_tables = chain.strong_gens[1] if len(chain.base) > 1 else []
    orbit_len = len(chain.transversals[0]) if chain.base else 1
    if not stab_tables:
        stab = build_bsgs([Permutation.identity(g.degree)])
    else:
        stab = build_bsgs([Permutation(t, _trusted=True) for t in stab_tables])
    if stab.order * orbit_len != g.order:
        raise MembershipError(
            f"orbit-stabilizer violated: {orbit_len} * {stab.order} != {g.order}"
        )
    return Subgroup(stab, g)

"""Finite distributive lattices (= finite frames) in canonical Birkhoff form.

A frame is stored as the down-set lattice of its poset of join-irreducibles.
Elements are bitmasks over the join-irreducible points, so meet/join are
bitwise and/or, and order is mask inclusion.  All values are immutable and
hashable; operations are pure.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .caps import Caps, DEFAULT_CAPS
from .errors import CapExceeded, InvalidPoset, NotALattice, NotDistributive


def _bits(mask):
    """Indices of set bits, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Poset:
    """Finite partial order on points 0..n-1, with point names.

    `up[i]` is the bitmask of points j with i <= j; `down[i]` the dual.
    """

    __slots__ = ("n", "up", "down", "names", "_hash")

    def __init__(self, n, up, names=None):
        up = tuple(up)
        if len(up) != n:
            raise InvalidPoset("up-relation length does not match size")
        full = (1 << n) - 1
        down = [0] * n
        for i in range(n):
            if up[i] & ~full:
                raise InvalidPoset("relation mentions points out of range")
            if not (up[i] >> i) & 1:
                raise InvalidPoset(f"relation not reflexive at point {i}")
            for j in _bits(up[i]):
                down[j] |= 1 << i
        for i in range(n):
            for j in _bits(up[i]):
                if i != j and (up[j] >> i) & 1:
                    raise InvalidPoset(f"relation not antisymmetric at ({i},{j})")
                if up[j] & ~up[i]:
                    raise InvalidPoset(f"relation not transitive at ({i},{j})")
        self.n = n
        self.up = up
        self.down = tuple(down)
        self.names = tuple(names) if names is not None else tuple(f"j{i}" for i in range(n))
        if len(self.names) != n or len(set(self.names)) != n:
            raise InvalidPoset("point names must be distinct and match size")
        self._hash = hash((n, up, self.names))

    @classmethod
    def from_pairs(cls, names, pairs, close=True):
        """Build from (name, name) le-pairs; reflexive-transitively closes by default."""
        names = tuple(names)
        index = {p: i for i, p in enumerate(names)}
        n = len(names)
        up = [1 << i for i in range(n)]
        for a, b in pairs:
            if a not in index or b not in index:
                raise InvalidPoset(f"unknown point in pair ({a},{b})")
            up[index[a]] |= 1 << index[b]
        if close:
            changed = True
            while changed:
                changed = False
                for i in range(n):
                    acc = up[i]
                    for j in _bits(up[i]):
                        acc |= up[j]
                    if acc != up[i]:
                        up[i] = acc
                        changed = True
        return cls(n, up, names)

    def le(self, i, j):
        return bool((self.up[i] >> j) & 1)

    def linear_extension(self):
        return tuple(sorted(range(self.n), key=lambda i: (self.down[i].bit_count(), i)))

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.n == other.n
            and self.up == other.up
            and self.names == other.names
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Poset({self.n}, names={self.names})"


def poset_isomorphism(p: Poset, q: Poset):
    """A point bijection preserving order both ways, or None.

    Backtracking over points grouped by (|down|, |up|) invariants.
    """
    if p.n != q.n:
        return None
    inv_p = [(p.down[i].bit_count(), p.up[i].bit_count()) for i in range(p.n)]
    inv_q = [(q.down[i].bit_count(), q.up[i].bit_count()) for i in range(q.n)]
    if sorted(inv_p) != sorted(inv_q):
        return None
    order = p.linear_extension()
    image = [-1] * p.n
    used = [False] * q.n

    def place(k):
        if k == p.n:
            return True
        i = order[k]
        for j in range(q.n):
            if used[j] or inv_p[i] != inv_q[j]:
                continue
            ok = True
            for k2 in range(k):
                i2 = order[k2]
                j2 = image[i2]
                if p.le(i, i2) != q.le(j, j2) or p.le(i2, i) != q.le(j2, j):
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if place(k + 1):
                    return True
                image[i] = -1
                used[j] = False
        return False

    return tuple(image) if place(0) else None


def poset_canonical_key(p: Poset):
    """Relation tuple minimized over point permutations (small posets only)."""
    best = None
    for perm in itertools.permutations(range(p.n)):
        rel = []
        for i in range(p.n):
            mask = 0
            for j in _bits(p.up[i]):
                mask |= 1 << perm[j]
            rel.append((perm[i], mask))
        rel.sort()
        key = tuple(m for _, m in rel)
        if best is None or key < best:
            best = key
    return (p.n, best)


class FiniteFrame:
    """Down-set lattice of `jir`; element i is the bitmask `elements[i]`."""

    __slots__ = (
        "jir", "elements", "names", "n", "zero", "one",
        "_index", "_pseudo", "_complemented", "_covers", "_down_idx",
        "_tables", "_hash",
    )

    def __init__(self, jir: Poset, elements, names):
        self.jir = jir
        self.elements = tuple(elements)
        self.names = tuple(names)
        self.n = len(self.elements)
        if len(self.names) != self.n or len(set(self.names)) != self.n:
            raise NotALattice("element names must be distinct")
        self._index = {m: i for i, m in enumerate(self.elements)}
        if len(self._index) != self.n:
            raise NotALattice("duplicate elements")
        self.zero = self._index[0]
        self.one = self._index[(1 << jir.n) - 1]
        self._pseudo = None
        self._complemented = None
        self._covers = None
        self._down_idx = None
        self._tables = None
        self._hash = hash((jir, self.elements, self.names))

    # -- order and lattice structure ------------------------------------
    def le(self, a, b):
        return not (self.elements[a] & ~self.elements[b])

    def meet(self, a, b):
        return self._index[self.elements[a] & self.elements[b]]

    def join(self, a, b):
        return self._index[self.elements[a] | self.elements[b]]

    def join_all(self, items):
        mask = 0
        for a in items:
            mask |= self.elements[a]
        return self._index[mask]

    def meet_all(self, items):
        mask = (1 << self.jir.n) - 1
        for a in items:
            mask &= self.elements[a]
        return self._index[mask]

    def index_of_mask(self, mask):
        return self._index[mask]

    def op_tables(self):
        """Row-indexed meet/join tables (built once; small frames only)."""
        if self._tables is None and self.n <= 512:
            index = self._index
            meet_rows, join_rows = [], []
            for ea in self.elements:
                meet_rows.append(tuple(index[ea & eb] for eb in self.elements))
                join_rows.append(tuple(index[ea | eb] for eb in self.elements))
            self._tables = (tuple(meet_rows), tuple(join_rows))
        return self._tables

    def name_index(self, name):
        for i, nm in enumerate(self.names):
            if nm == name:
                return i
        raise KeyError(name)

    @property
    def down_idx(self):
        """For each element, the bitset (over element indices) of elements below it."""
        if self._down_idx is None:
            down = []
            for a in range(self.n):
                mask = 0
                ea = self.elements[a]
                for b in range(self.n):
                    if not (self.elements[b] & ~ea):
                        mask |= 1 << b
                down.append(mask)
            self._down_idx = tuple(down)
        return self._down_idx

    def covers(self):
        """Pairs (a, b) with b covering a."""
        if self._covers is None:
            out = []
            for a in range(self.n):
                for b in range(self.n):
                    if a != b and self.le(a, b):
                        if not any(
                            c != a and c != b and self.le(a, c) and self.le(c, b)
                            for c in range(self.n)
                        ):
                            out.append((a, b))
            self._covers = tuple(out)
        return self._covers

    def ji_elements(self):
        """Element index of each join-irreducible point's principal down-set."""
        return tuple(self._index[self.jir.down[p]] for p in range(self.jir.n))

    # -- pseudocomplements ------------------------------------------------
    def pseudocomplement(self, a):
        """Greatest x with x & a = 0; the union of all disjoint down-sets."""
        if self._pseudo is None:
            table = []
            for b in range(self.n):
                eb = self.elements[b]
                acc = 0
                for m in self.elements:
                    if not (m & eb):
                        acc |= m
                table.append(self._index[acc])
            self._pseudo = tuple(table)
        return self._pseudo[a]

    def complement_of(self, a):
        """The complement when a is complemented, else None."""
        star = self.pseudocomplement(a)
        return star if self.join(a, star) == self.one else None

    def complemented_elements(self):
        if self._complemented is None:
            self._complemented = tuple(
                a for a in range(self.n) if self.complement_of(a) is not None
            )
        return self._complemented

    def __eq__(self, other):
        return (
            isinstance(other, FiniteFrame)
            and self.jir == other.jir
            and self.elements == other.elements
            and self.names == other.names
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteFrame({self.n} elements, {self.jir.n} join-irreducibles)"


def _downset_masks(p: Poset):
    out = []
    for mask in range(1 << p.n):
        ok = True
        probe = mask
        while probe:
            low = probe & -probe
            i = low.bit_length() - 1
            if p.down[i] & ~mask:
                ok = False
                break
            probe ^= low
        if ok:
            out.append(mask)
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def _set_name(p: Poset, mask):
    return "{" + ",".join(p.names[i] for i in _bits(mask)) + "}"


def frame_from_poset(p: Poset, caps: Caps = DEFAULT_CAPS, names=None) -> FiniteFrame:
    """The down-set lattice of p; element count is the number of down-sets."""
    if p.n > caps.max_ji:
        raise CapExceeded("join-irreducibles", caps.max_ji, p.n)
    masks = _downset_masks(p)
    if len(masks) > caps.max_elements:
        raise CapExceeded("elements", caps.max_elements, len(masks))
    if names is None:
        names = [_set_name(p, m) for m in masks]
    return FiniteFrame(p, masks, names)


def frame_from_table(names, meet_table, join_table, caps: Caps = DEFAULT_CAPS):
    """Canonicalize a bounded lattice given by name-indexed meet/join tables.

    Validates the lattice axioms and distributivity exhaustively (reporting a
    violating triple), extracts join-irreducibles, and returns the canonical
    down-set frame together with the renaming old-index -> canonical-index.
    """
    names = tuple(names)
    n = len(names)
    if n == 0:
        raise NotALattice("empty element list")
    if len(set(names)) != n:
        raise NotALattice("duplicate element names")
    idx = {nm: i for i, nm in enumerate(names)}

    def tab(table, label):
        if len(table) != n or any(len(row) != n for row in table):
            raise NotALattice(f"{label} table is not {n}x{n}")
        out = []
        for row in table:
            try:
                out.append(tuple(idx[v] for v in row))
            except KeyError as exc:
                raise NotALattice(f"{label} table mentions unknown element {exc}") from exc
        return out

    meet = tab(meet_table, "meet")
    join = tab(join_table, "join")
    for a in range(n):
        if meet[a][a] != a or join[a][a] != a:
            raise NotALattice(f"idempotence fails at {names[a]}")
        for b in range(n):
            if meet[a][b] != meet[b][a] or join[a][b] != join[b][a]:
                raise NotALattice(f"commutativity fails at ({names[a]},{names[b]})")

    def le(a, b):
        return meet[a][b] == a

    for a in range(n):
        for b in range(n):
            if le(a, b) and le(b, a) and a != b:
                raise NotALattice(f"order not antisymmetric at ({names[a]},{names[b]})")
            if join[a][b] != b and le(a, b):
                raise NotALattice(f"absorption fails at ({names[a]},{names[b]})")
    # meet/join must be glb/lub for the derived order
    for a in range(n):
        for b in range(n):
            m, j = meet[a][b], join[a][b]
            if not (le(m, a) and le(m, b)) or not (le(a, j) and le(b, j)):
                raise NotALattice(f"bound tables inconsistent at ({names[a]},{names[b]})")
            for c in range(n):
                if le(c, a) and le(c, b) and not le(c, m):
                    raise NotALattice(
                        f"meet({names[a]},{names[b]}) is not a greatest lower bound"
                    )
                if le(a, c) and le(b, c) and not le(j, c):
                    raise NotALattice(
                        f"join({names[a]},{names[b]}) is not a least upper bound"
                    )
    bottom = [a for a in range(n) if all(le(a, b) for b in range(n))]
    top = [a for a in range(n) if all(le(b, a) for b in range(n))]
    if not bottom or not top:
        raise NotALattice("missing bottom or top element")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    raise NotDistributive((names[a], names[b], names[c]))

    lower_cover_counts = []
    for a in range(n):
        strictly_below = [b for b in range(n) if b != a and le(b, a)]
        covers = [
            b for b in strictly_below
            if not any(c != a and c != b and le(b, c) and le(c, a) for c in strictly_below)
        ]
        lower_cover_counts.append(len(covers))
    ji = [a for a in range(n) if lower_cover_counts[a] == 1]
    if len(ji) > caps.max_ji:
        raise CapExceeded("join-irreducibles", caps.max_ji, len(ji))
    ji_pos = {a: k for k, a in enumerate(ji)}
    up = []
    for a in ji:
        mask = 0
        for b in ji:
            if le(a, b):
                mask |= 1 << ji_pos[b]
        up.append(mask)
    poset = Poset(len(ji), up, names=tuple(names[a] for a in ji))

    def ji_mask(a):
        mask = 0
        for b in ji:
            if le(b, a):
                mask |= 1 << ji_pos[b]
        return mask

    masks = [ji_mask(a) for a in range(n)]
    if len(set(masks)) != n or sorted(masks) != sorted(_downset_masks(poset)):
        raise NotALattice("join-irreducibles do not reconstruct the lattice")
    order = sorted(range(n), key=lambda a: (masks[a].bit_count(), masks[a]))
    frame = FiniteFrame(poset, [masks[a] for a in order], [names[a] for a in order])
    renaming = [0] * n
    for canonical, original in enumerate(order):
        renaming[original] = canonical
    return frame, tuple(renaming)


class Sublattice:
    """A bounded sublattice of a frame: contains 0,1 and is closed under meet/join."""

    __slots__ = ("frame", "members", "_hash")

    def __init__(self, frame: FiniteFrame, members):
        members = frozenset(members)
        if frame.zero not in members or frame.one not in members:
            raise NotALattice("sublattice must contain 0 and 1")
        for a in members:
            for b in members:
                if frame.meet(a, b) not in members or frame.join(a, b) not in members:
                    raise NotALattice(
                        f"not closed under meet/join at ({frame.names[a]},{frame.names[b]})"
                    )
        self.frame = frame
        self.members = members
        self._hash = hash((frame, members))

    def sorted_members(self):
        return tuple(sorted(self.members))

    def is_join_dense(self):
        """Every frame element is a join of members."""
        for a in range(self.frame.n):
            below = [s for s in self.members if self.frame.le(s, a)]
            if self.frame.join_all(below) != a:
                return False
        return True

    def is_boolean(self):
        """Every member has a complement inside the sublattice."""
        f = self.frame
        for s in self.members:
            if not any(
                f.meet(s, t) == f.zero and f.join(s, t) == f.one for t in self.members
            ):
                return False
        return True

    def as_lattice(self):
        """Standalone canonical frame on the members, plus member lists both ways.

        Returns (lattice, to_parent) where to_parent[i] is the parent element
        of lattice element i.
        """
        mem = self.sorted_members()
        names = [self.frame.names[a] for a in mem]
        meet = [[names[mem.index(self.frame.meet(a, b))] for b in mem] for a in mem]
        join = [[names[mem.index(self.frame.join(a, b))] for b in mem] for a in mem]
        lattice, renaming = frame_from_table(names, meet, join)
        to_parent = [0] * len(mem)
        for original, canonical in enumerate(renaming):
            to_parent[canonical] = mem[original]
        return lattice, tuple(to_parent)

    def __eq__(self, other):
        return (
            isinstance(other, Sublattice)
            and self.frame == other.frame
            and self.members == other.members
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Sublattice({len(self.members)} of {self.frame.n})"


def sublattice_generated(frame: FiniteFrame, seed) -> Sublattice:
    """Least sublattice containing seed: pairwise meet/join closure fixpoint."""
    members = set(seed) | {frame.zero, frame.one}
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            for c in (frame.meet(a, b), frame.join(a, b)):
                if c not in members:
                    members.add(c)
                    frontier.append(c)
    return Sublattice(frame, members)


def subframe_generated(frame: FiniteFrame, seed) -> Sublattice:
    """Least subset containing seed closed under meets and arbitrary joins.

    Finite frames make arbitrary joins finite, so this is the sublattice
    closure followed by closing under joins of subsets (which binary joins
    already give); the result is itself a frame.
    """
    return sublattice_generated(frame, seed)


class FrameHom:
    """A map of frames given by an element-index table."""

    __slots__ = ("dom", "cod", "mapping", "_hash")

    def __init__(self, dom: FiniteFrame, cod: FiniteFrame, mapping):
        mapping = tuple(mapping)
        if len(mapping) != dom.n:
            raise NotALattice("hom table must cover the whole domain")
        self.dom = dom
        self.cod = cod
        self.mapping = mapping
        self._hash = hash((dom, cod, mapping))

    @classmethod
    def identity(cls, frame):
        return cls(frame, frame, range(frame.n))

    def __call__(self, a):
        return self.mapping[a]

    def compose(self, other: "FrameHom") -> "FrameHom":
        """self after other."""
        if other.cod != self.dom:
            raise NotALattice("homs not composable")
        return FrameHom(other.dom, self.cod, (self.mapping[a] for a in other.mapping))

    def is_frame_hom(self):
        d, c, m = self.dom, self.cod, self.mapping
        if m[d.zero] != c.zero or m[d.one] != c.one:
            return False
        for a in range(d.n):
            for b in range(a, d.n):
                if m[d.meet(a, b)] != c.meet(m[a], m[b]):
                    return False
                if m[d.join(a, b)] != c.join(m[a], m[b]):
                    return False
        return True

    def is_injective(self):
        return len(set(self.mapping)) == self.dom.n

    def is_surjective(self):
        return len(set(self.mapping)) == self.cod.n

    def is_dense(self):
        """h(a) = 0 only for a = 0."""
        z = self.cod.zero
        return all(self.mapping[a] != z or a == self.dom.zero for a in range(self.dom.n))

    def image_sublattice(self) -> Sublattice:
        return Sublattice(self.cod, set(self.mapping))

    def __eq__(self, other):
        return (
            isinstance(other, FrameHom)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FrameHom({self.dom!r} -> {self.cod!r})"


def hom_report(h: FrameHom) -> dict:
    """Validation report for a frame-hom candidate."""
    ok = h.is_frame_hom()
    return {
        "is_frame_hom": ok,
        "is_injective": h.is_injective(),
        "is_surjective": h.is_surjective(),
        "is_dense": h.is_dense(),
        "image": sorted(set(h.mapping)),
    }


@lru_cache(maxsize=None)
def monotone_maps(p: Poset, q: Poset):
    """All order-preserving maps p -> q, as tuples."""
    order = p.linear_extension()
    out = []
    image = [0] * p.n

    def place(k):
        if k == p.n:
            out.append(tuple(image))
            return
        i = order[k]
        preds = [image[j] for j in _bits(p.down[i]) if j != i]
        for v in range(q.n):
            if all((q.up[pv] >> v) & 1 for pv in preds):
                image[i] = v
                place(k + 1)

    place(0)
    return tuple(out)


@lru_cache(maxsize=None)
def frame_homs(a: FiniteFrame, b: FiniteFrame):
    """All frame homomorphisms a -> b.

    Finite Birkhoff duality: homs Down(P) -> Down(Q) are exactly preimage
    maps of monotone maps Q -> P.
    """
    out = []
    for g in monotone_maps(b.jir, a.jir):
        mapping = []
        for mask in a.elements:
            img = 0
            for qpt in range(b.jir.n):
                if (mask >> g[qpt]) & 1:
                    img |= 1 << qpt
            mapping.append(b.index_of_mask(img))
        out.append(FrameHom(a, b, mapping))
    return tuple(out)


def frame_isomorphism(a: FiniteFrame, b: FiniteFrame):
    """An isomorphism a -> b (as FrameHom), or None."""
    perm = poset_isomorphism(a.jir, b.jir)
    if perm is None:
        return None
    mapping = []
    for mask in a.elements:
        img = 0
        for p in _bits(mask):
            img |= 1 << perm[p]
        mapping.append(b.index_of_mask(img))
    return FrameHom(a, b, mapping)


def is_isomorphic(a: FiniteFrame, b: FiniteFrame):
    return frame_isomorphism(a, b) is not None


def compact_elements(frame: FiniteFrame, within=None, caps: Caps = DEFAULT_CAPS):
    """Compact elements by the literal cover-search definition.

    For every family B (subsets of `within`, default all elements) covering a,
    a finite subcover is searched.  Families are enumerated exhaustively up to
    the max_compact_scan cap; above it the scan is skipped (scanned=False)
    rather than silently truncated.
    """
    pool = tuple(range(frame.n)) if within is None else tuple(sorted(within))
    if len(pool) > caps.max_compact_scan:
        return {"compact": tuple(range(frame.n)), "scanned": False}
    joins = {0: frame.zero}
    for mask in range(1, 1 << len(pool)):
        low = mask & -mask
        joins[mask] = frame.join(joins[mask ^ low], pool[low.bit_length() - 1])
    compact = []
    for a in range(frame.n):
        witnessed = True
        for fam in range(1, 1 << len(pool)):
            if not frame.le(a, joins[fam]):
                continue
            # greedy search for a finite subcover: drop members while the
            # join still dominates a; the family itself is the fallback
            sub = fam
            for i in _bits(fam):
                trial = sub & ~(1 << i)
                if frame.le(a, joins[trial]):
                    sub = trial
            if not frame.le(a, joins[sub]):
                witnessed = False
                break
        if witnessed:
            compact.append(a)
    return {"compact": tuple(compact), "scanned": True}


def frame_report(frame: FiniteFrame, s: Sublattice | None = None, caps: Caps = DEFAULT_CAPS):
    """Structural predicates: compactness, coherence, zero-dimensionality."""
    kl = compact_elements(frame, caps=caps)
    compl = frame.complemented_elements()
    zero_dim = all(
        frame.join_all(c for c in compl if frame.le(c, a)) == a for a in range(frame.n)
    )
    kset = set(kl["compact"])
    k_closed = {frame.zero, frame.one} <= kset and all(
        frame.meet(a, b) in kset and frame.join(a, b) in kset
        for a in kset
        for b in kset
    )
    k_dense = all(
        frame.join_all(c for c in kset if frame.le(c, a)) == a for a in range(frame.n)
    )
    report = {
        "is_compact": frame.one in kset,
        "compact_elements": kl["compact"],
        "compact_scan_exhaustive": kl["scanned"],
        "is_coherent": k_closed and k_dense,
        "is_zero_dimensional": zero_dim,
        "complemented_elements": compl,
    }
    if s is not None:
        sk = compact_elements(frame, within=s.sorted_members(), caps=caps)
        report["is_join_dense"] = s.is_join_dense()
        report["s_compact_elements"] = sk["compact"]
        report["s_compact_scan_exhaustive"] = sk["scanned"]
    return report


# -- the two tiny named frames used everywhere -----------------------------

@lru_cache(maxsize=None)
def two() -> FiniteFrame:
    """The two-element frame 0 < 1."""
    return frame_from_poset(Poset(1, (1,), names=("*",)), names=("0", "1"))


@lru_cache(maxsize=None)
def chain(k: int) -> FiniteFrame:
    """The (k+1)-element chain frame (k join-irreducibles)."""
    up = tuple(((1 << k) - 1) >> i << i for i in range(k))
    return frame_from_poset(Poset(k, up))

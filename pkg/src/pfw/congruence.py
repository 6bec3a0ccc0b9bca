"""Frame congruences, congruence frames, and the extension theorem.

Congruences are stored as partitions: `key[a]` is the least element index in
a's block.  Compatibility saturation runs a union-find worklist to a
fixpoint.  The full congruence frame is built either by closing the
principal congruences under generated joins ("closure") or by the fast
encoding of congruences as restriction kernels on subsets of
join-irreducibles ("fast"); the suite asserts the two agree.
"""

from __future__ import annotations

from functools import lru_cache

from .caps import Caps, DEFAULT_CAPS
from .errors import CapExceeded, NotALattice, PreconditionError
from .lattice import FiniteFrame, FrameHom, Sublattice, frame_from_table


class Congruence:
    """A partition of a frame's elements compatible with meets and joins."""

    __slots__ = ("frame", "key", "_hash")

    def __init__(self, frame: FiniteFrame, key):
        key = tuple(key)
        if len(key) != frame.n:
            raise NotALattice("congruence key must cover all elements")
        self.frame = frame
        self.key = key
        self._hash = hash((frame, key))

    @classmethod
    def from_classes(cls, frame, classes):
        key = [0] * frame.n
        seen = set()
        for block in classes:
            rep = min(block)
            for a in block:
                if a in seen:
                    raise NotALattice("blocks are not disjoint")
                seen.add(a)
                key[a] = rep
        if len(seen) != frame.n:
            raise NotALattice("blocks do not cover all elements")
        return cls(frame, key)

    def related(self, a, b):
        return self.key[a] == self.key[b]

    def blocks(self):
        out = {}
        for a, r in enumerate(self.key):
            out.setdefault(r, []).append(a)
        return tuple(tuple(v) for _, v in sorted(out.items()))

    def block_count(self):
        return len(set(self.key))

    def is_identity(self):
        return all(r == a for a, r in enumerate(self.key))

    def is_full(self):
        return len(set(self.key)) == 1

    def includes(self, other: "Congruence"):
        """other <= self as pair sets (other refines self)."""
        return all(self.key[a] == self.key[other.key[a]] for a in range(self.frame.n))

    def meet(self, other: "Congruence"):
        pairs = {}
        key = []
        for a in range(self.frame.n):
            k = (self.key[a], other.key[a])
            key.append(pairs.setdefault(k, a))
        return Congruence(self.frame, key)

    def join(self, other: "Congruence"):
        seed = [(a, self.key[a]) for a in range(self.frame.n)]
        seed += [(a, other.key[a]) for a in range(self.frame.n)]
        return congruence_generated(self.frame, seed)

    def restricted_to(self, members):
        """Pairs of the relation inside members x members."""
        mem = sorted(members)
        return [
            (a, b) for a in mem for b in mem if a < b and self.related(a, b)
        ]

    def is_congruence(self):
        """Equivalence compatible with binary meets and joins."""
        f = self.frame
        for a in range(f.n):
            b = self.key[a]
            if b == a:
                continue
            for c in range(f.n):
                if not self.related(f.join(a, c), f.join(b, c)):
                    return False
                if not self.related(f.meet(a, c), f.meet(b, c)):
                    return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, Congruence)
            and self.frame == other.frame
            and self.key == other.key
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Congruence({self.block_count()} blocks on {self.frame.n})"


def identity_congruence(frame):
    return Congruence(frame, range(frame.n))


def full_congruence(frame):
    return Congruence(frame, [0] * frame.n)


def congruence_generated(frame: FiniteFrame, pairs) -> Congruence:
    """Least congruence containing the pairs.

    Union-find seeding followed by meet/join-compatibility saturation: every
    merge (a,b) forces (a v c, b v c) and (a ^ c, b ^ c) for all c.
    """
    n = frame.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    queue = []
    for a, b in pairs:
        if union(a, b):
            queue.append((a, b))
    tables = frame.op_tables()
    if tables is not None:
        meet_rows, join_rows = tables
        while queue:
            a, b = queue.pop()
            ja, jb = join_rows[a], join_rows[b]
            ma, mb = meet_rows[a], meet_rows[b]
            for c in range(n):
                x, y = ja[c], jb[c]
                if x != y and union(x, y):
                    queue.append((x, y))
                x, y = ma[c], mb[c]
                if x != y and union(x, y):
                    queue.append((x, y))
    else:
        while queue:
            a, b = queue.pop()
            for c in range(n):
                for x, y in (
                    (frame.join(a, c), frame.join(b, c)),
                    (frame.meet(a, c), frame.meet(b, c)),
                ):
                    if union(x, y):
                        queue.append((x, y))
    reps = [find(a) for a in range(n)]
    canon = {}
    for a, r in enumerate(reps):
        canon.setdefault(r, a)
    return Congruence(frame, (canon[r] for r in reps))


def closed_congruence(frame: FiniteFrame, a) -> Congruence:
    """Pairs (x,y) with x v a = y v a; the congruence generated by (0,a)."""
    groups = {}
    key = []
    for x in range(frame.n):
        key.append(groups.setdefault(frame.join(x, a), x))
    return Congruence(frame, key)


def open_congruence(frame: FiniteFrame, a) -> Congruence:
    """Pairs (x,y) with x ^ a = y ^ a; the congruence generated by (a,1)."""
    groups = {}
    key = []
    for x in range(frame.n):
        key.append(groups.setdefault(frame.meet(x, a), x))
    return Congruence(frame, key)


def nabla_delta(frame: FiniteFrame, a):
    """The closed/open congruence pair at a."""
    return closed_congruence(frame, a), open_congruence(frame, a)


def kernel(h: FrameHom) -> Congruence:
    groups = {}
    key = []
    for a in range(h.dom.n):
        key.append(groups.setdefault(h.mapping[a], a))
    return Congruence(h.dom, key)


def quotient(frame: FiniteFrame, theta: Congruence):
    """Block lattice with the induced order, and the surjection onto it."""
    if theta.frame != frame:
        raise NotALattice("congruence is not on this frame")
    reps = sorted(set(theta.key))
    pos = {r: i for i, r in enumerate(reps)}
    names = [frame.names[r] for r in reps]

    def block_meet(a, b):
        return theta.key[frame.meet(a, b)]

    def block_join(a, b):
        return theta.key[frame.join(a, b)]

    meet = [[names[pos[block_meet(a, b)]] for b in reps] for a in reps]
    join = [[names[pos[block_join(a, b)]] for b in reps] for a in reps]
    qframe, renaming = frame_from_table(names, meet, join)
    hom = FrameHom(frame, qframe, (renaming[pos[theta.key[a]]] for a in range(frame.n)))
    return qframe, hom


class CongruenceFrame:
    """A set of congruences packaged as a frame ordered by inclusion.

    `congruences[i]` corresponds to element i of `structure`; `nabla` is the
    embedding of the base frame sending a to its closed congruence.
    """

    __slots__ = ("base", "congruences", "structure", "nabla", "_find")

    def __init__(self, base, congruences, structure, nabla):
        self.base = base
        self.congruences = tuple(congruences)
        self.structure = structure
        self.nabla = nabla
        self._find = {c: i for i, c in enumerate(self.congruences)}

    def find(self, theta: Congruence):
        return self._find.get(theta)

    def __contains__(self, theta):
        return theta in self._find

    def nabla_index(self, a):
        return self.nabla.mapping[a]

    def delta_index(self, a):
        idx = self.find(open_congruence(self.base, a))
        if idx is None:
            raise NotALattice("open congruence not present")
        return idx

    def __repr__(self):
        return f"CongruenceFrame({len(self.congruences)} congruences)"


def _package(base, congs, caps) -> CongruenceFrame:
    congs = sorted(set(congs), key=lambda c: c.key)
    if len(congs) > caps.max_congruences:
        raise CapExceeded("congruences", caps.max_congruences, len(congs))
    if len(congs) > caps.max_elements:
        raise CapExceeded("elements", caps.max_elements, len(congs))
    names = [f"c{i}" for i in range(len(congs))]
    index = {c: i for i, c in enumerate(congs)}

    def find_in(theta):
        i = index.get(theta)
        if i is None:
            raise NotALattice("congruence set not closed")
        return i

    meet = [[None] * len(congs) for _ in congs]
    join = [[None] * len(congs) for _ in congs]
    for i, ci in enumerate(congs):
        for j, cj in enumerate(congs):
            if j < i:
                meet[i][j] = meet[j][i]
                join[i][j] = join[j][i]
                continue
            meet[i][j] = names[find_in(ci.meet(cj))]
            join[i][j] = names[find_in(ci.join(cj))]
    structure, renaming = frame_from_table(names, meet, join, caps)
    ordered = [None] * len(congs)
    for original, canonical in enumerate(renaming):
        ordered[canonical] = congs[original]
    nabla = FrameHom(
        base,
        structure,
        (renaming[find_in(closed_congruence(base, a))] for a in range(base.n)),
    )
    return CongruenceFrame(base, ordered, structure, nabla)


def congruence_frame(frame: FiniteFrame, caps: Caps = DEFAULT_CAPS, method="fast"):
    """All frame congruences of `frame`, ordered by inclusion.

    "fast" encodes a congruence as the restriction kernel of a subset of
    join-irreducibles (down-set masks cut to the subset); "closure" closes
    the principal congruences {nabla_a ^ delta_b} under generated joins.
    """
    m = frame.jir.n
    if method == "fast":
        if (1 << m) > caps.max_congruences:
            raise CapExceeded("congruences", caps.max_congruences, 1 << m)
        congs = []
        for q in range(1 << m):
            groups = {}
            key = []
            for a, mask in enumerate(frame.elements):
                key.append(groups.setdefault(mask & q, a))
            congs.append(Congruence(frame, key))
        if len(set(congs)) != 1 << m:
            raise NotALattice("join-irreducible encoding collapsed")
    elif method == "closure":
        principal = set()
        for a in range(frame.n):
            na = closed_congruence(frame, a)
            for b in range(frame.n):
                principal.add(na.meet(open_congruence(frame, b)))
        congs = _join_closure(principal, caps)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _package(frame, congs, caps)


def _join_closure(seed, caps):
    out = set(seed)
    frontier = list(out)
    while frontier:
        c = frontier.pop()
        for d in list(out):
            j = c.join(d)
            if j not in out:
                if len(out) >= caps.max_congruences:
                    raise CapExceeded("congruences", caps.max_congruences, len(out) + 1)
                out.add(j)
                frontier.append(j)
    return out


@lru_cache(maxsize=None)
def _relative_congruence_cached(frame, members, caps):
    base_cong = [closed_congruence(frame, a) for a in range(frame.n)]
    open_s = {s: open_congruence(frame, s) for s in members}
    # meet-terms nabla_a ^ delta_s; s ranges over the sublattice, so meets of
    # generators stay in this family
    terms = {}
    for a in range(frame.n):
        na = base_cong[a]
        for s in members:
            terms[(a, s)] = na.meet(open_s[s])
    congs = _join_closure(set(terms.values()), caps)
    csl = _package(frame, congs, caps)
    # maximal generator decomposition per congruence, aligned with structure
    decomp = tuple(
        tuple(pair for pair, term in terms.items() if theta.includes(term))
        for theta in csl.congruences
    )
    return csl, terms, decomp


def relative_congruence_frame(frame: FiniteFrame, s: Sublattice, caps: Caps = DEFAULT_CAPS):
    """Subframe of the congruence frame generated by all closed congruences
    together with the open congruences at members of s."""
    if s.frame != frame:
        raise NotALattice("sublattice is not on this frame")
    csl, _, _ = _relative_congruence_cached(frame, s.sorted_members(), caps)
    return csl


def decomposition(frame, members, theta: Congruence, caps: Caps = DEFAULT_CAPS):
    """The maximal generator decomposition of theta in the relative frame:
    all (a, s) whose meet-term is below theta.  Their join must be theta."""
    _, terms, _ = _relative_congruence_cached(frame, tuple(sorted(members)), caps)
    return [(a, s) for (a, s), term in terms.items() if theta.includes(term)]


def extend_hom(h: FrameHom, s: Sublattice, caps: Caps = DEFAULT_CAPS,
               csl: CongruenceFrame | None = None) -> FrameHom:
    """Extend h along the closed-congruence embedding.

    Requires every image h(x), x in s, to be complemented in the codomain;
    the result sends each congruence to the join over its generator
    decomposition of h(a) ^ h(s)*.
    """
    frame, cod = h.dom, h.cod
    if s.frame != frame:
        raise NotALattice("sublattice is not on the hom's domain")
    compl = {}
    for x in s.sorted_members():
        c = cod.complement_of(h.mapping[x])
        if c is None:
            raise PreconditionError(
                f"image of {frame.names[x]} is not complemented in the codomain"
            )
        compl[x] = c
    members = tuple(sorted(s.members))
    cached_csl, _, decomp = _relative_congruence_cached(frame, members, caps)
    if csl is None:
        csl = cached_csl
    mapping = []
    for i in range(len(csl.congruences)):
        parts = [cod.meet(h.mapping[a], compl[x]) for a, x in decomp[i]]
        mapping.append(cod.join_all(parts))
    out = FrameHom(csl.structure, cod, mapping)
    if not out.is_frame_hom():
        raise NotALattice("extension is not a frame homomorphism")
    for a in range(frame.n):
        if out.mapping[csl.nabla_index(a)] != h.mapping[a]:
            raise NotALattice("extension does not restrict to the original hom")
    return out


def extend_hom_pair(h: FrameHom, s: Sublattice, t: Sublattice,
                    caps: Caps = DEFAULT_CAPS):
    """The relative-congruence-frame functor on morphisms.

    For h with h[s] inside t, the unique extension sending each closed
    congruence at a to the closed congruence at h(a) and each open
    congruence at s to the open one at h(s).  Returns (hom, dom_cf, cod_cf).
    """
    if t.frame != h.cod:
        raise NotALattice("target sublattice is not on the codomain")
    for x in s.members:
        if h.mapping[x] not in t.members:
            raise PreconditionError(
                f"image of {h.dom.names[x]} is outside the target sublattice"
            )
    dom_cf = relative_congruence_frame(h.dom, s, caps)
    cod_cf = relative_congruence_frame(h.cod, t, caps)
    through = FrameHom(h.dom, cod_cf.structure, (cod_cf.nabla_index(h.mapping[a]) for a in range(h.dom.n)))
    out = extend_hom(through, s, caps, csl=dom_cf)
    for x in s.members:
        if out.mapping[dom_cf.delta_index(x)] != cod_cf.delta_index(h.mapping[x]):
            raise NotALattice("extension does not respect open congruences")
    return out, dom_cf, cod_cf


def is_frith_congruence(frith, theta: Congruence) -> bool:
    """The congruence is generated by its restriction to the lattice part."""
    frame = frith.frame
    restricted = theta.restricted_to(frith.s.members)
    regenerated = congruence_generated(frame, restricted)
    direct = regenerated == theta
    member = theta in relative_congruence_frame(frame, frith.s)
    if direct != member:
        raise NotALattice("generation and membership tests disagree")
    return direct

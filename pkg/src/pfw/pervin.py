"""Finite Pervin spaces: a set with a bounded sublattice of its powerset.

Subsets are bitmasks over the universe; lattice families are deduplicated
sorted mask tuples, so equality is canonical.  The empty space is admitted
with lattice {0} (the empty-universe collapse).
"""

from __future__ import annotations

from functools import lru_cache

from .congruence import Congruence, congruence_generated
from .errors import NotALattice, SchemaError
from .lattice import frame_from_table


def _mask_bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class PervinSpace:
    """A finite universe plus a bounded sublattice of its powerset."""

    __slots__ = ("points", "sets", "_index", "_hash")

    def __init__(self, points, sets):
        points = tuple(points)
        if len(set(points)) != len(points):
            raise SchemaError("universe", "point names must be distinct")
        full = (1 << len(points)) - 1
        sets = tuple(sorted(set(sets)))
        if 0 not in sets or full not in sets:
            raise NotALattice("lattice must contain the empty set and the universe")
        for a in sets:
            if a & ~full:
                raise NotALattice("lattice member outside the universe")
            for b in sets:
                if (a | b) not in sets or (a & b) not in sets:
                    raise NotALattice("family not closed under union/intersection")
        self.points = points
        self.sets = sets
        self._index = {m: i for i, m in enumerate(sets)}
        self._hash = hash((points, sets))

    @property
    def n(self):
        return len(self.points)

    def full_mask(self):
        return (1 << self.n) - 1

    def set_names(self, mask):
        return [self.points[i] for i in _mask_bits(mask)]

    def point_index(self, name):
        return self.points.index(name)

    def is_discrete(self):
        return len(self.sets) == 1 << self.n

    def is_t0(self):
        """Points are separated by the generated topology (= the lattice)."""
        profiles = set()
        for x in range(self.n):
            profile = tuple(1 if (m >> x) & 1 else 0 for m in self.sets)
            if profile in profiles:
                return False
            profiles.add(profile)
        return True

    def __eq__(self, other):
        return (
            isinstance(other, PervinSpace)
            and self.points == other.points
            and self.sets == other.sets
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PervinSpace({self.n} points, {len(self.sets)} sets)"


class PervinMap:
    """A point function whose preimages of codomain sets stay in the domain lattice."""

    __slots__ = ("dom", "cod", "mapping", "_hash")

    def __init__(self, dom: PervinSpace, cod: PervinSpace, mapping):
        mapping = tuple(mapping)
        if len(mapping) != dom.n or any(not 0 <= v < cod.n for v in mapping):
            raise SchemaError("map", "point map does not cover the domain")
        self.dom = dom
        self.cod = cod
        self.mapping = mapping
        self._hash = hash((dom, cod, mapping))

    @classmethod
    def identity(cls, space):
        return cls(space, space, range(space.n))

    def preimage(self, mask):
        out = 0
        for x, v in enumerate(self.mapping):
            if (mask >> v) & 1:
                out |= 1 << x
        return out

    def image(self, mask):
        out = 0
        for x in _mask_bits(mask):
            out |= 1 << self.mapping[x]
        return out

    def is_morphism(self):
        return all(self.preimage(t) in self.dom._index for t in self.cod.sets)

    def compose(self, other: "PervinMap") -> "PervinMap":
        """self after other."""
        if other.cod != self.dom:
            raise SchemaError("map", "maps not composable")
        return PervinMap(other.dom, self.cod, (self.mapping[v] for v in other.mapping))

    def is_surjective(self):
        return set(self.mapping) == set(range(self.cod.n))

    def is_injective(self):
        return len(set(self.mapping)) == self.dom.n

    def __eq__(self, other):
        return (
            isinstance(other, PervinMap)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PervinMap({self.dom!r} -> {self.cod!r})"


@lru_cache(maxsize=None)
def pervin_maps(x: PervinSpace, y: PervinSpace):
    """All Pervin morphisms x -> y."""
    if x.n == 0:
        return (PervinMap(x, y, ()),)
    if y.n == 0:
        return ()
    out = []
    total = y.n ** x.n
    for code in range(total):
        mapping = []
        c = code
        for _ in range(x.n):
            mapping.append(c % y.n)
            c //= y.n
        f = PervinMap(x, y, mapping)
        if f.is_morphism():
            out.append(f)
    return tuple(out)


def omega_topology(x: PervinSpace):
    """The topology generated by the lattice, as a frame.

    On a finite universe arbitrary unions are finite unions, so the topology
    is the lattice itself (asserted).  Returns (frame, mask -> element index).
    """
    family = set(x.sets)
    frontier = list(family)
    while frontier:
        a = frontier.pop()
        for b in list(family):
            for c in (a | b, a & b):
                if c not in family:
                    family.add(c)
                    frontier.append(c)
    if family != set(x.sets):
        raise NotALattice("generated topology escaped the lattice")
    names = ["{" + ",".join(x.set_names(m)) + "}" for m in x.sets]
    meet = [[names[x._index[a & b]] for b in x.sets] for a in x.sets]
    join = [[names[x._index[a | b]] for b in x.sets] for a in x.sets]
    frame, renaming = frame_from_table(names, meet, join)
    to_element = {m: renaming[i] for i, m in enumerate(x.sets)}
    return frame, to_element


def symmetrize(x: PervinSpace) -> PervinSpace:
    """Boolean closure of the lattice inside the powerset (complements, unions,
    intersections); the identity on points is a map symmetrize(x) -> x."""
    full = x.full_mask()
    family = set(x.sets)
    frontier = list(family)
    while frontier:
        a = frontier.pop()
        for c in [full & ~a] + [a | b for b in list(family)] + [a & b for b in list(family)]:
            if c not in family:
                family.add(c)
                frontier.append(c)
    return PervinSpace(x.points, family)


def skula(x: PervinSpace):
    """Topology of the symmetrization; reports discreteness."""
    sym = symmetrize(x)
    return sym.sets, sym.is_discrete()


def subspace(x: PervinSpace, member_mask):
    """The subspace on a subset of the universe, with its embedding."""
    keep = [i for i in range(x.n) if (member_mask >> i) & 1]
    pos = {p: k for k, p in enumerate(keep)}
    sets = set()
    for m in x.sets:
        cut = 0
        for i in _mask_bits(m & member_mask):
            cut |= 1 << pos[i]
        sets.add(cut)
    sub = PervinSpace(tuple(x.points[i] for i in keep), sets)
    incl = PervinMap(sub, x, keep)
    return sub, incl


def subset_congruence(x: PervinSpace, member_mask) -> Congruence:
    """Congruence on the open-set frame generated by pairs of lattice members
    with the same trace on the subset."""
    frame, to_elem = omega_topology(x)
    pairs = [
        (to_elem[a], to_elem[b])
        for a in x.sets
        for b in x.sets
        if a < b and (a & member_mask) == (b & member_mask)
    ]
    return congruence_generated(frame, pairs)


def td_report(x: PervinSpace) -> dict:
    """The four point-removal conditions, evaluated independently.

    (1) every point has a lattice member containing it whose point-removal
    stays in the lattice; (2) the subset-congruence map is injective;
    (3) no single point-removal gives the identity congruence; (4) the
    symmetrization topology is discrete.
    """
    full = x.full_mask()
    cond1 = all(
        any((s >> p) & 1 and (s & ~(1 << p)) in x._index for s in x.sets)
        for p in range(x.n)
    )
    thetas = {}
    for mask in range(full + 1):
        thetas[mask] = subset_congruence(x, mask)
    cond2 = len(set(thetas.values())) == len(thetas)
    cond3 = not any(
        thetas[full & ~(1 << p)].is_identity() for p in range(x.n)
    )
    _, discrete = skula(x)
    report = {
        "pointwise_witness": cond1,
        "subset_congruences_injective": cond2,
        "no_trivial_point_removal": cond3,
        "skula_discrete": discrete,
    }
    report["equivalent"] = len(set(report.values())) == 1
    return report


def morphism_report(f: PervinMap) -> dict:
    """Definable predicates for a Pervin morphism (categorical oracles live in
    the check suite)."""
    epi = f.is_surjective()
    extremal_mono = f.is_injective() and all(
        any(f.preimage(t) == s for t in f.cod.sets) for s in f.dom.sets
    )
    iso = (
        f.is_injective()
        and f.is_surjective()
        and all(f.image(s) in f.cod._index for s in f.dom.sets)
        and {f.preimage(t) for t in f.cod.sets} == set(f.dom.sets)
    )
    return {
        "is_epi": epi,
        "is_extremal_mono": extremal_mono,
        "is_iso": iso,
        "dom_t0": f.dom.is_t0(),
        "cod_t0": f.cod.is_t0(),
    }


# -- brute-force categorical oracles ---------------------------------------

def is_epi_oracle(f: PervinMap, catalog):
    """No two distinct maps out of the codomain agree after f."""
    for z in catalog:
        seen = {}
        for g in pervin_maps(f.cod, z):
            sig = tuple(g.mapping[v] for v in f.mapping)
            if sig in seen and seen[sig] != g.mapping:
                return False
            seen[sig] = g.mapping
    return True


def is_mono_oracle(f: PervinMap, catalog):
    for z in catalog:
        seen = {}
        for g in pervin_maps(z, f.dom):
            sig = tuple(f.mapping[v] for v in g.mapping)
            if sig in seen and seen[sig] != g.mapping:
                return False
            seen[sig] = g.mapping
    return True


def is_iso_oracle(f: PervinMap):
    """An inverse morphism exists."""
    if not (f.is_injective() and f.is_surjective()):
        return False
    inverse = [0] * f.cod.n
    for xpt, v in enumerate(f.mapping):
        inverse[v] = xpt
    try:
        g = PervinMap(f.cod, f.dom, inverse)
    except SchemaError:
        return False
    return g.is_morphism()


def is_extremal_mono_oracle(f: PervinMap, catalog):
    """Mono such that in every factorization f = g . e with e epi, e is iso."""
    if not is_mono_oracle(f, catalog):
        return False
    for w in catalog:
        if w.n > f.dom.n:
            continue
        for e in pervin_maps(f.dom, w):
            if not e.is_surjective():
                continue
            # e surjective determines the candidate g on points
            g_map = [None] * w.n
            ok = True
            for xpt, wpt in enumerate(e.mapping):
                if g_map[wpt] is None:
                    g_map[wpt] = f.mapping[xpt]
                elif g_map[wpt] != f.mapping[xpt]:
                    ok = False
                    break
            if not ok:
                continue
            g = PervinMap(w, f.cod, g_map)
            if g.is_morphism() and not is_iso_oracle(e):
                return False
    return True


def equalizer_space(f: PervinMap, g: PervinMap):
    """Equalizer of a parallel pair: the agreement subspace with its embedding."""
    if f.dom != g.dom or f.cod != g.cod:
        raise SchemaError("map", "not a parallel pair")
    mask = 0
    for xpt in range(f.dom.n):
        if f.mapping[xpt] == g.mapping[xpt]:
            mask |= 1 << xpt
    return subspace(f.dom, mask)


def sierpinski_like():
    """The two-point space with the indiscrete lattice, used to exhibit
    extremal monos as equalizers."""
    return PervinSpace(("0", "1"), (0, 3))


def extremal_mono_as_equalizer(m: PervinMap):
    """The two maps into the two-point indiscrete space whose equalizer is the
    embedded subspace: the constant-1 map and the image indicator."""
    z = sierpinski_like()
    image = 0
    for v in m.mapping:
        image |= 1 << v
    f1 = PervinMap(m.cod, z, [1] * m.cod.n)
    f2 = PervinMap(m.cod, z, [1 if (image >> ypt) & 1 else 0 for ypt in range(m.cod.n)])
    return f1, f2


def pervin_isomorphic(x: PervinSpace, y: PervinSpace):
    """Some bijection matching the lattices (point names need not agree)."""
    if x.n != y.n or len(x.sets) != len(y.sets):
        return False
    return any(morphism_report(f)["is_iso"] for f in pervin_maps(x, y))

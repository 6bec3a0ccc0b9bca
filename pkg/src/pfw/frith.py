"""The category of Frith frames: a frame with a join-dense bounded sublattice.

On finite frames join-density forces the sublattice to be the whole frame
(any element is a finite join of members, and the sublattice is closed under
finite joins); the constructor asserts join-density and the structural
collapse is covered by the suite.  The general two-component formulas are
implemented regardless, so the code follows the unrestricted definitions.
"""

from __future__ import annotations

from functools import lru_cache

from .caps import Caps, DEFAULT_CAPS
from .congruence import (
    congruence_generated,
    extend_hom,
    extend_hom_pair,
    is_frith_congruence,
    kernel,
    quotient,
    relative_congruence_frame,
)
from .errors import CapExceeded, NotALattice, PreconditionError
from .lattice import (
    FiniteFrame,
    FrameHom,
    Poset,
    Sublattice,
    compact_elements,
    frame_from_poset,
    frame_from_table,
    frame_homs,
    frame_isomorphism,
    sublattice_generated,
    subframe_generated,
)
from . import entourage as ent


class FrithFrame:
    """A frame plus a designated join-dense bounded sublattice."""

    __slots__ = ("frame", "s", "_hash")

    def __init__(self, frame: FiniteFrame, s: Sublattice):
        if s.frame != frame:
            raise NotALattice("lattice part lives on a different frame")
        if not s.is_join_dense():
            raise NotALattice("lattice part is not join-dense")
        self.frame = frame
        self.s = s
        self._hash = hash((frame, s))

    @classmethod
    def whole(cls, frame: FiniteFrame):
        return cls(frame, Sublattice(frame, range(frame.n)))

    def is_symmetric(self):
        return self.s.is_boolean()

    def __eq__(self, other):
        return (
            isinstance(other, FrithFrame)
            and self.frame == other.frame
            and self.s == other.s
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FrithFrame({self.frame.n} elements, |S|={len(self.s.members)})"


class FrithHom:
    """A frame homomorphism mapping the lattice part into the lattice part."""

    __slots__ = ("dom", "cod", "hom", "_hash")

    def __init__(self, dom: FrithFrame, cod: FrithFrame, hom: FrameHom):
        if hom.dom != dom.frame or hom.cod != cod.frame:
            raise NotALattice("underlying hom does not match the Frith frames")
        for x in dom.s.members:
            if hom.mapping[x] not in cod.s.members:
                raise PreconditionError(
                    f"image of {dom.frame.names[x]} escapes the lattice part"
                )
        self.dom = dom
        self.cod = cod
        self.hom = hom
        self._hash = hash((dom, cod, hom))

    @classmethod
    def identity(cls, f: FrithFrame):
        return cls(f, f, FrameHom.identity(f.frame))

    def compose(self, other: "FrithHom") -> "FrithHom":
        return FrithHom(other.dom, self.cod, self.hom.compose(other.hom))

    def __eq__(self, other):
        return (
            isinstance(other, FrithHom)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.hom == other.hom
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FrithHom({self.dom!r} -> {self.cod!r})"


@lru_cache(maxsize=None)
def frith_homs(f: FrithFrame, g: FrithFrame):
    """All Frith morphisms f -> g."""
    out = []
    for h in frame_homs(f.frame, g.frame):
        if all(h.mapping[x] in g.s.members for x in f.s.members):
            out.append(FrithHom(f, g, h))
    return tuple(out)


def morphism_report(h: FrithHom) -> dict:
    """Definable predicates; categorical oracles live alongside."""
    image_s = {h.hom.mapping[x] for x in h.dom.s.members}
    extremal_epi = image_s == set(h.cod.s.members)
    regular_epi = extremal_epi and is_frith_congruence(h.dom, kernel(h.hom))
    return {
        "is_mono": h.hom.is_injective(),
        "is_extremal_epi": extremal_epi,
        "is_iso": h.hom.is_injective() and extremal_epi,
        "is_regular_epi": regular_epi,
    }


# -- brute-force categorical oracles ---------------------------------------

def is_mono_oracle(h: FrithHom, catalog):
    for z in catalog:
        seen = {}
        for u in frith_homs(z, h.dom):
            sig = tuple(h.hom.mapping[v] for v in u.hom.mapping)
            if sig in seen and seen[sig] != u.hom.mapping:
                return False
            seen[sig] = u.hom.mapping
    return True


def is_epi_oracle(h: FrithHom, catalog):
    for z in catalog:
        seen = {}
        for u in frith_homs(h.cod, z):
            sig = tuple(u.hom.mapping[v] for v in h.hom.mapping)
            if sig in seen and seen[sig] != u.hom.mapping:
                return False
            seen[sig] = u.hom.mapping
    return True


def is_iso_oracle(h: FrithHom):
    """An inverse Frith morphism exists."""
    if not (h.hom.is_injective() and h.hom.is_surjective()):
        return False
    inverse = [0] * h.cod.frame.n
    for a, v in enumerate(h.hom.mapping):
        inverse[v] = a
    back = FrameHom(h.cod.frame, h.dom.frame, inverse)
    if not back.is_frame_hom():
        return False
    try:
        FrithHom(h.cod, h.dom, back)
    except PreconditionError:
        return False
    return True


def is_extremal_epi_oracle(h: FrithHom, catalog):
    """Epi such that every factorization through a monomorphism forces the
    mono to be an isomorphism.

    An injective m determines the only candidate g with m . g = h, so the
    factorization search is linear in the monos into the codomain.
    """
    if not is_epi_oracle(h, catalog):
        return False
    for w in catalog:
        for m in frith_homs(w, h.cod):
            if not m.hom.is_injective():
                continue
            back = {v: a for a, v in enumerate(m.hom.mapping)}
            mapping = []
            for a in range(h.dom.frame.n):
                v = back.get(h.hom.mapping[a])
                if v is None:
                    break
                mapping.append(v)
            else:
                g_hom = FrameHom(h.dom.frame, w.frame, mapping)
                if not g_hom.is_frame_hom():
                    continue
                try:
                    g = FrithHom(h.dom, w, g_hom)
                except PreconditionError:
                    continue
                if m.compose(g) == h and not is_iso_oracle(m):
                    return False
    return True


def is_regular_epi_oracle(h: FrithHom):
    """h coequalizes its kernel pair and the comparison map is an iso."""
    if not morphism_report(h)["is_extremal_epi"]:
        return False
    pair, p1, p2 = kernel_pair(h)
    q = coequalizer(p1, p2)
    # the comparison map out of the coequalizer
    mapping = [None] * q.cod.frame.n
    for a in range(h.dom.frame.n):
        c = q.hom.mapping[a]
        v = h.hom.mapping[a]
        if mapping[c] is None:
            mapping[c] = v
        elif mapping[c] != v:
            return False
    comparison = FrameHom(q.cod.frame, h.cod.frame, mapping)
    if not comparison.is_frame_hom():
        return False
    try:
        phi = FrithHom(q.cod, h.cod, comparison)
    except PreconditionError:
        return False
    return is_iso_oracle(phi)


# -- limits and colimits ----------------------------------------------------

def _shift_poset(p: Poset, q: Poset):
    """Disjoint union p + q with prefixed point names."""
    up = [m for m in p.up] + [m << p.n for m in q.up]
    names = tuple(f"l:{nm}" for nm in p.names) + tuple(f"r:{nm}" for nm in q.names)
    return Poset(p.n + q.n, up, names)


def product(f: FrithFrame, g: FrithFrame, caps: Caps = DEFAULT_CAPS):
    """Coordinatewise product with the two projections."""
    pf, pg = f.frame, g.frame
    poset = _shift_poset(pf.jir, pg.jir)
    prod = frame_from_poset(poset, caps)
    low = (1 << pf.jir.n) - 1

    def pair_index(x1, x2):
        return prod.index_of_mask(pf.elements[x1] | (pg.elements[x2] << pf.jir.n))

    proj1 = FrameHom(prod, pf, (pf.index_of_mask(m & low) for m in prod.elements))
    proj2 = FrameHom(prod, pg, (pg.index_of_mask(m >> pf.jir.n) for m in prod.elements))
    s_members = {
        pair_index(s1, s2) for s1 in f.s.members for s2 in g.s.members
    }
    obj = FrithFrame(prod, Sublattice(prod, s_members))
    return obj, FrithHom(obj, f, proj1), FrithHom(obj, g, proj2), pair_index


def equalizer(h1: FrithHom, h2: FrithHom):
    """Agreement sublattice of the lattice parts, included as a subframe."""
    if h1.dom != h2.dom or h1.cod != h2.cod:
        raise NotALattice("not a parallel pair")
    f = h1.dom
    agree = {
        s for s in f.s.members if h1.hom.mapping[s] == h2.hom.mapping[s]
    }
    sub = subframe_generated(f.frame, agree)
    lattice, to_parent = sub.as_lattice()
    incl = FrameHom(lattice, f.frame, to_parent)
    s_members = {i for i, parent in enumerate(to_parent) if parent in agree}
    obj = FrithFrame(lattice, Sublattice(lattice, s_members))
    return obj, FrithHom(obj, f, incl)


def _pair_cideals(pf: FiniteFrame, pg: FiniteFrame, caps: Caps):
    """All C-ideals of the frame pair: join closure of the principal ones."""
    principals = {
        ent.oplus(pf, pg, a, b) for a in range(pf.n) for b in range(pg.n)
    }
    out = set(principals)
    frontier = list(out)
    while frontier:
        c = frontier.pop()
        for d in list(out):
            j = c.join(d)
            if j not in out:
                if len(out) >= caps.max_cideals:
                    raise CapExceeded("C-ideals", caps.max_cideals, len(out) + 1)
                out.add(j)
                frontier.append(j)
    return sorted(out, key=lambda c: c.rows)


def coproduct(f: FrithFrame, g: FrithFrame, caps: Caps = DEFAULT_CAPS):
    """Frame coproduct realized as the C-ideal lattice of the pair."""
    pf, pg = f.frame, g.frame
    ideals = _pair_cideals(pf, pg, caps)
    if len(ideals) > caps.max_elements:
        raise CapExceeded("elements", caps.max_elements, len(ideals))
    index = {c: i for i, c in enumerate(ideals)}
    names = [f"i{i}" for i in range(len(ideals))]
    meet = [[None] * len(ideals) for _ in ideals]
    join = [[None] * len(ideals) for _ in ideals]
    for i, ci in enumerate(ideals):
        for j, cj in enumerate(ideals):
            if j < i:
                meet[i][j] = meet[j][i]
                join[i][j] = join[j][i]
                continue
            meet[i][j] = names[index[ci.intersect(cj)]]
            join[i][j] = names[index[ci.join(cj)]]
    frame, renaming = frame_from_table(names, meet, join, caps)

    def ideal_element(c):
        return renaming[index[c]]

    inj1 = FrameHom(pf, frame, (ideal_element(ent.oplus(pf, pg, a, pg.one)) for a in range(pf.n)))
    inj2 = FrameHom(pg, frame, (ideal_element(ent.oplus(pf, pg, pf.one, b)) for b in range(pg.n)))
    injected = {inj1.mapping[s] for s in f.s.members} | {
        inj2.mapping[s] for s in g.s.members
    }
    s_part = sublattice_generated(frame, injected)
    if not s_part.is_join_dense():
        raise NotALattice("coproduct lattice part failed join-density")
    obj = FrithFrame(frame, s_part)
    return obj, FrithHom(f, obj, inj1), FrithHom(g, obj, inj2), ideals, ideal_element


def coequalizer(h1: FrithHom, h2: FrithHom) -> FrithHom:
    """Quotient of the codomain by the congruence identifying the two images."""
    if h1.dom != h2.dom or h1.cod != h2.cod:
        raise NotALattice("not a parallel pair")
    m = h1.cod
    theta = congruence_generated(
        m.frame,
        [(h1.hom.mapping[a], h2.hom.mapping[a]) for a in range(h1.dom.frame.n)],
    )
    qframe, qhom = quotient(m.frame, theta)
    t_image = {qhom.mapping[t] for t in m.s.members}
    obj = FrithFrame(qframe, Sublattice(qframe, t_image))
    return FrithHom(m, obj, qhom)


def kernel_pair(h: FrithHom):
    """Pullback of h along itself: the agreement subobject of the product."""
    prod, pr1, pr2, pair_index = product(h.dom, h.dom)
    agree = {
        pair_index(s1, s2)
        for s1 in h.dom.s.members
        for s2 in h.dom.s.members
        if h.hom.mapping[s1] == h.hom.mapping[s2]
    }
    sub = subframe_generated(prod.frame, agree)
    lattice, to_parent = sub.as_lattice()
    incl = FrameHom(lattice, prod.frame, to_parent)
    s_members = {i for i, parent in enumerate(to_parent) if parent in agree}
    obj = FrithFrame(lattice, Sublattice(lattice, s_members))
    p1 = FrithHom(obj, h.dom, pr1.hom.compose(incl))
    p2 = FrithHom(obj, h.dom, pr2.hom.compose(incl))
    return obj, p1, p2


# -- symmetrization ---------------------------------------------------------

def symmetrize(f: FrithFrame, caps: Caps = DEFAULT_CAPS) -> dict:
    """The symmetric reflection: the relative congruence frame with the
    Boolean sublattice generated by the closed congruences of lattice members
    and their complements; the unit is the closed-congruence embedding."""
    csl = relative_congruence_frame(f.frame, f.s, caps)
    structure = csl.structure
    gens = set()
    for x in f.s.sorted_members():
        gens.add(csl.nabla_index(x))
        gens.add(csl.delta_index(x))
    s_bar = sublattice_generated(structure, gens)
    if not s_bar.is_boolean():
        raise NotALattice("symmetrization lattice part is not Boolean")
    if not s_bar.is_join_dense():
        raise NotALattice("symmetrization lattice part is not join-dense")
    obj = FrithFrame(structure, s_bar)
    unit = FrithHom(f, obj, csl.nabla)
    return {"object": obj, "unit": unit, "congruence_frame": csl}


def symmetrize_reflection(h: FrithHom, target_sym: dict, caps: Caps = DEFAULT_CAPS) -> FrithHom:
    """The unique factorization of h: f -> (M,B) symmetric through the unit."""
    if not h.cod.is_symmetric():
        raise PreconditionError("target is not symmetric")
    lifted = extend_hom(h.hom, h.dom.s, caps)
    return FrithHom(target_sym["object"], h.cod, lifted)


def symmetrize_map(h: FrithHom, caps: Caps = DEFAULT_CAPS):
    """The symmetrization functor on morphisms (the paired extension)."""
    lifted, dom_cf, cod_cf = extend_hom_pair(h.hom, h.dom.s, h.cod.s, caps)
    dom_sym = symmetrize(h.dom, caps)
    cod_sym = symmetrize(h.cod, caps)
    return FrithHom(dom_sym["object"], cod_sym["object"], lifted)


def boolean_core(f: FrithFrame) -> dict:
    """The symmetric coreflection: members complemented within the lattice
    part, generating a subframe; the counit is the inclusion."""
    fr = f.frame
    core = {
        s for s in f.s.members
        if any(
            fr.meet(s, t) == fr.zero and fr.join(s, t) == fr.one
            for t in f.s.members
        )
    }
    sub = subframe_generated(fr, core)
    lattice, to_parent = sub.as_lattice()
    incl = FrameHom(lattice, fr, to_parent)
    s_members = {i for i, parent in enumerate(to_parent) if parent in core}
    obj = FrithFrame(lattice, Sublattice(lattice, s_members))
    if not obj.is_symmetric():
        raise NotALattice("boolean core is not symmetric")
    return {"object": obj, "counit": FrithHom(obj, f, incl)}


def boolean_core_corestrict(h: FrithHom, source_core: dict) -> FrithHom:
    """Corestriction of h: (M,B) symmetric -> f through the counit of f."""
    if not h.dom.is_symmetric():
        raise PreconditionError("source is not symmetric")
    core = source_core["object"]
    counit = source_core["counit"]
    positions = {parent: i for i, parent in enumerate(counit.hom.mapping)}
    mapping = []
    for a in range(h.dom.frame.n):
        v = h.hom.mapping[a]
        if v not in positions:
            raise PreconditionError("image escapes the boolean core")
        mapping.append(positions[v])
    return FrithHom(h.dom, core, FrameHom(h.dom.frame, core.frame, mapping))


def ideal_frith(lattice: FiniteFrame, caps: Caps = DEFAULT_CAPS):
    """The coherent Frith frame on the ideal completion of a lattice."""
    from .completion import ideal_lattice

    idl = ideal_lattice(lattice, caps)
    frame = idl["frame"]
    s_members = set(idl["principal"])
    obj = FrithFrame(frame, Sublattice(frame, s_members))
    report = frith_report(obj, caps)
    if not report["is_coherent"]:
        raise NotALattice("ideal completion failed coherence")
    return {"object": obj, "ideal_lattice": idl}


def frith_report(f: FrithFrame, caps: Caps = DEFAULT_CAPS) -> dict:
    """Compactness, coherence, zero-dimensionality, symmetry."""
    fr = f.frame
    kl = compact_elements(fr, caps=caps)
    kset = set(kl["compact"])
    coherent = set(f.s.members) <= kset
    if coherent != (set(f.s.members) == kset):
        raise NotALattice("coherence equivalence failed on this instance")
    compl = set(fr.complemented_elements())
    return {
        "is_compact": fr.one in kset,
        "is_coherent": coherent,
        "is_zero_dimensional": set(f.s.members) <= compl,
        "is_symmetric": f.is_symmetric(),
        "compact_scan_exhaustive": kl["scanned"],
    }


def proximity(f: FrithFrame) -> dict:
    """The lattice-part interpolation relation: a related to b when some
    member sits between them."""
    fr = f.frame
    members = f.s.sorted_members()
    rel = set()
    for a in range(fr.n):
        for b in range(fr.n):
            if any(fr.le(a, s) and fr.le(s, b) for s in members):
                rel.add((a, b))
    interpolates = all(
        any((a, c) in rel and (c, c) in rel and (c, b) in rel for c in range(fr.n))
        for (a, b) in rel
    )
    diagonal = tuple(sorted(a for a in range(fr.n) if (a, a) in rel))
    return {
        "relation": rel,
        "interpolates": interpolates,
        "diagonal_is_lattice_part": diagonal == f.s.sorted_members(),
        "below_order": all(fr.le(a, b) for (a, b) in rel),
        "meet_join_compatible": all(
            (fr.meet(a, c), fr.meet(b, d)) in rel and (fr.join(a, c), fr.join(b, d)) in rel
            for (a, b) in rel
            for (c, d) in rel
        ),
    }


def frith_isomorphic(f: FrithFrame, g: FrithFrame):
    """Some frame isomorphism matching the lattice parts."""
    iso = frame_isomorphism(f.frame, g.frame)
    if iso is None:
        return False
    if {iso.mapping[s] for s in f.s.members} == set(g.s.members):
        return True
    return any(
        is_iso_oracle(h)
        for h in frith_homs(f, g)
        if h.hom.is_injective() and h.hom.is_surjective()
    )

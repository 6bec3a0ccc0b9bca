"""Ideal completions, the completion map and its adjoint, and Cauchy maps.

Ideals are enumerated generically (down-sets closed under finite joins) and
the principal-ideal isomorphism is asserted rather than assumed, guarding
the finite-scale degeneracy.  Cauchy candidates are classified by the three
lattice-part conditions; for symmetric frames the entourage-level conditions
are evaluated against the canonical uniformity and the equivalence asserted.
"""

from __future__ import annotations

from functools import lru_cache

from .caps import Caps, DEFAULT_CAPS
from .congruence import relative_congruence_frame, extend_hom
from .entourage import filter_from_sublattice
from .errors import CapExceeded, NotALattice, PreconditionError
from .frith import FrithFrame, FrithHom, frith_report, symmetrize, symmetrize_map
from .lattice import FiniteFrame, FrameHom, Sublattice, frame_from_table, frame_homs


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@lru_cache(maxsize=None)
def ideal_lattice(base: FiniteFrame, caps: Caps = DEFAULT_CAPS) -> dict:
    """All ideals of a finite bounded distributive lattice, ordered by
    inclusion, with the principal-ideal embedding."""
    if base.n > 16:
        raise CapExceeded("ideal enumeration base", 16, base.n)
    ideals = []
    for mask in range(1, 1 << base.n):
        if not (mask >> base.zero) & 1:
            continue
        ok = True
        for a in _bits(mask):
            if base.down_idx[a] & ~mask:
                ok = False
                break
            for b in _bits(mask >> a << a):
                if not (mask >> base.join(a, b)) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            ideals.append(mask)
    if len(ideals) > caps.max_elements:
        raise CapExceeded("ideals", caps.max_elements, len(ideals))
    index = {m: i for i, m in enumerate(ideals)}
    # name each ideal by its top element (ideals of a finite lattice have one)
    names = [f"I({base.names[base.join_all(_bits(m))]})" for m in ideals]
    if len(set(names)) != len(names):
        names = [f"I{i}" for i in range(len(ideals))]
    meet = [[names[index[a & b]] for b in ideals] for a in ideals]
    join = [[None] * len(ideals) for _ in ideals]
    for i, a in enumerate(ideals):
        for j, b in enumerate(ideals):
            union = a | b
            # close the union under joins; down-closure is preserved
            changed = True
            cur = union
            while changed:
                changed = False
                members = list(_bits(cur))
                for x in members:
                    for y in members:
                        z = base.join(x, y)
                        if not (cur >> z) & 1:
                            cur |= 1 << z
                            changed = True
                nxt = 0
                for x in _bits(cur):
                    nxt |= base.down_idx[x]
                if nxt != cur:
                    cur = nxt
                    changed = True
            join[i][j] = names[index[cur]]
    frame, renaming = frame_from_table(names, meet, join, caps)
    principal = tuple(
        renaming[index[base.down_idx[a]]] for a in range(base.n)
    )
    is_principal_iso = sorted(principal) == list(range(frame.n)) and all(
        base.le(a, b) == frame.le(principal[a], principal[b])
        for a in range(base.n)
        for b in range(base.n)
    )
    ideal_masks = [None] * len(ideals)
    for original, canonical in enumerate(renaming):
        ideal_masks[canonical] = ideals[original]
    return {
        "base": base,
        "frame": frame,
        "ideal_masks": tuple(ideal_masks),
        "principal": principal,
        "is_principal_iso": is_principal_iso,
    }


def extend_lattice_hom(h: FrameHom, idl: dict) -> FrameHom:
    """The unique frame extension along principal ideals: J maps to the join
    of the images of its members."""
    if h.dom != idl["base"]:
        raise NotALattice("hom domain is not the ideal lattice's base")
    mapping = [
        h.cod.join_all(h.mapping[a] for a in _bits(mask))
        for mask in idl["ideal_masks"]
    ]
    out = FrameHom(idl["frame"], h.cod, mapping)
    if not out.is_frame_hom():
        raise NotALattice("ideal extension is not a frame homomorphism")
    return out


def _part_lattice(f: FrithFrame):
    """The lattice part as a standalone lattice with its member list."""
    return f.s.as_lattice()


@lru_cache(maxsize=None)
def completion_map(f: FrithFrame, caps: Caps = DEFAULT_CAPS) -> dict:
    """The canonical dense extremal epimorphism from the ideal completion of
    the lattice part, with its right adjoint."""
    s_lat, to_parent = _part_lattice(f)
    idl = ideal_lattice(s_lat, caps)
    frame = idl["frame"]
    s_members = set(idl["principal"])
    dom = FrithFrame(frame, Sublattice(frame, s_members))
    c_mapping = [
        f.frame.join_all(to_parent[a] for a in _bits(mask))
        for mask in idl["ideal_masks"]
    ]
    c_hom = FrameHom(frame, f.frame, c_mapping)
    c = FrithHom(dom, f, c_hom)
    parent_pos = {parent: i for i, parent in enumerate(to_parent)}
    c_star = []
    for a in range(f.frame.n):
        mask = 0
        for i, parent in enumerate(to_parent):
            if f.frame.le(parent, a):
                mask |= 1 << i
        c_star.append(_ideal_index(idl, mask))
    galois = all(
        f.frame.le(c_mapping[j], a) == _mask_subset(idl["ideal_masks"][j], idl["ideal_masks"][c_star[a]])
        for j in range(frame.n)
        for a in range(f.frame.n)
    )
    right_inverse = all(c_mapping[c_star[a]] == a for a in range(f.frame.n))
    image_s = {c_hom.mapping[x] for x in dom.s.members}
    return {
        "idl": idl,
        "object": dom,
        "c": c,
        "c_star": tuple(c_star),
        "is_dense": c_hom.is_dense(),
        "is_extremal_epi": image_s == set(f.s.members),
        "galois": galois,
        "right_inverse": right_inverse,
        "s_lattice": s_lat,
        "to_parent": to_parent,
    }


def _ideal_index(idl, mask):
    for i, m in enumerate(idl["ideal_masks"]):
        if m == mask:
            return i
    raise NotALattice("down-set is not an ideal")


def _mask_subset(a, b):
    return not (a & ~b)


@lru_cache(maxsize=None)
def canonical_cauchy_map(f: FrithFrame, caps: Caps = DEFAULT_CAPS) -> dict:
    """The map sending a to the closed congruence at its lattice-part trace,
    inside the relative congruence frame of the ideal completion."""
    comp = completion_map(f, caps)
    dom = comp["object"]
    csl = relative_congruence_frame(dom.frame, dom.s, caps)
    lam = tuple(csl.nabla_index(comp["c_star"][a]) for a in range(f.frame.n))
    candidate = CauchyCandidate(f, csl.structure, lam)
    return {
        "completion": comp,
        "congruence_frame": csl,
        "lambda": lam,
        "candidate": candidate,
        "report": cauchy_report(candidate, caps),
    }


class CauchyCandidate:
    """An arbitrary element function classified by the Cauchy conditions."""

    __slots__ = ("dom", "cod", "mapping", "_hash")

    def __init__(self, dom: FrithFrame, cod: FiniteFrame, mapping):
        mapping = tuple(mapping)
        if len(mapping) != dom.frame.n:
            raise NotALattice("candidate must cover the whole domain")
        self.dom = dom
        self.cod = cod
        self.mapping = mapping
        self._hash = hash((dom, cod, mapping))

    def as_hom(self):
        return FrameHom(self.dom.frame, self.cod, self.mapping)

    def is_frame_hom(self):
        return self.as_hom().is_frame_hom()

    def __eq__(self, other):
        return (
            isinstance(other, CauchyCandidate)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return self._hash


def cauchy_report(phi: CauchyCandidate, caps: Caps = DEFAULT_CAPS) -> dict:
    """The three lattice-part conditions; for symmetric domains also the
    entourage-level conditions against the canonical uniformity, with the
    equivalence asserted."""
    f, cod, m = phi.dom, phi.cod, phi.mapping
    fr = f.frame
    members = f.s.sorted_members()
    c1 = (
        m[fr.zero] == cod.zero
        and m[fr.one] == cod.one
        and all(
            m[fr.meet(x, y)] == cod.meet(m[x], m[y])
            and m[fr.join(x, y)] == cod.join(m[x], m[y])
            for x in members
            for y in members
        )
    )
    c2 = all(
        m[a] == cod.join_all(m[s] for s in members if fr.le(s, a))
        for a in range(fr.n)
    )
    c3 = all(
        cod.join(m[s], cod.pseudocomplement(m[s])) == cod.one for s in members
    )
    report = {"c1": c1, "c2": c2, "c3": c3, "is_cauchy": c1 and c2 and c3}
    if f.is_symmetric():
        q = filter_from_sublattice(fr, members)
        ub = q.uniformly_below_report()
        m1 = (
            m[fr.zero] == cod.zero
            and m[fr.one] == cod.one
            and all(
                m[fr.meet(a, b)] == cod.meet(m[a], m[b])
                for a in range(fr.n)
                for b in range(fr.n)
            )
        )
        m2 = all(
            cod.le(
                m[a],
                cod.join_all(
                    m[b]
                    for b in range(fr.n)
                    if (b, a) in ub["rel1"] or (b, a) in ub["rel2"]
                ),
            )
            for a in range(fr.n)
        )
        m3 = all(
            cod.join_all(m[a] for a in e.diagonal()) == cod.one for e in q.basis
        )
        report.update({
            "entourage_m1": m1,
            "entourage_m2": m2,
            "entourage_m3": m3,
            "entourage_cauchy": m1 and m2 and m3,
        })
        if report["entourage_cauchy"] != report["is_cauchy"]:
            raise NotALattice("the two Cauchy notions disagree on this instance")
    return report


def enumerate_cauchy(f: FrithFrame, cod: FiniteFrame, caps: Caps = DEFAULT_CAPS):
    """All Cauchy maps into the codomain.

    The lattice-part restriction is a bounded lattice homomorphism with
    complemented images, and the join formula then determines the whole map;
    the search fixes the restriction first and verifies the full report.
    """
    if f.frame.n > caps.max_enum or cod.n > caps.max_enum:
        raise CapExceeded("cauchy enumeration", caps.max_enum, max(f.frame.n, cod.n))
    s_lat, to_parent = _part_lattice(f)
    seen = set()
    out = []
    for h in frame_homs(s_lat, cod):
        if any(
            cod.join(h.mapping[i], cod.pseudocomplement(h.mapping[i])) != cod.one
            for i in range(s_lat.n)
        ):
            continue
        values = {to_parent[i]: h.mapping[i] for i in range(s_lat.n)}
        mapping = tuple(
            cod.join_all(values[s] for s in f.s.members if f.frame.le(s, a))
            for a in range(f.frame.n)
        )
        if mapping in seen:
            continue
        seen.add(mapping)
        candidate = CauchyCandidate(f, cod, mapping)
        if cauchy_report(candidate, caps)["is_cauchy"]:
            out.append(candidate)
    return out


def factor_cauchy(phi: CauchyCandidate, caps: Caps = DEFAULT_CAPS) -> dict:
    """The frame homomorphism out of the congruence frame of the ideal
    completion through which the candidate factors."""
    report = cauchy_report(phi, caps)
    if not report["is_cauchy"]:
        raise PreconditionError("candidate is not a Cauchy map")
    can = canonical_cauchy_map(phi.dom, caps)
    comp = can["completion"]
    csl = can["congruence_frame"]
    s_lat = comp["s_lattice"]
    to_parent = comp["to_parent"]
    restriction = FrameHom(
        s_lat, phi.cod, (phi.mapping[to_parent[i]] for i in range(s_lat.n))
    )
    if not restriction.is_frame_hom():
        raise NotALattice("lattice-part restriction is not a homomorphism")
    through_idl = extend_lattice_hom(restriction, comp["idl"])
    g = extend_hom(through_idl, comp["object"].s, caps, csl=csl)
    commutes = all(
        g.mapping[can["lambda"][a]] == phi.mapping[a] for a in range(phi.dom.frame.n)
    )
    generators_ok = all(
        g.mapping[csl.nabla_index(comp["idl"]["principal"][i])]
        == phi.mapping[to_parent[i]]
        for i in range(s_lat.n)
    )
    return {"g": g, "commutes": commutes, "generators_ok": generators_ok}


def is_completion_map(h: FrithHom, caps: Caps = DEFAULT_CAPS) -> dict:
    """Whether h exhibits its domain as a completion of its codomain.

    Requires a coherent (= complete) domain and a dense extremal epimorphism
    whose symmetric reflection is also dense; completions are unique up to
    isomorphism with respect to reflection-level density, and at finite
    scale reflection-density of a surjection forces injectivity.
    """
    from .frith import morphism_report

    rep = morphism_report(h)
    reflection = symmetrize_map(h, caps)
    return {
        "domain_complete": frith_report(h.dom, caps)["is_coherent"],
        "is_extremal_epi": rep["is_extremal_epi"],
        "is_dense": h.hom.is_dense(),
        "reflection_dense": reflection.hom.is_dense(),
        "is_completion": (
            frith_report(h.dom, caps)["is_coherent"]
            and rep["is_extremal_epi"]
            and h.hom.is_dense()
            and reflection.hom.is_dense()
        ),
    }


def completeness_report(f: FrithFrame, catalog, codomains, caps: Caps = DEFAULT_CAPS) -> dict:
    """The four equivalent characterizations, each computed independently.

    (1) the frame is coherent; (2)/(3) the symmetrization is coherent/compact;
    (4) every enumerable Cauchy map into the catalog codomains is a frame
    homomorphism; plus the definitional scan: every dense extremal epimorphism
    from a symmetric catalog object onto the symmetrization is an iso.
    """
    from .frith import frith_homs, is_iso_oracle, morphism_report

    cond_coherent = frith_report(f, caps)["is_coherent"]
    sym = symmetrize(f, caps)
    sym_report = frith_report(sym["object"], caps)
    cond_sym_coherent = sym_report["is_coherent"]
    cond_sym_compact = sym_report["is_compact"]
    cauchy_all_homs = True
    cauchy_count = 0
    for cod in codomains:
        if f.frame.n > caps.max_enum or cod.n > caps.max_enum:
            continue
        for phi in enumerate_cauchy(f, cod, caps):
            cauchy_count += 1
            if not phi.is_frame_hom():
                cauchy_all_homs = False
    definitional = True
    for m in catalog:
        if not m.is_symmetric():
            continue
        for h in frith_homs(m, sym["object"]):
            rep = morphism_report(h)
            if rep["is_extremal_epi"] and h.hom.is_dense() and not is_iso_oracle(h):
                definitional = False
    conditions = {
        "coherent": cond_coherent,
        "symmetrization_coherent": cond_sym_coherent,
        "symmetrization_compact": cond_sym_compact,
        "cauchy_criterion": cauchy_all_homs,
        "definitional": definitional,
    }
    comp = completion_map(f, caps)
    return {
        **conditions,
        "agree": len(set(conditions.values())) == 1,
        "cauchy_maps_checked": cauchy_count,
        "completion_dense_extremal": comp["is_dense"] and comp["is_extremal_epi"],
        "completion_right_inverse": comp["right_inverse"],
        "completion": comp,
    }

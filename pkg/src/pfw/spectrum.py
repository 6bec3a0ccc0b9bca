"""Points, the dual adjunction between Pervin spaces and Frith frames, and
the symmetrization comparison.

Points are the frame maps into the two-element frame, found by scanning the
principal prime filters; the basic open at an element collects the points
sending it to 1.
"""

from __future__ import annotations

from functools import lru_cache

from .caps import Caps, DEFAULT_CAPS
from .congruence import extend_hom
from .errors import NotALattice
from .frith import FrithFrame, FrithHom, frith_homs, symmetrize, symmetrize_map
from .lattice import FiniteFrame, FrameHom, Sublattice, two
from .pervin import PervinMap, PervinSpace, morphism_report, pervin_maps, symmetrize as psym


@lru_cache(maxsize=None)
def points(frame: FiniteFrame):
    """All frame maps into the two-element frame.

    Every filter of a finite lattice is an up-set of its meet, so the scan
    runs over principal filters and keeps the prime ones.
    """
    t = two()
    out = []
    for x in range(frame.n):
        if x == frame.zero:
            continue
        # primality of the filter of elements above x
        if all(
            frame.le(x, a) or frame.le(x, b) or not frame.le(x, frame.join(a, b))
            for a in range(frame.n)
            for b in range(frame.n)
        ):
            out.append(
                FrameHom(frame, t, (1 if frame.le(x, a) else 0 for a in range(frame.n)))
            )
    return tuple(out)


def hat(frame: FiniteFrame, a, pts):
    """Bitmask of the points sending a to 1."""
    mask = 0
    for i, p in enumerate(pts):
        if p.mapping[a] == 1:
            mask |= 1 << i
    return mask


@lru_cache(maxsize=None)
def pt_space(f: FrithFrame):
    """The Pervin space of points with the lattice of basic opens.

    Returns (space, points); point i of the space is points[i].
    """
    pts = points(f.frame)
    names = tuple(f"p{i}" for i in range(len(pts)))
    sets = {hat(f.frame, s, pts) for s in f.s.members}
    space = PervinSpace(names, sets)
    return space, pts


def pt_map(h: FrithHom):
    """Precomposition on points, as a Pervin morphism.

    Satisfies: the preimage of the basic open at s is the basic open at h(s).
    """
    cod_space, cod_pts = pt_space(h.cod)
    dom_space, dom_pts = pt_space(h.dom)
    dom_index = {p.mapping: i for i, p in enumerate(dom_pts)}
    mapping = []
    for p in cod_pts:
        composed = tuple(p.mapping[h.hom.mapping[a]] for a in range(h.dom.frame.n))
        mapping.append(dom_index[composed])
    out = PervinMap(cod_space, dom_space, mapping)
    if not out.is_morphism():
        raise NotALattice("precomposition failed to be a Pervin morphism")
    for s in h.dom.s.members:
        if out.preimage(hat(h.dom.frame, s, dom_pts)) != hat(
            h.cod.frame, h.hom.mapping[s], cod_pts
        ):
            raise NotALattice("basic-open preimage law failed")
    return out


@lru_cache(maxsize=None)
def omega_frith(x: PervinSpace):
    """The Frith frame of the generated topology with the lattice part.

    Returns (frith_frame, mask -> element index).
    """
    from .pervin import omega_topology

    frame, to_elem = omega_topology(x)
    members = {to_elem[m] for m in x.sets}
    return FrithFrame(frame, Sublattice(frame, members)), to_elem


def omega_map(f: PervinMap):
    """Preimage on open sets, as a Frith morphism (contravariant)."""
    dom_frith, dom_to = omega_frith(f.dom)
    cod_frith, cod_to = omega_frith(f.cod)
    elem_to_mask = {v: k for k, v in cod_to.items()}
    mapping = [0] * cod_frith.frame.n
    for mask, idx in cod_to.items():
        mapping[idx] = dom_to[f.preimage(mask)]
    return FrithHom(cod_frith, dom_frith, FrameHom(cod_frith.frame, dom_frith.frame, mapping))


def counit(f: FrithFrame):
    """The comparison a -> basic-open(a) into the open-set frame of the
    spectrum; an iso exactly when the frame is spatial."""
    space, pts = pt_space(f)
    target, to_elem = omega_frith(space)
    mapping = [to_elem[hat(f.frame, a, pts)] for a in range(f.frame.n)]
    return FrithHom(f, target, FrameHom(f.frame, target.frame, mapping)), space, pts


def unit(x: PervinSpace):
    """Point evaluation into the spectrum of the open-set Frith frame; an iso
    exactly when the space is sober."""
    frith, to_elem = omega_frith(x)
    space, pts = pt_space(frith)
    elem_mask = {v: k for k, v in to_elem.items()}
    pt_index = {p.mapping: i for i, p in enumerate(pts)}
    mapping = []
    for xpt in range(x.n):
        evaluation = tuple(
            1 if (elem_mask.get(a, None) is not None and (elem_mask[a] >> xpt) & 1) else 0
            for a in range(frith.frame.n)
        )
        mapping.append(pt_index[evaluation])
    return PervinMap(x, space, mapping), frith


def transpose_to_space(g: PervinMap, f: FrithFrame, x: PervinSpace, pts):
    """Pervin morphism x -> pt(f) to Frith morphism f -> omega(x)."""
    target, to_elem = omega_frith(x)
    mapping = []
    for a in range(f.frame.n):
        mapping.append(to_elem[g.preimage(hat(f.frame, a, pts))])
    return FrithHom(f, target, FrameHom(f.frame, target.frame, mapping))


def transpose_to_frame(h: FrithHom, x: PervinSpace, f: FrithFrame, pts, to_elem):
    """Frith morphism f -> omega(x) to Pervin morphism x -> pt(f)."""
    elem_mask = {v: k for k, v in to_elem.items()}
    space, _ = pt_space(f)
    pt_index = {p.mapping: i for i, p in enumerate(pts)}
    mapping = []
    for xpt in range(x.n):
        evaluation = tuple(
            1 if (elem_mask[h.hom.mapping[a]] >> xpt) & 1 else 0
            for a in range(f.frame.n)
        )
        mapping.append(pt_index[evaluation])
    return PervinMap(x, space, mapping)


def adjunction_report(x: PervinSpace, f: FrithFrame) -> dict:
    """Explicit unit/counit plus the hom-set bijection by full enumeration."""
    from .frith import morphism_report as frith_morphism_report

    pt_f, pts = pt_space(f)
    omega_x, to_elem = omega_frith(x)
    space_homs = pervin_maps(x, pt_f)
    frame_homs_list = frith_homs(f, omega_x)
    to_frame = {g: transpose_to_space(g, f, x, pts) for g in space_homs}
    to_space = {h: transpose_to_frame(h, x, f, pts, to_elem) for h in frame_homs_list}
    bijection = (
        len(space_homs) == len(frame_homs_list)
        and all(to_space[to_frame[g]] == g for g in space_homs)
        and all(to_frame[to_space[h]] == h for h in frame_homs_list)
    )
    eps, _, _ = counit(f)
    eta, _ = unit(x)
    return {
        "hom_count_space_side": len(space_homs),
        "hom_count_frame_side": len(frame_homs_list),
        "bijection": bijection,
        "is_spatial": frith_morphism_report(eps)["is_iso"],
        "is_sober": morphism_report(eta)["is_iso"],
        "space_t0": x.is_t0(),
    }


@lru_cache(maxsize=None)
def alpha_report(f: FrithFrame, caps: Caps = DEFAULT_CAPS) -> dict:
    """The comparison between the symmetrized spectrum and the spectrum of the
    symmetrization: point extension along the closed-congruence embedding."""
    sym = symmetrize(f, caps)
    csl = sym["congruence_frame"]
    space_f, pts_f = pt_space(f)
    sym_space = psym(space_f)
    space_s, pts_s = pt_space(sym["object"])
    pts_s_index = {p.mapping: i for i, p in enumerate(pts_s)}
    mapping = []
    for p in pts_f:
        extended = extend_hom(p, f.s, caps, csl=csl)
        mapping.append(pts_s_index[extended.mapping])
    alpha = PervinMap(sym_space, space_s, mapping)
    rep = morphism_report(alpha)
    hat_forward = all(
        alpha.preimage(hat(sym["object"].frame, csl.nabla_index(s), pts_s))
        == hat(f.frame, s, pts_f)
        for s in f.s.members
    )
    full = sym_space.full_mask()
    hat_complement = all(
        alpha.preimage(hat(sym["object"].frame, csl.delta_index(s), pts_s))
        == (full & ~hat(f.frame, s, pts_f))
        for s in f.s.members
    )
    return {
        "alpha": alpha,
        "is_iso": rep["is_iso"],
        "hat_forward": hat_forward,
        "hat_complement": hat_complement,
    }


def alpha_natural_square(h: FrithHom, caps: Caps = DEFAULT_CAPS) -> bool:
    """Naturality of the comparison: extending a point after precomposition
    agrees with precomposing the extension."""
    a_dom = alpha_report(h.dom, caps)["alpha"]
    a_cod = alpha_report(h.cod, caps)["alpha"]
    p_h = pt_map(h)
    p_sym_h = pt_map(symmetrize_map(h, caps))
    path1 = tuple(a_dom.mapping[p_h.mapping[i]] for i in range(p_h.dom.n))
    path2 = tuple(p_sym_h.mapping[a_cod.mapping[i]] for i in range(a_cod.dom.n))
    return path1 == path2

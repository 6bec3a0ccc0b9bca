"""The construct-operation registry shared by the service and the CLI."""

from __future__ import annotations

from ..caps import Caps
from ..congruence import (
    closed_congruence,
    congruence_frame,
    congruence_generated,
    extend_hom,
    is_frith_congruence,
    open_congruence,
    quotient,
    relative_congruence_frame,
)
from ..completion import (
    CauchyCandidate,
    cauchy_report,
    completeness_report,
    completion_map,
    enumerate_cauchy,
    factor_cauchy,
    ideal_lattice,
)
from ..entourage import (
    CIdeal,
    compose,
    entourage_report,
    filter_from_sublattice,
    frith_coreflection,
    frith_quasi_uniformity,
    pervin_entourage,
    recover_sublattice,
    uniform_reflection,
)
from ..errors import SchemaError
from ..frith import (
    FrithFrame,
    boolean_core,
    coequalizer,
    coproduct,
    equalizer,
    frith_report,
    ideal_frith,
    morphism_report as frith_morphism_report,
    product,
    proximity,
    symmetrize,
)
from ..generate import frith_catalog
from ..lattice import FrameHom, Sublattice, frame_report, hom_report, sublattice_generated, subframe_generated
from ..pervin import (
    PervinMap,
    morphism_report as pervin_morphism_report,
    skula,
    subset_congruence,
    subspace,
    symmetrize as psym,
    td_report,
)
from ..serialize import (
    Instance,
    parse_congruence,
    parse_frame,
    parse_frith,
    parse_morphism,
    parse_pervin,
    parse_quni,
    serialize_frame,
    serialize_instance,
    serialize_morphism,
)
from ..spectrum import adjunction_report, alpha_report, omega_frith, points, pt_space

OPS = {}


def _op(name):
    def wrap(fn):
        OPS[name] = fn
        return fn

    return wrap


def _arg(args, key):
    if key not in args:
        raise SchemaError(f"args.{key}", "missing argument")
    return args[key]


def _element(frame, args, key="element"):
    name = _arg(args, key)
    try:
        return frame.name_index(name)
    except KeyError as exc:
        raise SchemaError(f"args.{key}", f"unknown element {name!r}") from exc


def _elements(frame, args, key="elements"):
    names = _arg(args, key)
    if not isinstance(names, list):
        raise SchemaError(f"args.{key}", "expected a list of element names")
    try:
        return [frame.name_index(nm) for nm in names]
    except KeyError as exc:
        raise SchemaError(f"args.{key}", f"unknown element {exc}") from exc


def _frame_doc(frame, name="result"):
    return serialize_instance(Instance("frame", name, frame))


def _pairs_doc(frame, cideal):
    return sorted([frame.names[i], frame.names[j]] for i, j in cideal.pairs())


def _parse_pairs(frame, raw, path):
    rows = [0] * frame.n
    if not isinstance(raw, list):
        raise SchemaError(path, "expected a pair list")
    for k, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"{path}[{k}]", "expected a [name, name] pair")
        try:
            rows[frame.name_index(pair[0])] |= 1 << frame.name_index(pair[1])
        except KeyError as exc:
            raise SchemaError(f"{path}[{k}]", f"unknown element {exc}") from exc
    return CIdeal(frame, frame, rows)


# -- lattice ------------------------------------------------------------------

@_op("canonical-frame")
def _op_canonical(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    return {"frame": _frame_doc(frame), "elements": frame.n, "join_irreducibles": frame.jir.n}


@_op("pseudocomplement")
def _op_pseudo(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    a = _element(frame, args)
    return {"element": frame.names[frame.pseudocomplement(a)]}


@_op("complement")
def _op_complement(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    a = _element(frame, args)
    c = frame.complement_of(a)
    return {
        "element": None if c is None else frame.names[c],
        "complemented_elements": [frame.names[x] for x in frame.complemented_elements()],
    }


@_op("sublattice-generated")
def _op_sublattice(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    members = sublattice_generated(frame, _elements(frame, args)).sorted_members()
    return {"members": [frame.names[a] for a in members]}


@_op("subframe-generated")
def _op_subframe(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    members = subframe_generated(frame, _elements(frame, args)).sorted_members()
    return {"members": [frame.names[a] for a in members]}


@_op("frame-report")
def _op_frame_report(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    s = None
    if "s" in args:
        s = Sublattice(frame, _elements(frame, args, "s"))
    report = frame_report(frame, s, caps)
    report["compact_elements"] = [frame.names[a] for a in report["compact_elements"]]
    report["complemented_elements"] = [
        frame.names[a] for a in report["complemented_elements"]
    ]
    if "s_compact_elements" in report:
        report["s_compact_elements"] = [
            frame.names[a] for a in report["s_compact_elements"]
        ]
    return report


@_op("hom-report")
def _op_hom_report(args, caps):
    h = parse_morphism(_arg(args, "morphism"), "args.morphism", caps)
    if isinstance(h, FrameHom):
        report = hom_report(h)
        report["image"] = [h.cod.names[a] for a in report["image"]]
        return report
    if isinstance(h, PervinMap):
        return pervin_morphism_report(h)
    return frith_morphism_report(h)


# -- congruence ---------------------------------------------------------------

@_op("congruence-generated")
def _op_cong_generated(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    raw = _arg(args, "pairs")
    if not isinstance(raw, list):
        raise SchemaError("args.pairs", "expected a list of pairs")
    pairs = []
    for k, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"args.pairs[{k}]", "expected a [name, name] pair")
        try:
            pairs.append((frame.name_index(pair[0]), frame.name_index(pair[1])))
        except KeyError as exc:
            raise SchemaError(f"args.pairs[{k}]", f"unknown element {exc}") from exc
    theta = congruence_generated(frame, pairs)
    return serialize_instance(Instance("congruence", "generated", theta))


@_op("closed-congruence")
def _op_closed(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    theta = closed_congruence(frame, _element(frame, args))
    return serialize_instance(Instance("congruence", "closed", theta))


@_op("open-congruence")
def _op_open(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    theta = open_congruence(frame, _element(frame, args))
    return serialize_instance(Instance("congruence", "open", theta))


@_op("quotient")
def _op_quotient(args, caps):
    theta = parse_congruence(_arg(args, "congruence"), "args.congruence", caps)
    qframe, qhom = quotient(theta.frame, theta)
    return {
        "frame": _frame_doc(qframe, "quotient"),
        "morphism": serialize_instance(Instance("morphism", "projection", qhom)),
    }


@_op("congruence-frame")
def _op_congruence_frame(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    cf = congruence_frame(frame, caps)
    return {
        "frame": _frame_doc(cf.structure, "congruence-frame"),
        "congruences": len(cf.congruences),
        "blocks": [
            [[frame.names[a] for a in block] for block in theta.blocks()]
            for theta in cf.congruences
        ],
    }


@_op("relative-congruence-frame")
def _op_relative(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    s = Sublattice(frame, sublattice_generated(frame, _elements(frame, args, "s")).members)
    csl = relative_congruence_frame(frame, s, caps)
    return {
        "frame": _frame_doc(csl.structure, "relative-congruence-frame"),
        "congruences": len(csl.congruences),
        "nabla": {
            frame.names[a]: csl.structure.names[csl.nabla_index(a)]
            for a in range(frame.n)
        },
    }


@_op("extend-hom")
def _op_extend(args, caps):
    h = parse_morphism(_arg(args, "morphism"), "args.morphism", caps)
    if not isinstance(h, FrameHom):
        raise SchemaError("args.morphism", "expected a frame-hom")
    s = Sublattice(h.dom, sublattice_generated(h.dom, _elements(h.dom, args, "s")).members)
    ext = extend_hom(h, s, caps)
    return serialize_instance(Instance("morphism", "extension", ext))


@_op("is-frith-congruence")
def _op_is_frith_cong(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    raw = _arg(args, "blocks")
    theta = parse_congruence(
        {"frame": serialize_frame(f.frame), "blocks": raw}, "args", caps
    )
    return {"is_frith_congruence": is_frith_congruence(f, theta)}


# -- pervin -------------------------------------------------------------------

@_op("omega-topology")
def _op_omega_top(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    frith, _ = omega_frith(x)
    return {
        "frame": _frame_doc(frith.frame, "open-set-frame"),
        "sets": [x.set_names(m) for m in x.sets],
    }


@_op("psym")
def _op_psym(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    return serialize_instance(Instance("pervin", "symmetrization", psym(x)))


@_op("skula")
def _op_skula(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    sets, discrete = skula(x)
    return {"sets": [x.set_names(m) for m in sets], "discrete": discrete}


@_op("subspace")
def _op_subspace(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    names = _arg(args, "subset")
    mask = 0
    for nm in names:
        mask |= 1 << x.point_index(nm)
    sub, incl = subspace(x, mask)
    return {
        "space": serialize_instance(Instance("pervin", "subspace", sub)),
        "embedding": serialize_instance(Instance("morphism", "embedding", incl)),
    }


@_op("theta")
def _op_theta(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    names = _arg(args, "subset")
    mask = 0
    for nm in names:
        mask |= 1 << x.point_index(nm)
    theta = subset_congruence(x, mask)
    return serialize_instance(Instance("congruence", "subset-congruence", theta))


@_op("td-report")
def _op_td(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    return td_report(x)


# -- frith --------------------------------------------------------------------

@_op("frith-report")
def _op_frith_report(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    return frith_report(f, caps)


@_op("product")
def _op_product(args, caps):
    f = parse_frith(_arg(args, "left"), "args.left", caps)
    g = parse_frith(_arg(args, "right"), "args.right", caps)
    obj, p1, p2, _ = product(f, g, caps)
    return {
        "object": serialize_instance(Instance("frith", "product", obj)),
        "proj_left": serialize_morphism(p1.hom),
        "proj_right": serialize_morphism(p2.hom),
    }


@_op("coproduct")
def _op_coproduct(args, caps):
    f = parse_frith(_arg(args, "left"), "args.left", caps)
    g = parse_frith(_arg(args, "right"), "args.right", caps)
    obj, i1, i2, _, _ = coproduct(f, g, caps)
    return {
        "object": serialize_instance(Instance("frith", "coproduct", obj)),
        "inj_left": serialize_morphism(i1.hom),
        "inj_right": serialize_morphism(i2.hom),
    }


@_op("equalizer")
def _op_equalizer(args, caps):
    h1 = parse_morphism(_arg(args, "h1"), "args.h1", caps)
    h2 = parse_morphism(_arg(args, "h2"), "args.h2", caps)
    if not (hasattr(h1, "hom") and hasattr(h2, "hom")):
        raise SchemaError("args", "expected frith-hom morphisms")
    obj, incl = equalizer(h1, h2)
    return {
        "object": serialize_instance(Instance("frith", "equalizer", obj)),
        "embedding": serialize_morphism(incl.hom),
    }


@_op("coequalizer")
def _op_coequalizer(args, caps):
    h1 = parse_morphism(_arg(args, "h1"), "args.h1", caps)
    h2 = parse_morphism(_arg(args, "h2"), "args.h2", caps)
    if not (hasattr(h1, "hom") and hasattr(h2, "hom")):
        raise SchemaError("args", "expected frith-hom morphisms")
    q = coequalizer(h1, h2)
    return {
        "object": serialize_instance(Instance("frith", "coequalizer", q.cod)),
        "projection": serialize_morphism(q.hom),
    }


@_op("fsym")
def _op_fsym(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    sym = symmetrize(f, caps)
    return {
        "object": serialize_instance(Instance("frith", "symmetrization", sym["object"])),
        "unit": serialize_morphism(sym["unit"].hom),
    }


@_op("boolean-core")
def _op_boolean_core(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    core = boolean_core(f)
    return {
        "object": serialize_instance(Instance("frith", "boolean-core", core["object"])),
        "counit": serialize_morphism(core["counit"].hom),
    }


@_op("idl")
def _op_idl(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    out = ideal_frith(frame, caps)
    return serialize_instance(Instance("frith", "ideal-completion", out["object"]))


@_op("proximity")
def _op_proximity(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    px = proximity(f)
    names = f.frame.names
    return {
        "pairs": sorted([names[a], names[b]] for a, b in px["relation"]),
        "interpolates": px["interpolates"],
        "diagonal_is_lattice_part": px["diagonal_is_lattice_part"],
    }


# -- entourage ----------------------------------------------------------------

@_op("pervin-entourage")
def _op_pervin_entourage(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    e = pervin_entourage(frame, _element(frame, args))
    report = entourage_report(e)
    report["finite_cover"] = (
        None
        if report["finite_cover"] is None
        else [frame.names[a] for a in report["finite_cover"]]
    )
    return {"pairs": _pairs_doc(frame, e), **report}


@_op("compose-entourages")
def _op_compose(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    e1 = _parse_pairs(frame, _arg(args, "e1"), "args.e1")
    e2 = _parse_pairs(frame, _arg(args, "e2"), "args.e2")
    return {"pairs": _pairs_doc(frame, compose(e1, e2))}


@_op("entourage-report")
def _op_entourage_report(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    e = _parse_pairs(frame, _arg(args, "pairs"), "args.pairs")
    if not e.is_cideal():
        raise SchemaError("args.pairs", "pair set is not saturated")
    report = entourage_report(e)
    report["finite_cover"] = (
        None
        if report["finite_cover"] is None
        else [frame.names[a] for a in report["finite_cover"]]
    )
    return report


@_op("quni-from-sublattice")
def _op_quni(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    members = sublattice_generated(frame, _elements(frame, args)).members
    q = filter_from_sublattice(frame, members)
    return serialize_instance(Instance("quni", "generated", q))


@_op("recover-sublattice")
def _op_recover(args, caps):
    q = parse_quni(_arg(args, "quni"), "args.quni", caps)
    rec = recover_sublattice(q, caps)
    frame = q.frame
    return {
        "members": [frame.names[a] for a in rec["sublattice"].sorted_members()],
        "witnesses": [
            {
                "partition": [frame.names[a] for a in w["partition"]],
                "reproduced": w["reproduced"],
            }
            for w in rec["witnesses"]
        ],
    }


@_op("uniform-reflection")
def _op_reflection(args, caps):
    q = parse_quni(_arg(args, "quni"), "args.quni", caps)
    return serialize_instance(Instance("quni", "reflection", uniform_reflection(q)))


@_op("frith-quni")
def _op_frith_quni(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    _, q = frith_quasi_uniformity(f.frame, f.s, caps)
    return serialize_instance(Instance("quni", "frith-filter", q))


@_op("frith-coreflection")
def _op_coreflection(args, caps):
    q = parse_quni(_arg(args, "quni"), "args.quni", caps)
    cor = frith_coreflection(q, caps)
    obj = FrithFrame(cor["lattice"], cor["sublattice"])
    return {
        "object": serialize_instance(Instance("frith", "coreflection", obj)),
        "gamma": serialize_morphism(cor["gamma"]),
        "dense": cor["dense"],
        "surjective": cor["surjective"],
        "filter_generated": cor["filter_generated"],
        "is_iso": cor["is_iso"],
    }


# -- spectrum -----------------------------------------------------------------

@_op("points")
def _op_points(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    pts = points(frame)
    return {
        "points": [
            sorted(frame.names[a] for a in range(frame.n) if p.mapping[a] == 1)
            for p in pts
        ]
    }


@_op("pt")
def _op_pt(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    space, _ = pt_space(f)
    return serialize_instance(Instance("pervin", "spectrum", space))


@_op("omega")
def _op_omega(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    frith, _ = omega_frith(x)
    return serialize_instance(Instance("frith", "open-set-frith-frame", frith))


@_op("adjunction-report")
def _op_adjunction(args, caps):
    x = parse_pervin(_arg(args, "pervin"), "args.pervin")
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    return adjunction_report(x, f)


@_op("alpha-report")
def _op_alpha(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    rep = alpha_report(f, caps)
    return {
        "is_iso": rep["is_iso"],
        "hat_forward": rep["hat_forward"],
        "hat_complement": rep["hat_complement"],
    }


# -- completion ---------------------------------------------------------------

@_op("ideal-lattice")
def _op_ideal_lattice(args, caps):
    frame = parse_frame(_arg(args, "frame"), "args.frame", caps)
    idl = ideal_lattice(frame, caps)
    return {
        "frame": _frame_doc(idl["frame"], "ideal-lattice"),
        "principal": {
            frame.names[a]: idl["frame"].names[idl["principal"][a]]
            for a in range(frame.n)
        },
        "is_principal_iso": idl["is_principal_iso"],
    }


@_op("completion-map")
def _op_completion_map(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    comp = completion_map(f, caps)
    return {
        "object": serialize_instance(Instance("frith", "completion", comp["object"])),
        "c": serialize_morphism(comp["c"].hom),
        "is_dense": comp["is_dense"],
        "is_extremal_epi": comp["is_extremal_epi"],
        "galois": comp["galois"],
        "right_inverse": comp["right_inverse"],
    }


def _candidate(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    cod = parse_frame(_arg(args, "cod"), "args.cod", caps)
    raw = _arg(args, "map")
    if not isinstance(raw, dict):
        raise SchemaError("args.map", "expected an element-name dictionary")
    mapping = []
    for nm in f.frame.names:
        if nm not in raw:
            raise SchemaError("args.map", f"missing entry for {nm!r}")
        try:
            mapping.append(cod.name_index(raw[nm]))
        except KeyError as exc:
            raise SchemaError("args.map", f"unknown codomain element {exc}") from exc
    return CauchyCandidate(f, cod, mapping)


@_op("cauchy-report")
def _op_cauchy_report(args, caps):
    return cauchy_report(_candidate(args, caps), caps)


@_op("enumerate-cauchy")
def _op_enumerate_cauchy(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    cod = parse_frame(_arg(args, "cod"), "args.cod", caps)
    maps = enumerate_cauchy(f, cod, caps)
    return {
        "count": len(maps),
        "maps": [
            {f.frame.names[a]: cod.names[phi.mapping[a]] for a in range(f.frame.n)}
            for phi in maps
        ],
    }


@_op("factor-cauchy")
def _op_factor_cauchy(args, caps):
    out = factor_cauchy(_candidate(args, caps), caps)
    return {
        "g": serialize_morphism(out["g"]),
        "commutes": out["commutes"],
        "generators_ok": out["generators_ok"],
    }


@_op("completeness-report")
def _op_completeness(args, caps):
    f = parse_frith(_arg(args, "frith"), "args.frith", caps)
    catalog = list(frith_catalog(caps.max_enum))
    codomains = [g.frame for g in catalog]
    rep = completeness_report(f, catalog, codomains, caps)
    return {
        k: rep[k]
        for k in (
            "coherent",
            "symmetrization_coherent",
            "symmetrization_compact",
            "cauchy_criterion",
            "definitional",
            "agree",
            "cauchy_maps_checked",
            "completion_dense_extremal",
            "completion_right_inverse",
        )
    }


def run_op(name: str, args: dict, caps: Caps):
    if name not in OPS:
        raise SchemaError("op", f"unknown operation {name!r}; known: {sorted(OPS)}")
    if not isinstance(args, dict):
        raise SchemaError("args", "expected an object")
    return OPS[name](args, caps)

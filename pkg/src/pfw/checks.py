"""The property-check registry and suite runner.

Every law the library claims is registered here as a named check over
generated or exhaustive instances.  A check yields one report per instance:
pass, fail (with a replayable witness), or skipped when a cap is hit.
Identical configurations produce identical report streams.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .caps import Caps, DEFAULT_CAPS
from .congruence import (
    closed_congruence,
    congruence_frame,
    congruence_generated,
    extend_hom,
    extend_hom_pair,
    full_congruence,
    identity_congruence,
    is_frith_congruence,
    kernel,
    open_congruence,
    quotient,
    relative_congruence_frame,
)
from .completion import (
    canonical_cauchy_map,
    completion_map,
    completeness_report,
    enumerate_cauchy,
    extend_lattice_hom,
    factor_cauchy,
    ideal_lattice,
    is_completion_map,
)
from .entourage import (
    cideal_generated,
    compose,
    entourage_report,
    filter_from_sublattice,
    frith_coreflection,
    frith_quasi_uniformity,
    image_cideal,
    is_quasi_uniform_hom,
    oplus,
    pervin_entourage,
    recover_sublattice,
    uniform_reflection,
    uniformly_below,
)
from .errors import CapExceeded, PfwError
from .frith import (
    FrithFrame,
    boolean_core,
    boolean_core_corestrict,
    coequalizer,
    coproduct,
    equalizer,
    frith_homs,
    frith_isomorphic,
    frith_report,
    ideal_frith,
    is_extremal_epi_oracle,
    is_iso_oracle,
    is_mono_oracle,
    is_regular_epi_oracle,
    morphism_report as frith_morphism_report,
    product,
    proximity,
    symmetrize,
    symmetrize_reflection,
)
from .generate import (
    frame_catalog,
    frith_catalog,
    pervin_catalog,
    posets_upto_iso,
    rand_frame,
    rand_pervin,
    rand_poset,
    rand_quni,
    small_frame_catalog,
    sublattices_of,
)
from .lattice import (
    Sublattice,
    compact_elements,
    frame_from_poset,
    frame_from_table,
    frame_homs,
    hom_report,
    is_isomorphic,
    poset_isomorphism,
    sublattice_generated,
    subframe_generated,
)
from .pervin import (
    PervinMap,
    equalizer_space,
    extremal_mono_as_equalizer,
    is_epi_oracle as pervin_epi_oracle,
    is_extremal_mono_oracle,
    is_iso_oracle as pervin_iso_oracle,
    is_mono_oracle as pervin_mono_oracle,
    morphism_report as pervin_morphism_report,
    pervin_isomorphic,
    pervin_maps,
    subset_congruence,
    subspace,
    symmetrize as psym,
    td_report,
)
from .spectrum import (
    adjunction_report,
    alpha_natural_square,
    alpha_report,
    hat,
    points,
)


@dataclass(frozen=True)
class CheckConfig:
    caps: Caps = DEFAULT_CAPS
    seed: int = 0
    max_ji: int = 3
    max_universe: int = 2
    samples: int = 12


@dataclass(frozen=True)
class CheckReport:
    check: str
    instance: str
    verdict: str  # pass | fail | skipped
    witness: dict | None = None

    def as_dict(self):
        out = {"check": self.check, "instance": self.instance, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class Check:
    id: str
    summary: str
    runner: object = field(compare=False)


CHECKS: list[Check] = []


def _register(check_id, summary):
    def wrap(fn):
        CHECKS.append(Check(check_id, summary, fn))
        return fn

    return wrap


def _verdict(check_id, instance, ok, witness=None):
    if ok:
        return CheckReport(check_id, instance, "pass")
    return CheckReport(check_id, instance, "fail", witness or {})


def _frames(config: CheckConfig):
    for i, frame in enumerate(frame_catalog(config.max_ji)):
        yield f"catalog[{i}]", frame
    rng = random.Random(config.seed)
    for i in range(config.samples):
        yield f"seeded[{i}]", rand_frame(rng, max_ji=4, caps=config.caps)


def _spaces(config: CheckConfig):
    for i, x in enumerate(pervin_catalog(config.max_universe)):
        yield f"space[{i}]", x


# -- lattice ----------------------------------------------------------------

@_register("lattice.birkhoff-roundtrip", "down-set frames reconstruct their poset")
def _check_birkhoff(config):
    cid = "lattice.birkhoff-roundtrip"
    rng = random.Random(config.seed)
    posets = [p for n in range(config.max_ji + 1) for p in posets_upto_iso(n)]
    posets += [rand_poset(rng, rng.randint(1, 5)) for _ in range(config.samples)]
    for i, p in enumerate(posets):
        frame = frame_from_poset(p, config.caps)
        jis = frame.ji_elements()
        rebuilt_up = []
        for a in jis:
            mask = 0
            for k, b in enumerate(jis):
                if frame.le(a, b):
                    mask |= 1 << k
            rebuilt_up.append(mask)
        from .lattice import Poset

        rebuilt = Poset(len(jis), rebuilt_up)
        ok = poset_isomorphism(p, rebuilt) is not None
        yield _verdict(cid, f"poset[{i}]", ok, {"points": p.n})


@_register("lattice.table-roundtrip", "table canonicalization is the identity up to iso")
def _check_table_roundtrip(config):
    cid = "lattice.table-roundtrip"
    for name, frame in _frames(config):
        meet = [[frame.names[frame.meet(a, b)] for b in range(frame.n)] for a in range(frame.n)]
        join = [[frame.names[frame.join(a, b)] for b in range(frame.n)] for a in range(frame.n)]
        rebuilt, renaming = frame_from_table(frame.names, meet, join, config.caps)
        ok = is_isomorphic(rebuilt, frame) and all(
            rebuilt.names[renaming[a]] == frame.names[a] for a in range(frame.n)
        )
        yield _verdict(cid, name, ok)


@_register("lattice.frame-law", "binary meets distribute over joins of families")
def _check_frame_law(config):
    cid = "lattice.frame-law"
    rng = random.Random(config.seed)
    for name, frame in _frames(config):
        ok = True
        witness = None
        families = [
            [rng.randrange(frame.n) for _ in range(rng.randint(0, 4))]
            for _ in range(8)
        ]
        families.append(list(range(frame.n)))
        families.append([])
        for a in range(frame.n):
            for fam in families:
                left = frame.meet(a, frame.join_all(fam))
                right = frame.join_all(frame.meet(a, b) for b in fam)
                if left != right:
                    ok = False
                    witness = {"a": frame.names[a], "family": [frame.names[b] for b in fam]}
                    break
            if not ok:
                break
        yield _verdict(cid, name, ok, witness)


@_register("lattice.pseudocomplement-galois", "x ^ a = 0 iff x below the pseudocomplement")
def _check_pseudo(config):
    cid = "lattice.pseudocomplement-galois"
    for name, frame in _frames(config):
        ok = all(
            (frame.meet(x, a) == frame.zero) == frame.le(x, frame.pseudocomplement(a))
            for a in range(frame.n)
            for x in range(frame.n)
        )
        yield _verdict(cid, name, ok)


@_register("lattice.compact-scan", "the cover search finds every element compact")
def _check_compact(config):
    cid = "lattice.compact-scan"
    for name, frame in _frames(config):
        kl = compact_elements(frame, caps=config.caps)
        if not kl["scanned"]:
            yield CheckReport(cid, name, "skipped", {"reason": "max_compact_scan"})
            continue
        ok = set(kl["compact"]) == set(range(frame.n))
        # join-dense sublattices give the same relative-compactness answers
        s_all = Sublattice(frame, range(frame.n))
        sk = compact_elements(frame, within=s_all.sorted_members(), caps=config.caps)
        ok = ok and (not sk["scanned"] or set(sk["compact"]) == set(kl["compact"]))
        yield _verdict(cid, name, ok)


# -- congruence ---------------------------------------------------------------

@_register("congruence.open-closed-laws", "the eight bound/meet/join laws for the principal congruences")
def _check_open_closed(config):
    cid = "congruence.open-closed-laws"
    rng = random.Random(config.seed)
    for name, frame in _frames(config):
        failures = open_closed_law_failures(frame, rng)
        yield _verdict(cid, name, not failures, {"laws": failures} if failures else None)


def open_closed_law_failures(frame, rng=None):
    """The eight identities, returned as a list of failed law labels."""
    rng = rng or random.Random(0)
    failures = []
    idc = identity_congruence(frame)
    fullc = full_congruence(frame)
    if open_congruence(frame, frame.zero) != fullc:
        failures.append("open-at-bottom")
    if open_congruence(frame, frame.one) != idc:
        failures.append("open-at-top")
    if closed_congruence(frame, frame.zero) != idc:
        failures.append("closed-at-bottom")
    if closed_congruence(frame, frame.one) != fullc:
        failures.append("closed-at-top")
    opens = [open_congruence(frame, a) for a in range(frame.n)]
    closeds = [closed_congruence(frame, a) for a in range(frame.n)]
    # both binary laws are symmetric in a and b
    pairs = [(a, b) for a in range(frame.n) for b in range(a, frame.n)]
    for a, b in pairs:
        if opens[a].join(opens[b]) != opens[frame.meet(a, b)]:
            failures.append("open-join")
            break
    for a, b in pairs:
        if closeds[a].meet(closeds[b]) != closeds[frame.meet(a, b)]:
            failures.append("closed-meet")
            break
    families = [
        [rng.randrange(frame.n) for _ in range(rng.randint(0, 3))] for _ in range(6)
    ] + [[], list(range(frame.n))]
    for fam in families:
        meet_of_open = full_congruence(frame)
        join_of_closed = identity_congruence(frame)
        for a in fam:
            meet_of_open = meet_of_open.meet(open_congruence(frame, a))
            join_of_closed = join_of_closed.join(closed_congruence(frame, a))
        top = frame.join_all(fam)
        if meet_of_open != open_congruence(frame, top):
            failures.append("open-family-meet")
            break
        if join_of_closed != closed_congruence(frame, top):
            failures.append("closed-family-join")
            break
    return failures


@_register("congruence.generated-principal", "generated congruences are joins of principal meets")
def _check_generated(config):
    cid = "congruence.generated-principal"
    rng = random.Random(config.seed)
    for name, frame in _frames(config):
        ok = True
        witness = None
        for _ in range(6):
            pairs = [
                (rng.randrange(frame.n), rng.randrange(frame.n))
                for _ in range(rng.randint(0, 3))
            ]
            direct = congruence_generated(frame, pairs)
            formula = identity_congruence(frame)
            for a, b in pairs:
                term = closed_congruence(frame, frame.join(a, b)).meet(
                    open_congruence(frame, frame.meet(a, b))
                )
                formula = formula.join(term)
            if direct != formula:
                ok = False
                witness = {"pairs": [[frame.names[a], frame.names[b]] for a, b in pairs]}
                break
            # closure-operator laws: extensive, monotone, idempotent
            if not all(direct.related(a, b) for a, b in pairs):
                ok = False
                break
            if congruence_generated(frame, direct_pairs(direct)) != direct:
                ok = False
                break
        yield _verdict(cid, name, ok, witness)


def direct_pairs(theta):
    return [
        (a, theta.key[a]) for a in range(theta.frame.n) if theta.key[a] != a
    ]


@_register("congruence.frame-methods", "fast and closure enumerations of all congruences agree")
def _check_congruence_frame(config):
    cid = "congruence.frame-methods"
    for name, frame in _frames(config):
        if frame.jir.n > 5:
            yield CheckReport(cid, name, "skipped", {"reason": "closure method cap"})
            continue
        try:
            fast = congruence_frame(frame, config.caps, method="fast")
            brute = congruence_frame(frame, config.caps, method="closure")
        except CapExceeded as exc:
            yield CheckReport(cid, name, "skipped", {"reason": str(exc)})
            continue
        ok = set(fast.congruences) == set(brute.congruences)
        ok = ok and len(fast.congruences) == (1 << frame.jir.n)
        ok = ok and all(c.is_congruence() for c in fast.congruences)
        # frame structure: meets are intersections, joins are generated closures
        st = fast.structure
        for i, ci in enumerate(fast.congruences):
            for j, cj in enumerate(fast.congruences):
                if fast.congruences[st.meet(i, j)] != ci.meet(cj):
                    ok = False
                if fast.congruences[st.join(i, j)] != ci.join(cj):
                    ok = False
        yield _verdict(cid, name, ok)


@_register("congruence.quotient-kernel", "quotients and kernels are mutually inverse")
def _check_quotient(config):
    cid = "congruence.quotient-kernel"
    rng = random.Random(config.seed)
    for name, frame in _frames(config):
        ok = True
        for _ in range(4):
            pairs = [
                (rng.randrange(frame.n), rng.randrange(frame.n))
                for _ in range(rng.randint(0, 2))
            ]
            theta = congruence_generated(frame, pairs)
            qframe, qhom = quotient(frame, theta)
            rep = hom_report(qhom)
            if not (rep["is_frame_hom"] and rep["is_surjective"]):
                ok = False
                break
            if kernel(qhom) != theta:
                ok = False
                break
        yield _verdict(cid, name, ok)


@_register("congruence.relative-generators", "both generator families give the same relative frame")
def _check_relative_generators(config):
    cid = "congruence.relative-generators"
    for name, frame in _frames(config):
        if frame.n > 8:
            yield CheckReport(cid, name, "skipped", {"reason": "size"})
            continue
        s_all = Sublattice(frame, range(frame.n))
        csl = relative_congruence_frame(frame, s_all, config.caps)
        # closure of the smaller generating family {closed_s, open_s : s in S}
        gens = set()
        for s in s_all.members:
            gens.add(closed_congruence(frame, s))
            gens.add(open_congruence(frame, s))
        closure = set(gens)
        frontier = list(closure)
        while frontier:
            c = frontier.pop()
            for d in list(closure):
                for e in (c.meet(d), c.join(d)):
                    if e not in closure:
                        closure.add(e)
                        frontier.append(e)
        ok = closure == set(csl.congruences)
        full = congruence_frame(frame, config.caps)
        ok = ok and set(csl.congruences) == set(full.congruences)
        yield _verdict(cid, name, ok)


@_register("congruence.extension", "homs with complemented images extend uniquely")
def _check_extension(config):
    cid = "congruence.extension"
    frames = list(frame_catalog(config.max_ji))
    count = 0
    for dom in frames:
        if dom.n > 8:
            continue
        subs = sublattices_of(dom)
        for cod in frames:
            if cod.n > 8:
                continue
            for h in frame_homs(dom, cod):
                for s in subs:
                    if any(cod.complement_of(h.mapping[x]) is None for x in s.members):
                        continue
                    count += 1
                    name = f"hom[{count}]"
                    ok, witness = extension_instance_ok(h, s, config.caps)
                    if not ok:
                        yield CheckReport(cid, name, "fail", witness)
    yield CheckReport(cid, f"instances[{count}]", "pass")


def extension_instance_ok(h, s, caps):
    """Extension exists, restricts correctly, and is the unique extension."""
    csl = relative_congruence_frame(h.dom, s, caps)
    try:
        ext = extend_hom(h, s, caps, csl=csl)
    except PfwError as exc:
        return False, {"error": str(exc)}
    for a in range(h.dom.n):
        if ext.mapping[csl.nabla_index(a)] != h.mapping[a]:
            return False, {"error": "restriction"}
    alternatives = [
        g
        for g in frame_homs(csl.structure, h.cod)
        if all(g.mapping[csl.nabla_index(a)] == h.mapping[a] for a in range(h.dom.n))
    ]
    if alternatives != [ext]:
        if len(alternatives) != 1 or alternatives[0] != ext:
            return False, {"error": f"{len(alternatives)} extensions"}
    return True, None


@_register("congruence.extension-pair", "the paired extension respects both congruence kinds")
def _check_extension_pair(config):
    cid = "congruence.extension-pair"
    frames = [f for f in frame_catalog(config.max_ji) if f.n <= 6]
    count = 0
    for dom in frames:
        s = Sublattice(dom, range(dom.n))
        for cod in frames:
            t = Sublattice(cod, range(cod.n))
            for h in frame_homs(dom, cod):
                count += 1
                lifted, dom_cf, cod_cf = extend_hom_pair(h, s, t, config.caps)
                ok = all(
                    lifted.mapping[dom_cf.nabla_index(a)] == cod_cf.nabla_index(h.mapping[a])
                    for a in range(dom.n)
                ) and all(
                    lifted.mapping[dom_cf.delta_index(x)] == cod_cf.delta_index(h.mapping[x])
                    for x in s.members
                )
                if not ok:
                    yield CheckReport(cid, f"hom[{count}]", "fail")
    yield CheckReport(cid, f"instances[{count}]", "pass")


@_register("congruence.frith-congruences", "lattice-part generation matches membership")
def _check_frith_congruence(config):
    cid = "congruence.frith-congruences"
    for i, f in enumerate(frith_catalog(6)):
        frame = f.frame
        if frame.jir.n > 4:
            continue
        cf = congruence_frame(frame, config.caps)
        ok = all(is_frith_congruence(f, theta) for theta in cf.congruences)
        ok = ok and is_frith_congruence(f, identity_congruence(frame))
        ok = ok and is_frith_congruence(f, full_congruence(frame))
        yield _verdict(cid, f"frith[{i}]", ok)


# -- pervin -------------------------------------------------------------------

@_register("pervin.oracle-agreement", "epi/extremal-mono/iso predicates match the categorical oracles")
def _check_pervin_oracles(config):
    cid = "pervin.oracle-agreement"
    catalog = list(pervin_catalog(config.max_universe))
    count = 0
    for x in catalog:
        for y in catalog:
            for f in pervin_maps(x, y):
                count += 1
                rep = pervin_morphism_report(f)
                if rep["is_epi"] != pervin_epi_oracle(f, catalog):
                    yield CheckReport(cid, f"map[{count}]", "fail", {"predicate": "epi"})
                    continue
                if rep["is_extremal_mono"] != is_extremal_mono_oracle(f, catalog):
                    yield CheckReport(cid, f"map[{count}]", "fail", {"predicate": "extremal-mono"})
                    continue
                if rep["is_iso"] != pervin_iso_oracle(f):
                    yield CheckReport(cid, f"map[{count}]", "fail", {"predicate": "iso"})
                    continue
                if f.is_injective() != pervin_mono_oracle(f, catalog):
                    yield CheckReport(cid, f"map[{count}]", "fail", {"predicate": "mono"})
    yield CheckReport(cid, f"maps[{count}]", "pass")


@_register("pervin.extremal-regular", "extremal monos arise as equalizers into the two-point space")
def _check_pervin_regular(config):
    cid = "pervin.extremal-regular"
    for i, x in enumerate(pervin_catalog(config.max_universe)):
        ok = True
        for mask in range(x.full_mask() + 1):
            sub, incl = subspace(x, mask)
            if not pervin_morphism_report(incl)["is_extremal_mono"]:
                ok = False
                break
            f1, f2 = extremal_mono_as_equalizer(incl)
            eq_space, _ = equalizer_space(f1, f2)
            if not pervin_isomorphic(eq_space, sub):
                ok = False
                break
        yield _verdict(cid, f"space[{i}]", ok)


@_register("pervin.symmetrize", "the Boolean closure is an idempotent coreflection")
def _check_psym(config):
    cid = "pervin.symmetrize"
    catalog = list(pervin_catalog(config.max_universe))
    sym_catalog = [z for z in catalog if symmetrize_is_identity(z)]
    for i, x in enumerate(catalog):
        sx = psym(x)
        ok = psym(sx) == sx
        counit = PervinMap(sx, x, range(x.n))
        ok = ok and counit.is_morphism()
        for z in sym_catalog:
            for f in pervin_maps(z, x):
                lifted = PervinMap(z, sx, f.mapping)
                if not lifted.is_morphism():
                    ok = False
                others = [
                    g
                    for g in pervin_maps(z, sx)
                    if counit.compose(g) == f
                ]
                if others != [lifted]:
                    ok = False
        yield _verdict(cid, f"space[{i}]", ok)


def symmetrize_is_identity(x):
    return psym(x) == x


@_register("pervin.td-equivalence", "the four point-removal conditions coincide")
def _check_td(config):
    cid = "pervin.td-equivalence"
    for i, x in enumerate(pervin_catalog(config.max_universe)):
        yield _verdict(cid, f"space[{i}]", td_report(x)["equivalent"])
    rng = random.Random(config.seed)
    for i in range(config.samples):
        x = rand_pervin(rng, 4)
        yield _verdict(cid, f"seeded[{i}]", td_report(x)["equivalent"])


@_register("pervin.theta-subset", "subset congruences are lattice-part generated and bounded correctly")
def _check_theta(config):
    cid = "pervin.theta-subset"
    from .spectrum import omega_frith

    for i, x in enumerate(pervin_catalog(config.max_universe)):
        frith, _ = omega_frith(x)
        full = x.full_mask()
        ok = subset_congruence(x, full).is_identity()
        ok = ok and subset_congruence(x, 0).is_full()
        for mask in range(full + 1):
            if not is_frith_congruence(frith, subset_congruence(x, mask)):
                ok = False
                break
        yield _verdict(cid, f"space[{i}]", ok)


# -- frith --------------------------------------------------------------------

@_register("frith.oracle-agreement", "mono/extremal-epi/regular-epi/iso match the categorical oracles")
def _check_frith_oracles(config):
    cid = "frith.oracle-agreement"
    catalog = list(frith_catalog(6))
    count = 0
    for f in catalog:
        for g in catalog:
            for h in frith_homs(f, g):
                count += 1
                rep = frith_morphism_report(h)
                if rep["is_mono"] != is_mono_oracle(h, catalog):
                    yield CheckReport(cid, f"hom[{count}]", "fail", {"predicate": "mono"})
                    continue
                if rep["is_extremal_epi"] != is_extremal_epi_oracle(h, catalog):
                    yield CheckReport(cid, f"hom[{count}]", "fail", {"predicate": "extremal-epi"})
                    continue
                if rep["is_iso"] != is_iso_oracle(h):
                    yield CheckReport(cid, f"hom[{count}]", "fail", {"predicate": "iso"})
                    continue
                if rep["is_regular_epi"] != is_regular_epi_oracle(h):
                    yield CheckReport(cid, f"hom[{count}]", "fail", {"predicate": "regular-epi"})
    yield CheckReport(cid, f"homs[{count}]", "pass")


@_register("frith.products", "binary products satisfy the universal property")
def _check_products(config):
    cid = "frith.products"
    catalog = [f for f in frith_catalog(4)]
    for i, (f, g) in enumerate(itertools.combinations_with_replacement(catalog, 2)):
        prod, p1, p2, _ = product(f, g, config.caps)
        ok = True
        for z in catalog:
            for u in frith_homs(z, f):
                for v in frith_homs(z, g):
                    mediating = [
                        w
                        for w in frith_homs(z, prod)
                        if p1.compose(w) == u and p2.compose(w) == v
                    ]
                    if len(mediating) != 1:
                        ok = False
        yield _verdict(cid, f"pair[{i}]", ok)


@_register("frith.equalizers", "equalizers are the agreement subframes")
def _check_equalizers(config):
    cid = "frith.equalizers"
    catalog = [f for f in frith_catalog(4)]
    count = 0
    for f in catalog:
        for g in catalog:
            homs = frith_homs(f, g)
            for h1 in homs:
                for h2 in homs:
                    count += 1
                    obj, incl = equalizer(h1, h2)
                    if h1.compose(incl) != h2.compose(incl):
                        yield CheckReport(cid, f"pair[{count}]", "fail")
                        continue
                    for z in catalog:
                        for u in frith_homs(z, f):
                            if h1.compose(u) != h2.compose(u):
                                continue
                            lifts = [
                                w for w in frith_homs(z, obj) if incl.compose(w) == u
                            ]
                            if len(lifts) != 1:
                                yield CheckReport(cid, f"pair[{count}]", "fail")
    yield CheckReport(cid, f"pairs[{count}]", "pass")


@_register("frith.coproducts", "binary coproducts satisfy the universal property")
def _check_coproducts(config):
    cid = "frith.coproducts"
    catalog = [f for f in frith_catalog(4)]
    for i, (f, g) in enumerate(itertools.combinations_with_replacement(catalog, 2)):
        try:
            cop, i1, i2, _, _ = coproduct(f, g, config.caps)
        except CapExceeded as exc:
            yield CheckReport(cid, f"pair[{i}]", "skipped", {"reason": str(exc)})
            continue
        ok = True
        for z in catalog:
            for u in frith_homs(f, z):
                for v in frith_homs(g, z):
                    mediating = [
                        w
                        for w in frith_homs(cop, z)
                        if w.compose(i1) == u and w.compose(i2) == v
                    ]
                    if len(mediating) != 1:
                        ok = False
        yield _verdict(cid, f"pair[{i}]", ok)


@_register("frith.coequalizers", "coequalizers are lattice-part quotients")
def _check_coequalizers(config):
    cid = "frith.coequalizers"
    catalog = [f for f in frith_catalog(4)]
    count = 0
    for f in catalog:
        for g in catalog:
            homs = frith_homs(f, g)
            for h1 in homs:
                for h2 in homs:
                    count += 1
                    q = coequalizer(h1, h2)
                    if q.compose(h1) != q.compose(h2):
                        yield CheckReport(cid, f"pair[{count}]", "fail")
                        continue
                    for z in catalog:
                        for u in frith_homs(g, z):
                            if u.compose(h1) != u.compose(h2):
                                continue
                            factored = [
                                w for w in frith_homs(q.cod, z) if w.compose(q) == u
                            ]
                            if len(factored) != 1:
                                yield CheckReport(cid, f"pair[{count}]", "fail")
    yield CheckReport(cid, f"pairs[{count}]", "pass")


@_register("frith.symmetrize", "symmetrization is a reflection and the core a coreflection")
def _check_fsym(config):
    cid = "frith.symmetrize"
    catalog = [f for f in frith_catalog(5)]
    sym_objects = [f for f in catalog if f.is_symmetric()]
    for i, f in enumerate(catalog):
        sym = symmetrize(f, config.caps)
        ok = sym["object"].is_symmetric()
        twice = symmetrize(sym["object"], config.caps)
        ok = ok and frith_isomorphic(twice["object"], sym["object"])
        for m in sym_objects:
            for h in frith_homs(f, m):
                lifted = symmetrize_reflection(h, sym, config.caps)
                if lifted.compose(sym["unit"]) != h:
                    ok = False
                others = [
                    w
                    for w in frith_homs(sym["object"], m)
                    if w.compose(sym["unit"]) == h
                ]
                if others != [lifted]:
                    ok = False
        core = boolean_core(f)
        ok = ok and core["object"].is_symmetric()
        for m in sym_objects:
            for h in frith_homs(m, f):
                lowered = boolean_core_corestrict(h, core)
                if core["counit"].compose(lowered) != h:
                    ok = False
                others = [
                    w
                    for w in frith_homs(m, core["object"])
                    if core["counit"].compose(w) == h
                ]
                if others != [lowered]:
                    ok = False
        yield _verdict(cid, f"frith[{i}]", ok)


@_register("frith.predicates", "coherence matches the compact-element characterization")
def _check_frith_predicates(config):
    cid = "frith.predicates"
    for i, f in enumerate(frith_catalog(6)):
        rep = frith_report(f, config.caps)
        ok = rep["is_coherent"]
        if rep["is_compact"] and rep["is_zero_dimensional"] and not rep["is_coherent"]:
            ok = False
        ok = ok and set(f.s.members) == set(range(f.frame.n))
        yield _verdict(cid, f"frith[{i}]", ok)


@_register("frith.proximity", "the between-member relation is an interpolating proximity")
def _check_proximity(config):
    cid = "frith.proximity"
    for i, f in enumerate(frith_catalog(6)):
        px = proximity(f)
        ok = (
            px["interpolates"]
            and px["diagonal_is_lattice_part"]
            and px["below_order"]
            and px["meet_join_compatible"]
        )
        fr = f.frame
        ok = ok and px["relation"] == {
            (a, b) for a in range(fr.n) for b in range(fr.n) if fr.le(a, b)
        }
        yield _verdict(cid, f"frith[{i}]", ok)


@_register("frith.idl", "the ideal-completion functor lands in coherent objects")
def _check_idl(config):
    cid = "frith.idl"
    for i, frame in enumerate(small_frame_catalog(6)):
        out = ideal_frith(frame, config.caps)
        ok = frith_report(out["object"], config.caps)["is_coherent"]
        ok = ok and is_isomorphic(out["object"].frame, frame)
        yield _verdict(cid, f"lattice[{i}]", ok)


# -- entourage ----------------------------------------------------------------

@_register("entourage.saturation", "generation is a closure operator and the basic laws hold")
def _check_saturation(config):
    cid = "entourage.saturation"
    rng = random.Random(config.seed)
    for name, frame in _frames(config):
        if frame.n > 16:
            yield CheckReport(cid, name, "skipped", {"reason": "size"})
            continue
        ok = True
        for _ in range(4):
            seed = [
                (rng.randrange(frame.n), rng.randrange(frame.n))
                for _ in range(rng.randint(0, 4))
            ]
            e = cideal_generated(frame, frame, seed)
            if not e.is_cideal():
                ok = False
                break
            if not all(e.contains(a, b) for a, b in seed):
                ok = False
                break
            if cideal_generated(frame, frame, list(e.pairs())) != e:
                ok = False
                break
            bigger = seed + [(rng.randrange(frame.n), rng.randrange(frame.n))]
            if not e.subset(cideal_generated(frame, frame, bigger)):
                ok = False
                break
        for a in range(frame.n):
            for b in range(frame.n):
                direct = oplus(frame, frame, a, b)
                if direct != cideal_generated(frame, frame, [(a, b)]):
                    ok = False
        yield _verdict(cid, name, ok)


@_register("entourage.composition", "entourages sit inside their squares; transitivity is idempotence")
def _check_composition(config):
    cid = "entourage.composition"
    for i, frame in enumerate(small_frame_catalog(5)):
        ok = True
        compl = frame.complemented_elements()
        ents = [pervin_entourage(frame, r) for r in compl]
        for e in ents:
            rep = entourage_report(e)
            if rep["is_entourage"] and not rep["contained_in_square"]:
                ok = False
            if rep["is_transitive"] != (compose(e, e) == e):
                ok = False
        for e1 in ents:
            for e2 in ents:
                both = e1.intersect(e2)
                rep = entourage_report(both)
                if not (rep["is_transitive"] and rep["is_finite"]):
                    ok = False
        yield _verdict(cid, f"frame[{i}]", ok)


@_register("entourage.pervin-basic", "the basic entourage obeys its membership and inverse laws")
def _check_pervin_basic(config):
    cid = "entourage.pervin-basic"
    for name, frame in _frames(config):
        if frame.n > 16:
            yield CheckReport(cid, name, "skipped", {"reason": "size"})
            continue
        ok = True
        for r in range(frame.n):
            e = pervin_entourage(frame, r)
            star = frame.pseudocomplement(r)
            formula = oplus(frame, frame, r, frame.one).join(
                oplus(frame, frame, frame.one, star)
            )
            if e != formula:
                ok = False
            if entourage_report(e)["is_entourage"] != (frame.complement_of(r) is not None):
                ok = False
            if frame.complement_of(r) is not None:
                if compose(e, e) != e:
                    ok = False
                if e.inverse() != pervin_entourage(frame, star):
                    ok = False
        yield _verdict(cid, name, ok)


@_register("entourage.parts-theorem", "the witness subframes recover the generated sublattices")
def _check_parts(config):
    cid = "entourage.parts-theorem"
    rng = random.Random(config.seed)
    for i in range(max(4, config.samples // 2)):
        frame, sub, q = rand_quni(rng, config.caps)
        ub = q.uniformly_below_report()
        expected1 = subframe_generated(frame, sub.members)
        stars = {frame.pseudocomplement(r) for r in sub.members}
        expected2 = subframe_generated(frame, stars)
        ok = set(ub["part1"]) == expected1.members
        ok = ok and set(ub["part2"]) == expected2.members
        ok = ok and ub["part1_subframe"] and ub["part2_subframe"]
        full_ub = uniformly_below(frame, list(q.basis))
        ok = ok and full_ub["rel1"] == ub["rel1"] and full_ub["rel2"] == ub["rel2"]
        rep = q.qu_report()
        generated = subframe_generated(frame, set(sub.members) | stars)
        if len(generated.members) == frame.n:
            ok = ok and rep["qu1"] and rep["qu2"] and rep["qu3"]
        yield _verdict(cid, f"instance[{i}]", ok)


@_register("entourage.recovery", "the recovered sublattice regenerates the filter")
def _check_recovery(config):
    cid = "entourage.recovery"
    rng = random.Random(config.seed)
    for i in range(max(4, config.samples // 2)):
        frame, sub, q = rand_quni(rng, config.caps)
        rec = recover_sublattice(q, config.caps)
        expected = sublattice_generated(frame, sub.members)
        ok = rec["sublattice"].members == expected.members
        ok = ok and all(w["reproduced"] for w in rec["witnesses"])
        q2 = filter_from_sublattice(frame, rec["sublattice"].members)
        ok = ok and q2.filter_eq(q)
        yield _verdict(cid, f"instance[{i}]", ok)


@_register("entourage.image-filter", "images of basic entourages obey the comparison laws")
def _check_image_filter(config):
    cid = "entourage.image-filter"
    frames = [f for f in small_frame_catalog(5)]
    count = 0
    for dom in frames:
        for cod in frames:
            for h in frame_homs(dom, cod):
                count += 1
                ok = True
                for r in range(dom.n):
                    img = image_cideal(h, pervin_entourage(dom, r))
                    target = pervin_entourage(cod, h.mapping[r])
                    if not img.subset(target):
                        ok = False
                    if dom.complement_of(r) is not None and img != target:
                        ok = False
                if not ok:
                    yield CheckReport(cid, f"hom[{count}]", "fail")
    yield CheckReport(cid, f"homs[{count}]", "pass")


@_register("entourage.embedding", "the canonical filter functor sends morphisms to filter maps")
def _check_embedding(config):
    cid = "entourage.embedding"
    catalog = [f for f in frith_catalog(4)]
    count = 0
    for f in catalog:
        _, qf = frith_quasi_uniformity(f.frame, f.s, config.caps)
        for g in catalog:
            _, qg = frith_quasi_uniformity(g.frame, g.s, config.caps)
            for h in frith_homs(f, g):
                count += 1
                lifted, _, _ = extend_hom_pair(h.hom, f.s, g.s, config.caps)
                if not is_quasi_uniform_hom(lifted, qf, qg):
                    yield CheckReport(cid, f"hom[{count}]", "fail")
    yield CheckReport(cid, f"homs[{count}]", "pass")


@_register("entourage.coreflection", "the recovered object is universal for filter maps")
def _check_coreflection(config):
    cid = "entourage.coreflection"
    rng = random.Random(config.seed)
    small = [f for f in frith_catalog(3)]
    for i in range(max(3, config.samples // 3)):
        frame, sub, q = rand_quni(rng, config.caps)
        cor = frith_coreflection(q, config.caps)
        ok = cor["dense"] and cor["surjective"] and cor["filter_generated"]
        lattice = cor["lattice"]
        target = FrithFrame(lattice, cor["sublattice"])
        for m in small:
            csl_m, q_m = frith_quasi_uniformity(m.frame, m.s, config.caps)
            quni_homs = [
                g
                for g in frame_homs(csl_m.structure, frame)
                if is_quasi_uniform_hom(g, q_m, q)
            ]
            mediated = set()
            for w in frith_homs(m, target):
                lifted, _, _ = extend_hom_pair(w.hom, m.s, target.s, config.caps)
                composite = cor["gamma"].compose(lifted)
                mediated.add(composite)
                if not is_quasi_uniform_hom(composite, q_m, q):
                    ok = False
            if len(mediated) != len(frith_homs(m, target)) or mediated != set(quni_homs):
                ok = False
        yield _verdict(cid, f"instance[{i}]", ok)


@_register("entourage.uniformity", "uniformities are exactly the Boolean-recovered filters")
def _check_uniformity(config):
    cid = "entourage.uniformity"
    rng = random.Random(config.seed)
    for i in range(max(4, config.samples // 2)):
        frame, sub, q = rand_quni(rng, config.caps)
        rec = recover_sublattice(q, config.caps)
        ok = q.is_uniformity() == rec["sublattice"].is_boolean()
        refl = uniform_reflection(q)
        ok = ok and refl.qu_report()["qu4"]
        zero_dim = all(
            frame.join_all(
                c for c in frame.complemented_elements() if frame.le(c, a)
            ) == a
            for a in range(frame.n)
        )
        ok = ok and zero_dim
        yield _verdict(cid, f"instance[{i}]", ok)


@_register("entourage.reflection-square", "symmetrizing the filter matches the filter of the symmetrization")
def _check_reflection_square(config):
    cid = "entourage.reflection-square"
    for i, f in enumerate(frith_catalog(4)):
        csl, q = frith_quasi_uniformity(f.frame, f.s, config.caps)
        sym = symmetrize(f, config.caps)
        # the symmetrization lives on the same congruence frame, so its
        # canonical filter is the one its Boolean part generates there
        ok = sym["object"].frame == csl.structure
        q_sym = filter_from_sublattice(csl.structure, sym["object"].s.members)
        refl = uniform_reflection(q)
        ok = ok and refl.filter_eq(q_sym)
        yield _verdict(cid, f"frith[{i}]", ok)


# -- spectrum -----------------------------------------------------------------

@_register("spectrum.hat", "basic opens respect meets and joins")
def _check_hat(config):
    cid = "spectrum.hat"
    for name, frame in _frames(config):
        pts = points(frame)
        ok = all(
            hat(frame, frame.meet(a, b), pts) == (hat(frame, a, pts) & hat(frame, b, pts))
            and hat(frame, frame.join(a, b), pts) == (hat(frame, a, pts) | hat(frame, b, pts))
            for a in range(frame.n)
            for b in range(frame.n)
        )
        ok = ok and len(pts) == frame.jir.n
        yield _verdict(cid, name, ok)


@_register("spectrum.adjunction", "hom-sets biject and finite frames are spatial")
def _check_adjunction(config):
    cid = "spectrum.adjunction"
    spaces = list(pervin_catalog(config.max_universe))
    friths = [f for f in frith_catalog(4)]
    count = 0
    for x in spaces:
        for f in friths:
            count += 1
            rep = adjunction_report(x, f)
            if not (rep["bijection"] and rep["is_spatial"]):
                yield CheckReport(cid, f"pair[{count}]", "fail", rep_witness(rep))
    yield CheckReport(cid, f"pairs[{count}]", "pass")


def rep_witness(rep):
    return {k: v for k, v in rep.items() if isinstance(v, (bool, int, str))}


@_register("spectrum.sober-fixpoints", "soberness matches the unit being an isomorphism")
def _check_sober(config):
    cid = "spectrum.sober-fixpoints"
    from .spectrum import unit
    from .pervin import morphism_report as pmr

    for i, x in enumerate(pervin_catalog(config.max_universe)):
        eta, _ = unit(x)
        rep = pmr(eta)
        ok = rep["is_iso"] == _sober_oracle(x)
        yield _verdict(cid, f"space[{i}]", ok)


def _sober_oracle(x):
    """Every irreducible closed set is the closure of exactly one point."""
    full = x.full_mask()
    closed = [full & ~m for m in x.sets]

    def closure(point):
        out = full
        for c in closed:
            if (c >> point) & 1:
                out &= c
        return out

    point_closures = [closure(p) for p in range(x.n)]
    for c in closed:
        if c == 0:
            continue
        irreducible = True
        for c1 in closed:
            for c2 in closed:
                if (c & ~(c1 | c2)) == 0 and (c & ~c1) != 0 and (c & ~c2) != 0:
                    irreducible = False
        if irreducible:
            generic = [p for p in range(x.n) if point_closures[p] == c]
            if len(generic) != 1:
                return False
    return True


@_register("spectrum.alpha", "symmetrized spectra agree with spectra of symmetrizations")
def _check_alpha(config):
    cid = "spectrum.alpha"
    catalog = [f for f in frith_catalog(4)]
    for i, f in enumerate(catalog):
        rep = alpha_report(f, config.caps)
        ok = rep["is_iso"] and rep["hat_forward"] and rep["hat_complement"]
        yield _verdict(cid, f"frith[{i}]", ok)
    count = 0
    for f in catalog:
        for g in catalog:
            for h in frith_homs(f, g):
                count += 1
                if not alpha_natural_square(h, config.caps):
                    yield CheckReport(cid, f"square[{count}]", "fail")
    yield CheckReport(cid, f"squares[{count}]", "pass")


# -- completion ---------------------------------------------------------------

@_register("completion.map", "the completion map is a dense split surjection")
def _check_completion_map(config):
    cid = "completion.map"
    for i, f in enumerate(frith_catalog(6)):
        comp = completion_map(f, config.caps)
        ok = (
            comp["is_dense"]
            and comp["is_extremal_epi"]
            and comp["galois"]
            and comp["right_inverse"]
            and comp["idl"]["is_principal_iso"]
        )
        yield _verdict(cid, f"frith[{i}]", ok)


@_register("completion.idl-reflector", "lattice maps extend uniquely over ideal completions")
def _check_idl_reflector(config):
    cid = "completion.idl-reflector"
    frames = [f for f in small_frame_catalog(5)]
    count = 0
    for base in frames:
        idl = ideal_lattice(base, config.caps)
        for cod in frames:
            lattice_maps = frame_homs(base, cod)
            extended = set()
            for h in lattice_maps:
                count += 1
                ext = extend_lattice_hom(h, idl)
                extended.add(ext)
                if any(
                    ext.mapping[idl["principal"][a]] != h.mapping[a]
                    for a in range(base.n)
                ):
                    yield CheckReport(cid, f"hom[{count}]", "fail")
            if len(extended) != len(lattice_maps) or len(
                frame_homs(idl["frame"], cod)
            ) != len(lattice_maps):
                yield CheckReport(cid, f"pair[{count}]", "fail")
    yield CheckReport(cid, f"homs[{count}]", "pass")


@_register("completion.cauchy", "Cauchy maps are frame maps and factor through the canonical one")
def _check_cauchy(config):
    cid = "completion.cauchy"
    friths = [f for f in frith_catalog(config.caps.max_enum)]
    codomains = [f.frame for f in friths]
    count = 0
    for f in friths:
        can = canonical_cauchy_map(f, config.caps)
        if not can["report"]["is_cauchy"]:
            yield CheckReport(cid, "canonical", "fail")
        for cod in codomains:
            for phi in enumerate_cauchy(f, cod, config.caps):
                count += 1
                if not phi.is_frame_hom():
                    yield CheckReport(cid, f"cauchy[{count}]", "fail", {"reason": "not a frame hom"})
                    continue
                fc = factor_cauchy(phi, config.caps)
                if not (fc["commutes"] and fc["generators_ok"]):
                    yield CheckReport(cid, f"cauchy[{count}]", "fail", {"reason": "factorization"})
    yield CheckReport(cid, f"maps[{count}]", "pass")


@_register("completion.characterization", "the four completeness conditions coincide")
def _check_characterization(config):
    cid = "completion.characterization"
    catalog = [f for f in frith_catalog(config.caps.max_enum)]
    codomains = [f.frame for f in catalog]
    for i, f in enumerate(catalog):
        rep = completeness_report(f, catalog, codomains, config.caps)
        ok = rep["agree"] and rep["completion_dense_extremal"] and rep["completion_right_inverse"]
        yield _verdict(cid, f"frith[{i}]", ok)


@_register("completion.uniqueness", "completions are unique up to isomorphism")
def _check_uniqueness(config):
    cid = "completion.uniqueness"
    catalog = [f for f in frith_catalog(5)]
    count = 0
    for f in catalog:
        comp = completion_map(f, config.caps)
        for m in catalog:
            for h in frith_homs(m, f):
                rep = is_completion_map(h, config.caps)
                if not rep["is_completion"]:
                    continue
                count += 1
                if not frith_isomorphic(m, comp["object"]):
                    yield CheckReport(cid, f"completion[{count}]", "fail")
    yield CheckReport(cid, f"completions[{count}]", "pass")


def run_suite(filter_str: str | None, config: CheckConfig):
    """Run every registered check whose id contains the filter substring."""
    for check in CHECKS:
        if filter_str and filter_str not in check.id:
            continue
        try:
            yield from check.runner(config)
        except CapExceeded as exc:
            yield CheckReport(check.id, "setup", "skipped", {"reason": str(exc)})


def suite_ids():
    return [c.id for c in CHECKS]

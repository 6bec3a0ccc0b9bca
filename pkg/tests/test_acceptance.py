"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every criterion runs at its stated instance counts and runtime budget with a
zero-failure tolerance.  Run with `pytest tests/test_acceptance.py -s` to see
the per-criterion lines.
"""

import random
import time

from pfw.caps import DEFAULT_CAPS
from pfw.checks import extension_instance_ok, open_closed_law_failures
from pfw.completion import (
    completeness_report,
    enumerate_cauchy,
    factor_cauchy,
)
from pfw.congruence import extend_hom_pair
from pfw.entourage import (
    QuasiUniformity,
    filter_from_sublattice,
    frith_coreflection,
    frith_quasi_uniformity,
    is_quasi_uniform_hom,
    pervin_entourage,
    recover_sublattice,
    uniform_reflection,
)
from pfw.frith import (
    FrithFrame,
    boolean_core,
    boolean_core_corestrict,
    frith_homs,
    is_extremal_epi_oracle,
    is_iso_oracle as frith_iso_oracle,
    is_mono_oracle,
    is_regular_epi_oracle,
    morphism_report as frith_morphism_report,
    symmetrize,
    symmetrize_reflection,
)
from pfw.generate import (
    frame_catalog,
    frith_catalog,
    pervin_catalog,
    rand_complemented_sublattice,
    rand_components_poset,
    rand_pervin,
    rand_poset,
    sublattices_of,
)
from pfw.lattice import (
    frame_from_poset,
    frame_homs,
    subframe_generated,
    sublattice_generated,
)
from pfw.pervin import (
    is_epi_oracle as pervin_epi_oracle,
    is_extremal_mono_oracle,
    is_iso_oracle as pervin_iso_oracle,
    is_mono_oracle as pervin_mono_oracle,
    morphism_report as pervin_morphism_report,
    pervin_maps,
    td_report,
)
from pfw.spectrum import adjunction_report, alpha_natural_square, alpha_report


def _conclude(criterion, description, failures, elapsed, budget):
    verdict = "PASS" if failures == 0 and elapsed < budget else "FAIL"
    print(
        f"{verdict} criterion-{criterion}: {description} "
        f"({failures} failures, {elapsed:.1f}s of {budget:.0f}s budget)"
    )
    assert failures == 0, f"criterion {criterion}: {failures} failures"
    assert elapsed < budget, f"criterion {criterion}: {elapsed:.1f}s over budget"


def _seeded_quni_instances(count, seed):
    """(frame, sublattice, filter) triples with complemented generators.

    The filters are built without the generation precondition so that the
    QU conditions can be evaluated honestly on both generating and
    non-generating instances.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        poset = rand_components_poset(rng, rng.randint(2, 3), 2)
        frame = frame_from_poset(poset)
        pool = len(frame.complemented_elements())
        sub = rand_complemented_sublattice(rng, frame, picks=rng.randint(1, max(2, pool)))
        gens = [pervin_entourage(frame, r) for r in sorted(sub.members)]
        out.append((frame, sub, QuasiUniformity(frame, gens, validate=False)))
    return out


def test_criterion_1_open_closed_congruence_laws():
    rng = random.Random(0)
    frames = list(frame_catalog(3)) + [
        frame_from_poset(rand_poset(rng, rng.randint(1, 5))) for _ in range(200)
    ]
    law_rng = random.Random(1)
    start = time.time()
    failures = sum(bool(open_closed_law_failures(f, law_rng)) for f in frames)
    _conclude(1, f"eight open/closed congruence laws on {len(frames)} frames",
              failures, time.time() - start, 10.0)


def test_criterion_2_extension_theorem():
    start = time.time()
    failures = instances = 0
    for dom in frame_catalog(3):
        subs = sublattices_of(dom)
        for cod in frame_catalog(3):
            for h in frame_homs(dom, cod):
                for s in subs:
                    if any(
                        cod.complement_of(h.mapping[x]) is None for x in s.members
                    ):
                        continue
                    instances += 1
                    ok, _ = extension_instance_ok(h, s, DEFAULT_CAPS)
                    failures += not ok
    _conclude(2, f"unique extension on {instances} hom/sublattice instances",
              failures, time.time() - start, 60.0)


def test_criterion_3_generated_filter_parts():
    start = time.time()
    failures = generating = 0
    instances = _seeded_quni_instances(100, seed=7)
    for frame, sub, q in instances:
        ub = q.uniformly_below_report()
        stars = {frame.pseudocomplement(r) for r in sub.members}
        if set(ub["part1"]) != subframe_generated(frame, sub.members).members:
            failures += 1
        if set(ub["part2"]) != subframe_generated(frame, stars).members:
            failures += 1
        if len(subframe_generated(frame, set(sub.members) | stars).members) == frame.n:
            generating += 1
            rep = q.qu_report()
            if not (rep["qu1"] and rep["qu2"] and rep["qu3"]):
                failures += 1
    assert generating >= 20
    _conclude(3, f"filter parts on 100 seeded instances ({generating} generating)",
              failures, time.time() - start, 120.0)


def test_criterion_4_sublattice_recovery():
    start = time.time()
    failures = 0
    instances = _seeded_quni_instances(100, seed=7)
    for frame, sub, q in instances:
        rec = recover_sublattice(q)
        if rec["sublattice"].members != sublattice_generated(frame, sub.members).members:
            failures += 1
        if not rec["witnesses"] or not all(w["reproduced"] for w in rec["witnesses"]):
            failures += 1
    _conclude(4, "sublattice recovery and partition witnesses on 100 instances",
              failures, time.time() - start, 120.0)


def test_criterion_5_categorical_oracle_agreement():
    start = time.time()
    failures = 0
    spaces = list(pervin_catalog(3))
    space_maps = 0
    for x in spaces:
        for y in spaces:
            for f in pervin_maps(x, y):
                space_maps += 1
                rep = pervin_morphism_report(f)
                if rep["is_epi"] != pervin_epi_oracle(f, spaces):
                    failures += 1
                if f.is_injective() != pervin_mono_oracle(f, spaces):
                    failures += 1
                if rep["is_extremal_mono"] != is_extremal_mono_oracle(f, spaces):
                    failures += 1
                if rep["is_iso"] != pervin_iso_oracle(f):
                    failures += 1
    friths = list(frith_catalog(6))
    frith_count = 0
    for f in friths:
        for g in friths:
            for h in frith_homs(f, g):
                frith_count += 1
                rep = frith_morphism_report(h)
                if rep["is_mono"] != is_mono_oracle(h, friths):
                    failures += 1
                if rep["is_extremal_epi"] != is_extremal_epi_oracle(h, friths):
                    failures += 1
                if rep["is_iso"] != frith_iso_oracle(h):
                    failures += 1
                if rep["is_regular_epi"] != is_regular_epi_oracle(h):
                    failures += 1
    _conclude(5, f"oracle agreement on {space_maps} space maps and {frith_count} frame maps",
              failures, time.time() - start, 600.0)


def test_criterion_6_td_equivalence():
    start = time.time()
    failures = sum(not td_report(x)["equivalent"] for x in pervin_catalog(3))
    rng = random.Random(2026)
    for _ in range(500):
        if not td_report(rand_pervin(rng, 4))["equivalent"]:
            failures += 1
    _conclude(6, "four-way point-removal equivalence on catalog and 500 seeded spaces",
              failures, time.time() - start, 600.0)


def test_criterion_7_symmetrization_coherence():
    start = time.time()
    failures = 0
    catalog = list(frith_catalog(6))
    sym_objects = [f for f in catalog if f.is_symmetric()]
    for f in catalog:
        sym = symmetrize(f)
        if not sym["object"].is_symmetric():
            failures += 1
        csl, q = frith_quasi_uniformity(f.frame, f.s)
        if sym["object"].frame != csl.structure:
            failures += 1
        q_sym = filter_from_sublattice(csl.structure, sym["object"].s.members)
        if not uniform_reflection(q).filter_eq(q_sym):
            failures += 1
        rep = alpha_report(f)
        if not (rep["is_iso"] and rep["hat_forward"] and rep["hat_complement"]):
            failures += 1
        core = boolean_core(f)
        for m in sym_objects:
            for h in frith_homs(f, m):
                lifted = symmetrize_reflection(h, sym)
                others = [
                    w for w in frith_homs(sym["object"], m)
                    if w.compose(sym["unit"]) == h
                ]
                if others != [lifted]:
                    failures += 1
            for h in frith_homs(m, f):
                lowered = boolean_core_corestrict(h, core)
                others = [
                    w for w in frith_homs(m, core["object"])
                    if core["counit"].compose(w) == h
                ]
                if others != [lowered]:
                    failures += 1
    squares = 0
    for f in catalog:
        for g in catalog:
            for h in frith_homs(f, g):
                squares += 1
                if not alpha_natural_square(h):
                    failures += 1
    _conclude(7, f"symmetrization laws with {squares} naturality squares",
              failures, time.time() - start, 600.0)


def test_criterion_8_completion_suite():
    start = time.time()
    failures = cauchy_count = 0
    catalog = list(frith_catalog(6))
    codomains = [f.frame for f in catalog]
    for f in catalog:
        rep = completeness_report(f, catalog, codomains)
        if not (
            rep["agree"]
            and rep["completion_dense_extremal"]
            and rep["completion_right_inverse"]
        ):
            failures += 1
        for cod in codomains:
            for phi in enumerate_cauchy(f, cod):
                cauchy_count += 1
                if not phi.is_frame_hom():
                    failures += 1
                    continue
                out = factor_cauchy(phi)
                if not (out["commutes"] and out["generators_ok"]):
                    failures += 1
    _conclude(8, f"completion characterization with {cauchy_count} Cauchy maps",
              failures, time.time() - start, 600.0)


def test_criterion_9_adjunction_hom_bijection():
    start = time.time()
    failures = pairs = 0
    for x in pervin_catalog(3):
        for f in frith_catalog(6):
            pairs += 1
            rep = adjunction_report(x, f)
            if not (rep["bijection"] and rep["is_spatial"]):
                failures += 1
    _conclude(9, f"hom-set bijection and spatiality on {pairs} pairs",
              failures, time.time() - start, 600.0)


def test_criterion_10_coreflection_universal_property():
    start = time.time()
    failures = 0
    rng = random.Random(42)
    small = list(frith_catalog(3))
    instances = attempts = 0
    while instances < 20 and attempts < 400:
        attempts += 1
        poset = rand_components_poset(rng, rng.randint(2, 3), 2)
        frame = frame_from_poset(poset)
        pool = len(frame.complemented_elements())
        sub = rand_complemented_sublattice(rng, frame, picks=rng.randint(1, max(2, pool)))
        try:
            q = QuasiUniformity(
                frame, [pervin_entourage(frame, r) for r in sorted(sub.members)]
            )
        except Exception:
            continue
        instances += 1
        cor = frith_coreflection(q)
        if not (cor["dense"] and cor["surjective"] and cor["filter_generated"]):
            failures += 1
        target = FrithFrame(cor["lattice"], cor["sublattice"])
        for m in small:
            csl_m, q_m = frith_quasi_uniformity(m.frame, m.s)
            quni_homs = {
                g
                for g in frame_homs(csl_m.structure, frame)
                if is_quasi_uniform_hom(g, q_m, q)
            }
            mediated = set()
            for w in frith_homs(m, target):
                lifted, _, _ = extend_hom_pair(w.hom, m.s, target.s)
                mediated.add(cor["gamma"].compose(lifted))
            if mediated != quni_homs or len(mediated) != len(frith_homs(m, target)):
                failures += 1
    assert instances >= 20
    _conclude(10, f"coreflection hom bijection on {instances} seeded filters",
              failures, time.time() - start, 600.0)

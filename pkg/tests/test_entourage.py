import random

import pytest
from hypothesis import given, settings, strategies as st

from pfw.entourage import (
    QuasiUniformity,
    bottom_cideal,
    cideal_generated,
    compose,
    entourage_report,
    filter_from_sublattice,
    frith_coreflection,
    frith_quasi_uniformity,
    image_cideal,
    image_filter_comparisons,
    is_quasi_uniform_hom,
    oplus,
    pervin_entourage,
    recover_sublattice,
    top_cideal,
    uniform_reflection,
    uniformly_below,
)
from pfw.errors import PreconditionError
from pfw.frith import frith_homs
from pfw.generate import rand_quni
from pfw.lattice import FrameHom, Sublattice, frame_from_poset, frame_homs, is_isomorphic, subframe_generated
from tests.test_lattice import posets


def all_cideals(frame):
    """Join closure of the principal C-ideals: every C-ideal of the frame."""
    out = {oplus(frame, frame, a, b) for a in range(frame.n) for b in range(frame.n)}
    frontier = list(out)
    while frontier:
        c = frontier.pop()
        for d in list(out):
            j = c.join(d)
            if j not in out:
                out.add(j)
                frontier.append(j)
    return out


class TestCIdealGeneration:
    def test_bottom_and_top(self, D4):
        bot = bottom_cideal(D4)
        assert bot.pairs() is not None
        assert set(bot.pairs()) == {(a, D4.zero) for a in range(D4.n)} | {
            (D4.zero, b) for b in range(D4.n)
        }
        top = top_cideal(D4)
        assert set(top.pairs()) == {(a, b) for a in range(D4.n) for b in range(D4.n)}

    def test_oplus_formula(self, D4):
        a, b = D4.name_index("a"), D4.name_index("b")
        e = oplus(D4, D4, a, b)
        for x in range(D4.n):
            for y in range(D4.n):
                expected = (
                    (D4.le(x, a) and D4.le(y, b))
                    or x == D4.zero
                    or y == D4.zero
                )
                assert e.contains(x, y) == expected

    @settings(max_examples=30, deadline=None)
    @given(posets(max_points=3), st.data())
    def test_generation_is_minimal(self, p, data):
        frame = frame_from_poset(p)
        seed = data.draw(
            st.lists(
                st.tuples(st.integers(0, frame.n - 1), st.integers(0, frame.n - 1)),
                max_size=3,
            )
        )
        e = cideal_generated(frame, frame, seed)
        assert e.is_cideal()
        for c in all_cideals(frame):
            if all(c.contains(a, b) for a, b in seed):
                assert e.subset(c)


class TestComposition:
    def test_compose_with_bottom(self, D4):
        e = pervin_entourage(D4, D4.name_index("a"))
        assert compose(e, bottom_cideal(D4)) == bottom_cideal(D4)

    def test_basic_entourage_idempotent(self, D4, B3):
        for frame in (D4, B3):
            for r in frame.complemented_elements():
                e = pervin_entourage(frame, r)
                assert compose(e, e) == e

    def test_square_of_atom_square(self, D4):
        a = D4.name_index("a")
        sq = oplus(D4, D4, a, a)
        assert compose(sq, sq) == sq

    def test_entourage_below_its_square(self, D4, B3):
        for frame in (D4, B3):
            for r in frame.complemented_elements():
                e = pervin_entourage(frame, r)
                assert e.subset(compose(e, e))


class TestEntouragePredicates:
    def test_top_is_everything(self, D4):
        report = entourage_report(top_cideal(D4))
        assert report["is_entourage"] and report["is_transitive"]
        assert report["is_finite"] and report["is_symmetric"]

    def test_basic_entourage_on_diamond(self, D4):
        a, b = D4.name_index("a"), D4.name_index("b")
        report = entourage_report(pervin_entourage(D4, a))
        assert report["is_entourage"] and report["is_transitive"] and report["is_finite"]
        assert not report["is_symmetric"]
        assert pervin_entourage(D4, a).inverse() == pervin_entourage(D4, b)

    def test_atom_square_not_entourage(self, D4):
        a = D4.name_index("a")
        assert not entourage_report(oplus(D4, D4, a, a))["is_entourage"]

    def test_uncomplemented_not_entourage(self, C3):
        assert not entourage_report(pervin_entourage(C3, 1))["is_entourage"]

    def test_bounds_give_top(self, C3, D4):
        for frame in (C3, D4):
            assert pervin_entourage(frame, frame.zero) == top_cideal(frame)
            assert pervin_entourage(frame, frame.one) == top_cideal(frame)

    def test_membership_law(self, D4):
        a = D4.name_index("a")
        e = pervin_entourage(D4, a)
        star = D4.pseudocomplement(a)
        for x in range(D4.n):
            for y in range(D4.n):
                assert e.contains(x, y) == (D4.le(x, a) or D4.le(y, star))

    def test_union_formula_matches_saturated_join(self, C3, D4, B3):
        for frame in (C3, D4, B3):
            for r in range(frame.n):
                star = frame.pseudocomplement(r)
                formula = oplus(frame, frame, r, frame.one).join(
                    oplus(frame, frame, frame.one, star)
                )
                assert pervin_entourage(frame, r) == formula


class TestWitnessRelations:
    def test_top_basis(self, D4):
        report = uniformly_below(D4, [top_cideal(D4)])
        assert set(report["part1"]) == {D4.zero, D4.one}
        assert (D4.zero, D4.zero) in report["rel1"]

    def test_single_atom_basis(self, D4):
        a, b = D4.name_index("a"), D4.name_index("b")
        report = uniformly_below(D4, [pervin_entourage(D4, a)])
        assert set(report["part1"]) == {D4.zero, a, D4.one}
        assert set(report["part2"]) == {D4.zero, b, D4.one}
        assert report["part1_subframe"] and report["part2_subframe"]

    def test_zero_always_present(self, C3, D4):
        for frame in (C3, D4):
            report = uniformly_below(frame, [top_cideal(frame)])
            assert frame.zero in report["part1"]
            assert frame.zero in report["part2"]


class TestQuasiUniformity:
    def test_single_atom_filter(self, D4):
        a = D4.name_index("a")
        q = filter_from_sublattice(D4, [a])
        report = q.qu_report()
        assert report["qu1"] and report["qu2"] and report["qu3"]
        assert report["transitive"] and report["totally_bounded"]
        assert not q.is_uniformity()

    def test_boolean_filter_is_uniformity(self, D4):
        a, b = D4.name_index("a"), D4.name_index("b")
        q = filter_from_sublattice(D4, [a, b])
        assert q.is_uniformity()

    def test_trivial_filter_on_two(self, TWO):
        q = filter_from_sublattice(TWO, [TWO.one])
        assert len(q.basis) == 1
        assert q.is_uniformity()

    def test_rejects_uncomplemented(self, C3):
        with pytest.raises(PreconditionError):
            filter_from_sublattice(C3, [1])

    def test_generation_condition_enforced(self, D4, B3):
        # a filter that cannot generate its frame is rejected
        atom = B3.index_of_mask(1)
        with pytest.raises(PreconditionError):
            QuasiUniformity(B3, [pervin_entourage(B3, B3.zero)])


class TestImageFilter:
    def test_identity_image(self, D4):
        a = D4.name_index("a")
        q = filter_from_sublattice(D4, [a])
        h = FrameHom.identity(D4)
        comp = image_filter_comparisons(h, q, q)
        assert comp["image_inside_target"] and comp["target_inside_image_filter"]

    def test_image_of_basic_entourage(self, D4, TWO):
        a, b = D4.name_index("a"), D4.name_index("b")
        h = FrameHom(D4, TWO, (0, 1, 0, 1))
        img = image_cideal(h, pervin_entourage(D4, a))
        assert img == pervin_entourage(TWO, TWO.one)

    def test_equality_for_complemented(self, D4, B3):
        for dom in (D4, B3):
            for cod in (D4, B3):
                for h in frame_homs(dom, cod):
                    for r in dom.complemented_elements():
                        img = image_cideal(h, pervin_entourage(dom, r))
                        assert img == pervin_entourage(cod, h.mapping[r])

    def test_containment_always(self, C3, D4):
        for h in frame_homs(C3, D4):
            for r in range(C3.n):
                img = image_cideal(h, pervin_entourage(C3, r))
                assert img.subset(pervin_entourage(D4, h.mapping[r]))


class TestFilterComparisons:
    def test_image_containment_matches_member_mapping(self, D4, B3):
        # the two directions of the filter-comparison law for complemented
        # sublattices: images land in the target filter exactly when the
        # generators map into the target sublattice, and conversely
        for dom in (D4, B3):
            for cod in (D4, B3):
                dom_subs = [
                    Sublattice(dom, set(m))
                    for m in [
                        {dom.zero, dom.one},
                        set(dom.complemented_elements()),
                    ]
                ]
                cod_subs = [
                    Sublattice(cod, set(m))
                    for m in [
                        {cod.zero, cod.one},
                        set(cod.complemented_elements()),
                    ]
                ]
                for h in frame_homs(dom, cod):
                    for r_sub in dom_subs:
                        q_r = filter_from_sublattice(dom, r_sub.members, validate=False)
                        for u_sub in cod_subs:
                            q_u = filter_from_sublattice(cod, u_sub.members, validate=False)
                            comp = image_filter_comparisons(h, q_r, q_u)
                            maps_in = all(
                                h.mapping[r] in u_sub.members for r in r_sub.members
                            )
                            covers = all(
                                u in {h.mapping[r] for r in r_sub.members}
                                for u in u_sub.members
                            )
                            assert comp["image_inside_target"] == maps_in
                            assert comp["target_inside_image_filter"] == covers


class TestRecovery:
    def test_diamond_single_atom(self, D4):
        a = D4.name_index("a")
        q = filter_from_sublattice(D4, [a])
        rec = recover_sublattice(q)
        assert rec["sublattice"].members == {D4.zero, a, D4.one}
        assert all(w["reproduced"] for w in rec["witnesses"])

    def test_trivial_filter(self, TWO):
        q = filter_from_sublattice(TWO, [])
        rec = recover_sublattice(q)
        assert rec["sublattice"].members == {TWO.zero, TWO.one}

    def test_boolean_all_atoms(self, B3):
        atoms = [B3.index_of_mask(m) for m in (1, 2, 4)]
        q = filter_from_sublattice(B3, atoms)
        rec = recover_sublattice(q)
        assert rec["sublattice"].members == set(range(B3.n))

    def test_seeded_roundtrip(self):
        rng = random.Random(5)
        for _ in range(5):
            frame, sub, q = rand_quni(rng)
            rec = recover_sublattice(q)
            assert rec["sublattice"].members == sub.members
            assert filter_from_sublattice(frame, rec["sublattice"].members).filter_eq(q)


class TestFrithFilterFunctor:
    def test_two_gives_trivial(self, F_TWO):
        csl, q = frith_quasi_uniformity(F_TWO.frame, F_TWO.s)
        assert csl.structure.n == 2
        assert len(q.basis) == 1

    def test_chain_gives_diamond_filter(self, F_C3, D4):
        csl, q = frith_quasi_uniformity(F_C3.frame, F_C3.s)
        assert is_isomorphic(csl.structure, D4)
        ub = q.uniformly_below_report()
        part1 = subframe_generated(
            csl.structure, {csl.nabla_index(a) for a in range(F_C3.frame.n)}
        )
        assert set(ub["part1"]) == part1.members
        assert len(part1.members) == F_C3.frame.n

    def test_morphisms_are_filter_maps(self, F_C3, F_D4):
        from pfw.congruence import extend_hom_pair

        _, q_dom = frith_quasi_uniformity(F_C3.frame, F_C3.s)
        _, q_cod = frith_quasi_uniformity(F_D4.frame, F_D4.s)
        for h in frith_homs(F_C3, F_D4):
            lifted, _, _ = extend_hom_pair(h.hom, F_C3.s, F_D4.s)
            assert is_quasi_uniform_hom(lifted, q_dom, q_cod)


class TestCoreflection:
    def test_diamond_atom_gives_iso(self, D4):
        a = D4.name_index("a")
        q = filter_from_sublattice(D4, [a])
        cor = frith_coreflection(q)
        assert cor["is_iso"] and cor["dense"] and cor["surjective"]
        assert cor["filter_generated"]
        assert cor["lattice"].n == 3

    def test_trivial_filter_coreflection(self, TWO):
        q = filter_from_sublattice(TWO, [])
        cor = frith_coreflection(q)
        assert cor["is_iso"]

    def test_boolean_pair(self, D4):
        a, b = D4.name_index("a"), D4.name_index("b")
        q = filter_from_sublattice(D4, [a, b])
        cor = frith_coreflection(q)
        assert cor["is_iso"]


class TestUniformReflection:
    def test_already_uniform_fixed(self, D4):
        a, b = D4.name_index("a"), D4.name_index("b")
        q = filter_from_sublattice(D4, [a, b])
        assert uniform_reflection(q).filter_eq(q)

    def test_reflection_of_atom_filter(self, D4):
        a, b = D4.name_index("a"), D4.name_index("b")
        q = filter_from_sublattice(D4, [a])
        refl = uniform_reflection(q)
        assert refl.filter_eq(filter_from_sublattice(D4, [a, b]))

    def test_uniformity_iff_boolean_recovered(self):
        rng = random.Random(11)
        for _ in range(5):
            _, _, q = rand_quni(rng)
            rec = recover_sublattice(q)
            assert q.is_uniformity() == rec["sublattice"].is_boolean()

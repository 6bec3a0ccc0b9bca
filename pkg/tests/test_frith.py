import pytest

from pfw.errors import NotALattice
from pfw.frith import (
    FrithFrame,
    FrithHom,
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
    morphism_report,
    product,
    proximity,
    symmetrize,
    symmetrize_reflection,
)
from pfw.generate import frith_catalog
from pfw.lattice import FrameHom, Sublattice, is_isomorphic


class TestObjects:
    def test_join_density_required(self, D4):
        a = D4.name_index("a")
        with pytest.raises(NotALattice):
            FrithFrame(D4, Sublattice(D4, {D4.zero, a, D4.one}))

    def test_finiteness_forces_whole_part(self):
        for f in frith_catalog(6):
            assert set(f.s.members) == set(range(f.frame.n))

    def test_symmetry(self, F_TWO, F_C3, F_D4):
        assert F_TWO.is_symmetric()
        assert not F_C3.is_symmetric()
        assert F_D4.is_symmetric()


class TestMorphismPredicates:
    def test_identity_iso(self, F_D4):
        assert morphism_report(FrithHom.identity(F_D4))["is_iso"]

    def test_collapse_is_extremal_and_regular(self, F_C3, F_TWO):
        h = FrithHom(F_C3, F_TWO, FrameHom(F_C3.frame, F_TWO.frame, (0, 1, 1)))
        report = morphism_report(h)
        assert report["is_extremal_epi"] and report["is_regular_epi"]
        assert not report["is_mono"]

    def test_inclusion_is_mono_not_extremal(self, F_TWO, F_C3):
        h = FrithHom(F_TWO, F_C3, FrameHom(F_TWO.frame, F_C3.frame, (0, 2)))
        report = morphism_report(h)
        assert report["is_mono"]
        assert not report["is_extremal_epi"]

    def test_oracle_agreement_small(self):
        catalog = [f for f in frith_catalog(4)]
        for f in catalog:
            for g in catalog:
                for h in frith_homs(f, g):
                    report = morphism_report(h)
                    assert report["is_mono"] == is_mono_oracle(h, catalog)
                    assert report["is_extremal_epi"] == is_extremal_epi_oracle(h, catalog)
                    assert report["is_iso"] == is_iso_oracle(h)
                    assert report["is_regular_epi"] == is_regular_epi_oracle(h)


class TestLimits:
    def test_product_of_twos_is_diamond(self, F_TWO, D4):
        prod, _, _, _ = product(F_TWO, F_TWO)
        assert is_isomorphic(prod.frame, D4)

    def test_product_with_terminal(self, F_C3):
        terminal = FrithFrame.whole(
            __import__("pfw.lattice", fromlist=["chain"]).chain(0)
        )
        prod, _, _, _ = product(F_C3, terminal)
        assert frith_isomorphic(prod, F_C3)

    def test_product_chain_two(self, F_C3, F_TWO):
        prod, _, _, _ = product(F_C3, F_TWO)
        assert prod.frame.n == 6

    def test_equalizer_of_equal_pair_is_iso(self, F_D4):
        h = FrithHom.identity(F_D4)
        obj, incl = equalizer(h, h)
        assert morphism_report(incl)["is_iso"]

    def test_equalizer_of_swapped_fates(self, F_D4, F_TWO, TWO):
        a, b = F_D4.frame.name_index("a"), F_D4.frame.name_index("b")
        homs = frith_homs(F_D4, F_TWO)
        h1 = next(h for h in homs if h.hom.mapping[a] == 1 and h.hom.mapping[b] == 0)
        h2 = next(h for h in homs if h.hom.mapping[a] == 0 and h.hom.mapping[b] == 1)
        obj, _ = equalizer(h1, h2)
        assert is_isomorphic(obj.frame, TWO)


class TestColimits:
    def test_coproduct_with_unit(self, F_C3, F_TWO, C3):
        cop, _, _, _, _ = coproduct(F_C3, F_TWO)
        assert is_isomorphic(cop.frame, C3)

    def test_coproduct_two_two(self, F_TWO, TWO):
        cop, _, _, _, _ = coproduct(F_TWO, F_TWO)
        assert is_isomorphic(cop.frame, TWO)

    def test_coproduct_chain_chain(self, F_C3):
        cop, _, _, _, _ = coproduct(F_C3, F_C3)
        assert cop.frame.n == 6

    def test_coproduct_cap(self, F_C3):
        from pfw.caps import Caps
        from pfw.errors import CapExceeded

        with pytest.raises(CapExceeded):
            coproduct(F_C3, F_C3, Caps(max_cideals=3))

    def test_coequalizer_of_equal_pair(self, F_D4):
        h = FrithHom.identity(F_D4)
        q = coequalizer(h, h)
        assert morphism_report(q)["is_iso"]

    def test_coequalizer_of_atom_picks_collapses(self, F_TWO, F_D4):
        a, b = F_D4.frame.name_index("a"), F_D4.frame.name_index("b")
        ha = FrithHom(F_TWO, F_D4, FrameHom(F_TWO.frame, F_D4.frame, (0, a)))
        hb = FrithHom(F_TWO, F_D4, FrameHom(F_TWO.frame, F_D4.frame, (0, b)))
        q = coequalizer(ha, hb)
        assert q.cod.frame.n == 1

    def test_coequalizer_universal_property(self, F_C3, F_TWO):
        homs = frith_homs(F_C3, F_TWO)
        h1, h2 = homs[0], homs[-1]
        q = coequalizer(h1, h2)
        assert q.compose(h1) == q.compose(h2)


class TestAssociativity:
    """N-ary (co)products fold through the binary ones."""

    def test_product_associative_up_to_iso(self, F_TWO, F_C3, F_D4):
        triple = (F_TWO, F_C3, F_D4)
        left, _, _, _ = product(product(triple[0], triple[1])[0], triple[2])
        right, _, _, _ = product(triple[0], product(triple[1], triple[2])[0])
        assert frith_isomorphic(left, right)

    def test_coproduct_associative_up_to_iso(self, F_TWO, F_C3):
        left, _, _, _, _ = coproduct(coproduct(F_C3, F_TWO)[0], F_C3)
        right, _, _, _, _ = coproduct(F_C3, coproduct(F_TWO, F_C3)[0])
        assert frith_isomorphic(left, right)


class TestSymmetrization:
    def test_two_is_fixed(self, F_TWO):
        sym = symmetrize(F_TWO)
        assert frith_isomorphic(sym["object"], F_TWO)

    def test_chain_becomes_diamond(self, F_C3, F_D4):
        sym = symmetrize(F_C3)
        assert frith_isomorphic(sym["object"], F_D4)

    def test_idempotent_up_to_iso(self):
        for f in frith_catalog(5):
            sym = symmetrize(f)
            again = symmetrize(sym["object"])
            assert frith_isomorphic(again["object"], sym["object"])

    def test_reflection_factorization(self, F_C3, F_D4):
        sym = symmetrize(F_C3)
        for h in frith_homs(F_C3, F_D4):
            lifted = symmetrize_reflection(h, sym)
            assert lifted.compose(sym["unit"]) == h

    def test_boolean_core_chain(self, F_C3, F_TWO):
        core = boolean_core(F_C3)
        assert frith_isomorphic(core["object"], F_TWO)

    def test_boolean_core_symmetric_fixed(self, F_D4):
        core = boolean_core(F_D4)
        assert frith_isomorphic(core["object"], F_D4)

    def test_core_corestriction(self, F_TWO, F_C3):
        core = boolean_core(F_C3)
        for h in frith_homs(F_TWO, F_C3):
            lowered = boolean_core_corestrict(h, core)
            assert core["counit"].compose(lowered) == h


class TestPredicatesAndProximity:
    def test_chain_report(self, F_C3):
        report = frith_report(F_C3)
        assert report["is_coherent"] and report["is_compact"]
        assert not report["is_zero_dimensional"] and not report["is_symmetric"]

    def test_diamond_report(self, F_D4):
        report = frith_report(F_D4)
        assert all(
            report[k]
            for k in ("is_compact", "is_coherent", "is_zero_dimensional", "is_symmetric")
        )

    def test_proximity_is_order(self, F_C3):
        px = proximity(F_C3)
        frame = F_C3.frame
        assert px["relation"] == {
            (a, b) for a in range(frame.n) for b in range(frame.n) if frame.le(a, b)
        }
        assert px["interpolates"] and px["diagonal_is_lattice_part"]

    def test_idl_functor(self, TWO, C3, D4):
        for frame in (TWO, C3, D4):
            out = ideal_frith(frame)
            assert is_isomorphic(out["object"].frame, frame)
            assert frith_report(out["object"])["is_coherent"]

import pytest
from hypothesis import given, settings, strategies as st

from pfw.errors import NotALattice
from pfw.lattice import is_isomorphic
from pfw.pervin import (
    PervinMap,
    PervinSpace,
    equalizer_space,
    extremal_mono_as_equalizer,
    is_epi_oracle,
    is_extremal_mono_oracle,
    is_iso_oracle,
    is_mono_oracle,
    morphism_report,
    omega_topology,
    pervin_isomorphic,
    pervin_maps,
    skula,
    subset_congruence,
    subspace,
    symmetrize,
    td_report,
)
from pfw.generate import pervin_catalog


class TestSpace:
    def test_requires_bounds(self):
        with pytest.raises(NotALattice):
            PervinSpace(("x",), (0,))

    def test_requires_closure(self):
        with pytest.raises(NotALattice):
            PervinSpace(("x", "y", "z"), (0, 0b001, 0b010, 0b111))

    def test_empty_space_admitted(self):
        x = PervinSpace((), (0,))
        assert x.n == 0 and x.sets == (0,)


class TestOmegaTopology:
    def test_sierpinski_is_three_chain(self, sierpinski, C3):
        frame, to_elem = omega_topology(sierpinski)
        assert frame.n == 3
        assert is_isomorphic(frame, C3)
        assert set(to_elem) == set(sierpinski.sets)

    def test_indiscrete(self, indiscrete2, TWO):
        frame, _ = omega_topology(indiscrete2)
        assert is_isomorphic(frame, TWO)

    def test_discrete(self, discrete2, D4):
        frame, _ = omega_topology(discrete2)
        assert is_isomorphic(frame, D4)


class TestMorphisms:
    def test_identity_is_iso(self, sierpinski):
        report = morphism_report(PervinMap.identity(sierpinski))
        assert report["is_iso"]

    def test_subspace_embedding_is_extremal_mono(self, sierpinski):
        sub, incl = subspace(sierpinski, 0b01)
        assert sub.sets == (0, 1)
        assert morphism_report(incl)["is_extremal_mono"]

    def test_constant_map_epi_not_mono(self, discrete2):
        point = PervinSpace(("z",), (0, 1))
        f = pervin_maps(discrete2, point)[0]
        report = morphism_report(f)
        assert report["is_epi"]
        assert not f.is_injective()

    def test_oracles_on_small_catalog(self):
        catalog = list(pervin_catalog(2))
        for x in catalog:
            for y in catalog:
                for f in pervin_maps(x, y):
                    report = morphism_report(f)
                    assert report["is_epi"] == is_epi_oracle(f, catalog)
                    assert f.is_injective() == is_mono_oracle(f, catalog)
                    assert report["is_extremal_mono"] == is_extremal_mono_oracle(f, catalog)
                    assert report["is_iso"] == is_iso_oracle(f)


class TestSymmetrization:
    def test_sierpinski_becomes_discrete(self, sierpinski):
        assert symmetrize(sierpinski).is_discrete()

    def test_idempotent(self, sierpinski, indiscrete2):
        for x in (sierpinski, indiscrete2):
            sx = symmetrize(x)
            assert symmetrize(sx) == sx

    def test_indiscrete_unchanged(self, indiscrete2):
        assert symmetrize(indiscrete2) == indiscrete2

    def test_counit_and_universal_property(self):
        catalog = list(pervin_catalog(2))
        symmetric = [z for z in catalog if symmetrize(z) == z]
        for x in catalog:
            sx = symmetrize(x)
            counit = PervinMap(sx, x, range(x.n))
            assert counit.is_morphism()
            for z in symmetric:
                for f in pervin_maps(z, x):
                    lifts = [g for g in pervin_maps(z, sx) if counit.compose(g) == f]
                    assert len(lifts) == 1


class TestSkula:
    def test_sierpinski_discrete(self, sierpinski):
        _, discrete = skula(sierpinski)
        assert discrete

    def test_indiscrete_not_discrete(self, indiscrete2):
        sets, discrete = skula(indiscrete2)
        assert sets == (0, 0b11)
        assert not discrete

    def test_discrete_stays_discrete(self, discrete2):
        assert skula(discrete2)[1]


class TestSubspace:
    def test_whole_is_iso(self, sierpinski):
        _, incl = subspace(sierpinski, sierpinski.full_mask())
        assert morphism_report(incl)["is_iso"]

    def test_empty_subspace(self, sierpinski):
        sub, _ = subspace(sierpinski, 0)
        assert sub.n == 0 and sub.sets == (0,)

    def test_singleton(self, sierpinski):
        sub, _ = subspace(sierpinski, 0b10)
        assert sub.points == ("y",)
        assert sub.sets == (0, 1)


class TestThetaAndTd:
    def test_whole_subset_identity(self, sierpinski):
        assert subset_congruence(sierpinski, sierpinski.full_mask()).is_identity()

    def test_empty_subset_collapses(self, sierpinski):
        assert subset_congruence(sierpinski, 0).is_full()

    def test_singleton_x_collapses_upward(self, sierpinski):
        theta = subset_congruence(sierpinski, 0b01)
        frame, to_elem = omega_topology(sierpinski)
        assert theta.related(to_elem[0b01], to_elem[0b11])

    def test_td_sierpinski_all_true(self, sierpinski):
        report = td_report(sierpinski)
        assert report["equivalent"]
        assert report["pointwise_witness"]

    def test_td_indiscrete_all_false(self, indiscrete2):
        report = td_report(indiscrete2)
        assert report["equivalent"]
        assert not report["pointwise_witness"]

    def test_td_discrete_true(self, discrete2):
        report = td_report(discrete2)
        assert report["equivalent"] and report["skula_discrete"]


class TestRegularity:
    def test_extremal_monos_are_equalizers(self):
        for x in pervin_catalog(2):
            for mask in range(x.full_mask() + 1):
                sub, incl = subspace(x, mask)
                f1, f2 = extremal_mono_as_equalizer(incl)
                eq_space, _ = equalizer_space(f1, f2)
                assert pervin_isomorphic(eq_space, sub)


@st.composite
def pervin_spaces(draw, max_points=4):
    n = draw(st.integers(min_value=1, max_value=max_points))
    full = (1 << n) - 1
    seeds = draw(st.lists(st.integers(0, full), max_size=3))
    family = {0, full, *seeds}
    frontier = list(family)
    while frontier:
        a = frontier.pop()
        for b in list(family):
            for c in (a | b, a & b):
                if c not in family:
                    family.add(c)
                    frontier.append(c)
    return PervinSpace(tuple(f"x{i}" for i in range(n)), family)


class TestRandomSpaces:
    @settings(max_examples=50, deadline=None)
    @given(pervin_spaces())
    def test_td_conditions_always_agree(self, x):
        assert td_report(x)["equivalent"]

    @settings(max_examples=50, deadline=None)
    @given(pervin_spaces())
    def test_symmetrize_idempotent_and_counit_valid(self, x):
        sx = symmetrize(x)
        assert symmetrize(sx) == sx
        assert PervinMap(sx, x, range(x.n)).is_morphism()

    @settings(max_examples=30, deadline=None)
    @given(pervin_spaces(max_points=3))
    def test_open_set_frame_matches_family(self, x):
        frame, to_elem = omega_topology(x)
        assert frame.n == len(x.sets)
        for a in x.sets:
            for b in x.sets:
                assert frame.meet(to_elem[a], to_elem[b]) == to_elem[a & b]
                assert frame.join(to_elem[a], to_elem[b]) == to_elem[a | b]

import random

import pytest

from cyclekit import (
    WalkCapExceeded,
    attractor_presentation,
    attractor_truncated,
    closed_walk_count,
    cycle_graph,
    cyclic_dds,
    enumerate_n_cycles,
    graph_coproduct,
    graph_product,
    make_dds,
    make_digraph,
    nondeg_orbit_counts,
    realize_presentation,
    state_space,
    validate,
)
from cyclekit.attractor import (
    is_aperiodic,
    minimal_period,
    orbit_count,
    orbit_count_burnside,
    orbit_count_enumerated,
    rotate_walk,
)
from cyclekit.cycleset import check_property_a, check_property_b

from helpers import (
    aperiodic_orbit_counts_oracle,
    random_dds,
    random_digraph,
)

FIG1_UPDATE = (0, 2, 3, 1, 5, 7, 7, 5)


def example_g():
    # a -> b, b -> b, c <-> d  (a=0, b=1, c=2, d=3)
    return make_digraph(4, [(0, 1), (1, 1), (2, 3), (3, 2)])


def fig1_space():
    return state_space(make_dds(8, FIG1_UPDATE))


class TestWalkHelpers:
    def test_minimal_period(self):
        assert minimal_period((2, 3, 2, 3)) == 2
        assert minimal_period((1, 1, 1)) == 1
        assert minimal_period((1, 2, 3)) == 3

    def test_aperiodic(self):
        assert is_aperiodic((2, 3))
        assert not is_aperiodic((2, 3, 2, 3))

    def test_rotation(self):
        assert rotate_walk((2, 3, 4)) == (3, 4, 2)


class TestClosedWalkCount:
    def test_example_digraph_level_two(self):
        assert closed_walk_count(example_g(), 2) == 3

    def test_example_digraph_level_three(self):
        assert closed_walk_count(example_g(), 3) == 1

    def test_fig1_level_six(self):
        # periodic points of periods dividing 6: 1 + 2 + 3
        assert closed_walk_count(fig1_space(), 6) == 6

    def test_functional_counts_are_periodic_points(self):
        rng = random.Random(30)
        for _ in range(20):
            d = random_dds(rng, 6)
            g = state_space(d)
            for n in range(1, 7):
                expected = 0
                for x in range(d.size):
                    y = x
                    for _ in range(n):
                        y = d.update[y]
                    expected += y == x
                assert closed_walk_count(g, n) == expected


class TestEnumerateNCycles:
    def test_example_digraph_level_four(self):
        assert enumerate_n_cycles(example_g(), 4) == [
            (1, 1, 1, 1), (2, 3, 2, 3), (3, 2, 3, 2)]

    def test_single_loop_every_level(self):
        for n in (1, 2, 5):
            assert enumerate_n_cycles(cycle_graph(1), n) == [(0,) * n]

    def test_fig1_level_one(self):
        assert enumerate_n_cycles(fig1_space(), 1) == [(0,)]

    def test_count_agreement(self):
        rng = random.Random(31)
        for _ in range(20):
            g = random_digraph(rng, 6)
            for n in range(1, 6):
                assert len(enumerate_n_cycles(g, n)) == closed_walk_count(g, n)

    def test_cap_aborts(self):
        g = make_digraph(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        with pytest.raises(WalkCapExceeded):
            enumerate_n_cycles(g, 10, cap=100)


class TestAttractorTruncated:
    def test_rotation_swaps_two_cycle(self):
        cs = attractor_truncated(example_g(), 4)
        assert cs.rotate(2, (2, 3)) == (3, 2)
        assert cs.rotate(2, (3, 2)) == (2, 3)
        assert cs.rotate(2, (1, 1)) == (1, 1)

    def test_repetition(self):
        cs = attractor_truncated(example_g(), 4)
        assert cs.degenerate((2, 3), 2, 4) == (2, 3, 2, 3)

    def test_loop_repetition(self):
        cs = attractor_truncated(cycle_graph(1), 2)
        assert cs.degenerate((0,), 1, 2) == (0, 0)

    def test_relations_validate(self):
        rng = random.Random(32)
        for _ in range(15):
            g = random_digraph(rng, 6)
            cs = attractor_truncated(g, 6)
            validate(cs.bound, cs.levels, cs.rot, cs.deg)

    def test_every_cycle_has_unique_aperiodic_source(self):
        rng = random.Random(33)
        for _ in range(15):
            g = random_digraph(rng, 6)
            cs = attractor_truncated(g, 6)
            for n in range(1, 7):
                for walk in cs.level(n):
                    witnesses = [
                        (d, y) for d, y in
                        [(d, y) for d in range(1, n + 1) if n % d == 0
                         for y in cs.level(d)
                         if not cs.is_degenerate(d, y)
                         and cs.degenerate(y, d, n) == walk]
                    ]
                    assert len(witnesses) == 1

    def test_properties_hold(self):
        rng = random.Random(34)
        for _ in range(25):
            g = random_digraph(rng, 8)
            cs = attractor_truncated(g, 8)
            assert check_property_a(cs) is None
            assert check_property_b(cs) is None

    def test_coproduct_preservation_levelwise(self):
        rng = random.Random(35)
        for _ in range(15):
            g, h = random_digraph(rng, 5), random_digraph(rng, 5)
            both = attractor_truncated(graph_coproduct(g, h), 6)
            left = attractor_truncated(g, 6)
            right = attractor_truncated(h, 6)
            off = g.vertex_count
            for n in range(1, 7):
                shifted = [tuple(v + off for v in w) for w in right.level(n)]
                assert sorted(left.level(n) + tuple(shifted)) == \
                    list(both.level(n))

    def test_product_counts_multiply(self):
        rng = random.Random(36)
        for _ in range(15):
            g, h = random_digraph(rng, 5), random_digraph(rng, 5)
            prod = graph_product(g, h)
            for n in range(1, 7):
                assert closed_walk_count(prod, n) == \
                    closed_walk_count(g, n) * closed_walk_count(h, n)


class TestOrbitCounts:
    def test_example_digraph(self):
        assert orbit_count(example_g(), 2) == 2

    def test_single_loop(self):
        for n in (1, 3, 6):
            assert orbit_count(cycle_graph(1), n) == 1

    def test_fig1_level_six(self):
        assert orbit_count(fig1_space(), 6) == 3

    def test_burnside_equals_enumeration(self):
        rng = random.Random(37)
        for _ in range(25):
            g = random_digraph(rng, 7)
            for n in range(1, 8):
                assert orbit_count_burnside(g, n) == \
                    orbit_count_enumerated(g, n)


class TestNondegOrbitCounts:
    def test_fig1(self):
        assert nondeg_orbit_counts(fig1_space(), 6) == \
            {1: 1, 2: 1, 3: 1, 4: 0, 5: 0, 6: 0}

    def test_example_digraph(self):
        assert nondeg_orbit_counts(example_g(), 4) == {1: 1, 2: 1, 3: 0, 4: 0}

    def test_five_cycle(self):
        assert nondeg_orbit_counts(cycle_graph(5), 5) == \
            {1: 0, 2: 0, 3: 0, 4: 0, 5: 1}

    def test_against_necklace_oracle(self):
        rng = random.Random(38)
        for _ in range(25):
            g = random_digraph(rng, 6)
            assert nondeg_orbit_counts(g, 6) == \
                aperiodic_orbit_counts_oracle(g, 6)


class TestPresentation:
    def test_fig1(self):
        pres = attractor_presentation(make_dds(8, FIG1_UPDATE))
        assert pres.generators == (
            (1, (0,)), (2, (5, 7)), (3, (1, 2, 3)))

    def test_identity_system(self):
        pres = attractor_presentation(make_dds(4, [0, 1, 2, 3]))
        assert pres.lengths() == [1, 1, 1, 1]

    def test_six_cycle(self):
        pres = attractor_presentation(cyclic_dds(6))
        assert pres.generators == ((6, (0, 1, 2, 3, 4, 5)),)

    def test_matches_nondeg_counts(self):
        rng = random.Random(39)
        for _ in range(30):
            d = random_dds(rng, 8)
            pres = attractor_presentation(d)
            counts = nondeg_orbit_counts(state_space(d), d.size)
            assert pres.count_by_length() == \
                {k: v for k, v in counts.items() if v}

    def test_representatives_are_aperiodic_orbit_walks(self):
        rng = random.Random(40)
        for _ in range(30):
            d = random_dds(rng, 8)
            for k, rep in attractor_presentation(d).generators:
                assert len(rep) == k
                assert is_aperiodic(rep)
                assert rep[0] == min(rep)
                for i, v in enumerate(rep):
                    assert d.update[v] == rep[(i + 1) % k]

    def test_realize_presentation(self):
        pres = attractor_presentation(make_dds(8, FIG1_UPDATE))
        g = realize_presentation(pres)
        assert g.vertex_count == 6
        assert nondeg_orbit_counts(g, 6) == {1: 1, 2: 1, 3: 1, 4: 0, 5: 0, 6: 0}

"""coopetition: sections, paths, Nash zone, TU and win-win solutions."""

import math

import numpy as np
import pytest

from coopetition.coopetitive import (
    CoopetitiveGame,
    core_supremum,
    family_roundtrip_check,
    induced_path,
    nash_zone,
    proper_coopetitive_solution,
    section_game,
    standard_win_win_solution,
    tu_compromise_solution,
    win_win_report,
)
from coopetition.errors import EmptyPortion, MissingInitialZ, SameHalfPlane
from coopetition.games import Orientation, PayoffPoint
from coopetition.geometry import PayoffMap, sample_image, tu_boundary
from coopetition.bargaining import SolutionPoint

TU_POINT = PayoffPoint(-25.0 / 7.0, -3.0 / 7.0)


def err(p: PayoffPoint, q: PayoffPoint) -> float:
    return math.hypot(p.p1 - q.p1, p.p2 - q.p2)


def make_coop(coeffs, orientation=Orientation.LOSS, c_size=9, initial_z=None):
    return CoopetitiveGame.with_uniform_grid(
        PayoffMap(np.asarray(coeffs, dtype=float), arity=3), orientation, c_size, initial_z
    )


class TestSections:
    def test_section_at_zero_is_uncooperative_game(self, coop_game, f0):
        sec = section_game(coop_game, 0.0)
        t = np.linspace(0, 1, 9)
        x, y = np.meshgrid(t, t, indexing="ij")
        a = sec.map.eval_arrays(x, y)
        b = f0.eval_arrays(x, y)
        assert np.abs(a[0] - b[0]).max() == 0.0
        assert np.abs(a[1] - b[1]).max() == 0.0

    def test_section_at_one(self, coop_game):
        sec = section_game(coop_game, 1.0)
        assert sec.map.eval(0.5, 0.5) == PayoffPoint(-2.0, 0.0)
        assert sec.map.eval(1.0, 1.0) == PayoffPoint(-5.0, 1.0)

    def test_constant_in_z_sections_identical(self):
        g = make_coop([[1, 2, 0, 0, 0], [0, 0, 1, 0, 3]])
        a = section_game(g, 0.0)
        b = section_game(g, 0.7)
        assert np.array_equal(a.map.coeffs, b.map.coeffs)

    def test_section_consistency_exact(self, coop_game):
        t = np.linspace(0, 1, 9)
        x, y = np.meshgrid(t, t, indexing="ij")
        for z in coop_game.c_grid[::16]:
            sec = section_game(coop_game, z)
            s1, s2 = sec.map.eval_arrays(x, y)
            f1, f2 = coop_game.payoff.eval_arrays(x, y, np.full_like(x, z))
            assert np.abs(s1 - f1).max() == 0.0
            assert np.abs(s2 - f2).max() == 0.0

    def test_z_out_of_range(self, coop_game):
        with pytest.raises(ValueError):
            section_game(coop_game, 1.5)

    def test_translation_family_structure(self, coop_game):
        # Section z equals section 0 shifted by -z in both components.
        t = np.linspace(0, 1, 17)
        x, y = np.meshgrid(t, t, indexing="ij")
        base = section_game(coop_game, 0.0).map.eval_arrays(x, y)
        for z in (0.25, 0.5, 1.0):
            sec = section_game(coop_game, z).map.eval_arrays(x, y)
            assert np.abs(sec[0] - (base[0] - z)).max() <= 1e-12
            assert np.abs(sec[1] - (base[1] - z)).max() <= 1e-12


class TestRoundtrip:
    def test_paper_game(self, coop_game):
        assert family_roundtrip_check(game=coop_game)

    def test_singleton_grid(self):
        g = CoopetitiveGame(
            PayoffMap(np.array([[0, 0, 0, -1.0, -4.0], [0, 1.0, 1.0, -1.0, 0]]), arity=3),
            Orientation.LOSS,
            np.array([0.5]),
        )
        assert family_roundtrip_check(g)

    def test_corrupted_section_detected(self, coop_game):
        class Corrupted(CoopetitiveGame):
            pass

        bad = Corrupted(coop_game.payoff, coop_game.orientation, coop_game.c_grid)
        # Shift one section's constants away from the true map.
        import coopetition.coopetitive as mod

        original = mod.section_game

        def corrupt(game, z):
            sec = original(game, z)
            if game is bad and z == game.c_grid[3]:
                return mod.SectionGame(sec.z, sec.map.translated(PayoffPoint(1e-6, 0)))
            return sec

        mod_section = mod.section_game
        mod.section_game = corrupt
        try:
            assert family_roundtrip_check(bad) is False
        finally:
            mod.section_game = mod_section

    def test_random_polynomial_games(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            g = make_coop(rng.integers(-4, 5, size=(2, 5)) / 2.0, c_size=7)
            assert family_roundtrip_check(g)


class TestInducedPath:
    def test_nash_payoffs_are_shifted_segments(self, coop_game):
        path = induced_path(coop_game, "nash_payoffs", 33)
        assert [z for z, _ in path.samples] == list(coop_game.c_grid)
        for z, pts in path.samples[::16]:
            # Equilibrium payoffs of the section are {(-z, x-z)}.
            assert np.abs(pts[:, 0] + z).max() <= 1e-12
            diffs = pts[:, 1] - pts[:, 0]
            assert diffs.min() >= -1e-12 and diffs.max() <= 1.0 + 1e-12

    def test_conservative_path(self, coop_game):
        path = induced_path(coop_game, "conservative", 33)
        for z, pts in path.samples[::8]:
            assert abs(pts[0, 0] - (-z)) <= 1e-9
            assert abs(pts[0, 1] - (1.0 - z)) <= 1e-9

    def test_extrema_paths(self, coop_game):
        sup = induced_path(coop_game, "supremum", 17)
        inf = induced_path(coop_game, "infimum", 17)
        for (z, hi), (_, lo) in zip(sup.samples[::16], inf.samples[::16]):
            assert tuple(hi[0]) == (0.0 - z, 2.0 - z)
            assert tuple(lo[0]) == (-4.0 - z, 0.0 - z)

    def test_constant_game_constant_path(self):
        g = make_coop([[2, 0, 0, 0, 0], [3, 0, 0, 0, 0]], c_size=5)
        path = induced_path(g, "supremum", 17)
        for _, pts in path.samples:
            assert tuple(pts[0]) == (2.0, 3.0)

    def test_bad_quantity(self, coop_game):
        with pytest.raises(ValueError):
            induced_path(coop_game, "entropy", 17)


class TestNashZone:
    def test_parallelogram_membership(self, coop_game):
        zone = nash_zone(coop_game, 33)
        p1 = zone.payoffs[:, 0]
        p2 = zone.payoffs[:, 1]
        assert (p1 >= -1.0 - 1e-12).all() and (p1 <= 1e-12).all()
        assert (p2 >= p1 - 1e-12).all() and (p2 <= p1 + 1.0 + 1e-12).all()
        corners = {(0.0, 0.0), (0.0, 1.0), (-1.0, -1.0), (-1.0, 0.0)}
        have = set(map(tuple, zone.payoffs))
        assert corners <= have

    def test_singleton_grid_is_f0_segment(self):
        g = CoopetitiveGame(
            PayoffMap(np.array([[0, 0, 0, -1.0, -4.0], [0, 1.0, 1.0, -1.0, 0]]), arity=3),
            Orientation.LOSS,
            np.array([0.0]),
        )
        zone = nash_zone(g, 17)
        assert (zone.payoffs[:, 0] == 0.0).all()
        assert zone.payoffs[:, 1].min() == 0.0
        assert zone.payoffs[:, 1].max() == 1.0

    def test_unique_equilibrium_gives_curve(self):
        # Strict dominance at every section: one zone point per z.
        g = make_coop([[1, 2, 0, -1, 0], [1, 0, 2, -1, 0]], Orientation.GAIN, c_size=7)
        zone = nash_zone(g, 17)
        assert len(zone) == 7

    def test_zone_points_shift_with_z(self, coop_game):
        zone = nash_zone(coop_game, 17)
        # Equilibrium bistrategies are the same at every z; payoffs shift
        # by -z in both components.
        for row, pre in zip(zone.payoffs, zone.preimages):
            x, y, z = pre
            assert y == 0.0
            assert abs(row[0] - (0.0 - z)) <= 1e-12
            assert abs(row[1] - (x - z)) <= 1e-12


class TestProperCoopetitive:
    def test_paper_solution(self, coop_game):
        sol = proper_coopetitive_solution(coop_game, 65, tol=3.0 / 64)
        assert sol.payoff == PayoffPoint(-1, -1)
        assert sol.preimage == (0.0, 0.0, 1.0)

    def test_singleton_c_grid(self):
        g = CoopetitiveGame(
            PayoffMap(np.array([[0, 0, 0, -1.0, -4.0], [0, 1.0, 1.0, -1.0, 0]]), arity=3),
            Orientation.LOSS,
            np.array([0.0]),
        )
        sol = proper_coopetitive_solution(g, 17, tol=1e-6)
        assert sol.payoff == PayoffPoint(0, 0)

    def test_constant_single_equilibrium(self):
        g = make_coop([[1, 2, 0, 0, 0], [1, 0, 2, 0, 0]], Orientation.GAIN, c_size=5)
        sol = proper_coopetitive_solution(g, 17, tol=1e-6)
        assert sol.payoff == PayoffPoint(3.0, 3.0)


class TestTUCompromise:
    def test_paper_example(self, coop_game):
        sol = tu_compromise_solution(
            coop_game, PayoffPoint(0, 1), PayoffPoint(-5, -1), grid_n=65
        )
        assert err(sol.payoff, TU_POINT) <= 1e-2
        assert sol.preimage == (1.0, 1.0, 1.0)

    def test_symmetric_crossing(self, coop_game):
        sol = tu_compromise_solution(
            coop_game, PayoffPoint(0, 0), PayoffPoint(-4, -4), grid_n=33
        )
        assert err(sol.payoff, PayoffPoint(-2, -2)) <= 1e-9

    def test_points_on_line_rejected(self, coop_game):
        with pytest.raises(SameHalfPlane):
            tu_compromise_solution(
                coop_game, PayoffPoint(-2, -2), PayoffPoint(-3, -1), grid_n=33
            )

    def test_same_side_rejected(self, coop_game):
        with pytest.raises(SameHalfPlane):
            tu_compromise_solution(
                coop_game, PayoffPoint(0, 1), PayoffPoint(0, 0), grid_n=33
            )

    def test_coop_tu_beats_every_section(self, coop_game):
        coop_sum = tu_boundary(
            sample_image(coop_game.payoff, 33), Orientation.LOSS, 1e-9
        ).optimal_sum
        for z in coop_game.c_grid[::16]:
            sec_cloud = sample_image(section_game(coop_game, z).map, 33)
            sec_sum = tu_boundary(sec_cloud, Orientation.LOSS, 1e-9).optimal_sum
            assert coop_sum <= sec_sum + 1e-12


class TestWinWin:
    def test_core_supremum_is_conservative_point(self, coop_game):
        L = core_supremum(coop_game, 0.0, 513)
        assert err(L, PayoffPoint(0, 1)) <= 1e-9

    def test_report_on_known_candidate(self, coop_game):
        candidate = SolutionPoint(PayoffPoint(-2, 0), (0.5, 0.5, 1.0), "manual", 0.0)
        report = win_win_report(coop_game, candidate, 65)
        assert report.is_win_win
        assert report.margin.p1 > 0 and report.margin.p2 > 0

    def test_candidate_equal_to_l_fails(self, coop_game):
        candidate = SolutionPoint(PayoffPoint(0, 1), None, "manual", 0.0)
        report = win_win_report(coop_game, candidate, 65)
        assert not report.is_win_win

    def test_candidate_worse_in_one_component_fails(self, coop_game):
        candidate = SolutionPoint(PayoffPoint(-2, 2), None, "manual", 0.0)
        report = win_win_report(coop_game, candidate, 65)
        assert not report.is_win_win
        assert report.margin.p2 < 0

    def test_standard_solution_is_win_win(self, coop_game):
        sol = standard_win_win_solution(coop_game, 65)
        report = win_win_report(coop_game, sol, 65)
        assert report.is_win_win
        assert err(sol.payoff, TU_POINT) <= 1e-2

    def test_missing_initial_z(self):
        g = make_coop([[0, 0, 0, -1, -4], [0, 1, 1, -1, 0]], c_size=5)
        with pytest.raises(MissingInitialZ):
            standard_win_win_solution(g, 17)
        with pytest.raises(MissingInitialZ):
            win_win_report(g, SolutionPoint(PayoffPoint(0, 0), None, "m", 0.0), 17)

    def test_already_tu_optimal_raises_empty_portion(self):
        # Constant-in-z game whose TU optimum is reached by the core sup.
        g = make_coop([[0, 1, 0, 0, 0], [0, 0, 1, 0, 0]], Orientation.GAIN,
                      c_size=5, initial_z=0.0)
        with pytest.raises(EmptyPortion):
            standard_win_win_solution(g, 17)

    def test_symmetric_gain_game(self):
        # Gains (x+z, y+z): TU line sum = 4 at z=1; core sup of the initial
        # section is (1, 1); the crossing from (1,1) toward the portion's
        # best corner lands at (2, 2).
        g = make_coop([[0, 1, 0, 1, 0], [0, 0, 1, 1, 0]], Orientation.GAIN,
                      c_size=5, initial_z=0.0)
        sol = standard_win_win_solution(g, 17)
        assert err(sol.payoff, PayoffPoint(2, 2)) <= 1e-9


class TestValidation:
    def test_c_grid_sorted_required(self):
        with pytest.raises(ValueError):
            CoopetitiveGame(
                PayoffMap(np.zeros((2, 5)), arity=3),
                Orientation.LOSS,
                np.array([0.5, 0.25]),
            )

    def test_initial_z_must_be_on_grid(self):
        with pytest.raises(ValueError):
            CoopetitiveGame.with_uniform_grid(
                PayoffMap(np.zeros((2, 5)), arity=3),
                Orientation.LOSS,
                c_grid_size=5,
                initial_z=0.1,
            )

    def test_arity2_map_rejected(self):
        with pytest.raises(ValueError):
            CoopetitiveGame.with_uniform_grid(
                PayoffMap(np.zeros((2, 5)), arity=2), Orientation.LOSS, 5
            )

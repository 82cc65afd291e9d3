"""Two-player coopetitive games as z-indexed families of section games.

A coopetitive game is a payoff map on the unit cube: the players pick
(x, y) competitively while z is chosen jointly.  Fixing z yields a
normal-form section game, and the family of sections determines the game
(and vice versa); ``family_roundtrip_check`` witnesses that on a lattice.
The cooperative axis is discretized to ``c_grid``, so induced families
(Nash payoffs, extrema, conservative bi-values) become sampled set-valued
paths, and the solution concepts built on them (proper coopetitive,
transferable-utility compromise, win-win) operate on those samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .bargaining import BargainingProblem, SolutionPoint, ks_solution, payoff_core
from .errors import EmptyPortion, MissingInitialZ, SameHalfPlane
from .games import FiniteBimatrixGame, Orientation, PayoffPoint, strictly_better
from .geometry import (
    PayoffMap,
    PointCloud,
    extrema,
    orientation_best,
    orientation_worst,
    pareto_filter,
    sample_image,
    tu_boundary,
)
from .mixed import conservative_bivalue_mixed, mixed_equilibrium_components

__all__ = [
    "CoopetitiveGame",
    "SectionGame",
    "SetValuedPath",
    "WinWinReport",
    "section_game",
    "family_roundtrip_check",
    "induced_path",
    "nash_zone",
    "proper_coopetitive_solution",
    "tu_crossing_solution",
    "tu_compromise_solution",
    "core_supremum",
    "win_win_report",
    "standard_win_win_solution",
]

PathQuantity = Literal["nash_payoffs", "supremum", "infimum", "conservative"]


@dataclass(frozen=True, eq=False)
class CoopetitiveGame:
    """A payoff map on E x F x C with a discretized cooperative axis."""

    payoff: PayoffMap
    orientation: Orientation
    c_grid: np.ndarray
    initial_z: float | None = None

    def __post_init__(self) -> None:
        if self.payoff.arity != 3:
            raise ValueError("a coopetitive game needs an arity-3 payoff map")
        grid = np.array(self.c_grid, dtype=float).ravel()
        if len(grid) == 0:
            raise ValueError("c_grid must be non-empty")
        if (np.diff(grid) <= 0).any():
            raise ValueError("c_grid must be strictly increasing")
        if grid[0] < 0.0 or grid[-1] > 1.0:
            raise ValueError("c_grid values must lie in [0, 1]")
        grid.flags.writeable = False
        object.__setattr__(self, "c_grid", grid)
        if self.initial_z is not None:
            z0 = float(self.initial_z)
            if np.abs(grid - z0).min() > 1e-12:
                raise ValueError(f"initial_z={z0} is not a member of c_grid")
            object.__setattr__(self, "initial_z", z0)

    @classmethod
    def with_uniform_grid(
        cls,
        payoff: PayoffMap,
        orientation: Orientation,
        c_grid_size: int = 65,
        initial_z: float | None = None,
    ) -> "CoopetitiveGame":
        if c_grid_size < 2:
            raise ValueError(f"c_grid_size must be at least 2, got {c_grid_size}")
        return cls(payoff, orientation, np.linspace(0.0, 1.0, c_grid_size), initial_z)


@dataclass(frozen=True, eq=False)
class SectionGame:
    """The normal-form game obtained by fixing the cooperative strategy."""

    z: float
    map: PayoffMap

    def as_bimatrix(self, orientation: Orientation) -> FiniteBimatrixGame:
        """The 2x2 table whose mixed extension is this bilinear section.

        Row 0 / column 0 are the probability-one strategies (the corner
        x = y = 1), matching the mixed-extension embedding.
        """
        m = self.map
        table1 = [[m.eval(1.0, 1.0).p1, m.eval(1.0, 0.0).p1],
                  [m.eval(0.0, 1.0).p1, m.eval(0.0, 0.0).p1]]
        table2 = [[m.eval(1.0, 1.0).p2, m.eval(1.0, 0.0).p2],
                  [m.eval(0.0, 1.0).p2, m.eval(0.0, 0.0).p2]]
        return FiniteBimatrixGame(np.array(table1), np.array(table2), orientation)


@dataclass(frozen=True, eq=False)
class SetValuedPath:
    """Samples of a per-section quantity along the cooperative axis."""

    samples: tuple[tuple[float, np.ndarray], ...]
    quantity: PathQuantity


@dataclass(frozen=True)
class WinWinReport:
    """Whether a candidate strictly beats the initial game's core supremum."""

    core_sup: PayoffPoint
    candidate: SolutionPoint
    is_win_win: bool
    margin: PayoffPoint


def section_game(game: CoopetitiveGame, z: float) -> SectionGame:
    """The section at cooperative strategy ``z`` in [0, 1]."""
    z = float(z)
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z must lie in [0, 1], got {z}")
    return SectionGame(z, game.payoff.section(z))


def family_roundtrip_check(game: CoopetitiveGame, grid_n: int = 17) -> bool:
    """True iff the sections reassemble the payoff map on the lattice.

    Discrete witness of the bijection between a coopetitive game and its
    family of section games: for every z in ``c_grid`` and lattice (x, y),
    the section value must match the full map to 1e-12.
    """
    t = np.linspace(0.0, 1.0, grid_n)
    x, y = np.meshgrid(t, t, indexing="ij")
    for z in game.c_grid:
        sec = section_game(game, z)
        s1, s2 = sec.map.eval_arrays(x, y)
        f1, f2 = game.payoff.eval_arrays(x, y, np.full_like(x, z))
        if np.abs(s1 - f1).max() > 1e-12 or np.abs(s2 - f2).max() > 1e-12:
            return False
    return True


def _component_samples(component, grid_n: int) -> tuple[np.ndarray, np.ndarray]:
    """Lattice over an equilibrium component's x/y intervals."""
    xl, xh = component.x_interval
    yl, yh = component.y_interval
    xs = np.array([xl]) if xl == xh else np.linspace(xl, xh, grid_n)
    ys = np.array([yl]) if yl == yh else np.linspace(yl, yh, grid_n)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return gx.ravel(), gy.ravel()


def induced_path(game: CoopetitiveGame, quantity: PathQuantity, grid_n: int) -> SetValuedPath:
    """Sample the named per-section quantity along ``c_grid``.

    Nash payoff sets come from the sections' mixed equilibrium components,
    extrema from the sampled section images, and conservative bi-values
    from the lattice minimax of each section.
    """
    if quantity not in ("nash_payoffs", "supremum", "infimum", "conservative"):
        raise ValueError(f"unsupported path quantity {quantity!r}")
    if grid_n < 2:
        raise ValueError(f"grid_n must be at least 2, got {grid_n}")
    samples = []
    for z in game.c_grid:
        sec = section_game(game, z)
        if quantity == "nash_payoffs":
            pts = []
            for comp in mixed_equilibrium_components(sec.as_bimatrix(game.orientation)):
                gx, gy = _component_samples(comp, grid_n)
                p1, p2 = sec.map.eval_arrays(gx, gy)
                pts.append(np.stack([p1, p2], axis=1))
            arr = np.concatenate(pts, axis=0)
        elif quantity == "conservative":
            v = conservative_bivalue_mixed(sec.as_bimatrix(game.orientation), grid_n)
            arr = np.array([[v.p1, v.p2]])
        else:
            lo, hi = extrema(sample_image(sec.map, grid_n))
            point = hi if quantity == "supremum" else lo
            arr = np.array([[point.p1, point.p2]])
        arr.flags.writeable = False
        samples.append((float(z), arr))
    return SetValuedPath(tuple(samples), quantity)


def nash_zone(game: CoopetitiveGame, grid_n: int) -> PointCloud:
    """Union of the sections' Nash payoff sets, tagged with (x, y, z)."""
    if grid_n < 2:
        raise ValueError(f"grid_n must be at least 2, got {grid_n}")
    payoff_rows = []
    preimage_rows = []
    for z in game.c_grid:
        sec = section_game(game, z)
        for comp in mixed_equilibrium_components(sec.as_bimatrix(game.orientation)):
            gx, gy = _component_samples(comp, grid_n)
            p1, p2 = sec.map.eval_arrays(gx, gy)
            payoff_rows.append(np.stack([p1, p2], axis=1))
            preimage_rows.append(np.stack([gx, gy, np.full_like(gx, z)], axis=1))
    return PointCloud(
        np.concatenate(payoff_rows, axis=0),
        np.concatenate(preimage_rows, axis=0),
        grid_step=1.0 / (grid_n - 1),
    )


def _facing_flavor(orientation: Orientation) -> Literal["maximal", "minimal"]:
    return "maximal" if orientation is Orientation.GAIN else "minimal"


def proper_coopetitive_solution(
    game: CoopetitiveGame, grid_n: int, tol: float
) -> SolutionPoint:
    """Kalai-Smorodinsky over the Pareto boundary of the Nash zone.

    Cooperation happens on the z axis only; the players stay selfish on
    (x, y).  The bargaining problem runs from the boundary's worst corner
    to its best corner per orientation; a single-point boundary is its own
    solution.
    """
    zone = nash_zone(game, grid_n)
    nstar = pareto_filter(zone, game.orientation, _facing_flavor(game.orientation))
    method = "proper-coopetitive"
    if len(nstar) == 1:
        t = nstar.tagged(0)
        return SolutionPoint(t.payoff, t.preimage, method, residual=0.0)
    threat = orientation_worst(nstar, game.orientation)
    utopia = orientation_best(nstar, game.orientation)
    sol = ks_solution(BargainingProblem(nstar, threat, utopia), tol)
    return SolutionPoint(sol.payoff, sol.preimage, method, sol.residual, threat, utopia)


def _tu_segment(cloud: PointCloud, orientation: Orientation, witness_tol: float):
    """TU boundary data: witnesses plus the p1 range of the full TU segment.

    The transferable-utility Pareto boundary is the line p1 + p2 = optimal
    sum clipped to the componentwise extrema box of the payoff space (with
    transfers any split of the optimal total between those bounds is
    reachable).  Witnesses are the sampled profiles that attain the total.
    """
    tub = tu_boundary(cloud, orientation, witness_tol)
    lo, hi = extrema(cloud)
    m = tub.optimal_sum
    p1_lo = max(lo.p1, m - hi.p2)
    p1_hi = min(hi.p1, m - lo.p2)
    return tub, p1_lo, p1_hi


def _nearest_witness(tub, point: np.ndarray) -> tuple[float, ...]:
    dist = tub.witness_payoffs - point
    order = np.lexsort(
        tuple(
            [tub.witness_preimages[:, k] for k in range(tub.witness_preimages.shape[1] - 1, -1, -1)]
            + [tub.witness_payoffs[:, 1], tub.witness_payoffs[:, 0], np.hypot(*dist.T)]
        )
    )
    return tuple(float(v) for v in tub.witness_preimages[order[0]])


def tu_crossing_solution(
    cloud: PointCloud,
    orientation: Orientation,
    a: PayoffPoint,
    b: PayoffPoint,
    witness_tol: float = 1e-6,
    method: str = "tu-compromise",
) -> SolutionPoint:
    """Crossing of the segment [a, b] with the TU line of a cloud.

    ``a`` and ``b`` must straddle the line p1 + p2 = optimal sum; the
    returned payoff is the crossing itself, and the reported preimage is
    the witness profile nearest it (the players realize the optimal total
    there and transfer utility to reach the agreed split).
    """
    tub = tu_boundary(cloud, orientation, witness_tol)
    m = tub.optimal_sum
    sum_a = a.p1 + a.p2
    sum_b = b.p1 + b.p2
    if (sum_a - m) * (sum_b - m) >= 0:
        raise SameHalfPlane(
            f"threat sum {sum_a:.6g} and utopia sum {sum_b:.6g} do not straddle "
            f"the TU line p1+p2 = {m:.6g}"
        )
    s = (m - sum_a) / (sum_b - sum_a)
    crossing = np.array([a.p1 + s * (b.p1 - a.p1), a.p2 + s * (b.p2 - a.p2)])
    # Snap the coordinate sum exactly onto the line; the residual records
    # the (floating-point sized) adjustment.
    point = np.array([crossing[0], m - crossing[0]])
    return SolutionPoint(
        payoff=PayoffPoint(*point),
        preimage=_nearest_witness(tub, point),
        method=method,
        residual=float(np.hypot(*(point - crossing))),
        threat=a,
        utopia=b,
    )


def tu_compromise_solution(
    game: CoopetitiveGame,
    a: PayoffPoint,
    b: PayoffPoint,
    grid_n: int,
    tol: float = 1e-6,
) -> SolutionPoint:
    """Transferable-utility compromise of the coopetitive game."""
    cloud = sample_image(game.payoff, grid_n)
    return tu_crossing_solution(cloud, game.orientation, a, b, witness_tol=tol)


def core_supremum(game: CoopetitiveGame, z: float, grid_n: int) -> PayoffPoint:
    """Componentwise supremum of the payoff core of the section at ``z``.

    The core is the portion of the section's orientation-facing Pareto
    boundary weakly better than its conservative bi-value; its supremum is
    taken componentwise over the samples.
    """
    sec = section_game(game, z)
    boundary = pareto_filter(
        sample_image(sec.map, grid_n), game.orientation, _facing_flavor(game.orientation)
    )
    conservative = conservative_bivalue_mixed(sec.as_bimatrix(game.orientation), grid_n)
    core = payoff_core(boundary, conservative)
    if len(core) == 0:
        raise EmptyPortion(f"the payoff core of the section at z={z} is empty")
    return PayoffPoint(*core.payoffs.max(axis=0))


def win_win_report(
    game: CoopetitiveGame, candidate: SolutionPoint, grid_n: int
) -> WinWinReport:
    """Check a candidate against the initial game's core supremum L.

    Win-win means strictly better than L in both components, read per
    orientation; the margin records the componentwise improvement.
    """
    if game.initial_z is None:
        raise MissingInitialZ("win-win analysis needs a game with initial_z set")
    L = core_supremum(game, game.initial_z, grid_n)
    s = game.orientation.sign
    margin = PayoffPoint(s * (candidate.payoff.p1 - L.p1), s * (candidate.payoff.p2 - L.p2))
    return WinWinReport(
        core_sup=L,
        candidate=candidate,
        is_win_win=strictly_better(candidate.payoff, L, game.orientation),
        margin=margin,
    )


def standard_win_win_solution(
    game: CoopetitiveGame, grid_n: int, tol: float = 1e-6
) -> SolutionPoint:
    """TU compromise threatened by the initial core supremum L.

    The utopia point is the orientation-best corner of the TU-boundary
    portion weakly better than L.  Raises :class:`EmptyPortion` when the
    optimal collective payoff does not strictly improve on L's total, in
    which case no TU point can beat the initial game.
    """
    if game.initial_z is None:
        raise MissingInitialZ("the standard win-win solution needs initial_z set")
    L = core_supremum(game, game.initial_z, grid_n)
    cloud = sample_image(game.payoff, grid_n)
    tub, p1_lo, p1_hi = _tu_segment(cloud, game.orientation, tol)
    m = tub.optimal_sum
    s = game.orientation.sign
    if not s * m > s * (L.p1 + L.p2):
        raise EmptyPortion(
            f"optimal collective payoff {m:.6g} does not improve on the "
            f"initial core supremum total {L.p1 + L.p2:.6g}"
        )
    if game.orientation is Orientation.LOSS:
        lo = max(p1_lo, m - L.p2)
        hi = min(p1_hi, L.p1)
        utopia = PayoffPoint(lo, m - hi)
    else:
        lo = max(p1_lo, L.p1)
        hi = min(p1_hi, m - L.p2)
        utopia = PayoffPoint(hi, m - lo)
    if lo > hi:
        raise EmptyPortion("no TU boundary point is weakly better than the core supremum")
    if lo == hi:
        # The improving portion is a single point, which is the solution.
        point = np.array([lo, m - lo])
        return SolutionPoint(
            payoff=PayoffPoint(*point),
            preimage=_nearest_witness(tub, point),
            method="standard-win-win",
            residual=0.0,
            threat=L,
            utopia=PayoffPoint(*point),
        )
    return tu_crossing_solution(
        cloud, game.orientation, L, utopia, witness_tol=tol, method="standard-win-win"
    )

"""Loading and validation of JSON game files.

Two kinds are supported.  ``finite`` files carry the two payoff matrices
plus optional strategy labels; ``coopetitive`` files carry polynomial
coefficients per payoff component over the monomial basis {1, x, y, z, xy}
together with the cooperative grid size and an optional initial z.  Both
may carry an ``analysis`` block with default grid size and tolerance.

Schema violations raise :class:`GameFileError` anchored to the first line
of the offending key, so the CLI can report ``file:line: message``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .coopetitive import CoopetitiveGame
from .errors import GameFileError
from .games import FiniteBimatrixGame, Orientation
from .geometry import PayoffMap

__all__ = [
    "GameSpec",
    "AnalysisDefaults",
    "load_game_file",
    "resolve_grid",
    "GRID_ENV_VAR",
    "DEFAULT_GRID_2D",
    "DEFAULT_GRID_3D",
]

#: Environment variable overriding the default sampling grid size.
GRID_ENV_VAR = "COOPETITION_GRID"
DEFAULT_GRID_2D = 513
DEFAULT_GRID_3D = 65


@dataclass(frozen=True)
class AnalysisDefaults:
    grid_n: int | None = None
    tol: float | None = None


@dataclass(frozen=True)
class GameSpec:
    kind: str
    orientation: Orientation
    finite: FiniteBimatrixGame | None
    coopetitive: CoopetitiveGame | None
    analysis: AnalysisDefaults
    path: str


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return i
    return None


class _Validator:
    def __init__(self, path: str, text: str, data):
        self.path = path
        self.text = text
        self.data = data

    def fail(self, key: str, message: str) -> GameFileError:
        return GameFileError(message, path=self.path, line=_line_of(self.text, key))

    def require(self, key: str):
        if key not in self.data:
            raise GameFileError(f"missing required key {key!r}", path=self.path, line=1)
        return self.data[key]

    def matrix(self, key: str) -> np.ndarray:
        raw = self.require(key)
        if (
            not isinstance(raw, list)
            or not raw
            or not all(isinstance(row, list) and row for row in raw)
        ):
            raise self.fail(key, f"{key} must be a non-empty list of non-empty rows")
        width = len(raw[0])
        if any(len(row) != width for row in raw):
            raise self.fail(key, f"{key} must be rectangular")
        try:
            out = np.array(raw, dtype=float)
        except (TypeError, ValueError):
            raise self.fail(key, f"{key} entries must be numbers") from None
        if not np.isfinite(out).all():
            raise self.fail(key, f"{key} entries must be finite")
        return out

    def labels(self, key: str, count: int) -> tuple[str, ...] | None:
        if key not in self.data:
            return None
        raw = self.data[key]
        if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
            raise self.fail(key, f"{key} must be a list of strings")
        if len(raw) != count:
            raise self.fail(key, f"{key} has {len(raw)} entries for {count} strategies")
        return tuple(raw)

    def coefficient_row(self, table, key: str) -> list[float]:
        if key not in table:
            raise self.fail("coefficients", f"coefficients must define {key!r}")
        raw = table[key]
        if not isinstance(raw, list) or len(raw) != 5:
            raise self.fail(key, f"coefficients.{key} must list 5 numbers over (1, x, y, z, xy)")
        try:
            row = [float(v) for v in raw]
        except (TypeError, ValueError):
            raise self.fail(key, f"coefficients.{key} entries must be numbers") from None
        if not all(np.isfinite(row)):
            raise self.fail(key, f"coefficients.{key} entries must be finite")
        return row


def load_game_file(path: str | Path) -> GameSpec:
    """Parse and validate a game file, raising :class:`GameFileError` on problems."""
    path = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GameFileError(f"cannot read file: {exc}", path=path) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFileError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise GameFileError("top level must be a JSON object", path=path, line=1)

    v = _Validator(path, text, data)
    kind = v.require("kind")
    if kind not in ("finite", "coopetitive"):
        raise v.fail("kind", f"kind must be 'finite' or 'coopetitive', got {kind!r}")
    orient_raw = v.require("orientation")
    if orient_raw not in ("gain", "loss"):
        raise v.fail("orientation", f"orientation must be 'gain' or 'loss', got {orient_raw!r}")
    orientation = Orientation(orient_raw)

    analysis = AnalysisDefaults()
    if "analysis" in data:
        block = data["analysis"]
        if not isinstance(block, dict):
            raise v.fail("analysis", "analysis must be an object")
        grid_n = block.get("grid_n")
        if grid_n is not None and (not isinstance(grid_n, int) or grid_n < 2):
            raise v.fail("grid_n", f"analysis.grid_n must be an integer >= 2, got {grid_n!r}")
        tol = block.get("tol")
        if tol is not None:
            if not isinstance(tol, (int, float)) or not tol > 0:
                raise v.fail("tol", f"analysis.tol must be a positive number, got {tol!r}")
            tol = float(tol)
        analysis = AnalysisDefaults(grid_n=grid_n, tol=tol)

    finite = None
    coopetitive = None
    if kind == "finite":
        p1 = v.matrix("payoff1")
        p2 = v.matrix("payoff2")
        if p1.shape != p2.shape:
            raise v.fail("payoff2", f"payoff matrices differ in shape: {p1.shape} vs {p2.shape}")
        finite = FiniteBimatrixGame(
            p1,
            p2,
            orientation,
            row_labels=v.labels("row_labels", p1.shape[0]),
            col_labels=v.labels("col_labels", p1.shape[1]),
        )
    else:
        table = v.require("coefficients")
        if not isinstance(table, dict):
            raise v.fail("coefficients", "coefficients must be an object with p1 and p2")
        coeffs = np.array(
            [v.coefficient_row(table, "p1"), v.coefficient_row(table, "p2")]
        )
        c_size = data.get("c_grid_size", 65)
        if not isinstance(c_size, int) or c_size < 2:
            raise v.fail("c_grid_size", f"c_grid_size must be an integer >= 2, got {c_size!r}")
        initial_z = data.get("initial_z")
        if initial_z is not None and not isinstance(initial_z, (int, float)):
            raise v.fail("initial_z", f"initial_z must be a number, got {initial_z!r}")
        try:
            coopetitive = CoopetitiveGame.with_uniform_grid(
                PayoffMap(coeffs, arity=3),
                orientation,
                c_grid_size=c_size,
                initial_z=None if initial_z is None else float(initial_z),
            )
        except ValueError as exc:
            raise v.fail("initial_z", str(exc)) from exc

    return GameSpec(kind, orientation, finite, coopetitive, analysis, path)


def resolve_grid(spec: GameSpec, cli_grid: int | None) -> int:
    """Grid-size precedence: CLI flag, file analysis block, env var, default."""
    if cli_grid is not None:
        if cli_grid < 2:
            raise GameFileError(f"grid size must be at least 2, got {cli_grid}", path=spec.path)
        return cli_grid
    if spec.analysis.grid_n is not None:
        return spec.analysis.grid_n
    env = os.environ.get(GRID_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise GameFileError(
                f"{GRID_ENV_VAR} must be an integer, got {env!r}", path=spec.path
            ) from None
        if value < 2:
            raise GameFileError(f"{GRID_ENV_VAR} must be at least 2, got {value}", path=spec.path)
        return value
    return DEFAULT_GRID_2D if spec.kind == "finite" else DEFAULT_GRID_3D

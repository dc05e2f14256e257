"""CSV loading and matplotlib rendering for the six figure recipes.

Rendering is read-only over its inputs and byte-stable: the Agg backend, a
fixed svg hash salt and suppressed SVG date metadata make repeated renders of
identical CSVs produce identical files.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "xxchain-figures"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .recipes import RECIPES, FigureRecipe

CLASSICAL_THRESHOLD = 2.0 / 3.0
_MARKERS = ("o", "s", "D", "^", "v", "<", ">", "p")


class SchemaError(ValueError):
    """Input CSV does not match the recipe's documented columns."""


def load_table(path: Path, expected: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Read one sweep CSV ('#' lines are metadata) and validate its header.

    Expected entries ending in '*' match any header column with that prefix;
    the loaded table always uses the expected (pattern) name as the key.
    """
    if not path.exists():
        raise FileNotFoundError(f"input CSV not found: {path}")
    with open(path, newline="") as handle:
        rows = [row for row in csv.reader(handle)
                if row and not row[0].lstrip().startswith("#")]
    if not rows:
        raise SchemaError(f"{path.name}: no header row")
    header, data_rows = rows[0], rows[1:]
    mapping: dict[str, int] = {}
    for want in expected:
        if want.endswith("*"):
            hits = [i for i, name in enumerate(header) if name.startswith(want[:-1])]
        else:
            hits = [i for i, name in enumerate(header) if name == want]
        if len(hits) != 1:
            raise SchemaError(
                f"{path.name}: expected exactly one column matching {want!r}, "
                f"header is {header}"
            )
        mapping[want] = hits[0]
    if not data_rows:
        raise SchemaError(f"{path.name}: no data rows")
    table = {}
    for want, idx in mapping.items():
        try:
            table[want] = np.array([float(row[idx]) for row in data_rows])
        except (ValueError, IndexError) as exc:
            raise SchemaError(f"{path.name}: non-numeric data in column {want!r}") from exc
    return table


def _series(table: dict[str, np.ndarray], key_column: str):
    keys = table[key_column]
    for value in sorted(set(keys.tolist())):
        yield value, keys == value


def build_figure(recipe: FigureRecipe, table: dict[str, np.ndarray]):
    """Assemble the matplotlib Figure for one recipe."""
    fig, ax = plt.subplots(figsize=(6.4, 4.4))

    if recipe.figure_id == "scaling":
        for i, (delta, mask) in enumerate(_series(table, "delta")):
            lengths = table["L"][mask]
            values = table["scaled_log"][mask]
            zeta = table["zeta"][mask][0]
            ax.plot(lengths, values, _MARKERS[i % len(_MARKERS)], ms=5,
                    label=rf"$\delta = {delta:g}$")
            # reference decay with the tabulated rate, anchored by least squares
            intercept = np.mean(values + lengths / zeta)
            ax.plot(lengths, intercept - lengths / zeta, "-", lw=1, alpha=0.6,
                    color=ax.lines[-1].get_color())

    elif recipe.figure_id == "conc-dimer":
        numeric_key = next(k for k in table if k.startswith("C_numeric"))
        ax.plot(table["delta"], table["C_asymptotic"], "-", lw=1.5,
                label="asymptotic")
        thin = slice(None, None, max(1, len(table["delta"]) // 60))
        ax.plot(table["delta"][thin], table[numeric_key][thin], "o", ms=4,
                mfc="none", label="numeric (finite chain)")

    elif recipe.figure_id == "conc-endbond":
        for i, (length, mask) in enumerate(_series(table, "L")):
            ax.plot(table["lambda"][mask], table["C"][mask],
                    "-" + _MARKERS[i % len(_MARKERS)], ms=3, lw=1,
                    label=f"L = {int(length)}")

    elif recipe.figure_id == "x-comparison":
        ax.plot(table["lambda"], np.abs(table["x_numeric"]), "o", ms=4,
                mfc="none", label="numeric")
        ax.plot(table["lambda"], np.abs(table["x_small_lambda"]), "--", lw=1.2,
                label="weak-coupling law")
        ax.plot(table["lambda"], np.abs(table["x_large_lambda"]), "-.", lw=1.2,
                label="strong-coupling law")
        ax.plot(table["lambda"], np.abs(table["x_interpolated"]), "-", lw=1.2,
                label="interpolant")
        ax.set_ylim(0.0, 0.55)

    elif recipe.figure_id == "gaps":
        for i, (lam, mask) in enumerate(_series(table, "lambda")):
            color = f"C{i}"
            ax.plot(table["L"][mask], table["gap_numeric"][mask], "D", ms=5,
                    mfc="none", color=color, label=rf"numeric, $\lambda = {lam:g}$")
            ax.plot(table["L"][mask], table["gap_approx"][mask], "-", lw=1.2,
                    color=color, label=rf"algebraic law, $\lambda = {lam:g}$")

    elif recipe.figure_id == "fidelity-T":
        for i, (lam, mask) in enumerate(_series(table, "lambda")):
            ax.plot(table["T_over_J"][mask], table["f"][mask], "-", lw=1.4,
                    label=rf"$\lambda = {lam:g}$")

    else:  # pragma: no cover - recipe ids are closed
        raise ValueError(f"no renderer for {recipe.figure_id!r}")

    if "classical_threshold" in recipe.overlays:
        ax.axhline(CLASSICAL_THRESHOLD, ls="--", lw=1.2, color="k",
                   label="classical threshold f = 2/3")

    ax.set_xscale(recipe.xscale)
    ax.set_yscale(recipe.yscale)
    ax.set_xlabel(recipe.xlabel)
    ax.set_ylabel(recipe.ylabel)
    ax.set_title(recipe.title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render(figure_id: str, data_dir: Path, out_dir: Path,
           formats: tuple[str, ...] = ("png", "svg")) -> list[Path]:
    """Render one figure id from ``data_dir`` CSVs into ``out_dir``.

    Returns the written paths.  Outputs carry no timestamps, so re-rendering
    identical inputs is byte-stable.
    """
    if figure_id not in RECIPES:
        raise ValueError(f"unknown figure id {figure_id!r}")
    recipe = RECIPES[figure_id]
    table = load_table(Path(data_dir) / recipe.input_name, recipe.columns)
    fig = build_figure(recipe, table)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    try:
        for fmt in formats:
            target = out_dir / f"{figure_id}.{fmt}"
            metadata = {"Date": None} if fmt == "svg" else None
            fig.savefig(target, dpi=150, metadata=metadata)
            written.append(target)
    finally:
        plt.close(fig)
    return written


def render_all(data_dir: Path, out_dir: Path,
               formats: tuple[str, ...] = ("png", "svg")) -> list[Path]:
    written = []
    for figure_id in RECIPES:
        written.extend(render(figure_id, data_dir, out_dir, formats))
    return written

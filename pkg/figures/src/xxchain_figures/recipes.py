"""Figure recipes: one per sweep CSV emitted by the xxchain CLI.

A recipe names its input file, the columns it expects (the CSV schema is the
only contract with the producer; nothing is imported from it), axis labels
and scales, and reference overlays.  Column entries may be exact names or
prefixes ending in '*' (the dimer concurrence sweep embeds its chain length
in a column name).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    input_name: str
    columns: tuple[str, ...]
    xlabel: str
    ylabel: str
    title: str
    xscale: str = "linear"
    yscale: str = "linear"
    overlays: tuple[str, ...] = field(default_factory=tuple)


RECIPES: dict[str, FigureRecipe] = {
    "scaling": FigureRecipe(
        figure_id="scaling",
        input_name="scaling.csv",
        columns=("delta", "L", "x_abs", "x_inf", "scaled_log", "zeta"),
        xlabel="L",
        ylabel=r"$\ln[(x_\infty - |x_L|)/L^2]$",
        title="Approach of the end-to-end correlation to its asymptote",
        overlays=("reference_decay_lines",),
    ),
    "conc-dimer": FigureRecipe(
        figure_id="conc-dimer",
        input_name="conc-dimer.csv",
        columns=("delta", "C_asymptotic", "C_numeric_L*"),
        xlabel=r"$\delta$",
        ylabel=r"$C_{1,L}$",
        title="End-to-end concurrence of the alternating-bond chain",
    ),
    "conc-endbond": FigureRecipe(
        figure_id="conc-endbond",
        input_name="conc-endbond.csv",
        columns=("L", "lambda", "x", "C"),
        xlabel=r"$\lambda$",
        ylabel=r"$C_{1,L}$",
        title="End-to-end concurrence of the end-bond chain",
        xscale="log",
    ),
    "x-comparison": FigureRecipe(
        figure_id="x-comparison",
        input_name="x-comparison.csv",
        columns=("lambda", "x_numeric", "x_small_lambda", "x_large_lambda",
                 "x_interpolated"),
        xlabel=r"$\lambda$",
        ylabel=r"$|x|$",
        title="End-to-end correlation: numerics vs limiting laws",
    ),
    "gaps": FigureRecipe(
        figure_id="gaps",
        input_name="gaps.csv",
        columns=("lambda", "L", "gap_numeric", "gap_approx"),
        xlabel="L",
        ylabel=r"$\Delta_L / J$",
        title="Energy gap of the end-bond chain",
        xscale="log",
        yscale="log",
    ),
    "fidelity-T": FigureRecipe(
        figure_id="fidelity-T",
        input_name="fidelity-T.csv",
        columns=("lambda", "T_over_J", "x", "f"),
        xlabel="T / J",
        ylabel="f",
        title="Teleportation fidelity vs temperature",
        overlays=("classical_threshold",),
    ),
}

FIGURE_IDS = tuple(RECIPES)

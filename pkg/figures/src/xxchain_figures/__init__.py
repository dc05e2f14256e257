"""Figure rendering for xxchain sweep CSVs (consumes only the CSV contract)."""

from .recipes import FIGURE_IDS, RECIPES, FigureRecipe
from .render import SchemaError, build_figure, load_table, render, render_all

__version__ = "0.1.0"

__all__ = [
    "FIGURE_IDS",
    "FigureRecipe",
    "RECIPES",
    "SchemaError",
    "build_figure",
    "load_table",
    "render",
    "render_all",
    "__version__",
]

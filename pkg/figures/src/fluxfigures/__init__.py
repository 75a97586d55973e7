"""Static figure rendering for fluxlattice experiment outputs."""

__version__ = "0.1.0"

from .recipes import RECIPES, FigureRecipe
from .render import MissingColumnError, EmptyTableError, render

__all__ = ["RECIPES", "FigureRecipe", "MissingColumnError", "EmptyTableError", "render"]

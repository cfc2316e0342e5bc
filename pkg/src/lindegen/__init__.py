"""Linear degenerations of type A flag varieties as quiver Grassmannians."""

__version__ = "0.1.0"

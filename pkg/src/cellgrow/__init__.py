"""Growth, metrics and Folner sets of coset spaces G/G0 of finitely generated groups."""

__version__ = "0.1.0"

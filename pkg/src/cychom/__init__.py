"""cychom: exact cyclic homology, current-algebra cohomology and q-characters."""

__version__ = "0.1.0"

"""Fixed points of non-coprime actions: complements, cocycles and verification campaigns."""

__version__ = "0.1.0"

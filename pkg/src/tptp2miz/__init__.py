"""Translation toolkit: TPTP problems and TSTP refutations to
self-contained Mizar-style articles."""

__version__ = "0.1.0"

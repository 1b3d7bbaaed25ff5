"""canonforge: canonical systems and Fredholm determinants for completed L-functions."""

__version__ = "0.1.0"

"""Exact computations with the Cohen-Wales representation of the CGW algebra of type D_n."""

__version__ = "0.1.0"

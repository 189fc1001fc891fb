"""Commuting graphs, left paths and knit degree of finite transformation semigroups."""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402,F401

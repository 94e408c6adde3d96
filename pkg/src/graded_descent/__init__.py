"""Exact graded algebra in characteristic p: Russell-type forms of the additive
group, their trivialization, higher-derivation class groups and tame descent."""

from __future__ import annotations

__version__ = "0.1.0"

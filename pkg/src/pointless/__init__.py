"""Pointless-curve toolkit: construction, verification, search, and
nonexistence arguments for curves without rational points over small
finite fields."""

__version__ = "1.0.0"

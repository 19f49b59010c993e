"""Rigorous verification of explicit prime plus almost-prime representations."""

from __future__ import annotations

__version__ = "0.1.0"

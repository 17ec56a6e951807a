"""Exact twisted GW, DT and GV invariants of the Fano threefolds V5 and V22."""

__version__ = "0.1.0"

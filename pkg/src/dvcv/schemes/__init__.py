"""Heralding schemes: single-photon (cat, truncated cat, psi input) and two-photon."""

"""Reproduce, verify and use the ECCFROG522PP prime-field elliptic curve."""

__version__ = "0.1.0"

"""Symbolic and numerical checks of gauge and Galilean covariance for Schrödinger-type equations."""

__version__ = "0.1.0"

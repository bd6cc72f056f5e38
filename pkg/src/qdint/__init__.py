"""Quantum interference in atomic systems: master equations, spectra, dressed states and optical coherence."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.0.0"

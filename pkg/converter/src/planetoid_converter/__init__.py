"""Planetoid citation-network distribution converter."""

from .convert import (
    ConversionError,
    ConversionReport,
    PlanetoidBundle,
    assemble,
    convert,
    extract_edges,
    read_bundle,
)

__version__ = "0.1.0"

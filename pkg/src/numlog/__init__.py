"""Lossless log compression by numeric token parsing."""
from .errors import (
    BackendUnavailable, BadMagic, CorruptContainer, FingerprintMismatch,
    NumlogError, QueueUnderflow,
)
from .patterns import PatternRegistry, PatternRule
from .pipeline import (
    Config, Metrics, compress, decompress, inspect, iter_chunks, preprocess,
    preprocess_invert,
)

__version__ = "0.1.0"

__all__ = [
    "BackendUnavailable", "BadMagic", "Config", "CorruptContainer",
    "FingerprintMismatch", "Metrics", "NumlogError", "PatternRegistry",
    "PatternRule", "QueueUnderflow", "compress", "decompress", "inspect",
    "iter_chunks", "preprocess", "preprocess_invert",
]

"""Two-phase search-based unit-test generation for a small object-oriented language."""

from pathlib import Path

__version__ = "0.1.0"

CORPUS_DIR = Path(__file__).parent / "corpus"

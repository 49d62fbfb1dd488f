"""Level and Gorenstein h-vectors via Macaulay inverse systems."""

__version__ = "0.1.0"

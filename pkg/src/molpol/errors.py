"""Exception types shared across the package.

The CLI maps these onto its exit codes: DataError -> 3, NumericalError
(including DegenerateSpectraError) -> 4.
"""

from __future__ import annotations


class DataError(Exception):
    """Malformed dataset input: bad file, bad units, inconsistent metadata."""


class NumericalError(Exception):
    """A computation could not produce a trustworthy result."""


class DegenerateSpectraError(NumericalError, ValueError):
    """Magic-frequency search given two spectra that are identical everywhere."""

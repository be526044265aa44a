"""Eigensystem of the Helmholtz volume potential (Newtonian operator) on a ball.

The eigenvalues come from the complex roots of a Bessel-type characteristic
function, one family per spherical-harmonic degree ``n``. Submodules:

special         spherical Bessel/Hankel, Legendre, harmonics, Gauss rules
characteristic  coupling term and characteristic function
rootfinder      grid-seeded Newton search in the complex plane
eigensystem     eigenvalues, normalised eigenfunctions, Gram matrices
oracle          independent checks against the volume operator
asymptotics     large-degree formulas and the comparison harness
reference       published reference values and their reproduction
checks          named checks used by the command line
"""

from .characteristic import ProblemParams, char_fn, coupling_term
from .eigensystem import EigenMode, make_mode, modes_from_roots, zeta_from_mu, lambda_from_mu
from .errors import (
    BallSpectraError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    ParameterError,
    SingularArgumentError,
)
from .rootfinder import RootOptions, RootRecord, SearchRegion, scan_roots

__version__ = "0.1.0"

__all__ = [
    "ProblemParams",
    "char_fn",
    "coupling_term",
    "EigenMode",
    "make_mode",
    "modes_from_roots",
    "zeta_from_mu",
    "lambda_from_mu",
    "RootOptions",
    "RootRecord",
    "SearchRegion",
    "scan_roots",
    "BallSpectraError",
    "ConvergenceError",
    "DegenerateError",
    "DomainError",
    "ParameterError",
    "SingularArgumentError",
    "__version__",
]

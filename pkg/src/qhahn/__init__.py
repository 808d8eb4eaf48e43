"""Generalized trivariate q-Hahn polynomials and their generating functions.

Submodules:

* :mod:`qhahn.qcore` -- q-shifted factorials, q-binomials, r-phi-s series
* :mod:`qhahn.fps` -- exact truncated power series in one variable
* :mod:`qhahn.polynomials` -- Cauchy, Al-Salam-Carlitz, Hahn and Psi_n families
* :mod:`qhahn.operators` -- theta_xy, L(a, b; theta) and the q-difference equation
* :mod:`qhahn.identities` -- verifiers for the generating-function identities
* :mod:`qhahn.cli` -- the ``qhahn`` command
"""

from .errors import (DomainViolation, InexactOperation, InvalidLowerParameter, NonConvergent,
                     QSeriesError, SingularPoint)
from .fps import TPS, TruncatedPowerSeries
from .polynomials import (FamilyId, al_salam_carlitz, cauchy_p, evaluate_family, f_trivariate,
                          hahn1, hahn2, psi_scaled, psi_trivariate)
from .qcore import (Mode, ParameterPoint, PhiSpec, QContext, phi, qbinomial, qpoch_finite,
                    qpoch_infinite)

__version__ = "0.1.0"

__all__ = [
    "DomainViolation", "FamilyId", "InexactOperation", "InvalidLowerParameter", "Mode",
    "NonConvergent", "ParameterPoint", "PhiSpec", "QContext", "QSeriesError", "SingularPoint",
    "TPS", "TruncatedPowerSeries", "al_salam_carlitz", "cauchy_p", "evaluate_family",
    "f_trivariate", "hahn1", "hahn2", "phi", "psi_scaled", "psi_trivariate", "qbinomial",
    "qpoch_finite", "qpoch_infinite",
]

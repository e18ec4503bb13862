"""Exact computations in topological full groups of minimal subshifts."""

from .element import FullGroupElement, InfiniteOrderFlag, compose, from_code, identity, order, shift
from .errors import FullGroupError
from .generators import gamma_u, phi_u, sigma_u, tau_u
from .ktheory import K0Presentation, compute_sgn_finite, decompose, sgn
from .measure import first_return, index, measure
from .quadreal import QuadReal
from .subshift import (ClopenSet, SFTSystem, SturmianSystem, SubstitutionSystem, cylinder,
                       parse_cylinder)

__version__ = "0.1.0"

"""Semi-discrete linear Weingarten surfaces.

Weierstrass-type construction of semi-discrete minimal/maximal surfaces in
R^3 / R^{2,1} and BrLW/BiLW surfaces in H^3 / S^{2,1}, with discrete
curvatures, parallel families and singularity classification.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"

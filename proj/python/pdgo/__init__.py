"""Primal-dual gradient optimization with contraction-based step design.

The heavy lifting lives in the compiled extension ``pdgo._pdgo``; this
package re-exports its public surface.
"""

from ._pdgo import *  # noqa: F401,F403
from ._pdgo import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"

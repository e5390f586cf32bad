"""Two-site sweep kernels.

The hot loop of every global-operator application is the sweep of 2x2
block updates across the site chain.  A compiled extension provides it
when built; a vectorized numpy fallback is selected otherwise.  Set
``IPSZETA_KERNEL=python`` to force the fallback, or ``=compiled`` to turn
a missing extension into an import error.
"""

import os

from ._numpy_sweep import sweep as numpy_sweep

try:
    from ._sweep import sweep as compiled_sweep
except ImportError:
    compiled_sweep = None

_choice = os.environ.get("IPSZETA_KERNEL", "").strip().lower()
if _choice == "compiled" and compiled_sweep is None:
    raise ImportError("IPSZETA_KERNEL=compiled but the extension is not built")

if _choice == "python" or compiled_sweep is None:
    sweep = numpy_sweep
    BACKEND = "python"
else:
    sweep = compiled_sweep
    BACKEND = "compiled"

__all__ = ["sweep", "numpy_sweep", "compiled_sweep", "BACKEND"]

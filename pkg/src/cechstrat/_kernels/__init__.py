"""Kernel backend selection.

The compiled extension is preferred when importable; set
``CECHSTRAT_KERNELS=pure`` (or ``=compiled``) to force a backend at import
time.  Both backends expose the same four operations with identical
semantics and deterministic results.
"""

from __future__ import annotations

import os

from . import _pure

backends = {"pure": _pure}
try:
    from . import _ckernels

    backends["compiled"] = _ckernels
except ImportError:
    _ckernels = None

_choice = os.environ.get("CECHSTRAT_KERNELS", "auto").strip().lower() or "auto"
if _choice == "auto":
    _active = backends.get("compiled", _pure)
elif _choice in backends:
    _active = backends[_choice]
else:
    raise ImportError(
        f"CECHSTRAT_KERNELS={_choice!r} not available; known backends: {sorted(backends)}"
    )

BACKEND = "compiled" if _active is not _pure else "pure"

meb = _active.meb
subset_meb_radii = _active.subset_meb_radii
canonical_masks = _active.canonical_masks
surjection_witness = _active.surjection_witness

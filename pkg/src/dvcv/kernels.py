"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when it is
not built. Set ``DVCV_KERNELS=python`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("DVCV_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

displacement_matrix = _impl.displacement_matrix
beam_splitter_blocks = _impl.beam_splitter_blocks
apply_beam_splitter = _impl.apply_beam_splitter


def get_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")

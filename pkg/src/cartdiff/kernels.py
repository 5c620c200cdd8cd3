"""Kernel backend selection.

The compiled extension is used when it imports; ``CARTDIFF_PURE_PYTHON=1``
forces the plain-Python kernels.
"""
import os

_names = (
    "BITS", "FIELD", "MAX_DEGREE", "BACKEND", "unit", "exponents", "pack", "key_degree",
    "degree", "block_degree", "padd", "pscale", "pmul", "pshift", "prename", "psubst",
    "pdiff", "pfilter_block", "peval", "Dual", "tag_of", "dadd", "dneg", "dmul", "dpow",
    "dsin", "dcos", "dexp", "dtangent", "dprimal",
)


def _load(pure: bool):
    if not pure:
        try:
            from . import _speedups as mod
            return mod
        except ImportError:
            pass
    from . import _purepy as mod
    return mod


_backend = _load(os.environ.get("CARTDIFF_PURE_PYTHON", "") not in ("", "0"))
globals().update({n: getattr(_backend, n) for n in _names})


def backend_module(name: str):
    """Return the kernel module called ``name`` ("python" or "compiled")."""
    if name == "python":
        from . import _purepy
        return _purepy
    if name == "compiled":
        from . import _speedups
        return _speedups
    raise ValueError(f"unknown backend {name!r}")

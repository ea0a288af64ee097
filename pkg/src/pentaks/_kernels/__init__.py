"""Scan kernels with a compiled core and a pure numpy fallback.

Both backends expose the same surface:

    family_spectra(a, b, mu, nu) -> (overlap_sum, eigenvalues)

evaluated elementwise over flat float64 parameter arrays, eigenvalues
descending with shape (n, 3).  The compiled Cython module is preferred
when it imported cleanly; set PENTAKS_BACKEND=python or PENTAKS_BACKEND=
cython to force a choice.
"""

import os

from . import _pure

_BACKENDS = {"python": _pure}

try:
    from . import _fast

    _BACKENDS["cython"] = _fast
except ImportError:
    _fast = None

DEFAULT_BACKEND = "cython" if "cython" in _BACKENDS else "python"


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_backend(name: str | None = None):
    """Resolve a backend module by name, env var, or default."""
    resolved = name or os.environ.get("PENTAKS_BACKEND") or DEFAULT_BACKEND
    try:
        return _BACKENDS[resolved]
    except KeyError:
        raise ValueError(
            f"unknown backend {resolved!r}; available: {available_backends()}"
        ) from None


def backend_name(name: str | None = None) -> str:
    module = get_backend(name)
    return "cython" if module is _BACKENDS.get("cython") else "python"

"""Kernel backend selection.

The hot numeric loops in :mod:`sectorial._kernels` exist twice: a numba
``@njit`` version and a pure-numpy fallback.  Selection order:

* ``SECTORIAL_BACKEND=numpy`` forces the fallback,
* ``SECTORIAL_BACKEND=numba`` requires numba (ImportError if missing),
* unset or ``auto``: numba when importable, numpy otherwise.

numba is imported lazily on first kernel use so that CLI commands which
never touch a hot loop do not pay the import.  ``SECTORIAL_THREADS`` caps
numba's thread pool; all shipped kernels are serial, so the cap can never
change numeric results.
"""

import os

_state = {"resolved": False, "use_numba": False}


def _resolve():
    mode = os.environ.get("SECTORIAL_BACKEND", "auto").strip().lower()
    if mode not in ("auto", "numba", "numpy"):
        raise ValueError(f"SECTORIAL_BACKEND must be auto|numba|numpy, got {mode!r}")
    if mode == "numpy":
        _state["use_numba"] = False
    else:
        try:
            import warnings

            import numba

            threads = os.environ.get("SECTORIAL_THREADS")
            if threads:
                # shipped kernels are serial, so the cap cannot change any
                # result; applying it still bounds worker startup
                n = max(1, int(threads))
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
            _state["use_numba"] = True
        except ImportError:
            if mode == "numba":
                raise
            _state["use_numba"] = False
    _state["resolved"] = True


def use_numba():
    """True when the numba kernel path is active."""
    if not _state["resolved"]:
        _resolve()
    return _state["use_numba"]


def force_backend(name):
    """Override backend at runtime ('numba', 'numpy' or 'auto'). For tests
    and benchmarks; returns the previously active setting."""
    prev = "numba" if (_state["resolved"] and _state["use_numba"]) else "numpy"
    if name == "auto":
        _state["resolved"] = False
        return prev
    if name == "numba":
        import numba  # noqa: F401  (fail loudly if unavailable)

        _state["use_numba"] = True
    elif name == "numpy":
        _state["use_numba"] = False
    else:
        raise ValueError(name)
    _state["resolved"] = True
    return prev

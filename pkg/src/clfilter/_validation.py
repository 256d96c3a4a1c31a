"""Input checks shared by the estimator front end."""

import numbers

import numpy as np


def check_frequencies(X, *, name="X"):
    """Return ``X`` as a 1-D float array of strictly increasing positive frequencies.

    Accepts a scalar, a 1-D array or a single-column 2-D array (the shape
    scikit-learn transformers are usually handed).
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    elif arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"{name} must have a single frequency column, got shape {arr.shape}")
        arr = arr[:, 0]
    elif arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D or a single column, got {arr.ndim} dimensions")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite frequencies")
    if np.any(arr <= 0):
        raise ValueError(f"{name} frequencies must be > 0 Hz")
    if arr.size > 1 and np.any(np.diff(arr) <= 0):
        raise ValueError(f"{name} frequencies must be strictly increasing")
    return arr


def check_positive(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)

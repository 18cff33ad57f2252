"""Riemann zeta on the critical line by Borwein's accelerated eta series."""

from __future__ import annotations

import math

import numpy as np

from .exceptions import CapacityError, DomainError

T_CAP = 500.0
_RHO = math.log(3.0 + math.sqrt(8.0))


def borwein_terms(t_abs: float, precision_target: float) -> int:
    """Terms needed so the Borwein remainder bound at ``1/2 + it`` is below ``precision_target``.

    The bound is ``3 sqrt(cosh(pi t)/pi) / ((sqrt 2 - 1)(3 + sqrt 8)^n)``,
    evaluated in log space so large ``t`` does not overflow.
    """
    log_cosh = math.pi * t_abs + math.log1p(math.exp(-2.0 * math.pi * t_abs)) - math.log(2.0)
    log_bound = math.log(3.0) + 0.5 * (log_cosh - math.log(math.pi)) - math.log(math.sqrt(2.0) - 1.0)
    return max(8, math.ceil((log_bound - math.log(precision_target)) / _RHO))


def _borwein_weights(n: int) -> np.ndarray:
    # (d_k - d_n)/d_n for k < n, with d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    i = np.arange(n + 1, dtype=np.float64)
    log_terms = np.array(
        [math.lgamma(n + k) - math.lgamma(n - k + 1) - math.lgamma(2 * k + 1) for k in range(n + 1)]
    ) + i * math.log(4.0)
    log_d = np.logaddexp.accumulate(log_terms)
    return np.expm1(log_d[:n] - log_d[n])


def zeta_critical_many(t: np.ndarray, precision_target: float = 1e-12) -> np.ndarray:
    """Vectorised :func:`zeta_critical` over an array of ``t`` values."""
    t = np.asarray(t, dtype=np.float64)
    if not precision_target > 0:
        raise DomainError("precision_target must be positive")
    if t.size and not np.all(np.isfinite(t)):
        raise DomainError("t must be finite")
    t_abs = float(np.max(np.abs(t))) if t.size else 0.0
    if t_abs > T_CAP:
        raise CapacityError(f"|t| = {t_abs} exceeds cap {T_CAP}")
    n = borwein_terms(t_abs, precision_target)
    k = np.arange(n, dtype=np.float64)
    signed = _borwein_weights(n) * np.where(k % 2 == 0, 1.0, -1.0) / np.sqrt(k + 1.0)
    logk = np.log(k + 1.0)
    s = 0.5 + 1j * t
    out = np.empty(t.shape, dtype=complex)
    flat_t, flat_out, flat_s = t.reshape(-1), out.reshape(-1), s.reshape(-1)
    for start in range(0, flat_t.size, 512):
        tt = flat_t[start : start + 512]
        eta = -(np.exp(-1j * np.outer(tt, logk)) @ signed)
        flat_out[start : start + 512] = eta / (1.0 - 2.0 ** (1.0 - flat_s[start : start + 512]))
    return out


def zeta_critical(t: float, precision_target: float = 1e-12) -> complex:
    """``zeta(1/2 + it)`` for ``|t| <= 500``.

    Raises:
        CapacityError: if ``|t|`` exceeds the cap.
        DomainError: for non-finite ``t`` or non-positive ``precision_target``.
    """
    return complex(zeta_critical_many(np.array([float(t)]), precision_target)[0])

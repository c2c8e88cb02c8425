"""Dense matrix kernels for the algebraic method.

Three matrix flavours are used, all plain numpy arrays:

* count matrices: ``uint64``, exact, overflow is an error;
* distance matrices: ``float64`` holding non-negative integers, with
  ``inf`` as the unreachable sentinel (absorbing under addition);
* real matrices: ``float64`` dependencies.

Integer products are computed in uint64 and guarded by a float64 shadow
computation: when the shadow says a result may exceed 2**62 the product
is redone with Python integers and rejected if it really leaves the
uint64 range.
"""

from __future__ import annotations

import numpy as np

from .errors import CountOverflowError

INF = np.inf
U64_MAX = 2**64 - 1
_SAFE = 2.0**62
# elements per temporary in the row-blocked min-plus kernels
_BLOCK_ELEMS = 1 << 21


def _guard(estimate: np.ndarray, fast, exact) -> np.ndarray:
    if estimate.size == 0 or float(estimate.max()) < _SAFE:
        return fast()
    big = exact()
    if big.size and max(int(x) for x in big.flat) > U64_MAX:
        raise CountOverflowError("shortest-path count exceeds 2**64 - 1")
    return big.astype(np.uint64)


def _is_int(x: np.ndarray) -> bool:
    return np.issubdtype(x.dtype, np.integer)


def _row_blocks(rows: int, inner: int, cols: int):
    step = max(1, _BLOCK_ELEMS // max(1, inner * cols))
    for lo in range(0, rows, step):
        yield slice(lo, min(rows, lo + step))


def count_identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint64)


def min_plus_identity(n: int) -> np.ndarray:
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0.0)
    return d


def mat_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Ordinary matrix product.  Integer operands give an overflow-checked uint64 result."""
    if x.shape[1] != y.shape[0]:
        raise ValueError(f"shape mismatch {x.shape} @ {y.shape}")
    if not (_is_int(x) and _is_int(y)):
        return np.asarray(x, dtype=np.float64) @ np.asarray(y, dtype=np.float64)
    x = x.astype(np.uint64, copy=False)
    y = y.astype(np.uint64, copy=False)
    est = x.astype(np.float64) @ y.astype(np.float64)
    return _guard(est, lambda: x @ y, lambda: x.astype(object) @ y.astype(object))


def min_plus(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Distance product: ``z[i, j] = min_k x[i, k] + y[k, j]``."""
    if x.shape[1] != y.shape[0]:
        raise ValueError(f"shape mismatch {x.shape} * {y.shape}")
    rows, inner, cols = x.shape[0], x.shape[1], y.shape[1]
    z = np.full((rows, cols), INF)
    if inner == 0:
        return z
    for blk in _row_blocks(rows, inner, cols):
        z[blk] = (x[blk, :, None] + y[None, :, :]).min(axis=1)
    return z


def min_plus_closure(x: np.ndarray) -> np.ndarray:
    """Square a zero-diagonal distance matrix under min-plus until it stops changing."""
    d = x
    while True:
        nxt = min_plus(d, d)
        if np.array_equal(nxt, d):
            return d
        d = nxt


def counting_min_plus(x, cx, y, cy) -> tuple[np.ndarray, np.ndarray]:
    """Min-plus product that also counts minimising combinations.

    ``cz[i, j]`` is the sum of ``cx[i, k] * cy[k, j]`` over every ``k``
    attaining ``z[i, j]``; it is 0 where ``z[i, j]`` is infinite.
    """
    if x.shape != cx.shape or y.shape != cy.shape or x.shape[1] != y.shape[0]:
        raise ValueError("inconsistent operand shapes")
    rows, inner, cols = x.shape[0], x.shape[1], y.shape[1]
    z = np.full((rows, cols), INF)
    cz = np.zeros((rows, cols), dtype=np.uint64)
    cx = cx.astype(np.uint64, copy=False)
    cy = cy.astype(np.uint64, copy=False)
    cyf = cy.astype(np.float64)
    for blk in _row_blocks(rows, inner, cols):
        t = x[blk, :, None] + y[None, :, :]
        zb = t.min(axis=1)
        tight = (t == zb[:, None, :]) & np.isfinite(zb)[:, None, :]
        a = cx[blk, :, None]
        est = (tight * (a.astype(np.float64) * cyf[None])).sum(axis=1)
        cz[blk] = _guard(
            est,
            lambda: np.where(tight, a * cy[None], np.uint64(0)).sum(axis=1, dtype=np.uint64),
            lambda: np.where(tight, a.astype(object) * cy.astype(object)[None], 0).sum(axis=1),
        )
        z[blk] = zb
    return z, cz


def elementwise(x: np.ndarray, y: np.ndarray, op: str) -> np.ndarray:
    """Entrywise ``mult``, ``add`` or ``div``.

    ``div`` always yields float64 with 0/0 defined as 0; a nonzero
    numerator over a zero denominator raises ZeroDivisionError.  Integer
    ``mult``/``add`` stay in uint64 and are overflow-checked.
    """
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {y.shape}")
    if op == "div":
        xf, yf = x.astype(np.float64), y.astype(np.float64)
        zero = yf == 0
        if np.any(zero & (xf != 0)):
            raise ZeroDivisionError("nonzero entry divided by zero")
        out = np.zeros_like(xf)
        np.divide(xf, yf, out=out, where=~zero)
        return out
    if op not in ("mult", "add"):
        raise ValueError(f"unknown op {op!r}")
    if _is_int(x) and _is_int(y):
        xu, yu = x.astype(np.uint64), y.astype(np.uint64)
        xf, yf = xu.astype(np.float64), yu.astype(np.float64)
        if op == "mult":
            return _guard(xf * yf, lambda: xu * yu, lambda: xu.astype(object) * yu.astype(object))
        return _guard(xf + yf, lambda: xu + yu, lambda: xu.astype(object) + yu.astype(object))
    xf, yf = x.astype(np.float64), y.astype(np.float64)
    return xf * yf if op == "mult" else xf + yf


def mask(x: np.ndarray, d: np.ndarray, level) -> np.ndarray:
    """Copy of ``x`` with entries zeroed wherever ``d != level``."""
    return np.where(d == level, x, np.zeros((), dtype=x.dtype))


def level_indicator(d: np.ndarray, level) -> np.ndarray:
    return (d == level).astype(np.uint64)

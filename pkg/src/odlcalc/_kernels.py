"""Dense truncated polynomial kernels.

A polynomial in ``nvars`` variables truncated above total degree ``maxdeg``
is a flat coefficient vector indexed by the monomial basis (graded, then
lexicographic).  The product kernel walks a precomputed table of index
pairs whose degrees add up to at most ``maxdeg``.

The int64 product runs under numba when available; setting the environment
variable ``ODLCALC_DISABLE_NUMBA=1`` selects the pure numpy path.  Inputs
whose coefficients could overflow int64 always take the exact Python-int
(object dtype) path, so results never depend on the backend.
"""
from functools import lru_cache
from itertools import combinations_with_replacement
import os

import numpy as np

_DISABLED = os.environ.get("ODLCALC_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

_INT64_SAFE = 2 ** 62


def backend():
    return "numba" if HAVE_NUMBA else "numpy"


@lru_cache(maxsize=64)
def monomial_basis(nvars, maxdeg):
    """Exponent matrix (M x nvars) and per-degree start offsets."""
    rows = []
    offsets = [0]
    for d in range(maxdeg + 1):
        block = []
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            block.append(tuple(e))
        block.sort(reverse=True)
        rows.extend(block)
        offsets.append(len(rows))
    exps = np.array(rows, dtype=np.int64).reshape(len(rows), nvars)
    return exps, tuple(offsets)


@lru_cache(maxsize=64)
def monomial_index(nvars, maxdeg):
    exps, _ = monomial_basis(nvars, maxdeg)
    return {tuple(int(x) for x in row): i for i, row in enumerate(exps)}


@lru_cache(maxsize=64)
def shift_table(nvars, maxdeg):
    """shift[v, i] = index of monomial i times x_v, or -1 past maxdeg."""
    exps, _ = monomial_basis(nvars, maxdeg)
    index = monomial_index(nvars, maxdeg)
    out = np.full((nvars, len(exps)), -1, dtype=np.int64)
    for i, row in enumerate(exps):
        base = [int(x) for x in row]
        if sum(base) == maxdeg:
            continue
        for v in range(nvars):
            base[v] += 1
            out[v, i] = index[tuple(base)]
            base[v] -= 1
    return out


def _keys(exps, maxdeg):
    radix = (maxdeg + 1) ** np.arange(exps.shape[1], dtype=np.int64)
    return exps @ radix


@lru_cache(maxsize=4096)
def pair_block(nvars, maxdeg, da, db):
    """(i, j, k) for monomials of degrees da and db with product k."""
    exps, offsets = monomial_basis(nvars, maxdeg)
    keys = _keys(exps, maxdeg)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    ra = np.arange(offsets[da], offsets[da + 1], dtype=np.int64)
    rb = np.arange(offsets[db], offsets[db + 1], dtype=np.int64)
    ga, gb = np.meshgrid(ra, rb, indexing="ij")
    ga, gb = ga.ravel(), gb.ravel()
    gc = order[np.searchsorted(sorted_keys, keys[ga] + keys[gb])]
    return ga, gb, gc


@lru_cache(maxsize=4096)
def pair_table(nvars, maxdeg, degrees_a=None, degrees_b=None):
    """All (i, j, k) with monomial_i * monomial_j = monomial_k, deg k <= maxdeg,
    optionally restricted to the given degrees of the two factors."""
    degrees_a = tuple(range(maxdeg + 1)) if degrees_a is None else degrees_a
    degrees_b = tuple(range(maxdeg + 1)) if degrees_b is None else degrees_b
    ia, ib, ic = [], [], []
    for da in degrees_a:
        for db in degrees_b:
            if da + db <= maxdeg:
                a, b, c = pair_block(nvars, maxdeg, da, db)
                ia.append(a)
                ib.append(b)
                ic.append(c)
    if not ia:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    return np.concatenate(ia), np.concatenate(ib), np.concatenate(ic)


def support_degrees(vec, nvars, maxdeg):
    _, offsets = monomial_basis(nvars, maxdeg)
    nz = np.flatnonzero(vec)
    if not len(nz):
        return ()
    degs = np.searchsorted(np.asarray(offsets), nz, side="right") - 1
    return tuple(np.unique(degs).tolist())


if HAVE_NUMBA:
    @njit(cache=True)
    def _product_int64(a, b, ia, ib, ic, out):
        for p in range(ia.shape[0]):
            x = a[ia[p]]
            if x != 0:
                y = b[ib[p]]
                if y != 0:
                    out[ic[p]] += x * y
        return out
else:
    _product_int64 = None


def _product_numpy(a, b, ia, ib, ic, out):
    np.add.at(out, ic, a[ia] * b[ib])
    return out


def _as_int64(vec):
    """int64 copy of an integer vector, or None if some entry does not fit."""
    if vec.dtype == np.int64:
        return vec
    try:
        return np.array(vec.tolist(), dtype=np.int64)
    except OverflowError:
        return None


def as_int64_or_object(vec):
    vec = np.asarray(vec)
    out = _as_int64(vec)
    return out if out is not None else np.asarray(vec, dtype=object)


def add_exact(a, b):
    """a + b, promoting to Python ints when int64 could overflow."""
    if a.dtype == np.int64 and b.dtype == np.int64:
        if _l1(a) + _l1(b) < _INT64_SAFE:
            return a + b
    return np.asarray(a, dtype=object) + np.asarray(b, dtype=object)


def _l1(vec):
    return float(np.abs(vec).sum(dtype=np.float64))


def product(a, b, nvars, maxdeg):
    """Truncated product of two integer coefficient vectors (object dtype out)."""
    return product_raw(a, b, nvars, maxdeg).astype(object)


def product_raw(a, b, nvars, maxdeg):
    """Like ``product`` but returns int64 whenever the result provably fits."""
    a = np.asarray(a)
    b = np.asarray(b)
    size = len(a)
    a64 = _as_int64(a)
    b64 = _as_int64(b) if a64 is not None else None
    if a64 is not None and b64 is not None:
        ia, ib, ic = pair_table(nvars, maxdeg, support_degrees(a64, nvars, maxdeg),
                                support_degrees(b64, nvars, maxdeg))
        # float bound with ample margin below 2**63
        if _l1(a64) * _l1(b64) < _INT64_SAFE:
            out = np.zeros(size, dtype=np.int64)
            kernel = _product_int64 if HAVE_NUMBA else _product_numpy
            kernel(a64, b64, ia, ib, ic, out)
            return out
    ao = np.asarray(a, dtype=object)
    bo = np.asarray(b, dtype=object)
    ia, ib, ic = pair_table(nvars, maxdeg, support_degrees(ao != 0, nvars, maxdeg),
                            support_degrees(bo != 0, nvars, maxdeg))
    out = np.zeros(size, dtype=object)
    return _product_numpy(ao, bo, ia, ib, ic, out)


def multiply_linear(a, coeffs, nvars, maxdeg):
    """a * (sum_v coeffs[v] x_v), truncated; exact object arithmetic."""
    shift = shift_table(nvars, maxdeg)
    out = np.zeros(len(a), dtype=object)
    for v, c in enumerate(coeffs):
        if c == 0:
            continue
        mask = shift[v] >= 0
        out[shift[v][mask]] += a[mask] * c
    return out


def divide_one_plus_linear(a, coeffs, nvars, maxdeg, power=1):
    """a / (1 + linear)^power as a truncated power series (integral)."""
    _, offsets = monomial_basis(nvars, maxdeg)
    shift = shift_table(nvars, maxdeg)
    q = np.array(a, dtype=object)
    for _ in range(power):
        for d in range(1, maxdeg + 1):
            lo, hi = offsets[d - 1], offsets[d]
            prev = q[lo:hi]
            for v, c in enumerate(coeffs):
                if c == 0:
                    continue
                targets = shift[v][lo:hi]
                q[targets] -= prev * c
    return q

"""Hot loops over finite torsion G-sets ``(1/K)Λ/Λ``.

Points are encoded as integers in ``[0, K**d)`` (base-``K`` digits, first
coordinate most significant). Each kernel has a numba ``@njit`` version and a
pure-numpy version with identical results; set ``TORUSQ_NUMBA=0`` to force the
numpy path.
"""
from __future__ import annotations

import os

import numpy as np

MAX_POINTS = 50_000_000


def _numba_requested() -> bool:
    return os.environ.get("TORUSQ_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


# numpy path -----------------------------------------------------------

def _decode_np(codes: np.ndarray, level: int, dim: int) -> np.ndarray:
    out = np.empty((codes.shape[0], dim), dtype=np.int64)
    rest = codes.copy()
    for j in range(dim - 1, -1, -1):
        out[:, j] = rest % level
        rest //= level
    return out


def _encode_np(points: np.ndarray, level: int) -> np.ndarray:
    codes = np.zeros(points.shape[0], dtype=np.int64)
    for j in range(points.shape[1]):
        codes = codes * level + points[:, j]
    return codes


def torsion_images_numpy(H: np.ndarray, T: np.ndarray, level: int, chunk: int = 1 << 18) -> np.ndarray:
    ng, dim, _ = H.shape
    npts = level**dim
    out = np.empty((ng, npts), dtype=np.int64)
    for start in range(0, npts, chunk):
        codes = np.arange(start, min(start + chunk, npts), dtype=np.int64)
        pts = _decode_np(codes, level, dim)
        for g in range(ng):
            img = (pts @ H[g].T + T[g]) % level
            out[g, start : start + codes.shape[0]] = _encode_np(img, level)
    return out


def orbit_labels_numpy(images: np.ndarray, members: np.ndarray) -> np.ndarray:
    # members form a subgroup, so one pass over its elements yields the orbit minimum
    return images[members].min(axis=0)


def has_fixed_class_numpy(images: np.ndarray, labels: np.ndarray, outside: np.ndarray) -> bool:
    for g in outside:
        if np.any(labels[images[g]] == labels):
            return True
    return False


# numba path -----------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _torsion_images_jit(H, T, level):
        ng, dim, _ = H.shape
        npts = level**dim
        out = np.empty((ng, npts), dtype=np.int64)
        x = np.empty(dim, dtype=np.int64)
        for code in range(npts):
            rest = code
            for j in range(dim - 1, -1, -1):
                x[j] = rest % level
                rest //= level
            for g in range(ng):
                img = 0
                for i in range(dim):
                    acc = T[g, i]
                    for j in range(dim):
                        acc += H[g, i, j] * x[j]
                    acc %= level
                    if acc < 0:
                        acc += level
                    img = img * level + acc
                out[g, code] = img
        return out

    @numba.njit(cache=True)
    def _orbit_labels_jit(images, members):
        npts = images.shape[1]
        labels = np.empty(npts, dtype=np.int64)
        for p in range(npts):
            best = images[members[0], p]
            for k in range(1, members.shape[0]):
                v = images[members[k], p]
                if v < best:
                    best = v
            labels[p] = best
        return labels

    @numba.njit(cache=True)
    def _has_fixed_class_jit(images, labels, outside):
        npts = images.shape[1]
        for k in range(outside.shape[0]):
            g = outside[k]
            for p in range(npts):
                if labels[images[g, p]] == labels[p]:
                    return True
        return False


def _check_size(level: int, dim: int) -> None:
    if level**dim > MAX_POINTS:
        raise ValueError(f"torsion G-set with {level}^{dim} points is too large")


def torsion_images(H: np.ndarray, T: np.ndarray, level: int, use_numba: bool | None = None) -> np.ndarray:
    """Images of every point of ``(Z/level)^d`` under each affine map ``x -> H x + T``."""
    H = np.ascontiguousarray(H, dtype=np.int64)
    T = np.ascontiguousarray(T, dtype=np.int64)
    _check_size(level, H.shape[1])
    if USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA):
        return _torsion_images_jit(H, T, level)
    return torsion_images_numpy(H, T, level)


def orbit_labels(images: np.ndarray, members, use_numba: bool | None = None) -> np.ndarray:
    members = np.asarray(members, dtype=np.int64)
    if USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA):
        return _orbit_labels_jit(images, members)
    return orbit_labels_numpy(images, members)


def has_fixed_class(images: np.ndarray, labels: np.ndarray, outside, use_numba: bool | None = None) -> bool:
    outside = np.asarray(outside, dtype=np.int64)
    if outside.size == 0:
        return False
    if USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA):
        return bool(_has_fixed_class_jit(images, labels, outside))
    return has_fixed_class_numpy(images, labels, outside)

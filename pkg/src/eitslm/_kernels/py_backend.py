"""NumPy implementations of the hot kernels.

The compiled extension (``eitslm._kernels._core``) provides the same three
functions with identical signatures and semantics; either backend can serve
the whole package.  These are the per-pixel loops that dominate runtime on
large grids: the three-level susceptibility map, the direct Fourier-sum
oracle, and scattered bilinear interpolation.
"""

import numpy as np

_DFT_CHUNK = 512
_EDGE_SLACK = 1e-9  # index units; absorbs roundoff at the last sample


def susceptibility_map(omega_sq, gamma31, gamma21, delta, prefactor):
    """Three-level susceptibility per sample of |Omega_c|^2.

    Samples where the response denominator vanishes (zero coupling, zero
    detuning, zero ground-state decoherence) take the resonant two-level
    limit 2*prefactor/gamma31, which is the continuous limit of the full
    expression for gamma31 > 0.
    """
    omega_sq = np.asarray(omega_sq, dtype=float)
    a = omega_sq + gamma31 * gamma21
    b = -2.0 * gamma31 * delta
    den = a * a + b * b
    num_re = -4.0 * delta * omega_sq
    num_im = 8.0 * delta * delta * gamma31 + 2.0 * gamma21 * (omega_sq + gamma21 * gamma31)
    singular = den == 0.0
    if singular.any():
        den = np.where(singular, 1.0, den)
        out = prefactor * (num_re + 1j * num_im) / den
        out[singular] = 1j * (2.0 * prefactor / gamma31)
        return out
    return prefactor * (num_re + 1j * num_im) / den


def dft_points(field, x, y, fx, fy):
    """Direct Fourier sum of a sampled field at arbitrary frequency points.

    Returns sum_{j,i} field[j, i] * exp(-2i*pi*(fx*x[i] + fy*y[j])) for each
    probe point (the caller applies the pixel-area factor).  Cost is
    O(npoints * nx * ny); evaluation is chunked to bound memory.
    """
    field = np.ascontiguousarray(field, dtype=complex)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fx = np.asarray(fx, dtype=float)
    fy = np.asarray(fy, dtype=float)
    out = np.empty(fx.shape[0], dtype=complex)
    for start in range(0, fx.shape[0], _DFT_CHUNK):
        stop = min(start + _DFT_CHUNK, fx.shape[0])
        col = np.exp(-2j * np.pi * np.outer(fx[start:stop], x))
        row = np.exp(-2j * np.pi * np.outer(fy[start:stop], y))
        out[start:stop] = np.einsum("qy,yx,qx->q", row, field, col, optimize=True)
    return out


def bilinear_sample(values, xq, yq, x0, y0, dx, dy):
    """Bilinearly interpolate a complex (ny, nx) grid at scattered points.

    The grid samples sit at x0 + i*dx, y0 + j*dy.  Query points must lie
    within the sampled rectangle (a tiny roundoff slack is tolerated at the
    far edges); anything else raises ValueError.
    """
    values = np.ascontiguousarray(values, dtype=complex)
    ny, nx = values.shape
    gx = (np.asarray(xq, dtype=float) - x0) / dx
    gy = (np.asarray(yq, dtype=float) - y0) / dy
    if (
        (gx < -_EDGE_SLACK).any()
        or (gx > nx - 1 + _EDGE_SLACK).any()
        or (gy < -_EDGE_SLACK).any()
        or (gy > ny - 1 + _EDGE_SLACK).any()
    ):
        raise ValueError("sample point outside the interpolable grid")
    i0 = np.clip(np.floor(gx).astype(np.intp), 0, nx - 2)
    j0 = np.clip(np.floor(gy).astype(np.intp), 0, ny - 2)
    tx = gx - i0
    ty = gy - j0
    v00 = values[j0, i0]
    v01 = values[j0, i0 + 1]
    v10 = values[j0 + 1, i0]
    v11 = values[j0 + 1, i0 + 1]
    return (v00 * (1.0 - tx) + v01 * tx) * (1.0 - ty) + (v10 * (1.0 - tx) + v11 * tx) * ty

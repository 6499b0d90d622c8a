# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Contracts match eitslm._kernels.py_backend exactly; see there for the
documented semantics.
"""

from libc.math cimport cos, fabs, floor, sin

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF TWO_PI = 6.283185307179586
DEF EDGE_SLACK = 1e-9


def susceptibility_map(omega_sq, double gamma31, double gamma21, double delta,
                       double prefactor):
    arr = np.ascontiguousarray(omega_sq, dtype=np.float64)
    flat = arr.reshape(-1)
    out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef double[::1] osq = flat
    cdef double complex[::1] res = out
    cdef Py_ssize_t i, n = flat.shape[0]
    cdef double gg = gamma31 * gamma21
    cdef double b = -2.0 * gamma31 * delta
    cdef double bb = b * b
    cdef double im_const = 8.0 * delta * delta * gamma31
    cdef double a, den, num_re, num_im
    cdef double complex two_level = 1j * (2.0 * prefactor / gamma31)
    for i in range(n):
        a = osq[i] + gg
        den = a * a + bb
        if den == 0.0:
            res[i] = two_level
        else:
            num_re = -4.0 * delta * osq[i]
            num_im = im_const + 2.0 * gamma21 * (osq[i] + gg)
            res[i] = (prefactor * num_re / den) + 1j * (prefactor * num_im / den)
    return out.reshape(arr.shape)


cdef bint _is_uniform(double[::1] a):
    cdef Py_ssize_t i, n = a.shape[0]
    if n < 3:
        return True
    cdef double step = a[1] - a[0]
    cdef double slack = 1e-12 * (fabs(a[0]) + fabs(a[n - 1]) + fabs(step))
    for i in range(2, n):
        if fabs(a[i] - a[i - 1] - step) > slack:
            return False
    return True


cdef void _phasors(double[::1] out_re, double[::1] out_im, double[::1] axis,
                   double freq, bint uniform):
    """out = exp(-2i*pi*freq*axis); rotation recurrence on uniform axes."""
    cdef Py_ssize_t i, n = axis.shape[0]
    cdef double arg, zr, zi, wr, wi, tr
    if not uniform:
        for i in range(n):
            arg = -TWO_PI * freq * axis[i]
            out_re[i] = cos(arg)
            out_im[i] = sin(arg)
        return
    arg = -TWO_PI * freq * axis[0]
    zr = cos(arg)
    zi = sin(arg)
    if n > 1:
        arg = -TWO_PI * freq * (axis[1] - axis[0])
        wr = cos(arg)
        wi = sin(arg)
    else:
        wr = 1.0
        wi = 0.0
    for i in range(n):
        out_re[i] = zr
        out_im[i] = zi
        tr = zr * wr - zi * wi
        zi = zr * wi + zi * wr
        zr = tr


def dft_points(field, x, y, fx, fy):
    f_arr = np.ascontiguousarray(field, dtype=np.complex128)
    x_arr = np.ascontiguousarray(x, dtype=np.float64)
    y_arr = np.ascontiguousarray(y, dtype=np.float64)
    fx_arr = np.ascontiguousarray(fx, dtype=np.float64)
    fy_arr = np.ascontiguousarray(fy, dtype=np.float64)
    # split fields keep the inner loop on plain doubles
    fre_arr = np.ascontiguousarray(f_arr.real)
    fim_arr = np.ascontiguousarray(f_arr.imag)
    cdef double[:, ::1] fre = fre_arr
    cdef double[:, ::1] fim = fim_arr
    cdef double[::1] xv = x_arr
    cdef double[::1] yv = y_arr
    cdef double[::1] fxv = fx_arr
    cdef double[::1] fyv = fy_arr
    cdef Py_ssize_t nx = xv.shape[0], ny = yv.shape[0], m = fxv.shape[0]
    cdef bint x_uniform = _is_uniform(xv)
    cdef bint y_uniform = _is_uniform(yv)
    out = np.empty(m, dtype=np.complex128)
    col_re_arr = np.empty(nx)
    col_im_arr = np.empty(nx)
    row_re_arr = np.empty(ny)
    row_im_arr = np.empty(ny)
    cdef double complex[::1] res = out
    cdef double[::1] col_re = col_re_arr
    cdef double[::1] col_im = col_im_arr
    cdef double[::1] row_re = row_re_arr
    cdef double[::1] row_im = row_im_arr
    cdef Py_ssize_t q, i, j
    cdef double acc_re, acc_im
    cdef double s0, s1, s2, s3, fr, fi, cr, ci
    for q in range(m):
        _phasors(col_re, col_im, xv, fxv[q], x_uniform)
        _phasors(row_re, row_im, yv, fyv[q], y_uniform)
        acc_re = 0.0
        acc_im = 0.0
        for j in range(ny):
            s0 = 0.0
            s1 = 0.0
            s2 = 0.0
            s3 = 0.0
            for i in range(nx):
                fr = fre[j, i]
                fi = fim[j, i]
                cr = col_re[i]
                ci = col_im[i]
                s0 += fr * cr
                s1 += fi * ci
                s2 += fr * ci
                s3 += fi * cr
            acc_re += row_re[j] * (s0 - s1) - row_im[j] * (s2 + s3)
            acc_im += row_re[j] * (s2 + s3) + row_im[j] * (s0 - s1)
        res[q] = acc_re + 1j * acc_im
    return out


def bilinear_sample(values, xq, yq, double x0, double y0, double dx, double dy):
    v_arr = np.ascontiguousarray(values, dtype=np.complex128)
    xq_arr = np.ascontiguousarray(xq, dtype=np.float64)
    yq_arr = np.ascontiguousarray(yq, dtype=np.float64)
    cdef double complex[:, ::1] vv = v_arr
    cdef double[::1] xs = xq_arr
    cdef double[::1] ys = yq_arr
    cdef Py_ssize_t ny = vv.shape[0], nx = vv.shape[1], m = xs.shape[0]
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] res = out
    cdef Py_ssize_t q, i0, j0
    cdef double gx, gy, tx, ty
    for q in range(m):
        gx = (xs[q] - x0) / dx
        gy = (ys[q] - y0) / dy
        if (gx < -EDGE_SLACK or gx > nx - 1 + EDGE_SLACK
                or gy < -EDGE_SLACK or gy > ny - 1 + EDGE_SLACK):
            raise ValueError("sample point outside the interpolable grid")
        i0 = <Py_ssize_t>floor(gx)
        j0 = <Py_ssize_t>floor(gy)
        if i0 < 0:
            i0 = 0
        elif i0 > nx - 2:
            i0 = nx - 2
        if j0 < 0:
            j0 = 0
        elif j0 > ny - 2:
            j0 = ny - 2
        tx = gx - i0
        ty = gy - j0
        res[q] = ((vv[j0, i0] * (1.0 - tx) + vv[j0, i0 + 1] * tx) * (1.0 - ty)
                  + (vv[j0 + 1, i0] * (1.0 - tx) + vv[j0 + 1, i0 + 1] * tx) * ty)
    return out

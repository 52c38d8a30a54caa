# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Berggren sweep; mirrors ``_sweep_py.sweep``."""

from libc.math cimport sqrt, INFINITY
from libc.stdlib cimport malloc, realloc, free

ctypedef long long i64

# entries stay below 7*cmax, so int64 is safe well past any practical height
MAX_HEIGHT = 10 ** 15


cdef int _grow(i64 **buf, Py_ssize_t *cap, Py_ssize_t need) noexcept nogil:
    cdef Py_ssize_t n = cap[0]
    cdef i64 *p
    if need <= n:
        return 0
    while n < need:
        n *= 2
    p = <i64 *> realloc(buf[0], n * sizeof(i64))
    if p == NULL:
        return -1
    buf[0] = p
    cap[0] = n
    return 0


cdef int _grow_d(double **buf, Py_ssize_t *cap, Py_ssize_t need) noexcept nogil:
    cdef Py_ssize_t n = cap[0]
    cdef double *p
    if need <= n:
        return 0
    while n < need:
        n *= 2
    p = <double *> realloc(buf[0], n * sizeof(double))
    if p == NULL:
        return -1
    buf[0] = p
    cap[0] = n
    return 0


def sweep(double alpha, double beta, i64 cmin, i64 cmax, roots, double margin, bint descend=True):
    if cmax > MAX_HEIGHT:
        raise OverflowError("height bound too large for the compiled sweep")
    cdef Py_ssize_t scap = 3 * 256, ccap = 3 * 64, dcap = 64
    cdef Py_ssize_t top = 0, ncand = 0, i
    cdef i64 *stack = <i64 *> malloc(scap * sizeof(i64))
    cdef i64 *ctri = <i64 *> malloc(ccap * sizeof(i64))
    cdef double *cscore = <double *> malloc(dcap * sizeof(double))
    cdef i64 a, b, c, c1, c2, c3
    cdef double dx, dy, d2, score, best = 0.0
    cdef long long count = 0
    cdef int err = 0
    if stack == NULL or ctri == NULL or cscore == NULL:
        free(stack); free(ctri); free(cscore)
        raise MemoryError()
    for r in roots:
        if r[2] <= cmax:
            if _grow(&stack, &scap, top + 3) != 0:
                free(stack); free(ctri); free(cscore)
                raise MemoryError()
            stack[top] = r[0]; stack[top + 1] = r[1]; stack[top + 2] = r[2]
            top += 3
    with nogil:
        while top > 0:
            top -= 3
            a = stack[top]; b = stack[top + 1]; c = stack[top + 2]
            if c >= cmin:
                count += 1
                dx = c * alpha - a
                dy = c * beta - b
                d2 = dx * dx + dy * dy
                score = INFINITY if d2 == 0.0 else 1.0 / sqrt(d2)
                if score >= best * (1.0 - margin):
                    if _grow(&ctri, &ccap, 3 * ncand + 3) != 0 or _grow_d(&cscore, &dcap, ncand + 1) != 0:
                        err = 1
                        break
                    ctri[3 * ncand] = a; ctri[3 * ncand + 1] = b; ctri[3 * ncand + 2] = c
                    cscore[ncand] = score
                    ncand += 1
                    if score > best:
                        best = score
            if not descend:
                continue
            if _grow(&stack, &scap, top + 9) != 0:
                err = 1
                break
            c1 = -2 * a + 2 * b + 3 * c
            if c1 <= cmax:
                stack[top] = -a + 2 * b + 2 * c; stack[top + 1] = -2 * a + b + 2 * c; stack[top + 2] = c1
                top += 3
            c2 = 2 * a + 2 * b + 3 * c
            if c2 <= cmax:
                stack[top] = a + 2 * b + 2 * c; stack[top + 1] = 2 * a + b + 2 * c; stack[top + 2] = c2
                top += 3
            c3 = 2 * a - 2 * b + 3 * c
            if c3 <= cmax:
                stack[top] = a - 2 * b + 2 * c; stack[top + 1] = 2 * a - b + 2 * c; stack[top + 2] = c3
                top += 3
    out = []
    cdef double keep = best * (1.0 - margin)
    if err == 0:
        for i in range(ncand):
            if cscore[i] >= keep:
                out.append((ctri[3 * i], ctri[3 * i + 1], ctri[3 * i + 2]))
    free(stack); free(ctri); free(cscore)
    if err:
        raise MemoryError()
    return best, count, out

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: zeta partial sums and brute-force box counting.

Semantics must match ``_fallback.py`` exactly.
"""

from libc.stdlib cimport malloc, free


def zeta_partial_sum(long s, long long m):
    """sum(n**-s for n in 1..m), tail-first with Kahan compensation."""
    cdef double total = 0.0
    cdef double comp = 0.0
    cdef double term, y, t, x
    cdef long long n
    cdef double negs = -s
    for n in range(m, 0, -1):
        x = <double> n
        if s == 2:
            term = 1.0 / (x * x)
        else:
            term = x ** negs
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def count_visible_box(edges, prime_powers):
    """Count points in [1,e1]x...x[1,ek] with no row q dividing coordinatewise.

    ``prime_powers`` rows are k-tuples of moduli; q excludes a point when
    q[i] | n[i] for all i.  All values must fit in int64 (callers only pass
    moduli bounded by the box edges).
    """
    cdef Py_ssize_t k = len(edges)
    cdef Py_ssize_t nrows = len(prime_powers)
    cdef long long total = 1
    cdef Py_ssize_t i, r
    cdef long long count = 0
    cdef bint hit

    cdef long long* edge = <long long*> malloc(k * sizeof(long long))
    cdef long long* point = <long long*> malloc(k * sizeof(long long))
    cdef long long* pp = <long long*> malloc(nrows * k * sizeof(long long))
    if edge == NULL or point == NULL or pp == NULL:
        free(edge); free(point); free(pp)
        raise MemoryError()

    try:
        for i in range(k):
            edge[i] = edges[i]
            point[i] = 1
            if edge[i] <= 0:
                return 0
            total *= edge[i]
        for r in range(nrows):
            row = prime_powers[r]
            for i in range(k):
                pp[r * k + i] = row[i]

        while True:
            hit = False
            for r in range(nrows):
                hit = True
                for i in range(k):
                    if point[i] % pp[r * k + i] != 0:
                        hit = False
                        break
                if hit:
                    break
            if not hit:
                count += 1
            # odometer increment
            i = k - 1
            while i >= 0:
                point[i] += 1
                if point[i] <= edge[i]:
                    break
                point[i] = 1
                i -= 1
            if i < 0:
                break
        return count
    finally:
        free(edge)
        free(point)
        free(pp)

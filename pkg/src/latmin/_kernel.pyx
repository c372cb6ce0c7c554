# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Same walk as _kernel_py (odometer over the integer box, zero skipped,
|(G z)_j| <= t_j filter) over C int64.  Callers are responsible for the
overflow precheck; latmin.kernel only dispatches here when every partial
sum provably fits in int64.
"""

from libc.stdlib cimport free, malloc


cdef struct WalkState:
    long long *g       # m x r, row major
    long long *t       # m
    long long *lo      # r
    long long *hi      # r
    long long *z       # r
    long long *y       # m
    int m
    int r


cdef int _init(WalkState *s, object g, object t, object lo, object hi) except -1:
    cdef int m = len(t)
    cdef int r = len(lo)
    cdef int i, j
    s.m = m
    s.r = r
    s.g = <long long *> malloc(m * r * sizeof(long long))
    s.t = <long long *> malloc(m * sizeof(long long))
    s.lo = <long long *> malloc(r * sizeof(long long))
    s.hi = <long long *> malloc(r * sizeof(long long))
    s.z = <long long *> malloc(r * sizeof(long long))
    s.y = <long long *> malloc(m * sizeof(long long))
    if not (s.g and s.t and s.lo and s.hi and s.z and s.y):
        _free(s)
        raise MemoryError()
    for j in range(m):
        s.t[j] = t[j]
        row = g[j]
        for i in range(r):
            s.g[j * r + i] = row[i]
    for i in range(r):
        s.lo[i] = lo[i]
        s.hi[i] = hi[i]
        s.z[i] = s.lo[i]
    for j in range(m):
        s.y[j] = 0
        for i in range(r):
            s.y[j] += s.g[j * r + i] * s.lo[i]
    return 0


cdef void _free(WalkState *s):
    free(s.g)
    free(s.t)
    free(s.lo)
    free(s.hi)
    free(s.z)
    free(s.y)


cdef inline bint _passes(WalkState *s) nogil:
    cdef int j
    cdef long long yj
    for j in range(s.m):
        yj = s.y[j]
        if yj > s.t[j] or -yj > s.t[j]:
            return 0
    return 1


cdef inline bint _nonzero(WalkState *s) nogil:
    cdef int i
    for i in range(s.r):
        if s.z[i] != 0:
            return 1
    return 0


cdef inline bint _advance(WalkState *s) nogil:
    # returns 0 when the walk is exhausted
    cdef int axis = 0, j
    cdef long long step
    while axis < s.r:
        if s.z[axis] < s.hi[axis]:
            s.z[axis] += 1
            for j in range(s.m):
                s.y[j] += s.g[j * s.r + axis]
            return 1
        step = s.lo[axis] - s.hi[axis]
        s.z[axis] = s.lo[axis]
        for j in range(s.m):
            s.y[j] += step * s.g[j * s.r + axis]
        axis += 1
    return 0


def count_passing(g, t, lo, hi):
    cdef WalkState s
    cdef long long total = 0
    cdef int i
    if len(lo) == 0:
        return 0
    for i in range(len(lo)):
        if lo[i] > hi[i]:
            return 0
    _init(&s, g, t, lo, hi)
    try:
        with nogil:
            while True:
                if _nonzero(&s) and _passes(&s):
                    total += 1
                if not _advance(&s):
                    break
    finally:
        _free(&s)
    return total


def collect_passing(g, t, lo, hi):
    cdef WalkState s
    cdef list out = []
    cdef int i
    if len(lo) == 0:
        return out
    for i in range(len(lo)):
        if lo[i] > hi[i]:
            return out
    _init(&s, g, t, lo, hi)
    try:
        while True:
            if _nonzero(&s) and _passes(&s):
                out.append(tuple([s.z[i] for i in range(s.r)]))
            if not _advance(&s):
                break
    finally:
        _free(&s)
    return out

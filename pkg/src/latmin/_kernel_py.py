"""Pure-Python enumeration kernel.

Walks the integer box lo <= z <= hi in odometer order (axis 0 fastest),
skipping z = 0, and tests each point against the scaled-integer constraint
system |(G z)_j| <= t_j.  Arithmetic is plain Python int, so there is no
overflow ceiling; the compiled twin in _kernel.pyx implements the exact
same walk over int64 and must produce identical output.
"""

from __future__ import annotations


def count_passing(g, t, lo, hi) -> int:
    total = 0
    for _ in _walk(g, t, lo, hi):
        total += 1
    return total


def collect_passing(g, t, lo, hi) -> list:
    return [tuple(z) for z in _walk(g, t, lo, hi)]


def _walk(g, t, lo, hi):
    r = len(lo)
    m = len(t)
    if r == 0 or any(l > h for l, h in zip(lo, hi)):
        return
    gcols = [[g[j][i] for j in range(m)] for i in range(r)]
    z = list(lo)
    y = [sum(g[j][i] * lo[i] for i in range(r)) for j in range(m)]
    while True:
        if any(z):
            ok = True
            for j in range(m):
                yj = y[j]
                if yj > t[j] or -yj > t[j]:
                    ok = False
                    break
            if ok:
                yield z
        axis = 0
        while axis < r:
            if z[axis] < hi[axis]:
                z[axis] += 1
                col = gcols[axis]
                for j in range(m):
                    y[j] += col[j]
                break
            step = lo[axis] - hi[axis]
            z[axis] = lo[axis]
            col = gcols[axis]
            for j in range(m):
                y[j] += step * col[j]
            axis += 1
        if axis == r:
            return

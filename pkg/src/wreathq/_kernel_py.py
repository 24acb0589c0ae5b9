"""Pure-Python fallback for the hot linear-algebra kernels.

The compiled extension ``wreathq._kernel`` implements the same two
functions; :mod:`wreathq.kernels` picks whichever is available.  Entries
are arbitrary exact field elements (anything supporting ``+ - * /``,
equality and truthiness), so the routines work unchanged for rationals
and for cyclotomic scalars.
"""

IMPLEMENTATION = "python"


def mat_mul(a, b, n, k, m, zero):
    """Row-major product of an n*k and a k*m matrix given as flat lists."""
    out = [zero] * (n * m)
    for i in range(n):
        arow = i * k
        orow = i * m
        for t in range(k):
            x = a[arow + t]
            if not x:
                continue
            brow = t * m
            for j in range(m):
                y = b[brow + j]
                if y:
                    out[orow + j] = out[orow + j] + x * y
    return out


def rref(data, rows, cols, zero, one):
    """Reduced row-echelon form of a flat row-major matrix.

    Returns ``(flat_entries, pivot_columns)``.  Pivots are normalised to 1
    and eliminated both above and below, so the result is the unique RREF.
    """
    mat = [list(data[r * cols:(r + 1) * cols]) for r in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for rr in range(r, rows):
            if mat[rr][c]:
                pr = rr
                break
        if pr < 0:
            continue
        if pr != r:
            mat[r], mat[pr] = mat[pr], mat[r]
        row = mat[r]
        pv = row[c]
        if pv != one:
            inv = one / pv
            row[c] = one
            for j in range(c + 1, cols):
                if row[j]:
                    row[j] = row[j] * inv
        for rr in range(rows):
            if rr == r:
                continue
            other = mat[rr]
            f = other[c]
            if f:
                other[c] = zero
                for j in range(c + 1, cols):
                    if row[j]:
                        other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
    flat = [x for row in mat for x in row]
    return flat, pivots

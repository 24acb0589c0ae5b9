# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled inner loops for exact matrix products and row reduction.

Two layers: generic object kernels that mirror ``_kernel_py`` for any
exact field element, and specialised rational kernels (``mat_mul_q``,
``rref_q``) that work on parallel numerator/denominator integer lists
with compiled gcd arithmetic.  The rational layer is where the real
speedup lives, since plain ``Fraction`` arithmetic dominates the
runtime of the generic loops.
"""

from math import gcd as _gcd

IMPLEMENTATION = "cython"


def mat_mul(list a, list b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m, zero):
    """Row-major product of an n*k and a k*m matrix given as flat lists."""
    cdef Py_ssize_t i, t, j, arow, orow, brow
    cdef list out = [zero] * (n * m)
    cdef object x, y
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


def rref(list data, Py_ssize_t rows, Py_ssize_t cols, zero, one):
    """Unique reduced row-echelon form; returns (flat entries, pivot columns)."""
    cdef list mat = []
    cdef list row, other
    cdef Py_ssize_t r = 0, c, rr, j, pr
    cdef object pv, inv, f, x
    cdef list pivots = []
    for rr in range(rows):
        mat.append(list(data[rr * cols:(rr + 1) * cols]))
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for rr in range(r, rows):
            if (<list>mat[rr])[c]:
                pr = rr
                break
        if pr < 0:
            continue
        if pr != r:
            mat[r], mat[pr] = mat[pr], mat[r]
        row = <list>mat[r]
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
            other = <list>mat[rr]
            f = other[c]
            if f:
                other[c] = zero
                for j in range(c + 1, cols):
                    x = row[j]
                    if x:
                        other[j] = other[j] - f * x
        pivots.append(c)
        r += 1
    cdef list flat = []
    for rr in range(rows):
        flat.extend(<list>mat[rr])
    return flat, pivots


# ---------------------------------------------------------------------------
# Specialised rational kernels: entries as (numerator, denominator) pairs of
# Python ints with denominator > 0 and gcd(num, den) = 1.
# ---------------------------------------------------------------------------

cdef inline tuple _q_mul(object xn, object xd, object yn, object yd):
    cdef object g1 = _gcd(xn, yd)
    cdef object g2 = _gcd(yn, xd)
    return ((xn // g1) * (yn // g2), (xd // g2) * (yd // g1))


cdef inline tuple _q_add(object an, object ad, object bn, object bd):
    if an == 0:
        return (bn, bd)
    if bn == 0:
        return (an, ad)
    cdef object g = _gcd(ad, bd)
    cdef object den = (ad // g) * bd
    cdef object num = an * (bd // g) + bn * (ad // g)
    if num == 0:
        return (0, 1)
    g = _gcd(num, den)
    return (num // g, den // g)


def mat_mul_q(list anum, list aden, list bnum, list bden,
              Py_ssize_t n, Py_ssize_t k, Py_ssize_t m):
    """Product over Q; inputs and outputs are parallel num/den lists."""
    cdef list onum = [0] * (n * m)
    cdef list oden = [1] * (n * m)
    cdef Py_ssize_t i, t, j, arow, orow, brow, idx
    cdef object xn, xd, yn, yd, pn, pd
    cdef tuple prod, acc
    for i in range(n):
        arow = i * k
        orow = i * m
        for t in range(k):
            xn = anum[arow + t]
            if xn == 0:
                continue
            xd = aden[arow + t]
            brow = t * m
            for j in range(m):
                yn = bnum[brow + j]
                if yn == 0:
                    continue
                prod = _q_mul(xn, xd, yn, bden[brow + j])
                idx = orow + j
                acc = _q_add(onum[idx], oden[idx], prod[0], prod[1])
                onum[idx] = acc[0]
                oden[idx] = acc[1]
    return onum, oden


def rref_q(list num, list den, Py_ssize_t rows, Py_ssize_t cols):
    """Reduced row-echelon form over Q on num/den lists; returns pivots too."""
    cdef list rnum = [], rden = []
    cdef list rown, rowd, othn, othd
    cdef Py_ssize_t r = 0, c, rr, j, pr
    cdef object pn, pd, fn, fd, xn
    cdef tuple val, prod
    cdef list pivots = []
    for rr in range(rows):
        rnum.append(list(num[rr * cols:(rr + 1) * cols]))
        rden.append(list(den[rr * cols:(rr + 1) * cols]))
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for rr in range(r, rows):
            if (<list>rnum[rr])[c] != 0:
                pr = rr
                break
        if pr < 0:
            continue
        if pr != r:
            rnum[r], rnum[pr] = rnum[pr], rnum[r]
            rden[r], rden[pr] = rden[pr], rden[r]
        rown = <list>rnum[r]
        rowd = <list>rden[r]
        pn = rown[c]
        pd = rowd[c]
        if pn != pd:
            # multiply the row by pd/pn, keeping denominators positive
            if pn < 0:
                fn = -pd
                fd = -pn
            else:
                fn = pd
                fd = pn
            rown[c] = 1
            rowd[c] = 1
            for j in range(c + 1, cols):
                xn = rown[j]
                if xn != 0:
                    val = _q_mul(xn, rowd[j], fn, fd)
                    rown[j] = val[0]
                    rowd[j] = val[1]
        else:
            rown[c] = 1
            rowd[c] = 1
        for rr in range(rows):
            if rr == r:
                continue
            othn = <list>rnum[rr]
            if othn[c] == 0:
                continue
            othd = <list>rden[rr]
            fn = othn[c]
            fd = othd[c]
            othn[c] = 0
            othd[c] = 1
            for j in range(c + 1, cols):
                xn = rown[j]
                if xn != 0:
                    prod = _q_mul(fn, fd, xn, rowd[j])
                    val = _q_add(othn[j], othd[j], -prod[0], prod[1])
                    othn[j] = val[0]
                    othd[j] = val[1]
        pivots.append(c)
        r += 1
    cdef list fnum = [], fden = []
    for rr in range(rows):
        fnum.extend(<list>rnum[rr])
        fden.extend(<list>rden[rr])
    return fnum, fden, pivots

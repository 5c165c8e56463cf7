"""Pure-Python row reduction kernel.

Same algorithm, same output as the compiled ``_ckernels`` module; it is
used when the extension is not built or when ``HOMNAMBU_PURE_PYTHON`` is set.
"""
from math import gcd


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows, ncols):
    """Integer Gauss-Jordan elimination.

    Returns ``(reduced, pivots)``: ``reduced`` holds one primitive integer row
    per pivot, with a positive pivot entry and zeros in every other pivot
    column. Row space is preserved exactly.
    """
    m = [list(r) for r in rows if any(r)]
    pivots = []
    rank = 0
    nrows = len(m)
    for c in range(ncols):
        p = rank
        while p < nrows and not m[p][c]:
            p += 1
        if p == nrows:
            continue
        m[rank], m[p] = m[p], m[rank]
        prow = m[rank]
        if prow[c] < 0:
            prow = [-x for x in prow]
        prow = _primitive(prow)
        m[rank] = prow
        a = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = m[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            ag, bg = a // g, b // g
            m[i] = _primitive([ag * x - bg * y for x, y in zip(row, prow)])
        pivots.append(c)
        rank += 1
        if rank == nrows:
            break
    return m[:rank], pivots

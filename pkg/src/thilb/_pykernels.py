"""Pure-Python modular elimination; fallback for the compiled ``_ckernels``."""


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form of ``rows`` over F_p.

    ``rows`` is a sequence of integer sequences of length ``ncols``.  Returns
    ``(reduced, pivots)`` where ``reduced`` holds only the nonzero rows, each
    normalised to a leading 1 in column ``pivots[i]``.
    """
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            row = [x * inv % p for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    m[i] = [(a - f * b) % p for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_mod_p(rows, ncols, p):
    return len(rref_mod_p(rows, ncols, p)[1])

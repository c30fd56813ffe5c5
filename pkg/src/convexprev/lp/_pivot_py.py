"""Pure-Python simplex kernel on integer tableaux.

The tableau ``T`` is a list of rows of Python ints that share one positive
denominator ``D``: the true entry is ``T[i][j] / D``.  Pivoting keeps every
entry integral (fraction-free Gaussian elimination), so no gcd work is done
inside the loop.  The last column holds the right-hand side; constraint
rows come first, pricing rows after them.

The compiled kernel in ``_pivot.pyx`` implements the same two functions
with identical results.
"""

OPTIMAL = 0
UNBOUNDED = 1


def pivot(T, basis, D, r, c):
    """Pivot on entry ``(r, c)`` in place and return the new denominator."""
    Tr = T[r]
    p = Tr[c]
    for i, Ti in enumerate(T):
        if i == r:
            continue
        a = Ti[c]
        if a:
            T[i] = [(x * p - a * y) // D for x, y in zip(Ti, Tr)]
        elif p != D:
            T[i] = [x * p // D for x in Ti]
    basis[r] = c
    if p < 0:
        for i, Ti in enumerate(T):
            T[i] = [-x for x in Ti]
        p = -p
    return p


def simplex(T, basis, D, price, n_enter, m):
    """Run Bland's rule on the first *m* rows, pricing with row *price*.

    Only columns ``< n_enter`` may enter the basis.  Returns
    ``(status, D, entering)``; *entering* is the column exposing an
    unbounded ray, or ``-1``.
    """
    while True:
        row = T[price]
        j = -1
        for k in range(n_enter):
            if row[k] < 0:
                j = k
                break
        if j < 0:
            return OPTIMAL, D, -1
        best = -1
        for i in range(m):
            Ti = T[i]
            a = Ti[j]
            if a > 0:
                if best < 0:
                    best = i
                    continue
                lhs = Ti[-1] * T[best][j]
                rhs = T[best][-1] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                    best = i
        if best < 0:
            return UNBOUNDED, D, j
        D = pivot(T, basis, D, best, j)

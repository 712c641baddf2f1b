"""Independent reference implementations used only by the tests.

Everything here is plain-Python brute force with no numpy and no package
code, so agreement with the library is meaningful.
"""

import itertools


def rref(rows, p):
    """Batch Gauss-Jordan over F_p; returns the nonzero rows of the RREF."""
    m = [[int(v) % p for v in r] for r in rows]
    if not m:
        return []
    width = len(m[0])
    lead = 0
    out = []
    for col in range(width):
        pivot = next((i for i in range(lead, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[lead], m[pivot] = m[pivot], m[lead]
        inv = pow(m[lead][col], p - 2, p)
        m[lead] = [v * inv % p for v in m[lead]]
        for i in range(len(m)):
            if i != lead and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[lead])]
        lead += 1
    out = [tuple(r) for r in m[:lead]]
    return sorted(out, reverse=True)


def same_row_space(rows_a, rows_b, p):
    return rref(rows_a, p) == rref(rows_b, p)


def in_row_space(rows, v, p):
    return len(rref(list(rows) + [v], p)) == len(rref(rows, p))


def affine_eval(c, x, p):
    return (sum(a * b for a, b in zip(c, x)) + c[-1]) % p


def solutions(rows, p, D):
    """All c in F_p^(D+1) with y = <c, x> for every stored row (x, 1 | y)."""
    found = []
    for c in itertools.product(range(p), repeat=D + 1):
        if all(sum(r[d] * c[d] for d in range(D + 1)) % p == r[D + 1] % p for r in rows):
            found.append(c)
    return found


def brute_hull_count(points, xs, ys, p):
    """Number of samples lying on every hyperplane through ``points``.

    ``points`` is a list of (x, y); hyperplanes are enumerated exhaustively.
    """
    D = len(xs[0]) if xs else 0
    planes = [c for c in itertools.product(range(p), repeat=D + 1)
              if all(affine_eval(c, x, p) == y % p for x, y in points)]
    return sum(all(affine_eval(c, x, p) == y % p for c in planes) for x, y in zip(xs, ys))


def valuation(value, p, cap):
    if value == 0:
        return cap
    v = 0
    while value % p == 0:
        value //= p
        v += 1
    return min(v, cap)

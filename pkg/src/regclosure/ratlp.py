"""Exact linear feasibility over the rationals.

A phase-1 simplex on Fraction arithmetic with Bland's rule, so termination
is guaranteed and no tolerance appears anywhere.  Infeasibility comes with
a Farkas certificate, which the convex-geometry code uses directly as a
separating affine functional.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["LPError", "feasible_nonneg", "solve_feasibility"]

ZERO = Fraction(0)
ONE = Fraction(1)


class LPError(Exception):
    pass


def feasible_nonneg(A, b):
    """Decide whether A x = b has a solution with x >= 0, exactly.

    Returns (True, x) with a rational solution, or (False, y) with a Farkas
    certificate: y.A <= 0 componentwise while y.b > 0.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    flip = []
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            flip.append(True)
        else:
            flip.append(False)

    # tableau over columns: n originals, m artificials, rhs
    width = n + m
    T = [rows[i] + [ONE if j == i else ZERO for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    # phase-1 cost: sum of artificials; reduced-cost row starts as
    # -(sum of constraint rows) on non-artificial columns
    z = [ZERO] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            z[j] -= T[i][j]
    for j in range(n, width):
        z[j] += ONE  # c_j = 1 for artificials

    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        ratios = [(T[i][width] / T[i][enter], basis[i], i)
                  for i in range(m) if T[i][enter] > 0]
        if not ratios:
            raise LPError("phase-1 objective unbounded; inconsistent tableau")
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        _pivot(T, z, leave, enter, width)
        basis[leave] = enter

    value = -z[width]
    if value == 0:
        x = [ZERO] * n
        for i, bv in enumerate(basis):
            if bv < n:
                x[bv] = T[i][width]
            elif T[i][width] != 0:
                # degenerate artificial stuck at zero is fine; nonzero is not
                raise LPError("artificial variable basic at nonzero level")
        return True, x
    # Farkas: y_k = 1 - reduced cost of artificial column k, flipped back
    y = [ONE - z[n + k] for k in range(m)]
    y = [-v if flip[k] else v for k, v in enumerate(y)]
    return False, y


def _pivot(T, z, leave, enter, width):
    piv = T[leave][enter]
    T[leave] = [v / piv for v in T[leave]]
    for i in range(len(T)):
        if i != leave and T[i][enter] != 0:
            f = T[i][enter]
            T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
    if z[enter] != 0:
        f = z[enter]
        for j in range(width + 1):
            z[j] -= f * T[leave][j]


def solve_feasibility(constraints, nvars: int):
    """Feasibility of a system of linear constraints in free variables.

    ``constraints`` is a list of (coeffs, rel, rhs) with rel one of
    '==', '<=', '>='.  Returns (True, assignment) or (False, duals) with
    one dual multiplier per constraint certifying infeasibility.
    """
    m = len(constraints)
    # free variables split into positive and negative parts, one slack per
    # inequality
    slacks = [i for i, (_, rel, _) in enumerate(constraints) if rel != "=="]
    slack_pos = {c: k for k, c in enumerate(slacks)}
    width = 2 * nvars + len(slacks)
    A = []
    b = []
    for i, (coeffs, rel, rhs) in enumerate(constraints):
        if len(coeffs) != nvars:
            raise LPError("coefficient length mismatch")
        row = [Fraction(c) for c in coeffs] + [-Fraction(c) for c in coeffs] \
            + [ZERO] * len(slacks)
        if rel == "<=":
            row[2 * nvars + slack_pos[i]] = ONE
        elif rel == ">=":
            row[2 * nvars + slack_pos[i]] = -ONE
        elif rel != "==":
            raise LPError(f"unknown relation {rel!r}")
        A.append(row)
        b.append(Fraction(rhs))
    ok, out = feasible_nonneg(A, b)
    if ok:
        xs = [out[j] - out[nvars + j] for j in range(nvars)]
        return True, xs
    return False, out

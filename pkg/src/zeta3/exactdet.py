"""Exact determinants of integer and polynomial matrices.

Three routes live here:

* ``det_integer``      - fraction-free (Bareiss) elimination on Python ints.
* ``det_poly_matrix``  - determinant of a matrix of IntPoly by evaluation at
  small integers + exact Lagrange interpolation; the interpolation must clear
  to integer coefficients, which doubles as a self-check.
* ``char_rev``         - det(I - u*M) for an integer matrix, computed modulo
  word-sized primes (Hessenberg reduction + the standard recurrence) and
  recombined by CRT under a rigorous Hadamard-style coefficient bound.
  Exact integer arithmetic throughout, just carried out residue-wise.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import ExactArithmeticError
from .polynomials import IntPoly, primes_descending

# Primes stay below 2**25 so that a length-n int64 dot product of residues
# cannot overflow: n * (2**25)**2 < 2**63 for n up to 8192.
_PRIME_CAP = (1 << 25) - 1

# When enabled (the test suite turns it on), every det_poly_matrix call
# re-evaluates its result at 5 random integers against det_integer.
SELF_CHECK = False
SELF_CHECK_CALLS = 0
_selfcheck_rng = random.Random(20240501)


def _as_int_rows(M):
    if hasattr(M, "to_dense"):
        M = M.to_dense()
    rows = [list(r) for r in M]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("square matrix required")
    return rows


def det_integer(M):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = _as_int_rows(M)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pkk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pkk
    return sign * a[n - 1][n - 1]


def det_cofactor(M):
    """Naive cofactor expansion; exponential, test oracle for small matrices."""
    a = _as_int_rows(M)
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += (-1) ** j * a[0][j] * det_cofactor(minor)
    return total


# -- polynomial-matrix determinant -------------------------------------------


def _eval_points(count):
    """0, 1, -1, 2, -2, ... keeping magnitudes small for Bareiss growth."""
    pts = [0]
    k = 1
    while len(pts) < count:
        pts.append(k)
        if len(pts) < count:
            pts.append(-k)
        k += 1
    return pts[:count]


def _lagrange_integer(xs, ys):
    """Interpolating polynomial through (xs, ys); must have integer coefficients."""
    npts = len(xs)
    master = [1]
    for x in xs:
        master = [0] + master
        for j in range(len(master) - 1):
            master[j] -= master[j + 1] * x
    acc = [Fraction(0)] * npts
    for x, y in zip(xs, ys):
        if y == 0:
            continue
        # master / (u - x) by synthetic division
        num = [0] * npts
        carry = master[npts]
        for j in range(npts - 1, -1, -1):
            num[j] = carry
            carry = master[j] + carry * x
        denom = 0
        powx = 1
        for c in num:
            denom += c * powx
            powx *= x
        scale = Fraction(y, denom)
        for j in range(npts):
            acc[j] += num[j] * scale
    out = []
    for fr in acc:
        if fr.denominator != 1:
            raise ExactArithmeticError(
                f"interpolation produced non-integer coefficient {fr}; "
                "internal determinant bug"
            )
        out.append(int(fr))
    return IntPoly(out)


def det_poly_matrix(M, degree_bound=None):
    """Exact determinant of a square matrix of IntPoly entries.

    Entries must have degree <= 3 (all callers here build cubic operator
    pencils).  Evaluates the matrix at degree_bound+1 small integers, takes
    exact integer determinants, and interpolates.
    """
    n = len(M)
    rows = []
    for row in M:
        row = list(row)
        if len(row) != n:
            raise ValueError("square matrix required")
        for e in row:
            if not isinstance(e, IntPoly):
                raise TypeError("IntPoly entries required")
            if e.degree > 3:
                raise ValueError("entry degree exceeds 3")
        rows.append(row)
    if degree_bound is None:
        degree_bound = 3 * n
    if degree_bound < 3 * n:
        raise ValueError("degree bound below 3*n")
    if n == 0:
        return IntPoly.one()

    xs = _eval_points(degree_bound + 1)
    ys = [det_integer([[e(x) for e in row] for row in rows]) for x in xs]
    result = _lagrange_integer(xs, ys)

    if SELF_CHECK:
        global SELF_CHECK_CALLS
        SELF_CHECK_CALLS += 1
        for _ in range(5):
            x = _selfcheck_rng.randint(-9, 9)
            direct = det_integer([[e(x) for e in row] for row in rows])
            if result(x) != direct:
                raise ExactArithmeticError(
                    f"det_poly_matrix self-check failed at u={x}: "
                    f"{result(x)} != {direct}"
                )
    return result


# -- reverse characteristic polynomial ---------------------------------------


def _charpoly_mod(Mp, p):
    """Coefficients c_0..c_n of det(xI - M) over GF(p); Mp is int64 mod p."""
    H = Mp.copy()
    n = H.shape[0]
    for k in range(n - 2):
        col = H[k + 1 :, k]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        r = k + 1 + int(nz[0])
        if r != k + 1:
            H[[k + 1, r], :] = H[[r, k + 1], :]
            H[:, [k + 1, r]] = H[:, [r, k + 1]]
        inv = pow(int(H[k + 1, k]), p - 2, p)
        f = (H[k + 2 :, k] * inv) % p
        if np.any(f):
            H[k + 2 :, k:] = (H[k + 2 :, k:] - f[:, None] * H[k + 1, k:]) % p
            H[:, k + 1] = (H[:, k + 1] + H[:, k + 2 :] @ f) % p

    # det(xI_k - H_k) by expansion along the last column:
    # p_k = (x - H[k-1,k-1]) p_{k-1}
    #       - sum_{i<k-1} H[i,k-1] * (prod_{j=i}^{k-2} H[j+1,j]) * p_i
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for k in range(1, n + 1):
        prev = P[k - 1, :k]
        row = np.zeros(n + 1, dtype=np.int64)
        row[1 : k + 1] = prev
        row[:k] = (row[:k] - int(H[k - 1, k - 1]) * prev) % p
        if k >= 2:
            w = np.zeros(k - 1, dtype=np.int64)
            beta = 1
            for i in range(k - 2, -1, -1):
                beta = beta * int(H[i + 1, i]) % p
                w[i] = beta * int(H[i, k - 1]) % p
            row = (row - w @ P[: k - 1, :]) % p
        P[k] = row
    return [int(c) for c in P[n]]


def _crt_symmetric(rows, primes):
    """Combine per-prime coefficient vectors into symmetric-range integers."""
    acc = [int(c) for c in rows[0]]
    modulus = primes[0]
    for residues, p in zip(rows[1:], primes[1:]):
        inv = pow(modulus % p, p - 2, p)
        for j, r in enumerate(residues):
            t = (int(r) - acc[j]) * inv % p
            acc[j] += modulus * t
        modulus *= p
    half = modulus // 2
    return [c - modulus if c > half else c for c in acc]


def char_rev(M):
    """det(I - u*M) as an IntPoly, for a square integer matrix.

    Computed exactly: characteristic polynomial modulo enough word-sized
    primes (Hessenberg form per prime), CRT-combined under the bound
    sum_k |c_k| <= (1 + max row norm)**n.
    """
    dense = _as_int_rows(M)
    n = len(dense)
    if n == 0:
        return IntPoly.one()
    if n >= 4096:
        # int64 dot products of residues < 2**25 stay exact only below this
        raise ValueError("char_rev supports dimensions below 4096")

    row_norm_sq = max(sum(v * v for v in row) for row in dense)
    radius = isqrt(row_norm_sq) + 1
    bound = 2 * (1 + radius) ** n

    max_abs = max((abs(v) for row in dense for v in row), default=0)
    if max_abs < (1 << 62):
        M64 = np.array(dense, dtype=np.int64)
        reduce = lambda p: M64 % p
    else:  # entries beyond int64: reduce in Python first
        reduce = lambda p: np.array([[v % p for v in row] for row in dense], dtype=np.int64)

    primes = []
    prod = 1
    for p in primes_descending(_PRIME_CAP):
        primes.append(p)
        prod *= p
        if prod > bound:
            break
    per_prime = [_charpoly_mod(reduce(p), p) for p in primes]
    coeffs = _crt_symmetric(per_prime, primes)

    # det(xI - M) = sum c_i x^i  =>  det(I - uM) = sum c_i u^{n-i}
    rev = [coeffs[n - k] for k in range(n + 1)]
    poly = IntPoly(rev)
    trace = sum(dense[i][i] for i in range(n))
    if poly.cf(0) != 1 or poly.cf(1) != -trace:
        raise ExactArithmeticError("characteristic polynomial consistency check failed")
    return poly


def char_rev_interpolated(M):
    """det(I - u*M) by evaluation + interpolation over det_integer.

    Independent slow route used by the tests to cross-check char_rev.
    """
    dense = _as_int_rows(M)
    n = len(dense)
    xs = _eval_points(n + 1)
    ys = []
    for x in xs:
        mat = [[(1 if i == j else 0) - x * dense[i][j] for j in range(n)] for i in range(n)]
        ys.append(det_integer(mat))
    return _lagrange_integer(xs, ys)

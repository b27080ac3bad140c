"""Assembly and exact verification of the determinant identity.

The three polynomials are

    P_A = det(I - A1 u + q A2 u^2 - q^3 u^3 I)     degree 3*N0
    P_E = det(I - L_E u)                           degree N1 (full rank)
    P_B = det(I + L_B u)                           degree 3*N2 (full rank)

and the identity checked, in cleared-denominator form, is

    (1 - u^3)^chi * P_E(u) * P_E(u^2) = P_A(u) * P_B(u)        (chi >= 0)

with the cube factor moved to the right-hand side when chi < 0.  The factor
P_E(u^2) is det(I - L_E^t u^2): reversed characteristic polynomials are
transpose-invariant, so the type-two edge operator never needs to be built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complexes import ComplexDescription
from .exactdet import char_rev, det_poly_matrix
from .errors import ExactArithmeticError
from .operators import SparseIntegerMatrix, build_a1, build_a2, build_le, build_lb
from .polynomials import IntPoly


@dataclass(frozen=True)
class ZetaParts:
    """The three determinants plus the complex invariants they refer to."""

    q: int
    n0: int
    n1: int
    n2: int
    chi: int
    p_a: IntPoly
    p_e: IntPoly
    p_b: IntPoly

    def full_rank_edge(self):
        return self.p_e.degree == self.n1

    def full_rank_chamber(self):
        return self.p_b.degree == 3 * self.n2


def vertex_pencil(a1: SparseIntegerMatrix, a2: SparseIntegerMatrix, q):
    """The cubic operator pencil I - A1 u + q A2 u^2 - q^3 u^3 I."""
    n = a1.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = [
                1 if i == j else 0,
                -a1.get(i, j),
                q * a2.get(i, j),
                -(q ** 3) if i == j else 0,
            ]
            row.append(IntPoly(coeffs))
        rows.append(row)
    return rows


def zeta_parts(cx: ComplexDescription, operators=None):
    """Build (P_A, P_E, P_B) for a valid complex.

    ``operators`` optionally injects prebuilt (A1, A2, LE, LB) matrices; the
    mutation tests use this to corrupt a single entry.
    """
    cx.require_valid()
    n0, n1, n2, chi = cx.counts()
    q = cx.q
    if operators is None:
        a1 = build_a1(cx)
        a2 = build_a2(cx)
        le = build_le(cx)
        lb = build_lb(cx)
    else:
        a1, a2, le, lb = operators
    p_a = det_poly_matrix(vertex_pencil(a1, a2, q), 3 * n0)
    p_e = char_rev(le)
    p_b = char_rev(lb.negated())
    if p_a.degree != 3 * n0 or p_a.cf(0) != 1:
        raise ExactArithmeticError("vertex determinant has wrong shape")
    return ZetaParts(q=q, n0=n0, n1=n1, n2=n2, chi=chi, p_a=p_a, p_e=p_e, p_b=p_b)


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    # on failure: the first differing coefficient index and both values
    witness_index: Optional[int] = None
    lhs_coefficient: Optional[int] = None
    rhs_coefficient: Optional[int] = None
    lhs: Optional[IntPoly] = None
    rhs: Optional[IntPoly] = None


def verify_identity(parts: ZetaParts):
    """Exact coefficient-by-coefficient check of the cleared identity."""
    cube = IntPoly([1, 0, 0, -1])  # 1 - u^3
    lhs = parts.p_e * parts.p_e.substitute_square()
    rhs = parts.p_a * parts.p_b
    if parts.chi >= 0:
        lhs = cube ** parts.chi * lhs
    else:
        rhs = cube ** (-parts.chi) * rhs
    if lhs == rhs:
        return IdentityVerdict(holds=True)
    top = max(lhs.degree, rhs.degree)
    for k in range(top + 1):
        if lhs.cf(k) != rhs.cf(k):
            return IdentityVerdict(
                holds=False,
                witness_index=k,
                lhs_coefficient=lhs.cf(k),
                rhs_coefficient=rhs.cf(k),
                lhs=lhs,
                rhs=rhs,
            )
    raise AssertionError("unreachable")  # pragma: no cover


# -- geodesic counting --------------------------------------------------------


def geodesic_counts(parts: ZetaParts, max_len):
    """N_1..N_max_len: coefficients of u d/du log Z, Z = 1/(P_E(u) P_E(u^2)).

    Exact power-series arithmetic on the polynomials; the result must be a
    sequence of nonnegative integers because an actual count underlies it.
    """
    if max_len < 1:
        return []
    g = parts.p_e * parts.p_e.substitute_square()
    series = g.log_derivative_series(max_len)  # u g'/g
    counts = [-series[m] for m in range(1, max_len + 1)]
    for ell, value in enumerate(counts, start=1):
        if value < 0:
            raise ExactArithmeticError(
                f"negative geodesic count N_{ell} = {value}; inconsistent parts"
            )
    return counts


def edge_trace_powers(le: SparseIntegerMatrix, max_len):
    """[trace(L_E^m) for m = 1..max_len], exact."""
    if max_len < 1:
        return []
    base = le.to_numpy()
    # stay in int64 only when q^2-regular powers certainly fit
    row_bound = max(le.row_sums() or [0])
    if base.shape[0] * max(1, row_bound) ** max_len < 2 ** 62:
        acc = base.copy()
        traces = [int(np.trace(acc))]
        for _ in range(max_len - 1):
            acc = acc @ base
            traces.append(int(np.trace(acc)))
        return traces
    obj = base.astype(object)
    acc = obj.copy()
    traces = [int(np.trace(acc))]
    for _ in range(max_len - 1):
        acc = acc @ obj
        traces.append(int(np.trace(acc)))
    return traces


def counts_from_traces(traces):
    """Geodesic counts from edge traces: N_m = tr^m + 2 tr^{m/2} (m even)."""
    out = []
    for m in range(1, len(traces) + 1):
        value = traces[m - 1]
        if m % 2 == 0:
            value += 2 * traces[m // 2 - 1]
        out.append(value)
    return out


def walk_count_oracle(cx: ComplexDescription, m):
    """Closed m-step admissible edge sequences, by explicit enumeration.

    Walks over type-one edges where consecutive edges share no chamber; the
    count must equal trace(L_E^m).  Never touches the operator matrices.
    """
    if m < 1:
        raise ValueError("walk length must be >= 1")
    if m > 8:
        raise ValueError("walk length above 8 refused (combinatorial explosion)")
    cx.require_valid()
    edges = cx.edges
    chambers_of = {e.id: set() for e in edges}
    for c in cx.chambers:
        for eid in c.edge_ids:
            chambers_of[eid].add(c.id)
    by_tail = {}
    for k, e in enumerate(edges):
        by_tail.setdefault(e.tail, []).append(k)
    succ = []
    for e in edges:
        mine = chambers_of[e.id]
        succ.append(
            [k for k in by_tail.get(e.head, ()) if mine.isdisjoint(chambers_of[edges[k].id])]
        )

    total = 0

    def extend(current, remaining, start):
        nonlocal total
        if remaining == 0:
            if current == start:
                total += 1
            return
        for nxt in succ[current]:
            extend(nxt, remaining - 1, start)

    for start in range(len(edges)):
        extend(start, m, start)
    return total

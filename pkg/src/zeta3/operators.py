"""The four adjacency operators of a complex, as sparse integer matrices.

Out-degrees are forced by the local structure: q^2+q+1 for the vertex
operator A1, q^2 for the edge operator, q for the directed-chamber operator.
Those row sums double as the cross-check that the combinatorial successor
rules below implement the intended coset actions.

For presentation-backed complexes the matrices are computed from generator
bookkeeping (edge (g, x) steps to (g + (1, c(x)), y) for y off the line
lam(x), and similarly for chambers); for geometric complexes the equivalent
incidence rules are used.  Both paths are exposed so they can be compared.
"""

from __future__ import annotations

import numpy as np

from .complexes import ComplexDescription, Presented


class SparseIntegerMatrix:
    """Square integer matrix in sparse form: (row, col) -> multiplicity."""

    __slots__ = ("n", "entries")

    def __init__(self, n, entries=None):
        self.n = int(n)
        self.entries = {}
        if entries:
            for (i, j), v in dict(entries).items():
                self.add(i, j, v)

    def add(self, i, j, v=1):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError((i, j))
        if v == 0:
            return
        key = (i, j)
        new = self.entries.get(key, 0) + v
        if new == 0:
            del self.entries[key]
        else:
            self.entries[key] = new

    def get(self, i, j):
        return self.entries.get((i, j), 0)

    def __eq__(self, other):
        if not isinstance(other, SparseIntegerMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self):
        return f"SparseIntegerMatrix(n={self.n}, nnz={len(self.entries)})"

    def transpose(self):
        return SparseIntegerMatrix(
            self.n, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def negated(self):
        return SparseIntegerMatrix(
            self.n, {k: -v for k, v in self.entries.items()}
        )

    def row_sums(self):
        sums = [0] * self.n
        for (i, _j), v in self.entries.items():
            sums[i] += v
        return sums

    def col_sums(self):
        sums = [0] * self.n
        for (_i, j), v in self.entries.items():
            sums[j] += v
        return sums

    def trace(self):
        return sum(v for (i, j), v in self.entries.items() if i == j)

    def to_dense(self):
        rows = [[0] * self.n for _ in range(self.n)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def to_numpy(self):
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), v in self.entries.items():
            a[i, j] = v
        return a

    def with_increment(self, i, j, delta=1):
        """Copy with one entry bumped; used by identity mutation tests."""
        out = SparseIntegerMatrix(self.n, self.entries)
        out.add(i, j, delta)
        return out

    def triplets(self):
        """Sorted (row, col, value) triples."""
        return [(i, j, v) for (i, j), v in sorted(self.entries.items())]


# -- index orderings ----------------------------------------------------------


def vertex_index(cx: ComplexDescription):
    return {v.id: k for k, v in enumerate(cx.vertices)}

def edge_index(cx: ComplexDescription):
    return {e.id: k for k, e in enumerate(cx.edges)}


def directed_chamber_index(cx: ComplexDescription):
    return {dc: k for k, dc in enumerate(cx.directed_chambers())}


# -- vertex operators ---------------------------------------------------------


def build_a1(cx: ComplexDescription):
    """A1[u][v] = number of type-one edges u -> v; row sums q^2+q+1."""
    cx.require_valid()
    vidx = vertex_index(cx)
    m = SparseIntegerMatrix(len(cx.vertices))
    for e in cx.edges:
        m.add(vidx[e.tail], vidx[e.head])
    return m


def build_a2(cx: ComplexDescription):
    """The type-two vertex operator: exactly the transpose of A1."""
    return build_a1(cx).transpose()


# -- edge operator ------------------------------------------------------------


def build_le_geometric(cx: ComplexDescription):
    """Edge successor rule: e -> e' when head(e) = tail(e') and no chamber
    contains both."""
    cx.require_valid()
    eidx = edge_index(cx)
    by_tail = {}
    for e in cx.edges:
        by_tail.setdefault(e.tail, []).append(e)
    chambers_of = {e.id: set() for e in cx.edges}
    for c in cx.chambers:
        for eid in c.edge_ids:
            chambers_of[eid].add(c.id)
    m = SparseIntegerMatrix(len(cx.edges))
    for e in cx.edges:
        mine = chambers_of[e.id]
        for succ in by_tail.get(e.head, ()):
            if mine.isdisjoint(chambers_of[succ.id]):
                m.add(eidx[e.id], eidx[succ.id])
    return m


def _presented_data(cx):
    pres = cx.provenance.presentation
    volt = cx.provenance.voltage
    return pres, volt, pres.plane.n, volt.m, volt.c


def build_le_presented(cx: ComplexDescription):
    """Generator rule: (g, x) -> (g + (1, c(x)), y) for every y off lam(x)."""
    cx.require_valid()
    pres, _volt, n, m_mod, c = _presented_data(cx)
    line_pts = pres.plane.all_line_points()
    off_line = [
        [y for y in range(n) if y not in line_pts[pres.lam[x]]] for x in range(n)
    ]

    def eidx(g3, gm, x):
        return (g3 * m_mod + gm) * n + x

    m = SparseIntegerMatrix(3 * m_mod * n)
    for g3 in range(3):
        for gm in range(m_mod):
            for x in range(n):
                h3, hm = (g3 + 1) % 3, (gm + c[x]) % m_mod
                src = eidx(g3, gm, x)
                for y in off_line[x]:
                    m.add(src, eidx(h3, hm, y))
    return m


def build_le(cx: ComplexDescription):
    """Edge adjacency operator; row sums q^2."""
    if isinstance(cx.provenance, Presented):
        return build_le_presented(cx)
    return build_le_geometric(cx)


# -- directed chamber operator --------------------------------------------


def build_lb_geometric(cx: ComplexDescription):
    """Directed chamber (c, r) steps to (c', r+1) for every chamber c' != c
    containing the second edge of (c, r) at slot r+1."""
    cx.require_valid()
    dcs = cx.directed_chambers()
    didx = {dc: k for k, dc in enumerate(dcs)}
    chamber_by_id = {c.id: c for c in cx.chambers}
    slot_map = {}
    for c in cx.chambers:
        for pos, eid in enumerate(c.edge_ids):
            slot_map.setdefault((eid, pos), []).append(c.id)
    m = SparseIntegerMatrix(len(dcs))
    for dc in dcs:
        c = chamber_by_id[dc.chamber_id]
        r2 = (dc.rotation + 1) % 3
        f2 = c.edge_ids[r2]
        src = didx[dc]
        for cid in slot_map.get((f2, r2), ()):
            if cid != c.id:
                m.add(src, didx[(cid, r2)])
    return m


def build_lb_presented(cx: ComplexDescription):
    """Generator rule: (g, (x,y,z)) -> (g + (1, c(x)), (y,s,r)) for every
    triple (y,s,r) with s != z."""
    cx.require_valid()
    pres, _volt, n, m_mod, c = _presented_data(cx)
    triples = pres.sorted_triples()
    tpos = {t: k for k, t in enumerate(triples)}
    by_first = {}
    for t in triples:
        by_first.setdefault(t[0], []).append(t)

    # pair (g3, gm, triple) of each directed chamber, in canonical order
    pair_of = []
    for a in range(m_mod):
        for t in triples:
            x, y, z = t
            pair_of.append((0, a, t))
            pair_of.append((1, (a + c[x]) % m_mod, (y, z, x)))
            pair_of.append((2, (a + c[x] + c[y]) % m_mod, (z, x, y)))
    # canonical order is (chamber id, rotation) = the order generated above,
    # matching ComplexDescription.directed_chambers() for these complexes
    pidx = {p: k for k, p in enumerate(pair_of)}

    m = SparseIntegerMatrix(len(pair_of))
    for src, (g3, gm, (x, y, z)) in enumerate(pair_of):
        h3, hm = (g3 + 1) % 3, (gm + c[x]) % m_mod
        for t in by_first[y]:
            if t[1] != z:
                m.add(src, pidx[(h3, hm, t)])
    return m


def build_lb(cx: ComplexDescription):
    """Directed chamber adjacency operator; row sums q."""
    if isinstance(cx.provenance, Presented):
        return build_lb_presented(cx)
    return build_lb_geometric(cx)

"""Line-oriented complex files.

Header ``zeta3-complex v1``, then ``q <int>`` and ``mode presented|geometric``.
Presented mode carries the point-line bijection, the full ordered triple set,
and one voltage line; the projective plane itself is canonical for the given
q and is not stored.  Geometric mode lists vertices, edges, and chambers
explicitly.  ``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

from .complexes import ComplexDescription, Geometric, Presented
from .construct import (
    TrianglePresentation,
    VoltageAssignment,
    abelian_cover,
    projective_plane,
)
from .errors import ConstructionError, ParseError

HEADER = "zeta3-complex v1"


def serialize(cx: ComplexDescription):
    """Render a complex to its file form; presented complexes keep their
    presentation so the round trip is exact."""
    lines = [HEADER, f"q {cx.q}"]
    if isinstance(cx.provenance, Presented):
        pres = cx.provenance.presentation
        volt = cx.provenance.voltage
        lines.append("mode presented")
        for x, l in enumerate(pres.lam):
            lines.append(f"lambda {x}:{l}")
        for (x, y, z) in pres.sorted_triples():
            lines.append(f"triple {x} {y} {z}")
        lines.append("voltage " + " ".join(str(v) for v in (volt.m,) + volt.c))
    else:
        lines.append("mode geometric")
        for v in cx.vertices:
            lines.append(f"vertex {v.id} {v.vtype}")
        for e in cx.edges:
            lines.append(f"edge {e.id} {e.tail} {e.head}")
        for c in cx.chambers:
            lines.append(f"chamber {c.e01} {c.e12} {c.e20}")
    return "\n".join(lines) + "\n"


def _ints(fields, count, line_no, what):
    if len(fields) != count:
        raise ParseError(f"{what}: expected {count} fields, got {len(fields)}", line_no)
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"{what}: non-integer field", line_no)


def parse(text: str):
    """Parse a complex file; raises ParseError for syntax problems and
    ConstructionError when a presented complex cannot be built."""
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((line_no, line))
    if not rows:
        raise ParseError("empty file")
    line_no, header = rows[0]
    if header != HEADER:
        raise ParseError(f"bad header {header!r}", line_no)

    q = None
    mode = None
    lam = {}
    triples = []
    voltage = None
    vertices = []
    edges = []
    chambers = []
    for line_no, line in rows[1:]:
        fields = line.split()
        key, rest = fields[0], fields[1:]
        if key == "q":
            (q,) = _ints(rest, 1, line_no, "q")
        elif key == "mode":
            if len(rest) != 1 or rest[0] not in ("presented", "geometric"):
                raise ParseError("mode must be presented or geometric", line_no)
            mode = rest[0]
        elif key == "lambda":
            if len(rest) != 1 or ":" not in rest[0]:
                raise ParseError("lambda line must be 'lambda x:l'", line_no)
            a, _, b = rest[0].partition(":")
            try:
                x, l = int(a), int(b)
            except ValueError:
                raise ParseError("lambda indices must be integers", line_no)
            if x in lam:
                raise ParseError(f"duplicate lambda for point {x}", line_no)
            lam[x] = l
        elif key == "triple":
            triples.append(tuple(_ints(rest, 3, line_no, "triple")))
        elif key == "voltage":
            if voltage is not None:
                raise ParseError("duplicate voltage line", line_no)
            vals = _ints(rest, len(rest), line_no, "voltage")
            if len(vals) < 1:
                raise ParseError("voltage line needs modulus", line_no)
            voltage = (vals[0], tuple(vals[1:]))
        elif key == "vertex":
            vertices.append(tuple(_ints(rest, 2, line_no, "vertex")))
        elif key == "edge":
            edges.append(tuple(_ints(rest, 3, line_no, "edge")))
        elif key == "chamber":
            chambers.append(tuple(_ints(rest, 3, line_no, "chamber")))
        else:
            raise ParseError(f"unknown record {key!r}", line_no)

    if q is None:
        raise ParseError("missing q")
    if mode is None:
        raise ParseError("missing mode")

    if mode == "presented":
        if vertices or edges or chambers:
            raise ParseError("geometric records in presented mode")
        plane = projective_plane(q)
        n = plane.n
        if sorted(lam) != list(range(n)):
            raise ParseError(f"lambda must cover points 0..{n - 1}")
        lam_tuple = tuple(lam[x] for x in range(n))
        expected = n * (q + 1)
        if len(triples) != expected:
            # wrong record count reads as a truncated or padded file, not as
            # semantically bad presentation data
            raise ParseError(f"expected {expected} triple records, found {len(triples)}")
        if voltage is None:
            raise ParseError("missing voltage line")
        m, c = voltage
        if len(c) != n:
            raise ParseError(f"voltage vector must have {n} entries")
        pres = TrianglePresentation(plane=plane, lam=lam_tuple, triples=frozenset(triples))
        return abelian_cover(pres, VoltageAssignment(m=m, c=c))

    if lam or triples or voltage:
        raise ParseError("presented records in geometric mode")
    chamber_rows = [(k, e01, e12, e20) for k, (e01, e12, e20) in enumerate(chambers)]
    return ComplexDescription(
        q=q, vertices=vertices, edges=edges, chambers=chamber_rows, provenance=Geometric()
    )


def load(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}")


def save(cx, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(cx))

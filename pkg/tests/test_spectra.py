import math

import pytest

from zeta3.errors import Zeta3Error
from zeta3.polynomials import IntPoly
from zeta3.spectra import (
    classify,
    cube_factor_multiplicity,
    ramanujan_verdicts,
    rep_census,
    split_trivial,
    steinberg_divisibility,
    trivial_factor,
    zero_moduli,
)
from zeta3.zeta import ZetaParts, zeta_parts


@pytest.fixture(scope="module")
def base_parts(base2):
    return zeta_parts(base2)


def test_zero_moduli_cube():
    assert zero_moduli(IntPoly([1, 0, 0, -1])) == pytest.approx([1.0, 1.0, 1.0])


def test_zero_moduli_linear():
    assert zero_moduli(IntPoly([1, -4])) == pytest.approx([0.25])


def test_zero_moduli_requires_unit_constant():
    with pytest.raises(ValueError):
        zero_moduli(IntPoly([2, 1]))


def test_zero_moduli_multiplicity():
    p = IntPoly([1, -2]) ** 5 * IntPoly([1, 0, 3])
    mods = zero_moduli(p)
    assert len(mods) == 7
    assert sum(1 for m in mods if abs(m - 0.5) < 1e-9) == 5
    assert sum(1 for m in mods if abs(m - 3 ** -0.5) < 1e-9) == 2


def test_zero_moduli_near_collision_fallback():
    # roots 1e-40 apart collide at the Newton working precision, forcing the
    # slow full-precision fallback; both must still be found
    p = IntPoly([1, -(10 ** 20)]) * IntPoly([1, -(10 ** 20 + 1)])
    mods = zero_moduli(p)
    assert len(mods) == 2
    assert all(abs(m - 1e-20) < 1e-25 for m in mods)


def test_pe_base_trivial_moduli(base_parts):
    mods = zero_moduli(base_parts.p_e)
    assert sum(1 for m in mods if abs(m - 0.25) <= 1e-6) >= 3


def test_trivial_factors_divide(base_parts):
    for tag, poly in (("A", base_parts.p_a), ("E", base_parts.p_e), ("B", base_parts.p_b)):
        reduced, exact = split_trivial(poly, 2, tag)
        assert exact
        assert reduced * trivial_factor(2, tag) == poly


def test_classify_base_vertex(base_parts):
    spec = classify(base_parts.p_a, 2, "A")
    assert spec.degree == 9
    assert spec.exact_trivial
    assert spec.unclassified == []
    assert spec.bucket_count("1", trivial=True) == 3
    assert spec.bucket_count("q^-1", trivial=True) == 3
    assert spec.bucket_count("q^-2", trivial=True) == 3
    assert spec.bucket_count("q^-1", trivial=False) == 0


def test_classify_base_chamber(base_parts):
    spec = classify(base_parts.p_b, 2, "B")
    assert spec.bucket_count("1", trivial=False) == 6  # 3(chi - 1)
    assert spec.bucket_count("q^-1/2") == 18
    assert spec.bucket_count("q^-1/4") == 36
    assert spec.bucket_count("q^-3/4") == 0
    total = sum(b.count for b in spec.buckets) + len(spec.unclassified)
    assert total == spec.degree


def test_classify_cube_for_chamber_operator():
    spec = classify(IntPoly([1, 0, 0, -1]), 2, "B")
    assert spec.bucket_count("1") == 3
    assert not spec.exact_trivial
    assert spec.unclassified == []


def test_bucket_counts_sum_to_degree(small_battery):
    for cx in small_battery:
        parts = zeta_parts(cx)
        for tag, poly in (("A", parts.p_a), ("E", parts.p_e), ("B", parts.p_b)):
            spec = classify(poly, cx.q, tag)
            trivials = 3 * (3 if tag == "A" else 1) if spec.exact_trivial else 0
            counted = sum(b.count for b in spec.buckets if not b.trivial or not spec.exact_trivial)
            assert trivials + counted + len(spec.unclassified) == spec.degree


def test_verdicts_base(base_parts):
    rep = ramanujan_verdicts(base_parts)
    assert rep.vertex_criterion and rep.edge_criterion and rep.chamber_criterion
    assert rep.agree
    assert rep.is_ramanujan


def test_verdicts_battery_agree(small_battery):
    for cx in small_battery:
        rep = ramanujan_verdicts(zeta_parts(cx))
        assert rep.agree, f"criteria disagree on {cx}"


def synthetic_parts(p_a=None, p_e=None, p_b=None, q=2, chi=3, n0=3, n1=21, n2=21):
    base_a = trivial_factor(q, "A")
    base_e = trivial_factor(q, "E")
    base_b = trivial_factor(q, "B")
    return ZetaParts(
        q=q,
        n0=n0,
        n1=n1,
        n2=n2,
        chi=chi,
        p_a=base_a * (p_a or IntPoly.one()),
        p_e=base_e * (p_e or IntPoly.one()),
        p_b=base_b * (p_b or IntPoly.one()),
    )


def test_planted_vertex_zero_fails_criterion():
    # a vertex zero of modulus q^-2 away from the trivial block
    parts = synthetic_parts(p_a=IntPoly([1, -4]) ** 3)
    rep = ramanujan_verdicts(parts)
    assert not rep.vertex_criterion


def test_conflicting_synthetic_parts_disagree():
    parts = synthetic_parts(p_e=IntPoly([1, -3]))  # edge zero at 1/3: off-spectrum
    rep = ramanujan_verdicts(parts)
    assert not rep.edge_criterion
    assert rep.vertex_criterion  # vacuously clean
    assert not rep.agree
    with pytest.raises(Zeta3Error):
        rep.is_ramanujan


def test_steinberg_divisibility_base(base_parts):
    assert steinberg_divisibility(base_parts.p_b, 3)
    assert cube_factor_multiplicity(base_parts.p_b) == 2  # exactly chi - 1


def test_steinberg_divisibility_battery(small_battery):
    for cx in small_battery:
        chi = cx.counts()[3]
        parts = zeta_parts(cx)
        assert steinberg_divisibility(parts.p_b, chi)
        assert cube_factor_multiplicity(parts.p_b) == chi - 1


def test_steinberg_chi_one_trivial(base_parts):
    assert steinberg_divisibility(base_parts.p_b, 1)


def test_census_base(base2, base_parts):
    census = rep_census(base_parts, base2.counts())
    assert (census.a, census.b, census.c, census.d, census.e) == (0, 3, 6, 0, 18)
    assert census.consistent
    assert census.type_d_count == 0


def test_census_battery(small_battery):
    for cx in small_battery:
        n0, n1, n2, _ = cx.counts()
        census = rep_census(zeta_parts(cx), cx.counts())
        assert census.consistent, census.diagnostics
        assert census.b == 3
        assert census.c == 3 * n0 - 3 * n1 + 3 * n2 - 3
        assert census.e - census.d == n1 - 3 * n0 + 6
        assert 6 * census.a + census.b + census.c + 3 * census.d + 3 * census.e == 3 * n2
        assert census.a + census.b + census.d == n0


def test_census_flags_corruption(base2, base_parts):
    bad = ZetaParts(
        q=2,
        n0=3,
        n1=21,
        n2=21,
        chi=3,
        p_a=base_parts.p_a,
        p_e=base_parts.p_e,
        p_b=base_parts.p_b * IntPoly([1, -1]),  # spurious modulus-1 zero
    )
    census = rep_census(bad, base2.counts())
    assert not census.consistent
    assert census.diagnostics


def test_moduli_accuracy(base_parts):
    # refined moduli hit the exact targets far inside the 1e-9 contract
    mods = zero_moduli(base_parts.p_b)
    targets = [1.0, 0.5, 2 ** -0.5, 2 ** -0.25]
    for m in mods:
        err = min(abs(m - t) for t in targets)
        assert err < 1e-11

"""Group-model oracles: conjugacy layout, centralizer tables with the fixed
label conventions, distinguished lattices, quotient recognition."""
import pytest

from fourierbasis.groups import (
    build_standard,
    quotient,
    subgroup_generated,
    symmetric_group,
    x_lattice,
)
from fourierbasis.scalars import Cyclo, MINUS_ONE, ONE

S4 = symmetric_group(4)
S5 = symmetric_group(5)


def perm_of(one_based_images):
    return tuple(i - 1 for i in one_based_images)


T12 = perm_of([2, 1, 3, 4, 5])
T34 = perm_of([1, 2, 4, 3, 5])
T45 = perm_of([1, 2, 3, 5, 4])
C123 = perm_of([2, 3, 1, 4, 5])
C345 = perm_of([1, 2, 4, 5, 3])
D1234 = perm_of([2, 1, 4, 3, 5])


def test_build_standard_orders():
    assert build_standard("S5").order == 120
    assert build_standard("V3").order == 8
    assert build_standard("S3xS2").order == 12
    assert build_standard("V2xV1").order == 8


@pytest.mark.parametrize("bad", ["S6", "Q8", "V0", "S3xQ8", ""])
def test_build_standard_rejects(bad):
    with pytest.raises(ValueError):
        build_standard(bad)


def test_s5_class_layout():
    data = S5.conjugacy()
    assert [c.label for c in data.classes] == ["1", "g2", "g2'", "g3", "g6", "g5", "g4"]
    assert [c.size for c in data.classes] == [1, 10, 15, 20, 20, 24, 30]
    assert data.classes[1].rep == T12
    assert data.classes[4].rep == perm_of([2, 3, 1, 5, 4])


def test_transports_hit_the_representative():
    for G in (S4, S5):
        data = G.conjugacy()
        for a in G.elements:
            m = data.transport[a]
            assert G.conj(m, a) == data.rep_of(a)


def test_centralizer_orders_in_s5():
    for rep_images, size in [
        ([2, 1, 3, 4, 5], 12),
        ([2, 1, 4, 3, 5], 8),
        ([2, 3, 1, 4, 5], 6),
        ([2, 3, 1, 5, 4], 6),
        ([2, 3, 4, 1, 5], 4),
        ([2, 3, 4, 5, 1], 5),
    ]:
        assert len(S5.centralizer(perm_of(rep_images))) == size


@pytest.mark.parametrize(
    "descriptor,count",
    [("S1", 1), ("S2", 4), ("S3", 8), ("S4", 21), ("S5", 39), ("V2", 16), ("S3xS2", 32)],
)
def test_pair_counts_from_centralizer_tables(descriptor, count):
    G = build_standard(descriptor)
    data = G.conjugacy()
    assert sum(len(G.centralizer_character_table(c.rep).labels) for c in data.classes) == count


def test_s5_character_rows():
    t = S5.character_table()
    reps = [c.rep for c in S5.conjugacy().classes]  # 1, g2, g2', g3, g6, g5, g4
    lam1 = t.labels.index("lam^1")
    got = [t.value(lam1, r) for r in reps]
    assert got == [Cyclo.from_rational(v) for v in (4, 2, 0, 1, -1, -1, 0)]
    nu = t.labels.index("nu'")
    got = [t.value(nu, r) for r in reps]
    assert got == [Cyclo.from_rational(v) for v in (5, -1, 1, -1, -1, 0, 1)]


def test_klein_labels_in_s4():
    x = perm_of([2, 1, 3, 4, 5])[:4]
    t = S4.centralizer_character_table(x)
    assert t.labels == ("1", "eps'", "eps''", "eps")
    t34 = perm_of([1, 2, 4, 3, 5])[:4]
    i_ep, i_epp = t.labels.index("eps'"), t.labels.index("eps''")
    assert t.value(i_ep, x) == MINUS_ONE and t.value(i_ep, t34) == ONE
    assert t.value(i_epp, x) == ONE and t.value(i_epp, t34) == MINUS_ONE


def test_d8_labels_in_s4():
    z = perm_of([2, 1, 4, 3, 5])[:4]
    t = S4.centralizer_character_table(z)
    assert t.labels == ("1", "eps", "eps'", "eps''", "r")
    four_cycle = perm_of([3, 4, 2, 1, 5])[:4]  # (1324), squares to z
    assert S4.mul(four_cycle, four_cycle) == z
    dbl = perm_of([3, 4, 1, 2, 5])[:4]  # (13)(24)
    x12 = perm_of([2, 1, 3, 4, 5])[:4]
    idx = {lab: i for i, lab in enumerate(t.labels)}
    assert t.value(idx["eps"], four_cycle) == ONE
    assert t.value(idx["eps"], x12) == MINUS_ONE
    assert t.value(idx["eps'"], x12) == MINUS_ONE
    assert t.value(idx["eps'"], dbl) == ONE
    assert t.value(idx["eps''"], x12) == ONE
    assert t.value(idx["eps''"], dbl) == MINUS_ONE
    assert t.value(idx["r"], z) == Cyclo.from_rational(-2)
    assert t.value(idx["r"], four_cycle) == Cyclo()


def test_transposition_centralizer_in_s5():
    t = S5.centralizer_character_table(T12)
    assert t.labels == ("1", "r", "eps", "-1", "-r", "-eps")
    idx = {lab: i for i, lab in enumerate(t.labels)}
    assert t.value(idx["-1"], T12) == MINUS_ONE
    assert t.value(idx["-1"], C345) == ONE
    assert t.value(idx["r"], C345) == MINUS_ONE
    assert t.value(idx["r"], T34) == Cyclo()
    assert t.value(idx["-r"], T12) == Cyclo.from_rational(-2)


def test_three_cycle_centralizer_in_s5():
    t = S5.centralizer_character_table(C123)
    assert t.labels == ("1", "th", "th^2", "eps", "eps*th", "eps*th^2")
    idx = {lab: i for i, lab in enumerate(t.labels)}
    th = Cyclo.root_of_unity(3)
    assert t.value(idx["th"], C123) == th
    assert t.value(idx["th"], T45) == ONE
    assert t.value(idx["eps"], T45) == MINUS_ONE
    assert t.value(idx["eps*th^2"], S5.mul(C123, T45)) == th * th * Cyclo.from_rational(-1)


def test_order_six_centralizer_labels():
    g6 = perm_of([2, 3, 1, 5, 4])
    t = S5.centralizer_character_table(g6)
    assert t.labels == ("1", "-th^2", "th", "-1", "th^2", "-th")
    th = Cyclo.root_of_unity(3)
    assert t.value(1, g6) == Cyclo.from_rational(-1) * th * th
    assert t.value(2, g6) == th


def test_f2_and_product_tables():
    V3 = build_standard("V3")
    t = V3.character_table()
    t.verify_orthogonality()
    assert t.labels[3] == "n110"
    assert t.value(3, 0b010) == MINUS_ONE
    assert t.value(3, 0b011) == ONE
    assert t.value(3, 0b100) == ONE
    tp = build_standard("S3xS2").character_table()
    assert "r|eps" in tp.labels
    i = tp.labels.index("r|eps")
    g = (perm_of([2, 3, 1, 4, 5])[:3], perm_of([2, 1, 3, 4, 5])[:2])
    assert tp.value(i, g) == MINUS_ONE * MINUS_ONE


def test_x_lattice_s5():
    lat = x_lattice(5)
    orders = {name: len(sub.members) for name, sub in lat.members.items()}
    assert orders == {
        "S1": 1,
        "S2": 2,
        "S2S2": 4,
        "S3": 6,
        "D8": 8,
        "S3S2": 12,
        "S4": 24,
        "S5": 120,
    }
    s3 = lat.members["S3"].member_set
    assert s3 == subgroup_generated(S5, [T34, T45]).member_set
    inter = lat.members["S3S2"].member_set & lat.members["D8"].member_set
    assert inter == lat.members["S2S2"].member_set
    ident = lat.identifications["S3S2"]
    g = S5.mul(C345, T12)
    assert ident.mapping[g] == (perm_of([2, 3, 1, 4, 5])[:3], perm_of([2, 1, 3, 4, 5])[:2])
    assert lat.identifications["D8"] is None
    # homomorphism check for every identification
    for name, sub in lat.members.items():
        idf = lat.identifications[name]
        if idf is None:
            continue
        for a in sub.members:
            for b in sub.members:
                assert idf.mapping[S5.mul(a, b)] == idf.target.mul(idf.mapping[a], idf.mapping[b])


def test_x_lattice_s4():
    lat = x_lattice(4)
    assert set(lat.members) == {"S1", "S2", "S2S2", "S3", "D8", "S4"}
    assert len(lat.members["D8"].members) == 8
    t34 = perm_of([1, 2, 4, 3, 5])[:4]
    ident = lat.identifications["S2S2"]
    e2 = (0, 1)
    assert ident.mapping[t34] == (e2, (1, 0))
    s3 = lat.members["S3"].member_set
    assert all(g[3] == 3 for g in s3) and len(s3) == 6


def test_quotients_recognized():
    lat = x_lattice(5)
    q = quotient(S5, lat.members["S3S2"], lat.members["S3"])
    assert q.standard is not None and q.standard.target.name == "S2"
    q2 = quotient(S5, lat.members["S3S2"], lat.members["S2"])
    assert q2.standard is not None and q2.standard.target.name == "S3"
    for c1 in q2.model.elements:
        for c2 in q2.model.elements:
            assert q2.standard.mapping[q2.model.mul(c1, c2)] == q2.standard.target.mul(
                q2.standard.mapping[c1], q2.standard.mapping[c2]
            )
    lat4 = x_lattice(4)
    q3 = quotient(S4, lat4.members["D8"], lat4.members["S2S2"])
    assert q3.standard is not None and q3.standard.target.name == "S2"
    V3 = build_standard("V3")
    sub = subgroup_generated(V3, [0b001, 0b010, 0b100], "V3")
    line = subgroup_generated(V3, [0b001], "L")
    q4 = quotient(V3, sub, line)
    assert q4.standard is not None and q4.standard.target.name == "V2"


def test_quotient_rejects_non_normal():
    S3 = symmetric_group(3)
    whole = subgroup_generated(S3, [(1, 0, 2), (1, 2, 0)], "S3")
    bad = subgroup_generated(S3, [(1, 0, 2)], "S2")
    with pytest.raises(ValueError):
        quotient(S3, whole, bad)


def test_unrecognized_centralizer_error_names_order_and_exponent():
    q = quotient(S5, x_lattice(5).members["D8"], x_lattice(5).members["S1"])
    with pytest.raises(ValueError, match="order 8"):
        q.model.character_table()

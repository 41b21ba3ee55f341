import pytest

from fglab import moduli
from fglab.errors import SearchSpaceTooLarge


@pytest.mark.parametrize("ring,d", [("F_2", 2), ("F_3", 2), ("Z/4", 2), ("F_2", 3), ("F_3", 3)])
def test_pruned_enumeration_matches_raw(ring, d):
    fast = moduli.enumerate_buds(ring, d)
    raw = moduli.enumerate_buds_raw(ring, d)
    assert [b.coeffs for b in fast] == [b.coeffs for b in raw]


@pytest.mark.parametrize("ring,n", [("F_5", 5), ("Z/4", 4), ("Z/6", 6), ("F_4", 4)])
def test_degree_two_buds_are_free(ring, n):
    assert len(moduli.enumerate_buds(ring, 2)) == n


@pytest.mark.parametrize("ring,d", [("F_5", 2), ("Z/4", 2), ("F_2", 3), ("F_3", 3)])
def test_group_order(ring, d):
    R = moduli.ring_spec(ring)
    assert len(moduli.enumerate_coordchanges(R, d)) == len(R.units()) * len(R) ** (d - 1)


@pytest.mark.parametrize("ring,d", [("F_5", 2), ("Z/4", 2), ("Z/9", 2), ("F_2", 3)])
def test_groupoid_report(ring, d):
    rep = moduli.groupoid_report(ring, d)
    assert rep["ok"], rep["checks"]
    assert sum(o["size"] for o in rep["orbits"]) == rep["bud_count"]


def test_degree_two_transformation_law():
    R = moduli.ring_spec("F_5")
    for t in moduli.enumerate_coordchanges(R, 2):
        for b in moduli.enumerate_buds(R, 2):
            got = moduli.act(t, b)
            c = R.element(b.coeffs[0])
            expect = moduli.bud_c_prime(R, c, R.element(t.coeffs[0]), R.element(t.coeffs[1]))
            assert got.coeffs[0] == expect.i


def test_f5_single_orbit():
    rep = moduli.groupoid_report("F_5", 2)
    assert [(o["size"], o["stabilizer_order"]) for o in rep["orbits"]] == [(5, 4)]


def test_z4_characteristic_two_orbits():
    # over Z/4, c' = c t0 - 2 t1/t0 only moves c within its class mod 2
    rep = moduli.groupoid_report("Z/4", 2)
    assert len(rep["orbits"]) == 2


def test_limits():
    with pytest.raises(ValueError):
        moduli.enumerate_buds("F_5", 5)
    with pytest.raises(ValueError):
        moduli.ring_spec("Z/200")
    with pytest.raises(SearchSpaceTooLarge):
        moduli.enumerate_buds_raw("F_25", 4)


def test_inverse_and_composition():
    R = moduli.ring_spec("Z/9")
    G = moduli.enumerate_coordchanges(R, 2)
    for t in G[:20]:
        assert t.compose(t.inverse()).is_identity()
        assert t.inverse().compose(t).is_identity()

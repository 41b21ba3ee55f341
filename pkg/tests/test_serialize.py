import json

import pytest

from fglab import fgl
from fglab.local import make_local_field, make_unramified, qp
from fglab.rings import QQ, finite_ring
from fglab.serialize import (
    dumps,
    field_from_json,
    law_from_json,
    law_to_json,
    laws_equal,
    ring_from_json,
    ring_to_json,
    series_from_json,
    series_to_json,
)
from fglab.series import TruncSeries


@pytest.mark.parametrize("L", [qp(5, 20), make_local_field(make_unramified(5, 1, 20), [(-5,), (0,)], 20),
                               make_local_field(make_unramified(5, 2, 12), [(-5, 0)], 12)])
def test_field_roundtrip(L):
    assert field_from_json(json.loads(dumps(L.to_json()))).to_json() == L.to_json()


@pytest.mark.parametrize("R", [QQ, finite_ring("Z/9"), finite_ring("F_4")])
def test_ring_roundtrip(R):
    assert ring_from_json(ring_to_json(R)) == R


def test_law_roundtrip_bytes():
    L = make_local_field(make_unramified(5, 1, 20), [(-5,), (0,)], 20)
    F = fgl.lubin_tate_from_frobenius(L, 8)
    text = dumps(law_to_json(F))
    G = law_from_json(json.loads(text))
    assert laws_equal(F, G)
    assert dumps(law_to_json(G)) == text


def test_series_roundtrip_finite_field():
    R = finite_ring("F_4")
    s = TruncSeries(R, ("T",), 5, {(1,): R.one, (3,): R.element(2)})
    assert series_from_json(series_to_json(s)).equals(s)


def test_dumps_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'

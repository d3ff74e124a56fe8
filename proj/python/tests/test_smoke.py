import json
from fractions import Fraction

import pytest

import hgm


def test_family_and_hodge():
    f = hgm.Family("[-21,1,2,3,4,5,6]")
    assert f.n == 18
    assert hgm.hodge_vector(f)["h"] == [1, 2, 12, 2, 1]
    assert hgm.Family("[-5,-2,3,4]").vol == 7


def test_frobenius_polynomial():
    q0 = hgm.Family("[1,2,8];[3,12]")
    assert hgm.frobenius_poly(q0, Fraction(3, 2), 5) == [1, -1, 0, 0, 0, -1, 1]
    q5 = hgm.Family("[1,1,1,1,1,1];[3,3,3]")
    assert hgm.frobenius_poly(q5, "3/2", 7)[:4] == [1, 12, 7 * 888, 7**3 * 1816]


def test_legendre_trace():
    leg = hgm.Family("[1,1];[2,2]")
    # y^2 = x(1-x)(x-2) over F_5
    count = sum(1 for x in range(5) for y in range(5) if (y * y - x * (1 - x) * (x - 2)) % 5 == 0)
    assert hgm.trace(leg, 2, 5) == 5 - count


def test_conductor():
    f = hgm.Family("[1,1,1,1,1];[2,2,2,2,2]")
    r = hgm.conductor(f, 1024)
    assert r["value"] == 1023
    assert r["exact"]
    fx = hgm.conductor(hgm.Family("[18];[2,2,12]"), 1)
    assert fx["value"] == 2**6 * 3**9
    assert fx["uses_fixtures"]


def test_counts():
    assert hgm.mum_counts(5) == [1, 1, 4, 4, 14, 14]
    assert hgm.census_total(24) == 464023329


def test_errors():
    with pytest.raises(hgm.HgmError):
        hgm.Family("[1,2,3]")
    with pytest.raises(ValueError):
        hgm.trace(hgm.Family("[1,1];[2,2]"), 1, 5)


def test_cli_and_export():
    code, out, err = hgm.run_cli(["info", "--param", "[-5,-2,3,4]", "--json"])
    assert code == 0
    assert json.loads(out)["kappa"] == 1
    assert hgm.run_cli(["info"])[0] == 2
    doc = json.loads(hgm.export_json(hgm.Family("[1,1,1,1,1,1];[3,3,3]"), "3/2", 10))
    assert doc["schema"] == "hgm/1"

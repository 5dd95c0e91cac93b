import pytest

import towns


def test_star_checks_and_certifies():
    f = towns.star(2, 1, 3, 10)
    assert len(f) == 9
    assert f.spec == (10, 3, 2, 1)
    assert f.check()
    cert = towns.certify(f, 3)
    assert cert["kind"] == "independence"
    assert cert["holds"] and cert["rank"] == 9


def test_frankl_odlyzko_and_search_agree_at_12():
    fo = towns.frankl_odlyzko(3, 12)
    assert len(fo) == 24 and fo.check()
    assert towns.certify(fo, 3)["holds"]
    r = towns.extremal_search(0, 0, 3, 12)
    assert r["size"] == 24
    assert r["status"] == "optimal"
    assert r["witness"].check()


def test_family_round_trip_and_violations():
    f = towns.Family(3, 3, 2, 0, [[1, 2], [2, 3]])
    assert not f.check()
    (v,) = f.violations()
    assert v["kind"] == "pair_intersection"
    assert towns.Family.parse(f.render()) == f
    assert f.substitute().substitute() == f


def test_bounds_and_table():
    b = towns.bound_oracle(0, 1, 3, 9)
    assert b["value"] == 8
    assert any(r["id"] == "n-minus-1-direct" for r in b["rules"])
    rows = {(c["a"], c["b"]): c for c in towns.table(3, 10)}
    assert rows[(0, 2)]["tight"] and rows[(0, 2)]["upper"] == "10"
    assert "Tight: n" in towns.table_markdown(3, 10)


def test_naive_matches_search_small():
    for a in range(3):
        for b in range(3):
            assert towns.naive_extremal(a, b, 3, 5) == towns.extremal_search(a, b, 3, 5)["size"]


def test_probe_reports_no_counterexamples():
    r = towns.probe_conjectures(3, 6)
    assert r["cells_optimal"] == r["cells_computed"] == 54
    assert r["counterexamples"] == []


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        towns.star(0, 2, 3, 2)
    with pytest.raises(ValueError):
        towns.Family.parse("4 3\n")
    with pytest.raises(RuntimeError):
        towns.naive_extremal(0, 0, 2, 12)

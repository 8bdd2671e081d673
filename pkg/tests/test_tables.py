import pytest

from q8mackey import tables
from q8mackey.linalg import AbelianGroup
from q8mackey.tables import OUT_OF_RANGE, evaluate, full_table, lookup, resolve, table_ids, window


def G(text):
    return AbelianGroup.parse(text)


def test_fixture_lists_every_family():
    ids = table_ids()
    for key in ("SnrhoHomology", "SuspAlpha", "SuspAlphaBeta", "SuspAlphaBetaGamma",
                "AFamily:A+", "AFamily:A-dual", "ThetaPos:plus:m<=0", "ThetaNeg:minus:m>0"):
        assert key in ids


@pytest.mark.parametrize("table_id,params,q,expected", [
    ("SnrhoHomology", {"n": 3}, 5, "Z/2 + Z/2"),
    ("SnrhoHomology", {"n": 2}, 0, "Z"),
    ("SnrhoHomology", {"n": 2}, 3, "Z/8"),
    ("SnrhoHomology", {"n": 2}, 4, "0"),
    ("SuspAlphaBeta", {"n": 1}, 4, "Z/2"),
    ("SuspAlphaBetaGamma", {"n": 1}, 3, "Z"),
    ("AFamily", {"variant": "A-dual", "s": 5}, -4, "Z/2"),
    ("ThetaPos", {"sign": "plus", "n": 1, "m": 4}, 2, "Z/2"),
])
def test_published_values(table_id, params, q, expected):
    assert lookup(table_id, params, q) == G(expected)


def test_top_degree_is_outside_published_range():
    rows = dict(full_table("SnrhoHomology", {"n": 1}))
    assert rows[3] is OUT_OF_RANGE and rows[0] == G("Z")
    assert str(OUT_OF_RANGE) == "outside published table" and not OUT_OF_RANGE


def test_minus_split_is_a_sum():
    params = {"sign": "minus", "n": 2, "m": 3}
    key = resolve("ThetaPos", params)
    assert key == "ThetaPos:minus:m>0"
    for q in window("ThetaPos", params):
        a = lookup("ThetaPos:minus:theta2", {"n": 2}, q + 1)
        b = lookup("ThetaPos:minus:c0m", {"m": 3}, q)
        got = lookup("ThetaPos", params, q)
        if a is OUT_OF_RANGE or b is OUT_OF_RANGE:
            assert got is OUT_OF_RANGE
        else:
            assert got == a + b


def test_domain_is_enforced():
    with pytest.raises(ValueError):
        lookup("ThetaPos", {"sign": "plus", "n": -1, "m": 0}, 0)
    with pytest.raises(ValueError):
        lookup("SnrhoHomology", {}, 0)
    with pytest.raises(KeyError):
        resolve("Prop9", {})


def test_expression_evaluator_is_restricted():
    assert evaluate("q % 4 == 3 and 0 < q < 4*n - 1", {"q": 7, "n": 3})
    assert evaluate("-m + 1", {"m": 2}) == -1
    for bad in ("__import__('os')", "n.real", "[x for x in n]", "lambda: 1"):
        with pytest.raises(ValueError):
            evaluate(bad, {"n": 1})


def test_fixture_is_package_data():
    assert tables.fixture()["version"] == 1

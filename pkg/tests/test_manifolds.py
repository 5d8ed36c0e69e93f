import json

import pytest

from rationalimm.errors import ParseError, ValidationError
from rationalimm.manifolds import CATALOG_NAMES, catalog, format_manifold, lookup, parse_manifold

S2_FILE = {
    "name": "S2",
    "dim": 2,
    "betti": [1, 0, 1],
    "simply_connected": True,
    "closed": True,
    "euler_zero": False,
}


def text(**changes):
    obj = dict(S2_FILE, **changes)
    return json.dumps({k: v for k, v in obj.items() if v is not ...})


def test_parse_s2():
    M = parse_manifold(text())
    assert M.name == "S2" and M.dim == 2 and M.betti_list == [1, 0, 1]
    assert M.closed and M.simply_connected and not M.euler_zero
    assert M.profile.dual_p_zero_from is None and not M.profile.p_zero_all


def test_parse_optional_fields():
    M = parse_manifold(text(dual_pontryagin_zero_from=1, pontryagin_all_zero=True))
    assert M.profile.dual_p_zero(1) and M.profile.p_zero_all


def test_duality_violation():
    with pytest.raises(ValidationError) as info:
        parse_manifold(text(dim=3, betti=[1, 0, 1, 1]))
    assert info.value.field == "betti" and "duality" in str(info.value)


def test_length_mismatch():
    with pytest.raises(ValidationError) as info:
        parse_manifold(text(betti=[1, 0, 1, 0]))
    assert info.value.field == "betti" and "length" in str(info.value)


@pytest.mark.parametrize(
    "changes,field",
    [
        ({"colour": "red"}, "colour"),
        ({"closed": ...}, "closed"),
        ({"dim": "2"}, "dim"),
        ({"euler_zero": 0}, "euler_zero"),
        ({"betti": [1, 0, -1]}, "betti"),
        ({"betti": [2, 0, 2]}, "betti"),
        ({"betti": [1, 1, 1]}, "betti"),
        ({"dual_pontryagin_zero_from": 0}, "dual_pontryagin_zero_from"),
    ],
)
def test_validation_errors(changes, field):
    with pytest.raises(ValidationError) as info:
        parse_manifold(text(**changes))
    assert info.value.field == field


def test_open_manifold_skips_duality():
    M = parse_manifold(text(name="R3", dim=3, betti=[1, 0, 0, 0], closed=False, euler_zero=True))
    assert not M.closed


@pytest.mark.parametrize("bad", ["{", "[1, 2]", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_manifold(bad)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_round_trip(name):
    M = lookup(name)
    assert parse_manifold(format_manifold(M)) == M


def test_catalog_lookups():
    S3 = lookup("S3")
    assert S3.dim == 3 and S3.betti_list == [1, 0, 0, 1] and S3.euler_zero
    CP2 = lookup("CP2")
    assert CP2.dim == 4 and CP2.betti_list == [1, 0, 1, 0, 1] and not CP2.euler_zero
    P = lookup("S3xS3")
    assert P.dim == 6 and P.betti_list == [1, 0, 0, 2, 0, 0, 1] and P.euler_zero


def test_catalog_euler_flags_follow_euler_characteristic():
    for M in catalog():
        if M.dim % 2 == 1:
            assert M.euler_zero
        elif M.dim > 0:
            assert M.euler_zero == (M.euler_characteristic == 0)


def test_catalog_entries_are_closed_and_simply_connected():
    names = [M.name for M in catalog()]
    assert names == list(CATALOG_NAMES)
    assert all(M.closed and M.simply_connected for M in catalog())


def test_lookup_extras_and_unknown():
    assert lookup("R5").dim == 5 and not lookup("R5").closed
    assert lookup("S9").betti_list[9] == 1
    with pytest.raises(KeyError):
        lookup("T2")

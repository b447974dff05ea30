"""Smoke test for the twoterm extension module.

Build it first with `pip install --no-build-isolation -e crates/python`,
then run `python3 python/smoke_test.py` or `pytest python/`.
"""

import json

import twoterm


def test_groups():
    g = twoterm.Group("Z/4+Z/2+Z")
    assert g.invariant_factors() == (1, ["2", "4"])
    assert g.order() is None
    assert twoterm.Group("Z/6").is_isomorphic(twoterm.Group("Z/2+Z/3"))
    assert twoterm.Group.from_json(g.to_json()).is_isomorphic(g)


def test_bockstein():
    b = twoterm.Butterfly.fixture("B")
    ik2 = twoterm.Butterfly.fixture("IK2")
    assert b.is_invertible()
    assert not b.is_2_isomorphic(ik2)
    assert b.after(b).is_2_isomorphic(ik2)
    zero = b.src().zero_to(b.dst())
    assert (b + b).is_2_isomorphic(zero)
    assert b.classify() == (True, True, True, True)
    assert str(b.carrier()) == "Z/4"


def test_json_and_refusals():
    b = twoterm.Butterfly.fixture("B")
    text = b.to_json()
    assert twoterm.Butterfly.from_json(text).to_json() == text
    doc = json.loads(text)
    doc["q"] = [["0" for _ in row] for row in doc["q"]]
    try:
        twoterm.Butterfly.from_json(json.dumps(doc))
    except RuntimeError as e:
        assert "not exact at carrier" in str(e)
    else:
        raise AssertionError("a zeroed q passed validation")
    try:
        twoterm.Butterfly.from_json("{")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed JSON was accepted")


def test_complexes_and_derived():
    e2 = twoterm.Complex.fixture("E2")
    h1, h0 = e2.homology()
    assert (str(h1), str(h0)) == ("0", "Z/2")
    k = twoterm.Complex.from_parts(twoterm.Group("Z"), twoterm.Group("Z"), [[3]])
    assert str(k.homology()[1]) == "Z/3"
    assert e2.identity().is_invertible()
    assert twoterm.tor("Z/4", "Z/6") == ("Z/2", "Z/2")
    assert twoterm.biext("Z/2", "Z/2", "Z") == ("0", "Z/2")


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
            print(f"{name}: ok")

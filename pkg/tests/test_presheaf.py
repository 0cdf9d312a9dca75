import pytest

from presheaf_workbench import (ContractError, Presheaf, PresheafContext, PresheafMap,
                                SizeError, ValidationError, boundary, budget_limit,
                                codiscrete, compose, enumerate_maps, find_iso, from_initial,
                                identity, initial, inverse, is_iso, is_mono, preset_cube,
                                preset_poset, preset_simplex, product, subpresheaf,
                                terminal, to_terminal, validate_map, validate_presheaf,
                                yoneda, yoneda_element)
from presheaf_workbench.gtc import graph_map
from presheaf_workbench.search import canonical_key

from .oracles import is_mono_by_definition, natural_maps


def discrete(base, n):
    return Presheaf(base, {ob: n for ob in base.objects},
                    {m: tuple(range(n)) for m, _, _ in base.morphisms})


def test_representable_sizes(s1, c1):
    y1 = yoneda(s1, "[1]")
    assert validate_presheaf(y1).ok
    assert y1.sizes == {"[0]": 2, "[1]": 3}
    assert yoneda(c1, "[1]").sizes == {"[0]": 2, "[1]": 3}


def test_representable_of_poset_bottom():
    chain = preset_poset("01", [("0", "0"), ("1", "1"), ("0", "1")])
    assert yoneda(chain, "0").sizes == {"0": 1, "1": 0}
    assert yoneda(chain, "1").sizes == {"0": 1, "1": 1}


def test_functoriality_failure_is_reported(s1):
    y1 = yoneda(s1, "[1]")
    action = dict(y1.action)
    action["1>1:00"] = (1, 1, 1)
    bad = Presheaf(s1, y1.sizes, action, name="bad")
    report = validate_presheaf(bad)
    assert not report.ok
    assert any("1>1:00" in detail for _, detail in report.failures)


def test_out_of_range_action_rejected(s1):
    with pytest.raises(ValidationError):
        Presheaf(s1, {"[0]": 1, "[1]": 1}, {"0>1:0": (3,), "0>1:1": (0,), "1>0:00": (0,),
                                            "1>1:00": (0,), "1>1:11": (0,)})


def test_non_natural_map_reported(s1):
    y1 = yoneda(s1, "[1]")
    comps = {ob: list(range(n)) for ob, n in y1.sizes.items()}
    comps["[0]"] = [1, 0]
    report = validate_map(PresheafMap(y1, y1, comps))
    assert not report.ok


def test_identity_is_natural(s1):
    assert validate_map(identity(codiscrete(s1, 2))).ok


@pytest.mark.parametrize("base", [preset_simplex(1), preset_simplex(2), preset_cube(1),
                                  preset_cube(2)], ids=lambda c: c.name)
def test_yoneda_count_law(base):
    for a in base.objects:
        for b in base.objects:
            maps = enumerate_maps(yoneda(base, a), yoneda(base, b))
            assert len(maps) == len(base.hom(a, b))


def test_enumeration_agrees_with_brute_force(s1):
    I = yoneda(s1, "[1]")
    K = codiscrete(s1, 2)
    for X, Y in [(I, I), (boundary(s1, "[1]").source, I), (I, K), (K, I), (K, K)]:
        fast = enumerate_maps(X, Y)
        slow = natural_maps(X, Y)
        assert len(fast) == len(slow)
        assert {m._key for m in fast} == {tuple(c[ob] for ob in s1.objects) for c in slow}


def test_enumeration_is_canonical_and_repeatable(s1):
    X = product(yoneda(s1, "[1]"), codiscrete(s1, 2)).apex
    Y = codiscrete(s1, 3)
    first = enumerate_maps(X, Y)
    keys = [canonical_key(X, m.components) for m in first]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert enumerate_maps(X, Y) == first


def test_initial_and_terminal_maps(s1):
    Y = codiscrete(s1, 2)
    assert len(enumerate_maps(initial(s1), Y)) == 1
    assert len(enumerate_maps(Y, terminal(s1))) == 1
    assert enumerate_maps(initial(s1), Y)[0] == from_initial(Y)
    assert enumerate_maps(Y, terminal(s1))[0] == to_terminal(Y)


def test_mono_examples(s1):
    assert is_mono(identity(yoneda(s1, "[1]")))
    assert not is_mono(to_terminal(discrete(s1, 2)))
    I = yoneda(s1, "[1]")
    for i in enumerate_maps(I, I):
        assert is_mono(graph_map(i))


def test_is_mono_matches_definition(s1):
    tests = [yoneda(s1, c) for c in s1.objects]
    I = yoneda(s1, "[1]")
    K = codiscrete(s1, 2)
    for X, Y in [(I, I), (I, K), (K, I), (boundary(s1, "[1]").source, I)]:
        for m in enumerate_maps(X, Y):
            assert is_mono(m) == is_mono_by_definition(m, tests)


def test_compose_and_monos(s1):
    I = yoneda(s1, "[1]")
    bd = boundary(s1, "[1]")
    m = enumerate_maps(I, I)[1]
    assert compose(m, identity(I)) == m
    assert is_mono(compose(identity(I), bd))
    with pytest.raises(ContractError):
        compose(bd, bd)


def test_inverse_of_iso(s1):
    K = codiscrete(s1, 2)
    swaps = [m for m in enumerate_maps(K, K) if is_iso(m)]
    assert len(swaps) == 2
    for m in swaps:
        assert compose(inverse(m), m) == identity(K)


def test_boundary_levels(s2, c1):
    assert boundary(s2, "[1]").source.sizes == {"[0]": 2, "[1]": 2, "[2]": 2}
    assert boundary(s2, "[2]").source.sizes == {"[0]": 3, "[1]": 6, "[2]": 9}
    assert boundary(c1, "[1]").source.sizes == {"[0]": 2, "[1]": 2}


def test_subpresheaf_must_be_closed(s1):
    I = yoneda(s1, "[1]")
    with pytest.raises(ValidationError):
        subpresheaf(I, {"[1]": [1]})


def test_yoneda_element_classifies(s1):
    K = codiscrete(s1, 2)
    for x in range(K.sizes["[1]"]):
        m = yoneda_element(K, "[1]", x)
        ident = s1.hom("[1]", "[1]").index("1>1:01")
        assert m.components["[1]"][ident] == x


def test_find_iso(s1):
    X = product(yoneda(s1, "[1]"), terminal(s1)).apex
    assert find_iso(X, yoneda(s1, "[1]")) is not None
    assert find_iso(yoneda(s1, "[1]"), codiscrete(s1, 2)) is None


def test_budget_exceeded_raises(s1):
    X = product(codiscrete(s1, 2), codiscrete(s1, 2)).apex
    with pytest.raises(SizeError):
        enumerate_maps(X, codiscrete(s1, 3), budget=5)
    with budget_limit(5), pytest.raises(SizeError):
        enumerate_maps(X, codiscrete(s1, 3))


def test_serialization_round_trip(s1):
    X = codiscrete(s1, 2)
    assert Presheaf.from_dict(s1, X.to_dict()) == X
    m = enumerate_maps(X, X)[3]
    assert PresheafMap(X, X, m.to_dict()) == m


def test_context_checks(s1):
    ctx = PresheafContext(s1, yoneda(s1, "[1]"))
    assert ctx.check_h3([yoneda(s1, "[1]"), codiscrete(s1, 2), initial(s1)]).ok
    with pytest.raises(ContractError):
        PresheafContext(s1, yoneda(preset_simplex(2), "[1]"))

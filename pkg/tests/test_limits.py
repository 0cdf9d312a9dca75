import pytest

from presheaf_workbench import (ContractError, Square, boundary, check_pullback_square,
                                codiscrete, coequalizer, compose, enumerate_maps, equalizer,
                                find_iso, from_initial, global_element, identity, is_iso,
                                is_mono, pair, product, pullback, pushout, subpresheaf,
                                terminal, times, yoneda)
from presheaf_workbench.gtc import interval_vertex
from presheaf_workbench.limits import check_h1_instance, is_equalizer_fork, pulled_back_pushout

from .test_presheaf import discrete


def test_square_of_interval(s1):
    I = yoneda(s1, "[1]")
    assert product(I, I).apex.sizes == {"[0]": 4, "[1]": 9}


def test_product_with_terminal(s1):
    X = codiscrete(s1, 2)
    cone = product(X, terminal(s1))
    assert is_iso(cone["pr1"])


def test_pairing_and_times(s1):
    I = yoneda(s1, "[1]")
    cone = product(I, I)
    f, g = enumerate_maps(I, I)[:2]
    m = pair(f, g)
    assert compose(cone["pr1"], m) == f and compose(cone["pr2"], m) == g
    assert compose(cone["pr1"], times(f, g)) == compose(f, cone["pr1"])


def test_endpoints_have_empty_pullback(ctx1):
    v0, v1 = interval_vertex(ctx1, 0), interval_vertex(ctx1, 1)
    cone = pullback(v0, v1)
    assert cone.apex.is_empty()


def test_pullback_of_identities(s1):
    X = codiscrete(s1, 2)
    cone = pullback(identity(X), identity(X))
    assert is_iso(cone["p1"]) and is_iso(cone["p2"])


def test_coproduct_sizes_add(s1):
    A, B = yoneda(s1, "[1]"), codiscrete(s1, 2)
    apex = pushout(from_initial(A), from_initial(B)).apex
    assert apex.sizes == {ob: A.sizes[ob] + B.sizes[ob] for ob in s1.objects}


def test_pushout_along_identity(s1):
    I = yoneda(s1, "[1]")
    g = boundary(s1, "[1]")
    cone = pushout(identity(g.source), g)
    assert is_iso(cone["i2"])
    assert cone.apex.sizes == I.sizes


def test_open_prism_domain_counts(ctx1):
    s1 = ctx1.base
    I = ctx1.interval
    c = boundary(s1, "[1]")
    i = compose(interval_vertex(ctx1, 0), enumerate_maps(I, terminal(s1))[0])
    top = pair(identity(c.source), compose(i, c))
    D = pushout(c, top).apex
    assert D.sizes == {"[0]": 4, "[1]": 7}


def test_equalizers(s1):
    X = codiscrete(s1, 2)
    f = enumerate_maps(X, X)[2]
    assert is_iso(equalizer(f, f)["e"])
    two = discrete(s1, 2)
    one = terminal(s1)
    a, b = global_element(two, 0), global_element(two, 1)
    assert equalizer(a, b).apex.is_empty()
    assert is_equalizer_fork(identity(X), f, f)
    assert is_equalizer_fork(from_initial(one), a, b)


def test_coequalizer_identifies_endpoints(ctx1):
    v0, v1 = interval_vertex(ctx1, 0), interval_vertex(ctx1, 1)
    loop = coequalizer(v0, v1).apex
    # the degenerate edges at the two endpoints are glued as well
    assert loop.sizes == {"[0]": 1, "[1]": 2}


def test_gap_and_cogap_are_mediators(s1):
    I = yoneda(s1, "[1]")
    K = codiscrete(s1, 2)
    to = enumerate_maps(I, K)[3]
    cone = pullback(to, to)
    m = cone.gap(identity(I), identity(I))
    assert compose(cone["p1"], m) == identity(I)
    po = pushout(from_initial(I), from_initial(K))
    cg = po.cogap(to, identity(K))
    assert compose(cg, po["i1"]) == to and compose(cg, po["i2"]) == identity(K)


@pytest.mark.parametrize("which", ["product", "pullback", "pushout", "equalizer",
                                   "coequalizer"])
def test_universal_properties(ctx1, which):
    s1, I = ctx1.base, ctx1.interval
    v0, v1 = interval_vertex(ctx1, 0), interval_vertex(ctx1, 1)
    K = codiscrete(s1, 2)
    f, g = enumerate_maps(I, I)[0], enumerate_maps(I, I)[2]
    cone = {
        "product": lambda: product(I, K),
        "pullback": lambda: pullback(v0, identity(I)),
        "pushout": lambda: pushout(v0, v1),
        "equalizer": lambda: equalizer(f, g),
        "coequalizer": lambda: coequalizer(f, g),
    }[which]()
    assert cone.verify().ok


def test_defining_square_is_pullback(ctx1):
    I = ctx1.interval
    c = boundary(ctx1.base, "[1]")
    for i in enumerate_maps(I, I):
        sq = Square(pair(identity(c.source), compose(i, c)), c,
                    times(c, identity(I)), pair(identity(I), i))
        assert check_pullback_square(sq)


def test_proper_subobject_apex_is_not_pullback(s1):
    I = yoneda(s1, "[1]")
    inc = subpresheaf(I, {"[0]": [0], "[1]": [0]})
    sq = Square(inc, inc, identity(I), identity(I))
    assert not check_pullback_square(sq)


def test_non_commuting_square_rejected(ctx1):
    v0, v1 = interval_vertex(ctx1, 0), interval_vertex(ctx1, 1)
    one = v0.source
    with pytest.raises(ContractError):
        check_pullback_square(Square(identity(one), identity(one), v0, v1))


def test_pullback_preserves_the_gtc_pushout(ctx1):
    s1, I = ctx1.base, ctx1.interval
    c = boundary(s1, "[1]")
    K = codiscrete(s1, 2)
    ZxI = product(I, I)
    for i in enumerate_maps(I, I):
        top = pair(identity(c.source), compose(i, c))
        span = (c, top)
        legs = (pair(identity(I), i), times(c, identity(I)))
        p = product(ZxI.apex, K)["pr1"]
        assert check_h1_instance(p, span, legs)
        comparison, details = pulled_back_pushout(p, span, legs)
        assert comparison.target == details["pullback_of_pushout"].apex


def test_monos_stable_under_pullback(s1):
    I = yoneda(s1, "[1]")
    c = boundary(s1, "[1]")
    for f in enumerate_maps(codiscrete(s1, 2), I):
        assert is_mono(pullback(c, f)["p2"])


def test_iso_between_pushout_presentations(s1):
    I = yoneda(s1, "[1]")
    a = pushout(from_initial(I), from_initial(terminal(s1))).apex
    b = pushout(from_initial(terminal(s1)), from_initial(I)).apex
    assert find_iso(a, b) is not None

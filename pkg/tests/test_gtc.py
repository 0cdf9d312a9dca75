from math import comb

import pytest

from presheaf_workbench import (ContractError, PresheafContext, SizeError, biased_gtc,
                                boundary, build_gtc, codiscrete, compose, compose_all,
                                constant_map, enumerate_maps, find_iso, from_initial,
                                graph_map, identity, image, interval_vertex, is_iso,
                                is_mono, open_prism_inclusion, preset_simplex, prism_gtc,
                                product, terminal, to_terminal, yoneda)
from presheaf_workbench.gtc import iso_over, graph_gtc_iso, gtc_square_report


def simplices(n, k):
    """Number of k-simplices of the n-simplex (monotone maps [k] -> [n])."""
    return comb(n + k + 1, k + 1)


def boundary_simplices(n, k):
    """k-simplices of the boundary: the non-surjective monotone maps."""
    return simplices(n, k) - comb(k, n)


def open_prism_count(n, k):
    """Cells of the open prism in level k, counted by inclusion and exclusion."""
    bd = boundary_simplices(n, k)
    return bd * (k + 2) + simplices(n, k) - bd


def test_graph_map_basics(ctx1):
    I = ctx1.interval
    for i in enumerate_maps(I, I):
        g = graph_map(i, ctx1)
        assert is_mono(g)
        assert compose(product(I, I)["pr1"], g) == identity(I)
    diagonal = image(graph_map(identity(I), ctx1)).source
    assert diagonal.sizes["[1]"] == 3


def test_graph_map_requires_interval(ctx1):
    K = codiscrete(ctx1.base, 2)
    with pytest.raises(ContractError):
        graph_map(identity(K), ctx1)


def test_gtc_of_iso_is_iso(ctx1):
    I = ctx1.interval
    for i in enumerate_maps(I, I):
        assert is_iso(build_gtc(ctx1, identity(I), i).u)


def test_gtc_from_initial_is_graph(ctx1):
    K = codiscrete(ctx1.base, 2)
    for i in enumerate_maps(K, ctx1.interval):
        spec, phi = graph_gtc_iso(ctx1, K, i)
        assert phi is not None
        assert compose(graph_map(i), phi) == spec.u


def test_open_prism_counts_simplex1(ctx1):
    c = boundary(ctx1.base, "[1]")
    spec = build_gtc(ctx1, c, constant_map(c.target, interval_vertex(ctx1, 0)))
    assert spec.D.sizes == {"[0]": 4, "[1]": 7}
    assert spec.ZxI.sizes == {"[0]": 4, "[1]": 9}
    assert spec.transcript.ok


def test_gtc_preconditions(ctx1):
    I = ctx1.interval
    with pytest.raises(ContractError):
        build_gtc(ctx1, to_terminal(I), to_terminal(I))
    with pytest.raises(ContractError):
        build_gtc(ctx1, identity(I), identity(codiscrete(ctx1.base, 2)))


def test_biased_gtc_of_vertex(ctx1):
    one = terminal(ctx1.base)
    v0 = interval_vertex(ctx1, 0)
    spec = biased_gtc(ctx1, from_initial(one), v0)
    phi = find_iso(one, spec.D)
    pr2 = product(one, ctx1.interval)["pr2"]
    assert compose_all(pr2, spec.u, phi) == v0


def test_biased_gtc_matches_constant_gtc(ctx1):
    c = boundary(ctx1.base, "[1]")
    for eps in (0, 1):
        point = interval_vertex(ctx1, eps)
        biased = biased_gtc(ctx1, c, point)
        plain = build_gtc(ctx1, c, constant_map(c.target, point))
        assert biased.u == plain.u
        assert biased.D.sizes == {"[0]": 4, "[1]": 7}
    assert is_iso(biased_gtc(ctx1, identity(ctx1.interval), interval_vertex(ctx1, 0)).u)


def test_prism_n0_is_vertex(ctx1):
    for eps in (0, 1):
        spec = prism_gtc(ctx1, 0, eps)
        assert spec.D.sizes == {"[0]": 1, "[1]": 1}
        pr2 = product(spec.Z, ctx1.interval)["pr2"]
        phi = find_iso(terminal(ctx1.base), spec.D)
        assert compose_all(pr2, spec.u, phi) == interval_vertex(ctx1, eps)


def test_prism_counts_over_simplex2(ctx2):
    first = prism_gtc(ctx2, 1, 0)
    for k in range(3):
        assert first.D.sizes[f"[{k}]"] == open_prism_count(1, k)
        assert first.ZxI.sizes[f"[{k}]"] == simplices(1, k) ** 2
    assert prism_gtc(ctx2, 1, 0).D == first.D


def test_prism_ends_differ_and_domains_are_not_isomorphic(ctx2):
    j0, j1 = prism_gtc(ctx2, 1, 0), prism_gtc(ctx2, 1, 1)
    assert j0.u != j1.u
    assert j0.D.sizes == j1.D.sizes
    # the 0-end has a vertex with two outgoing edges, the 1-end has none
    assert find_iso(j0.D, j1.D) is None


@pytest.mark.parametrize("n", range(3))
@pytest.mark.parametrize("eps", (0, 1))
def test_prism_matches_direct_union(n, eps):
    base = preset_simplex(3)
    ctx = PresheafContext(base, yoneda(base, "[1]"))
    spec = prism_gtc(ctx, n, eps)
    direct = open_prism_inclusion(ctx, n, eps)
    assert iso_over(spec.u, direct) is not None
    for k in range(4):
        assert spec.D.sizes[f"[{k}]"] == open_prism_count(n, k)


def test_prism_needs_enough_truncation(ctx1):
    with pytest.raises(SizeError):
        prism_gtc(ctx1, 1, 0)


def test_interval_vertex_needs_standard_interval(s1):
    ctx = PresheafContext(s1, codiscrete(s1, 2))
    with pytest.raises(ContractError):
        interval_vertex(ctx, 0)


def test_gtc_square_report(ctx1):
    c = boundary(ctx1.base, "[1]")
    for i in enumerate_maps(ctx1.interval, ctx1.interval):
        assert gtc_square_report(ctx1, c, i).ok

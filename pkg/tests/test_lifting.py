import random
import threading

import pytest

from presheaf_workbench import (ConstructionError, ContractError, FibrationWitness, LiftFailure,
                                LiftingProblem, RetractData, all_lifts, boundary,
                                check_retract, codiscrete, compose, enumerate_maps,
                                from_initial, identity, initial, interval_vertex, is_iso,
                                lift_via_retract, pullback, pullback_witness,
                                rlp_certificate, solve_lift, terminal, to_terminal)
from presheaf_workbench.suites import random_presheaf, random_subobject

from . import oracles


def random_problems(base, count, seed, cap=3):
    """Seeded commuting squares with a mono left leg, solvable or not."""
    rng = random.Random(seed)
    problems = []
    while len(problems) < count:
        B = random_presheaf(base, rng, cap=cap)
        u = random_subobject(B, rng)
        if is_iso(u):
            continue
        X = random_presheaf(base, rng, cap=cap)
        Y = random_presheaf(base, rng, cap=cap)
        ps = enumerate_maps(X, Y)
        if not ps:
            continue
        p = rng.choice(ps)
        squares = [(g, h) for h in enumerate_maps(B, Y) for g in enumerate_maps(u.source, X)
                   if compose(p, g) == compose(h, u)]
        if squares:
            g, h = rng.choice(squares)
            problems.append(LiftingProblem(u, p, g, h))
    return problems


def test_iso_left_leg_has_exactly_one_lift(ctx1):
    I = ctx1.interval
    K = codiscrete(ctx1.base, 2)
    for g in enumerate_maps(I, K):
        prob = LiftingProblem(identity(I), to_terminal(K), g, to_terminal(I))
        assert all_lifts(prob) == [g]


def test_absent_lift(s1):
    one = terminal(s1)
    zero_to_one = from_initial(one)
    prob = LiftingProblem(zero_to_one, zero_to_one, identity(initial(s1)), identity(one))
    assert solve_lift(prob) is None


def test_noncommuting_square_rejected(ctx1):
    v0, v1 = interval_vertex(ctx1, 0), interval_vertex(ctx1, 1)
    one = v0.source
    with pytest.raises(ContractError):
        LiftingProblem(identity(one), identity(ctx1.interval), v0, v1)


@pytest.mark.parametrize("seed", range(5))
def test_search_matches_brute_force(s1, seed):
    for prob in random_problems(s1, 6, seed):
        found = all_lifts(prob)
        expected = oracles.lifts(prob)
        assert len(found) == len(expected)
        assert ({tuple(tuple(L.components[ob]) for ob in s1.objects) for L in found}
                == {tuple(tuple(c[ob]) for ob in s1.objects) for c in expected})
        first = solve_lift(prob)
        assert (first is None) == (not found)
        if found:
            assert first == found[0]
            assert all(prob.is_lift(L) for L in found)


def test_rlp_certificate_reports_counterexample(ctx1):
    one = terminal(ctx1.base)
    I = ctx1.interval
    v0 = interval_vertex(ctx1, 0)
    solvable = LiftingProblem(v0, v0, identity(one), compose(v0, to_terminal(I)))
    # a lift would be a retraction of I onto a point that is the identity on I
    unsolvable = LiftingProblem(v0, v0, identity(one), identity(I))
    cert = rlp_certificate(v0, [solvable, unsolvable, solvable])
    assert not cert.ok
    assert cert.counterexample is unsolvable
    assert len(cert.lifts) == 1
    assert rlp_certificate(v0, [solvable, solvable]).ok


def test_rlp_certificate_rejects_foreign_family(ctx1):
    one = terminal(ctx1.base)
    prob = LiftingProblem(from_initial(one), identity(one), from_initial(one), identity(one))
    with pytest.raises(ContractError):
        rlp_certificate(to_terminal(ctx1.interval), [prob])


def identity_retract(u):
    return RetractData(identity(u.source), identity(u.source),
                       identity(u.target), identity(u.target))


def test_check_retract(ctx1):
    u = boundary(ctx1.base, "[1]")
    assert check_retract(u, u, identity_retract(u)).ok
    swap = [m for m in enumerate_maps(u.target, u.target) if m != identity(u.target)]
    broken = RetractData(identity(u.source), identity(u.source), swap[0], swap[0])
    report = check_retract(u, u, broken)
    assert not report.ok
    assert any("r_cod" in name for name, _ in report.failures)


def test_lift_via_retract(ctx1):
    u = boundary(ctx1.base, "[1]")
    K = codiscrete(ctx1.base, 3)
    p = to_terminal(K)
    for g in enumerate_maps(u.source, K)[:5]:
        prob = LiftingProblem(u, p, g, to_terminal(u.target))
        L = lift_via_retract(prob, u, identity_retract(u), solve_lift)
        assert prob.is_lift(L)
    swap = [m for m in enumerate_maps(u.target, u.target) if m != identity(u.target)][0]
    with pytest.raises(ContractError):
        lift_via_retract(prob, u, RetractData(identity(u.source), identity(u.source),
                                              swap, swap), solve_lift)


def test_lift_via_retract_failure_is_reported(s1):
    one = terminal(s1)
    u = from_initial(one)
    prob = LiftingProblem(u, u, identity(initial(s1)), identity(one))
    with pytest.raises(LiftFailure) as info:
        lift_via_retract(prob, u, identity_retract(u), solve_lift)
    assert info.value.stage == "retract"


def test_witness_cache_and_threads(s1):
    problems = random_problems(s1, 8, seed=11)
    witnesses = {}
    for prob in problems:
        witnesses.setdefault(id(prob.p), FibrationWitness(prob.p))
    results = {}

    def worker(k):
        out = []
        for prob in problems:
            w = witnesses[id(prob.p)]
            out.append(w.try_lift(prob))
        results[k] = out

    threads = [threading.Thread(target=worker, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(results[k] == results[0] for k in results)
    assert results[0] == [solve_lift(prob) for prob in problems]
    assert sum(w.cache_size() for w in witnesses.values()) <= len(problems)


def test_witness_raises_on_absent_lift(s1):
    one = terminal(s1)
    u = from_initial(one)
    w = FibrationWitness(u, name="0->1")
    with pytest.raises(LiftFailure):
        w.lift(LiftingProblem(u, u, identity(initial(s1)), identity(one)))
    with pytest.raises(ContractError):
        w.try_lift(LiftingProblem(u, identity(one), from_initial(one), identity(one)))


def test_witness_rejects_bad_strategy(ctx1):
    I = ctx1.interval
    w = FibrationWitness(to_terminal(I), strategy=lambda prob: identity(I))
    v0 = interval_vertex(ctx1, 0)
    prob = LiftingProblem(v0, to_terminal(I), interval_vertex(ctx1, 1), to_terminal(I))
    with pytest.raises(ConstructionError):
        w.try_lift(prob)


def test_pullback_witness(ctx1):
    K = codiscrete(ctx1.base, 2)
    p = to_terminal(K)
    base_witness = FibrationWitness(p)
    k = to_terminal(ctx1.interval)
    cone = pullback(k, p)
    q_witness = pullback_witness(base_witness, k, cone)
    u = boundary(ctx1.base, "[1]")
    for h in enumerate_maps(u.target, ctx1.interval):
        for g in enumerate_maps(u.source, cone.apex):
            if compose(cone["p1"], g) == compose(h, u):
                prob = LiftingProblem(u, cone["p1"], g, h)
                L = q_witness.lift(prob)
                assert prob.is_lift(L)
    with pytest.raises(ContractError):
        pullback_witness(base_witness, identity(ctx1.interval), cone)

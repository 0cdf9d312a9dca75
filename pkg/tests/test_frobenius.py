import pytest

from presheaf_workbench import (ContractError, FibrationWitness, LiftFailure, build_cube,
                                build_gtc, codiscrete, compose, construct_H, enumerate_maps,
                                find_iso, from_initial, frobenius_witness, identity,
                                initial, interval_vertex, is_iso, left_fibration_counterexample,
                                pair, preset_terminal, product, pullback, pullback_gtc_retract,
                                pushforward, solve_lift, terminal, to_terminal, transpose,
                                transpose_inverse)
from presheaf_workbench.frobenius import adjunction_report, gtc_problems, naturality_report
from presheaf_workbench.lifting import check_retract
from presheaf_workbench.presheaf import Presheaf, PresheafMap
from presheaf_workbench.scenarios import Workspace, bundled


@pytest.fixture(scope="module")
def prop7():
    ws = Workspace(bundled("prop7_reflexive_graphs"))
    gtc = build_gtc(ws.ctx, ws.map("c"), ws.map("i"))
    return gtc, pullback_gtc_retract(gtc, FibrationWitness(ws.map("p")))


def projection_fibration(ctx, gtc, size=2):
    K = codiscrete(ctx.base, size)
    return product(gtc.ZxI, K)["pr1"]


def test_cube_along_identity(ctx1):
    c = from_initial(terminal(ctx1.base))
    gtc = build_gtc(ctx1, c, interval_vertex(ctx1, 0))
    cube = build_cube(gtc, identity(gtc.ZxI))
    assert cube.transcript.ok
    assert cube.X_D.sizes == gtc.D.sizes
    assert is_iso(cube.identification)


def test_cube_rejects_wrong_target(ctx1):
    gtc = build_gtc(ctx1, identity(ctx1.interval), identity(ctx1.interval))
    with pytest.raises(ContractError):
        build_cube(gtc, identity(ctx1.interval))


def test_construct_H_fails_on_non_fibration(ctx1):
    one = terminal(ctx1.base)
    gtc = build_gtc(ctx1, from_initial(one), interval_vertex(ctx1, 0))
    p = pair(identity(one), interval_vertex(ctx1, 1))
    cube = build_cube(gtc, p)
    with pytest.raises(LiftFailure) as info:
        construct_H(cube, FibrationWitness(p))
    assert info.value.stage == "construct_H"
    assert "not a fibration against required instance" in str(info.value)
    with pytest.raises(LiftFailure):
        pullback_gtc_retract(gtc, FibrationWitness(p))


def test_certificate_with_empty_cofibration_domain(ctx1):
    I = ctx1.interval
    gtc = build_gtc(ctx1, from_initial(I), identity(I))
    cert = pullback_gtc_retract(gtc, FibrationWitness(projection_fibration(ctx1, gtc)))
    assert cert.cube.X_CxI.is_empty()
    assert cert.cube.X_C.is_empty()
    assert cert.transcript.ok
    assert check_retract(cert.pstar_u, cert.v.u, cert.retract).ok


def test_prop7_certificate(prop7):
    gtc, cert = prop7
    cube = cert.cube
    assert cube.transcript.ok and cert.transcript.ok
    assert cert.v.c == cube.b
    assert cert.v.i == compose(gtc.i, cube.z)
    assert check_retract(cert.pstar_u, cert.v.u, cert.retract).ok
    assert check_retract(cert.pstar_u_pullback, cert.v.u, cert.retract_pullback).ok
    assert cube.X_D.sizes == cube.pullback_u.apex.sizes
    a, r1 = cert.dagger1
    assert compose(r1, a) == identity(cube.X_Z)
    s2, r2 = cert.dagger2
    assert compose(r2, s2) == identity(cube.X_CxI)


def test_prop7_on_cube_base():
    ws = Workspace(bundled("prop7_cube1"))
    gtc = build_gtc(ws.ctx, ws.map("c"), ws.map("i"))
    cert = pullback_gtc_retract(gtc, FibrationWitness(ws.map("p")))
    assert cert.transcript.ok


def test_pushforward_along_identity_is_f(ctx1):
    K = codiscrete(ctx1.base, 2)
    f = product(ctx1.interval, K)["pr1"]
    pf = pushforward(f, identity(ctx1.interval))
    iso = find_iso(f.source, pf.Xp, over=(f, pf.pf))
    assert iso is not None


def test_pushforward_of_identity_is_iso(ctx1):
    p = to_terminal(ctx1.interval)
    assert is_iso(pushforward(identity(ctx1.interval), p).pf)


def finite_set(base, n):
    return Presheaf(base, {"*": n}, {"*<=*": tuple(range(n))})


def test_pushforward_of_finite_sets_counts_sections():
    base = preset_terminal()
    X, Y = finite_set(base, 5), finite_set(base, 3)
    f = PresheafMap(X, Y, {"*": (0, 0, 1, 1, 2)})
    pf = pushforward(f, to_terminal(Y))
    # sections of f: one choice per fiber
    assert pf.Xp.sizes == {"*": 2 * 2 * 1}
    empty_fiber = PresheafMap(finite_set(base, 2), Y, {"*": (0, 0)})
    assert pushforward(empty_fiber, to_terminal(Y)).Xp.sizes == {"*": 0}


def test_transpose_round_trips(ctx1):
    K = codiscrete(ctx1.base, 2)
    f = product(ctx1.interval, K)["pr1"]
    pf = pushforward(f, to_terminal(ctx1.interval))
    Yp = pf.p.target
    for A in (terminal(ctx1.base), ctx1.interval, K):
        for alpha in enumerate_maps(A, Yp):
            assert adjunction_report(pf, A, alpha).ok
            cone = pullback(alpha, pf.p)
            for m in enumerate_maps(cone.apex, f.source, over=(cone["p2"], f)):
                assert transpose_inverse(pf, alpha, cone, transpose(pf, alpha, cone, m)) == m
    zero = initial(ctx1.base)
    alpha = from_initial(Yp)
    report = adjunction_report(pf, zero, alpha)
    assert report.ok
    assert report.checks[0][2] == "1 vs 1"
    v0 = interval_vertex(ctx1, 0)
    assert naturality_report(pf, v0, to_terminal(ctx1.interval)).ok


def test_transpose_rejects_mismatched_cone(ctx1):
    K = codiscrete(ctx1.base, 2)
    f = product(ctx1.interval, K)["pr1"]
    pf = pushforward(f, to_terminal(ctx1.interval))
    alpha = to_terminal(K)
    cone = pullback(alpha, pf.p)
    with pytest.raises(ContractError):
        transpose(pf, alpha, pullback(pf.p, pf.p), identity(cone.apex))


def small_family(ctx, right, limit=6):
    one = terminal(ctx.base)
    problems = []
    for c in (from_initial(one), from_initial(ctx.interval)):
        for i in enumerate_maps(c.target, ctx.interval):
            problems.extend(gtc_problems(build_gtc(ctx, c, i), right, limit=limit))
    return problems


def test_frobenius_witness_agrees_with_search(ctx1):
    K = codiscrete(ctx1.base, 2)
    f = product(ctx1.interval, K)["pr1"]
    p = to_terminal(ctx1.interval)
    pf = pushforward(f, p)
    witness = frobenius_witness(FibrationWitness(f), FibrationWitness(p), pf)
    family = small_family(ctx1, pf.pf)
    assert family
    for prob in family:
        assert solve_lift(prob) is not None
        assert prob.is_lift(witness.lift(prob))


def test_frobenius_witness_negative_control(ctx1):
    v0 = interval_vertex(ctx1, 0)
    p = identity(ctx1.interval)
    pf = pushforward(v0, p)
    witness = frobenius_witness(FibrationWitness(v0), FibrationWitness(p), pf)
    family = small_family(ctx1, pf.pf)
    unsolvable = [prob for prob in family if solve_lift(prob) is None]
    assert unsolvable
    for prob in unsolvable:
        with pytest.raises(LiftFailure):
            witness.lift(prob)


def test_frobenius_witness_needs_gtc_structure(ctx1):
    K = codiscrete(ctx1.base, 2)
    f = product(ctx1.interval, K)["pr1"]
    p = to_terminal(ctx1.interval)
    witness = frobenius_witness(FibrationWitness(f), FibrationWitness(p))
    prob = small_family(ctx1, witness.p)[0]
    bare = type(prob)(prob.u, prob.p, prob.g, prob.h)
    with pytest.raises(ContractError):
        witness.try_lift(bare)


def test_left_fibration_counterexample():
    report, details = left_fibration_counterexample()
    assert report.ok, report.render()
    assert details["biased family size"] == 3
    assert details["pullback"].apex.is_empty()
    assert solve_lift(details["llp problem"]) is None

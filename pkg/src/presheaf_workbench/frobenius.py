"""Pullbacks of generating trivial cofibrations, pushforward, and Frobenius.

* :func:`pullback_gtc_retract` pulls a gtc ``u = c (x)_i delta`` back along a
  witnessed fibration ``p = <z, t>: X -> Z x I`` and exhibits ``p* u`` as a
  retract of the gtc ``v = b (x)_{iz} delta``.
* :func:`pushforward` computes the dependent product ``p_* f`` of presheaves
  by natural section families, with :func:`transpose` realizing the
  adjunction bijection.
* :func:`frobenius_witness` turns witnesses for ``f`` and ``p`` into a
  witness for ``p_* f``.
* :func:`left_fibration_counterexample` checks that biased fibrations over
  simplicial sets lack this property.
"""

from dataclasses import dataclass, field

from .errors import ConstructionError, ContractError, LiftFailure
from .gtc import biased_gtc, build_gtc, graph_map, interval_vertex, graph_gtc_iso
from .lifting import (FibrationWitness, LiftingProblem, RetractData, check_retract,
                      lift_via_retract, pullback_witness, rlp_certificate, solve_lift)
from .limits import (Square, check_pullback_square, equalizer, is_equalizer_fork,
                     pullback, pushout, product, times)
from .presheaf import (PresheafContext, Presheaf, PresheafMap, boundary, compose,
                       compose_all, enumerate_maps, find_iso, from_initial, identity,
                       initial, inverse, is_iso, terminal, yoneda,
                       yoneda_element, yoneda_morphism)
from .index import preset_simplex
from .report import Report


def _require(report, name, ok, error=ConstructionError):
    report.record(name, ok)
    if not ok:
        raise error(f"check failed: {name}", check=name)


@dataclass(eq=False)
class FrobeniusCube:
    gtc: object
    p: PresheafMap
    z: PresheafMap
    t: PresheafMap
    corner_C: object
    corner_CxI: object
    corner_Z: object
    e_Z: PresheafMap        # X_C -> X_Z
    e_CxI: PresheafMap      # X_C -> X_{C x I}
    faces: dict
    top_pushout: object     # X_Z +_{X_C} X_{C x I}
    pstar_u: PresheafMap    # cogap of the top face, into X
    pullback_u: object      # pullback of u along p
    identification: PresheafMap  # top pushout apex -> pullback apex, over X
    transcript: Report = field(repr=False)

    @property
    def X(self):
        return self.p.source

    @property
    def a(self):
        return self.corner_Z["p2"]

    @property
    def b(self):
        return self.corner_CxI["p2"]

    @property
    def X_C(self):
        return self.corner_C.apex

    @property
    def X_Z(self):
        return self.corner_Z.apex

    @property
    def X_CxI(self):
        return self.corner_CxI.apex

    @property
    def X_D(self):
        return self.top_pushout.apex


def build_cube(gtc, p):
    """Pull the defining square of ``gtc`` back along ``p: X -> Z x I``."""
    if p.target != gtc.ZxI:
        raise ContractError("p must map into Z x I of the gtc")
    ctx = gtc.ctx
    sq = gtc.square
    report = Report(subject="frobenius cube")
    ZxI = product(gtc.Z, ctx.interval)
    z = compose(ZxI["pr1"], p)
    t = compose(ZxI["pr2"], p)
    corner_C = pullback(compose(sq.right, sq.top), p)
    corner_CxI = pullback(sq.right, p)
    corner_Z = pullback(sq.bottom, p)
    q_C, q_CxI, q_Z = corner_C["p1"], corner_CxI["p1"], corner_Z["p1"]
    a, b = corner_Z["p2"], corner_CxI["p2"]
    e_CxI = corner_CxI.gap(compose(sq.top, q_C), corner_C["p2"])
    e_Z = corner_Z.gap(compose(sq.left, q_C), corner_C["p2"])
    faces = {
        "bottom": sq,
        "top": Square(e_CxI, e_Z, b, a),
        "back": Square(e_CxI, q_C, q_CxI, sq.top),
        "left": Square(e_Z, q_C, q_Z, sq.left),
        "right": Square(b, q_CxI, p, sq.right),
        "front": Square(a, q_Z, p, sq.bottom),
    }
    for name, face in faces.items():
        _require(report, f"{name} face commutes", face.commutes())
        _require(report, f"{name} face is a pullback", check_pullback_square(face))
    top_po = pushout(e_Z, e_CxI)
    pstar_u = top_po.cogap(a, b)
    pb_u = pullback(gtc.u, p)
    to_D = top_po.cogap(compose(gtc.pushout["i1"], q_Z), compose(gtc.pushout["i2"], q_CxI))
    ident = pb_u.gap(to_D, pstar_u)
    _require(report, "top pushout identifies with the pullback of u", is_iso(ident))
    _require(report, "b is a cofibration", ctx.is_cofibration(b))
    iz = compose(gtc.i, z)
    _require(report, "a equalizes iz and t", is_equalizer_fork(a, iz, t))
    return FrobeniusCube(gtc, p, z, t, corner_C, corner_CxI, corner_Z, e_Z, e_CxI, faces,
                         top_po, pstar_u, pb_u, ident, report)


def construct_H(cube, witness):
    """Lift ``<1, t>`` against ``p`` with bottom ``z x 1`` to get ``H: X x I -> X``.

    The left leg is posed as the gtc ``(0 -> X) (x)_t delta``, identified
    with the graph of ``t``.
    """
    if witness.p != cube.p:
        raise ContractError("witness is for a different map")
    ctx = cube.gtc.ctx
    X, I = cube.X, ctx.interval
    spec0, phi = graph_gtc_iso(ctx, X, cube.t)
    if phi is None:
        raise ConstructionError("gtc of 0 -> X is not the graph", check="graph")
    z_times_1 = times(cube.z, identity(I))
    problem = LiftingProblem(spec0.u, cube.p, phi, z_times_1, gtc=spec0)
    try:
        H = witness.lift(problem)
    except LiftFailure as exc:
        raise LiftFailure("not a fibration against required instance: "
                          "no lift H for <1, t> against p", problem=problem,
                          stage="construct_H") from exc
    XI = product(X, I)
    report = Report(subject="H")
    _require(report, "H o <1, t> = id", compose(H, graph_map(cube.t)) == identity(X))
    _require(report, "p o H = z x 1", compose(cube.p, H) == z_times_1)
    _require(report, "z o H = z o pr1", compose(cube.z, H) == compose(cube.z, XI["pr1"]))
    _require(report, "t o H = pr2", compose(cube.t, H) == XI["pr2"])
    return H


@dataclass(eq=False)
class RetractCertificate:
    cube: FrobeniusCube
    H: PresheafMap
    v: object
    dagger1: tuple           # (a, r1)
    dagger2: tuple           # (s2, r2)
    corner: tuple            # (s_C, r_C) on X_C <-> X_{C x I}
    retract: RetractData     # p*u (top pushout form) as a retract of v.u
    retract_pullback: RetractData  # the same for the pullback form
    transcript: Report = field(repr=False)

    @property
    def pstar_u(self):
        return self.cube.pstar_u

    @property
    def pstar_u_pullback(self):
        return self.cube.pullback_u["p2"]


def pullback_gtc_retract(gtc, witness):
    """Exhibit the pullback of ``gtc.u`` along ``witness.p`` as a retract of a gtc."""
    cube = build_cube(gtc, witness.p)
    H = construct_H(cube, witness)
    ctx = gtc.ctx
    I = ctx.interval
    X, z, t, a, b = cube.X, cube.z, cube.t, cube.a, cube.b
    e_Z, e_CxI = cube.e_Z, cube.e_CxI
    report = Report(subject="retract certificate")
    iz = compose(gtc.i, z)
    graph_t, graph_iz = graph_map(t), graph_map(iz)
    XI = product(X, I)
    v = build_gtc(ctx, b, iz)
    vsq = v.square

    # (dagger 1): left dotted arrow a, right one through the equalizer of iz, t
    eq = equalizer(iz, t)
    Ht = compose(H, graph_iz)
    _require(report, "iz o H<1,iz> = t o H<1,iz>", compose(iz, Ht) == compose(t, Ht))
    a_to_eq = eq.gap(a)
    _require(report, "a is an equalizer of iz, t", is_iso(a_to_eq))
    r1 = compose(inverse(a_to_eq), eq.gap(Ht))
    _require(report, "dagger1 left square", compose(graph_iz, a) == compose(graph_t, a))
    _require(report, "dagger1 right square", compose(a, r1) == Ht)
    _require(report, "dagger1 composite", compose(r1, a) == identity(cube.X_Z))

    # (dagger 2): pull (dagger 0) back along c
    C = gtc.C
    CxI = product(C, I)
    XCI = cube.X_CxI
    XCII = product(XCI, I)
    q_CxI = cube.corner_CxI["p1"]
    to_C = compose(CxI["pr1"], q_CxI)
    P0 = pullback(gtc.c, z)
    P1 = pullback(gtc.c, compose(z, XI["pr1"]))
    s_pb = P1.gap(P0["p1"], compose(graph_t, P0["p2"]))
    r_pb = P0.gap(P1["p1"], compose(H, P1["p2"]))
    b_times_1 = times(b, identity(I))
    phi0 = P0.gap(to_C, b)
    phi1 = P1.gap(compose(to_C, XCII["pr1"]), b_times_1)
    _require(report, "X_{CxI} is the pullback of z along c", is_iso(phi0))
    _require(report, "X_{CxI} x I is the pullback of z pr1 along c", is_iso(phi1))
    s2 = compose_all(inverse(phi1), s_pb, phi0)
    r2 = compose_all(inverse(phi0), r_pb, phi1)
    _require(report, "dagger2 left square", compose(b_times_1, s2) == compose(graph_t, b))
    _require(report, "dagger2 right square", compose(b, r2) == compose(H, b_times_1))
    _require(report, "dagger2 composite", compose(r2, s2) == identity(XCI))

    # remaining corner via the pullback property of both squares
    vv = pullback(vsq.right, vsq.bottom)
    psi = vv.gap(vsq.top, vsq.left)
    _require(report, "square of v is a pullback", is_iso(psi))
    s_C = compose(inverse(psi), vv.gap(compose(s2, e_CxI), compose(a, e_Z)))
    tt = pullback(b, a)
    chi = tt.gap(e_CxI, e_Z)
    _require(report, "top face is a pullback", is_iso(chi))
    r_C = compose(inverse(chi), tt.gap(compose(r2, vsq.top), compose(r1, b)))
    _require(report, "corner composite", compose(r_C, s_C) == identity(cube.X_C))
    _require(report, "corner section top", compose(vsq.top, s_C) == compose(s2, e_CxI))
    _require(report, "corner section left", compose(vsq.left, s_C) == compose(a, e_Z))
    _require(report, "corner retraction top", compose(e_CxI, r_C) == compose(r2, vsq.top))
    _require(report, "corner retraction left", compose(e_Z, r_C) == compose(r1, vsq.left))

    # functoriality of the pushout
    P, E = cube.top_pushout, v.pushout
    s_dom = P.cogap(compose(E["i1"], a), compose(E["i2"], s2))
    r_dom = E.cogap(compose(P["i1"], r1), compose(P["i2"], r2))
    data = RetractData(s_dom, r_dom, graph_t, H)
    retract_report = check_retract(cube.pstar_u, v.u, data)
    report.extend(retract_report, prefix="retract: ")
    if not retract_report:
        raise ConstructionError("retract equations fail", check=retract_report.failures[0][0])
    ident = cube.identification
    data_pb = RetractData(compose(s_dom, inverse(ident)), compose(ident, r_dom), graph_t, H)
    pb_report = check_retract(cube.pullback_u["p2"], v.u, data_pb)
    report.extend(pb_report, prefix="pullback form: ")
    if not pb_report:
        raise ConstructionError("pullback-form retract fails", check=pb_report.failures[0][0])
    return RetractCertificate(cube, H, v, (a, r1), (s2, r2), (s_C, r_C), data, data_pb, report)


def transport_retract(data, iso):
    """Retract data for ``u o iso^-1`` given data for ``u`` and an iso onto its domain."""
    return RetractData(compose(data.s_dom, iso), compose(inverse(iso), data.r_dom),
                       data.s_cod, data.r_cod)


@dataclass(eq=False)
class PushforwardResult:
    f: PresheafMap
    p: PresheafMap
    Xp: Presheaf
    pf: PresheafMap
    elements: dict      # ob -> [(b, section index)]
    sections: dict      # (ob, b) -> [PresheafMap P_b -> X]
    fibers: dict        # (ob, b) -> pullback of the element b along p

    def section(self, ob, k):
        b, j = self.elements[ob][k]
        return b, self.sections[ob, b][j]


def pushforward(f, p, budget=None):
    """``p_* f: X' -> Y'`` for ``f: X -> Y`` and ``p: Y -> Y'``.

    An element of ``X'`` at ``c`` is a pair ``(b, s)`` with ``b`` in
    ``Y'(c)`` and ``s`` a section of ``f`` over the pullback of
    ``b: y(c) -> Y'`` along ``p``.
    """
    if f.target != p.source:
        raise ContractError("pushforward needs f: X -> Y and p: Y -> Y'")
    X, Yp = f.source, p.target
    base = X.base
    fibers, sections, index, elements = {}, {}, {}, {}
    for ob in base.objects:
        elements[ob] = []
        for b in range(Yp.sizes[ob]):
            cone = pullback(yoneda_element(Yp, ob, b), p)
            fibers[ob, b] = cone
            secs = enumerate_maps(cone.apex, X, budget=budget, over=(cone["p2"], f))
            sections[ob, b] = secs
            for j, s in enumerate(secs):
                index[ob, b, s._key] = len(elements[ob])
                elements[ob].append((b, j))
    action = {}
    for tau, d, c in base.morphisms:
        y_tau = yoneda_morphism(base, tau)
        restrict = {}
        values = []
        for b, j in elements[c]:
            b2 = Yp.action[tau][b]
            if b not in restrict:
                src, tgt = fibers[d, b2], fibers[c, b]
                restrict[b] = tgt.gap(compose(y_tau, src["p1"]), src["p2"])
            s2 = compose(sections[c, b][j], restrict[b])
            values.append(index[d, b2, s2._key])
        action[tau] = tuple(values)
    Xp = Presheaf(base, {ob: len(v) for ob, v in elements.items()}, action, name="X'")
    pf = PresheafMap(Xp, Yp, {ob: tuple(b for b, _ in v) for ob, v in elements.items()},
                     name="p_* f")
    result = PushforwardResult(f, p, Xp, pf, elements, sections, fibers)
    result._index = index
    return result


def _pair_index(cone):
    """``(leg1 value, leg2 value) -> element`` for each level of a pullback apex."""
    p1, p2 = cone["p1"], cone["p2"]
    return {ob: {(x, y): k for k, (x, y) in enumerate(zip(p1.components[ob], p2.components[ob]))}
            for ob in cone.apex.base.objects}


def transpose(pf, alpha, cone, m):
    """``m: p*A -> X`` over ``Y`` to its transpose ``A -> X'`` over ``Y'``.

    ``cone`` is ``pullback(alpha, p)`` presenting ``p*A`` with legs to ``A``
    and ``Y``.
    """
    _check_pullback_of(pf, alpha, cone)
    if m.source != cone.apex or m.target != pf.f.source:
        raise ContractError("m must map p*A to X")
    if compose(pf.f, m) != cone["p2"]:
        raise ContractError("m is not a map over Y")
    A = alpha.source
    base = A.base
    where = _pair_index(cone)
    comps = {}
    for ob in base.objects:
        values = []
        for a in range(A.sizes[ob]):
            b = alpha.components[ob][a]
            fiber = pf.fibers[ob, b]
            sec = {}
            for d in base.objects:
                homs = base.hom(d, ob)
                sec[d] = tuple(
                    m.components[d][where[d][A.action[homs[phi]][a], y]]
                    for phi, y in zip(fiber["p1"].components[d], fiber["p2"].components[d]))
            s = PresheafMap(fiber.apex, pf.f.source, sec)
            values.append(pf._index[ob, b, s._key])
        comps[ob] = values
    return PresheafMap(A, pf.Xp, comps)


def transpose_inverse(pf, alpha, cone, n):
    """``n: A -> X'`` over ``Y'`` to its transpose ``p*A -> X`` over ``Y``."""
    _check_pullback_of(pf, alpha, cone)
    if n.source != alpha.source or n.target != pf.Xp:
        raise ContractError("n must map A to X'")
    if compose(pf.pf, n) != alpha:
        raise ContractError("n is not a map over Y'")
    base = alpha.source.base
    comps = {}
    for d in base.objects:
        ident = base.hom(d, d).index(base.identity(d))
        values = []
        for a, y in zip(cone["p1"].components[d], cone["p2"].components[d]):
            b, s = pf.section(d, n.components[d][a])
            fiber = pf.fibers[d, b]
            k = _pair_index(fiber)[d][ident, y]
            values.append(s.components[d][k])
        comps[d] = values
    return PresheafMap(cone.apex, pf.f.source, comps)


def _check_pullback_of(pf, alpha, cone):
    if alpha.target != pf.p.target:
        raise ContractError("alpha must map into Y'")
    if cone.kind != "pullback" or cone.diagram[0] != alpha or cone.diagram[1] != pf.p:
        raise ContractError("cone must be pullback(alpha, p)")


def adjunction_report(pf, A, alpha, budget=None):
    """Exhaustively verify ``Hom_Y(p*A, X) = Hom_Y'(A, X')`` for one object over ``Y'``."""
    report = Report(subject="adjunction")
    cone = pullback(alpha, pf.p)
    left = enumerate_maps(cone.apex, pf.f.source, budget=budget, over=(cone["p2"], pf.f))
    right = enumerate_maps(A, pf.Xp, budget=budget, over=(alpha, pf.pf))
    report.record("hom-set sizes agree", len(left) == len(right),
                  f"{len(left)} vs {len(right)}")
    forward = [transpose(pf, alpha, cone, m) for m in left]
    report.record("transpose is injective", len(set(forward)) == len(forward))
    report.record("transpose lands in Hom(A, X')", set(forward) == set(right))
    report.record("round trip on Hom(p*A, X)",
                  all(transpose_inverse(pf, alpha, cone, n) == m for m, n in zip(left, forward)))
    report.record("round trip on Hom(A, X')",
                  all(transpose(pf, alpha, cone, transpose_inverse(pf, alpha, cone, n)) == n
                      for n in right))
    return report


def naturality_report(pf, k, alpha, budget=None):
    """Transposition commutes with precomposition by ``k: A2 -> A`` over ``Y'``."""
    report = Report(subject="adjunction naturality")
    alpha2 = compose(alpha, k)
    cone, cone2 = pullback(alpha, pf.p), pullback(alpha2, pf.p)
    pk = cone.gap(compose(k, cone2["p1"]), cone2["p2"])
    ok = True
    for m in enumerate_maps(cone.apex, pf.f.source, budget=budget, over=(cone["p2"], pf.f)):
        lhs = transpose(pf, alpha2, cone2, compose(m, pk))
        rhs = compose(transpose(pf, alpha, cone, m), k)
        ok = ok and lhs == rhs
    report.record("transpose(m o p*k) = transpose(m) o k", ok)
    return report


def frobenius_witness(f_witness, p_witness, pf=None, budget=None):
    """A witness for ``p_* f`` built from witnesses for ``f`` and ``p``.

    Only answers problems whose left leg carries its gtc structure
    (``LiftingProblem.gtc``).
    """
    f, p = f_witness.p, p_witness.p
    if pf is None:
        pf = pushforward(f, p, budget=budget)
    if pf.f != f or pf.p != p:
        raise ContractError("pushforward does not match the witnesses")

    def strategy(problem):
        gtc = problem.gtc
        if gtc is None or gtc.u != problem.u:
            raise ContractError("frobenius witness needs the gtc structure of the left leg")
        u, g, h = problem.u, problem.g, problem.h
        # pull u back along p, viewing B over Y' via h
        pbB = pullback(h, p)
        pbA = pullback(compose(h, u), p)
        pstar = pbB.gap(compose(u, pbA["p1"]), pbA["p2"])
        q_witness = pullback_witness(p_witness, h, pbB)
        try:
            cert = pullback_gtc_retract(gtc, q_witness)
        except LiftFailure as exc:
            raise LiftFailure(f"retract certificate: {exc}", problem=exc.problem,
                              stage="pullback_gtc_retract") from exc
        psi = cert.cube.pullback_u.gap(pbA["p1"], pstar)
        if not is_iso(psi):
            raise ConstructionError("p*A does not match the cube", check="pasting")
        data = transport_retract(cert.retract_pullback, psi)
        g_t = transpose_inverse(pf, compose(h, u), pbA, g)
        inner = LiftingProblem(pstar, f, g_t, pbB["p2"])
        L_t = lift_via_retract(inner, cert.v.u, data, f_witness.lift)
        L = transpose(pf, h, pbB, L_t)
        if not problem.is_lift(L):
            raise ConstructionError("transposed lift fails a triangle", check="frobenius")
        return L

    return FibrationWitness(pf.pf, strategy, name="frobenius")


def biased_family(ctx, right, point, cofibrations, budget=None):
    """All lifting problems of ``right`` against ``c (x) point`` for the given ``c``."""
    family = []
    for c in cofibrations:
        spec = biased_gtc(ctx, c, point)
        family.extend(gtc_problems(spec, right, budget=budget))
    return family


def gtc_problems(spec, right, budget=None, limit=None):
    """Every commuting square with left leg ``spec.u`` and right leg ``right``."""
    problems = []
    u = spec.u
    for h in enumerate_maps(u.target, right.target, budget=budget):
        hu = compose(h, u)
        for g in enumerate_maps(u.source, right.source, budget=budget):
            if compose(right, g) == hu:
                problems.append(LiftingProblem(u, right, g, h, gtc=spec))
                if limit is not None and len(problems) >= limit:
                    return problems
    return problems


def left_fibration_counterexample(budget=None):
    """Biased fibrations over simplicial sets fail the Frobenius property.

    Over the 1-truncated simplex category with interval ``y([1])`` and the
    point ``v0`` (vertex 0), returns a report with checks:

    (a) ``v0`` is the biased gtc ``(0 -> 1) (x) v0``;
    (b) ``v1`` lifts against every square with left leg ``c (x) v0`` for
        ``c`` in ``{0 -> 0, 0 -> 1, boundary of y([1])}``;
    (c) the pullback of ``v0`` along ``v1`` has every level empty;
    (d) that pullback ``0 -> 1`` has no lift against ``0 -> 1``, which itself
        lifts against the same biased family.  Only ``0 -> 0`` contributes a
        square there: every other member has a nonempty domain, which admits
        no map to ``0``.
    """
    base = preset_simplex(1)
    I = yoneda(base, "[1]")
    ctx = PresheafContext(base, I)
    one = terminal(base)
    v0, v1 = interval_vertex(ctx, 0), interval_vertex(ctx, 1)
    report = Report(subject="left fibration counterexample")
    details = {}

    spec = biased_gtc(ctx, from_initial(one), v0)
    phi = find_iso(one, spec.D)
    pr2 = product(one, I)["pr2"]
    report.record("(a) vertex 0 is the biased gtc (0 -> 1) (x) v0",
                  phi is not None and compose_all(pr2, spec.u, phi) == v0)

    cofs = [from_initial(initial(base)), from_initial(one), boundary(base, "[1]")]
    family = biased_family(ctx, v1, v0, cofs, budget=budget)
    cert = rlp_certificate(v1, family, budget=budget)
    details["biased family size"] = len(family)
    report.record("(b) vertex 1 is a biased fibration on the curated family", cert.ok,
                  f"{len(family)} problems")

    pb = pullback(v0, v1)
    report.record("(c) pullback of v0 along v1 has empty domain", pb.apex.is_empty())

    qp = pb["p2"]
    zero = initial(base)
    empty_to_one = from_initial(one)
    problem = LiftingProblem(qp, empty_to_one, from_initial(zero), identity(one))
    lift = solve_lift(problem, budget=budget)
    fib_family = biased_family(ctx, empty_to_one, v0, cofs, budget=budget)
    fib_cert = rlp_certificate(empty_to_one, fib_family, budget=budget)
    report.record("(d) 0 -> 1 is a biased fibration on the curated family", fib_cert.ok,
                  f"{len(fib_family)} problems")
    report.record("(d) pulled-back map has no lift against 0 -> 1", lift is None)
    details["pullback"] = pb
    details["llp problem"] = problem
    return report, details

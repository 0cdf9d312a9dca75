"""Lifting problems, a complete diagonal-filler search, and retract arguments.

A lifting problem is a commuting square

    A ---g---> X
    |          |
    u          p
    v          v
    B ---h---> Y

and a lift is ``L: B -> X`` with ``L o u == g`` and ``p o L == h``.
:func:`solve_lift` returns the first lift in canonical order (see
:mod:`presheaf_workbench.search`) or ``None`` when no lift exists; the search
is exhaustive, so ``None`` means absence, while running out of budget raises
:class:`~presheaf_workbench.errors.SizeError`.
"""

import json
import threading
from dataclasses import dataclass, field

from .errors import ConstructionError, ContractError, LiftFailure
from .presheaf import PresheafMap, compose, identity
from .report import Report
from .search import iter_natural_maps


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    u: PresheafMap
    p: PresheafMap
    g: PresheafMap
    h: PresheafMap
    gtc: object = field(default=None, compare=False)

    def __post_init__(self):
        u, p, g, h = self.u, self.p, self.g, self.h
        if g.source != u.source or g.target != p.source:
            raise ContractError("top map must go from the source of u to the source of p")
        if h.source != u.target or h.target != p.target:
            raise ContractError("bottom map must go from the target of u to the target of p")
        if compose(p, g) != compose(h, u):
            raise ContractError("lifting square does not commute")

    def is_lift(self, L):
        return (L.source == self.u.target and L.target == self.p.source
                and compose(L, self.u) == self.g and compose(self.p, L) == self.h)

    def encoding(self):
        """Canonical byte encoding of the square, used as a cache key."""
        def enc(m):
            return [m.source._key, m.target._key, m._key]
        data = [enc(self.u), enc(self.p), enc(self.g), enc(self.h)]
        return json.dumps(data, separators=(",", ":")).encode()


def _lift_domains(problem):
    u, p, g, h = problem.u, problem.p, problem.g, problem.h
    B = u.target
    domains = {}
    for ob in B.base.objects:
        fibers = {}
        for x, y in enumerate(p.components[ob]):
            fibers.setdefault(y, set()).add(x)
        doms = [set(fibers.get(h.components[ob][b], ())) for b in range(B.sizes[ob])]
        for a, b in enumerate(u.components[ob]):
            doms[b] &= {g.components[ob][a]}
        domains[ob] = [sorted(d) for d in doms]
    return domains


def iter_lifts(problem, budget=None):
    B, X = problem.u.target, problem.p.source
    for comps in iter_natural_maps(B, X, domains=_lift_domains(problem), budget=budget):
        L = PresheafMap(B, X, comps)
        if not problem.is_lift(L):
            raise ConstructionError("search produced a map failing a triangle", check="lift")
        yield L


def solve_lift(problem, budget=None):
    """The canonical (first) lift, or ``None`` if the square has no lift."""
    return next(iter_lifts(problem, budget=budget), None)


def all_lifts(problem, budget=None):
    return list(iter_lifts(problem, budget=budget))


@dataclass
class RlpCertificate:
    p: PresheafMap
    lifts: list
    counterexample: LiftingProblem = None

    @property
    def ok(self):
        return self.counterexample is None

    def __bool__(self):
        return self.ok


def rlp_certificate(p, family, solver=None, budget=None):
    """Solve every problem of ``family`` against ``p``.

    Returns a certificate holding one lift per problem, or stops at the
    first unsolvable problem and records it as the counterexample.
    """
    solver = solver or (lambda prob: solve_lift(prob, budget=budget))
    lifts = []
    for prob in family:
        if prob.p != p:
            raise ContractError("family member has a different right leg")
        L = solver(prob)
        if L is None:
            return RlpCertificate(p, lifts, counterexample=prob)
        lifts.append(L)
    return RlpCertificate(p, lifts)


@dataclass(frozen=True, eq=False)
class RetractData:
    """``u: A -> B`` as a retract of ``v: A' -> B'`` in the arrow category."""

    s_dom: PresheafMap
    r_dom: PresheafMap
    s_cod: PresheafMap
    r_cod: PresheafMap


def check_retract(u, v, data):
    """Verify the four retract equations; the report names any that fail."""
    report = Report(subject="retract")
    s, r, S, R = data.s_dom, data.r_dom, data.s_cod, data.r_cod
    if (s.source != u.source or s.target != v.source or r.source != v.source
            or r.target != u.source or S.source != u.target or S.target != v.target
            or R.source != v.target or R.target != u.target):
        raise ContractError("retract data does not match the arrows")
    report.record("r_dom o s_dom = id", compose(r, s) == identity(u.source))
    report.record("r_cod o s_cod = id", compose(R, S) == identity(u.target))
    report.record("v o s_dom = s_cod o u", compose(v, s) == compose(S, u))
    report.record("u o r_dom = r_cod o v", compose(u, r) == compose(R, v))
    return report


def lift_via_retract(problem, v, data, solver):
    """Solve a ``u``-problem by solving the induced ``v``-problem.

    ``solver`` maps a :class:`LiftingProblem` to a lift, ``None``, or raises
    :class:`LiftFailure`.
    """
    if not check_retract(problem.u, v, data):
        raise ContractError("retract data fails its equations")
    induced = LiftingProblem(v, problem.p, compose(problem.g, data.r_dom),
                             compose(problem.h, data.r_cod))
    try:
        L_v = solver(induced)
    except LiftFailure as exc:
        raise LiftFailure(f"induced problem unsolved: {exc}", problem=induced,
                          stage=exc.stage or "retract") from exc
    if L_v is None:
        raise LiftFailure("induced problem has no lift", problem=induced, stage="retract")
    L = compose(L_v, data.s_cod)
    if not problem.is_lift(L):
        raise ConstructionError("transferred lift fails a triangle", check="lift_via_retract")
    return L


class FibrationWitness:
    """A lifting strategy for ``p`` with a per-problem cache.

    ``strategy(problem)`` returns a lift or ``None``; the default is the
    exhaustive search :func:`solve_lift`.  Concurrent queries are
    serialized, and every answer is checked against both triangles.
    """

    def __init__(self, p, strategy=None, name="", budget=None):
        self.p = p
        self.name = name
        self._strategy = strategy or (lambda prob: solve_lift(prob, budget=budget))
        self._cache = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return f"<FibrationWitness {self.name or self.p!r}>"

    def try_lift(self, problem):
        if problem.p != self.p:
            raise ContractError("problem has a different right leg than the witness")
        key = problem.encoding()
        with self._lock:
            if key in self._cache:
                return self._cache[key]
            L = self._strategy(problem)
            if L is not None and not problem.is_lift(L):
                raise ConstructionError("witness strategy returned a non-lift", check="witness")
            self._cache[key] = L
            return L

    def lift(self, problem):
        L = self.try_lift(problem)
        if L is None:
            raise LiftFailure(f"{self!r} has no lift for the given problem", problem=problem,
                              stage=self.name or "witness")
        return L

    def cache_size(self):
        return len(self._cache)


def pullback_witness(witness, k, cone):
    """Witness for the pullback ``q = cone["p1"]`` of ``witness.p`` along ``k``.

    ``cone`` must be ``pullback(k, witness.p)``.  A problem against ``q`` is
    pushed forward to one against ``p`` and the answer is paired back.
    """
    p = witness.p
    if cone.diagram[0] != k or cone.diagram[1] != p:
        raise ContractError("cone is not the pullback of p along k")

    def strategy(problem):
        outer = LiftingProblem(problem.u, p, compose(cone["p2"], problem.g),
                               compose(k, problem.h))
        L = witness.try_lift(outer)
        if L is None:
            return None
        return cone.gap(problem.h, L)

    return FibrationWitness(cone["p1"], strategy, name=f"pullback of {witness.name or 'p'}")

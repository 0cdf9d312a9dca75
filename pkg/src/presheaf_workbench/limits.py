"""Finite limits and colimits of presheaves, computed levelwise.

Every construction returns a :class:`ConeResult` carrying the apex, its
legs, and a mediating-map function (``gap`` for limits, ``cogap`` for
colimits).  Element orders are canonical: products and pullbacks list pairs
lexicographically, pushouts order equivalence classes by their least
representative (codomain-of-first-leg elements first).
"""

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ContractError
from .presheaf import (Presheaf, PresheafMap, compose, enumerate_maps, initial,
                       inverse, is_iso, terminal, codiscrete, yoneda)
from .report import Report

EXHAUSTIVE_LEVEL_SIZE = 6


@dataclass(eq=False)
class ConeResult:
    kind: str
    apex: Presheaf
    legs: dict
    diagram: tuple
    _mediator: object = field(repr=False, default=None)

    def __getitem__(self, name):
        return self.legs[name]

    def gap(self, *maps):
        """Unique map into the apex induced by a commuting competitor cone."""
        if self.kind not in ("product", "pullback", "equalizer"):
            raise ContractError(f"{self.kind} has no gap map")
        return self._mediator(*maps)

    def cogap(self, *maps):
        """Unique map out of the apex induced by a commuting competitor cocone."""
        if self.kind not in ("pushout", "coequalizer"):
            raise ContractError(f"{self.kind} has no cogap map")
        return self._mediator(*maps)

    def verify(self, test_objects=(), seed=0, sample=200):
        return verify_universal(self, test_objects, seed=seed, sample=sample)


class _UnionFind:
    """Union-find whose class representative is the least member."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            lo, hi = min(rx, ry), max(rx, ry)
            self.parent[hi] = lo


def _require_base(*objs):
    base = objs[0].base
    if any(o.base != base for o in objs[1:]):
        raise ContractError("objects live over different bases")
    return base


@lru_cache(maxsize=512)
def product(X, Y):
    """Levelwise cartesian product; the pair ``(x, y)`` has index ``x*|Y(c)| + y``."""
    base = _require_base(X, Y)
    sizes = {ob: X.sizes[ob] * Y.sizes[ob] for ob in base.objects}
    action = {}
    for s, d, c in base.morphisms:
        ax, ay, ny = X.action[s], Y.action[s], Y.sizes[d]
        action[s] = tuple(ax[x] * ny + ay[y]
                          for x in range(X.sizes[c]) for y in range(Y.sizes[c]))
    name = f"{X.name}x{Y.name}" if X.name and Y.name else ""
    P = Presheaf(base, sizes, action, name=name)
    pr1 = PresheafMap(P, X, {ob: tuple(k // Y.sizes[ob] for k in range(sizes[ob]))
                             for ob in base.objects}, name="pr1")
    pr2 = PresheafMap(P, Y, {ob: tuple(k % Y.sizes[ob] for k in range(sizes[ob]))
                             for ob in base.objects}, name="pr2")

    def mediate(f, g):
        if f.target != X or g.target != Y or f.source != g.source:
            raise ContractError("pairing needs maps W -> X and W -> Y")
        return PresheafMap(f.source, P, {
            ob: tuple(a * Y.sizes[ob] + b for a, b in zip(f.components[ob], g.components[ob]))
            for ob in base.objects
        })

    return ConeResult("product", P, {"pr1": pr1, "pr2": pr2}, (X, Y), mediate)


def pair(f, g):
    """``<f, g>: W -> X x Y``."""
    return product(f.target, g.target).gap(f, g)


def times(f, g):
    """``f x g: A x B -> X x Y``."""
    src = product(f.source, g.source)
    return pair(compose(f, src["pr1"]), compose(g, src["pr2"]))


def pullback(f, g):
    """Pullback of ``f: X -> Z`` and ``g: Y -> Z``; legs ``p1`` to X and ``p2`` to Y."""
    if f.target != g.target:
        raise ContractError("pullback needs a common target")
    X, Y = f.source, g.source
    base = X.base
    pairs = {}
    index = {}
    for ob in base.objects:
        by_value = {}
        for y, z in enumerate(g.components[ob]):
            by_value.setdefault(z, []).append(y)
        lst = [(x, y) for x, z in enumerate(f.components[ob]) for y in by_value.get(z, ())]
        pairs[ob] = lst
        index[ob] = {p: k for k, p in enumerate(lst)}
    action = {}
    for s, d, c in base.morphisms:
        ax, ay = X.action[s], Y.action[s]
        action[s] = tuple(index[d][ax[x], ay[y]] for x, y in pairs[c])
    P = Presheaf(base, {ob: len(v) for ob, v in pairs.items()}, action)
    p1 = PresheafMap(P, X, {ob: tuple(x for x, _ in v) for ob, v in pairs.items()}, name="p1")
    p2 = PresheafMap(P, Y, {ob: tuple(y for _, y in v) for ob, v in pairs.items()}, name="p2")

    def mediate(q1, q2):
        if q1.target != X or q2.target != Y or q1.source != q2.source:
            raise ContractError("competitor cone has the wrong shape")
        if compose(f, q1) != compose(g, q2):
            raise ContractError("competitor cone does not commute")
        return PresheafMap(q1.source, P, {
            ob: tuple(index[ob][a, b] for a, b in zip(q1.components[ob], q2.components[ob]))
            for ob in base.objects
        })

    return ConeResult("pullback", P, {"p1": p1, "p2": p2}, (f, g), mediate)


def pushout(f, g):
    """Pushout of ``f: A -> B`` and ``g: A -> C``; legs ``i1`` from B and ``i2`` from C."""
    if f.source != g.source:
        raise ContractError("pushout needs a common source")
    A, B, C = f.source, f.target, g.target
    base = A.base
    cls_of = {}
    sizes = {}
    for ob in base.objects:
        nb, nc = B.sizes[ob], C.sizes[ob]
        uf = _UnionFind(nb + nc)
        for a in range(A.sizes[ob]):
            uf.union(f.components[ob][a], nb + g.components[ob][a])
        roots = sorted({uf.find(k) for k in range(nb + nc)})
        rank = {r: k for k, r in enumerate(roots)}
        cls_of[ob] = [rank[uf.find(k)] for k in range(nb + nc)]
        sizes[ob] = len(roots)
    action = {}
    for s, d, c in base.morphisms:
        nb_c, nb_d = B.sizes[c], B.sizes[d]
        # act on the least representative of each class
        rep = {}
        for k in range(nb_c + C.sizes[c]):
            rep.setdefault(cls_of[c][k], k)
        values = []
        for cl in range(sizes[c]):
            k = rep[cl]
            if k < nb_c:
                img = B.action[s][k]
            else:
                img = nb_d + C.action[s][k - nb_c]
            values.append(cls_of[d][img])
        action[s] = tuple(values)
    P = Presheaf(base, sizes, action)
    i1 = PresheafMap(B, P, {ob: tuple(cls_of[ob][:B.sizes[ob]]) for ob in base.objects},
                     name="i1")
    i2 = PresheafMap(C, P, {ob: tuple(cls_of[ob][B.sizes[ob]:]) for ob in base.objects},
                     name="i2")

    def mediate(q1, q2):
        if q1.source != B or q2.source != C or q1.target != q2.target:
            raise ContractError("competitor cocone has the wrong shape")
        if compose(q1, f) != compose(q2, g):
            raise ContractError("competitor cocone does not commute")
        comps = {}
        for ob in base.objects:
            values = [None] * sizes[ob]
            nb = B.sizes[ob]
            for k, cl in enumerate(cls_of[ob]):
                if values[cl] is None:
                    values[cl] = q1.components[ob][k] if k < nb else q2.components[ob][k - nb]
            comps[ob] = values
        return PresheafMap(P, q1.target, comps)

    return ConeResult("pushout", P, {"i1": i1, "i2": i2}, (f, g), mediate)


def equalizer(f, g):
    """Equalizer of a parallel pair, as the subpresheaf where they agree."""
    if f.source != g.source or f.target != g.target:
        raise ContractError("equalizer needs a parallel pair")
    X = f.source
    base = X.base
    keep = {ob: [x for x in range(X.sizes[ob]) if f.components[ob][x] == g.components[ob][x]]
            for ob in base.objects}
    pos = {ob: {x: k for k, x in enumerate(xs)} for ob, xs in keep.items()}
    action = {s: tuple(pos[d][X.action[s][x]] for x in keep[c])
              for s, d, c in base.morphisms}
    E = Presheaf(base, {ob: len(v) for ob, v in keep.items()}, action)
    e = PresheafMap(E, X, keep, name="e")

    def mediate(q):
        if q.target != X:
            raise ContractError("competitor must map into the source of the pair")
        if compose(f, q) != compose(g, q):
            raise ContractError("competitor does not equalize the pair")
        return PresheafMap(q.source, E, {ob: tuple(pos[ob][v] for v in q.components[ob])
                                         for ob in base.objects})

    return ConeResult("equalizer", E, {"e": e}, (f, g), mediate)


def coequalizer(f, g):
    if f.source != g.source or f.target != g.target:
        raise ContractError("coequalizer needs a parallel pair")
    Y = f.target
    base = Y.base
    cls_of, sizes = {}, {}
    for ob in base.objects:
        uf = _UnionFind(Y.sizes[ob])
        for a, b in zip(f.components[ob], g.components[ob]):
            uf.union(a, b)
        roots = sorted({uf.find(k) for k in range(Y.sizes[ob])})
        rank = {r: k for k, r in enumerate(roots)}
        cls_of[ob] = [rank[uf.find(k)] for k in range(Y.sizes[ob])]
        sizes[ob] = len(roots)
    action = {}
    for s, d, c in base.morphisms:
        rep = {}
        for k, cl in enumerate(cls_of[c]):
            rep.setdefault(cl, k)
        action[s] = tuple(cls_of[d][Y.action[s][rep[cl]]] for cl in range(sizes[c]))
    Q = Presheaf(base, sizes, action)
    q = PresheafMap(Y, Q, cls_of, name="q")

    def mediate(h):
        if h.source != Y or compose(h, f) != compose(h, g):
            raise ContractError("competitor does not coequalize the pair")
        comps = {}
        for ob in base.objects:
            values = [None] * sizes[ob]
            for k, cl in enumerate(cls_of[ob]):
                if values[cl] is None:
                    values[cl] = h.components[ob][k]
            comps[ob] = values
        return PresheafMap(Q, h.target, comps)

    return ConeResult("coequalizer", Q, {"q": q}, (f, g), mediate)


def is_equalizer_fork(e, f, g):
    """Whether ``e: W -> X`` equalizes ``f, g`` and is iso to the computed equalizer."""
    if compose(f, e) != compose(g, e):
        return False
    return is_iso(equalizer(f, g).gap(e))


@dataclass(frozen=True)
class Square:
    """A square ``top: A -> B``, ``left: A -> C``, ``right: B -> D``, ``bottom: C -> D``."""

    top: PresheafMap
    left: PresheafMap
    right: PresheafMap
    bottom: PresheafMap

    def commutes(self):
        return compose(self.right, self.top) == compose(self.bottom, self.left)


def check_pullback_square(square):
    """Whether the square is a pullback: its gap comparison is an isomorphism."""
    if not square.commutes():
        raise ContractError("square does not commute")
    pb = pullback(square.right, square.bottom)
    return is_iso(pb.gap(square.top, square.left))


def pulled_back_pushout(f, span, legs):
    """Compare the pullback of a pushout with the pushout of the pullbacks.

    ``span = (k1: A -> B, k2: A -> C)`` is a span over ``X`` via
    ``legs = (qB: B -> X, qC: C -> X)`` and ``f: X' -> X``.  Returns
    ``(comparison, details)`` where ``comparison`` maps the pushout of the
    pulled-back span to the pullback of the pushout; the pullback functor
    preserves this colimit exactly when ``comparison`` is an isomorphism.
    """
    k1, k2 = span
    qB, qC = legs
    if compose(qB, k1) != compose(qC, k2):
        raise ContractError("span legs do not commute over X")
    po = pushout(k1, k2)
    w = po.cogap(qB, qC)
    fP = pullback(w, f)
    fB, fC = pullback(qB, f), pullback(qC, f)
    fA = pullback(compose(qB, k1), f)
    k1p = fB.gap(compose(k1, fA["p1"]), fA["p2"])
    k2p = fC.gap(compose(k2, fA["p1"]), fA["p2"])
    po2 = pushout(k1p, k2p)
    to_fP_B = fP.gap(compose(po["i1"], fB["p1"]), fB["p2"])
    to_fP_C = fP.gap(compose(po["i2"], fC["p1"]), fC["p2"])
    comparison = po2.cogap(to_fP_B, to_fP_C)
    details = {"pushout": po, "cogap": w, "pullback_of_pushout": fP,
               "pulled_back_span": (fA, fB, fC, k1p, k2p), "pushout_of_pullbacks": po2}
    return comparison, details


def check_h1_instance(f, span, legs):
    comparison, _ = pulled_back_pushout(f, span, legs)
    return is_iso(comparison)


def _competitor_objects(base, extra):
    objs = [yoneda(base, c) for c in base.objects]
    objs += [terminal(base), codiscrete(base, 2)] if "[0]" in base.objects else [terminal(base)]
    return objs + list(extra)


def verify_universal(cone, test_objects=(), seed=0, sample=200):
    """Check the universal property against enumerated competitor (co)cones.

    Limits are tested against cones out of every representable (which by the
    Yoneda lemma is a complete test for presheaves) plus ``test_objects``.
    Colimits are tested against cocones into the terminal presheaf, a
    codiscrete presheaf, the apex itself and ``test_objects``.  For every
    competitor, the mediating maps are found by exhaustive enumeration and
    must be exactly one, equal to ``gap``/``cogap``.  When there are more
    than ``sample`` competitors and some level exceeds the exhaustive size
    threshold, a seeded sample is checked instead.
    """
    rng = random.Random(seed)
    report = Report(subject=f"{cone.kind} universal property")
    base = cone.apex.base
    big = any(n > EXHAUSTIVE_LEVEL_SIZE for n in cone.apex.sizes.values())
    if cone.kind in ("product", "pullback", "equalizer"):
        for W in _competitor_objects(base, test_objects):
            comps = list(_cones(cone, W))
            if big and len(comps) > sample:
                comps = rng.sample(comps, sample)
            candidates = enumerate_maps(W, cone.apex)
            for competitor in comps:
                med = [m for m in candidates
                       if all(compose(leg, m) == q for leg, q in zip(_leg_list(cone), competitor))]
                if len(med) != 1 or med[0] != cone.gap(*competitor):
                    report.fail("mediating map", f"{len(med)} mediators from {W!r}")
                    return report
        report.record("exists and unique", True)
    else:
        targets = [terminal(base), cone.apex] + list(test_objects)
        if "[0]" in base.objects:
            targets.insert(1, codiscrete(base, 2))
        for W in targets:
            comps = list(_cocones(cone, W))
            if big and len(comps) > sample:
                comps = rng.sample(comps, sample)
            candidates = enumerate_maps(cone.apex, W)
            for competitor in comps:
                med = [m for m in candidates
                       if all(compose(m, leg) == q for leg, q in zip(_leg_list(cone), competitor))]
                if len(med) != 1 or med[0] != cone.cogap(*competitor):
                    report.fail("mediating map", f"{len(med)} mediators into {W!r}")
                    return report
        report.record("exists and unique", True)
    return report


def _leg_list(cone):
    order = {"product": ("pr1", "pr2"), "pullback": ("p1", "p2"), "equalizer": ("e",),
             "pushout": ("i1", "i2"), "coequalizer": ("q",)}[cone.kind]
    return [cone.legs[k] for k in order]


def _cones(cone, W):
    if cone.kind == "equalizer":
        f, g = cone.diagram
        for q in enumerate_maps(W, f.source):
            if compose(f, q) == compose(g, q):
                yield (q,)
        return
    if cone.kind == "product":
        X, Y = cone.diagram
        for a in enumerate_maps(W, X):
            for b in enumerate_maps(W, Y):
                yield (a, b)
        return
    f, g = cone.diagram
    for a in enumerate_maps(W, f.source):
        fa = compose(f, a)
        for b in enumerate_maps(W, g.source):
            if compose(g, b) == fa:
                yield (a, b)


def _cocones(cone, W):
    if cone.kind == "coequalizer":
        f, g = cone.diagram
        for h in enumerate_maps(f.target, W):
            if compose(h, f) == compose(h, g):
                yield (h,)
        return
    f, g = cone.diagram
    for a in enumerate_maps(f.target, W):
        af = compose(a, f)
        for b in enumerate_maps(g.target, W):
            if compose(b, g) == af:
                yield (a, b)


__all__ = [
    "ConeResult", "Square", "product", "pair", "times", "pullback", "pushout",
    "equalizer", "coequalizer", "is_equalizer_fork", "check_pullback_square",
    "check_h1_instance", "pulled_back_pushout", "verify_universal", "initial",
    "terminal", "inverse",
]

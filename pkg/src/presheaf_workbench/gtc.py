"""Graphs of maps into the interval and generating trivial cofibrations.

For a cofibration ``c: C -> Z`` and ``i: Z -> I`` the generating trivial
cofibration ``c (x)_i delta`` is the cogap map ``u: D -> Z x I`` of the square

    C ---<1, ic>---> C x I
    |                  |
    c                c x 1
    v                  v
    Z ----<1, i>---> Z x I

with ``D = Z +_C (C x I)``.  :func:`build_gtc` computes ``D`` and ``u`` and
verifies, for the instance at hand, that the square is a pullback and that
``c x 1`` is again a cofibration.
"""

from dataclasses import dataclass, field

from .errors import ConstructionError, ContractError, SizeError
from .limits import Square, check_pullback_square, pair, product, pushout, times
from .presheaf import (PresheafMap, boundary, compose, constant_map, find_iso,
                       from_initial, global_element, identity, is_mono,
                       subpresheaf, yoneda)
from .report import Report


@dataclass(eq=False)
class GtcSpec:
    ctx: object
    c: PresheafMap
    i: PresheafMap
    square: Square
    pushout: object
    u: PresheafMap
    transcript: Report = field(repr=False)
    biased_point: PresheafMap = None

    @property
    def C(self):
        return self.c.source

    @property
    def Z(self):
        return self.c.target

    @property
    def D(self):
        return self.u.source

    @property
    def ZxI(self):
        return self.u.target

    @property
    def CxI(self):
        return self.square.right.source


def graph_map(i, ctx=None):
    """``<1, i>: X -> X x I``; it has the retraction ``pr1``."""
    if ctx is not None and i.target != ctx.interval:
        raise ContractError("graph_map expects a map into the context interval")
    return pair(identity(i.source), i)


def build_gtc(ctx, c, i):
    if not ctx.is_cofibration(c):
        raise ContractError(f"{c!r} is not accepted as a cofibration ({ctx.cofibration_name})")
    if i.source != c.target:
        raise ContractError("i must be defined on the codomain of c")
    if i.target != ctx.interval:
        raise ContractError("i must land in the context interval")
    C = c.source
    top = pair(identity(C), compose(i, c))
    bottom = pair(identity(c.target), i)
    right = times(c, identity(ctx.interval))
    square = Square(top, c, right, bottom)
    transcript = Report(subject="generating trivial cofibration")

    def require(name, ok):
        transcript.record(name, ok)
        if not ok:
            raise ConstructionError(f"gtc construction failed: {name}", check=name)

    require("square commutes", square.commutes())
    require("square is a pullback", check_pullback_square(square))
    require("c x 1 is a cofibration", ctx.is_cofibration(right))
    po = pushout(c, top)
    u = po.cogap(bottom, right)
    require("u o i1 = <1, i>", compose(u, po["i1"]) == bottom)
    require("u o i2 = c x 1", compose(u, po["i2"]) == right)
    return GtcSpec(ctx, c, i, square, po, u, transcript)


def biased_gtc(ctx, c, point):
    """The pushout product ``c (x) point`` for a global element ``point: 1 -> I``."""
    if point.target != ctx.interval or point.source.total_size != len(ctx.base.objects):
        raise ContractError("point must be a map 1 -> I")
    spec = build_gtc(ctx, c, constant_map(c.target, point))
    spec.biased_point = point
    return spec


def interval_vertex(ctx, eps):
    """The endpoint ``eps`` of the standard interval ``y([1])``."""
    if ctx.interval != yoneda(ctx.base, "[1]"):
        raise ContractError("endpoints are only defined for the interval y([1])")
    return global_element(ctx.interval, eps, point_object="[0]")


def prism_gtc(ctx, n, eps):
    """The open prism inclusion ``j_{n,eps}`` built as a gtc.

    Uses the boundary inclusion of the ``n``-simplex and the map constant at
    vertex ``eps``.  The base must be a simplex truncation of level ``n + 1``
    or more.
    """
    preset = ctx.base.preset
    if preset is None or preset[0] != "simplex":
        raise ContractError("prism_gtc needs a simplex base")
    if preset[1]["n"] < n + 1:
        raise SizeError(f"simplex truncation {preset[1]['n']} is too small for n = {n}")
    if eps not in (0, 1):
        raise ContractError("eps must be 0 or 1")
    c = boundary(ctx.base, f"[{n}]")
    return build_gtc(ctx, c, constant_map(c.target, interval_vertex(ctx, eps)))


def open_prism_inclusion(ctx, n, eps):
    """``D^n x {eps} u dD^n x D^1 -> D^n x D^1`` as a union of subobjects.

    Built directly from element membership, independently of any pushout.
    """
    base = ctx.base
    simplex = yoneda(base, f"[{n}]")
    bd = boundary(base, f"[{n}]")
    prism = product(simplex, ctx.interval)
    pt = interval_vertex(ctx, eps)
    keep = {}
    for ob in base.objects:
        in_bd = set(bd.components[ob])
        const = pt.components[ob][0]
        nI = ctx.interval.sizes[ob]
        keep[ob] = [k for k in range(prism.apex.sizes[ob])
                    if k // nI in in_bd or k % nI == const]
    return subpresheaf(prism.apex, keep, name=f"open prism {n},{eps}")


def iso_over(m1, m2, budget=None):
    """An isomorphism ``phi`` with ``m2 o phi == m1``, or ``None``."""
    if m1.target != m2.target:
        raise ContractError("maps must share a codomain")
    return find_iso(m1.source, m2.source, budget=budget, over=(m1, m2))


def graph_gtc_iso(ctx, X, i):
    """Identify ``gtc(0 -> X, i)`` with the graph of ``i``.

    Returns ``(spec, phi)`` where ``phi: D -> X`` is the isomorphism with
    ``<1, i> o phi == u``; ``phi`` is ``None`` if no such iso exists.
    """
    spec = build_gtc(ctx, from_initial(X), i)
    return spec, iso_over(spec.u, graph_map(i, ctx))


def gtc_square_report(ctx, c, i):
    """Instance check that the defining square is a pullback and ``c x 1`` a cofibration."""
    top = pair(identity(c.source), compose(i, c))
    bottom = pair(identity(c.target), i)
    right = times(c, identity(ctx.interval))
    square = Square(top, c, right, bottom)
    report = Report(subject="gtc square")
    report.record("square commutes", square.commutes())
    report.record("square is a pullback", check_pullback_square(square))
    report.record("c x 1 is a cofibration", ctx.is_cofibration(right))
    report.record("c x 1 is mono", is_mono(right))
    return report

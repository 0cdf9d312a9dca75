"""Finite presheaves, natural transformations and the ambient context.

A :class:`Presheaf` stores, for every object ``c`` of its base, a level size
``|X(c)|`` (elements are the indices ``0 .. size-1``) and for every
morphism ``s: d -> c`` the action ``X(c) -> X(d)`` as a tuple.  A
:class:`PresheafMap` stores one component tuple per object.  Both are
immutable values compared by content.
"""

import itertools

from .errors import ContractError, ValidationError
from .report import Report
from .search import iter_natural_maps


class Presheaf:
    def __init__(self, base, sizes, action, name=""):
        self.base = base
        self.sizes = {ob: int(sizes.get(ob, 0)) for ob in base.objects}
        self.name = name
        act = {}
        for m, d, c in base.morphisms:
            if m in action:
                values = tuple(int(v) for v in action[m])
            elif base.is_identity(m) or self.sizes[c] == 0:
                values = tuple(range(self.sizes[c]))
            else:
                raise ValidationError(f"presheaf {name!r}: no action given for {m!r}")
            if len(values) != self.sizes[c]:
                raise ValidationError(
                    f"presheaf {name!r}: action of {m!r} has {len(values)} entries, "
                    f"level {c} has {self.sizes[c]}")
            if any(v < 0 or v >= self.sizes[d] for v in values):
                raise ValidationError(f"presheaf {name!r}: action of {m!r} leaves level {d}")
            act[m] = values
        self.action = act
        self._key = (tuple(self.sizes[ob] for ob in base.objects),
                     tuple(act[m] for m, _, _ in base.morphisms))
        self._hash = hash(self._key)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Presheaf) and self._hash == other._hash
                and self._key == other._key and self.base == other.base)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        levels = ", ".join(f"{ob}:{n}" for ob, n in self.sizes.items())
        return f"Presheaf({self.name + ': ' if self.name else ''}{levels})"

    def act(self, m, x):
        return self.action[m][x]

    def elements(self):
        for ob in self.base.objects:
            for x in range(self.sizes[ob]):
                yield ob, x

    @property
    def total_size(self):
        return sum(self.sizes.values())

    def is_empty(self):
        return self.total_size == 0

    def named(self, name):
        return Presheaf(self.base, self.sizes, self.action, name=name)

    def to_dict(self):
        return {
            "levels": dict(self.sizes),
            "actions": {m: list(v) for m, v in self.action.items()
                        if not self.base.is_identity(m)},
        }

    @classmethod
    def from_dict(cls, base, data, name=""):
        return cls(base, data["levels"], data["actions"], name=name)


class PresheafMap:
    """A natural transformation, stored componentwise."""

    def __init__(self, source, target, components, name=""):
        if source.base != target.base:
            raise ContractError("source and target live over different bases")
        self.source = source
        self.target = target
        self.name = name
        comps = {}
        for ob in source.base.objects:
            values = tuple(int(v) for v in components.get(ob, ()))
            if len(values) != source.sizes[ob]:
                raise ValidationError(
                    f"map {name!r}: component at {ob} has {len(values)} entries, "
                    f"source level has {source.sizes[ob]}")
            if any(v < 0 or v >= target.sizes[ob] for v in values):
                raise ValidationError(f"map {name!r}: component at {ob} leaves the target")
            comps[ob] = values
        self.components = comps
        self._key = tuple(comps[ob] for ob in source.base.objects)
        self._hash = hash((source, target, self._key))

    @property
    def base(self):
        return self.source.base

    def __call__(self, ob, x):
        return self.components[ob][x]

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, PresheafMap) and self._hash == other._hash
                and self._key == other._key
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or "map"
        return f"<{label}: {self.source!r} -> {self.target!r}>"

    def named(self, name):
        return PresheafMap(self.source, self.target, self.components, name=name)

    def to_dict(self):
        return {ob: list(v) for ob, v in self.components.items()}


def validate_presheaf(P):
    report = Report(subject=f"presheaf {P.name}".strip())
    base = P.base
    for ob in base.objects:
        ident = base.identity_of.get(ob)
        if ident is not None and P.action[ident] != tuple(range(P.sizes[ob])):
            report.fail("identity", f"action of identity at {ob} is not the identity")
    for (g, f), gf in base.compose_table.items():
        # f: a -> b, g: b -> c; X(g o f) = X(f) o X(g)
        act_f, act_g = P.action[f], P.action[g]
        expected = tuple(act_f[act_g[x]] for x in range(P.sizes[base.target[g]]))
        if P.action[gf] != expected:
            report.fail("functoriality", f"action({g} o {f}) != action({f}) o action({g})")
    if report.ok:
        report.record("functoriality", True)
    return report


def validate_map(m):
    report = Report(subject=f"map {m.name}".strip())
    X, Y = m.source, m.target
    for s, d, c in X.base.morphisms:
        comp_d, comp_c = m.components[d], m.components[c]
        ax, ay = X.action[s], Y.action[s]
        for x in range(X.sizes[c]):
            if comp_d[ax[x]] != ay[comp_c[x]]:
                report.fail("naturality", f"square for {s} fails at element {x} of {c}")
                break
    if report.ok:
        report.record("naturality", True)
    return report


def identity(X):
    return PresheafMap(X, X, {ob: range(n) for ob, n in X.sizes.items()}, name="id")


def compose(g, f):
    """``g o f`` computed levelwise."""
    if f.target != g.source:
        raise ContractError(f"cannot compose {g!r} after {f!r}: types do not match")
    return PresheafMap(f.source, g.target, {
        ob: tuple(g.components[ob][v] for v in f.components[ob])
        for ob in f.source.base.objects
    })


def compose_all(*maps):
    """``compose_all(h, g, f) == h o g o f``."""
    result = maps[-1]
    for m in reversed(maps[:-1]):
        result = compose(m, result)
    return result


def is_mono(m):
    """Pointwise injectivity, which characterises monomorphisms of presheaves."""
    return all(len(set(v)) == len(v) for v in m.components.values())


def is_epi(m):
    return all(len(set(v)) == m.target.sizes[ob] for ob, v in m.components.items())


def is_iso(m):
    return all(len(v) == m.target.sizes[ob] and len(set(v)) == len(v)
               for ob, v in m.components.items())


def inverse(m):
    if not is_iso(m):
        raise ContractError("map is not an isomorphism")
    comps = {}
    for ob, v in m.components.items():
        inv = [0] * len(v)
        for x, y in enumerate(v):
            inv[y] = x
        comps[ob] = inv
    return PresheafMap(m.target, m.source, comps)


def initial(base):
    return Presheaf(base, {}, {}, name="0")


def terminal(base):
    return Presheaf(base, {ob: 1 for ob in base.objects},
                    {m: (0,) for m, _, _ in base.morphisms}, name="1")


def from_initial(X):
    return PresheafMap(initial(X.base), X, {})


def to_terminal(X):
    one = terminal(X.base)
    return PresheafMap(X, one, {ob: (0,) * n for ob, n in X.sizes.items()})


def yoneda(base, c):
    """The representable presheaf ``Hom(-, c)``; elements follow hom order."""
    base.index_of(c)
    homs = {d: base.hom(d, c) for d in base.objects}
    position = {d: {phi: k for k, phi in enumerate(homs[d])} for d in base.objects}
    action = {}
    for s, e, d in base.morphisms:
        action[s] = tuple(position[e][base.compose(phi, s)] for phi in homs[d])
    return Presheaf(base, {d: len(homs[d]) for d in base.objects}, action, name=f"y{c}")


def yoneda_element(X, c, x):
    """The map ``y(c) -> X`` classifying ``x`` in ``X(c)``."""
    base = X.base
    rep = yoneda(base, c)
    return PresheafMap(rep, X, {
        d: tuple(X.action[phi][x] for phi in base.hom(d, c)) for d in base.objects
    })


def yoneda_morphism(base, s):
    """``y(s): y(d) -> y(c)`` for a base morphism ``s: d -> c``."""
    d, c = base.source[s], base.target[s]
    yc = yoneda(base, c)
    return yoneda_element(yc, d, base.hom(d, c).index(s))


def global_element(X, vertex, point_object=None):
    """A map ``1 -> X`` determined by an element at a terminal base object.

    ``point_object`` must be terminal in the base (every object has exactly
    one morphism to it); by default the first such object is used.
    """
    base = X.base
    if point_object is None:
        candidates = [o for o in base.objects
                      if all(len(base.hom(d, o)) == 1 for d in base.objects)]
        if not candidates:
            raise ContractError("base has no terminal object")
        point_object = candidates[0]
    comps = {d: (X.action[base.hom(d, point_object)[0]][vertex],) for d in base.objects}
    return PresheafMap(terminal(base), X, comps, name=f"pt{vertex}")


def constant_map(Z, point):
    """``point o !``: the map ``Z -> I`` constant at a global element."""
    return compose(point, to_terminal(Z))


def subpresheaf(X, keep, name=""):
    """Inclusion of the subpresheaf on the elements ``keep[ob]``.

    Elements keep their relative order.  Raises :class:`ValidationError` if
    the selection is not closed under the action.
    """
    base = X.base
    chosen = {ob: sorted(set(keep.get(ob, ()))) for ob in base.objects}
    pos = {ob: {x: k for k, x in enumerate(xs)} for ob, xs in chosen.items()}
    action = {}
    for s, d, c in base.morphisms:
        try:
            action[s] = tuple(pos[d][X.action[s][x]] for x in chosen[c])
        except KeyError:
            raise ValidationError(f"selection is not closed under the action of {s}") from None
    sub = Presheaf(base, {ob: len(xs) for ob, xs in chosen.items()}, action, name=name)
    return PresheafMap(sub, X, chosen, name=f"incl {name}".strip())


def image(m):
    keep = {ob: set(v) for ob, v in m.components.items()}
    return subpresheaf(m.target, keep)


def boundary(base, c):
    """Inclusion of the boundary of the representable ``y(c)``.

    Defined for simplex presets (non-surjective maps ``[k] -> [n]``) and
    cube presets (maps with at least one constant coordinate).
    """
    if base.preset is None or base.preset[0] not in ("simplex", "cube"):
        raise ContractError("boundary is defined for simplex and cube presets only")
    kind = base.preset[0]
    n = int(c.strip("[]"))
    rep = yoneda(base, c)
    keep = {}
    for d in base.objects:
        sel = []
        for k, phi in enumerate(base.hom(d, c)):
            values = phi.split(":", 1)[1]
            if kind == "simplex":
                interior = set(map(int, values)) == set(range(n + 1))
            else:
                interior = not any(ch in "01" for ch in values)
            if not interior:
                sel.append(k)
        keep[d] = sel
    return subpresheaf(rep, keep, name=f"boundary{c}")


def codiscrete(base, size, point_object="[0]"):
    """The codiscrete presheaf on ``size`` points.

    Its elements at ``c`` are all functions from the points of ``y(c)``
    (morphisms ``point_object -> c``) to ``range(size)``.
    """
    levels = {}
    index = {}
    for c in base.objects:
        pts = base.hom(point_object, c)
        funcs = list(itertools.product(range(size), repeat=len(pts)))
        levels[c] = funcs
        index[c] = {f: k for k, f in enumerate(funcs)}
    action = {}
    for s, d, c in base.morphisms:
        # restrict f: pts(c) -> S along pts(d) -> pts(c), phi |-> s o phi
        pts_c = base.hom(point_object, c)
        where = [pts_c.index(base.compose(s, phi)) for phi in base.hom(point_object, d)]
        action[s] = tuple(index[d][tuple(f[j] for j in where)] for f in levels[c])
    return Presheaf(base, {c: len(v) for c, v in levels.items()}, action,
                    name=f"codiscrete{size}")


def enumerate_maps(X, Y, budget=None, over=None):
    """All natural maps ``X -> Y`` in canonical order.

    ``over`` optionally restricts to maps over a common base object: a pair
    ``(x_map, y_map)`` with ``x_map: X -> B`` and ``y_map: Y -> B``; only
    maps ``m`` with ``y_map o m == x_map`` are returned.
    """
    if X.base != Y.base:
        raise ContractError("presheaves live over different bases")
    domains = None
    if over is not None:
        domains = fiber_domains(X, Y, *over)
    return [PresheafMap(X, Y, comps)
            for comps in iter_natural_maps(X, Y, domains=domains, budget=budget)]


def random_map(X, Y, rng, budget=None, over=None):
    """A map ``X -> Y`` found by search with shuffled branching, or ``None``."""
    if X.base != Y.base:
        raise ContractError("presheaves live over different bases")
    domains = fiber_domains(X, Y, *over) if over is not None else None
    comps = next(iter_natural_maps(X, Y, domains=domains, budget=budget, rng=rng), None)
    return None if comps is None else PresheafMap(X, Y, comps)


def fiber_domains(X, Y, x_map, y_map):
    """Search domains forcing ``y_map(value(x)) == x_map(x)``."""
    domains = {}
    for ob in X.base.objects:
        fibers = {}
        for y, b in enumerate(y_map.components[ob]):
            fibers.setdefault(b, []).append(y)
        domains[ob] = [fibers.get(b, []) for b in x_map.components[ob]]
    return domains


def find_iso(X, Y, budget=None, over=None):
    """Some isomorphism ``X -> Y`` (first in canonical order), or ``None``."""
    if X.sizes != Y.sizes:
        return None
    domains = fiber_domains(X, Y, *over) if over is not None else None
    for comps in iter_natural_maps(X, Y, domains=domains, budget=budget):
        m = PresheafMap(X, Y, comps)
        if is_iso(m):
            return m
    return None


class PresheafContext:
    """The ambient category of presheaves over ``base``.

    Holds the interval presheaf and the cofibration class (a predicate on
    maps, by default the monomorphisms).  Checks of the standing hypotheses
    are made per instance, never assumed.
    """

    def __init__(self, base, interval, cofibration=None, cofibration_name="mono"):
        if interval.base != base:
            raise ContractError("interval lives over a different base")
        if not validate_presheaf(interval):
            raise ValidationError("interval is not a valid presheaf")
        self.base = base
        self.interval = interval
        self.cofibration = cofibration or is_mono
        self.cofibration_name = cofibration_name if cofibration else "mono"

    def is_cofibration(self, m):
        return bool(self.cofibration(m))

    def check_h3(self, objects):
        """Maps out of the initial presheaf must be cofibrations."""
        report = Report(subject="H3: maps out of the initial object")
        for X in objects:
            report.record(f"0 -> {X.name or X!r}", self.is_cofibration(from_initial(X)))
        return report

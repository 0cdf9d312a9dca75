"""Finite index categories given by explicit composition tables.

Presheaves in this package are contravariant functors out of an
:class:`IndexCategory`.  Three families of bases are provided as presets:
truncated simplex categories, truncated cartesian cube categories, and
finite posets.
"""

import itertools

from .errors import ContractError, SizeError, ValidationError
from .report import Report

SIMPLEX_BOUND = 4
CUBE_BOUND = 3


class IndexCategory:
    """A finite category with stable string identifiers for its morphisms.

    ``compose_table`` maps ``(g, f)`` to the identifier of ``g o f``; it is
    expected to be defined exactly on the composable pairs, i.e. when
    ``target(f) == source(g)``.  Construction only checks that every morphism
    mentions known objects; the category laws are checked by
    :func:`validate_index_category` so that broken tables can still be
    inspected.
    """

    def __init__(self, objects, morphisms, identity_of, compose_table,
                 name="", preset=None):
        self.objects = tuple(objects)
        self.morphisms = tuple((m, s, t) for m, s, t in morphisms)
        self.identity_of = dict(identity_of)
        self.compose_table = dict(compose_table)
        self.name = name
        self.preset = preset
        if len(set(self.objects)) != len(self.objects):
            raise ValidationError("duplicate object identifiers")
        known = set(self.objects)
        self.source = {}
        self.target = {}
        for m, s, t in self.morphisms:
            if m in self.source:
                raise ValidationError(f"duplicate morphism identifier {m!r}")
            if s not in known or t not in known:
                raise ValidationError(f"morphism {m!r} mentions an unknown object")
            self.source[m] = s
            self.target[m] = t
        for ob, m in self.identity_of.items():
            if ob not in known or m not in self.source:
                raise ValidationError(f"identity entry {ob!r} -> {m!r} is unknown")
        self._index = {ob: k for k, ob in enumerate(self.objects)}
        self._hom = {(a, b): [] for a in self.objects for b in self.objects}
        for m, s, t in self.morphisms:
            self._hom[s, t].append(m)
        self._hom = {k: tuple(v) for k, v in self._hom.items()}
        self._into = {c: tuple(m for m, _, t in self.morphisms if t == c)
                      for c in self.objects}
        self._key = (self.objects, self.morphisms,
                     tuple(sorted(self.identity_of.items())),
                     tuple(sorted(self.compose_table.items())))
        self._hash = hash(self._key)
        self._generators = None

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, IndexCategory) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or "IndexCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def index_of(self, ob):
        try:
            return self._index[ob]
        except KeyError:
            raise ContractError(f"unknown object {ob!r}") from None

    def hom(self, a, b):
        """Morphism identifiers ``a -> b`` in declaration order."""
        self.index_of(a)
        self.index_of(b)
        return self._hom[a, b]

    def morphisms_into(self, c):
        return self._into[c]

    def identity(self, ob):
        return self.identity_of[ob]

    def is_identity(self, m):
        return self.identity_of.get(self.source[m]) == m

    def generators(self):
        """Non-identity morphisms whose composites give every non-identity morphism.

        Indecomposable morphisms first, then (in declaration order) whatever
        they fail to reach.  A map of presheaves that commutes with these
        actions commutes with all of them.
        """
        if self._generators is None:
            nonid = [m for m, _, _ in self.morphisms if not self.is_identity(m)]
            composites = {self.compose_table.get((g, f)) for g in nonid for f in nonid
                          if self.source[g] == self.target[f]}
            gens = [m for m in nonid if m not in composites]
            for m in nonid:
                if m not in self._closure(gens):
                    gens.append(m)
            self._generators = tuple(m for m in nonid if m in set(gens))
        return self._generators

    def _closure(self, gens):
        reached = set(gens)
        frontier = list(gens)
        while frontier:
            f = frontier.pop()
            for g in gens:
                if self.source[g] == self.target[f]:
                    gf = self.compose_table.get((g, f))
                    if gf is not None and gf not in reached and not self.is_identity(gf):
                        reached.add(gf)
                        frontier.append(gf)
        return reached

    def compose(self, g, f):
        """Identifier of ``g o f``."""
        if self.target[f] != self.source[g]:
            raise ContractError(f"{g!r} o {f!r} is not composable")
        try:
            return self.compose_table[g, f]
        except KeyError:
            raise ContractError(f"composite {g!r} o {f!r} missing from table") from None

    def to_dict(self):
        if self.preset is not None:
            kind, args = self.preset
            return {"preset": kind, **args}
        return {
            "objects": list(self.objects),
            "morphisms": [list(m) for m in self.morphisms],
            "identities": dict(self.identity_of),
            "compose": [[g, f, gf] for (g, f), gf in sorted(self.compose_table.items())],
        }

    @classmethod
    def from_dict(cls, data):
        if "preset" in data:
            kind = data["preset"]
            if kind == "simplex":
                return preset_simplex(int(data["n"]))
            if kind == "cube":
                return preset_cube(int(data["n"]))
            if kind == "terminal":
                return preset_terminal()
            if kind == "poset":
                return preset_poset(data["elements"], [tuple(p) for p in data["order"]])
            raise ValidationError(f"unknown preset {kind!r}")
        return cls(
            data["objects"],
            [tuple(m) for m in data["morphisms"]],
            data["identities"],
            {(g, f): gf for g, f, gf in data["compose"]},
        )


def validate_index_category(cat):
    """Check identities, composition totality, identity laws and associativity.

    Every violation is listed in the returned :class:`Report`; nothing raises.
    """
    report = Report(subject=f"index category {cat.name or ''}".strip())
    src, tgt = cat.source, cat.target
    for ob in cat.objects:
        m = cat.identity_of.get(ob)
        if m is None:
            report.fail("identity", f"object {ob} has no identity")
        elif src[m] != ob or tgt[m] != ob:
            report.fail("identity", f"identity of {ob} is {m}: {src[m]}->{tgt[m]}")
    ids = [m for m, _, _ in cat.morphisms]
    for (g, f), gf in cat.compose_table.items():
        if f not in src or g not in src or gf not in src:
            report.fail("composition", f"table entry ({g}, {f}) -> {gf} mentions unknown morphisms")
        elif tgt[f] != src[g]:
            report.fail("composition", f"entry for non-composable pair ({g}, {f})")
        elif src[gf] != src[f] or tgt[gf] != tgt[g]:
            report.fail("composition", f"{g} o {f} = {gf} has wrong endpoints")
    for f in ids:
        for g in ids:
            if tgt[f] == src[g] and (g, f) not in cat.compose_table:
                report.fail("composition", f"missing composite for pair ({g}, {f})")
    for f in ids:
        i_src = cat.identity_of.get(src[f])
        i_tgt = cat.identity_of.get(tgt[f])
        if i_src is not None and cat.compose_table.get((f, i_src), f) != f:
            report.fail("identity law", f"{f} o id != {f}")
        if i_tgt is not None and cat.compose_table.get((i_tgt, f), f) != f:
            report.fail("identity law", f"id o {f} != {f}")
    table = cat.compose_table
    for f in ids:
        for c in cat.objects:
            for g in cat._hom[tgt[f], c]:
                gf = table.get((g, f))
                for d in cat.objects:
                    for h in cat._hom[c, d]:
                        hg = table.get((h, g))
                        if gf is None or hg is None:
                            continue
                        left = table.get((h, gf))
                        right = table.get((hg, f))
                        if left is not None and right is not None and left != right:
                            report.fail("associativity", f"({h} o {g}) o {f} != {h} o ({g} o {f})")
    if report.ok:
        report.record("category laws", True,
                      f"{len(cat.objects)} objects, {len(ids)} morphisms")
    return report


def _from_functions(kind, args, objects, homs, compose_fn, identity_fn, name_fn):
    """Build a category whose morphisms are concrete values (tuples)."""
    morphisms = []
    value_of = {}
    for a in objects:
        for b in objects:
            for value in homs(a, b):
                m = name_fn(a, b, value)
                morphisms.append((m, f"[{a}]", f"[{b}]"))
                value_of[m] = (a, b, value)
    by_value = {v: m for m, v in value_of.items()}
    table = {}
    for f, (a, b, fv) in value_of.items():
        for g, (b2, c, gv) in value_of.items():
            if b2 == b:
                table[g, f] = by_value[a, c, compose_fn(gv, fv)]
    identities = {f"[{a}]": by_value[a, a, identity_fn(a)] for a in objects}
    return IndexCategory([f"[{a}]" for a in objects], morphisms, identities, table,
                         name=f"{kind}({', '.join(str(v) for v in args.values())})",
                         preset=(kind, args))


def _monotone_maps(a, b):
    # order-preserving maps {0..a} -> {0..b}
    return [c for c in itertools.combinations_with_replacement(range(b + 1), a + 1)]


def preset_simplex(n, bound=SIMPLEX_BOUND):
    """The simplex category truncated to ``[0], ..., [n]``.

    Morphisms ``[a] -> [b]`` are the order-preserving maps, named
    ``"a>b:v0v1..."`` by their value sequence.
    """
    if n < 0:
        raise ContractError("truncation level must be non-negative")
    if n > bound:
        raise SizeError(f"simplex truncation {n} exceeds bound {bound}")
    return _from_functions(
        "simplex", {"n": n}, range(n + 1), _monotone_maps,
        lambda g, f: tuple(g[x] for x in f),
        lambda a: tuple(range(a + 1)),
        lambda a, b, v: f"{a}>{b}:" + "".join(map(str, v)),
    )


def _cube_maps(m, k):
    # coordinate j of the target is a source coordinate index or a constant
    choices = ["0", "1"] + [f"x{j}" for j in range(m)]
    return list(itertools.product(choices, repeat=k))


def _cube_compose(g, f):
    # f: [m] -> [k], g: [k] -> [l]; constants absorb, projections substitute
    return tuple(v if v in ("0", "1") else f[int(v[1:])] for v in g)


def _cube_name(m, k, v):
    letters = "".join(c if c in "01" else chr(ord("a") + int(c[1:])) for c in v)
    return f"{m}>{k}:" + (letters or "()")


def preset_cube(n, bound=CUBE_BOUND):
    """The cartesian cube category truncated to ``[0], ..., [n]``.

    A morphism ``[m] -> [k]`` assigns to each of the ``k`` target
    coordinates either a source coordinate (letters ``a, b, ...``) or a
    constant ``0``/``1``, so ``|Hom([m], [k])| = (m + 2) ** k``.
    """
    if n < 0:
        raise ContractError("truncation level must be non-negative")
    if n > bound:
        raise SizeError(f"cube truncation {n} exceeds bound {bound}")
    return _from_functions("cube", {"n": n}, range(n + 1), _cube_maps, _cube_compose,
                           lambda a: tuple(f"x{j}" for j in range(a)), _cube_name)


def preset_poset(elements, order):
    """The category of a finite poset.

    ``order`` is a collection of pairs ``(x, y)`` meaning ``x <= y``; it must
    already be reflexive, transitive and antisymmetric.
    """
    elements = [str(e) for e in elements]
    rel = {(str(x), str(y)) for x, y in order}
    known = set(elements)
    bad = [p for p in rel if p[0] not in known or p[1] not in known]
    if bad:
        raise ValidationError(f"order mentions unknown elements: {sorted(bad)}")
    for x in elements:
        if (x, x) not in rel:
            raise ValidationError(f"order is not reflexive at {x}")
    for x, y in rel:
        if x != y and (y, x) in rel:
            raise ValidationError(f"order is not antisymmetric on {x}, {y}")
        for y2, z in rel:
            if y2 == y and (x, z) not in rel:
                raise ValidationError(f"order is not transitive: {x}<={y}<={z}")
    pairs = [(x, y) for x in elements for y in elements if (x, y) in rel]
    morphisms = [(f"{x}<={y}", x, y) for x, y in pairs]
    table = {}
    for x, y in pairs:
        for y2, z in pairs:
            if y2 == y:
                table[f"{y}<={z}", f"{x}<={y}"] = f"{x}<={z}"
    return IndexCategory(
        elements, morphisms, {x: f"{x}<={x}" for x in elements}, table,
        name=f"poset({len(elements)})",
        preset=("poset", {"elements": elements, "order": [list(p) for p in sorted(pairs)]}),
    )


def preset_terminal():
    """The terminal category; presheaves over it are finite sets."""
    cat = preset_poset(["*"], [("*", "*")])
    cat.name = "terminal"
    cat.preset = ("terminal", {})
    return cat


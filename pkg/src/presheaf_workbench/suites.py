"""Seeded random instances and the property suites built on them.

Random presheaves are random subpresheaves (closures of a few random
elements) of small products and coproducts of representables, optionally
with two elements glued together, and rejected if any level exceeds the
size cap.
"""

import random

from .errors import ContractError
from .gtc import (build_gtc, graph_gtc_iso, graph_map, gtc_square_report, interval_vertex,
                  iso_over, open_prism_inclusion, prism_gtc)
from .index import preset_cube, preset_poset, preset_simplex
from .limits import coequalizer, product, pushout
from .presheaf import (PresheafContext, boundary, constant_map, enumerate_maps, from_initial,
                       is_mono, subpresheaf, terminal, yoneda, yoneda_element)
from .report import Report


def two_points(base):
    """The constant presheaf on two points, ``1 + 1``."""
    one = terminal(base)
    return pushout(from_initial(one), from_initial(one)).apex.named("1+1")


def standard_context(base):
    """Interval ``y([1])`` on simplex and cube presets, ``1 + 1`` otherwise."""
    if base.preset is not None and base.preset[0] in ("simplex", "cube"):
        return PresheafContext(base, yoneda(base, "[1]"))
    return PresheafContext(base, two_points(base))


def suite_bases():
    """The bases the random suites cycle through."""
    diamond = preset_poset("0ab1", [(x, x) for x in "0ab1"]
                           + [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("0", "1")])
    vee = preset_poset("lrt", [(x, x) for x in "lrt"] + [("l", "t"), ("r", "t")])
    return [preset_simplex(1), preset_simplex(2), preset_cube(1), diamond, vee]


def _max_level(P):
    return max(P.sizes.values(), default=0)


def _atoms(base, cap):
    atoms = [yoneda(base, c) for c in base.objects]
    atoms.append(terminal(base))
    return [a for a in atoms if _max_level(a) <= cap]


def closure(X, seeds):
    """Elements reachable from ``seeds`` under the action, per level."""
    keep = {ob: set() for ob in X.base.objects}
    for c, x in seeds:
        for m in X.base.morphisms_into(c):
            keep[X.base.source[m]].add(X.action[m][x])
    return keep


def random_presheaf(base, rng, cap=4, tries=200):
    """A random presheaf over ``base`` with every level of size at most ``cap``."""
    atoms = _atoms(base, cap)
    for _ in range(tries):
        a, b = rng.choice(atoms), rng.choice(atoms)
        shape = rng.choice(["atom", "product", "coproduct"])
        if shape == "atom":
            ambient = a
        elif shape == "product":
            ambient = product(a, b).apex
        else:
            ambient = pushout(from_initial(a), from_initial(b)).apex
        elements = list(ambient.elements())
        if not elements:
            continue
        seeds = rng.sample(elements, rng.randint(1, min(3, len(elements))))
        X = subpresheaf(ambient, closure(ambient, seeds)).source
        if rng.random() < 0.3:
            X = _glue(X, rng)
        if _max_level(X) <= cap:
            return X.named("X")
    raise ContractError("could not draw a presheaf within the size cap")


def _glue(X, rng):
    """Identify two random elements at a common level."""
    levels = [ob for ob in X.base.objects if X.sizes[ob] >= 2]
    if not levels:
        return X
    ob = rng.choice(levels)
    x, y = rng.sample(range(X.sizes[ob]), 2)
    return coequalizer(yoneda_element(X, ob, x), yoneda_element(X, ob, y)).apex


def random_map(X, Y, rng, budget=None):
    maps = enumerate_maps(X, Y, budget=budget)
    if not maps:
        raise ContractError("no maps to choose from")
    return rng.choice(maps)


def random_subobject(X, rng):
    """Inclusion of the closure of a random (possibly empty) set of elements."""
    elements = list(X.elements())
    seeds = rng.sample(elements, rng.randint(0, min(2, len(elements))))
    return subpresheaf(X, closure(X, seeds))


def graph_cases(count, seed):
    """``count`` seeded cases ``(ctx, X, i)`` cycling through :func:`suite_bases`."""
    rng = random.Random(seed)
    contexts = [standard_context(b) for b in suite_bases()]
    cases = []
    for k in range(count):
        ctx = contexts[k % len(contexts)]
        X = random_presheaf(ctx.base, rng)
        cases.append((ctx, X, random_map(X, ctx.interval, rng)))
    return cases


def square_cases(count, seed):
    """``count`` seeded cases ``(ctx, c, i)`` with ``c`` a mono."""
    rng = random.Random(seed)
    contexts = [standard_context(b) for b in suite_bases()]
    cases = []
    for k in range(count):
        ctx = contexts[k % len(contexts)]
        Z = random_presheaf(ctx.base, rng)
        c = random_subobject(Z, rng)
        cases.append((ctx, c, random_map(Z, ctx.interval, rng)))
    return cases


def _base_label(base):
    if base.preset is None:
        return base.name or "custom"
    kind, args = base.preset
    return f"{kind}({args.get('n', len(base.objects))})"


def graph_suite(count=60, seed=0):
    report = Report(subject=f"graph maps as gtcs ({count} cases, seed {seed})")
    for k, (ctx, X, i) in enumerate(graph_cases(count, seed)):
        spec, phi = graph_gtc_iso(ctx, X, i)
        label = f"case {k} over {_base_label(ctx.base)}, |X| = {X.total_size}"
        report.record(f"{label}: u is iso to <1,i> over X x I", phi is not None)
        report.record(f"{label}: <1,i> is mono", is_mono(graph_map(i, ctx)))
    return report


def square_suite(count=60, seed=0):
    report = Report(subject=f"gtc squares are pullbacks ({count} cases, seed {seed})")
    for k, (ctx, c, i) in enumerate(square_cases(count, seed)):
        label = (f"case {k} over {_base_label(ctx.base)}, "
                 f"|C| = {c.source.total_size}, |Z| = {c.target.total_size}")
        report.extend(gtc_square_report(ctx, c, i), prefix=f"{label}: ")
    return report


def kan_prism_report(max_n=2, truncation=3):
    """Prism inclusions as gtcs, against the boundary gtc and the direct union."""
    base = preset_simplex(truncation)
    ctx = PresheafContext(base, yoneda(base, "[1]"))
    report = Report(subject=f"open prisms over simplex({truncation})")
    for n in range(max_n + 1):
        for eps in (0, 1):
            spec = prism_gtc(ctx, n, eps)
            c = boundary(base, f"[{n}]")
            plain = build_gtc(ctx, c, constant_map(c.target, interval_vertex(ctx, eps)))
            direct = open_prism_inclusion(ctx, n, eps)
            label = f"j({n},{eps})"
            report.record(f"{label}: iso over the boundary gtc with constant {eps}",
                          iso_over(spec.u, plain.u) is not None)
            report.record(f"{label}: levels match the direct union",
                          spec.D.sizes == direct.source.sizes,
                          " ".join(f"{ob}:{k}" for ob, k in spec.D.sizes.items()))
            report.record(f"{label}: iso over the prism", iso_over(spec.u, direct) is not None)
    return report

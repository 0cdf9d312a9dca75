"""Brute-force reference implementations used only by the tests."""

import itertools


def natural_maps(X, Y):
    """Every natural map ``X -> Y`` by filtering all families of functions."""
    base = X.base
    obs = list(base.objects)
    per_level = [itertools.product(range(Y.sizes[ob]), repeat=X.sizes[ob]) for ob in obs]
    found = []
    for choice in itertools.product(*per_level):
        comps = dict(zip(obs, choice))
        if all(comps[d][X.action[m][x]] == Y.action[m][comps[c][x]]
               for m, d, c in base.morphisms for x in range(X.sizes[c])):
            found.append(comps)
    return found


def is_mono_by_definition(m, tests):
    """``m`` is mono iff ``m e1 = m e2`` forces ``e1 = e2`` for maps out of ``tests``."""
    for T in tests:
        maps = natural_maps(T, m.source)
        images = {}
        for e in maps:
            key = tuple(tuple(m.components[ob][v] for v in e[ob]) for ob in T.base.objects)
            if key in images and images[key] != e:
                return False
            images[key] = e
    return True


def lifts(problem):
    """All lifts of a square by brute force."""
    u, p, g, h = problem.u, problem.p, problem.g, problem.h
    out = []
    for comps in natural_maps(u.target, p.source):
        ok = all(comps[ob][u.components[ob][a]] == g.components[ob][a]
                 for ob in u.base.objects for a in range(u.source.sizes[ob]))
        ok = ok and all(p.components[ob][comps[ob][b]] == h.components[ob][b]
                        for ob in u.base.objects for b in range(u.target.sizes[ob]))
        if ok:
            out.append(comps)
    return out

"""Backtracking search for natural transformations with arc consistency.

Variables are the elements ``(c, x)`` of the source presheaf; the domain of
a variable is a bitmask over the target level ``Y(c)``.  Each non-identity
morphism ``s: d -> c`` contributes, for every ``x`` in ``X(c)``, the
functional constraint ``value(d, X(s)x) == Y(s)(value(c, x))``.

Variables are branched in a fixed order (objects with the most incoming
non-identity morphisms first, then element index), trying values in
ascending order.  Because the branching variable is always the first
undetermined one, solutions come out in lexicographic order of their value
sequence under that variable order, which is what callers rely on for
canonical answers.
"""

import contextlib
import contextvars
import os

from .errors import SizeError

BUDGET_ENV = "PRESHEAF_WORKBENCH_BUDGET"
DEFAULT_BUDGET = 10**7

_budget_override = contextvars.ContextVar("budget_override", default=None)


def default_budget():
    """Budget used when a caller passes ``None``.

    An active :func:`budget_limit` wins, then the environment variable, then
    :data:`DEFAULT_BUDGET`.
    """
    override = _budget_override.get()
    if override is not None:
        return override
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


@contextlib.contextmanager
def budget_limit(budget):
    """Set the default search budget for the enclosed block."""
    token = _budget_override.set(int(budget))
    try:
        yield
    finally:
        _budget_override.reset(token)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def variable_order(base, sizes):
    """Canonical element order used by every search over a given source shape."""
    def weight(ob):
        into = sum(1 for m in base.morphisms_into(ob) if not base.is_identity(m))
        return (-into, base.index_of(ob))

    objects = sorted(base.objects, key=weight)
    return [(ob, x) for ob in objects for x in range(sizes[ob])]


class _Problem:
    def __init__(self, source, target, domains):
        base = source.base
        self.order = variable_order(base, source.sizes)
        self.var_id = {v: k for k, v in enumerate(self.order)}
        self.var_count = len(self.order)
        # down[k]: constraints where variable k is the upper end
        # up[k]: constraints where variable k is the lower end
        # each constraint carries its bit table and a memo of unions over masks
        self.down = [[] for _ in self.order]
        self.up = [[] for _ in self.order]
        image = {}
        preimage = {}
        for m in base.generators():
            d, c = base.source[m], base.target[m]
            act_y = target.action[m]
            image[m] = [1 << act_y[y] for y in range(target.sizes[c])]
            pre = [0] * target.sizes[d]
            for y in range(target.sizes[c]):
                pre[act_y[y]] |= 1 << y
            preimage[m] = pre
            act_x = source.action[m]
            img, pre = (image[m], {}), (preimage[m], {})
            for x in range(source.sizes[c]):
                hi = self.var_id[c, x]
                lo = self.var_id[d, act_x[x]]
                self.down[hi].append((lo, img))
                self.up[lo].append((hi, pre))
        full = {ob: (1 << target.sizes[ob]) - 1 for ob in base.objects}
        self.initial = []
        for ob, x in self.order:
            mask = full[ob]
            if domains is not None and ob in domains and domains[ob][x] is not None:
                allowed = 0
                for y in domains[ob][x]:
                    allowed |= 1 << y
                mask &= allowed
            self.initial.append(mask)

    def propagate(self, doms, queue):
        down, up = self.down, self.up
        while queue:
            k = queue.pop()
            dom_k = doms[k]
            for other, (table, memo) in down[k] + up[k]:
                reach = memo.get(dom_k)
                if reach is None:
                    reach = 0
                    for y in _bits(dom_k):
                        reach |= table[y]
                    memo[dom_k] = reach
                new = doms[other] & reach
                if new != doms[other]:
                    if not new:
                        return False
                    doms[other] = new
                    queue.append(other)
        return True


def iter_natural_maps(source, target, domains=None, budget=None, rng=None):
    """Yield component dicts of every natural map ``source -> target``.

    ``domains`` optionally restricts values: ``domains[ob][x]`` is an
    iterable of allowed target indices (or ``None`` for no restriction).
    With ``rng`` (a :class:`random.Random`) candidate values are tried in
    shuffled order, so the first answer is a random map rather than the
    canonical one.
    Raises :class:`SizeError` once more than ``budget`` partial assignments
    have been visited.
    """
    if budget is None:
        budget = default_budget()
    prob = _Problem(source, target, domains)
    doms = list(prob.initial)
    if any(m == 0 for m in doms):
        return
    if not prob.propagate(doms, list(range(prob.var_count))):
        return
    visited = 0
    # each frame: (domains, branching variable, remaining candidate values)
    stack = [(doms, None, None)]
    while stack:
        doms, k, values = stack[-1]
        if k is None:
            k = next((j for j in range(prob.var_count) if doms[j] & (doms[j] - 1)), None)
            if k is None:
                stack.pop()
                yield _assignment(prob, doms, source)
                continue
            values = list(_bits(doms[k]))
            if rng is not None:
                rng.shuffle(values)
            values.reverse()
            stack[-1] = (doms, k, values)
        if not values:
            stack.pop()
            continue
        v = values.pop()
        visited += 1
        if visited > budget:
            ob = prob.order[k][0]
            raise SizeError(f"search budget {budget} exceeded while assigning level {ob}")
        child = list(doms)
        child[k] = 1 << v
        if prob.propagate(child, [k]):
            stack.append((child, None, None))


def _assignment(prob, doms, source):
    comps = {ob: [0] * source.sizes[ob] for ob in source.base.objects}
    for (ob, x), mask in zip(prob.order, doms):
        comps[ob][x] = mask.bit_length() - 1
    return {ob: tuple(v) for ob, v in comps.items()}


def canonical_key(source, components):
    """Sort key matching the order in which :func:`iter_natural_maps` yields."""
    return tuple(components[ob][x] for ob, x in variable_order(source.base, source.sizes))

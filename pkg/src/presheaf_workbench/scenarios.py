"""Scenario files: a JSON description of a base, named objects and a task.

A scenario document looks like::

    {
      "schema": "presheaf-workbench/scenario/1",
      "name": "...",
      "base": {"preset": "simplex", "n": 1},
      "interval": "I",
      "cofibrations": "mono",
      "presheaves": {"I": {"yoneda": "[1]"}, ...},
      "maps": {"v0": {"point": {"target": "I", "vertex": 0}}, ...},
      "task": {"kind": "prop7", ...}
    }

Every presheaf and map entry is a one-key object naming how it is built
(see ``PRESHEAF_KINDS`` and ``MAP_KINDS``).  Names may refer to each other
in any order; cycles are rejected.  :func:`run_scenario` resolves and
validates everything, runs the task, and returns a report document together
with the process exit code (0 pass, 1 a check failed or a required lift is
absent, 2 invalid input, 3 search budget exceeded).
"""

import json
import random
from dataclasses import dataclass, field
from importlib import resources

from . import certificates
from .errors import (ConstructionError, ContractError, LiftFailure, SizeError,
                     ValidationError, WorkbenchError)
from .frobenius import (adjunction_report, frobenius_witness, gtc_problems,
                        left_fibration_counterexample, naturality_report,
                        pullback_gtc_retract, pushforward)
from .gtc import build_gtc
from .index import IndexCategory, validate_index_category
from .lifting import (FibrationWitness, LiftingProblem, all_lifts, lift_via_retract,
                      solve_lift)
from .limits import pair, product, pullback, pushout, times
from .presheaf import (Presheaf, PresheafContext, PresheafMap, boundary, codiscrete,
                       compose, compose_all, constant_map, enumerate_maps, from_initial,
                       global_element, identity, initial, random_map, subpresheaf, terminal,
                       to_terminal, validate_map, validate_presheaf, yoneda,
                       yoneda_element, yoneda_morphism)
from .report import Report
from .search import budget_limit

SCHEMA = "presheaf-workbench/scenario/1"
REPORT_SCHEMA = "presheaf-workbench/report/1"

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3

TASK_KINDS = ("validate", "lift", "gtc", "prop7", "cor9", "counterexample")


class ScenarioError(ValidationError):
    """Invalid scenario input; ``field`` is the dotted path of the offending entry."""

    def __init__(self, message, field=""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


@dataclass
class Scenario:
    name: str
    base: dict
    task: dict
    interval: str = "I"
    presheaves: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    cofibrations: str = "mono"
    description: str = ""

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "name": self.name,
            "description": self.description,
            "base": self.base,
            "interval": self.interval,
            "cofibrations": self.cofibrations,
            "presheaves": self.presheaves,
            "maps": self.maps,
            "task": self.task,
        }

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ScenarioError("scenario must be a JSON object")
        if data.get("schema") != SCHEMA:
            raise ScenarioError(f"expected {SCHEMA!r}, got {data.get('schema')!r}", "schema")
        known = {"schema", "name", "description", "base", "interval", "cofibrations",
                 "presheaves", "maps", "task"}
        extra = sorted(set(data) - known)
        if extra:
            raise ScenarioError(f"unknown keys {extra}", extra[0])
        for key in ("name", "base", "task"):
            if key not in data:
                raise ScenarioError("missing required field", key)
        for key, kind in (("base", dict), ("task", dict), ("presheaves", dict), ("maps", dict)):
            if key in data and not isinstance(data[key], kind):
                raise ScenarioError(f"must be a JSON {kind.__name__}", key)
        task = data["task"]
        if task.get("kind") not in TASK_KINDS:
            raise ScenarioError(f"kind must be one of {list(TASK_KINDS)}", "task.kind")
        return cls(
            name=str(data["name"]),
            base=data["base"],
            task=task,
            interval=data.get("interval", "I"),
            presheaves=data.get("presheaves", {}),
            maps=data.get("maps", {}),
            cofibrations=data.get("cofibrations", "mono"),
            description=data.get("description", ""),
        )


def parse(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc.msg}",
                            f"line {exc.lineno} column {exc.colno}") from None
    return Scenario.from_dict(data)


def emit(scenario):
    return json.dumps(scenario.to_dict(), indent=2) + "\n"


def load(path_or_name):
    """Read a scenario from a file path or the name of a bundled scenario."""
    try:
        with open(path_or_name, encoding="utf-8") as fh:
            return parse(fh.read())
    except FileNotFoundError:
        if path_or_name in bundled_names():
            return parse(bundled_text(path_or_name))
        raise ScenarioError(f"no such file or bundled scenario: {path_or_name}") from None


def bundled_names():
    root = resources.files("presheaf_workbench") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_text(name):
    return (resources.files("presheaf_workbench") / "data" / f"{name}.json").read_text("utf-8")


def bundled(name):
    return parse(bundled_text(name))


# ---------------------------------------------------------------------------
# resolution of named objects


def _one_key(spec, path):
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ScenarioError("entry must be an object with exactly one kind key", path)
    return next(iter(spec.items()))


def _fields(value, path, *names, optional=()):
    if not isinstance(value, dict):
        raise ScenarioError(f"expected an object with fields {list(names)}", path)
    missing = [n for n in names if n not in value]
    if missing:
        raise ScenarioError(f"missing field {missing[0]!r}", path)
    extra = sorted(set(value) - set(names) - set(optional))
    if extra:
        raise ScenarioError(f"unknown field {extra[0]!r}", path)
    return [value[n] for n in names] + [value.get(n) for n in optional]


def _names(value, path, count=None):
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ScenarioError("expected a list of names", path)
    if count is not None and len(value) != count:
        raise ScenarioError(f"expected {count} names", path)
    return value


class Workspace:
    """Lazily builds the named presheaves and maps of a scenario."""

    def __init__(self, scenario):
        self.scenario = scenario
        try:
            self.base = IndexCategory.from_dict(scenario.base)
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"malformed base: {exc}", "base") from None
        except ContractError as exc:
            raise ScenarioError(str(exc), "base") from None
        if not validate_index_category(self.base):
            raise ScenarioError("index category fails its laws", "base")
        if scenario.cofibrations != "mono":
            raise ScenarioError("only the class 'mono' is supported", "cofibrations")
        self._presheaves = {}
        self._maps = {}
        self._pending = set()
        self._cones = {}
        self.ctx = PresheafContext(self.base, self.presheaf(scenario.interval, "interval"))

    # -- lookup ------------------------------------------------------------

    def presheaf(self, name, path="presheaves"):
        if name in self._presheaves:
            return self._presheaves[name]
        specs = self.scenario.presheaves
        if name not in specs:
            raise ScenarioError(f"unknown presheaf {name!r}", path)
        where = f"presheaves.{name}"
        if where in self._pending:
            raise ScenarioError("definition refers to itself", where)
        self._pending.add(where)
        try:
            kind, value = _one_key(specs[name], where)
            if kind not in PRESHEAF_KINDS:
                raise ScenarioError(f"unknown presheaf kind {kind!r}", where)
            try:
                P = PRESHEAF_KINDS[kind](self, value, f"{where}.{kind}")
            except ScenarioError:
                raise
            except (ContractError, ConstructionError) as exc:
                raise ScenarioError(str(exc), where) from None
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                raise ScenarioError(f"malformed entry: {exc!r}", where) from None
        finally:
            self._pending.discard(where)
        P = P.named(name)
        self._presheaves[name] = P
        return P

    def map(self, name, path="maps"):
        if name in self._maps:
            return self._maps[name]
        specs = self.scenario.maps
        if name not in specs:
            raise ScenarioError(f"unknown map {name!r}", path)
        where = f"maps.{name}"
        if where in self._pending:
            raise ScenarioError("definition refers to itself", where)
        self._pending.add(where)
        try:
            kind, value = _one_key(specs[name], where)
            if kind not in MAP_KINDS:
                raise ScenarioError(f"unknown map kind {kind!r}", where)
            try:
                m = MAP_KINDS[kind](self, value, f"{where}.{kind}")
            except ScenarioError:
                raise
            except (ContractError, ConstructionError) as exc:
                raise ScenarioError(str(exc), where) from None
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                raise ScenarioError(f"malformed entry: {exc!r}", where) from None
        finally:
            self._pending.discard(where)
        m = m.named(name)
        self._maps[name] = m
        return m

    def cone(self, kind, names, path):
        key = (kind, tuple(names))
        if key not in self._cones:
            f, g = (self.map(n, path) for n in _names(names, path, 2))
            self._cones[key] = (pullback if kind == "pullback" else pushout)(f, g)
        return self._cones[key]

    def resolve_all(self):
        """Build and validate every declared object; returns a report."""
        report = Report(subject=f"scenario {self.scenario.name}")
        for name in self.scenario.presheaves:
            report.record(f"presheaf {name} is valid", validate_presheaf(self.presheaf(name)))
        for name in self.scenario.maps:
            report.record(f"map {name} is natural", validate_map(self.map(name)))
        return report


def _ob(ws, value, path):
    if value not in ws.base.objects:
        raise ScenarioError(f"unknown base object {value!r}", path)
    return value


def _explicit_presheaf(ws, value, path):
    levels, actions = _fields(value, path, "levels", "actions")
    P = Presheaf.from_dict(ws.base, {"levels": levels, "actions": actions})
    report = validate_presheaf(P)
    if not report:
        raise ScenarioError(f"not a presheaf: {report.failures[0][1]}", path)
    return P


def _codiscrete(ws, value, path):
    if isinstance(value, int):
        return codiscrete(ws.base, value)
    size, point = _fields(value, path, "size", optional=("point",))
    return codiscrete(ws.base, int(size), point or "[0]")


PRESHEAF_KINDS = {
    "yoneda": lambda ws, v, p: yoneda(ws.base, _ob(ws, v, p)),
    "terminal": lambda ws, v, p: terminal(ws.base),
    "initial": lambda ws, v, p: initial(ws.base),
    "codiscrete": _codiscrete,
    "boundary": lambda ws, v, p: boundary(ws.base, _ob(ws, v, p)).source,
    "product": lambda ws, v, p: product(*(ws.presheaf(n, p) for n in _names(v, p, 2))).apex,
    "coproduct": lambda ws, v, p: pushout(
        *(from_initial(ws.presheaf(n, p)) for n in _names(v, p, 2))).apex,
    "pullback": lambda ws, v, p: ws.cone("pullback", v, p).apex,
    "pushout": lambda ws, v, p: ws.cone("pushout", v, p).apex,
    "explicit": _explicit_presheaf,
}


def _explicit_map(ws, value, path):
    src, tgt, comps = _fields(value, path, "source", "target", "components")
    m = PresheafMap(ws.presheaf(src, path), ws.presheaf(tgt, path), comps)
    report = validate_map(m)
    if not report:
        raise ScenarioError(f"not natural: {report.failures[0][1]}", path)
    return m


def _projection(ws, value, path):
    of, index = _fields(value, path, "of", "index")
    A, B = (ws.presheaf(n, path) for n in _names(of, f"{path}.of", 2))
    if index not in (1, 2):
        raise ScenarioError("index must be 1 or 2", f"{path}.index")
    return product(A, B)[f"pr{index}"]


def _leg(kind, legs):
    def build(ws, value, path):
        of, leg = _fields(value, path, "of", "leg")
        if leg not in legs:
            raise ScenarioError(f"leg must be one of {list(legs)}", f"{path}.leg")
        return ws.cone(kind, of, f"{path}.of")[leg]
    return build


def _cogap(ws, value, path):
    of, legs = _fields(value, path, "pushout", "legs")
    a, b = (ws.map(n, path) for n in _names(legs, f"{path}.legs", 2))
    return ws.cone("pushout", of, f"{path}.pushout").cogap(a, b)


def _gap(ws, value, path):
    of, legs = _fields(value, path, "pullback", "legs")
    a, b = (ws.map(n, path) for n in _names(legs, f"{path}.legs", 2))
    return ws.cone("pullback", of, f"{path}.pullback").gap(a, b)


def _point(ws, value, path):
    target, vertex, ob = _fields(value, path, "target", "vertex", optional=("object",))
    return global_element(ws.presheaf(target, path), int(vertex), ob)


def _constant(ws, value, path):
    source, point = _fields(value, path, "source", "point")
    return constant_map(ws.presheaf(source, path), ws.map(point, path))


def _element(ws, value, path):
    target, ob, index = _fields(value, path, "target", "object", "index")
    X = ws.presheaf(target, path)
    ob = _ob(ws, ob, f"{path}.object")
    if not 0 <= int(index) < X.sizes[ob]:
        raise ScenarioError("element index out of range", f"{path}.index")
    return yoneda_element(X, ob, int(index))


def _subobject(ws, value, path):
    of, keep = _fields(value, path, "of", "keep")
    return subpresheaf(ws.presheaf(of, path), keep)


MAP_KINDS = {
    "explicit": _explicit_map,
    "identity": lambda ws, v, p: identity(ws.presheaf(v, p)),
    "compose": lambda ws, v, p: compose_all(*(ws.map(n, p) for n in _names(v, p))),
    "projection": _projection,
    "pair": lambda ws, v, p: pair(*(ws.map(n, p) for n in _names(v, p, 2))),
    "times": lambda ws, v, p: times(*(ws.map(n, p) for n in _names(v, p, 2))),
    "boundary_inclusion": lambda ws, v, p: boundary(ws.base, _ob(ws, v, p)),
    "from_initial": lambda ws, v, p: from_initial(ws.presheaf(v, p)),
    "to_terminal": lambda ws, v, p: to_terminal(ws.presheaf(v, p)),
    "point": _point,
    "constant": _constant,
    "element": _element,
    "subobject": _subobject,
    "pullback_leg": _leg("pullback", ("p1", "p2")),
    "pushout_leg": _leg("pushout", ("i1", "i2")),
    "gap": _gap,
    "cogap": _cogap,
}


# ---------------------------------------------------------------------------
# tasks


@dataclass
class Outcome:
    report: Report
    summary: dict = field(default_factory=dict)
    certificate: dict = None


def _param(task, key, default=...):
    if key in task:
        return task[key]
    if default is ...:
        raise ScenarioError("missing task parameter", f"task.{key}")
    return default


def _levels(P):
    return dict(P.sizes)


def _task_validate(ws, task, options):
    return Outcome(ws.resolve_all())


def _task_lift(ws, task, options):
    u, p, g, h = (ws.map(_param(task, k), f"task.{k}") for k in "upgh")
    expect = _param(task, "expect", "exists")
    if expect not in ("exists", "absent"):
        raise ScenarioError("expect must be 'exists' or 'absent'", "task.expect")
    problem = LiftingProblem(u, p, g, h)
    L = solve_lift(problem)
    report = Report(subject=f"lifting problem in {ws.scenario.name}")
    builder = certificates.CertificateBuilder("lift", ws.base)
    for name in "upgh":
        builder.map(name, {"u": u, "p": p, "g": g, "h": h}[name])
    if L is None:
        report.record("lift is absent as expected" if expect == "absent" else "lift exists",
                      expect == "absent")
        builder.claim("no_lift", "no diagonal filler", square=["u", "p", "g", "h"])
        return Outcome(report, {"lift": None}, builder.document())
    report.record("lift exists" if expect == "exists" else "lift is absent as expected",
                  expect == "exists")
    report.record("L o u = g", compose(L, u) == g)
    report.record("p o L = h", compose(p, L) == h)
    builder.map("L", L)
    builder.equation("upper triangle", ["L", "u"], ["g"])
    builder.equation("lower triangle", ["p", "L"], ["h"])
    return Outcome(report, {"lift": L.to_dict()}, builder.document())


def _expect_levels(report, expected, actual, label):
    for ob, n in expected.items():
        report.record(f"{label} has {n} elements at {ob}", actual.get(ob) == n,
                      f"found {actual.get(ob)}")


def _task_gtc(ws, task, options):
    c = ws.map(_param(task, "c"), "task.c")
    i = ws.map(_param(task, "i"), "task.i")
    spec = build_gtc(ws.ctx, c, i)
    report = Report(subject=f"gtc in {ws.scenario.name}")
    report.extend(spec.transcript)
    _expect_levels(report, _param(task, "expect_levels", {}), _levels(spec.D), "D")
    summary = {"D levels": _levels(spec.D), "Z x I levels": _levels(spec.ZxI)}
    return Outcome(report, summary, certificates.gtc_document(spec))


def sample_problems(left, fibrations, count, rng, attempts=20):
    """Seeded commuting squares with left leg ``left``, cycling through ``fibrations``."""
    problems = []
    for k in range(count * attempts):
        if len(problems) >= count:
            break
        q = fibrations[k % len(fibrations)]
        h = random_map(left.target, q.target, rng)
        g = h and random_map(left.source, q.source, rng, over=(compose(h, left), q))
        if g is not None:
            problems.append(LiftingProblem(left, q, g, h))
    return problems


def _task_prop7(ws, task, options):
    c = ws.map(_param(task, "c"), "task.c")
    i = ws.map(_param(task, "i"), "task.i")
    p = ws.map(_param(task, "p"), "task.p")
    fib_names = _param(task, "fibrations", [_param(task, "p")])
    fibrations = [ws.map(n, "task.fibrations") for n in _names(fib_names, "task.fibrations")]
    count = int(_param(task, "problems", 20))
    gtc = build_gtc(ws.ctx, c, i)
    cert = pullback_gtc_retract(gtc, FibrationWitness(p, name=_param(task, "p")))
    cube = cert.cube
    report = Report(subject=f"pullback of a gtc along a fibration: {ws.scenario.name}")
    report.extend(cert.cube.transcript, prefix="cube: ")
    report.extend(cert.transcript, prefix="certificate: ")
    report.record("v is the gtc of b", cert.v.c == cube.b)
    report.record("v uses i o z", cert.v.i == compose(gtc.i, cube.z))
    report.record("X_D levels match the pullback of u", _levels(cube.X_D)
                  == _levels(cube.pullback_u.apex))
    doc = certificates.retract_certificate_document(cert)
    recheck = certificates.reverify(certificates.parse(certificates.emit(doc)))
    report.record("independent re-verification", recheck.ok,
                  f"{len(recheck.checks)} checks"
                  + ("" if recheck.ok else f", failed: {recheck.failures[0][0]}"))

    rng = random.Random(options.get("seed", 0))
    problems = sample_problems(cert.pstar_u, fibrations, count, rng)
    agree = via = 0
    for prob in problems:
        direct = bool(all_lifts(prob))
        try:
            L = lift_via_retract(prob, cert.v.u, cert.retract, solve_lift)
            routed = prob.is_lift(L)
        except LiftFailure:
            routed = False
        via += routed
        agree += routed == direct
    report.record(f"{len(problems)} seeded problems drawn", len(problems) >= min(count, 1))
    report.record("retract route agrees with direct search", agree == len(problems),
                  f"{agree}/{len(problems)} agree, {via} solved")
    summary = {
        "X levels": _levels(cube.X),
        "X_D levels": _levels(cube.X_D),
        "v domain levels": _levels(cert.v.D),
        "H": cert.H.to_dict(),
        "certificate claims": len(doc["claims"]),
        "seeded problems": len(problems),
    }
    return Outcome(report, summary, doc)


def _test_objects(ws, task, pf):
    """``(label, A, alpha)`` for representables and the declared test objects."""
    Yp = pf.p.target
    limit = int(_param(task, "max_elements", 200))
    out = []
    if _param(task, "representables", True):
        for ob in ws.base.objects:
            for b in range(Yp.sizes[ob]):
                out.append((f"y{ob} at {b}", yoneda(ws.base, ob), yoneda_element(Yp, ob, b)))
    for name in _names(_param(task, "test_objects", []), "task.test_objects"):
        A = ws.presheaf(name, "task.test_objects")
        if A.total_size > limit:
            raise ScenarioError(f"test object {name} exceeds {limit} elements",
                                "task.test_objects")
        for k, alpha in enumerate(enumerate_maps(A, Yp)):
            out.append((f"{name} via map {k}", A, alpha))
    return out


def _gtc_family(ws, task, right):
    family = _param(task, "family", {})
    limit = family.get("limit")
    problems = []
    for name in _names(family.get("cofibrations", []), "task.family.cofibrations"):
        c = ws.map(name, "task.family.cofibrations")
        for i in enumerate_maps(c.target, ws.ctx.interval):
            spec = build_gtc(ws.ctx, c, i)
            problems.extend(gtc_problems(spec, right, limit=limit))
    return problems


def _frobenius_run(witness, problems):
    """Per problem: (witness lifted, direct search lifted)."""
    rows = []
    for prob in problems:
        try:
            L = witness.try_lift(prob)
        except LiftFailure:
            L = None
        rows.append((L is not None, solve_lift(prob) is not None))
    return rows


def _task_cor9(ws, task, options):
    f = ws.map(_param(task, "f"), "task.f")
    p = ws.map(_param(task, "p"), "task.p")
    pf = pushforward(f, p)
    report = Report(subject=f"pushforward of a fibration: {ws.scenario.name}")
    report.record("X' is a presheaf", validate_presheaf(pf.Xp))
    report.record("p_* f is natural", validate_map(pf.pf))
    _expect_levels(report, _param(task, "expect_levels", {}), _levels(pf.Xp), "X'")
    objects = _test_objects(ws, task, pf)
    for label, A, alpha in objects:
        adj = adjunction_report(pf, A, alpha)
        report.record(f"adjunction for {label}", adj.ok,
                      "" if adj.ok else adj.failures[0][0])
    nat_ok = True
    for tau, d, c in ws.base.morphisms:
        for b in range(p.target.sizes[c]):
            alpha = yoneda_element(p.target, c, b)
            nat_ok = nat_ok and naturality_report(pf, yoneda_morphism(ws.base, tau), alpha).ok
    report.record("transposition is natural along base morphisms", nat_ok)

    witness = frobenius_witness(FibrationWitness(f, name="f"), FibrationWitness(p, name="p"), pf)
    rows = _frobenius_run(witness, _gtc_family(ws, task, pf.pf))
    solved = sum(w for w, _ in rows)
    direct = sum(d for _, d in rows)
    report.record("curated gtc family is nonempty", bool(rows), f"{len(rows)} problems")
    report.record("witness solves every problem direct search solves",
                  all(w or not d for w, d in rows), f"{solved}/{direct}")
    report.record("witness lifts only solvable problems", all(d or not w for w, d in rows))
    summary = {"X' levels": _levels(pf.Xp), "test objects": len(objects),
               "family size": len(rows), "witness solved": solved}

    neg = _param(task, "negative", None)
    if neg is not None:
        f_bad = ws.map(_param(neg, "f"), "task.negative.f")
        p_bad = ws.map(neg.get("p", _param(task, "p")), "task.negative.p")
        pf_bad = pushforward(f_bad, p_bad)
        w_bad = frobenius_witness(FibrationWitness(f_bad, name="f'"),
                                  FibrationWitness(p_bad, name="p'"), pf_bad)
        rows = _frobenius_run(w_bad, _gtc_family(ws, task, pf_bad.pf))
        unsolvable = sum(not d for _, d in rows)
        report.record("negative control has unsolvable problems", unsolvable > 0,
                      f"{unsolvable} of {len(rows)}")
        report.record("no false positives on the negative control",
                      all(d or not w for w, d in rows))
        summary["negative control"] = {"family size": len(rows), "unsolvable": unsolvable}
    return Outcome(report, summary)


def _task_counterexample(ws, task, options):
    report, details = left_fibration_counterexample()
    summary = {
        "pullback levels": _levels(details["pullback"].apex),
        "biased family size": details["biased family size"],
        "statement": "the pullback of vertex 0 along vertex 1 has empty domain",
    }
    return Outcome(report, summary, certificates.counterexample_document(details))


TASKS = {
    "validate": _task_validate,
    "lift": _task_lift,
    "gtc": _task_gtc,
    "prop7": _task_prop7,
    "cor9": _task_cor9,
    "counterexample": _task_counterexample,
}


# ---------------------------------------------------------------------------
# running


def run_scenario(source, seed=0, budget=None):
    """Run a scenario (a :class:`Scenario`, a path or a bundled name).

    Returns ``(document, exit_code)``; the document is the JSON report.
    """
    options = {"seed": seed, "budget": budget}
    name, kind = getattr(source, "name", str(source)), None
    try:
        scenario = source if isinstance(source, Scenario) else load(source)
        name, kind = scenario.name, scenario.task["kind"]
        if budget is None:
            outcome = _execute(scenario, options)
        else:
            with budget_limit(budget):
                outcome = _execute(scenario, options)
        code = EXIT_OK if outcome.report.ok else EXIT_FAILED
        status = "pass" if code == EXIT_OK else "fail"
        error = None
    except SizeError as exc:
        outcome, code, status, error = None, EXIT_BUDGET, "budget exceeded", str(exc)
    except (ContractError, ScenarioError) as exc:
        outcome, code, status, error = None, EXIT_INVALID, "invalid input", str(exc)
    except (LiftFailure, ConstructionError) as exc:
        outcome, code, status, error = None, EXIT_FAILED, "fail", str(exc)
    document = {
        "schema": REPORT_SCHEMA,
        "scenario": name,
        "task": kind,
        "options": options,
        "status": status,
        "exit_code": code,
        "error": error,
        "report": outcome.report.to_dict() if outcome else None,
        "summary": outcome.summary if outcome else {},
        "certificate": outcome.certificate if outcome else None,
    }
    return document, code


def _execute(scenario, options):
    ws = Workspace(scenario)
    check = ws.resolve_all()
    if not check:
        raise ScenarioError(f"declared object fails validation: {check.failures[0][0]}")
    return TASKS[scenario.task["kind"]](ws, scenario.task, options)


def validate_scenario(source):
    """Parse and resolve a scenario without running its task."""
    try:
        scenario = source if isinstance(source, Scenario) else load(source)
        report = Workspace(scenario).resolve_all()
        return report, (EXIT_OK if report.ok else EXIT_INVALID)
    except SizeError as exc:
        return Report(subject="validation", checks=[("resolve", False, str(exc))]), EXIT_BUDGET
    except WorkbenchError as exc:
        return Report(subject="validation", checks=[("resolve", False, str(exc))]), EXIT_INVALID


def render_json(document):
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def render_text(document):
    lines = [f"scenario: {document['scenario']}",
             f"task: {document['task']}",
             f"status: {document['status']} (exit {document['exit_code']})"]
    if document["error"]:
        lines.append(f"error: {document['error']}")
    if document["report"]:
        rep = document["report"]
        for check in rep["checks"]:
            mark = "ok  " if check["passed"] else "FAIL"
            detail = f" ({check['detail']})" if check["detail"] else ""
            lines.append(f"  [{mark}] {check['name']}{detail}")
    for key, value in sorted(document["summary"].items()):
        if key == "H":
            continue
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    if document["certificate"]:
        cert = document["certificate"]
        lines.append(f"certificate: {cert['kind']}, {len(cert['presheaves'])} presheaves, "
                     f"{len(cert['maps'])} maps, {len(cert['claims'])} claims")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# demos

DEMOS = ("kan-prisms", "frobenius", "left-fibration-counterexample", "lemmas")


def demo(name, seed=0):
    """Run a bundled demonstration; returns a :class:`Report`."""
    from .suites import kan_prism_report, graph_suite, square_suite
    if name == "lemmas":
        report = Report(subject="graph and square suites")
        report.extend(graph_suite(seed=seed), prefix="graph: ")
        report.extend(square_suite(seed=seed), prefix="square: ")
        return report
    if name == "kan-prisms":
        return kan_prism_report()
    if name == "frobenius":
        names = [n for n in bundled_names() if n.startswith(("prop7_", "cor9_"))]
    elif name == "left-fibration-counterexample":
        names = ["left_fibration_counterexample"]
    else:
        raise ScenarioError(f"unknown demo; choose from {list(DEMOS)}", "demo")
    report = Report(subject=f"demo {name}")
    for scenario in names:
        doc, code = run_scenario(scenario, seed=seed)
        report.record(f"scenario {scenario}", code == EXIT_OK, doc["status"])
        for check in (doc["report"] or {}).get("checks", []):
            report.record(f"{scenario}: {check['name']}", check["passed"], check["detail"])
    return report

"""Certificate documents and their independent re-verification.

A certificate document is plain JSON: an explicit base category (composition
table), named presheaves, named maps, and a list of claims.  The checker in
:func:`reverify` works on the raw tables only.  It does not import the
construction code, so a certificate can be trusted without trusting the
code that produced it.

Claim kinds:

``equation``   ``lhs`` and ``rhs`` are chains of map names, composed right
               to left, that must agree componentwise.
``iso``/``mono``  the named map is levelwise bijective / injective.
``pullback``   ``square = [top, left, right, bottom]`` commutes and the gap
               map to the levelwise fibre product is bijective.
``empty``      every level of the named presheaf is empty.
``no_lift``    the square ``[u, p, g, h]`` has no diagonal filler,
               established by brute force.
"""

import itertools
import json

SCHEMA = "presheaf-workbench/certificate/1"


class CertificateBuilder:
    """Collects named presheaves, maps and claims into a document."""

    def __init__(self, kind, base):
        self.kind = kind
        self.base = base
        self._presheaf_names = {}
        self.presheaves = {}
        self.maps = {}
        self.claims = []
        self.summary = {}

    def presheaf(self, P, name=None):
        if P in self._presheaf_names:
            return self._presheaf_names[P]
        name = name or P.name or f"P{len(self.presheaves)}"
        while name in self.presheaves:
            name += "'"
        self._presheaf_names[P] = name
        self.presheaves[name] = P
        return name

    def map(self, name, m, source=None, target=None):
        if name in self.maps and self.maps[name][0] != m:
            raise ValueError(f"map name {name!r} reused for a different map")
        src = self.presheaf(m.source, source)
        tgt = self.presheaf(m.target, target)
        self.maps[name] = (m, src, tgt)
        return name

    def identity(self, P, name=None):
        from .presheaf import identity
        pname = self.presheaf(P)
        return self.map(name or f"id_{pname}", identity(P))

    def equation(self, name, lhs, rhs):
        self.claims.append({"kind": "equation", "name": name, "lhs": list(lhs), "rhs": list(rhs)})

    def claim(self, kind, name, **fields):
        self.claims.append({"kind": kind, "name": name, **fields})

    def document(self):
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "base": explicit_base(self.base),
            "presheaves": {n: P.to_dict() for n, P in self.presheaves.items()},
            "maps": {n: {"source": s, "target": t, "components": m.to_dict()}
                     for n, (m, s, t) in self.maps.items()},
            "claims": self.claims,
            "summary": self.summary,
        }


def explicit_base(cat):
    return {
        "objects": list(cat.objects),
        "morphisms": [list(m) for m in cat.morphisms],
        "identities": dict(cat.identity_of),
        "compose": [[g, f, gf] for (g, f), gf in sorted(cat.compose_table.items())],
    }


def emit(document):
    """Canonical text form: sorted keys, fixed separators, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=1) + "\n"


def parse(text):
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported certificate schema {doc.get('schema')!r}")
    return doc


def load_objects(doc):
    """Rebuild library objects ``(base, presheaves, maps)`` from a document."""
    from .index import IndexCategory
    from .presheaf import Presheaf, PresheafMap
    base = IndexCategory.from_dict(doc["base"])
    presheaves = {n: Presheaf.from_dict(base, d, name=n) for n, d in doc["presheaves"].items()}
    maps = {n: PresheafMap(presheaves[d["source"]], presheaves[d["target"]], d["components"],
                           name=n)
            for n, d in doc["maps"].items()}
    return base, presheaves, maps


# ---------------------------------------------------------------------------
# independent checker: raw dict/list manipulation only


class _Raw:
    def __init__(self, doc):
        b = doc["base"]
        self.objects = list(b["objects"])
        self.morphisms = [tuple(m) for m in b["morphisms"]]
        self.identities = dict(b["identities"])
        self.table = {(g, f): gf for g, f, gf in b["compose"]}
        self.source = {m: s for m, s, _ in self.morphisms}
        self.target = {m: t for m, _, t in self.morphisms}
        self.presheaves = doc["presheaves"]
        self.maps = doc["maps"]

    def size(self, P, ob):
        return int(self.presheaves[P]["levels"].get(ob, 0))

    def act(self, P, m, x):
        if m == self.identities.get(self.source[m]):
            return x
        return self.presheaves[P]["actions"][m][x]

    def comp(self, name, ob):
        return self.maps[name]["components"].get(ob, [])

    def chain(self, names):
        """Components of the composite of a chain (rightmost applied first)."""
        for left, right in zip(names, names[1:]):
            if self.maps[right]["target"] != self.maps[left]["source"]:
                raise ValueError(f"chain {names}: {left} cannot follow {right}")
        src = self.maps[names[-1]]["source"]
        tgt = self.maps[names[0]]["target"]
        comps = {}
        for ob in self.objects:
            values = list(range(self.size(src, ob)))
            for name in reversed(names):
                c = self.comp(name, ob)
                values = [c[v] for v in values]
            comps[ob] = values
        return src, tgt, comps


def reverify(doc):
    """Re-check every presheaf, map and claim of a certificate document.

    Returns a :class:`~presheaf_workbench.report.Report`.
    """
    from .report import Report
    report = Report(subject=f"re-verification of {doc.get('kind', 'certificate')}")
    if doc.get("schema") != SCHEMA:
        report.fail("schema", f"unexpected schema {doc.get('schema')!r}")
        return report
    raw = _Raw(doc)
    for P in raw.presheaves:
        report.record(f"presheaf {P} is functorial", _functorial(raw, P))
    for name in raw.maps:
        report.record(f"map {name} is natural", _natural(raw, name))
    for claim in doc["claims"]:
        kind, name = claim["kind"], claim["name"]
        try:
            ok = _CLAIMS[kind](raw, claim)
        except (KeyError, IndexError, ValueError) as exc:
            report.fail(f"{kind}: {name}", f"malformed claim: {exc}")
            continue
        report.record(f"{kind}: {name}", ok)
    return report


def _functorial(raw, P):
    for ob in raw.objects:
        n = raw.size(P, ob)
        for m, d, c in raw.morphisms:
            if c == ob:
                if any(not 0 <= raw.act(P, m, x) < raw.size(P, d) for x in range(n)):
                    return False
    for (g, f), gf in raw.table.items():
        c = raw.target[g]
        for x in range(raw.size(P, c)):
            if raw.act(P, gf, x) != raw.act(P, f, raw.act(P, g, x)):
                return False
    return True


def _natural(raw, name):
    spec = raw.maps[name]
    X, Y = spec["source"], spec["target"]
    for ob in raw.objects:
        comp = raw.comp(name, ob)
        if len(comp) != raw.size(X, ob) or any(not 0 <= v < raw.size(Y, ob) for v in comp):
            return False
    for m, d, c in raw.morphisms:
        cd, cc = raw.comp(name, d), raw.comp(name, c)
        for x in range(raw.size(X, c)):
            if cd[raw.act(X, m, x)] != raw.act(Y, m, cc[x]):
                return False
    return True


def _equation(raw, claim):
    s1, t1, lhs = raw.chain(claim["lhs"])
    s2, t2, rhs = raw.chain(claim["rhs"])
    return s1 == s2 and t1 == t2 and lhs == rhs


def _iso(raw, claim):
    spec = raw.maps[claim["map"]]
    return all(sorted(raw.comp(claim["map"], ob)) == list(range(raw.size(spec["target"], ob)))
               for ob in raw.objects)


def _mono(raw, claim):
    return all(len(set(v)) == len(v) for v in (raw.comp(claim["map"], ob) for ob in raw.objects))


def _pullback(raw, claim):
    top, left, right, bottom = claim["square"]
    if not _equation(raw, {"lhs": [right, top], "rhs": [bottom, left]}):
        return False
    A = raw.maps[top]["source"]
    for ob in raw.objects:
        r, b = raw.comp(right, ob), raw.comp(bottom, ob)
        fibre = {(x, y) for x in range(len(r)) for y in range(len(b)) if r[x] == b[y]}
        gap = [(raw.comp(top, ob)[a], raw.comp(left, ob)[a]) for a in range(raw.size(A, ob))]
        if len(set(gap)) != len(gap) or set(gap) != fibre:
            return False
    return True


def _empty(raw, claim):
    return all(raw.size(claim["presheaf"], ob) == 0 for ob in raw.objects)


def _no_lift(raw, claim):
    u, p, g, h = claim["square"]
    B = raw.maps[u]["target"]
    X = raw.maps[p]["source"]
    candidates = []
    for ob in raw.objects:
        for b in range(raw.size(B, ob)):
            forced = [raw.comp(g, ob)[a] for a, bb in enumerate(raw.comp(u, ob)) if bb == b]
            opts = [x for x in range(raw.size(X, ob))
                    if raw.comp(p, ob)[x] == raw.comp(h, ob)[b] and all(x == y for y in forced)]
            candidates.append(((ob, b), opts))
    if any(not opts for _, opts in candidates):
        return True
    keys = [k for k, _ in candidates]
    for values in itertools.product(*(opts for _, opts in candidates)):
        assign = dict(zip(keys, values))
        if all(assign[d, raw.act(B, m, b)] == raw.act(X, m, assign[c, b])
               for m, d, c in raw.morphisms for b in range(raw.size(B, c))):
            return False
    return True


_CLAIMS = {
    "equation": _equation,
    "iso": _iso,
    "mono": _mono,
    "pullback": _pullback,
    "empty": _empty,
    "no_lift": _no_lift,
}


# ---------------------------------------------------------------------------
# documents for the main constructions


def retract_certificate_document(cert):
    """Serialize a :class:`~presheaf_workbench.frobenius.RetractCertificate`."""
    from .limits import product, times
    from .presheaf import compose, identity
    cube, gtc, v = cert.cube, cert.cube.gtc, cert.v
    I = gtc.ctx.interval
    b = CertificateBuilder("prop7-retract", gtc.ctx.base)
    for P, n in [(I, "I"), (gtc.C, "C"), (gtc.Z, "Z"), (gtc.CxI, "CxI"), (gtc.ZxI, "ZxI"),
                 (gtc.D, "D"), (cube.X, "X"), (cube.X_C, "X_C"), (cube.X_CxI, "X_CxI"),
                 (cube.X_Z, "X_Z"), (cube.X_D, "X_D"), (cube.pullback_u.apex, "X_D_pb"),
                 (product(cube.X, I).apex, "XxI"), (product(cube.X_CxI, I).apex, "X_CxIxI"),
                 (v.D, "E")]:
        b.presheaf(P, n)
    XI = product(cube.X, I)
    a, r1 = cert.dagger1
    s2, r2 = cert.dagger2
    s_C, r_C = cert.corner
    sq, vsq = gtc.square, v.square
    named = {
        "c": gtc.c, "i": gtc.i, "<1,ic>": sq.top, "<1,i>": sq.bottom, "cx1": sq.right,
        "u": gtc.u, "D.i1": gtc.pushout["i1"], "D.i2": gtc.pushout["i2"],
        "p": cube.p, "z": cube.z, "t": cube.t,
        "q_C": cube.corner_C["p1"], "q_CxI": cube.corner_CxI["p1"], "q_Z": cube.corner_Z["p1"],
        "a": a, "b": cube.b, "e_Z": cube.e_Z, "e_CxI": cube.e_CxI,
        "X_D.i1": cube.top_pushout["i1"], "X_D.i2": cube.top_pushout["i2"],
        "p*u": cube.pstar_u, "p*u_pb": cube.pullback_u["p2"], "X_D_pb.to_D": cube.pullback_u["p1"],
        "identification": cube.identification,
        "H": cert.H, "<1,t>": cert.retract.s_cod, "<1,iz>": vsq.bottom, "<1,izb>": vsq.top,
        "bx1": vsq.right, "zx1": times(cube.z, identity(I)),
        "pr1_XxI": XI["pr1"], "pr2_XxI": XI["pr2"],
        "r1": r1, "s2": s2, "r2": r2, "s_C": s_C, "r_C": r_C,
        "v": v.u, "E.i1": v.pushout["i1"], "E.i2": v.pushout["i2"],
        "s_dom": cert.retract.s_dom, "r_dom": cert.retract.r_dom,
        "s_dom_pb": cert.retract_pullback.s_dom, "r_dom_pb": cert.retract_pullback.r_dom,
    }
    for n, m in named.items():
        b.map(n, m)
    for P, n in [(cube.X, "X"), (cube.X_Z, "X_Z"), (cube.X_C, "X_C"), (cube.X_CxI, "X_CxI"),
                 (cube.X_D, "X_D"), (cube.pullback_u.apex, "X_D_pb")]:
        b.identity(P, f"id_{n}")
    b.map("iz", compose(gtc.i, cube.z))
    eq = b.equation
    eq("gtc: u o D.i1 = <1,i>", ["u", "D.i1"], ["<1,i>"])
    eq("gtc: u o D.i2 = cx1", ["u", "D.i2"], ["cx1"])
    b.claim("pullback", "gtc square is a pullback", square=["<1,ic>", "c", "cx1", "<1,i>"])
    b.claim("mono", "cx1 is a cofibration", map="cx1")
    faces = {
        "top": ["e_CxI", "e_Z", "b", "a"],
        "back": ["e_CxI", "q_C", "q_CxI", "<1,ic>"],
        "left": ["e_Z", "q_C", "q_Z", "c"],
        "right": ["b", "q_CxI", "p", "cx1"],
        "front": ["a", "q_Z", "p", "<1,i>"],
    }
    for face, square in faces.items():
        b.claim("pullback", f"cube {face} face", square=square)
    eq("p*u o X_D.i1 = a", ["p*u", "X_D.i1"], ["a"])
    eq("p*u o X_D.i2 = b", ["p*u", "X_D.i2"], ["b"])
    eq("identification over X", ["p*u_pb", "identification"], ["p*u"])
    b.claim("iso", "top pushout is the pullback of u", map="identification")
    b.claim("pullback", "pullback of u along p", square=["X_D_pb.to_D", "p*u_pb", "u", "p"])
    b.claim("mono", "b is a cofibration", map="b")
    eq("dagger0: H o <1,t> = id", ["H", "<1,t>"], ["id_X"])
    eq("z o H = z o pr1", ["z", "H"], ["z", "pr1_XxI"])
    eq("t o H = pr2", ["t", "H"], ["pr2_XxI"])
    eq("p o H = z x 1", ["p", "H"], ["zx1"])
    eq("a equalizes iz and t", ["iz", "a"], ["t", "a"])
    eq("dagger1 left square", ["<1,iz>", "a"], ["<1,t>", "a"])
    eq("dagger1 right square", ["a", "r1"], ["H", "<1,iz>"])
    eq("dagger1 composite", ["r1", "a"], ["id_X_Z"])
    eq("dagger2 left square", ["bx1", "s2"], ["<1,t>", "b"])
    eq("dagger2 right square", ["b", "r2"], ["H", "bx1"])
    eq("dagger2 composite", ["r2", "s2"], ["id_X_CxI"])
    eq("corner section top", ["<1,izb>", "s_C"], ["s2", "e_CxI"])
    eq("corner section left", ["b", "s_C"], ["a", "e_Z"])
    eq("corner retraction top", ["e_CxI", "r_C"], ["r2", "<1,izb>"])
    eq("corner retraction left", ["e_Z", "r_C"], ["r1", "b"])
    eq("corner composite", ["r_C", "s_C"], ["id_X_C"])
    b.claim("pullback", "square of v is a pullback", square=["<1,izb>", "b", "bx1", "<1,iz>"])
    eq("v o E.i1 = <1,iz>", ["v", "E.i1"], ["<1,iz>"])
    eq("v o E.i2 = bx1", ["v", "E.i2"], ["bx1"])
    eq("s_dom on X_Z", ["s_dom", "X_D.i1"], ["E.i1", "a"])
    eq("s_dom on X_CxI", ["s_dom", "X_D.i2"], ["E.i2", "s2"])
    eq("r_dom on X", ["r_dom", "E.i1"], ["X_D.i1", "r1"])
    eq("r_dom on X_CxI x I", ["r_dom", "E.i2"], ["X_D.i2", "r2"])
    eq("retract: r_dom o s_dom = id", ["r_dom", "s_dom"], ["id_X_D"])
    eq("retract: H o <1,t> = id", ["H", "<1,t>"], ["id_X"])
    eq("retract: v o s_dom = <1,t> o p*u", ["v", "s_dom"], ["<1,t>", "p*u"])
    eq("retract: p*u o r_dom = H o v", ["p*u", "r_dom"], ["H", "v"])
    eq("pullback retract: r o s = id", ["r_dom_pb", "s_dom_pb"], ["id_X_D_pb"])
    eq("pullback retract: v o s = <1,t> o p*u", ["v", "s_dom_pb"], ["<1,t>", "p*u_pb"])
    eq("pullback retract: p*u o r = H o v", ["p*u_pb", "r_dom_pb"], ["H", "v"])
    b.summary = {
        "X levels": dict(cube.X.sizes),
        "X_D levels": dict(cube.X_D.sizes),
        "E levels": dict(v.D.sizes),
        "claims": len(b.claims),
    }
    return b.document()


def counterexample_document(details):
    """Serialize the pullback and the failed lifting square of the counterexample."""
    pb = details["pullback"]
    problem = details["llp problem"]
    v0, v1 = pb.diagram
    b = CertificateBuilder("left-fibration-counterexample", v0.base)
    b.presheaf(v0.target, "I")
    b.presheaf(v0.source, "1")
    b.presheaf(problem.p.source, "0")
    b.map("v0", v0)
    b.map("v1", v1)
    b.map("q*p", problem.u)
    b.map("0->1", problem.p)
    b.map("top", problem.g)
    b.map("bottom", problem.h)
    b.map("pb.p1", pb["p1"])
    b.claim("pullback", "pullback of v0 along v1", square=["pb.p1", "q*p", "v0", "v1"])
    b.claim("empty", "pullback has empty domain", presheaf=b.presheaf(pb.apex))
    b.claim("no_lift", "q*p has no lift against 0 -> 1", square=["q*p", "0->1", "top", "bottom"])
    return b.document()


def gtc_document(spec):
    """A gtc as its ``(c, i)`` data plus the recorded ``D``, ``u`` and transcript."""
    b = CertificateBuilder("gtc", spec.ctx.base)
    b.presheaf(spec.ctx.interval, "I")
    b.presheaf(spec.C, "C")
    b.presheaf(spec.Z, "Z")
    b.presheaf(spec.D, "D")
    b.presheaf(spec.ZxI, "ZxI")
    b.map("c", spec.c)
    b.map("i", spec.i)
    b.map("u", spec.u)
    b.claim("mono", "u is mono", map="u")
    b.summary = {"transcript": spec.transcript.to_dict()}
    return b.document()


def load_gtc(doc, ctx=None):
    """Rebuild a gtc from its document; ``D`` and ``u`` are recomputed and compared."""
    from .errors import ConstructionError
    from .gtc import build_gtc
    from .presheaf import PresheafContext
    base, presheaves, maps = load_objects(doc)
    ctx = ctx or PresheafContext(base, presheaves["I"])
    spec = build_gtc(ctx, maps["c"], maps["i"])
    if spec.D != presheaves["D"] or spec.u != maps["u"]:
        raise ConstructionError("recomputed gtc differs from the recorded one", check="reload")
    return spec

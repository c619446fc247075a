"""Quivers, paths, linear combinations of paths, and algebra presentations.

Composition convention: a path is stored source-to-target as a tuple of arrow
ids, and rendered right-to-left (function order), so the path (a, c) with
a: 1->2 and c: 2->3 prints as "ca" and runs 1->3.
"""

from dataclasses import dataclass, field
from fractions import Fraction


class QuiverError(ValueError):
    """Malformed quiver, path, or presentation data."""


@dataclass(frozen=True)
class Arrow:
    id: int
    name: str
    source: int
    target: int


class Quiver:
    """Finite directed multigraph with integer vertex ids and named arrows."""

    def __init__(self, vertices, arrows, labels=None):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        self.labels = dict(labels or {})
        vset = set(self.vertices)
        arrs = []
        for k, a in enumerate(arrows):
            if isinstance(a, Arrow):
                if a.id != k:
                    a = Arrow(k, a.name, a.source, a.target)
            else:
                name, src, tgt = a
                a = Arrow(k, name, src, tgt)
            if a.source not in vset or a.target not in vset:
                raise QuiverError("arrow %s has endpoint outside the vertex set" % a.name)
            arrs.append(a)
        if len({a.name for a in arrs}) != len(arrs):
            raise QuiverError("duplicate arrow names")
        self.arrows = tuple(arrs)
        self._by_name = {a.name: a for a in self.arrows}
        self._out = {v: tuple(a for a in self.arrows if a.source == v) for v in self.vertices}
        self._in = {v: tuple(a for a in self.arrows if a.target == v) for v in self.vertices}

    def arrow(self, key):
        if isinstance(key, int):
            return self.arrows[key]
        return self._by_name[key]

    def arrows_from(self, v):
        return self._out[v]

    def arrows_to(self, v):
        return self._in[v]

    def has_loops(self):
        return any(a.source == a.target for a in self.arrows)

    def is_acyclic(self):
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self._out[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        return seen == len(self.vertices)

    def full_subquiver(self, keep):
        keep = set(keep)
        vertices = [v for v in self.vertices if v in keep]
        arrows = [(a.name, a.source, a.target) for a in self.arrows
                  if a.source in keep and a.target in keep]
        labels = {v: s for v, s in self.labels.items() if v in keep}
        return Quiver(vertices, arrows, labels)

    def opposite(self):
        return Quiver(self.vertices,
                      [(a.name, a.target, a.source) for a in self.arrows],
                      self.labels)

    def renumbered(self, perm):
        """Apply a vertex renumbering {old: new}."""
        vertices = sorted(perm[v] for v in self.vertices)
        arrows = [(a.name, perm[a.source], perm[a.target]) for a in self.arrows]
        labels = {perm[v]: s for v, s in self.labels.items()}
        return Quiver(vertices, arrows, labels)

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows and self.labels == other.labels)

    def __repr__(self):
        return "Quiver(%d vertices, %d arrows)" % (len(self.vertices), len(self.arrows))


def parse_quiver(text):
    """Parse the line-based quiver format.

    One declaration per line: ``vertex <id> [label]`` or
    ``arrow <name> <src> <tgt>``; ``#`` starts a comment.
    """
    vertices, labels, arrows = [], {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) not in (2, 3):
                raise QuiverError("line %d: vertex takes an id and optional label" % lineno)
            try:
                v = int(parts[1])
            except ValueError:
                raise QuiverError("line %d: vertex id %r is not an integer" % (lineno, parts[1]))
            vertices.append(v)
            if len(parts) == 3:
                labels[v] = parts[2]
        elif kind == "arrow":
            if len(parts) != 4:
                raise QuiverError("line %d: arrow takes a name, source and target" % lineno)
            try:
                src, tgt = int(parts[2]), int(parts[3])
            except ValueError:
                raise QuiverError("line %d: arrow endpoints must be integers" % lineno)
            arrows.append((parts[1], src, tgt))
        else:
            raise QuiverError("line %d: unknown declaration %r" % (lineno, kind))
    try:
        return Quiver(vertices, arrows, labels)
    except QuiverError as exc:
        raise QuiverError("invalid quiver: %s" % exc)


def quiver_to_text(q):
    lines = []
    for v in q.vertices:
        if v in q.labels:
            lines.append("vertex %d %s" % (v, q.labels[v]))
        else:
            lines.append("vertex %d" % v)
    for a in q.arrows:
        lines.append("arrow %s %d %d" % (a.name, a.source, a.target))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Path:
    """A composable arrow sequence; arrows=() is the trivial path at a vertex."""

    source: int
    target: int
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    def then(self, other):
        if self.target != other.source:
            raise QuiverError("paths not composable")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def render(self, quiver):
        if not self.arrows:
            return "e_%d" % self.source
        return "".join(quiver.arrows[i].name for i in reversed(self.arrows))


def trivial_path(v):
    return Path(v, v, ())


def arrow_path(quiver, key):
    a = quiver.arrow(key)
    return Path(a.source, a.target, (a.id,))


def path_from_names(quiver, names, source=None):
    """Build a path from arrow names given in composition (storage) order."""
    if not names:
        if source is None:
            raise QuiverError("trivial path needs a vertex")
        return trivial_path(source)
    p = arrow_path(quiver, names[0])
    for nm in names[1:]:
        p = p.then(arrow_path(quiver, nm))
    return p


class PathVector:
    """A parallel linear combination of paths with exact coefficients."""

    def __init__(self, quiver, terms):
        self.quiver = quiver
        combined = {}
        for coeff, path in terms:
            coeff = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            _check_path(quiver, path)
            combined[path] = combined.get(path, Fraction(0)) + coeff
        combined = {p: c for p, c in combined.items() if c != 0}
        paths = list(combined)
        if paths:
            src = {p.source for p in paths}
            tgt = {p.target for p in paths}
            if len(src) != 1 or len(tgt) != 1:
                raise QuiverError("terms of a path vector must be parallel")
        self.terms = tuple(sorted(combined.items(), key=lambda item: _path_key(item[0])))

    @property
    def is_zero(self):
        return not self.terms

    @property
    def source(self):
        return self.terms[0][1].source if self.terms else None

    @property
    def target(self):
        return self.terms[0][1].target if self.terms else None

    def scaled(self, c):
        return PathVector(self.quiver, [(c * co, p) for p, co in self.terms])

    def __add__(self, other):
        return PathVector(self.quiver,
                          [(co, p) for p, co in self.terms] + [(co, p) for p, co in other.terms])

    def render(self):
        if not self.terms:
            return "0"
        bits = []
        for p, c in self.terms:
            word = p.render(self.quiver)
            if c == 1:
                bits.append("+ %s" % word)
            elif c == -1:
                bits.append("- %s" % word)
            else:
                bits.append("%s %s*%s" % ("+" if c > 0 else "-", abs(c), word))
        s = " ".join(bits)
        return s[2:] if s.startswith("+ ") else s

    def __eq__(self, other):
        return isinstance(other, PathVector) and self.terms == other.terms

    def __repr__(self):
        return "PathVector(%s)" % self.render()


def _check_path(quiver, path):
    at = path.source
    for i in path.arrows:
        if i < 0 or i >= len(quiver.arrows):
            raise QuiverError("path uses unknown arrow id %d" % i)
        a = quiver.arrows[i]
        if a.source != at:
            raise QuiverError("path is not composable at arrow %s" % a.name)
        at = a.target
    if at != path.target:
        raise QuiverError("path target %d does not match arrows" % path.target)


def _path_key(p):
    return (len(p.arrows), p.arrows, p.source)


def path_order_key(p):
    """Length, then lexicographic on arrow ids: the fixed monomial order."""
    return (len(p.arrows), p.arrows)


class Presentation:
    """An algebra presentation kQ/I with optional arrow grading.

    Relations are parallel path combinations of length >= 2; when a grading is
    supplied every relation must be homogeneous for it.
    """

    def __init__(self, quiver, relations, arrow_degree=None):
        self.quiver = quiver
        rels = []
        for r in relations:
            if r.is_zero:
                continue
            if any(len(p) < 2 for p, _ in r.terms):
                raise QuiverError(
                    "relation %s has a term of length < 2 (not admissible)" % r.render())
            rels.append(r)
        self.relations = tuple(rels)
        self.arrow_degree = None if arrow_degree is None else dict(arrow_degree)
        if self.arrow_degree is not None:
            for a in quiver.arrows:
                if a.id not in self.arrow_degree:
                    raise QuiverError("arrow %s has no degree" % a.name)
                if self.arrow_degree[a.id] < 0:
                    raise QuiverError("arrow degrees must be nonnegative")
            for r in self.relations:
                self.degree_of(r)

    def path_degree(self, path):
        if self.arrow_degree is None:
            return 0
        return sum(self.arrow_degree[i] for i in path.arrows)

    def degree_of(self, pv):
        """Common degree of a homogeneous path vector; raises when mixed."""
        degs = {self.path_degree(p) for p, _ in pv.terms}
        if len(degs) > 1:
            raise QuiverError("relation %s is not homogeneous" % pv.render())
        return degs.pop() if degs else 0

    def opposite(self):
        opp = self.quiver.opposite()

        def flip(pv):
            terms = []
            for p, c in pv.terms:
                terms.append((c, Path(p.target, p.source, tuple(reversed(p.arrows)))))
            return PathVector(opp, terms)

        deg = None if self.arrow_degree is None else dict(self.arrow_degree)
        return Presentation(opp, [flip(r) for r in self.relations], deg)

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.quiver == other.quiver
                and self.relations == other.relations and self.arrow_degree == other.arrow_degree)

    def __repr__(self):
        return "Presentation(%r, %d relations)" % (self.quiver, len(self.relations))


def path_algebra(quiver):
    return Presentation(quiver, [])


def preprojective_presentation(q):
    """Double the quiver and impose the per-vertex commutator relations.

    For each arrow ``a`` a reverse arrow ``a*`` is added; the relation at a
    vertex v is the v-component of sum(a a* - a* a).
    """
    if q.has_loops():
        raise QuiverError("preprojective presentation needs a loop-free quiver")
    if not q.is_acyclic():
        raise QuiverError("preprojective presentation needs an acyclic quiver")
    arrows = [(a.name, a.source, a.target) for a in q.arrows]
    star_of = {}
    for a in q.arrows:
        star_of[a.id] = len(arrows)
        arrows.append((a.name + "*", a.target, a.source))
    dq = Quiver(q.vertices, arrows, q.labels)
    relations = []
    for v in q.vertices:
        terms = []
        for a in q.arrows:
            star = star_of[a.id]
            if a.source == v:
                # (a, a*) runs v -> target -> v; renders as "a* a"
                terms.append((Fraction(1), Path(v, v, (a.id, star))))
            if a.target == v:
                terms.append((Fraction(-1), Path(v, v, (star, a.id))))
        pv = PathVector(dq, terms)
        if not pv.is_zero:
            relations.append(pv)
    return Presentation(dq, relations)


# --- JSON serialization ---------------------------------------------------

def quiver_to_json(q):
    return {
        "vertices": [{"id": v, **({"label": q.labels[v]} if v in q.labels else {})}
                     for v in q.vertices],
        "arrows": [{"name": a.name, "source": a.source, "target": a.target}
                   for a in q.arrows],
    }


def quiver_from_json(doc):
    vertices = [v["id"] for v in doc["vertices"]]
    labels = {v["id"]: v["label"] for v in doc["vertices"] if "label" in v}
    arrows = [(a["name"], a["source"], a["target"]) for a in doc["arrows"]]
    return Quiver(vertices, arrows, labels)


def _coeff_str(c):
    return "%d/%d" % (c.numerator, c.denominator)


def _coeff_from_str(s):
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def pathvector_to_json(pv):
    return [{"coeff": _coeff_str(c),
             "arrows": [pv.quiver.arrows[i].name for i in p.arrows],
             "source": p.source, "target": p.target}
            for p, c in pv.terms]


def pathvector_from_json(quiver, doc):
    terms = []
    for t in doc:
        p = path_from_names(quiver, t["arrows"], source=t.get("source"))
        terms.append((_coeff_from_str(t["coeff"]), p))
    return PathVector(quiver, terms)


def presentation_to_json(p):
    doc = {
        "quiver": quiver_to_json(p.quiver),
        "relations": [pathvector_to_json(r) for r in p.relations],
    }
    if p.arrow_degree is not None:
        doc["degrees"] = {p.quiver.arrows[i].name: d for i, d in sorted(p.arrow_degree.items())}
    else:
        doc["degrees"] = None
    return doc


def presentation_from_json(doc):
    q = quiver_from_json(doc["quiver"])
    rels = [pathvector_from_json(q, r) for r in doc["relations"]]
    degrees = doc.get("degrees")
    arrow_degree = None
    if degrees is not None:
        arrow_degree = {q.arrow(name).id: d for name, d in degrees.items()}
    return Presentation(q, rels, arrow_degree)

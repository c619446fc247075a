"""Quotient bases of presented algebras, and presentation extraction.

The quotient kQ/I is made concrete through a rewriting system: relations are
completed under the length-then-lexicographic path order (ties broken by arrow
id) until confluent, and the surviving standard words form a basis.  The same
path order drives ``extract_presentation``, which recovers a quiver-with-
relations presentation from any algebra given by multiplication data.
"""

from fractions import Fraction

from .linalg import Mat, solve
from .quivers import Path, PathVector, Presentation, Quiver, QuiverError, trivial_path


class QuotientCapError(RuntimeError):
    """Raised when no zero level is reached below the cap: the quotient is
    possibly infinite-dimensional."""

    def __init__(self, cap):
        super().__init__(
            "no empty standard-word level below length cap %d; "
            "the quotient may be infinite-dimensional" % cap)
        self.cap = cap


def _term_key(path):
    return (len(path.arrows), path.arrows)


class QuotientBasis:
    """Standard words and the reduction table of a finite-dimensional kQ/I."""

    def __init__(self, presentation, rules, words):
        self.presentation = presentation
        self.rules = rules                      # lead tuple -> list[(Path, Fraction)]
        self.words = tuple(words)               # all standard words, sorted
        self.dim = len(self.words)
        self.by_pair = {}
        self.index_in_pair = {}
        for w in self.words:
            key = (w.source, w.target)
            bucket = self.by_pair.setdefault(key, [])
            self.index_in_pair[w] = len(bucket)
            bucket.append(w)
        self._word_set = frozenset((w.source, w.arrows) for w in self.words)
        self._nf_cache = {}

    @property
    def quiver(self):
        return self.presentation.quiver

    def is_standard(self, path):
        return (path.source, path.arrows) in self._word_set

    def standard_words(self, source=None, target=None):
        if source is None and target is None:
            return self.words
        return tuple(w for w in self.words
                     if (source is None or w.source == source)
                     and (target is None or w.target == target))

    def reduce_path(self, path):
        """Normal form of a path as {standard word: coefficient}."""
        key = (path.source, path.arrows)
        hit = self._nf_cache.get(key)
        if hit is None:
            hit = _poly_reduce(self.quiver, self.rules, {path: Fraction(1)})
            self._nf_cache[key] = hit
        return dict(hit)

    def reduce_terms(self, terms):
        out = {}
        for p, c in terms.items():
            if c == 0:
                continue
            for q, d in self.reduce_path(p).items():
                out[q] = out.get(q, Fraction(0)) + c * d
                if out[q] == 0:
                    del out[q]
        return out

    def reduce_pathvector(self, pv):
        return self.reduce_terms({p: c for p, c in pv.terms})

    def multiply(self, w1, w2):
        """Product of two standard words (w1 then w2) as reduced coordinates."""
        if w1.target != w2.source:
            return {}
        return self.reduce_path(w1.then(w2))


def _path_through(quiver, source, arrows):
    if not arrows:
        return trivial_path(source)
    tgt = quiver.arrows[arrows[-1]].target
    return Path(source, tgt, arrows)


def _poly_reduce(quiver, rules, poly):
    """Reduce a {Path: coeff} dict modulo the current rule set."""
    poly = {p: c for p, c in poly.items() if c != 0}
    progress = True
    while progress:
        progress = False
        for path in sorted(poly, key=_term_key, reverse=True):
            coeff = poly.get(path)
            if not coeff:
                continue
            arrows = path.arrows
            hit = None
            n = len(arrows)
            for i in range(n):
                for lead in rules:
                    L = len(lead)
                    if i + L <= n and arrows[i:i + L] == lead:
                        hit = (i, lead)
                        break
                if hit:
                    break
            if hit is None:
                continue
            i, lead = hit
            del poly[path]
            u, v = arrows[:i], arrows[i + len(lead):]
            for rpath, rc in rules[lead]:
                np = _path_through(quiver, path.source, u + rpath.arrows + v)
                poly[np] = poly.get(np, Fraction(0)) + coeff * rc
                if poly[np] == 0:
                    del poly[np]
            progress = True
            break
    return poly


def quotient_basis(presentation, length_cap=64):
    """Complete the relations and enumerate standard words level by level.

    Terminates successfully when some length level carries no standard words
    (closure under subwords then guarantees completeness); raises
    QuotientCapError when the cap is hit first.
    """
    rules = complete_rules(presentation, length_cap)
    words = _enumerate_standard(presentation.quiver, rules, length_cap)
    return QuotientBasis(presentation, rules, words)


def complete_rules(presentation, length_cap=64):
    """Confluent rewriting rules for the relation ideal (no enumeration)."""
    quiver = presentation.quiver
    rules = {}

    def install(poly):
        # poly is a reduced nonzero {Path: coeff}; split off the leading term
        lead_path = max(poly, key=_term_key)
        lc = poly[lead_path]
        rest = [(p, -c / lc) for p, c in poly.items() if p is not lead_path]
        if len(lead_path.arrows) < 2:
            raise QuiverError(
                "completion produced a relation with leading length < 2 "
                "(non-admissible input): %s" % lead_path.render(quiver))
        if len(lead_path.arrows) > length_cap:
            raise QuotientCapError(length_cap)
        rules[lead_path.arrows] = rest
        return lead_path.arrows

    agenda = [dict(( (p, c) for p, c in r.terms )) for r in presentation.relations]
    guard = 0
    while agenda:
        guard += 1
        if guard > 20000:
            raise QuotientCapError(length_cap)
        poly = _poly_reduce(quiver, rules, agenda.pop(0))
        if not poly:
            continue
        new_lead = install(poly)
        L = len(new_lead)
        # retire rules whose lead strictly contains the new lead
        for lead in [l for l in rules if l != new_lead]:
            if any(lead[i:i + L] == new_lead for i in range(len(lead) - L + 1)):
                rest = rules.pop(lead)
                back = {_path_through_lead(quiver, lead): Fraction(1)}
                for rpath, rc in rest:
                    back[rpath] = back.get(rpath, Fraction(0)) - rc
                agenda.append(back)
        # overlap S-polynomials with every current rule (including itself)
        for lead in list(rules):
            for s_poly in _overlaps(quiver, rules, new_lead, lead):
                agenda.append(s_poly)
            if lead != new_lead:
                for s_poly in _overlaps(quiver, rules, lead, new_lead):
                    agenda.append(s_poly)

    words = _enumerate_standard(quiver, rules, length_cap)
    return QuotientBasis(presentation, rules, words)


def _path_through_lead(quiver, lead):
    src = quiver.arrows[lead[0]].source
    return _path_through(quiver, src, lead)


def _overlaps(quiver, rules, lead1, lead2):
    """S-polynomials from proper overlaps suffix(lead1) == prefix(lead2)."""
    out = []
    n1, n2 = len(lead1), len(lead2)
    for k in range(1, min(n1, n2)):
        if lead1[n1 - k:] != lead2[:k]:
            continue
        x = lead1[:n1 - k]          # lead1 = x . y,  lead2 = y . z
        z = lead2[k:]
        src = quiver.arrows[lead1[0]].source
        poly = {}
        for rpath, rc in rules[lead1]:
            np = _path_through(quiver, src, rpath.arrows + z)
            poly[np] = poly.get(np, Fraction(0)) + rc
        for rpath, rc in rules[lead2]:
            np = _path_through(quiver, src, x + rpath.arrows)
            poly[np] = poly.get(np, Fraction(0)) - rc
        poly = {p: c for p, c in poly.items() if c != 0}
        if poly:
            out.append(poly)
    return out


def _enumerate_standard(quiver, rules, length_cap):
    leads = set(rules)
    words = [trivial_path(v) for v in quiver.vertices]
    level = list(words)
    length = 0
    while level:
        length += 1
        if length > length_cap:
            raise QuotientCapError(length_cap)
        nxt = []
        for w in level:
            for a in quiver.arrows_from(w.target):
                arrows = w.arrows + (a.id,)
                if _contains_lead_suffix(arrows, leads):
                    continue
                nxt.append(Path(w.source, a.target, arrows))
        level = nxt
        words.extend(level)
    words.sort(key=lambda p: (len(p.arrows), p.arrows, p.source))
    return words


def _contains_lead_suffix(arrows, leads):
    # the proper prefix is standard, so only suffixes ending at the new arrow
    # can introduce a redex
    n = len(arrows)
    for lead in leads:
        L = len(lead)
        if L <= n and arrows[n - L:] == lead:
            return True
    return False


def cartan_matrix(qb):
    """Entry (i, j) counts standard words from vertex j to vertex i."""
    verts = qb.quiver.vertices
    pos = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    grid = [[0] * n for _ in range(n)]
    for w in qb.words:
        grid[pos[w.target]][pos[w.source]] += 1
    return Mat(n, n, grid)


def homogeneous_component(qb, degree):
    """Standard words of the given degree of a graded presentation."""
    pres = qb.presentation
    if pres.arrow_degree is None:
        raise QuiverError("homogeneous_component requires a graded presentation")
    for r in pres.relations:
        pres.degree_of(r)  # raises, naming the relation, if inhomogeneous
    return tuple(w for w in qb.words if pres.path_degree(w) == degree)


# --- presentation extraction ------------------------------------------------

class ExtractionError(RuntimeError):
    pass


def extract_presentation(quiver, arrow_value, compose, coords, *, max_len=None,
                         min_generators=True, length_cap=64):
    """Present the algebra spanned by composites of the given arrow values.

    ``arrow_value(arrow_id)`` gives the value realizing an arrow,
    ``compose(value, arrow_id)`` extends a composite by one arrow on the
    right (chronological order), and ``coords(value, src, tgt)`` expresses a
    value in a fixed ambient basis of its (src, tgt) slot.

    Returns ``(presentation, standard_paths, values)`` where the standard
    paths together with the trivial paths form a basis of the algebra and the
    relations generate the kernel of the path-algebra surjection.  Relations
    are pruned to a minimal-by-membership generating set when
    ``min_generators`` is set.
    """
    span = {}      # (src, tgt) -> list of coordinate row tuples
    span_paths = {}
    values = {}    # Path -> value
    standard_set = set()
    raw_relations = []

    def dependency(pair, vec):
        basis = span.get(pair, [])
        if not basis:
            return None if any(x != 0 for x in vec) else []
        m = Mat.from_rows(basis).transpose()
        sol = solve(m, Mat.from_rows([list(vec)]).transpose())
        if sol is None:
            return None
        return [sol[i, 0] for i in range(len(basis))]

    level = []
    for a in sorted(quiver.arrows, key=lambda a: a.id):
        p = Path(a.source, a.target, (a.id,))
        val = arrow_value(a.id)
        vec = tuple(coords(val, a.source, a.target))
        dep = dependency((a.source, a.target), vec)
        if dep is not None:
            raise ExtractionError(
                "arrow %s is linearly dependent on earlier arrows; the arrow "
                "set is not a radical-generating basis" % a.name)
        span.setdefault((a.source, a.target), []).append(list(vec))
        span_paths.setdefault((a.source, a.target), []).append(p)
        values[p] = val
        standard_set.add((p.source, p.arrows))
        level.append(p)

    standard = list(level)
    length = 1
    while level:
        length += 1
        if length > length_cap or (max_len is not None and length > max_len):
            raise ExtractionError("extraction exceeded length cap %d" % length_cap)
        candidates = []
        for w in level:
            for a in quiver.arrows_from(w.target):
                arrows = w.arrows + (a.id,)
                if (quiver.arrows[arrows[1]].source, arrows[1:]) not in standard_set:
                    continue
                candidates.append((w, a))
        candidates.sort(key=lambda wa: wa[0].arrows + (wa[1].id,))
        level = []
        for w, a in candidates:
            p = Path(w.source, a.target, w.arrows + (a.id,))
            val = compose(values[w], a.id)
            pair = (p.source, p.target)
            vec = tuple(coords(val, p.source, p.target))
            dep = dependency(pair, vec)
            if dep is None:
                span.setdefault(pair, []).append(list(vec))
                span_paths.setdefault(pair, []).append(p)
                values[p] = val
                standard_set.add((p.source, p.arrows))
                standard.append(p)
                level.append(p)
            else:
                terms = [(Fraction(1), p)]
                for c, q in zip(dep, span_paths.get(pair, [])):
                    if c:
                        terms.append((-c, q))
                raw_relations.append(PathVector(quiver, terms))

    relations = raw_relations
    if min_generators:
        relations = _minimize_relations(quiver, raw_relations, length_cap)
    pres = Presentation(quiver, relations)
    return pres, standard, values


def _minimize_relations(quiver, raw, length_cap):
    raw = sorted(raw, key=lambda r: _term_key(max((p for p, _ in r.terms), key=_term_key)))
    kept = []
    qb = quotient_basis(Presentation(quiver, []), length_cap)
    for r in raw:
        if qb.reduce_pathvector(r):
            kept.append(r)
            qb = quotient_basis(Presentation(quiver, kept), length_cap)
    return kept

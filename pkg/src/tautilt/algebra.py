"""Algebra presentations: quivers, admissible relations, path bases.

A presentation is turned into a concrete finite-dimensional algebra by
enumerating paths in increasing length and row-reducing the two-sided ideal
span {u * r * v} per (source, target) block, under the degree-then-
lexicographic path order.  The admissibility witness is the first length L
at which every path of that length reduces to zero; all longer paths are
then zero as well.

Paths compose left to right: p * q means "first p, then q".  A module is a
representation with one matrix per arrow mapping the source vertex space to
the target vertex space, and p * q acts as (action of q) after (action of p);
this realizes right modules and is the single fixed convention used by every
Hom and tau computation downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidRelation, NotAdmissible, ParseError

PATH_BUDGET = 200_000
DEFAULT_MAX_BOUND = 64


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int  # 1-based vertex index
    target: int


class Quiver:
    """Finite quiver with ordered vertex labels (indices 1..n) and named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple(arrows)
        if len(self.vertices) < 1:
            raise ParseError("quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ParseError("arrow names must be unique")
        n = len(self.vertices)
        for a in self.arrows:
            if not (1 <= a.source <= n and 1 <= a.target <= n):
                raise ParseError(f"arrow {a.name} has endpoints outside 1..{n}")
        self.n = n
        self.arrow_by_name = {a.name: i for i, a in enumerate(self.arrows)}
        # arrows sorted by name fix the lexicographic component of the path order
        self._lexrank = {i: r for r, i in enumerate(
            sorted(range(len(self.arrows)), key=lambda i: self.arrows[i].name))}

    def vertex_index(self, label) -> int:
        try:
            return self.vertices.index(str(label)) + 1
        except ValueError:
            raise ParseError(f"unknown vertex {label!r}") from None

    def arrows_from(self, v: int):
        return [i for i, a in enumerate(self.arrows) if a.source == v]


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths of length >= 2, given by arrow ids."""

    terms: tuple  # ((Fraction coef, (arrow ids...)), ...)
    source: int
    target: int


# A path is (start_vertex, (arrow ids...)); () means the trivial path e_start.


def _path_target(quiver: Quiver, path) -> int:
    start, arrows = path
    return start if not arrows else quiver.arrows[arrows[-1]].target


class AlgebraPresentation:
    """A basic finite-dimensional algebra given by a quiver with admissible relations.

    Immutable after construction and safe to share between threads.  Holds the
    path basis in normal form, the multiplication table, and the nilpotency
    bound L (every path of length >= L is zero).
    """

    def __init__(self, quiver: Quiver, relations, max_bound: int = DEFAULT_MAX_BOUND):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.max_bound = max_bound
        self._opposite = None
        self._caches = {}
        self._path_key_cache = {}
        self._compute_basis()
        self._compute_table()

    # -- construction ------------------------------------------------------

    def _key(self, path):
        k = self._path_key_cache.get(path)
        if k is None:
            lr = self.quiver._lexrank
            k = (len(path[1]), tuple(lr[a] for a in path[1]))
            self._path_key_cache[path] = k
        return k

    def _reduce(self, elem):
        """Fully reduce an element (dict path -> Fraction) modulo the pivot rows."""
        elem = {p: c for p, c in elem.items() if c}
        rows = self._rows
        while True:
            piv = None
            for p in elem:
                if p in rows and (piv is None or self._key(p) > self._key(piv)):
                    piv = p
            if piv is None:
                return elem
            coef = elem.pop(piv)
            for q, v in rows[piv].items():
                if q == piv:
                    continue
                nv = elem.get(q, 0) - coef * v
                if nv:
                    elem[q] = nv
                elif q in elem:
                    del elem[q]

    def _insert(self, elem):
        """Insert an ideal element, keeping the pivot rows inter-reduced."""
        elem = self._reduce(elem)
        if not elem:
            return False
        piv = max(elem, key=self._key)
        coef = elem[piv]
        row = {q: v / coef for q, v in elem.items()}
        self._rows[piv] = row
        for other_piv, other in list(self._rows.items()):
            if other_piv == piv:
                continue
            c = other.get(piv)
            if c:
                del other[piv]
                for q, v in row.items():
                    if q == piv:
                        continue
                    nv = other.get(q, 0) - c * v
                    if nv:
                        other[q] = nv
                    elif q in other:
                        del other[q]
        return True

    def _compute_basis(self):
        q = self.quiver
        self._rows = {}  # pivot path -> reduced row (dict path -> Fraction)
        paths_by_len = [[(v, ()) for v in range(1, q.n + 1)]]
        total = q.n
        maxrel = max((max(len(t[1]) for t in r.terms) for r in self.relations), default=0)

        def extend(paths):
            nonlocal total
            out = []
            for path in paths:
                t = _path_target(q, path)
                for a in range(len(q.arrows)):
                    if q.arrows[a].source == t:
                        out.append((path[0], path[1] + (a,)))
            total += len(out)
            if total > PATH_BUDGET:
                raise NotAdmissible(
                    f"path budget of {PATH_BUDGET} exceeded before finding a nilpotency witness")
            return out

        def insert_products(d):
            # every u*r*v whose longest term has total length d
            for rel in self.relations:
                m = max(len(t[1]) for t in rel.terms)
                for lu in range(0, d - m + 1):
                    lv = d - m - lu
                    if lv < 0 or lu >= len(paths_by_len) or lv >= len(paths_by_len):
                        continue
                    us = [p for p in paths_by_len[lu] if _path_target(q, p) == rel.source]
                    vs = [p for p in paths_by_len[lv] if p[0] == rel.target]
                    for u in us:
                        for v in vs:
                            elem = {}
                            for coef, arrows in rel.terms:
                                p = (u[0], u[1] + arrows + v[1])
                                elem[p] = elem.get(p, Fraction(0)) + coef
                            self._insert(elem)

        witness = None
        d = 1
        while d <= self.max_bound:
            paths_by_len.append(extend(paths_by_len[d - 1]))
            insert_products(d)
            if all(not self._reduce({p: Fraction(1)}) for p in paths_by_len[d]):
                witness = d
                break
            d += 1
        if witness is None:
            raise NotAdmissible(
                f"no length <= {self.max_bound} has all its paths reducing to 0")

        # Pad with longer products so cross-degree cancellations from
        # inhomogeneous relations surface before the basis is frozen.
        for d2 in range(witness + 1, witness + maxrel + 1):
            paths_by_len.append(extend(paths_by_len[d2 - 1]))
            insert_products(d2)

        self.nilpotency_bound = witness
        basis = []
        for d0 in range(witness):
            for p in paths_by_len[d0]:
                if p not in self._rows:
                    basis.append(p)
        basis.sort(key=lambda p: (p[0], _path_target(q, p), self._key(p)))
        self.basis = tuple(basis)
        self.dim = len(basis)
        self.basis_index = {p: i for i, p in enumerate(basis)}
        self.basis_source = tuple(p[0] for p in basis)
        self.basis_target = tuple(_path_target(q, p) for p in basis)
        self.basis_by_pair = {}
        for i, p in enumerate(basis):
            self.basis_by_pair.setdefault((self.basis_source[i], self.basis_target[i]), []).append(i)
        self.trivial_idx = {v: self.basis_index[(v, ())] for v in range(1, q.n + 1)}
        self.arrow_idx = {a: self.basis_index[(q.arrows[a].source, (a,))]
                          for a in range(len(q.arrows))}

    def _compute_table(self):
        self.table = {}
        for i, p in enumerate(self.basis):
            for j, r in enumerate(self.basis):
                if self.basis_target[i] != self.basis_source[j]:
                    continue
                self.table[(i, j)] = self.normal_form(p[0], p[1] + r[1])

    # -- queries -----------------------------------------------------------

    def normal_form(self, start: int, arrows) -> dict:
        """Normal form of a raw path as dict basis_index -> Fraction."""
        arrows = tuple(arrows)
        if len(arrows) >= self.nilpotency_bound:
            return {}
        reduced = self._reduce({(start, arrows): Fraction(1)})
        out = {}
        for p, c in reduced.items():
            idx = self.basis_index.get(p)
            if idx is None:
                # a non-basis survivor would mean the reduction rows are not
                # closed; admissible presentations never reach this
                raise NotAdmissible(f"path {p} did not reduce into the basis")
            out[idx] = c
        return out

    def multiply(self, e1: dict, e2: dict) -> dict:
        """Product of two elements given as dict basis_index -> Fraction."""
        out = {}
        for i, c1 in e1.items():
            for j, c2 in e2.items():
                prod = self.table.get((i, j))
                if not prod:
                    continue
                c = c1 * c2
                for k, v in prod.items():
                    nv = out.get(k, Fraction(0)) + c * v
                    if nv:
                        out[k] = nv
                    elif k in out:
                        del out[k]
        return out

    def unit(self, v: int) -> dict:
        return {self.trivial_idx[v]: Fraction(1)}

    @property
    def n(self) -> int:
        return self.quiver.n

    def opposite(self) -> "AlgebraPresentation":
        """The opposite algebra: reversed arrows, reversed relation paths."""
        if self._opposite is None:
            q = self.quiver
            arrows = [Arrow(a.name, a.target, a.source) for a in q.arrows]
            rels = []
            for r in self.relations:
                terms = tuple((c, tuple(reversed(p))) for c, p in r.terms)
                rels.append(Relation(terms, r.target, r.source))
            op = AlgebraPresentation(Quiver(q.vertices, arrows), rels, self.max_bound)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def describe(self) -> dict:
        """Digest used by reports and the check command."""
        sizes = {}
        for (s, t), idxs in sorted(self.basis_by_pair.items()):
            sizes[f"{s}->{t}"] = len(idxs)
        return {
            "vertices": list(self.quiver.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.quiver.arrows],
            "dim": self.dim,
            "nilpotency_bound": self.nilpotency_bound,
            "basis_sizes": sizes,
        }

    def __repr__(self):
        return f"AlgebraPresentation(n={self.n}, dim={self.dim})"


def _validated_relation(quiver: Quiver, terms) -> Relation:
    merged = {}
    for coef, arrows in terms:
        if len(arrows) < 2:
            raise InvalidRelation("relation terms must have length >= 2")
        for a, b in zip(arrows, arrows[1:]):
            if quiver.arrows[a].target != quiver.arrows[b].source:
                raise InvalidRelation("relation term is not a composable path")
        merged[tuple(arrows)] = merged.get(tuple(arrows), Fraction(0)) + coef
    merged = {p: c for p, c in merged.items() if c}
    if not merged:
        raise InvalidRelation("relation has no nonzero coefficient")
    endpoints = {(quiver.arrows[p[0]].source, quiver.arrows[p[-1]].target) for p in merged}
    if len(endpoints) != 1:
        raise InvalidRelation("relation terms must be parallel paths")
    (src, tgt), = endpoints
    terms = tuple(sorted(merged.items(), key=lambda it: it[0]))
    return Relation(tuple((c, p) for p, c in terms), src, tgt)


def build_algebra(vertices, arrows, relations, max_bound: int = DEFAULT_MAX_BOUND):
    """Build a presentation from plain data; arrows as (name, source, target),
    relations as lists of (coef, (arrow name, ...))."""
    quiver = Quiver(vertices, [Arrow(str(n), s, t) for n, s, t in arrows])
    rels = []
    for rel in relations:
        terms = []
        for coef, names in rel:
            ids = []
            for name in names:
                if name not in quiver.arrow_by_name:
                    raise InvalidRelation(f"unknown arrow {name!r} in relation")
                ids.append(quiver.arrow_by_name[name])
            terms.append((Fraction(coef), tuple(ids)))
        rels.append(_validated_relation(quiver, terms))
    return AlgebraPresentation(quiver, rels, max_bound)


def _require_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be an object")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)} in {where}")


def parse_algebra(text: str, max_bound: int = DEFAULT_MAX_BOUND) -> AlgebraPresentation:
    """Parse and validate a JSON presentation document.

    Top-level keys: "vertices" (array of strings), "arrows" (array of
    {"name","from","to"}), and optional "relations" (array of {"terms":
    [{"coef": rational string, "path": [arrow names]}]}).  Unknown keys are
    rejected.  The order of "vertices" fixes the index 1..n used by every
    vector and matrix in the system.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    _require_keys(doc, {"vertices", "arrows", "relations"}, "document")
    if "vertices" not in doc or "arrows" not in doc:
        raise ParseError('document needs "vertices" and "arrows"')
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError('"vertices" must be an array of strings')

    quiver_arrows = []
    if not isinstance(doc["arrows"], list):
        raise ParseError('"arrows" must be an array')
    label_to_index = {v: i + 1 for i, v in enumerate(vertices)}
    if len(label_to_index) != len(vertices):
        raise ParseError("vertex labels must be unique")
    for a in doc["arrows"]:
        _require_keys(a, {"name", "from", "to"}, "arrow")
        for k in ("name", "from", "to"):
            if k not in a or not isinstance(a[k], str):
                raise ParseError(f'arrow needs string field "{k}"')
        if a["from"] not in label_to_index or a["to"] not in label_to_index:
            raise ParseError(f'arrow {a["name"]!r} references an unknown vertex')
        quiver_arrows.append((a["name"], label_to_index[a["from"]], label_to_index[a["to"]]))

    relations = []
    for rel in doc.get("relations", []):
        _require_keys(rel, {"terms"}, "relation")
        if "terms" not in rel or not isinstance(rel["terms"], list) or not rel["terms"]:
            raise ParseError('relation needs a non-empty "terms" array')
        terms = []
        for term in rel["terms"]:
            _require_keys(term, {"coef", "path"}, "relation term")
            if "coef" not in term or "path" not in term:
                raise ParseError('relation term needs "coef" and "path"')
            try:
                coef = Fraction(term["coef"])
            except (ValueError, TypeError, ZeroDivisionError):
                raise ParseError(f'bad coefficient {term["coef"]!r}') from None
            if not isinstance(term["path"], list) or not all(isinstance(x, str) for x in term["path"]):
                raise ParseError('"path" must be an array of arrow names')
            terms.append((coef, tuple(term["path"])))
        relations.append(terms)

    return build_algebra(vertices, quiver_arrows, relations, max_bound)

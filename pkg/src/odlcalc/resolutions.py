"""Equivariant free resolutions of orbit closures.

A resolution is stored as its terms only: term ``i`` is a list of
``Term(labels, degree)`` meaning ``V_labels (x) A(-degree)``.  Degrees are
positive integers; the twist exponent seen by a relative complex is
``-degree``.  Labels are per group factor: a partition string for a GL
factor, a highest-weight string like ``"w1+w3"`` otherwise.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import json
from importlib import resources

import sympy

from . import bundles as B
from .lie_core import parse_type, weight_from_label, weyl_dim
from .partitions import Partition, parse_partition, schur_dim

PROVENANCES = ("paper-display", "generated", "conjectural")


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class GroupFactor:
    name: str
    kind: str  # "GL" or a Lie type such as "D5"
    rank: int = 0
    dual: bool = False

    def label_dim(self, label):
        if self.kind == "GL":
            lam = parse_partition(label)
            if len(lam) > self.rank:
                return 0
            return schur_dim(lam, self.rank)
        t = parse_type(self.kind)
        return weyl_dim(t, weight_from_label(t, label))

    def is_trivial_label(self, label):
        if self.kind == "GL":
            return not parse_partition(label)
        return str(label).replace(" ", "") in ("", "0")


@dataclass(frozen=True)
class Term:
    labels: tuple
    degree: int


@dataclass(frozen=True)
class Relative:
    """Data for instantiating a resolution over a base."""
    generators: dict
    lines: tuple = ()
    rep: str = ""
    symbols: dict = field(default_factory=dict)
    templates: tuple = ()
    relations: dict = field(default_factory=dict)
    group_map: dict = field(default_factory=dict)

    def abstract_symbols(self):
        out = {name: B.Generator(name, r) for name, r in self.generators.items()}
        for name, text in self.symbols.items():
            out[name] = B.parse_bundle(text, out)
        return out

    def representation(self):
        return B.parse_bundle(self.rep, self.abstract_symbols())


@dataclass(frozen=True)
class Resolution:
    case_id: str
    groups: tuple
    terms: tuple
    ambient_dim: int
    codim: int
    provenance: str = "generated"
    relative: Relative = None
    notes: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ResolutionError(f"unknown provenance {self.provenance!r}")
        if len(self.terms) != self.codim + 1:
            raise ResolutionError(f"{self.case_id}: {len(self.terms)} terms for codim {self.codim}")
        first = self.terms[0]
        if len(first) != 1 or first[0].degree != 0 or not all(
                g.is_trivial_label(lab) for g, lab in zip(self.groups, first[0].labels)):
            raise ResolutionError(f"{self.case_id}: term 0 must be the trivial module in degree 0")
        for i, summands in enumerate(self.terms):
            for term in summands:
                if len(term.labels) != len(self.groups):
                    raise ResolutionError(f"{self.case_id}: term {i} has wrong number of labels")
                if term.degree < i:
                    raise ResolutionError(f"{self.case_id}: degree {term.degree} < {i} in term {i}")

    @property
    def length(self):
        return self.codim

    @property
    def last_degree(self):
        return max(t.degree for t in self.terms[-1])

    def term_dim(self, term):
        out = 1
        for g, lab in zip(self.groups, term.labels):
            out *= g.label_dim(lab)
        return out

    def dims(self):
        return [[self.term_dim(t) for t in summands] for summands in self.terms]

    def twists(self):
        """Twist exponents per term, negative as in ``A(-d)``."""
        return [[-t.degree for t in summands] for summands in self.terms]

    def to_json(self):
        return {
            "case": self.case_id,
            "provenance": self.provenance,
            "ambient_dim": self.ambient_dim,
            "codim": self.codim,
            "terms": [[{"labels": list(t.labels), "dim": self.term_dim(t), "twist": -t.degree}
                       for t in summands] for summands in self.terms],
        }


# ------------------------------------------------------------ generators

def eagon_northcott(e, f):
    """Resolution of the maximal minors of a generic e x f matrix.

    >>> [t[0].degree for t in eagon_northcott(3, 2).terms]
    [0, 2, 3]
    """
    if not (isinstance(e, int) and isinstance(f, int)) or f < 1 or e < f:
        raise ResolutionError(f"need e >= f >= 1, got ({e}, {f})")
    groups = (GroupFactor(f"GL{e}", "GL", e, False), GroupFactor(f"GL{f}*", "GL", f, True))
    terms = [(Term(("", ""), 0),)]
    for i in range(1, e - f + 2):
        wedge_e = ",".join(["1"] * (f + i - 1))
        hook = ",".join([str(i)] + ["1"] * (f - 1))
        terms.append((Term((wedge_e, hook), f + i - 1),))
    rel = Relative(generators={"E": e, "F": f}, rep="(tensor E (dual F))",
                   group_map={groups[0].name: "E", groups[1].name: "F"})
    return Resolution(f"eagon_northcott({e},{f})", groups, tuple(terms), e * f,
                      e - f + 1, "generated", rel)


# ------------------------------------------------------------ catalog

@lru_cache(maxsize=1)
def _catalog_data():
    text = resources.files("odlcalc").joinpath("data/resolutions.json").read_text()
    return json.loads(text)


def catalog_version():
    return _catalog_data()["version"]


def catalog_ids():
    return sorted(_catalog_data()["resolutions"])


def _parse_record(case_id, rec):
    groups = tuple(GroupFactor(g["name"], g["type"], g.get("rank", 0), g.get("dual", False))
                   for g in rec["groups"])
    terms = tuple(tuple(Term(tuple(t["labels"]), int(t["twist"])) for t in summands)
                  for summands in rec["terms"])
    rel = None
    if "relative" in rec:
        r = rec["relative"]
        rel = Relative(generators=dict(r["generators"]), lines=tuple(r.get("lines", ())),
                       rep=r.get("rep", ""), symbols=dict(r.get("symbols", {})),
                       templates=tuple(r.get("terms", ())),
                       relations=dict(r.get("relations", {})),
                       group_map=dict(r.get("group_map", {})))
    return Resolution(case_id, groups, terms, rec["ambient_dim"], rec["codim"],
                      rec["provenance"], rel, rec.get("notes", ""))


@lru_cache(maxsize=None)
def catalog_resolution(case_id):
    data = _catalog_data()["resolutions"]
    if case_id not in data:
        raise ResolutionError(f"no catalogued resolution for {case_id!r}")
    return _parse_record(case_id, data[case_id])


# ------------------------------------------------------------ checks

@dataclass(frozen=True)
class HilbertData:
    numerator: tuple  # coefficients of p(t), constant term first
    n_check: int

    @property
    def degree(self):
        return len(self.numerator) - 1


def hilbert_numerator(r):
    """Divide the alternating K-polynomial by (1 - t)^codim exactly.

    >>> hilbert_numerator(eagon_northcott(2, 2))
    HilbertData(numerator=(1, 1), n_check=2)
    """
    t = sympy.Symbol("t")
    kpoly = sympy.Integer(0)
    for i, summands in enumerate(r.terms):
        for term in summands:
            kpoly += (-1) ** i * r.term_dim(term) * t ** term.degree
    quotient, remainder = sympy.div(sympy.Poly(kpoly, t, domain="ZZ"),
                                    sympy.Poly((1 - t) ** r.codim, t, domain="ZZ"))
    if not remainder.is_zero:
        raise ResolutionError(f"{r.case_id}: K-polynomial not divisible by (1-t)^{r.codim}")
    coeffs = tuple(int(c) for c in reversed(quotient.all_coeffs()))
    n_check = r.codim + len(coeffs) - 1
    if n_check != r.last_degree:
        raise ResolutionError(f"{r.case_id}: codim + deg p = {n_check}, last twist {r.last_degree}")
    return HilbertData(coeffs, n_check)


def check_gorenstein_shape(r):
    """(flag, witness): last term of rank one and degrees symmetric about N/2."""
    last = r.terms[-1]
    last_dim = sum(r.term_dim(t) for t in last)
    if last_dim != 1:
        return False, {"reason": "last term rank", "rank": last_dim}
    n = r.last_degree
    for i in range(r.codim + 1):
        left = sorted((t.degree, r.term_dim(t)) for t in r.terms[i])
        right = sorted((n - t.degree, r.term_dim(t)) for t in r.terms[r.codim - i])
        if left != right:
            return False, {"reason": "asymmetric", "term": i, "degrees": left, "mirror": right}
    return True, {"N": n}


# ------------------------------------------------------------ relative complexes

def _default_assignment(r):
    if r.relative is None:
        raise ResolutionError(f"{r.case_id} has no relative data")
    gens = {name: B.Generator(name, rk) for name, rk in r.relative.generators.items()}
    return gens, {}


def _split_assignment(r, assignment):
    gens, lines = {}, {}
    for key, value in (assignment or {}).items():
        if isinstance(value, B.LineClass) or isinstance(value, dict):
            lines[key] = value
        else:
            gens[key] = value
    return gens, lines


def _check_ranks(r, gens):
    for name, expr in gens.items():
        want = r.relative.generators.get(name)
        if want is None:
            raise ResolutionError(f"{r.case_id} has no generator {name!r}")
        if B.rank(expr) != want:
            raise ResolutionError(f"{name} must have rank {want}, got {B.rank(expr)}")


def _abstract_terms(r):
    rel = r.relative
    if rel.templates:
        env = rel.abstract_symbols()
        out = []
        for text in rel.templates:
            out.append(B.parse_bundle(text, env))
        return out
    if all(g.kind == "GL" or g.name in rel.group_map for g in r.groups) and rel.group_map:
        out = []
        for summands in r.terms:
            pieces = []
            for term in summands:
                factors = []
                for g, lab in zip(r.groups, term.labels):
                    lam = parse_partition(lab)
                    if not lam:
                        continue
                    base = B.Generator(rel.group_map[g.name], g.rank)
                    factors.append(B.Schur(lam, B.Dual(base) if g.dual else base))
                pieces.append(B.tensor(*factors) if factors else B.trivial(1))
            out.append(pieces[0] if len(pieces) == 1 else B.direct_sum(*pieces))
        return out
    raise ResolutionError(f"{r.case_id}: only the last relative term is known")


def relative_instance(r, assignment=None, twist=None):
    """Apply the resolution functorially over a base.

    ``assignment`` maps generator names to BundleExprs and line names to
    LineClass values; missing entries stay abstract.  With ``twist`` the
    degree-d term is tensored with ``twist^(-d)``.
    """
    base_gens, _ = _default_assignment(r)
    gens, lines = _split_assignment(r, assignment)
    _check_ranks(r, gens)
    terms = [B.substitute(t, gens, lines) for t in _abstract_terms(r)]
    if twist is not None:
        twist = twist if isinstance(twist, B.LineClass) else B.LineClass(twist)
        out = []
        for summands, expr in zip(r.terms, terms):
            degrees = {t.degree for t in summands}
            if len(degrees) != 1:
                raise ResolutionError("twisting needs a single degree per term")
            out.append(B.twist(expr, twist * (-degrees.pop())))
        terms = out
    return terms


def _apply_relations(line, r, lines):
    rules = {k: dict(v) for k, v in r.relative.relations.items()}
    out = line.substitute(rules)
    if lines:
        out = out.substitute({k: (v.exponents if isinstance(v, B.LineClass) else dict(v))
                              for k, v in lines.items()})
    return out


def last_term_by_det_rule(r):
    """(det rep)^(-N/rank), the only rank-one option compatible with equivariance."""
    rep = r.relative.representation()
    rk = B.rank(rep)
    if rk != r.ambient_dim:
        raise ResolutionError(f"{r.case_id}: representation rank {rk} != {r.ambient_dim}")
    det = B.det_expr(rep).substitute({k: dict(v) for k, v in r.relative.relations.items()})
    return B.line_bundle(det * Fraction(-r.last_degree, rk))


def canonical_twist(r, assignment=None, twist=None):
    """LineClass M with omega_D = (K_X (x) M) restricted to D."""
    ok, witness = check_gorenstein_shape(r)
    if not ok:
        raise ResolutionError(f"{r.case_id} is not of Gorenstein shape: {witness}")
    gens, lines = _split_assignment(r, assignment)
    _check_ranks(r, gens)
    try:
        last = _abstract_terms(r)[-1]
    except ResolutionError:
        last = last_term_by_det_rule(r)
    last = B.substitute(last, gens, {})
    if B.rank(last) != 1:
        raise ResolutionError("last relative term is not a line bundle")
    out = -B.det_expr(last)
    out = _apply_relations(out, r, lines)
    if twist is not None:
        twist = twist if isinstance(twist, B.LineClass) else B.LineClass(twist)
        out = out + twist * r.last_degree
    return out


def template_det_mismatches(r):
    """Terms whose determinant is not -(dim * d / dim V) det(rep).

    Only the central torus contributes to determinants of the structure
    group's modules, and it acts on a degree-d term through d times the
    character of the representation.  This needs the structure group to be
    semisimple modulo the grading scalars, which fails for Eagon-Northcott.
    An empty list means every relative term is consistent with its degree.
    """
    rel = r.relative
    rep_det = B.det_expr(rel.representation())
    rules = {k: dict(v) for k, v in rel.relations.items()}
    bad = []
    for i, expr in enumerate(_abstract_terms(r)):
        degrees = {t.degree for t in r.terms[i]}
        dim = sum(r.term_dim(t) for t in r.terms[i])
        expected = rep_det * Fraction(-dim * degrees.pop(), r.ambient_dim)
        if B.det_expr(expr).substitute(rules) != expected.substitute(rules):
            bad.append(i)
    return bad

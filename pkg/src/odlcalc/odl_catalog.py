"""Catalog of Gorenstein orbit closures and the tools that derive their data.

Each record carries the representation as a bundle template over abstract
generators, codimension data, the last twist N with the route it was
obtained by, and the canonical exponents.  The exponents are never
trusted on their own: ``solve_canonical_exponents`` re-derives them from
N and the representation.

Classical families are parametric and built on demand::

    det(e,r)  sym(e,r)  skew(e,r)  grass_cone(k,e)  mixed(d1,d2)  d4a2
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
import json
import re

import sympy

from . import bundles as B
from .lie_core import (LieType, fundamental_weight, parse_type, positive_roots,
                       positive_roots_simple_coords, weyl_dim, fano_index)
from .partitions import binomial


class CatalogError(ValueError):
    pass


# ------------------------------------------------------------------ records

@dataclass(frozen=True)
class SingCodim:
    value: object  # int or None when unknown
    at_least: bool = False

    def __str__(self):
        if self.value is None:
            return "unknown"
        return (">= " if self.at_least else "") + str(self.value)


@dataclass(frozen=True)
class OrbitCase:
    case_id: str
    label: str
    group: str
    section: str
    generators: dict
    lines: tuple
    rep: str
    codim: int
    sing_codim: SingCodim
    n: object
    n_source: str
    canonical: B.LineClass
    symbols: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    resolution: object = None
    collapsing: object = None
    index: object = None
    gorenstein: bool = True
    provenance: str = "paper-display"
    printed: dict = field(default_factory=dict)
    notes: str = ""

    def symbol_table(self):
        out = {name: B.Generator(name, r) for name, r in self.generators.items()}
        for name, text in self.symbols.items():
            out[name] = B.parse_bundle(text, out)
        return out

    def representation(self):
        return B.parse_bundle(self.rep, self.symbol_table())

    @property
    def ambient_dim(self):
        return B.rank(self.representation())

    def to_json(self):
        return {
            "id": self.case_id, "label": self.label, "group": self.group,
            "section": self.section, "rep": self.rep, "generators": dict(self.generators),
            "codim": self.codim,
            "sing_codim": {"value": self.sing_codim.value, "at_least": self.sing_codim.at_least},
            "N": self.n, "N_source": self.n_source, "canonical": self.canonical.to_json(),
            "relations": self.relations, "resolution": self.resolution,
            "gorenstein": self.gorenstein, "provenance": self.provenance,
            "printed": self.printed, "notes": self.notes,
        }


@lru_cache(maxsize=1)
def _data():
    return json.loads(resources.files("odlcalc").joinpath("data/catalog.json").read_text())


def catalog_version():
    return _data()["version"]


def _from_record(rec):
    idx = rec.get("index")
    return OrbitCase(
        case_id=rec["id"], label=rec["label"], group=rec["group"], section=rec["section"],
        generators=dict(rec["generators"]), lines=tuple(rec.get("lines", ())),
        rep=rec["rep"], codim=rec["codim"],
        sing_codim=SingCodim(rec["sing_codim"]["value"], rec["sing_codim"]["at_least"]),
        n=rec.get("n"), n_source=rec.get("n_source", ""),
        canonical=B.LineClass(rec["canonical"]), symbols=dict(rec.get("symbols", {})),
        relations=dict(rec.get("relations", {})), resolution=rec.get("resolution"),
        collapsing=rec.get("collapsing"),
        index=(idx["type"], idx["node"]) if idx else None,
        gorenstein=rec.get("gorenstein", True), provenance=rec.get("provenance", "paper-display"),
        notes=rec.get("notes", ""))


def catalogued_ids():
    return [rec["id"] for rec in _data()["cases"]]


def non_gorenstein_cases():
    return list(_data()["non_gorenstein"])


def question_metadata():
    return dict(_data()["question"])


# ------------------------------------------------------------------ classical families

def determinantal_case(e, r):
    """Square e x e matrices of rank at most r; Gorenstein only for square ones."""
    if not 0 <= r < e:
        raise CatalogError(f"need 0 <= r < e, got ({e}, {r})")
    k = e - r
    return OrbitCase(
        f"det({e},{r})", "(A2e-1,ae)", f"GL{e} x GL{e}", "3.2", {"E": e, "F": e}, (),
        "(tensor (dual E) F)", k * k, SingCodim(2 * k + 1), e * k, "resolution",
        B.LineClass({"det E": -k, "det F": k}))


def skew_case(e, r):
    """Skew e x e matrices of rank at most r (r even).

    The codimensions are computed from the collapsing dimension; the
    printed formulas are kept under ``printed``.
    """
    if r % 2 or not 0 <= r < e - 1:
        raise CatalogError(f"need r even and 0 <= r <= e - 2, got ({e}, {r})")
    k = e - r
    return OrbitCase(
        f"skew({e},{r})", "(Dn,an)", f"GL{e}", "3.2", {"E": e}, (), "(wedge 2 E)",
        binomial(k, 2), SingCodim(2 * k + 1), e * (k - 1) // 2, "resolution",
        B.LineClass({"det E": k - 1}),
        printed={"codim": k * (k - 1), "sing_codim": 4 * e - 4 * r + 2})


def sym_case(e, r):
    """Symmetric e x e matrices of rank at most r, Gorenstein iff e - r is odd."""
    if not 0 <= r < e:
        raise CatalogError(f"need 0 <= r < e, got ({e}, {r})")
    k = e - r
    if k % 2 == 0:
        raise CatalogError(f"sym({e},{r}) is not Gorenstein (e - r even)")
    return OrbitCase(
        f"sym({e},{r})", "(Cn,an)", f"GL{e}", "3.2", {"E": e}, (), "(sym 2 E)",
        binomial(k + 1, 2), SingCodim(k + 1), e * (k + 1) // 2, "resolution",
        B.LineClass({"det E": k + 1}),
        printed={"codim": k * (k + 1), "sing_codim": 2 * e - 2 * r + 2})


def grass_cone_case(k, e):
    """Cone over Gr(k, e) in P(wedge^k C^e)."""
    if not 2 <= k <= e - 2:
        raise CatalogError(f"need 2 <= k <= e - 2, got ({k}, {e})")
    dim_v = binomial(e, k)
    return OrbitCase(
        f"grass_cone({k},{e})", f"(A{e - 1},a{k})", f"GL{e}", "3.4", {"E": e}, (),
        f"(wedge {k} E)", dim_v - k * (e - k) - 1, SingCodim(k * (e - k) + 1),
        dim_v - e, "index", B.LineClass({"det E": binomial(e - 1, k - 1) - k}),
        index=(f"A{e - 1}", k))


def mixed_case(d1, d2):
    """The crepant mixed orbit closure in Hom(V2, V1), V2 symplectic."""
    if d2 % 2 or not d1 - 1 <= d2 <= 2 * d1 - 2:
        raise CatalogError(f"need d2 even and d1 - 1 <= d2 <= 2 d1 - 2, got ({d1}, {d2})")
    s = d2 - d1 + 1
    return OrbitCase(
        f"mixed({d1},{d2})", f"(C{d1 + d2 // 2},a{d1})", f"GL{d1} x Sp{d2}", "3.3",
        {"E1": d1, "E2": d2}, ("L",), "(tensor E1 (dual E2))", binomial(s + 1, 2),
        SingCodim(3), d1 * s, "crepant",
        B.LineClass({"det E1": s, "det E2": -s, "L": binomial(s, 2)}),
        relations={"det E2": {"L": d2 // 2}}, collapsing=f"mixed({d1},{d2})")


def d4a2_case():
    return OrbitCase(
        "d4a2", "(D4,a2)", "GL2 x GL2 x GL2", "3.3.1", {"E1": 2, "E2": 2, "E3": 2}, (),
        "(tensor E1 E2 E3)", 4, SingCodim(4), 6, "crepant",
        B.LineClass({"det E1": 3, "det E2": 3, "det E3": 3}), collapsing="d4a2")


_FAMILIES = {
    "det": determinantal_case, "sym": sym_case, "skew": skew_case,
    "grass_cone": grass_cone_case, "mixed": mixed_case,
}


def case_info(case_id):
    for rec in _data()["cases"]:
        if rec["id"] == case_id:
            return _from_record(rec)
    if case_id == "d4a2":
        return d4a2_case()
    m = re.fullmatch(r"\s*(\w+)\((\d+)\s*,\s*(\d+)\)\s*", case_id)
    if m and m.group(1) in _FAMILIES:
        return _FAMILIES[m.group(1)](int(m.group(2)), int(m.group(3)))
    raise CatalogError(f"unknown case {case_id!r}")


# ------------------------------------------------------------------ exponent solver

def _grading_basis(rep, relations):
    """Central gradings under which ``rep`` is homogeneous.

    A grading gives each generator one value on all its Chern roots and
    each line one value.  Returns (basis, names, ranks) where each basis
    vector lists those values followed by the degree of ``rep``.
    """
    env = B.formal_env(rep)
    found = B.generators_of(rep)
    names = sorted(found["gens"]) + sorted(found["lines"])
    ranks = {g: found["gens"][g] for g in found["gens"]}
    blocks = [(g, ranks[g]) for g in sorted(found["gens"])]
    blocks += [(ell, 1) for ell in sorted(found["lines"])]
    nvar = len(names) + 1
    rows = []
    weights = [w for w, m in B.character(rep, env).items() if m]
    for w in weights:
        row = [0] * nvar
        pos = 0
        for j, (_, size) in enumerate(blocks):
            row[j] = sum(w[pos:pos + size])
            pos += size
        row[-1] = -1
        rows.append(row)
    for key, target in relations.items():
        lhs = _key_functional(key, names, ranks)
        rhs = _line_functional(B.LineClass(target), names, ranks)
        rows.append([a - b for a, b in zip(lhs, rhs)] + [0])
    mat = sympy.Matrix(rows) if rows else sympy.zeros(1, nvar)
    return mat.nullspace(), names, ranks


def _key_functional(key, names, ranks):
    vec = [0] * len(names)
    if key.startswith("det "):
        g = key[4:]
        if g not in names:
            raise CatalogError(f"relation mentions unknown generator {g}")
        vec[names.index(g)] = ranks[g]
    else:
        if key not in names:
            return vec
        vec[names.index(key)] = 1
    return vec


def _line_functional(line, names, ranks):
    total = [0] * len(names)
    for key, c in line.exponents.items():
        f = _key_functional(key, names, ranks)
        total = [a + c * b for a, b in zip(total, f)]
    return total


def solve_canonical_exponents(n, rep, relations=None):
    """Line class M with omega_D = K_X (x) M from N and the representation.

    Two constraints pin M down: it is a rational power of det(rep), and
    every central grading sees it with N times the degree of rep.
    ``relations`` such as {"det E": {"L": 3}} are substituted first.

    >>> E = B.Generator("E", 6)
    >>> solve_canonical_exponents(22, B.spinor_bundle(E, "L"))
    L^33 det E^11
    """
    relations = dict(relations or {})
    rules = {k: dict(v) for k, v in relations.items()}
    det = B.det_expr(rep).substitute(rules)
    basis, names, ranks = _grading_basis(rep, relations)
    keys = sorted(det.exponents)
    xs = sympy.symbols(f"x0:{len(keys)}") if keys else ()
    t = sympy.Symbol("t")
    eqs = [x - t * sympy.Rational(det.get(k).numerator, det.get(k).denominator)
           for x, k in zip(xs, keys)]
    useful = 0
    for vec in basis:
        degree = vec[-1]
        if degree == 0:
            continue
        useful += 1
        lhs = 0
        for k, x in zip(keys, xs):
            f = _key_functional(k, names, ranks)
            lhs += x * sum(vec[j] * f[j] for j in range(len(names)))
        eqs.append(lhs - n * degree)
    if not keys:
        return B.LineClass()
    if not useful:
        raise CatalogError("no grading with non-zero degree; exponents are not determined")
    sol = sympy.linsolve(eqs, list(xs) + [t])
    if not sol:
        raise CatalogError("no solution for the exponent constraints")
    (values,) = tuple(sol)
    if any(v.free_symbols for v in values):
        raise CatalogError("exponent constraints do not determine a unique solution")
    out = {}
    for k, v in zip(keys, values[:-1]):
        v = sympy.Rational(v)
        if v.q != 1:
            raise CatalogError(f"non-integral exponent {v} on {k}")
        out[k] = int(v.p)
    return B.LineClass(out)


def derive_canonical(case):
    """Re-derive a case's canonical exponents from its N and representation."""
    if case.n is None:
        raise CatalogError(f"{case.case_id} has no last twist")
    return solve_canonical_exponents(case.n, case.representation(), case.relations)


def canonical_in_relations(case, line=None):
    """Reduce a line class by the case's structure relations."""
    line = case.canonical if line is None else line
    return line.substitute({k: dict(v) for k, v in case.relations.items()})


# ------------------------------------------------------------------ N from index

def n_from_index(lie_type, node):
    """N = dim V - index(G/P) for the cone over G/P in P(V_omega)."""
    t = parse_type(lie_type) if isinstance(lie_type, str) else lie_type
    return weyl_dim(t, fundamental_weight(t, node)) - fano_index(t, node)


# ------------------------------------------------------------------ crepancy

@dataclass(frozen=True)
class BaseFactor:
    lie_type: LieType
    nodes: tuple = ()

    @property
    def width(self):
        return self.lie_type.ambient_dim


@dataclass(frozen=True)
class CollapsingData:
    """Homogeneous subbundle W of G/P x V given by its weights.

    ``factors`` lists the simple factors of G with their marked nodes;
    weights live in the concatenation of the factors' coordinates.
    """
    factors: tuple
    weights: tuple
    dim_v: object = None

    @property
    def rank(self):
        return len(self.weights)

    @property
    def base_dim(self):
        return sum(len(_nilradical(f)) for f in self.factors)


def _nilradical(factor):
    nodes = [i - 1 for i in factor.nodes]
    return [w.coords for w, c in positive_roots_simple_coords(factor.lie_type)
            if any(c[i] > 0 for i in nodes)]


def crepancy_defect(cd):
    """Pairings of sum(W) - sum(nilradical) with the simple roots, per factor."""
    width = sum(f.width for f in cd.factors)
    for w in cd.weights:
        if len(w) != width:
            raise CatalogError(f"weight {w} has {len(w)} coordinates, expected {width}")
    total = [Fraction(0)] * width
    for w in cd.weights:
        total = [a + Fraction(b) for a, b in zip(total, w)]
    out = []
    pos = 0
    for f in cd.factors:
        block = total[pos:pos + f.width]
        for root in _nilradical(f):
            block = [a - b for a, b in zip(block, root)]
        pairings = []
        for alpha in positive_roots(f.lie_type):
            pairings.append(sum((a * b for a, b in zip(block, alpha.coords)), Fraction(0)))
        out.append(tuple(pairings))
        pos += f.width
    return out


def crepancy_check(cd):
    """det W = K_{G/P}: the two sums agree up to a character of G."""
    return all(p == 0 for pairings in crepancy_defect(cd) for p in pairings)


def n_from_crepant_collapsing(cd):
    """N = dim V - rank W, valid only for a crepant collapsing."""
    if cd.dim_v is None:
        raise CatalogError("collapsing has no ambient dimension")
    if not crepancy_check(cd):
        raise CatalogError("collapsing is not crepant")
    return cd.dim_v - cd.rank


def _gl(n):
    return LieType("A", n - 1)


def _unit(width, i, c=1):
    v = [0] * width
    v[i] = c
    return v


def _concat(*parts):
    out = []
    for p in parts:
        out.extend(p)
    return tuple(Fraction(x) for x in out)


def _wedge_weights(n, subsets):
    return [tuple(1 if i in s else 0 for i in range(n)) for s in subsets]


def _triples(n):
    return [set(c) for c in _combinations(range(n), 3)]


def _combinations(items, k):
    from itertools import combinations
    return combinations(items, k)


def _gl_tensor(v_weights, w_weights):
    return [_concat(a, b) for a in v_weights for b in w_weights]


def _spin_weights(m):
    from itertools import product
    return [tuple(Fraction(s, 2) for s in signs) for signs in product((1, -1), repeat=m)
            if signs.count(-1) % 2 == 0]


def grass_subsets_collapsing(n, node_sets, predicate, dim_v):
    """Subbundle of wedge^3 V_n cut out by ``predicate`` on index triples."""
    weights = [tuple(Fraction(x) for x in w)
               for w in _wedge_weights(n, [t for t in _triples(n) if predicate(t)])]
    return CollapsingData((BaseFactor(_gl(n), tuple(node_sets)),), tuple(weights), dim_v)


def e7a3_collapsing(which):
    """V2 (x) (U wedge V6) on Gr(2,6), or V2 (x) wedge^2 U on Gr(4,6)."""
    v2 = [_unit(2, 0), _unit(2, 1)]
    pairs = [set(c) for c in _combinations(range(6), 2)]
    if which == "Y4":
        chosen, node = [p for p in pairs if p & {0, 1}], 2
    else:
        chosen, node = [p for p in pairs if p <= {0, 1, 2, 3}], 4
    w6 = _wedge_weights(6, chosen)
    return CollapsingData((BaseFactor(_gl(2)), BaseFactor(_gl(6), (node,))),
                          tuple(_gl_tensor(v2, w6)), 30)


def e7a6_collapsing(which):
    """V2 (x) S_+ on Q8 (crepant) or V2 (x) T_+ on OGr(3,10)."""
    v2 = [_unit(2, 0), _unit(2, 1)]
    spin = _spin_weights(5)
    if which == "Y8":
        sub, node = [w for w in spin if w[0] > 0], (1,)
    else:
        sub, node = [w for w in spin if w[0] > 0 and w[1] > 0 and w[2] > 0], (3,)
    return CollapsingData((BaseFactor(_gl(2)), BaseFactor(LieType("D", 5), node)),
                          tuple(_gl_tensor(v2, sub)), 32)


def e6a2_collapsing():
    """wedge^3 U_5 on Gr(5,6)."""
    return grass_subsets_collapsing(6, (5,), lambda t: t <= set(range(5)), 20)


def e8a2_collapsing(which):
    if which == "Y25":
        return grass_subsets_collapsing(8, (3,), lambda t: len(t & {0, 1, 2}) >= 2, 56)
    if which == "Y4":
        return grass_subsets_collapsing(
            8, (2, 5), lambda t: t <= set(range(5)) or (t & {0, 1} and len(t & set(range(5))) >= 2), 56)
    if which == "Y4'":
        return grass_subsets_collapsing(
            8, (4, 6), lambda t: len(t & set(range(4))) >= 2 or t <= set(range(6)), 56)
    if which == "Y1":
        return grass_subsets_collapsing(8, (5,), lambda t: len(t & set(range(5))) >= 2, 56)
    raise CatalogError(f"no collapsing {which!r} for e8a2")


def d4a2_collapsing():
    """O(-1,-1) (x) V3 over P1 x P1."""
    weights = [_concat(_unit(2, 0), _unit(2, 0), _unit(2, k)) for k in range(2)]
    return CollapsingData((BaseFactor(_gl(2), (1,)), BaseFactor(_gl(2), (1,)),
                           BaseFactor(_gl(2))), tuple(weights), 8)


def _classical(kind, m):
    """(LieType, V2 weights) for Sp_{2m}, SO_{2m} or SO_{2m+1} in eps coordinates."""
    t = LieType({"C": "C", "D": "D", "B": "B"}[kind], m)
    weights = []
    for j in range(m):
        weights.append(tuple(_unit(m, j)))
        weights.append(tuple(_unit(m, j, -1)))
    if kind == "B":
        weights.append(tuple([0] * m))
    return t, weights


def _isotropic_nodes(kind, m, d):
    if kind == "D" and d == m - 1:
        return (m - 1, m)
    return (d,)


def isotropic_hom_collapsing(kind, d1, d2, r):
    """Hom(Q, V1) over the isotropic Grassmannian SGr(d2 - r, V2)."""
    m = d2 // 2
    s = d2 - r
    if not 1 <= s <= m:
        raise CatalogError(f"isotropic dimension {s} out of range for d2 = {d2}")
    t, v2 = _classical(kind, m)
    low = {tuple(_unit(m, j, -1)) for j in range(s)}
    allowed = [w for w in v2 if w not in low]
    f = [_unit(d1, a) for a in range(d1)]
    weights = [_concat(w, fa) for w in allowed for fa in f]
    return CollapsingData((BaseFactor(t, _isotropic_nodes(kind, m, s)), BaseFactor(_gl(d1))),
                          tuple(weights), d1 * d2)


def mixed_triple_collapsing(kind, d1, d2, r, d):
    """The W over SGr(d, V2) x F(r-d, r, V1) resolving O_{r,d}."""
    m = d2 // 2
    if not (0 <= d <= m and d <= r <= min(d1, d2) and d2 - r >= d):
        raise CatalogError(f"no orbit O_({r},{d}) for d1={d1}, d2={d2}")
    t, v2 = _classical(kind, m)
    top = {tuple(_unit(m, i)) for i in range(d)}
    low = {tuple(_unit(m, i, -1)) for i in range(d)}
    weights = []
    for a in range(r):
        for w in v2:
            if w in low:
                continue
            if a >= r - d and w not in top:
                continue
            weights.append(_concat(w, _unit(d1, a)))
    gl_nodes = tuple(sorted({k for k in (r - d, r) if 0 < k < d1}))
    iso_nodes = _isotropic_nodes(kind, m, d) if d > 0 else ()
    return CollapsingData((BaseFactor(t, iso_nodes), BaseFactor(_gl(d1), gl_nodes)),
                          tuple(weights), d1 * d2)


def mixed_collapsing(d1, d2):
    """The crepant collapsing behind ``mixed(d1,d2)``."""
    return isotropic_hom_collapsing("C", d1, d2, d1 - 1)


def collapsing_for(case_id):
    builders = {
        "e6a2.Y5": e6a2_collapsing,
        "e7a3.Y4": lambda: e7a3_collapsing("Y4"),
        "e7a3.Y10": lambda: e7a3_collapsing("Y10"),
        "e7a6.Y8": lambda: e7a6_collapsing("Y8"),
        "e7a6.Y13": lambda: e7a6_collapsing("Y13"),
        "e8a2.Y4": lambda: e8a2_collapsing("Y4"),
        "e8a2.Y25": lambda: e8a2_collapsing("Y25"),
        "d4a2": d4a2_collapsing,
    }
    if case_id in builders:
        return builders[case_id]()
    m = re.fullmatch(r"mixed\((\d+),(\d+)\)", case_id)
    if m:
        return mixed_collapsing(int(m.group(1)), int(m.group(2)))
    raise CatalogError(f"no collapsing data for {case_id!r}")


# ------------------------------------------------------------------ N routes

def derive_n(case):
    """Recompute N along the route the record names."""
    if case.n_source == "index":
        return n_from_index(*case.index)
    if case.n_source == "crepant":
        return n_from_crepant_collapsing(collapsing_for(case.case_id))
    if case.n_source == "resolution":
        if case.resolution:
            from .resolutions import catalog_resolution
            return catalog_resolution(case.resolution).last_degree
        return case.n
    return case.n


# ------------------------------------------------------------------ dimensions

@dataclass(frozen=True)
class DimensionReport:
    codim: int
    sing_codim: SingCodim
    ambient_dim: int


def dimension_report(case_id, ranks=None):
    """(codim, sing codim, dim V) for a case, checking ranks against the template."""
    case = case_info(case_id) if isinstance(case_id, str) else case_id
    if ranks:
        for name, r in ranks.items():
            want = case.generators.get(name)
            if want is None:
                raise CatalogError(f"{case.case_id} has no generator {name!r}")
            if want != r:
                raise CatalogError(f"{name} has rank {want} in {case.case_id}, not {r}")
    return DimensionReport(case.codim, case.sing_codim, case.ambient_dim)

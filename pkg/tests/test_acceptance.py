"""Acceptance criteria 1-9, one check per criterion.

Each check returns (passed, detail) and is timed against its budget.  Under
pytest every criterion prints a single PASS/FAIL line; ``python
tests/test_acceptance.py`` prints the same lines without pytest.
"""
import random
import sys
import time
from math import comb

import pytest
import sympy

from odlcalc import bundles as B
from odlcalc.bott import bott_gl, verify_weyman_vanishing
from odlcalc.bundles import Generator, LineClass, LineGen
from odlcalc.chow import (chow_ring, chow_space, degeneracy_class, formal_space, hrr_euler_characteristic,
                          integrate, porteous_oracle, to_elementary, top_chern_class)
from odlcalc.lie_core import LieError
from odlcalc.odl_catalog import (CatalogError, case_info, catalogued_ids, collapsing_for,
                                 crepancy_check, derive_canonical, derive_n, e8a2_collapsing,
                                 isotropic_hom_collapsing, mixed_triple_collapsing, n_from_index,
                                 solve_canonical_exponents)
from odlcalc.partitions import Partition, cauchy_rank, lr_product, partitions_of, schur_dim
from odlcalc.resolutions import (catalog_resolution, check_gorenstein_shape, eagon_northcott,
                                 hilbert_numerator, relative_instance)
from odlcalc.search_cli import SearchConfig, reproduce_paper_examples, search
from odlcalc.spaces import parse_space


# ------------------------------------------------------------------ 1

def index_suite():
    expected = {("D5", 5): 8, ("D6", 6): 22, ("E6", 1): 15, ("C3", 3): 10, ("D7", 7): 52,
                ("E7", 7): 38}
    bad = {k: n_from_index(*k) for k, v in expected.items() if n_from_index(*k) != v}
    catalogued = {"e8a1.Y42": 52, "e8a1.Y29": 44, "e8a1.Y14": 32, "e8a1.Y10": 28,
                  "e8a6.Y9": 24, "e8a7.Y7": 18, "e8a7.Y25": 36, "e8a8.Y28": 38}
    for cid, n in catalogued.items():
        got = derive_n(case_info(cid))
        if got != n:
            bad[cid] = got
    return not bad, f"{len(expected) + len(catalogued)} values" if not bad else f"mismatch {bad}"


# ------------------------------------------------------------------ 2

def exponent_suite():
    spin12 = solve_canonical_exponents(22, B.spinor_bundle(Generator("E", 6), "L"))
    ok = spin12 == LineClass({"L": 33, "det E": 11})
    ok &= derive_canonical(case_info("e7a6.Y13")) == LineClass({"det E": 10, "det F": 10, "L": 15})
    wrong = [cid for cid in catalogued_ids()
             if derive_canonical(case_info(cid)) != case_info(cid).canonical]
    return ok and not wrong, f"(33,11), (10,10,15), {len(catalogued_ids())} cases re-derived" \
        if not wrong else f"re-derivation differs for {wrong}"


# ------------------------------------------------------------------ 3

DISPLAYS = ["e6a1.Y5", "e6a2.Y5", "e7a1.Y7", "e8a1.Y5", "e8a2.Y4", "e8a7.Y4", "f4a1.Y7"]


def resolution_suite():
    problems = []
    for cid in DISPLAYS:
        r = catalog_resolution(cid)
        try:
            hilbert_numerator(r)
        except Exception as exc:  # any failure here is a transcription error
            problems.append(f"{cid}: {exc}")
        if not check_gorenstein_shape(r)[0]:
            problems.append(f"{cid}: shape")
    for f in range(2, 6):
        for e in range(f, f + 4):
            if check_gorenstein_shape(eagon_northcott(e, f))[0] != (e == f):
                problems.append(f"EN({e},{f})")
    return not problems, "7 displays, EN(e,f) 2 <= f <= 5" if not problems else "; ".join(problems)


# ------------------------------------------------------------------ 4

S10_DISPLAY = ("e1**3*e2 - e1**2*e3 + e1*e4 - e5 + 2*e1**4*l + 2*e1**2*e2*l + 2*e4*l"
               " + 8*e1**3*l**2 + 2*e1*e2*l**2 + 2*e3*l**2 + 12*e1**2*l**3 + 2*e2*l**3"
               " + 8*e1*l**4 + 2*l**5")


def chern_suite():
    res = catalog_resolution("e6a1.Y5")
    terms = relative_instance(res)
    space = formal_space({"E": 5}, ["L"], maxdeg=5)
    cls = to_elementary(degeneracy_class(terms, space, codim=5))
    class_ok = sympy.expand(cls - sympy.sympify(S10_DISPLAY)) == 0
    gr = chow_space("Gr(2,6)")
    sym = B.space_symbols(parse_space("Gr(2,6)"))
    c4 = top_chern_class(B.parse_bundle("(tensor (dual U) (dual U))", sym), gr)
    points = integrate(c4 * c4)
    failed = [(e, f, r) for e in range(1, 5) for f in range(1, 5) for r in range(min(e, f))
              if not porteous_oracle(e, f, r)["pass"]]
    ok = class_ok and points == 32 and not failed
    return ok, f"S10 class {'equal' if class_ok else 'DIFFERENT'}, points {points}, " \
               f"Porteous failures {failed}"


# ------------------------------------------------------------------ 5

def bott_suite():
    reports = [verify_weyman_vanishing(d1, d2, 8) for d1, d2 in [(3, 4), (4, 6), (4, 5)]]
    ok = all(r["pass"] for r in reports)
    for n in range(1, 5):
        space = parse_space(f"P{n}")
        for k in range(-n - 4, 4):
            res = bott_gl((k,) + (0,) * n)
            ok &= res.euler_contribution() == hrr_euler_characteristic(B.line_bundle({"h1": k}), space)
            dual = bott_gl((-k - n - 1,) + (0,) * n)
            ok &= dual.module_dim == res.module_dim and (res.vanishing or dual.degree == n - res.degree)
    return ok, "Weyman (3,4), (4,6), (4,5) to j = 8; Serre and HRR on P1..P4"


# ------------------------------------------------------------------ 6

def _triple_crepant():
    out = []
    for kind in "CBD":
        for d2 in range(2, 9):
            if (d2 % 2 == 1) != (kind == "B"):
                continue
            for d1 in range(2, 9):
                for r in range(min(d1, d2) + 1):
                    for d in range(1, d2 // 2 + 1):
                        try:
                            cd = mixed_triple_collapsing(kind, d1, d2, r, d)
                        except (CatalogError, LieError):
                            continue
                        if crepancy_check(cd):
                            out.append((kind, d1, d2, r, d))
    return out


def crepancy_suite():
    parts = {
        "E25": crepancy_check(e8a2_collapsing("Y25")),
        "E4/E10": crepancy_check(collapsing_for("e7a3.Y4")) and crepancy_check(collapsing_for("e7a3.Y10")),
    }
    skew_ok = True
    for d2 in range(4, 9, 2):
        for d1 in range(2, 9):
            for r in range(d2):
                try:
                    cd = isotropic_hom_collapsing("C", d1, d2, r)
                except CatalogError:
                    continue
                skew_ok &= crepancy_check(cd) == (d1 == r + 1)
    parts["skew"] = skew_ok
    crepant = _triple_crepant()
    parts["triple never crepant"] = not crepant
    detail = ", ".join(f"{k} {'ok' if v else 'FAILS'}" for k, v in parts.items())
    if crepant:
        detail += f"; crepant triple-base cases {crepant}"
    return all(parts.values()), detail


# ------------------------------------------------------------------ 7

def _random_tree(rng, depth):
    leaves = [Generator("E", 2), Generator("F", 3), LineGen("L"), B.trivial(1)]
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(leaves)
    op = rng.randrange(7)
    child = _random_tree(rng, depth - 1)
    if op == 0:
        return B.Dual(child)
    if op == 1:
        return B.Sum((child, _random_tree(rng, depth - 1)))
    if op == 2:
        return B.Tensor((child, _random_tree(rng, depth - 1)))
    if op == 3:
        return B.Wedge(rng.randint(1, 3), child)
    if op == 4:
        return B.Sym(rng.randint(1, 2), child)
    if op == 5:
        return B.Schur(Partition(rng.choice([(2, 1), (1, 1), (2,)])), child)
    return B.Twist(child, LineClass({"L": rng.randint(-2, 2), "det E": rng.randint(-1, 1)}))


def determinant_suite():
    e5 = B.det_expr(B.spinor_bundle(Generator("E", 5), "L")) == LineClass({"det E": 8, "L": 12})
    e6 = B.det_expr(B.spinor_bundle(Generator("E", 6), "L")) == LineClass({"det E": 16, "L": 48})
    rng = random.Random(20260)
    checked, failures = 0, []
    while checked < 200:
        tree = _random_tree(rng, 3)
        if not 1 <= B.rank(tree) <= 6:
            continue
        env = B.formal_env(B.Sum((tree, Generator("E", 2), Generator("F", 3), LineGen("L"))))
        if env.line_weight(B.det_expr(tree)) != B.det_via_character(tree, env):
            failures.append(tree)
        checked += 1
    return e5 and e6 and not failures, f"spinor e=5,6 {'ok' if e5 and e6 else 'WRONG'}, " \
                                       f"{checked} trees, {len(failures)} disagreements"


# ------------------------------------------------------------------ 8

def example_suite():
    reports = reproduce_paper_examples(with_search=True, with_extra=True)
    entries = sum(len(r.entries) for r in reports)
    chis = [e.extra["chi"]["value"] for r in reports for e in r.entries
            if "value" in e.extra.get("chi", {})]
    failed = [r.name for r in reports if not r.passed]
    ok = not failed and len(chis) == 5 and set(chis) == {2}
    return ok, f"{len(reports)} lists, {entries} entries, chi values {chis}" + \
        (f", failing {failed}" if failed else "")


# ------------------------------------------------------------------ 9

def property_suite():
    groups = {}
    small = [p for d in range(4) for p in partitions_of(d)]
    groups["LR/Cauchy"] = all(
        sum(m * schur_dim(nu, n) for nu, m in lr_product(a, b).items()) == schur_dim(a, n) * schur_dim(b, n)
        for n in range(1, 5) for a in small for b in small) and all(
        cauchy_rank(j, a, b) == comb(a * b, j) for a in range(1, 4) for b in range(1, 4) for j in range(6))
    groups["Poincare"] = all(chow_ring(s).is_unimodular()
                             for s in ["P3", "P1xP2", "Gr(2,4)", "Gr(2,5)", "Gr(3,6)", "Quadric(5)", "IGr(2,4)"])
    sym_ok = True
    for cid in DISPLAYS + ["e8a8.Y11"]:
        r = catalog_resolution(cid)
        for i in range(r.codim + 1):
            sym_ok &= sorted(t.degree for t in r.terms[i]) == \
                sorted(r.last_degree - t.degree for t in r.terms[r.codim - i])
    groups["twist symmetry"] = sym_ok
    base = dict(max_factors=2, max_vector_dim=5, whitelist=("O(1)", "Q", "U*"), max_summands=3)
    one = search(SearchConfig(spaces=("Gr(2,4)xIGr(2,5)", "P3xP3xP3"), **base), "e6a1.Y5")
    two = search(SearchConfig(spaces=("IGr(2,5)xGr(2,4)", "P3xP3xP3"), **base), "e6a1.Y5")
    groups["search determinism"] = bool(one) and [c.key() for c in one] == [c.key() for c in two]
    detail = ", ".join(f"{k} {'ok' if v else 'FAILS'}" for k, v in groups.items())
    return all(groups.values()), detail


CRITERIA = [
    (1, "index/N", index_suite, 1),
    (2, "exponent solver", exponent_suite, 10),
    (3, "resolutions", resolution_suite, 5),
    (4, "Chern classes", chern_suite, 10),
    (5, "Bott", bott_suite, 30),
    (6, "crepancy", crepancy_suite, 5),
    (7, "determinants", determinant_suite, 5),
    (8, "example lists", example_suite, 60),
    (9, "properties", property_suite, 60),
]


def run_criterion(number, name, check, budget):
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    in_time = elapsed < budget
    passed = ok and in_time
    line = (f"criterion {number} ({name}): {'PASS' if passed else 'FAIL'} "
            f"[{elapsed:.2f}s / {budget}s] {detail}")
    return passed, line


@pytest.mark.parametrize("number,name,check,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, check, budget, capsys):
    passed, line = run_criterion(number, name, check, budget)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

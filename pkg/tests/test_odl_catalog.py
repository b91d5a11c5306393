import pytest
from hypothesis import given, strategies as st

from odlcalc import bundles as B
from odlcalc.bundles import Generator, LineClass
from odlcalc.lie_core import LieError
from odlcalc.odl_catalog import (CatalogError, case_info, catalogued_ids, collapsing_for,
                                 crepancy_check, derive_canonical, derive_n, dimension_report,
                                 e8a2_collapsing, isotropic_hom_collapsing, mixed_triple_collapsing,
                                 n_from_crepant_collapsing, n_from_index, non_gorenstein_cases,
                                 question_metadata, solve_canonical_exponents)

# crepant triple-base collapsings with d2 <= 8 (kind, d1, d2, r, d); all have r = d1
TRIPLE_CREPANT = [("B", 2, 5, 2, 2), ("B", 3, 5, 3, 1), ("B", 3, 7, 3, 3), ("B", 5, 7, 5, 1),
                  ("D", 4, 6, 4, 1), ("D", 6, 8, 6, 1)]


# ------------------------------------------------------------------ N routes

@pytest.mark.parametrize("lie_type,node,n", [
    ("D5", 5, 8), ("D6", 6, 22), ("E6", 1, 15), ("C3", 3, 10), ("D7", 7, 52),
    ("E7", 7, 38), ("A5", 3, 14), ("A7", 3, 48), ("A4", 2, 5),
])
def test_n_from_index(lie_type, node, n):
    assert n_from_index(lie_type, node) == n


@pytest.mark.parametrize("case_id,n", [
    ("e8a1.Y10", 28), ("e8a1.Y14", 32), ("e8a1.Y29", 44), ("e8a1.Y42", 52),
    ("e8a6.Y9", 24), ("e8a7.Y7", 18), ("e8a7.Y25", 36), ("e8a8.Y28", 38),
    ("e6a1.Y5", 8), ("e7a1.Y16", 22), ("e7a7.Y10", 15), ("f4a1.Y7", 10),
])
def test_catalogued_last_twists(case_id, n):
    case = case_info(case_id)
    assert case.n == n and derive_n(case) == n


@pytest.mark.parametrize("case_id", catalogued_ids())
def test_every_n_rederives(case_id):
    case = case_info(case_id)
    assert derive_n(case) == case.n


@pytest.mark.parametrize("case_id,n", [
    ("e6a2.Y5", 10), ("e7a3.Y4", 12), ("e7a3.Y10", 18), ("e7a6.Y8", 16), ("e8a2.Y25", 40),
    ("d4a2", 6), ("mixed(3,4)", 6), ("mixed(4,6)", 12),
])
def test_n_from_crepant_collapsings(case_id, n):
    assert n_from_crepant_collapsing(collapsing_for(case_id)) == n


def test_n_needs_a_crepant_collapsing():
    with pytest.raises(CatalogError):
        n_from_crepant_collapsing(collapsing_for("e7a6.Y13"))


# ------------------------------------------------------------------ exponent solver

def test_spinor_twelve_exponents():
    rep = B.spinor_bundle(Generator("E", 6), "L")
    assert solve_canonical_exponents(22, rep) == LineClass({"L": 33, "det E": 11})


def test_e7_sixth_node_exponents():
    case = case_info("e7a6.Y13")
    assert derive_canonical(case) == LineClass({"det E": 10, "det F": 10, "L": 15})


def test_hypersurface_toy():
    assert solve_canonical_exponents(1, B.LineGen("L")) == LineClass({"L": 1})


def test_fifty_six_with_square_root_relation():
    case = case_info("e8a8.Y28")
    assert case.relations == {"det E": {"L": 2}}
    assert derive_canonical(case) == LineClass({"L": 19})


@pytest.mark.parametrize("case_id", catalogued_ids())
def test_every_canonical_rederives(case_id):
    case = case_info(case_id)
    assert derive_canonical(case) == case.canonical


@given(st.integers(2, 8), st.integers(1, 7))
def test_square_determinantal_canonical(e, r):
    if r >= e:
        return
    case = case_info(f"det({e},{r})")
    assert derive_canonical(case) == case.canonical


@pytest.mark.parametrize("k,e", [(2, 5), (2, 6), (3, 6), (3, 7), (2, 8)])
def test_grassmannian_cones(k, e):
    case = case_info(f"grass_cone({k},{e})")
    assert derive_n(case) == case.n
    assert derive_canonical(case) == case.canonical


# ------------------------------------------------------------------ crepancy

def test_e25_is_crepant():
    assert crepancy_check(e8a2_collapsing("Y25"))


def test_e4_and_e10_are_crepant():
    assert crepancy_check(collapsing_for("e7a3.Y4"))
    assert crepancy_check(collapsing_for("e7a3.Y10"))


def test_non_crepant_collapsings():
    assert not crepancy_check(collapsing_for("e7a6.Y13"))
    assert not crepancy_check(collapsing_for("e8a2.Y4"))


def _skew_sweep():
    for d2 in range(4, 9, 2):
        for d1 in range(2, 9):
            for r in range(d2):
                try:
                    yield d1, d2, r, isotropic_hom_collapsing("C", d1, d2, r)
                except CatalogError:
                    continue


def test_skew_hom_crepant_exactly_when_d1_is_r_plus_one():
    seen = 0
    for d1, d2, r, cd in _skew_sweep():
        assert crepancy_check(cd) == (d1 == r + 1), (d1, d2, r)
        seen += 1
    assert seen == 63


def _triple_sweep():
    for kind in "CBD":
        for d2 in range(2, 9):
            if (d2 % 2 == 1) != (kind == "B"):
                continue
            for d1 in range(2, 9):
                for r in range(min(d1, d2) + 1):
                    for d in range(1, d2 // 2 + 1):
                        try:
                            yield (kind, d1, d2, r, d), mixed_triple_collapsing(kind, d1, d2, r, d)
                        except (CatalogError, LieError):
                            continue


def test_triple_base_crepant_cases_are_exactly_the_frozen_list():
    crepant = [params for params, cd in _triple_sweep() if crepancy_check(cd)]
    assert sorted(crepant) == TRIPLE_CREPANT
    assert all(r == d1 for _, d1, _, r, _ in crepant)


def test_crepant_implies_gorenstein():
    for case_id in ["e6a2.Y5", "e7a3.Y4", "e7a3.Y10", "e7a6.Y8", "e8a2.Y25", "d4a2", "mixed(3,4)"]:
        if crepancy_check(collapsing_for(case_id)):
            assert case_info(case_id).gorenstein


# ------------------------------------------------------------------ dimensions and families

def test_dimension_reports():
    rep = dimension_report("e6a1.Y5")
    assert (rep.codim, rep.sing_codim.value, rep.ambient_dim) == (5, 11, 16)
    rep = dimension_report("d4a2")
    assert (rep.codim, rep.sing_codim.value, rep.ambient_dim) == (4, 4, 8)
    assert dimension_report("e6a1.Y5", {"E": 5}).codim == 5
    with pytest.raises(CatalogError):
        dimension_report("e6a1.Y5", {"E": 6})
    with pytest.raises(CatalogError):
        dimension_report("e6a1.Y5", {"G": 2})


@given(st.integers(2, 9), st.integers(0, 8))
def test_symmetric_family(e, r):
    if r >= e:
        return
    k = e - r
    if k % 2 == 0:
        with pytest.raises(CatalogError):
            case_info(f"sym({e},{r})")
        return
    case = case_info(f"sym({e},{r})")
    # rank <= r symmetric matrices have dimension r e - r (r - 1) / 2
    assert case.codim == e * (e + 1) // 2 - (r * e - r * (r - 1) // 2)
    assert case.printed["codim"] == k * (k + 1)
    assert derive_canonical(case) == case.canonical


@given(st.integers(3, 10), st.integers(0, 4))
def test_skew_family(e, half):
    r = 2 * half
    if r > e - 2:
        return
    case = case_info(f"skew({e},{r})")
    assert case.codim == e * (e - 1) // 2 - (r * e - r * (r + 1) // 2)
    assert derive_canonical(case) == case.canonical


def test_unknown_cases():
    for bad in ["e9a1.Y1", "sym(4,2)", "skew(5,1)", "grass_cone(1,4)", "mixed(3,3)"]:
        with pytest.raises(CatalogError):
            case_info(bad)


def test_singularity_flags():
    assert case_info("e6a2.Y5").sing_codim.value is None
    assert str(case_info("e6a2.Y5").sing_codim) == "unknown"
    assert case_info("e8a8.Y11").sing_codim.at_least
    assert str(case_info("e7a6.Y8").sing_codim) == ">= 5"


def test_gorenstein_question_metadata():
    q = question_metadata()
    assert q["status"] == "open"
    assert {c["id"] for c in non_gorenstein_cases()} == {"cn_veronese", "g2a2"}
    assert set(q["non_examples"]) == {"cn_veronese", "g2a2"}

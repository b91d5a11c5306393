import json

import pytest

from odlcalc import bundles as B
from odlcalc.bundles import LineClass
from odlcalc.search_cli import (EXAMPLE_LISTS, Candidate, SearchConfig, SearchError,
                                candidate_spaces, check_candidate, factor_pool, globally_generated,
                                main, normalize, reproduce_list, search)
from odlcalc.spaces import parse_space


def _expr(text, space):
    return B.parse_bundle(text, B.space_symbols(parse_space(space)))


def _spec(name):
    return next(s for s in EXAMPLE_LISTS if s["name"] == name)


# ------------------------------------------------------------ check_candidate

def test_triple_projective_space_entry_passes():
    cand = Candidate.build("e6a1.Y5", "P3xP3xP3", {"E": "(sum Q1 (O 0 1 0) (O 0 0 1))"})
    verdict = check_candidate(cand, 4)
    assert verdict.passed and verdict.dim == 4
    assert verdict.canonical == LineClass() and verdict.canonical_kind == "trivial"
    assert verdict.singular["locus"] == "empty"


def test_omitted_line_defaults_to_trivial():
    cand = Candidate.build("e6a1.Y5", "P3xP3xP3", {"E": "(sum Q1 (O 0 1 0) (O 0 0 1))"})
    assert dict(cand.assignment)["L"] == "(trivial 1)"


def test_fano_candidate():
    cand = Candidate.build("e6a1.Y5", "P9", {"E": "(trivial 5)"})
    verdict = check_candidate(cand, 4, "negative")
    assert verdict.canonical == LineClass({"h1": -10})
    assert verdict.canonical_kind == "negative" and verdict.passed
    assert not check_candidate(cand, 4, "trivial").passed


def test_wrong_dimension_fails():
    cand = Candidate.build("e6a1.Y5", "P3xP3xP3", {"E": "(sum Q1 (O 0 1 0) (O 0 0 1))"})
    verdict = check_candidate(cand, 5)
    assert not verdict.dim_ok and not verdict.passed


def test_rank_mismatch_is_an_error():
    cand = Candidate.build("e6a1.Y5", "P9", {"E": "(trivial 4)"})
    with pytest.raises(SearchError):
        check_candidate(cand, 4)


def test_unknown_generator_and_target():
    with pytest.raises(SearchError):
        check_candidate(Candidate.build("e6a1.Y5", "P9", {"E": "(trivial 5)", "G": "(trivial 1)"}), 4)
    with pytest.raises(SearchError):
        check_candidate(Candidate.build("e6a1.Y5", "P9", {"E": "(trivial 5)"}), 4, "positive")


@pytest.mark.parametrize("text,expected", [
    ("Q", True), ("(dual U)", True), ("U", False), ("(O 1)", True), ("(O -1)", False),
    ("(sum Q (O 2))", True), ("(tensor (dual U) Q)", True), ("(wedge 2 Q)", True),
    ("(dual Q)", False), ("(trivial 3)", True),
])
def test_global_generation_whitelist(text, expected):
    assert globally_generated(_expr(text, "Gr(2,5)"), parse_space("Gr(2,5)")) is expected


# ------------------------------------------------------------ normalization and search

def test_normalize_forgets_factor_order():
    a = Candidate.build("e6a1.Y5", "Gr(2,4)xIGr(2,5)", {"E": "(sum Q1 Q2)"})
    b = Candidate.build("e6a1.Y5", "IGr(2,5)xGr(2,4)", {"E": "(sum Q2 Q1)"})
    assert normalize(a).key() == normalize(b).key()


def test_normalize_identical_factors():
    a = Candidate.build("e6a1.Y5", "P3xP3xP3", {"E": "(sum (O 1 0 0) Q3 (O 0 1 0))"})
    b = Candidate.build("e6a1.Y5", "P3xP3xP3", {"E": "(sum Q1 (O 0 1 0) (O 0 0 1))"})
    assert normalize(a).key() == normalize(b).key()


def test_factor_pool_bounds():
    pool = {str(f) for f in factor_pool(SearchConfig(max_vector_dim=8))}
    # factors are bounded by the dimension of the underlying vector space
    assert {"P1", "P7", "Gr(2,4)", "Gr(4,8)", "IGr(2,4)", "Q5", "Q6"} <= pool
    assert not {"P8", "Q4", "Q7", "Gr(1,4)", "I2Gr(3,8)"} & pool
    assert "I2Gr(3,8)" in {str(f) for f in factor_pool(SearchConfig(max_vector_dim=8, bisymplectic=True))}


def test_candidate_spaces_are_sorted_and_sliced():
    spaces = candidate_spaces(SearchConfig(max_factors=1, max_vector_dim=7, isotropic=False), 5)
    names = [str(s) for s in spaces]
    assert names == sorted(names)
    assert "P5" in names and "P6∩H" in names and "Gr(2,5)∩Q" in names
    assert all(parse_space(n).dim == 5 for n in names)


def test_empty_whitelist_finds_nothing_nontrivial():
    cfg = SearchConfig(whitelist=(), max_vector_dim=9, max_factors=1, max_slices=0)
    hits = search(cfg, "e6a1.Y5")
    assert hits == []


@pytest.mark.parametrize("spec_name", [s["name"] for s in EXAMPLE_LISTS])
def test_every_list_entry_is_found(spec_name):
    report = reproduce_list(_spec(spec_name), with_search=True, with_extra=False)
    assert report.passed
    assert all(e.in_search for e in report.entries)


def test_search_ignores_factor_order_of_given_spaces():
    base = dict(max_factors=2, max_vector_dim=5, whitelist=("O(1)", "Q", "U*"), max_summands=3)
    one = SearchConfig(spaces=("Gr(2,4)xIGr(2,5)", "P3xP3xP3"), **base)
    two = SearchConfig(spaces=("IGr(2,5)xGr(2,4)", "P3xP3xP3"), **base)
    first = [c.key() for c in search(one, "e6a1.Y5")]
    assert first and first == [c.key() for c in search(two, "e6a1.Y5")]


def test_parallel_search_matches_serial():
    cfg = SearchConfig(**_spec("e6a1.Y5 fourfolds")["config"])
    serial = [c.key() for c in search(cfg, "e6a1.Y5")]
    cfg.workers = 2
    assert [c.key() for c in search(cfg, "e6a1.Y5")] == serial


def test_config_round_trip():
    cfg = SearchConfig(max_factors=2, fixed={"E2": "(trivial 4)"}, whitelist=["Q"])
    again = SearchConfig.from_json(json.loads(json.dumps(cfg.to_json())))
    assert again == cfg


# ------------------------------------------------------------ command line

def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    return code, out


def test_cli_det(capsys):
    code, out = _run(capsys, "det", "--expr", "(spin + (gen E 5) L)")
    assert code == 0 and json.loads(out[0]) == {"L": 12, "det E": 8}
    code, out = _run(capsys, "det", "--expr", "(wedge 2 U)", "--space", "Gr(2,5)")
    assert json.loads(out[0]) == {"h1": -1}


def test_cli_chi(capsys):
    code, out = _run(capsys, "chi", "--space", "Gr(2,6)", "--bundle", "(tensor (dual U) (dual U))")
    assert code == 0 and json.loads(out[0])["chi"] == 12
    code, out = _run(capsys, "chi", "--space", "P3", "--bundle", "(O 4)", "--holomorphic")
    assert json.loads(out[0])["chi"] == 2


def test_cli_class(capsys):
    code, out = _run(capsys, "class", "--case", "s10", "--formal")
    record = json.loads(out[0])
    assert code == 0 and record["codim"] == 5 and record["class"].endswith("2*l**5")


def test_cli_hilbert_and_bott(capsys):
    code, out = _run(capsys, "hilbert", "--case", "EN(3,2)")
    record = json.loads(out[0])
    assert record["gorenstein"] is False and record["numerator"] == [1, 2]
    code, out = _run(capsys, "bott", "--gl", "(-2,0)")
    assert json.loads(out[0])["degree"] == 1


def test_cli_catalog_and_errors(capsys):
    code, out = _run(capsys, "catalog", "--list")
    assert code == 0 and json.loads(out[0])["id"] == "e6a1.Y5"
    code, _ = _run(capsys, "catalog", "--case", "nope")
    assert code == 2
    code, _ = _run(capsys, "det", "--expr", "(wedge 2)")
    assert code == 2


def test_cli_search_emits_one_record_per_candidate(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(_spec("e8a1.Y5 fourfold")["config"]))
    code, out = _run(capsys, "search", "--case", "e8a1.Y5", "--config", str(cfg))
    assert code == 0 and len(out) == 1 and json.loads(out[0])["passed"]


def test_cli_reproduce_without_search(capsys):
    code, out = _run(capsys, "reproduce", "--no-search")
    assert code == 0
    records = [json.loads(line) for line in out if line.startswith("{")]
    assert len(records) == 20 and all(r["entry_passed"] for r in records)

# test_analysis.py

import pytest

from analysis import (
    Column, build_column, column_pair, column_rows, column_type, detect_z_star, free_trees,
    french_horn, is_rrp, prepend_a, rrp_search, stirling1, stirling2, tree_counts,
    tree_is_alternating, tree_link_braid, tree_report, unknotting_lower_bound, unknotting_number,
    weighted_sum,
)
from braid_core import (
    InsufficientCatalogDepth, ResourceBudgetExceeded, components, format_braid, mirror, parse_braid,
)
from catalog import Catalog, CatalogEntry, load_palindromes
from enumeration import enumerate_catalog
from invariants import alexander, homfly, identity_key
from laurent import BiPoly, UniPoly

###################
# Unknotting
###################


@pytest.mark.parametrize("braid, expected", [
    ("AAA", 1),
    ("AbAb", 1),
    ("AAAAA", 2),
    ("AAAAAAA", 3),
    ("AAABaaBBCbC", 1),
    ("AAAAAbAbcBc", 2),
])
def test_unknotting_number(braid, expected):
    assert unknotting_number(parse_braid(braid)) == expected


def test_unknotting_lower_bound():
    assert unknotting_lower_bound(parse_braid("AAAAAAA")) == 3
    assert unknotting_lower_bound(parse_braid("AbAb")) == 0


def test_unknotting_budget_exceeded():
    with pytest.raises(ResourceBudgetExceeded) as excinfo:
        unknotting_number(parse_braid("AAAAAAA"), budget=2)
    assert excinfo.value.lower_bound == 3
    assert excinfo.value.limit == 2


def test_unknotting_stops_at_first_unlink(mocker):
    check = mocker.patch('analysis.is_unlink', return_value=True)
    assert unknotting_number(parse_braid("AAAAA")) == 2
    check.assert_called_once()


def test_unknotting_parallel_agrees():
    word = parse_braid("AAAAAAA")
    assert unknotting_number(word, jobs=2) == unknotting_number(word)


def test_unknotting_matches_fixture(fixture_rows):
    checked = 0
    for row in fixture_rows:
        if row.table != 'table1' or not row.trusted or row.unknotting is None:
            continue
        word = row.word()
        if word.crossings > 7:
            continue
        assert unknotting_number(word) == row.unknotting, row.tag
        checked += 1
    assert checked >= 5


@pytest.mark.slow
def test_unknotting_matches_fixture_through_nine_crossings(fixture_rows):
    checked = 0
    for row in fixture_rows:
        if row.table != 'table1' or not row.trusted or row.unknotting is None:
            continue
        if row.link_crossings > 9:
            continue
        assert unknotting_number(row.word()) == row.unknotting, row.tag
        checked += 1
    assert checked > 60


###################
# Palindromes
###################


def test_rrp_search_finds_rotation():
    witness = rrp_search(parse_braid("AAbAbbAb"))
    assert witness == parse_braid("AbbAbAAb")
    assert is_rrp(witness)


def test_rrp_search_returns_palindrome_unchanged():
    word = parse_braid("AbbAbAAb")
    assert rrp_search(word) is word


def test_rrp_search_on_chiral_knot_is_inconclusive():
    assert rrp_search(parse_braid("AAA"), 50) is None


def test_palindrome_table(fixture_rows):
    for row in load_palindromes():
        palindrome = parse_braid(row.palindrome)
        assert is_rrp(palindrome), f"{row.tag} palindrome is not one"
        assert not is_rrp(parse_braid(row.braid)), row.tag
        assert row.braid == fixture_rows.by_tag[row.tag].braid, row.tag
        assert alexander(palindrome).poly == alexander(parse_braid(row.braid)).poly, row.tag
        assert identity_key(palindrome) == identity_key(parse_braid(row.braid)), row.tag


PALINDROMIC_KNOTS = ['4:1-01', '6:1-02', '8:1-05', '8:1-07', '8:1-08', '8:1-09', '10:1-009',
                     '10:1-017', '10:1-020', '10:1-023', '10:1-028', '10:1-031', '10:1-033']
PALINDROMIC_LINKS = ['6:3-02', '8:3-05a']


def test_palindromic_minimum_braids(fixture_rows):
    found = [row.tag for row in fixture_rows
             if row.table in ('table1', 'table2') and row.trusted and is_rrp(row.word())]
    assert found == PALINDROMIC_KNOTS + PALINDROMIC_LINKS


@pytest.mark.parametrize("tag", [
    *PALINDROMIC_KNOTS[:6], *PALINDROMIC_LINKS,
    *(pytest.param(tag, marks=pytest.mark.slow) for tag in PALINDROMIC_KNOTS[6:]),
])
def test_palindromic_braids_have_amphicheiral_keys(fixture_rows, tag):
    word = fixture_rows.by_tag[tag].word()
    assert identity_key(word) == identity_key(mirror(word)), tag


def test_french_horn():
    word = french_horn(2)
    assert (word.crossings, word.strands, components(word)) == (16, 5, 1)
    for n in range(1, 11):
        assert is_rrp(french_horn(n)), f"french horn {n}"
    with pytest.raises(ValueError):
        french_horn(0)


###################
# Trees
###################


def test_free_tree_counts():
    assert [len(free_trees(n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    assert tree_counts(10) == [1, 1, 1, 2, 3, 6, 10, 20, 36, 72]


def test_tree_report():
    report = tree_report(10)
    assert [r['nonalternating'] for r in report[-3:]] == [3, 11, 34]
    assert report[6] == {'n': 7, 'total': 11, 'alternating': 10, 'nonalternating': 1}


def test_free_trees_range():
    with pytest.raises(ValueError):
        free_trees(13)
    with pytest.raises(ValueError):
        free_trees(0)


def test_spider_is_not_alternating():
    spiders = [t for t in free_trees(7) if not tree_is_alternating(t)]
    assert len(spiders) == 1
    degrees = sorted(d for _, d in spiders[0].graph().degree())
    assert degrees == [1, 1, 1, 2, 2, 2, 3]


def _tree_by_degrees(n, degrees):
    for tree in free_trees(n):
        if sorted(d for _, d in tree.graph().degree()) == degrees:
            return tree
    raise LookupError(degrees)


@pytest.mark.parametrize("n, degrees, braid", [
    (3, [1, 1, 2], "AAbb"),
    (4, [1, 1, 2, 2], "AAbbCC"),
    (4, [1, 1, 1, 3], "AAbCCb"),
])
def test_tree_link_braids(n, degrees, braid):
    assert format_braid(tree_link_braid(_tree_by_degrees(n, degrees))) == braid


def test_tree_link_invariants():
    for n in range(2, 8):
        for tree in free_trees(n):
            word = tree_link_braid(tree)
            assert components(word) == n, tree.canonical
            assert alexander(word).poly == UniPoly.from_coefficients([-1, 1]) ** (n - 1), \
                tree.canonical


def test_tree_link_needs_an_edge():
    with pytest.raises(ValueError):
        tree_link_braid(free_trees(1)[0])


###################
# Weighted Sums
###################


def test_weighted_sum_examples():
    assert weighted_sum(1, 0) == 1
    assert weighted_sum(2, 0) == 0
    assert weighted_sum(2, 1) == -1
    assert weighted_sum(3, 2) == 2
    assert weighted_sum(3, 3) == 12
    with pytest.raises(ValueError):
        weighted_sum(0, 1)


def test_weighted_sum_laws():
    for M in range(1, 9):
        for j in range(M + 5):
            expected = stirling1(M, 1) * stirling2(j + 1, M) if j >= M - 1 else 0
            assert weighted_sum(M, j) == expected, (M, j)


###################
# Columns
###################


def test_prepend_a():
    assert prepend_a(parse_braid("bAb")) == parse_braid("AbAb")


@pytest.mark.parametrize("seed, code", [
    ("AA", "2a+0o"),
    ("AAbAbb", "3a+0o"),
    ("AABacBc", "4n-1e"),
])
def test_column_type(seed, code):
    column = build_column(parse_braid(seed), 2)
    assert column_type(column) == code
    assert column.type_code == code


def test_column_rows_of_hopf_column():
    rows = column_rows(build_column(parse_braid("AA"), 7))
    assert rows.hx[:2] == [-1, -2]
    assert rows.hx_period == 6
    assert not any(rows.hx_residuals)
    assert rows.hr == (1, 0, 1)


def test_column_rows_figure_eight():
    assert column_rows(build_column(parse_braid("AbAb"), 2)).hr == (-1, 0, 0)


def test_column_rows_three_strand_column():
    rows = column_rows(build_column(parse_braid("AAbAbb"), 6))
    assert rows.al == (5, 13)
    assert rows.hx[:6] == [1, 2, 1, -1, -2, -1]


def test_column_rows_need_two_cells():
    with pytest.raises(ValueError):
        column_rows(build_column(parse_braid("AA"), 0))


def test_hr_skein_identity(small_catalog):
    seeds = [e.word for e in small_catalog if e.strands >= 2 and e.crossings][:20]
    for z in seeds:
        az = prepend_a(z)
        aaz = prepend_a(az)
        assert homfly(prepend_a(aaz)) * BiPoly.y() == homfly(aaz) - homfly(az) * BiPoly.x(), \
            format_braid(z)


@pytest.mark.parametrize("first, second", [
    ("AbAb", "AABaB"),
    ("AAbAbb", "AAABaBB"),
    ("AbACbC", "AABacBc"),
])
def test_column_pairs(first, second):
    a = build_column(parse_braid(first), 2)
    b = build_column(parse_braid(second), 2)
    assert column_pair(a, b)
    assert column_pair(b, a)


def test_column_does_not_pair_with_itself():
    a = build_column(parse_braid("AA"), 2)
    assert not column_pair(a, Column(a.seed, list(a.cells)))


def test_y_star_when_prepending_leaves_minimum_order(mocker):
    seed = parse_braid("AABaabcBDcD")
    successor = prepend_a(seed)
    minimum = parse_braid("AAAbacBaBcb")
    keys = {seed: ('seed',), successor: ('successor',)}
    mocker.patch('analysis.catalog_key', side_effect=lambda w: keys[w])
    mocker.patch('catalog.catalog_key', side_effect=lambda w: keys[w])
    mocker.patch('catalog.homfly', return_value=BiPoly.constant(1))
    catalog = Catalog(12, 5)
    catalog.add(CatalogEntry.from_word(seed, key=('seed',)))
    catalog.add(CatalogEntry.from_word(minimum, key=('successor',)))
    column = build_column(seed, 1, catalog)
    assert [cell.y_star for cell in column.cells] == [False, True]
    assert column.stars == [('y_star', 1)]
    assert column.cells[1].entry.word == successor


def test_build_column_needs_deep_catalog():
    with pytest.raises(InsufficientCatalogDepth):
        build_column(parse_braid("AA"), 3, enumerate_catalog(3))


def test_small_knot_columns_have_no_stars(small_catalog):
    for entry in small_catalog.knots():
        if entry.strands < 2 or entry.crossings > 5:
            continue
        column = build_column(entry.word, 6 - entry.crossings, small_catalog)
        assert column.stars == [], entry.braid


@pytest.mark.parametrize("braid, expected", [
    ("AbaCbaCbdCd", True),
    ("AbaCbaCdCbCd", True),
    ("AAA", False),
    ("AAAAABaB", False),
    ("AAAAAABaB", False),
    ("AbAbCbC", False),
    ("AABaCbC", None),
    ("AAAABaCbC", None),
    ("AAAAAAAAAAAAAAAAAAAAA", None),
])
def test_detect_z_star(fixture_rows, braid, expected):
    assert detect_z_star(parse_braid(braid), fixture_rows) is expected


def test_z_star_marks_next_cell(fixture_rows):
    column = build_column(parse_braid("AbaCbaCbdCd"), 1, fixture=fixture_rows)
    assert column.cells[0].z_star is None
    assert column.cells[1].z_star is True


def test_column_of_five_two_has_no_stars(fixture_rows):
    column = build_column(parse_braid("AAABaB"), 2, enumerate_catalog(7, 3), fixture_rows)
    assert column.stars == []
    assert [cell.z_star for cell in column.cells] == [None, False, False]


def test_untrusted_row_does_not_mark_z_star(fixture_rows):
    successor = fixture_rows.by_tag['10:1-007']
    assert successor.braid == "AAAAbAAAb"
    assert not successor.trusted
    assert fixture_rows.by_tag['8:1-03'].trusted
    assert detect_z_star(parse_braid("AAAbAAAb"), fixture_rows) is None


@pytest.mark.slow
def test_small_knot_seeds_have_no_stars(nine_crossing_catalog, fixture_rows):
    seeds = 0
    for row in fixture_rows:
        if row.table != 'table1' or not row.trusted:
            continue
        word = row.word()
        if word.crossings > 8:
            continue
        column = build_column(word, 1, nine_crossing_catalog, fixture_rows)
        assert column.stars == [], row.tag
        seeds += 1
    assert seeds > 30

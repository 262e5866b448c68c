# test_catalog.py

import json
from dataclasses import replace

import pytest

from braid_core import parse_braid
from catalog import (
    CSV_FIELDS, Catalog, CatalogEntry, CatalogImportError, FixtureFormatError, assign_tags,
    attach_unknotting, export, identify, import_catalog, load_palindromes, parse_fixture, verify,
)
from enumeration import enumerate_catalog
from invariants import catalog_key

HEADER = "tag\ts_cr\tbraid\tap10\tz\td\tu\text_name\tflags\n"


def test_fixture_loads_every_row(fixture_rows):
    assert len(fixture_rows) == 567
    trefoil = fixture_rows.by_tag['3:1-01']
    assert trefoil.braid == "AAA"
    assert (trefoil.strands, trefoil.crossings, trefoil.alternating) == (2, 3, True)
    assert trefoil.components == 1
    assert trefoil.link_crossings == 3
    assert trefoil.table == 'table1'
    assert trefoil.unknotting == 1


def test_fixture_nonalternating_column(fixture_rows):
    row = fixture_rows.by_tag['5:1-02']
    assert not row.alternating
    assert row.z == 1


def test_fixture_flags(fixture_rows):
    row = fixture_rows.by_tag['10:1n146']
    assert not row.trusted
    assert row.flag_value('ocr') == '10:ln146'
    assert row.flag_value('missing') is None


def test_row_for_prefers_trusted(fixture_rows):
    assert fixture_rows.row_for("AAAAA").tag == '5:1-01'
    assert fixture_rows.row_for("AAAAAAAAAAAAAAAAAAAAA") is None


def test_restored_rows_keep_printed_braid(fixture_rows):
    row = fixture_rows.by_tag['6:1-03']
    assert row.braid == "AABacBc"
    assert row.flag_value('printed') == "AABaCbC"
    assert row.trusted


def test_trusted_row_skips_rows_that_do_not_reproduce(fixture_rows):
    assert fixture_rows.by_tag['10:1-007'].exempt('braid')
    assert fixture_rows.trusted_row("AAAAbAAAb") is None
    assert fixture_rows.row_for("AAAAbAAAb").tag == '10:1-007'
    assert fixture_rows.trusted_row("AAAbAAAb").tag == '8:1-03'
    assert fixture_rows.trusted_row("AABaCbC") is None


def test_distinct_requires_trusted_rows(fixture_rows):
    assert fixture_rows.distinct("AAbbCC", "AAbCCb")
    assert not fixture_rows.distinct("AAAAA", "AAAbaaabcBcc")
    assert not fixture_rows.distinct("AAA", "AABaCbC")
    assert not fixture_rows.distinct("AAA", "AAA")


@pytest.mark.parametrize("line, field", [
    ("3:1-01\t2-03\tAAA\tninety\t0\t1\t1\t3-01\ttable1\n", 'ap10'),
    ("3:1-01\t2x03\tAAA\t91\t0\t1\t1\t3-01\ttable1\n", 's_cr'),
    ("3:1-01\t2-03\tA?A\t91\t0\t1\t1\t3-01\ttable1\n", 'braid'),
])
def test_fixture_parse_errors(line, field):
    with pytest.raises(FixtureFormatError) as excinfo:
        parse_fixture(HEADER + line)
    assert excinfo.value.row == 1
    assert excinfo.value.field == field


def test_fixture_comments_are_skipped():
    fixture = parse_fixture("# note\n" + HEADER + "3:1-01\t2-03\tAAA\t91\t0\t1\t\t3-01\ttable1\n")
    assert len(fixture) == 1
    assert fixture.rows[0].unknotting is None


def test_palindrome_rows():
    rows = load_palindromes()
    assert len(rows) == 9
    assert not [r.tag for r in rows if 'exempt:braid' in r.flags]


def test_lookup_and_find_word():
    catalog = Catalog(3, 2)
    entry = catalog.add(CatalogEntry.from_word(parse_braid("AAA")))
    assert catalog.lookup(catalog_key(parse_braid("aaa"))) is entry
    assert catalog.find_word(parse_braid("AAA")) is entry
    assert catalog.find_word(parse_braid("aaa")) is None
    assert catalog.covers(parse_braid("AbA")) is False
    assert catalog.covers(parse_braid("AA"))


def test_identify_new_then_duplicate():
    catalog = Catalog()
    assert identify(parse_braid("AAA"), catalog).kind == 'new'
    result = identify(parse_braid("aaa"), catalog)
    assert result.kind == 'duplicate'
    assert result.entry.braid == "AAA"
    assert len(catalog) == 1


def test_identify_uses_fixture_to_split_collisions(fixture_rows, mocker):
    mocker.patch('catalog.catalog_key', return_value=(1, 'shared'))
    catalog = Catalog()
    identify(parse_braid("AAAAA"), catalog, fixture_rows)
    result = identify(parse_braid("AAbACbC"), catalog, fixture_rows)
    assert result.kind == 'collision'
    assert len(catalog) == 2
    assert catalog.collisions[0].words == ("AAAAA", "AAbACbC")
    assert all(e.collision for e in catalog)


def test_identify_without_fixture_reports_duplicate(mocker):
    mocker.patch('catalog.catalog_key', return_value=(1, 'shared'))
    catalog = Catalog()
    identify(parse_braid("AAAAA"), catalog)
    assert identify(parse_braid("AAbACbC"), catalog).kind == 'duplicate'
    assert not catalog.collisions


@pytest.mark.parametrize("braid", ["AAAbaaabcBcc", "AAAAbAAAb", "AAAAAAAAAAAAAAA"])
def test_untrusted_or_unlisted_row_cannot_split_a_key(fixture_rows, mocker, braid):
    mocker.patch('catalog.catalog_key', return_value=(1, 'shared'))
    catalog = Catalog()
    identify(parse_braid("AAAAA"), catalog, fixture_rows)
    result = identify(parse_braid(braid), catalog, fixture_rows)
    assert result.kind == 'duplicate'
    assert result.entry.braid == "AAAAA"
    assert len(catalog) == 1


def test_non_minimal_trefoil_word_is_a_duplicate(fixture_rows):
    catalog = Catalog()
    identify(parse_braid("AAA"), catalog, fixture_rows)
    result = identify(parse_braid("AABaCbC"), catalog, fixture_rows)
    assert result.kind == 'duplicate'
    assert result.entry.braid == "AAA"
    assert not catalog.collisions


def test_real_homfly_collision(fixture_rows):
    catalog = Catalog()
    identify(parse_braid("AAbbCC"), catalog, fixture_rows)
    result = identify(parse_braid("AAbCCb"), catalog, fixture_rows)
    assert result.kind == 'collision'
    assert catalog.collisions[0].words == ("AAbbCC", "AAbCCb")


@pytest.mark.slow
def test_nine_crossing_catalog_has_no_non_minimal_entries(nine_crossing_catalog, fixture_rows):
    assert nine_crossing_catalog.find_word(parse_braid("AABaCbC")) is None
    assert nine_crossing_catalog.find_word(parse_braid("AAAABaCbC")) is None
    for report in nine_crossing_catalog.collisions:
        rows = [fixture_rows.trusted_row(braid) for braid in report.words]
        assert all(rows), report
        assert len({row.tag for row in rows}) == len(rows), report


@pytest.mark.slow
def test_verify_nine_crossing_knots(nine_crossing_catalog, fixture_rows):
    report = verify(nine_crossing_catalog, fixture_rows, 9, components_filter=1)
    assert report.ok, report.mismatches + report.missing


@pytest.mark.slow
def test_verify_eight_crossing_links(nine_crossing_catalog, fixture_rows):
    report = verify(nine_crossing_catalog, fixture_rows, 8)
    assert report.ok, report.mismatches + report.missing


def test_verify_small_catalog(small_catalog, fixture_rows):
    report = verify(small_catalog, fixture_rows, 6)
    assert report.ok, report.mismatches + report.missing
    assert '3:1-01' in report.matched
    assert report.summary().startswith("all rows match")


def test_verify_reports_mismatch(fixture_rows):
    catalog = enumerate_catalog(3)
    trefoil = catalog.find_word(parse_braid("AAA"))
    trefoil.record = replace(trefoil.record, ap10=0)
    report = verify(catalog, fixture_rows, components_filter=1)
    assert [(m.tag, m.field, m.actual) for m in report.mismatches] == [('3:1-01', 'ap10', 0)]
    assert not report.ok


def test_verify_reports_missing(fixture_rows):
    catalog = enumerate_catalog(3)
    del catalog.by_key[catalog_key(parse_braid("AAA"))]
    report = verify(catalog, fixture_rows, components_filter=1)
    assert report.missing == ['3:1-01']
    assert not report.ok


def test_assign_tags(fixture_rows):
    catalog = assign_tags(enumerate_catalog(4), fixture_rows)
    tags = {e.braid: (e.tag, e.provisional) for e in catalog}
    assert tags[""] == ('0:1-01', False)
    assert tags["AAA"] == ('3:1-01', False)
    assert tags["AABB"] == ('4?:3-01', True)


def test_attach_unknotting(fixture_rows):
    catalog = attach_unknotting(enumerate_catalog(3), fixture_rows)
    assert catalog.find_word(parse_braid("AAA")).unknotting == 1


def test_csv_export(fixture_rows):
    catalog = assign_tags(enumerate_catalog(3), fixture_rows)
    data = export(catalog, 'csv')
    lines = data.decode('utf-8').split('\n')
    assert lines[0] == ",".join(CSV_FIELDS)
    assert b'\r' not in data
    assert "3:1-01,1,2,3,AAA,91,0,1," in lines


def test_export_import_roundtrip(fixture_rows):
    catalog = attach_unknotting(assign_tags(enumerate_catalog(4), fixture_rows), fixture_rows)
    for fmt in ('csv', 'jsonl'):
        restored = import_catalog(export(catalog, fmt), fmt)
        assert list(restored) == list(catalog), fmt


def test_jsonl_carries_homfly():
    line = export(enumerate_catalog(2), 'jsonl').decode('utf-8').splitlines()[1]
    row = json.loads(line)
    assert row['braid'] == "AA"
    assert row['homfly']


def test_import_rejects_wrong_invariant():
    data = ",".join(CSV_FIELDS) + "\n3:1-01,1,2,3,AAA,92,0,1,1\n"
    with pytest.raises(CatalogImportError) as excinfo:
        import_catalog(data.encode('utf-8'))
    assert excinfo.value.row == 1
    assert excinfo.value.field == 'ap10'


def test_import_rejects_bad_braid():
    data = ",".join(CSV_FIELDS) + "\n3:1-01,1,2,3,AAA,91,0,1,1\nx,1,2,3,A!A,91,0,1,\n"
    with pytest.raises(CatalogImportError) as excinfo:
        import_catalog(data.encode('utf-8'))
    assert excinfo.value.row == 2
    assert excinfo.value.field == 'braid'


def test_unknown_format():
    with pytest.raises(ValueError):
        export(Catalog(), 'xml')

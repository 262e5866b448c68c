# catalog.py
"""
The minimum braid catalog: identification, fixture verification, tags and export.
"""

###################
# Standard Imports
###################
import csv
import io
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

###################
# Local Imports
###################
from braid_core import (
    BraidParseError, BraidWord, MinbraidError, components, format_braid, is_alternating,
    parse_braid,
)
from invariants import AlexanderRecord, alexander, catalog_key, homfly
from laurent import BiPoly

DEFAULT_FIXTURE = Path(__file__).parent / 'fixtures' / 'minimum_braids.tsv'
RRP_FIXTURE = Path(__file__).parent / 'fixtures' / 'rrp.tsv'

CSV_FIELDS = ['tag', 'components', 'strands', 'crossings', 'braid', 'ap10', 'z', 'digital',
              'unknotting']
JSONL_FIELDS = CSV_FIELDS + ['alternating', 'homfly', 'provisional']


###################
# Errors
###################
class FixtureFormatError(MinbraidError, ValueError):
    def __init__(self, message: str, row: int, field_name: Optional[str] = None):
        where = f"row {row}" + (f", field {field_name}" if field_name else "")
        super().__init__(f"{message} ({where})")
        self.row = row
        self.field = field_name


class CatalogImportError(FixtureFormatError):
    """Malformed catalog export."""


###################
# Domain Types
###################
@dataclass
class CatalogEntry:
    word: BraidWord
    components: int
    strands: int
    crossings: int
    alternating: bool
    record: AlexanderRecord
    key: tuple
    homfly: BiPoly
    tag: Optional[str] = None
    unknotting: Optional[int] = None
    provisional: bool = False
    collision: bool = field(default=False, compare=False)

    @property
    def braid(self) -> str:
        return format_braid(self.word)

    @classmethod
    def from_word(cls, word: BraidWord, key: Optional[tuple] = None,
                  poly: Optional[BiPoly] = None) -> "CatalogEntry":
        poly = poly if poly is not None else homfly(word)
        return cls(
            word=word,
            components=components(word),
            strands=word.strands,
            crossings=word.crossings,
            alternating=is_alternating(word),
            record=alexander(word),
            key=key if key is not None else catalog_key(word),
            homfly=poly,
        )


@dataclass(frozen=True)
class CollisionReport:
    key: tuple
    words: tuple  # braid strings, length >= 2


@dataclass(frozen=True)
class Identification:
    kind: str  # 'new', 'duplicate' or 'collision'
    entry: CatalogEntry


class Catalog:
    """
    Ordered catalog of minimum braids.

    Entries are committed in enumeration order, so the first entry stored under
    a key is the minimum braid of that link.

    Args:
        max_crossings (int): Braid crossing depth the catalog is complete to.
        max_strands (int): Strand cap the catalog was enumerated with.
    """

    def __init__(self, max_crossings: int = 0, max_strands: int = 1):
        self.max_crossings = max_crossings
        self.max_strands = max_strands
        self.entries = []
        self.by_key = {}
        self.collisions = []

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Catalog):
            return NotImplemented
        return self.entries == other.entries

    def add(self, entry: CatalogEntry) -> CatalogEntry:
        bucket = self.by_key.setdefault(entry.key, [])
        if bucket:
            entry.collision = True
            for earlier in bucket:
                earlier.collision = True
            self.collisions.append(CollisionReport(
                entry.key, tuple(e.braid for e in bucket) + (entry.braid,)))
        bucket.append(entry)
        self.entries.append(entry)
        return entry

    def lookup(self, key: tuple) -> Optional[CatalogEntry]:
        bucket = self.by_key.get(key)
        return bucket[0] if bucket else None

    def find_word(self, word: BraidWord) -> Optional[CatalogEntry]:
        for entry in self.by_key.get(catalog_key(word), []):
            if entry.word == word:
                return entry
        return None

    def knots(self) -> list:
        return [e for e in self.entries if e.components == 1]

    def covers(self, word: BraidWord) -> bool:
        """True when the catalog was enumerated deeply enough to contain ``word``'s minimum."""
        return word.crossings <= self.max_crossings and word.strands <= self.max_strands


###################
# Fixture
###################
@dataclass(frozen=True)
class FixtureRow:
    tag: str
    strands: int
    alternating: bool
    crossings: int
    braid: str
    ap10: int
    z: int
    digital: int
    unknotting: Optional[int]
    ext_name: str
    flags: frozenset = frozenset()

    @property
    def components(self) -> int:
        return int(re.match(r'\d+:(\d+)', self.tag).group(1))

    @property
    def link_crossings(self) -> int:
        return int(self.tag.split(':', 1)[0])

    @property
    def table(self) -> Optional[str]:
        for flag in self.flags:
            if flag.startswith('table'):
                return flag
        return None

    def exempt(self, what: str) -> bool:
        return f"exempt:{what}" in self.flags

    def flag_value(self, name: str) -> Optional[str]:
        prefix = f"{name}="
        for flag in self.flags:
            if flag.startswith(prefix):
                return flag[len(prefix):]
        return None

    @property
    def trusted(self) -> bool:
        """
        Row braid reproduces its own columns and is listed under one tag only.

        ``exempt:braid`` marks a braid that does not give the row's AP(10), digital
        or S-Cr; ``exempt:s_cr`` and ``exempt:duplicate`` mark rows whose S-Cr column
        or tag disagrees with another row. None of these rows is authoritative.
        """
        return not any(self.exempt(what) for what in ('braid', 's_cr', 'duplicate'))

    def word(self) -> BraidWord:
        return parse_braid(self.braid)


class Fixture:
    """Published minimum braid rows, indexed by tag and by braid text."""

    def __init__(self, rows: list):
        self.rows = list(rows)
        self.by_tag = {row.tag: row for row in self.rows}
        self.by_braid = {}
        for row in self.rows:
            self.by_braid.setdefault(row.braid, []).append(row)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def row_for(self, braid: str) -> Optional[FixtureRow]:
        """Best row for a braid text: trusted rows first, then any."""
        rows = self.by_braid.get(braid, [])
        for row in rows:
            if row.trusted:
                return row
        return rows[0] if rows else None

    def trusted_row(self, braid: str) -> Optional[FixtureRow]:
        """Trusted row for a braid text, or None."""
        row = self.row_for(braid)
        return row if row is not None and row.trusted else None

    def distinct(self, a: str, b: str) -> bool:
        """
        True when the fixture lists the two braids as different links.

        Both braids must have trusted rows: a row whose braid does not reproduce its
        own columns cannot separate two words that share a key.
        """
        row_a, row_b = self.row_for(a), self.row_for(b)
        if not (row_a and row_b and row_a.trusted and row_b.trusted):
            return False
        return row_a.tag != row_b.tag and a != b


def _read_tsv(text: str) -> list:
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith('#')]
    if not lines:
        return []
    return list(csv.DictReader(lines, delimiter='\t'))


def parse_fixture(text: str) -> Fixture:
    """
    Parse fixture TSV text.

    Raises:
        FixtureFormatError: When a row is missing a field, a number does not parse,
            or the braid text is not a braid.
    """
    rows = []
    for number, raw in enumerate(_read_tsv(text), 1):
        current = None
        try:
            s_cr = raw['s_cr']
            match = re.fullmatch(r'(\d)([-n])(\d+)', s_cr or '')
            if not match:
                raise FixtureFormatError(f"bad S-Cr {s_cr!r}", number, 's_cr')
            braid = raw['braid']
            try:
                parse_braid(braid)
            except BraidParseError as e:
                raise FixtureFormatError(str(e), number, 'braid') from e
            flags = frozenset(f for f in (raw.get('flags') or '').split(',') if f)
            current = 'ap10'
            ap10 = int(raw['ap10'])
            current = 'z'
            z = int(raw['z'])
            current = 'd'
            digital_value = int(raw['d'])
            current = 'u'
            unknotting = int(raw['u']) if raw.get('u') else None
        except (KeyError, TypeError) as e:
            raise FixtureFormatError(f"missing column {str(e)}", number) from e
        except ValueError as e:
            if isinstance(e, FixtureFormatError):
                raise
            raise FixtureFormatError(f"bad number: {str(e)}", number, current) from e
        rows.append(FixtureRow(
            tag=raw['tag'], strands=int(match.group(1)), alternating=match.group(2) == '-',
            crossings=int(match.group(3)), braid=braid, ap10=ap10, z=z, digital=digital_value,
            unknotting=unknotting, ext_name=raw.get('ext_name') or '', flags=flags,
        ))
    return Fixture(rows)


def load_fixture(path: Optional[Path] = None) -> Fixture:
    path = Path(path) if path else DEFAULT_FIXTURE
    try:
        fixture = parse_fixture(path.read_text(encoding='utf-8'))
        logging.info(f"Loaded {len(fixture)} fixture rows from {path}")
        return fixture
    except Exception as e:
        logging.error(f"Error loading fixture {path}: {str(e)}")
        raise


@dataclass(frozen=True)
class PalindromeRow:
    tag: str
    braid: str
    palindrome: str
    flags: frozenset = frozenset()


def load_palindromes(path: Optional[Path] = None) -> list:
    path = Path(path) if path else RRP_FIXTURE
    return [PalindromeRow(r['tag'], r['braid'], r['palindrome'],
                          frozenset(f for f in (r.get('flags') or '').split(',') if f))
            for r in _read_tsv(path.read_text(encoding='utf-8'))]


###################
# Identification
###################
def identify(word: BraidWord, catalog: Catalog, fixture: Optional[Fixture] = None,
             key: Optional[tuple] = None, poly: Optional[BiPoly] = None) -> Identification:
    """
    Identify a word emitted in enumeration order and commit it if it is new.

    Args:
        word (BraidWord): Candidate word.
        catalog (Catalog): Catalog to look up and extend.
        fixture (Optional[Fixture]): Published rows used to resolve keys shared by
            distinct links.
        key (Optional[tuple]): Precomputed catalog key.
        poly (Optional[BiPoly]): Precomputed HOMFLYPT polynomial.

    Returns:
        Identification: ``new`` with the fresh entry, ``duplicate`` with the
            existing minimum braid, or ``collision`` with a fresh flagged entry.
    """
    key = key if key is not None else catalog_key(word)
    existing = catalog.by_key.get(key)
    if not existing:
        return Identification('new', catalog.add(CatalogEntry.from_word(word, key, poly)))
    braid = format_braid(word)
    if fixture is not None and all(fixture.distinct(braid, e.braid) for e in existing):
        entry = catalog.add(CatalogEntry.from_word(word, key, poly))
        logging.warning(f"HOMFLYPT collision: {braid} shares a key with "
                        f"{', '.join(e.braid for e in existing)}")
        return Identification('collision', entry)
    return Identification('duplicate', existing[0])


###################
# Verification
###################
@dataclass(frozen=True)
class Mismatch:
    tag: str
    field: str
    expected: object
    actual: object


@dataclass
class VerificationReport:
    matched: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    exempt: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.missing

    def summary(self) -> str:
        if self.ok:
            return f"all rows match ({len(self.matched)} rows, {len(self.exempt)} exempt)"
        return (f"{len(self.matched)} matched, {len(self.mismatches)} mismatches, "
                f"{len(self.missing)} missing, {len(self.exempt)} exempt")


def _in_scope(row: FixtureRow, catalog: Catalog, max_crossings: Optional[int],
              components_filter: Optional[int], tables: tuple) -> bool:
    if row.table not in tables:
        return False
    limit = catalog.max_crossings if max_crossings is None else min(max_crossings,
                                                                  catalog.max_crossings)
    word = row.word()
    if word.crossings > limit or word.strands > catalog.max_strands:
        return False
    return components_filter is None or row.components == components_filter


def verify(catalog: Catalog, fixture: Fixture, max_crossings: Optional[int] = None,
           components_filter: Optional[int] = None,
           tables: tuple = ('table1', 'table2')) -> VerificationReport:
    """
    Compare catalog entries with every fixture row the catalog is deep enough to contain.

    Only rows from ``tables`` are checked. Untrusted rows (``exempt:braid``,
    ``exempt:s_cr`` or ``exempt:duplicate``) are listed as exempt; ``exempt:z``
    rows skip only the z comparison.

    Returns:
        VerificationReport: Matched tags, per-field mismatches and missing tags.
    """
    report = VerificationReport()
    for row in fixture:
        if not _in_scope(row, catalog, max_crossings, components_filter, tables):
            continue
        if not row.trusted:
            report.exempt.append(row.tag)
            continue
        word = row.word()
        entry = catalog.lookup(catalog_key(word))
        if entry is None:
            report.missing.append(row.tag)
            continue
        checks = [('braid', row.braid, entry.braid),
                  ('ap10', row.ap10, entry.record.ap10),
                  ('digital', row.digital, entry.record.digital),
                  ('components', row.components, entry.components)]
        if not row.exempt('z'):
            checks.append(('z', row.z, entry.record.z))
        found = [Mismatch(row.tag, name, want, got) for name, want, got in checks if want != got]
        if found:
            report.mismatches.extend(found)
        else:
            report.matched.append(row.tag)
    logging.info(f"Verification: {report.summary()}")
    return report


###################
# Tags
###################
def assign_tags(catalog: Catalog, fixture: Fixture) -> Catalog:
    """
    Copy fixture tags onto matching entries; give the rest provisional ``c?:k-n`` tags.

    The crossing number of a nonalternating closure is not computed here, so a
    provisional tag uses the braid crossing count followed by ``?``.
    """
    counters = {}
    for entry in catalog:
        if entry.word.strands == 1:
            entry.tag, entry.provisional = '0:1-01', False
            continue
        row = fixture.row_for(entry.braid)
        if row is not None:
            entry.tag, entry.provisional = row.tag, False
            continue
        slot = (entry.crossings, entry.components)
        counters[slot] = counters.get(slot, 0) + 1
        entry.tag = f"{entry.crossings}?:{entry.components}-{counters[slot]:02d}"
        entry.provisional = True
    return catalog


def attach_unknotting(catalog: Catalog, fixture: Fixture) -> Catalog:
    """Fill ``unknotting`` from fixture rows where the entry's braid is tabulated."""
    for entry in catalog:
        row = fixture.row_for(entry.braid)
        if row is not None and row.unknotting is not None:
            entry.unknotting = row.unknotting
    return catalog


###################
# Export / Import
###################
def _entry_row(entry: CatalogEntry) -> dict:
    return {
        'tag': entry.tag or '',
        'components': entry.components,
        'strands': entry.strands,
        'crossings': entry.crossings,
        'braid': entry.braid,
        'ap10': entry.record.ap10,
        'z': entry.record.z,
        'digital': entry.record.digital,
        'unknotting': '' if entry.unknotting is None else entry.unknotting,
    }


def export(catalog: Catalog, fmt: str = 'csv') -> bytes:
    """
    Serialize a catalog.

    Args:
        catalog (Catalog): Catalog to write.
        fmt (str): ``csv`` or ``jsonl``.

    Returns:
        bytes: UTF-8 text with LF line endings.
    """
    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator='\n')
        writer.writeheader()
        for entry in catalog:
            writer.writerow(_entry_row(entry))
        return buffer.getvalue().encode('utf-8')
    if fmt == 'jsonl':
        lines = []
        for entry in catalog:
            row = _entry_row(entry)
            row['unknotting'] = entry.unknotting
            row['tag'] = entry.tag
            row['alternating'] = entry.alternating
            row['homfly'] = entry.homfly.serialize()
            row['provisional'] = entry.provisional
            lines.append(json.dumps(row, sort_keys=False))
        return ('\n'.join(lines) + ('\n' if lines else '')).encode('utf-8')
    raise ValueError(f"unknown export format {fmt!r}")


def _int_field(row: dict, name: str, number: int, optional: bool = False) -> Optional[int]:
    value = row.get(name)
    if value in (None, '') and optional:
        return None
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise CatalogImportError(f"expected an integer, got {value!r}", number, name) from e


def _entry_from_row(row: dict, number: int) -> CatalogEntry:
    braid = row.get('braid')
    strands = _int_field(row, 'strands', number)
    try:
        word = parse_braid(braid or '', strands_override=strands)
    except BraidParseError as e:
        raise CatalogImportError(str(e), number, 'braid') from e
    entry = CatalogEntry.from_word(word)
    for name, actual in (('components', entry.components), ('crossings', entry.crossings),
                         ('ap10', entry.record.ap10), ('z', entry.record.z),
                         ('digital', entry.record.digital)):
        if _int_field(row, name, number) != actual:
            raise CatalogImportError(f"{name} does not match braid {braid!r}", number, name)
    if 'homfly' in row:
        try:
            stored = BiPoly.parse(row['homfly'])
        except ValueError as e:
            raise CatalogImportError(str(e), number, 'homfly') from e
        if stored != entry.homfly:
            raise CatalogImportError(f"homfly does not match braid {braid!r}", number, 'homfly')
    entry.tag = row.get('tag') or None
    entry.unknotting = _int_field(row, 'unknotting', number, optional=True)
    entry.provisional = bool(row['provisional']) if 'provisional' in row \
        else bool(entry.tag and '?' in entry.tag)
    return entry


def import_catalog(data: bytes, fmt: str = 'csv') -> Catalog:
    """
    Rebuild a catalog from ``export`` output, recomputing and checking the invariants.

    Raises:
        CatalogImportError: With the 1-based data row and field of the first problem.
    """
    text = data.decode('utf-8')
    if fmt == 'csv':
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames != CSV_FIELDS:
            raise CatalogImportError(f"unexpected header {reader.fieldnames}", 0)
        rows = list(reader)
    elif fmt == 'jsonl':
        rows = []
        for number, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise CatalogImportError(f"invalid JSON: {str(e)}", number) from e
    else:
        raise ValueError(f"unknown import format {fmt!r}")

    catalog = Catalog()
    for number, row in enumerate(rows, 1):
        entry = _entry_from_row(row, number)
        catalog.add(entry)
        catalog.max_crossings = max(catalog.max_crossings, entry.crossings)
        catalog.max_strands = max(catalog.max_strands, entry.strands)
    return catalog

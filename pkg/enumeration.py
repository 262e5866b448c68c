# enumeration.py
"""
Enumeration of braid universes and signed braid words in minimum-braid order.

Words come out ordered by crossings, strands, universe and binary code, so the
first word that realises a link is its minimum braid.
"""

###################
# Standard Imports
###################
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional

###################
# External Imports
###################
from tqdm import tqdm

###################
# Local Imports
###################
from braid_core import (
    BraidUniverse, BraidWord, Generator, binary_code, components, cyclic_rotation,
    far_commutation_neighbors, flip, letter_runs, min_orientation, minimum_key, mirror, reverse,
)
from catalog import Catalog, Fixture, identify
from invariants import catalog_key, homfly

DEFAULT_STRAND_CAP = 6


###################
# Domain Types
###################
@dataclass(frozen=True)
class UniverseClass:
    universe: BraidUniverse
    components: int
    composite_hint: str  # 'composite' or 'noncomposite'

    @property
    def composite(self) -> bool:
        return self.composite_hint == 'composite'


@dataclass
class FilterCensus:
    """How many universes survive each filter for one (strands, crossings) pair."""
    strands: int
    crossings: int
    raw: int = 0
    after_start: int = 0
    after_coverage: int = 0
    after_orientation: int = 0
    after_commutation: int = 0
    by_components: dict = field(default_factory=dict)
    composite_knots: int = 0

    @property
    def knots(self) -> int:
        return self.by_components.get(1, 0)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


###################
# Universe Filters
###################
def _covers_strands(indices: tuple, strands: int) -> bool:
    """Every index occurs and every strand takes part in at least two crossings."""
    counts = [0] * (strands + 1)
    for i in indices:
        counts[i] += 1
    if any(counts[i] == 0 for i in range(1, strands)):
        return False
    # strand k meets crossings with index k-1 and k
    return all(counts[k - 1] + (counts[k] if k < strands else 0) >= 2
               for k in range(1, strands + 1))


def _self_minimal(u: BraidUniverse) -> bool:
    s, seq = u.strands, u.indices
    for shift in range(len(seq)):
        r = seq[shift:] + seq[:shift]
        flipped = tuple(s - i for i in r)
        for variant in (r, r[::-1], flipped, flipped[::-1]):
            if variant < seq:
                return False
    return True


def _commutation_minimal(u: BraidUniverse) -> bool:
    """No sequence reachable by far-commutation swaps has a smaller minimum orientation."""
    seen = {u.indices}
    frontier = [u.indices]
    while frontier:
        seq = frontier.pop()
        for neighbor in far_commutation_neighbors(seq):
            if neighbor in seen:
                continue
            if min_orientation(BraidUniverse(u.strands, neighbor)) < u.indices:
                return False
            seen.add(neighbor)
            frontier.append(neighbor)
    return True


def _candidates(s: int, c: int) -> Iterator[tuple]:
    for tail in product(range(1, s), repeat=c - 1):
        yield (1,) + tail


def universes(s: int, c: int, census: Optional[FilterCensus] = None) -> Iterator[BraidUniverse]:
    """
    Filtered braid universes in lexicographic order.

    Args:
        s (int): Strand count, at least 2.
        c (int): Crossing count, at least 1.
        census (Optional[FilterCensus]): Filled in with per-filter survivor counts.

    Yields:
        BraidUniverse: Universes starting with 1 that use every index, give every
            strand two crossings and are minimal under reorientation and far
            commutation.
    """
    if census is not None:
        census.raw = (s - 1) ** c
    for indices in _candidates(s, c):
        if census is not None:
            census.after_start += 1
        if not _covers_strands(indices, s):
            continue
        if census is not None:
            census.after_coverage += 1
        u = BraidUniverse(s, indices)
        if not _self_minimal(u):
            continue
        if census is not None:
            census.after_orientation += 1
        if not _commutation_minimal(u):
            continue
        if census is not None:
            census.after_commutation += 1
        yield u


def classify(u: BraidUniverse) -> UniverseClass:
    """
    Component count and connected-sum hint of a universe.

    A universe is marked composite when some cyclic rotation splits into a
    nonempty block on indices below ``k`` followed by a nonempty block on
    indices ``k`` and above, the two blocks sharing strand ``k``.
    """
    seq = u.indices
    composite = False
    for shift in range(len(seq)):
        r = seq[shift:] + seq[:shift]
        for k in range(2, u.strands):
            split = 0
            while split < len(r) and r[split] < k:
                split += 1
            if 0 < split < len(r) and all(i >= k for i in r[split:]):
                composite = True
                break
        if composite:
            break
    return UniverseClass(u, components(u), 'composite' if composite else 'noncomposite')


def universe_census(s: int, c: int) -> FilterCensus:
    census = FilterCensus(s, c)
    for u in universes(s, c, census):
        cls = classify(u)
        census.by_components[cls.components] = census.by_components.get(cls.components, 0) + 1
        if cls.components == 1 and cls.composite:
            census.composite_knots += 1
    logging.info(f"Census s={s} c={c}: {census.after_commutation} of {census.raw} universes kept")
    return census


###################
# Sign Assignments
###################
def _sign_for(index: int, bit: int) -> int:
    # bit 0 marks an alternating crossing: positive on odd indices, negative on even
    return 1 if (index % 2 == 1) == (bit == 0) else -1


def _passes_reidemeister_two(word: BraidWord) -> bool:
    """No crossing is followed, past far-commuting crossings, by its own inverse."""
    gens = word.gens
    c = len(gens)
    for k, gen in enumerate(gens):
        for step in range(1, c):
            nxt = gens[(k + step) % c]
            if abs(nxt.index - gen.index) <= 1:
                if nxt.index == gen.index and nxt.sign != gen.sign:
                    return False
                break
    return True


def _transform(word: BraidWord, shift: int, flipped: bool, reversed_: bool) -> BraidWord:
    result = cyclic_rotation(word, shift)
    if flipped:
        result = flip(result)
    if reversed_:
        result = reverse(result)
    return result


def _stabilizer(u: BraidUniverse) -> list:
    """Nontrivial reorientations that map the universe onto itself."""
    positive = BraidWord(u.strands, tuple(Generator(i, 1) for i in u.indices))
    found = []
    for shift, flipped, reversed_ in product(range(len(u.indices)), (False, True), (False, True)):
        if (shift, flipped, reversed_) == (0, False, False):
            continue
        if _transform(positive, shift, flipped, reversed_).indices == u.indices:
            found.append((shift, flipped, reversed_))
    return found


def _pruned_by_symmetry(word: BraidWord, stabilizer: list) -> bool:
    code = binary_code(word).bits
    for move in stabilizer:
        image = _transform(word, *move)
        if image.gens[0].sign < 0:
            image = mirror(image)
        if binary_code(image).bits < code:
            return True
    return False


def sign_assignments(u: BraidUniverse) -> Iterator[BraidWord]:
    """
    Signed words over a universe in ascending binary-code order.

    The first crossing is positive, each run of equal indices carries one sign,
    words with a cancelling pair (also cyclically or across far-commuting
    crossings) are skipped, and so is any word whose reorientation within the
    same universe has a smaller code.
    """
    runs = letter_runs(u.indices)
    stabilizer = _stabilizer(u)
    for tail in product((0, 1), repeat=len(runs) - 1):
        gens = []
        for (index, length), bit in zip(runs, (0,) + tail):
            gens.extend([Generator(index, _sign_for(index, bit))] * length)
        word = BraidWord(u.strands, tuple(gens))
        if not _passes_reidemeister_two(word):
            continue
        if _pruned_by_symmetry(word, stabilizer):
            continue
        yield word


###################
# Catalog Build
###################
def _keyed_words(u: BraidUniverse) -> list:
    """Words of one universe with their HOMFLYPT polynomials and catalog keys."""
    return [(word, catalog_key(word), homfly(word)) for word in sign_assignments(u)]


def _pool(jobs: int) -> Optional[ProcessPoolExecutor]:
    if jobs <= 1:
        return None
    return ProcessPoolExecutor(max_workers=jobs)


def enumerate_catalog(max_crossings: int, max_strands: Optional[int] = None, jobs: int = 1,
                      fixture: Optional[Fixture] = None, progress: bool = False) -> Catalog:
    """
    Enumerate minimum braids through ``max_crossings`` braid crossings.

    Args:
        max_crossings (int): Largest braid crossing count to enumerate.
        max_strands (Optional[int]): Strand cap; defaults to ``max_crossings`` capped at 6.
        jobs (int): Worker processes computing keys; results are merged in order.
        fixture (Optional[Fixture]): Used to keep HOMFLYPT collisions apart.
        progress (bool): Show a progress bar on stderr.

    Returns:
        Catalog: One entry per link, the unknot first.
    """
    if max_crossings < 0:
        raise ValueError(f"max_crossings must be nonnegative, got {max_crossings}")
    cap = max_strands if max_strands is not None else min(max(max_crossings, 1), DEFAULT_STRAND_CAP)
    catalog = Catalog(max_crossings, max(cap, 1))
    identify(BraidWord.unknot(), catalog, fixture)

    pool = _pool(jobs)
    last = None
    try:
        for c in range(1, max_crossings + 1):
            for s in range(2, min(c, cap) + 1):
                batch = list(universes(s, c))
                results = pool.map(_keyed_words, batch) if pool else map(_keyed_words, batch)
                new = 0
                for keyed in tqdm(results, total=len(batch), disable=not progress,
                                  desc=f"c={c} s={s}", leave=False):
                    for word, key, poly in keyed:
                        order = minimum_key(word)
                        assert last is None or order > last, f"{word} emitted out of order"
                        last = order
                        if identify(word, catalog, fixture, key, poly).kind != 'duplicate':
                            new += 1
                logging.info(f"c={c} s={s}: {len(batch)} universes, {new} new entries")
    except Exception as e:
        logging.error(f"Enumeration failed: {str(e)}")
        raise
    finally:
        if pool:
            pool.shutdown()
    return catalog


###################
# Oracle
###################
def brute_force_minimums(max_crossings: int, max_strands: int) -> dict:
    """
    Minimum word per catalog key over every word, without any filter or pruning.

    Returns:
        dict: catalog key -> least word under the minimum-braid order.
    """
    best = {catalog_key(BraidWord.unknot()): BraidWord.unknot()}
    for c in range(1, max_crossings + 1):
        for s in range(2, max_strands + 1):
            for indices in product(range(1, s), repeat=c):
                for signs in product((1, -1), repeat=c):
                    word = BraidWord(s, tuple(Generator(i, e) for i, e in zip(indices, signs)))
                    key = catalog_key(word)
                    if key not in best or minimum_key(word) < minimum_key(best[key]):
                        best[key] = word
    return best

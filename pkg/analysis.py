# analysis.py
"""
Studies built on the catalog: unknotting numbers, reverse rotated palindromes,
tree links, weighted sums and periodic-table columns.
"""

###################
# Standard Imports
###################
import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil
from typing import Optional

###################
# External Imports
###################
import networkx as nx
from sympy import binomial
from sympy.functions.combinatorial.numbers import stirling
from tqdm import tqdm

###################
# Local Imports
###################
from braid_core import (
    BraidWord, Generator, InsufficientCatalogDepth, ResourceBudgetExceeded, components, conjugate,
    cyclic_rotation, format_braid, free_reduce, minimum_key, mirror,
    parse_braid, rotate, stabilize, switch_crossings, writhe,
)
from catalog import Catalog, CatalogEntry, Fixture
from invariants import catalog_key, homfly, identity_key, is_unlink

DEFAULT_UNKNOT_BUDGET = 6
DEFAULT_RRP_BUDGET = 20_000


###################
# Unknotting
###################
def unknotting_lower_bound(word: BraidWord) -> int:
    """Fewest switches allowed by ``|writhe| <= s - k`` for a closed braid of the k-unlink."""
    slack = abs(writhe(word)) - word.strands + components(word)
    return max(0, ceil(slack / 2))


def _switch_unlinks(word: BraidWord, subsets: list) -> bool:
    """True if switching any of the given crossing subsets leaves an unlink."""
    return any(is_unlink(switch_crossings(word, subset)) for subset in subsets)


def _stratum(word: BraidWord, m: int) -> list:
    allowed = word.strands - components(word)
    base = writhe(word)
    signs = word.signs
    return [subset for subset in combinations(range(word.crossings), m)
            if abs(base - 2 * sum(signs[i] for i in subset)) <= allowed]


def unknotting_number(word: BraidWord, budget: int = DEFAULT_UNKNOT_BUDGET, jobs: int = 1,
                      progress: bool = False) -> int:
    """
    Minimum braid unknotting number: fewest crossing switches that give an unlink.

    Subsets are tried in ascending size, skipping sizes and subsets that cannot
    meet the writhe bound of an unlink.

    Args:
        word (BraidWord): Braid word, usually a minimum braid.
        budget (int): Largest subset size to try.
        jobs (int): Worker processes sharing one subset size at a time.
        progress (bool): Show a progress bar over subset sizes on stderr.

    Returns:
        int: The smallest number of switches.

    Raises:
        ResourceBudgetExceeded: If no subset of size up to ``budget`` works.
    """
    start = unknotting_lower_bound(word)
    sizes = range(start, min(budget, word.crossings) + 1)
    for m in tqdm(sizes, disable=not progress, desc="unknotting", leave=False):
        subsets = _stratum(word, m)
        if jobs > 1 and len(subsets) > jobs:
            chunks = [subsets[k::jobs] for k in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                found = any(pool.map(_switch_unlinks, [word] * jobs, chunks))
        else:
            found = _switch_unlinks(word, subsets)
        if found:
            logging.info(f"Unknotting number of {format_braid(word)} is {m}")
            return m
    raise ResourceBudgetExceeded("unknotting search", budget, lower_bound=max(budget + 1, start))


###################
# Palindromes
###################
def is_rrp(word: BraidWord) -> bool:
    """True when turning the braid over gives its mirror image."""
    return rotate(word) == mirror(word)


def _commutations(gens: tuple) -> list:
    """Words reached by swapping one adjacent far-commuting pair."""
    found = []
    for k in range(len(gens) - 1):
        if abs(gens[k].index - gens[k + 1].index) > 1:
            found.append(gens[:k] + (gens[k + 1], gens[k]) + gens[k + 2:])
    return found


def _braid_relation(a: Generator, b: Generator, d: Generator) -> Optional[tuple]:
    if a.index != d.index or abs(a.index - b.index) != 1:
        return None
    if a.sign == b.sign == d.sign:
        return (Generator(b.index, a.sign), Generator(a.index, a.sign), Generator(b.index, a.sign))
    if d.sign == -a.sign:
        # i^e j^f i^-e == j^-e i^f j^e
        return (Generator(b.index, -a.sign), Generator(a.index, b.sign), Generator(b.index, a.sign))
    return None


def _rrp_moves(word: BraidWord, max_strands: int, max_crossings: int) -> list:
    gens, s, c = word.gens, word.strands, word.crossings
    moves = [cyclic_rotation(word, shift) for shift in range(1, c)]
    moves += [BraidWord(s, seq) for seq in _commutations(gens)]
    for k in range(c - 2):
        block = _braid_relation(*gens[k:k + 3])
        if block is not None:
            moves.append(BraidWord(s, gens[:k] + block + gens[k + 3:]))
    for i in range(1, s):
        for sign in (1, -1):
            conjugated = free_reduce(conjugate(word, Generator(i, sign)))
            if conjugated.crossings <= max_crossings:
                moves.append(conjugated)
    if s < max_strands and c < max_crossings:
        moves += [stabilize(word, 1), stabilize(word, -1)]
    if s > 2 and word.indices.count(s - 1) == 1:
        moves.append(BraidWord(s - 1, tuple(g for g in gens if g.index != s - 1)))
    return moves


def rrp_search(word: BraidWord, moves_budget: int = DEFAULT_RRP_BUDGET) -> Optional[BraidWord]:
    """
    Breadth-first search for a reverse rotated palindrome presenting the same link.

    Moves are cyclic rotation, far commutation, braid relations, conjugation by
    one generator and a single (de)stabilization.

    Args:
        word (BraidWord): Starting word.
        moves_budget (int): Number of words to expand before giving up.

    Returns:
        Optional[BraidWord]: A palindromic witness, or None when the search was
            inconclusive (which proves nothing).
    """
    if is_rrp(word):
        return word
    target = identity_key(word)
    max_strands = word.strands + 1
    max_crossings = word.crossings + 2
    seen = {word}
    queue = deque([word])
    expanded = 0
    while queue and expanded < moves_budget:
        current = queue.popleft()
        expanded += 1
        for candidate in _rrp_moves(current, max_strands, max_crossings):
            if candidate in seen or not candidate.gens:
                continue
            if is_rrp(candidate) and identity_key(candidate) == target:
                logging.info(f"RRP for {format_braid(word)}: {format_braid(candidate)}")
                return candidate
            seen.add(candidate)
            queue.append(candidate)
    logging.info(f"No RRP found for {format_braid(word)} after {expanded} words")
    return None


def french_horn(n: int) -> BraidWord:
    """The five strand palindromic family A B a B C^n B A d c b^n c D c d."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return parse_braid(f"ABaBC{n}BAdcb{n}cDcd")


###################
# Trees
###################
@dataclass(frozen=True)
class FreeTree:
    n: int
    edges: tuple
    canonical: str

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def _rooted_code(g: nx.Graph, root, parent=None) -> str:
    return '(' + ''.join(sorted(_rooted_code(g, child, root)
                                for child in g.neighbors(root) if child != parent)) + ')'


def canonical_form(g: nx.Graph) -> str:
    """Parenthesized rooted code, minimized over the tree's centers."""
    if g.number_of_nodes() == 1:
        return '()'
    return min(_rooted_code(g, center) for center in nx.center(g))


def _as_free_tree(g: nx.Graph) -> FreeTree:
    g = nx.convert_node_labels_to_integers(g)
    return FreeTree(g.number_of_nodes(), tuple(sorted(tuple(sorted(e)) for e in g.edges())),
                    canonical_form(g))


def free_trees(n: int) -> list:
    """One tree per isomorphism class on ``n`` vertices, sorted by canonical form."""
    if not 1 <= n <= 12:
        raise ValueError(f"free_trees supports 1 <= n <= 12, got {n}")
    if n == 1:
        single = nx.Graph()
        single.add_node(0)
        return [_as_free_tree(single)]
    return sorted((_as_free_tree(g) for g in nx.nonisomorphic_trees(n)), key=lambda t: t.canonical)


def tree_is_alternating(tree: FreeTree) -> bool:
    """False when some vertex has three or more branches longer than one edge."""
    g = tree.graph()
    return not any(sum(1 for u in g.neighbors(v) if g.degree(u) >= 2) >= 3 for v in g.nodes)


def tree_counts(max_n: int) -> list:
    return [sum(1 for tree in free_trees(n) if tree_is_alternating(tree))
            for n in range(1, max_n + 1)]


def tree_report(max_n: int) -> list:
    report = []
    for n in range(1, max_n + 1):
        trees = free_trees(n)
        alternating = sum(1 for tree in trees if tree_is_alternating(tree))
        report.append({'n': n, 'total': len(trees), 'alternating': alternating,
                       'nonalternating': len(trees) - alternating})
    return report


def _clasp_sign(position: int) -> int:
    return 1 if position % 2 == 1 else -1


def _subtree_size(g: nx.Graph, v, parent) -> int:
    return 1 + sum(_subtree_size(g, u, v) for u in g.neighbors(v) if u != parent)


def _layout(g: nx.Graph, v, parent, position: int, children: list) -> list:
    """Crossings that clasp ``v`` (on strand ``position``) to each child subtree."""
    if not children:
        return []
    child, rest = children[0], children[1:]
    here = Generator(position, _clasp_sign(position))
    grandchildren = _ordered_children(g, child, v)
    if not rest:
        return [here, here] + _layout(g, child, v, position + 1, grandchildren)
    if not grandchildren:
        return [here] + _layout(g, v, parent, position + 1, rest) + [here]
    # clasp a branch, then carry v over the whole branch and back
    size = _subtree_size(g, child, v)
    block = [here, here] + _layout(g, child, v, position + 1, grandchildren)
    across = [Generator(position + k, 1) for k in range(size)]
    back = [Generator(position + k, -1) for k in reversed(range(size))]
    return block + across + _layout(g, v, parent, position + size, rest) + back


def _ordered_children(g: nx.Graph, v, parent) -> list:
    children = [u for u in g.neighbors(v) if u != parent]
    leaves = sorted(u for u in children if g.degree(u) == 1)
    inner = sorted((u for u in children if g.degree(u) > 1),
                   key=lambda u: (_subtree_size(g, u, v), u))
    return leaves + inner


def tree_link_braid(tree: FreeTree) -> BraidWord:
    """
    Braid whose closure is the tree link: one unknot per vertex, one clasp per edge.

    The layout is rooted at each end of a longest path and the least word in
    the minimum-braid order is returned.
    """
    if tree.n < 2:
        raise ValueError("a tree link needs at least two vertices")
    g = tree.graph()
    eccentricity = nx.eccentricity(g)
    diameter = max(eccentricity.values())
    best = None
    for root in (v for v in g.nodes if g.degree(v) == 1 and eccentricity[v] == diameter):
        word = BraidWord(tree.n, tuple(_layout(g, root, None, 1, _ordered_children(g, root, None))))
        if best is None or minimum_key(word) < minimum_key(best):
            best = word
    return best


###################
# Weighted Sums
###################
def stirling1(n: int, m: int) -> int:
    """Signed Stirling number of the first kind."""
    return int(stirling(n, m, kind=1, signed=True))


def stirling2(n: int, m: int) -> int:
    return int(stirling(n, m, kind=2))


def weighted_sum(M: int, j: int) -> int:
    """``sum(i**j * c(i))`` over the coefficients ``c(i) = (-1)**(i-1) * C(M-1, i-1)``."""
    if M < 1 or j < 0:
        raise ValueError(f"weighted_sum needs M >= 1 and j >= 0, got M={M}, j={j}")
    return sum(i ** j * (-1) ** (i - 1) * int(binomial(M - 1, i - 1)) for i in range(1, M + 1))


###################
# Periodic Columns
###################
def prepend_a(word: BraidWord) -> BraidWord:
    if word.strands < 2:
        raise ValueError("prepend_a needs a word on at least two strands")
    return BraidWord(word.strands, (Generator(1, 1),) + word.gens)


@dataclass
class ColumnCell:
    word: BraidWord
    entry: CatalogEntry
    y_star: Optional[bool] = None
    z_star: Optional[bool] = None


@dataclass
class Column:
    seed: BraidWord
    cells: list = field(default_factory=list)

    @property
    def stars(self) -> list:
        found = []
        for k, cell in enumerate(self.cells):
            if cell.y_star:
                found.append(('y_star', k))
            if cell.z_star:
                found.append(('z_star', k))
        return found

    @property
    def words(self) -> list:
        return [cell.word for cell in self.cells]

    @property
    def type_code(self) -> str:
        return column_type(self)


def detect_z_star(word: BraidWord, fixture: Fixture) -> Optional[bool]:
    """
    Whether prepending A to a tabulated link jumps the link crossing number by other than one.

    Only trusted rows are read: a row whose braid does not reproduce its own
    columns carries a tag that belongs to some other link.

    Returns:
        Optional[bool]: None when either crossing number is not tabulated by a
            trusted row.
    """
    row = fixture.trusted_row(format_braid(word))
    if row is None:
        return None
    successor = row.flag_value('succ_cr')
    if successor is None:
        next_row = fixture.trusted_row(format_braid(prepend_a(word)))
        if next_row is None:
            return None
        successor = next_row.link_crossings
    return int(successor) - row.link_crossings != 1


def build_column(seed: BraidWord, depth: int, catalog: Optional[Catalog] = None,
                 fixture: Optional[Fixture] = None) -> Column:
    """
    Column of words obtained by prepending A to ``seed`` ``depth`` times.

    Args:
        seed (BraidWord): Minimum braid at the top of the column.
        depth (int): Number of prepended crossings.
        catalog (Optional[Catalog]): When given, each cell is checked against the
            catalog's minimum braid (Y-star when they differ).
        fixture (Optional[Fixture]): When given, link crossing numbers from tags mark
            Z-star steps.

    Raises:
        InsufficientCatalogDepth: If a word falls outside the catalog's range.
    """
    column = Column(seed)
    word = seed
    for step in range(depth + 1):
        if step:
            word = prepend_a(word)
        y_star = None
        entry = None
        if catalog is not None:
            if not catalog.covers(word):
                raise InsufficientCatalogDepth(
                    f"{format_braid(word)} needs a catalog through {word.crossings} crossings "
                    f"and {word.strands} strands")
            entry = catalog.find_word(word)
            y_star = entry is None
            if y_star:
                minimum = catalog.lookup(catalog_key(word))
                logging.info(f"Y-star: {format_braid(word)} is not a minimum braid"
                             + (f", the catalog holds {minimum.braid}" if minimum else ""))
        if entry is None:
            entry = CatalogEntry.from_word(word)
        z_star = None
        if fixture is not None and step:
            z_star = detect_z_star(column.cells[-1].word, fixture)
        column.cells.append(ColumnCell(word, entry, y_star, z_star))
    return column


def _knot_sign(column: Column) -> Optional[str]:
    for cell in column.cells:
        if cell.entry.components == 1:
            return '+' if cell.entry.record.digital == 1 else '-'
    return None


def _weighted_sign(poly, order: int) -> str:
    for j in range(order + 1):
        total = sum(e ** j * c for e, c in poly.items())
        if total:
            return '+' if total > 0 else '-'
    return '='


def column_type(column: Column) -> str:
    """Five part code: strands, a/n, sign, z and parity of the constant coefficient."""
    top = column.cells[0].entry
    sign = _knot_sign(column) or _weighted_sign(top.record.poly, top.components - 1)
    parity = 'o' if top.record.poly.coefficient(0) % 2 else 'e'
    return f"{top.strands}{'a' if top.alternating else 'n'}{sign}{top.record.z}{parity}"


def _commutation_class(word: BraidWord) -> frozenset:
    start = free_reduce(word, cyclic=True)
    seen = {start.gens}
    frontier = [start.gens]
    while frontier:
        gens = frontier.pop()
        neighbors = [gens[k:] + gens[:k] for k in range(1, len(gens))]
        neighbors += _commutations(gens)
        for neighbor in neighbors:
            if neighbor not in seen:
                seen.add(neighbor)
                frontier.append(neighbor)
    return frozenset(seen)


def _pairs_into(a: Column, b: Column) -> bool:
    base = mirror(a.seed)
    targets = [_commutation_class(w) for w in b.words]
    longest = max(w.crossings for w in b.words)
    for m in range(longest + base.crossings + 1):
        candidate = base
        for _ in range(m):
            candidate = prepend_a(candidate)
        reduced = free_reduce(candidate, cyclic=True)
        if reduced.strands != b.seed.strands:
            continue
        if any(reduced.gens in target for target in targets):
            return True
    return False


def column_pair(a: Column, b: Column) -> bool:
    """True when mirroring one seed and prepending A crossings lands in the other column."""
    if a.seed == b.seed:
        return False
    return _pairs_into(a, b) or _pairs_into(b, a)


@dataclass
class ColumnRows:
    al: tuple
    hx: list
    hx_residuals: list
    hx_period: Optional[int]
    hr: tuple
    o_star: bool


def _period(values: list) -> Optional[int]:
    for p in (1, 2, 3, 6):
        if len(values) > p and all(values[i] == values[i + p] for i in range(len(values) - p)):
            return p
    return None


def _hr_start(top: int, second: int, limit: int = 64) -> tuple:
    p, q = top, second
    for _ in range(limit):
        earlier = q - p
        if earlier * p < 0:
            break
        p, q = earlier, p
    return p, q


def column_rows(column: Column) -> ColumnRows:
    """
    Al, Hx and Hr rows of a column.

    Al is the growth of the absolute coefficient sum from the first to the
    second cell with the first cell's sum. Hx lists HOMFLYPT values at
    ``x = y = 1``, which obey ``Hx(r) = Hx(r-1) - Hx(r-2)``. Hr walks the values
    at ``x = -1, y = 1`` back to the earliest pair of equal sign.
    """
    if len(column.cells) < 2:
        raise ValueError("column rows need at least two cells")
    sums = [cell.entry.record.poly.abs_coefficient_sum() for cell in column.cells]
    al = (sums[1] - sums[0], sums[0])
    hx = [homfly(cell.word).evaluate(1, 1) for cell in column.cells]
    residuals = [hx[k] - hx[k - 1] + hx[k - 2] for k in range(2, len(hx))]
    hr_values = [homfly(cell.word).evaluate(-1, 1) for cell in column.cells[:2]]
    p, q = _hr_start(hr_values[0], hr_values[1])
    parities = {cell.entry.record.poly.coefficient(0) % 2 for cell in column.cells}
    return ColumnRows(al, hx, residuals, _period(hx), (p, q, hr_values[0]), len(parities) > 1)

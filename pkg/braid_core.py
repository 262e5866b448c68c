# braid_core.py
"""
Braid words and braid universes.

A braid word on ``s`` strands is a sequence of signed generators. Generator
``(i, +1)`` is written with the i-th capital letter (A = 1) and means strand i
crosses over strand i+1 reading top to bottom; ``(i, -1)`` uses the lower case
letter. The universe of a word is its sequence of indices with the signs
forgotten.
"""

###################
# Standard Imports
###################
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Union

###################
# Errors
###################
class MinbraidError(Exception):
    """Base class for every error raised by this package."""


class BraidParseError(MinbraidError, ValueError):
    """Braid text could not be parsed.

    Attributes:
        position (int): 0-based offset of the offending character in the input.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ResourceBudgetExceeded(MinbraidError):
    """A bounded search ran out of budget before it could answer exactly.

    Attributes:
        what (str): Which search gave up.
        limit (int): The budget that was exhausted.
        lower_bound (Optional[int]): Proven lower bound on the answer, if any.
    """

    def __init__(self, what: str, limit: int, lower_bound: Optional[int] = None):
        message = f"{what}: budget {limit} exhausted"
        if lower_bound is not None:
            message += f" (answer is at least {lower_bound})"
        super().__init__(message)
        self.what = what
        self.limit = limit
        self.lower_bound = lower_bound


class InsufficientCatalogDepth(MinbraidError):
    """A column reached a word the catalog was not enumerated far enough to contain."""


###################
# Domain Types
###################
LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXY"
MAX_INDEX = len(LETTERS)


class Generator(NamedTuple):
    index: int
    sign: int  # +1 or -1

    def letter(self) -> str:
        char = LETTERS[self.index - 1]
        return char if self.sign > 0 else char.lower()

    def inverse(self) -> "Generator":
        return Generator(self.index, -self.sign)


@dataclass(frozen=True)
class BraidWord:
    """
    An immutable braid word.

    Args:
        strands (int): Number of strands ``s``; at least 1.
        gens (tuple[Generator, ...]): The crossings, top to bottom.
    """
    strands: int
    gens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'gens', tuple(Generator(int(i), int(e)) for i, e in self.gens))
        if self.strands < 1:
            raise ValueError(f"strands must be at least 1, got {self.strands}")
        for g in self.gens:
            if not 1 <= g.index < self.strands:
                raise ValueError(f"generator index {g.index} out of range for {self.strands} strands")
            if g.sign not in (1, -1):
                raise ValueError(f"generator sign must be +1 or -1, got {g.sign}")

    @property
    def crossings(self) -> int:
        return len(self.gens)

    @property
    def indices(self) -> tuple:
        return tuple(g.index for g in self.gens)

    @property
    def signs(self) -> tuple:
        return tuple(g.sign for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        return format_braid(self)

    @classmethod
    def from_pairs(cls, strands: int, pairs: Iterable) -> "BraidWord":
        return cls(strands, tuple(Generator(i, e) for i, e in pairs))

    @classmethod
    def unknot(cls) -> "BraidWord":
        return cls(1, ())


@dataclass(frozen=True)
class BraidUniverse:
    """The unsigned projection of a braid word."""
    strands: int
    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, 'indices', tuple(int(i) for i in self.indices))
        if self.strands < 2:
            raise ValueError(f"a universe needs at least 2 strands, got {self.strands}")
        if not self.indices:
            raise ValueError("a universe must be nonempty")
        if any(not 1 <= i < self.strands for i in self.indices):
            raise ValueError(f"universe {self.indices} has an index outside 1..{self.strands - 1}")

    @property
    def crossings(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class BinaryCode:
    """Alternation code of a braid word; bit k is 0 iff crossing k alternates."""
    bits: tuple

    @property
    def value(self) -> int:
        # First crossing is the most significant bit
        result = 0
        for bit in self.bits:
            result = (result << 1) | bit
        return result

    def __str__(self) -> str:
        return ''.join(str(b) for b in self.bits)


Braidlike = Union[BraidWord, BraidUniverse]

###################
# Text Format
###################
_TOKEN = re.compile(r'([A-Ya-y])(\d*)')


def parse_braid(text: str, strands_override: Optional[int] = None) -> BraidWord:
    """
    Parse braid text such as ``"AbAb"`` or ``"A4BaBB"``.

    Args:
        text (str): Letters A..Y / a..y, each optionally followed by a repeat count.
            Whitespace is ignored.
        strands_override (Optional[int]): Strand count to use instead of max index + 1.

    Returns:
        BraidWord: The parsed word.

    Raises:
        BraidParseError: On an illegal character, a digit group with no letter in
            front of it, a zero repeat count, empty text without an override, or an
            index that does not fit ``strands_override``.
    """
    gens = []
    starts = []  # character position of each letter, one per generator
    pos = 0
    while pos < len(text):
        char = text[pos]
        if char.isspace():
            pos += 1
            continue
        if char.isdigit():
            raise BraidParseError(f"repeat count {char!r} has no preceding letter", pos)
        match = _TOKEN.match(text, pos)
        if not match:
            raise BraidParseError(f"unexpected character {char!r}", pos)
        letter, digits = match.groups()
        count = int(digits) if digits else 1
        if count == 0:
            raise BraidParseError(f"zero repeat count after {letter!r}", match.start(2))
        index = LETTERS.index(letter.upper()) + 1
        sign = 1 if letter.isupper() else -1
        gens.extend([Generator(index, sign)] * count)
        starts.extend([match.start(1)] * count)
        pos = match.end()

    if strands_override is None:
        if not gens:
            raise BraidParseError("empty braid text needs an explicit strand count", 0)
        strands = max(g.index for g in gens) + 1
    else:
        strands = strands_override
        for g, start in zip(gens, starts):
            if g.index >= strands:
                raise BraidParseError(
                    f"generator {g.letter()} does not fit on {strands} strands", start)
    return BraidWord(strands, tuple(gens))


def format_braid(word: BraidWord, abbreviated: bool = False) -> str:
    """
    Render a braid word as text.

    Args:
        word (BraidWord): Word to render.
        abbreviated (bool): Write runs of three or more equal letters as letter+count.

    Returns:
        str: Braid text; the unknot renders as the empty string.
    """
    if not abbreviated:
        return ''.join(g.letter() for g in word.gens)
    parts = []
    for gen, run in letter_runs(word.gens):
        if run >= 3:
            parts.append(f"{gen.letter()}{run}")
        else:
            parts.append(gen.letter() * run)
    return ''.join(parts)


def letter_runs(items: Sequence) -> list:
    runs = []
    for item in items:
        if runs and runs[-1][0] == item:
            runs[-1][1] += 1
        else:
            runs.append([item, 1])
    return [(item, n) for item, n in runs]


###################
# Structure
###################
def universe_of(word: BraidWord) -> BraidUniverse:
    return BraidUniverse(word.strands, word.indices)


def _strands_and_indices(obj: Braidlike) -> tuple:
    return obj.strands, tuple(obj.indices)


def permutation(obj: Braidlike) -> tuple:
    """
    Strand permutation of a word or universe.

    Returns:
        tuple: ``perm`` with ``perm[j - 1]`` the bottom position reached by the
            strand that starts at top position ``j`` (1-based).
    """
    strands, indices = _strands_and_indices(obj)
    at = list(range(1, strands + 1))  # at[p] = strand currently in position p+1
    for i in indices:
        at[i - 1], at[i] = at[i], at[i - 1]
    perm = [0] * strands
    for position, strand in enumerate(at, 1):
        perm[strand - 1] = position
    return tuple(perm)


def components(obj: Braidlike) -> int:
    """Number of components of the closure (cycles of the strand permutation)."""
    perm = permutation(obj)
    seen = set()
    count = 0
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        count += 1
        j = start
        while j not in seen:
            seen.add(j)
            j = perm[j - 1]
    return count


def component_labels(obj: Braidlike) -> tuple:
    """Component number (0-based, in order of smallest strand) of each top position."""
    perm = permutation(obj)
    labels = [-1] * len(perm)
    count = 0
    for start in range(len(perm)):
        if labels[start] >= 0:
            continue
        j = start
        while labels[j] < 0:
            labels[j] = count
            j = perm[j] - 1
        count += 1
    return tuple(labels)


def writhe(word: BraidWord) -> int:
    return sum(word.signs)


def binary_code(word: BraidWord) -> BinaryCode:
    """Bit k is 0 iff crossing k is positive on an odd index or negative on an even one."""
    bits = tuple(0 if (g.index % 2 == 1) == (g.sign > 0) else 1 for g in word.gens)
    return BinaryCode(bits)


def is_alternating(word: BraidWord) -> bool:
    return not any(binary_code(word).bits)


###################
# Symmetries
###################
def mirror(word: BraidWord) -> BraidWord:
    return BraidWord(word.strands, tuple(g.inverse() for g in word.gens))


def rotate(word: BraidWord) -> BraidWord:
    """Turn the braid through 180 degrees: reverse the word and map i to s - i."""
    s = word.strands
    return BraidWord(s, tuple(Generator(s - g.index, g.sign) for g in reversed(word.gens)))


def reverse(word: BraidWord) -> BraidWord:
    return BraidWord(word.strands, tuple(reversed(word.gens)))


def flip(word: BraidWord) -> BraidWord:
    s = word.strands
    return BraidWord(s, tuple(Generator(s - g.index, g.sign) for g in word.gens))


def cyclic_rotation(word: BraidWord, shift: int) -> BraidWord:
    if not word.gens:
        return word
    shift %= len(word.gens)
    return BraidWord(word.strands, word.gens[shift:] + word.gens[:shift])


def orientation_variants(u: BraidUniverse) -> set:
    """
    All readings of a universe: every cyclic start, read down or up, turned over or not.

    Returns:
        set: Index tuples, at most ``4c`` of them.
    """
    s = u.strands
    seq = u.indices
    variants = set()
    for shift in range(len(seq)):
        r = seq[shift:] + seq[:shift]
        flipped = tuple(s - i for i in r)
        variants.update((r, r[::-1], flipped, flipped[::-1]))
    return variants


def min_orientation(u: BraidUniverse) -> tuple:
    return min(orientation_variants(u))


###################
# Ordering
###################
def minimum_key(word: BraidWord) -> tuple:
    """Sort key realising the minimum-braid order: crossings, strands, universe, code."""
    return (word.crossings, word.strands, word.indices, binary_code(word).bits)


def compare_minimum(a: BraidWord, b: BraidWord) -> int:
    """Return -1, 0 or 1 as ``a`` precedes, equals or follows ``b`` in the minimum-braid order."""
    ka, kb = minimum_key(a), minimum_key(b)
    return (ka > kb) - (ka < kb)


###################
# Word Moves
###################
def switch_crossings(word: BraidWord, positions: Iterable[int]) -> BraidWord:
    """Flip the sign of the crossings at the given 0-based positions."""
    chosen = set(positions)
    gens = tuple(g.inverse() if k in chosen else g for k, g in enumerate(word.gens))
    return BraidWord(word.strands, gens)


def inverse(word: BraidWord) -> BraidWord:
    return BraidWord(word.strands, tuple(g.inverse() for g in reversed(word.gens)))


def concat(a: BraidWord, b: BraidWord) -> BraidWord:
    strands = max(a.strands, b.strands)
    return BraidWord(strands, a.gens + b.gens)


def conjugate(word: BraidWord, gen: Generator) -> BraidWord:
    """``gen * word * gen^-1`` without reduction."""
    if not 1 <= gen.index < word.strands:
        raise ValueError(f"cannot conjugate a {word.strands}-strand word by {gen.letter()}")
    return BraidWord(word.strands, (gen,) + word.gens + (gen.inverse(),))


def stabilize(word: BraidWord, sign: int = 1) -> BraidWord:
    """Add a strand and one crossing between the last two strands."""
    s = word.strands
    return BraidWord(s + 1, word.gens + (Generator(s, sign),))


def free_reduce(word: BraidWord, cyclic: bool = False) -> BraidWord:
    """Cancel adjacent ``x x^-1`` pairs, optionally also across the ends."""
    stack = []
    for g in word.gens:
        if stack and stack[-1] == g.inverse():
            stack.pop()
        else:
            stack.append(g)
    if cyclic:
        start, end = 0, len(stack)
        while end - start >= 2 and stack[start] == stack[end - 1].inverse():
            start += 1
            end -= 1
        stack = stack[start:end]
    return BraidWord(word.strands, tuple(stack))


def far_commutation_neighbors(indices: tuple) -> list:
    """Sequences reached by swapping one adjacent pair whose indices differ by more than one."""
    neighbors = []
    for k in range(len(indices) - 1):
        a, b = indices[k], indices[k + 1]
        if abs(a - b) > 1:
            neighbors.append(indices[:k] + (b, a) + indices[k + 2:])
    return neighbors

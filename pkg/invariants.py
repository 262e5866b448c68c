# invariants.py
"""
Exact polynomial invariants of braid closures.

Alexander polynomials come from the reduced Burau representation; HOMFLYPT
polynomials from a skein recursion that works directly on braid words. The
HOMFLYPT convention is ``y*P(L+) + x*P(L-) = P(L0)`` with ``P(unknot) = 1``,
where an upper case letter is the ``L+`` crossing.
"""

###################
# Standard Imports
###################
import logging
from dataclasses import dataclass
from typing import Optional

###################
# External Imports
###################
import sympy as sp

###################
# Local Imports
###################
from braid_core import (
    BraidWord, Generator, MinbraidError, ResourceBudgetExceeded, components, component_labels,
    free_reduce, switch_crossings,
)
from laurent import BiPoly, UniPoly, t

X_PLUS_Y = BiPoly({(1, 0): 1, (0, 1): 1})
DEFAULT_SKEIN_BUDGET = 500_000


class AlexanderDivisionError(MinbraidError, ArithmeticError):
    """The Burau determinant was not divisible by ``1 + t + ... + t^(s-1)``."""


@dataclass(frozen=True)
class AlexanderRecord:
    poly: UniPoly
    ap10: int
    z: int
    digital: int


###################
# Digital Roots
###################
def digital(n: int) -> int:
    """
    Repeated digit sum, with ``digital(0) == 9`` as the published tables use it.

    Args:
        n (int): Nonnegative integer.

    Returns:
        int: Value in 1..9.
    """
    if n < 0:
        raise ValueError(f"digital root is defined for n >= 0, got {n}")
    if n == 0:
        return 9
    return 1 + (n - 1) % 9


def link_digital(ap10: int, link_components: int) -> int:
    """Digital of ``ap10 / 9**(k-1)``; zero Alexander polynomials give 9."""
    if ap10 == 0:
        return 9
    divisor = 9 ** (link_components - 1)
    if ap10 % divisor:
        logging.warning(f"AP(10) {ap10} is not divisible by 9^{link_components - 1}")
        return digital(ap10)
    return digital(ap10 // divisor)


###################
# Alexander
###################
def _burau_image(strands: int, gen: Generator) -> sp.Matrix:
    n = strands - 1
    m = sp.eye(n)
    row = gen.index - 1
    if gen.sign > 0:
        m[row, row] = -t
        if row > 0:
            m[row, row - 1] = t
        if row < n - 1:
            m[row, row + 1] = 1
    else:
        m[row, row] = -1 / t
        if row > 0:
            m[row, row - 1] = 1
        if row < n - 1:
            m[row, row + 1] = 1 / t
    return m


def reduced_burau(word: BraidWord) -> sp.Matrix:
    """
    Reduced Burau matrix of a braid word.

    Args:
        word (BraidWord): Word on at least 2 strands.

    Returns:
        sympy.Matrix: ``(s-1) x (s-1)`` matrix of Laurent polynomials in ``t``.
    """
    if word.strands < 2:
        raise ValueError("the reduced Burau representation needs at least 2 strands")
    result = sp.eye(word.strands - 1)
    for gen in word.gens:
        result = (result * _burau_image(word.strands, gen)).applyfunc(sp.expand)
    return result


def normalize_alexander(poly: UniPoly) -> UniPoly:
    """Shift to lowest degree 0 and choose the sign that makes the value at 10 positive."""
    if poly.is_zero():
        return poly
    shifted = poly.shift(-poly.min_degree())
    return -shifted if shifted.evaluate(10) < 0 else shifted


def alexander_raw(word: BraidWord) -> UniPoly:
    """``det(I - burau) / (1 + t + ... + t^(s-1))`` before any normalization."""
    matrix = reduced_burau(word)
    det = sp.expand((sp.eye(word.strands - 1) - matrix).det(method='berkowitz'))
    numerator = UniPoly.from_expr(det)
    denominator = UniPoly.from_coefficients([1] * word.strands)
    try:
        return numerator.exact_divide(denominator)
    except ArithmeticError as e:
        logging.error(f"Burau determinant of {word} failed to divide: {str(e)}")
        raise AlexanderDivisionError(str(e)) from e


def alexander(word: BraidWord) -> AlexanderRecord:
    """
    Alexander polynomial of the closure with its tabulated summaries.

    ``z`` is the exponent of ``t`` factored out of the raw quotient, counted
    from the number of negative crossings, so that
    ``z == (c - s + 1 - span(poly)) / 2``.

    Args:
        word (BraidWord): Any braid word; the 1-strand unknot is accepted.

    Returns:
        AlexanderRecord: Normalized polynomial, AP(10), z and digital.
    """
    if word.strands == 1:
        return AlexanderRecord(UniPoly.constant(1), 1, 0, 1)
    raw = alexander_raw(word)
    if raw.is_zero():
        return AlexanderRecord(raw, 0, 0, 9)
    negatives = sum(1 for g in word.gens if g.sign < 0)
    z = raw.min_degree() + negatives
    poly = normalize_alexander(raw)
    ap10 = poly.evaluate(10)
    return AlexanderRecord(poly, ap10, z, link_digital(ap10, components(word)))


###################
# HOMFLYPT
###################
def _canonical_rotation(gens: tuple) -> tuple:
    if not gens:
        return gens
    return min(gens[k:] + gens[:k] for k in range(len(gens)))


def _bad_crossings(word: BraidWord) -> list:
    """
    Crossings first met from below when the closure is traversed as a descending diagram.

    Components are walked in order of their smallest top position, each from
    that position. A word with no bad crossings closes to an unlink.
    """
    labels = component_labels(word)
    starts = []
    for position, label in enumerate(labels):
        if label == len(starts):
            starts.append(position + 1)
    first_over = [None] * len(word.gens)
    for start in starts:
        position = start
        while True:
            for k, gen in enumerate(word.gens):
                if gen.index == position:
                    over = gen.sign > 0
                    position += 1
                elif gen.index == position - 1:
                    over = gen.sign < 0
                    position -= 1
                else:
                    continue
                if first_over[k] is None:
                    first_over[k] = over
            if position == start:
                break
    return [k for k, over in enumerate(first_over) if over is False]


class SkeinSolver:
    """
    Memoized HOMFLYPT computation by skein resolution on braid words.

    Args:
        budget (int): Maximum number of recursion nodes per top-level call.
    """

    def __init__(self, budget: int = DEFAULT_SKEIN_BUDGET):
        self.budget = budget
        self.memo = {}
        self._nodes = 0

    def clear(self):
        self.memo.clear()

    def homfly(self, word: BraidWord) -> BiPoly:
        self._nodes = 0
        return self._solve(word.strands, word.gens)

    def _solve(self, strands: int, gens: tuple) -> BiPoly:
        word = free_reduce(BraidWord(strands, gens), cyclic=True)
        gens = word.gens
        if strands == 1:
            return BiPoly.constant(1)
        key = (strands, _canonical_rotation(gens))
        if key in self.memo:
            return self.memo[key]
        self._nodes += 1
        if self._nodes > self.budget:
            raise ResourceBudgetExceeded("homfly skein recursion", self.budget)
        value = self._evaluate(strands, gens)
        self.memo[key] = value
        return value

    def _evaluate(self, strands: int, gens: tuple) -> BiPoly:
        present = {g.index for g in gens}
        for i in range(1, strands):
            if i not in present:
                left = tuple(g for g in gens if g.index < i)
                right = tuple(Generator(g.index - i, g.sign) for g in gens if g.index > i)
                return X_PLUS_Y * self._solve(i, left) * self._solve(strands - i, right)

        counts = {}
        for g in gens:
            counts[g.index] = counts.get(g.index, 0) + 1
        if counts[strands - 1] == 1:
            return self._solve(strands - 1, tuple(g for g in gens if g.index != strands - 1))
        if counts[1] == 1:
            return self._solve(strands - 1, tuple(Generator(g.index - 1, g.sign)
                                                  for g in gens if g.index != 1))

        word = BraidWord(strands, gens)
        bad = _bad_crossings(word)
        if not bad:
            return X_PLUS_Y ** (components(word) - 1)

        chosen = bad[0]
        for k in bad:
            if len(free_reduce(switch_crossings(word, [k]), cyclic=True).gens) < len(gens):
                chosen = k
                break
        switched = switch_crossings(word, [chosen]).gens
        removed = gens[:chosen] + gens[chosen + 1:]
        p_switched = self._solve(strands, switched)
        p_removed = self._solve(strands, removed)
        if gens[chosen].sign > 0:
            return (p_removed - BiPoly.x() * p_switched).shift(0, -1)
        return (p_removed - BiPoly.y() * p_switched).shift(-1, 0)


_solver = SkeinSolver()


def homfly(word: BraidWord, solver: Optional[SkeinSolver] = None) -> BiPoly:
    """
    HOMFLYPT polynomial of the closure.

    Args:
        word (BraidWord): Any braid word.
        solver (Optional[SkeinSolver]): Solver whose memo and budget to use; a module
            level solver is shared by default.

    Returns:
        BiPoly: Polynomial in ``x`` and ``y``.

    Raises:
        ResourceBudgetExceeded: When the skein recursion exceeds the solver budget.
    """
    return (solver or _solver).homfly(word)


def homfly_at_ones(word: BraidWord) -> int:
    return homfly(word).evaluate(1, 1)


def is_unlink(word: BraidWord) -> bool:
    """
    HOMFLYPT certificate that the closure is the unlink of its components.

    Equal polynomials are not a proof of unlinking in general; no counterexample
    is known at the crossing numbers handled here.
    """
    return homfly(word) == X_PLUS_Y ** (components(word) - 1)


def identity_key(word: BraidWord) -> tuple:
    """Chirality sensitive link identity: ``(components, serialized HOMFLYPT)``."""
    return (components(word), homfly(word).serialize())


def catalog_key(word: BraidWord) -> tuple:
    """Identity up to mirror image, the equivalence the minimum-braid catalog uses."""
    poly = homfly(word)
    return (components(word), min(poly.serialize(), poly.swap_xy().serialize()))


###################
# Skein Oracle
###################
def conway_from_homfly(poly: BiPoly) -> UniPoly:
    """Conway polynomial in ``z`` (returned as a ``UniPoly``) via ``x = -1/z, y = 1/z``."""
    terms = {}
    for (i, j), coeff in poly.items():
        power = -(i + j)
        terms[power] = terms.get(power, 0) + coeff * (-1) ** (i % 2)
    conway = UniPoly(terms)
    if conway.min_degree() < 0:
        raise ArithmeticError(f"{poly} does not specialise to a Conway polynomial")
    return conway


def alexander_from_homfly(word: BraidWord) -> UniPoly:
    """
    Normalized Alexander polynomial computed from the HOMFLYPT polynomial.

    Uses ``z**2 = t - 2 + 1/t``; odd powers of ``z`` (even component counts)
    are multiplied by ``t**(1/2)`` first, giving ``(t - 1) * (t - 2 + 1/t)**m``.
    """
    conway = conway_from_homfly(homfly(word))
    d = UniPoly({1: 1, 0: -2, -1: 1})
    result = UniPoly()
    for power, coeff in conway.items():
        if power % 2 == 0:
            result = result + coeff * d ** (power // 2)
        else:
            result = result + coeff * UniPoly({1: 1, 0: -1}) * d ** (power // 2)
    return normalize_alexander(result)

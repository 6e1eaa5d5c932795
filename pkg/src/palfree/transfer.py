"""Uniform-morphism freeness transfer and palindrome budgets.

A synchronizing q-uniform morphism maps every a-free source word to a
b-free image once that holds for all source words up to the threshold
t = max(2b/(b-a), 2(q-1)(2b-1)/(q(b-1))); the check is a DFS over the
a-free source tree with an incremental freeness test on the image.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .eertree import Eertree
from .morphisms import Morphism, load_morphism
from .repetition import ExponentBound, IncrementalFreeChecker
from .words import ALPHABETS

PAL_WINDOW_CAP = 64


@dataclass(frozen=True)
class TransferInstance:
    name: str
    h: Morphism
    source_alphabet: int
    source_bound: ExponentBound
    target_bound: ExponentBound
    claimed_palindromes: int

    def validate(self) -> None:
        a, b = self.source_bound.threshold, self.target_bound.threshold
        if not (1 < a < b):
            raise ValueError(f"{self.name}: need 1 < a < b, got a={a}, b={b}")
        if self.h.is_uniform() is None:
            raise ValueError(f"{self.name}: morphism is not uniform")
        sync = self.h.is_synchronizing()
        if sync is not True:
            raise ValueError(f"{self.name}: morphism not synchronizing: {sync}")


# the eight shipped instances: (source alphabet, source bound, target bound,
# claimed distinct-palindrome budget of the image language, eps included)
_SHIPPED = {
    "thm3a": (2, "7/3+", "10/3+", 11),
    "thm3b": (2, "7/3+", "23/7+", 12),
    "thm3c": (2, "7/3+", "3+", 13),
    "thm3d": (2, "7/3+", "8/3+", 15),
    "thm3e": (2, "7/3+", "13/5+", 18),
    "thm3f": (2, "7/3+", "28/11+", 19),
    "thm3g": (2, "7/3+", "5/2+", 21),
    "thm3h": (3, "2", "7/3+", 25),
}


def shipped_instances() -> list[str]:
    return sorted(_SHIPPED)


def load_instance(name: str) -> TransferInstance:
    try:
        sigma, src, tgt, budget = _SHIPPED[name]
    except KeyError:
        raise ValueError(f"unknown transfer instance {name!r}") from None
    inst = TransferInstance(name, load_morphism(name), sigma,
                            ExponentBound.parse(src), ExponentBound.parse(tgt),
                            budget)
    inst.validate()
    return inst


def mrs_threshold(a: Fraction, b: Fraction, q: int) -> Fraction:
    """max(2b/(b-a), 2(q-1)(2b-1)/(q(b-1))) as an exact rational."""
    if not 1 < a < b:
        raise ValueError("threshold formula needs 1 < a < b")
    if q < 1:
        raise ValueError("uniformity q must be >= 1")
    first = 2 * b / (b - a)
    second = Fraction(2 * (q - 1), q) * (2 * b - 1) / (b - 1)
    return max(first, second)


def enumerate_free_words(alphabet_size: int, bound: ExponentBound, max_len: int):
    """Yield every bound-free word of length <= max_len over 0..d-1, the
    empty word first, within each length in lexicographic order."""
    letters = ALPHABETS[alphabet_size]
    chk = IncrementalFreeChecker(bound)
    out = [""]

    def rec(depth, prefix):
        if depth == max_len:
            return
        for c in letters:
            if chk.push(c):
                out.append(prefix + c)
                rec(depth + 1, prefix + c)
            chk.pop()

    rec(0, "")
    # stream in (length, word) order for reproducibility
    return sorted(out, key=lambda w: (len(w), w))


@dataclass
class TransferResult:
    instance: str
    q: int
    synchronizing: bool
    threshold: Fraction
    depth: int
    words_checked: int
    passed: bool
    violation_source: str | None = None
    violation: str | None = None
    wall_ms: int = 0


def verify_transfer(inst: TransferInstance, depth: int | None = None) -> TransferResult:
    """Check that images of all source-bound-free words of length
    <= ceil(threshold) satisfy the target bound."""
    inst.validate()
    q = inst.h.is_uniform()
    t = mrs_threshold(inst.source_bound.threshold, inst.target_bound.threshold, q)
    tdepth = ceil(t) if depth is None else depth
    letters = ALPHABETS[inst.source_alphabet]
    images = inst.h.images
    src = IncrementalFreeChecker(inst.source_bound)
    img = IncrementalFreeChecker(inst.target_bound)
    t0 = time.monotonic()
    checked = 0

    class _BadImage(Exception):
        pass

    def rec(level) -> None:
        nonlocal checked
        if level == tdepth:
            return
        for c in letters:
            if src.push(c):
                checked += 1
                pushed = 0
                good = True
                for ch in images[int(c)]:
                    pushed += 1
                    if not img.push(ch):
                        good = False
                        break
                if not good:
                    word = src.word()
                    for _ in range(pushed):
                        img.pop()
                    src.pop()
                    raise _BadImage(word)
                rec(level + 1)
                for _ in range(pushed):
                    img.pop()
            src.pop()

    violation_source = None
    try:
        rec(0)
        passed = True
    except _BadImage as exc:
        violation_source = exc.args[0]
        passed = False
    ms = int((time.monotonic() - t0) * 1000)
    result = TransferResult(inst.name, q, True, t, tdepth, checked, passed,
                            wall_ms=ms)
    if not passed:
        from .repetition import is_free
        result.violation_source = violation_source
        result.violation = str(is_free(inst.h.apply(violation_source),
                                       inst.target_bound))
    return result


@dataclass
class PalindromeBudgetResult:
    instance: str
    window: int
    count: int
    budget: int
    within_budget: bool
    cut_index: int | None
    max_len: int
    palindromes: list[str] = field(default_factory=list)
    stabilized: bool = True
    wall_ms: int = 0

    @property
    def conclusive(self) -> bool:
        return self.cut_index is not None

    @property
    def passed(self) -> bool:
        return self.within_budget and self.conclusive


def _palindromes_of_image_language(inst: TransferInstance, window: int) -> set[str]:
    """Distinct non-empty palindromic factors of h(w) over all source-free
    words w with |w| <= window (a superset of the limit language's set)."""
    letters = ALPHABETS[inst.source_alphabet]
    images = inst.h.images
    src = IncrementalFreeChecker(inst.source_bound)
    tree = Eertree()
    found: set[str] = set()

    def rec(level):
        if level == window:
            return
        for c in letters:
            if src.push(c):
                pushed = 0
                for ch in images[int(c)]:
                    node = tree.push(ch)
                    pushed += 1
                    if node is not None:
                        found.add(tree.node_word(node))
                rec(level + 1)
                for _ in range(pushed):
                    tree.pop()
            src.pop()

    rec(0)
    return found


def palindrome_cut_index(pals: set[str], horizon: int) -> int | None:
    """Smallest k >= 2, within the horizon up to which the enumeration is
    complete, with no palindromes of lengths k-1 and k.  Any longer
    palindrome contains a central palindromic factor of length k-1 or k
    (peel two letters at a time), so none exist beyond a genuine cut."""
    bylen = set(len(p) for p in pals)
    maxlen = max(bylen, default=0)
    for k in range(2, min(maxlen + 2, horizon) + 1):
        if (k - 1) not in bylen and k not in bylen:
            return k
    return None


def verify_palindrome_budget(inst: TransferInstance, window: int | None = None,
                             keep_palindromes: bool = True) -> PalindromeBudgetResult:
    """Stabilized distinct-palindrome count of the image language (empty word
    included) compared against the claimed budget."""
    inst.validate()
    q = inst.h.is_uniform()
    t = mrs_threshold(inst.source_bound.threshold, inst.target_bound.threshold, q)
    w = window if window is not None else ceil(t) + 2
    t0 = time.monotonic()
    while True:
        pals = _palindromes_of_image_language(inst, w)
        # every factor of length <= (w-1)*q of the limit language shows up
        cut = palindrome_cut_index(pals, (w - 1) * q)
        if cut is not None or w >= PAL_WINDOW_CAP:
            break
        w += 2
    stabilized = True
    if cut is not None and w + 2 <= PAL_WINDOW_CAP:
        again = _palindromes_of_image_language(inst, w + 2)
        stabilized = again == pals
    count = len(pals) + 1  # the empty word
    ms = int((time.monotonic() - t0) * 1000)
    return PalindromeBudgetResult(
        instance=inst.name, window=w, count=count, budget=inst.claimed_palindromes,
        within_budget=count <= inst.claimed_palindromes, cut_index=cut,
        max_len=max((len(p) for p in pals), default=0),
        palindromes=sorted(pals, key=lambda p: (len(p), p)) if keep_palindromes else [],
        stabilized=stabilized, wall_ms=ms)

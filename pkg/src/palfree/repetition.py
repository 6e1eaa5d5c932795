"""Exact rational repetition exponents and freeness tests.

All decisions use integer/Fraction arithmetic; floats never touch a
freeness verdict (13/5 and 28/11 differ by 3/55, which is exactly the kind
of gap floats eventually blur).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import runs

_SMALL = 4096


@dataclass(frozen=True)
class ExponentBound:
    """threshold beta with strict=True meaning "beta+-free" (forbid > beta)
    and strict=False meaning "beta-free" (forbid >= beta)."""

    threshold: Fraction
    strict: bool = True

    def __post_init__(self):
        if self.threshold <= 1:
            raise ValueError("freeness threshold must exceed 1")

    @classmethod
    def parse(cls, text: str) -> "ExponentBound":
        """Accepts "28/11" (beta-free) or "28/11+" (beta+-free)."""
        text = text.strip()
        strict = text.endswith("+")
        if strict:
            text = text[:-1]
        return cls(Fraction(text), strict)

    def violated_by(self, exponent: Fraction) -> bool:
        return exponent > self.threshold if self.strict else exponent >= self.threshold

    def min_violating_length(self, period: int) -> int:
        """Shortest factor length that violates the bound at this period."""
        num, den = self.threshold.numerator, self.threshold.denominator
        if self.strict:
            return (period * num) // den + 1
        return -((-period * num) // den)

    def __str__(self):
        return f"{self.threshold}{'+' if self.strict else ''}"


@dataclass(frozen=True)
class Violation:
    factor: str
    period_word: str
    exponent: Fraction

    def __str__(self):
        return f"{self.factor} = ({self.period_word})^{self.exponent}"


def smallest_period(w: str) -> int:
    """Smallest p with w[i] == w[i+p] for all valid i (border function)."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no period")
    border = [0] * n
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = border[k - 1]
        if w[i] == w[k]:
            k += 1
        border[i] = k
    return n - border[n - 1]


def exponent_of(w: str) -> tuple[Fraction, str]:
    """Maximal exponent |w|/p with p the smallest period, plus the period word."""
    p = smallest_period(w)
    return Fraction(len(w), p), w[:p]


def _max_stretch_exact(w: str) -> tuple[int, int, int]:
    """(length, period, start) maximizing length/period, by full period scan."""
    n = len(w)
    best = (1, 1, 0)
    for p in range(1, n):
        run = 0
        for i in range(p, n):
            if w[i] == w[i - p]:
                run += 1
                if (run + p) * best[1] > best[0] * p:
                    best = (run + p, p, i - run - p + 1)
            else:
                run = 0
    return best


def critical_exponent(w: str, with_witness: bool = False):
    """max over factors v of |v| / smallest period of v, as an exact Fraction.

    Small words get a direct quadratic scan; large ones the divide and
    conquer stretch enumeration, which is exact whenever the answer is >= 2
    (otherwise the quadratic scan is rerun, which only pathological long
    square-free inputs trigger).
    """
    if not w:
        raise ValueError("critical exponent of the empty word")
    if len(w) <= _SMALL:
        ln, p, st = _max_stretch_exact(w)
    else:
        ln, p, st = runs.max_stretch_ratio(w)
        if Fraction(ln, p) < 2:
            ln, p, st = _max_stretch_exact(w)
    e = Fraction(ln, p)
    if with_witness:
        return e, w[st:st + ln]
    return e


def _first_violation_scan(w: str, bound: ExponentBound) -> Violation | None:
    """Leftmost-end then shortest violating factor, by per-position scan."""
    n = len(w)
    best = None  # (end, length, period)
    for p in range(1, n):
        run = 0
        need = bound.min_violating_length(p)
        if need - p < 1:
            need = p + 1
        for i in range(p, n):
            if w[i] == w[i - p]:
                run += 1
                if run + p >= need:
                    end = i - (run + p - need)
                    cand = (end, need, p)
                    if best is None or cand < best:
                        best = cand
                    break
            else:
                run = 0
    if best is None:
        return None
    end, length, p = best
    factor = w[end - length + 1:end + 1]
    return Violation(factor, factor[:p], Fraction(length, p))


def is_free(w: str, bound: ExponentBound) -> Violation | None:
    """None when w satisfies the bound; otherwise the first violation in
    leftmost-end-then-shortest order."""
    if len(w) <= _SMALL or bound.threshold < 2:
        return _first_violation_scan(w, bound)
    found = runs.violations(w, bound.threshold.numerator,
                            bound.threshold.denominator, bound.strict)
    if not found:
        return None
    best = None
    for ln, p, st in found:
        need = bound.min_violating_length(p)
        if need < p + 1:
            need = p + 1
        if ln < need:
            continue
        cand = (st + need - 1, need, p, st)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    end, length, p, st = best
    factor = w[end - length + 1:end + 1]
    return Violation(factor, factor[:p], Fraction(length, p))


class IncrementalFreeChecker:
    """Push/pop letters; push returns False when some repetition violating
    the bound ends at the new letter.

    Only suffix stretches ending at the appended position are examined, so a
    word built letter by letter with all pushes accepted is free.  Agreement
    with is_free is a tested invariant.
    """

    __slots__ = ("num", "den", "strict", "w", "_need")

    def __init__(self, bound: ExponentBound):
        self.num = bound.threshold.numerator
        self.den = bound.threshold.denominator
        self.strict = bound.strict
        self.w: list[str] = []
        self._need: list[int] = [0]  # _need[p]: match-run making period p violate

    def _extend_need(self, upto: int) -> None:
        need = self._need
        num, den = self.num, self.den
        for q in range(len(need), upto + 1):
            if self.strict:
                k = (q * (num - den)) // den + 1
            else:
                k = -((-q * (num - den)) // den)
            need.append(k if k > 1 else 1)

    def push(self, c: str) -> bool:
        w = self.w
        w.append(c)
        i = len(w) - 1
        if i == 0:
            return True
        need = self._need
        if len(need) <= i:
            self._extend_need(i)
        for p in range(1, i + 1):
            kneed = need[p]
            if kneed + p > i + 1:
                break  # kneed + p grows with p: no longer fits
            j = i - p
            if w[j] != c:
                continue
            k = 1
            while k < kneed and w[j - k] == w[i - k]:
                k += 1
            if k >= kneed:
                return False
        return True

    def pop(self) -> None:
        self.w.pop()

    def word(self) -> str:
        return "".join(self.w)

    def accepts(self, w: str) -> bool:
        """Feed a whole word through push/pop; True iff every push passed."""
        ok = True
        n = 0
        for c in w:
            n += 1
            if not self.push(c):
                ok = False
                break
        for _ in range(n):
            self.pop()
        return ok

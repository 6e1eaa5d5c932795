"""Finite words over small alphabets: factors, palindromes, Parikh vectors.

Words are plain strings of ASCII digits ("0".."3").  Strings are immutable,
hashable, compare lexicographically (letters are ordered 0 < 1 < 2 < 3),
and substring search runs in C, which is what the search modules lean on.
"""

from __future__ import annotations

from .eertree import Eertree

MAX_ALPHABET = 4
ALPHABETS = {d: "".join(chr(ord("0") + i) for i in range(d))
             for d in range(1, MAX_ALPHABET + 1)}


def check_word(w: str, alphabet_size: int = MAX_ALPHABET) -> str:
    """Validate letters; returns w unchanged."""
    allowed = ALPHABETS[alphabet_size]
    for c in w:
        if c not in allowed:
            raise ValueError(f"letter {c!r} outside alphabet of size {alphabet_size}")
    return w


def factors(w: str, n: int) -> set[str]:
    """All distinct length-n factors of w; empty set when n > |w|."""
    if n < 0:
        raise ValueError("factor length must be >= 0")
    if n == 0:
        return {""}
    return {w[i:i + n] for i in range(len(w) - n + 1)}


def reverse(w: str) -> str:
    return w[::-1]


_COMPLEMENT = str.maketrans("01", "10")


def complement(w: str) -> str:
    """Bit complement; only defined on binary words."""
    check_word(w, 2)
    return w.translate(_COMPLEMENT)


def parikh(w: str, alphabet_size: int | None = None) -> tuple[int, ...]:
    """Per-letter occurrence counts."""
    if alphabet_size is None:
        alphabet_size = max((int(c) for c in w), default=-1) + 1
        alphabet_size = max(alphabet_size, 1)
    return tuple(w.count(c) for c in ALPHABETS[alphabet_size])


def palindrome_set(w: str) -> set[str]:
    """All distinct palindromic factors of w, always including the empty word.

    Backed by the palindromic tree; agreement with the direct scanner is a
    tested invariant (see palindrome_set_scan).
    """
    tree = Eertree()
    for c in w:
        tree.push(c)
    out = set(tree.alive_words())
    out.add("")
    return out


def palindrome_set_scan(w: str) -> set[str]:
    """Reference enumerator: expand around every center.  O(n * maxpal)."""
    out = {""}
    n = len(w)
    for center in range(n):
        r = 0
        while center - r >= 0 and center + r < n and w[center - r] == w[center + r]:
            out.add(w[center - r:center + r + 1])
            r += 1
        r = 0
        while center - r >= 0 and center + 1 + r < n and w[center - r] == w[center + 1 + r]:
            out.add(w[center - r:center + r + 2])
            r += 1
    return out


def palindrome_count(w: str) -> int:
    """Number of distinct palindromic factors, the empty word included."""
    tree = Eertree()
    for c in w:
        tree.push(c)
    return tree.count() + 1


class FactorSet:
    """Factors of one or more source words, grouped by length.

    Factorially closed by construction: every factor of a stored factor is
    itself a factor of the source.
    """

    def __init__(self, source: str):
        self.source = source

    def of_length(self, n: int) -> set[str]:
        return factors(self.source, n)

    def __contains__(self, w: str) -> bool:
        return w in self.source

    def count(self, n: int) -> int:
        return len(self.of_length(n))


def read_words(path) -> list[str]:
    """Plain-text word format: one word per line, letters as ASCII digits."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(check_word(line))
    return out


def write_words(path, words) -> None:
    with open(path, "w") as fh:
        for w in sorted(words):
            fh.write(w + "\n")

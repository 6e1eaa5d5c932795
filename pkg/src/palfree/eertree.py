"""Palindromic tree (eertree) with O(1) undo, for backtracking searches.

Each push appends one letter and creates at most one node (the longest new
palindromic suffix); pop reverses exactly one push.  Node 0 is the imaginary
root of length -1, node 1 the empty word.
"""

from __future__ import annotations


class Eertree:

    __slots__ = ("s", "lens", "link", "to", "start", "last", "trail")

    def __init__(self):
        self.s: list[str] = []
        self.lens = [-1, 0]
        self.link = [0, 0]
        self.to: list[dict] = [dict(), dict()]
        self.start = [0, 0]
        self.last = 1
        self.trail: list[tuple] = []

    def _suffix_pal(self, v: int, i: int) -> int:
        s, lens, link = self.s, self.lens, self.link
        while True:
            j = i - lens[v] - 1
            if j >= 0 and s[j] == s[i]:
                return v
            v = link[v]

    def push(self, c: str) -> int | None:
        """Append letter c; return the new node id, or None if the longest
        palindromic suffix was already known."""
        self.s.append(c)
        i = len(self.s) - 1
        v = self._suffix_pal(self.last, i)
        nxt = self.to[v].get(c)
        if nxt is not None:
            self.trail.append((self.last, None))
            self.last = nxt
            return None
        newlen = self.lens[v] + 2
        if newlen == 1:
            lnk = 1
        else:
            lnk = self.to[self._suffix_pal(self.link[v], i)][c]
        node = len(self.lens)
        self.lens.append(newlen)
        self.link.append(lnk)
        self.to.append(dict())
        self.start.append(i - newlen + 1)
        self.to[v][c] = node
        self.trail.append((self.last, (v, c)))
        self.last = node
        return node

    def pop(self) -> None:
        prev_last, created = self.trail.pop()
        if created is not None:
            v, c = created
            del self.to[v][c]
            self.lens.pop()
            self.link.pop()
            self.to.pop()
            self.start.pop()
        self.last = prev_last
        self.s.pop()

    def count(self) -> int:
        """Distinct non-empty palindromic factors of the current word."""
        return len(self.lens) - 2

    def node_word(self, node: int) -> str:
        st = self.start[node]
        return "".join(self.s[st:st + self.lens[node]])

    def alive_words(self) -> list[str]:
        return [self.node_word(v) for v in range(2, len(self.lens))]

    def __len__(self) -> int:
        return len(self.s)

"""Backtracking over constrained binary/ternary word spaces.

One DFS engine drives nonexistence certificates, per-length counting,
witness search, and the two-sided-extendable middle-window enumeration the
Rauzy construction consumes.  Constraints are prefix-monotone (a violating
word has no valid extension), so pruning at the first bad letter is sound.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .eertree import Eertree
from .repetition import ExponentBound, IncrementalFreeChecker
from .words import ALPHABETS, complement

LONGEST_KEPT = 16


@dataclass(frozen=True)
class SearchConstraints:
    alphabet_size: int = 2
    exponent: ExponentBound | None = None
    palindrome_budget: int | None = None  # distinct palindromes incl. empty
    forbidden_factors: tuple[str, ...] = ()

    def describe(self) -> str:
        parts = [f"alphabet={self.alphabet_size}"]
        parts.append(f"exponent={self.exponent if self.exponent else 'none'}")
        parts.append(f"palindromes<={self.palindrome_budget if self.palindrome_budget is not None else 'unlimited'}")
        if self.forbidden_factors:
            parts.append("forbidden=" + ",".join(self.forbidden_factors))
        return " ".join(parts)


class ConstraintState:
    """Push/pop state for all constraint kinds at once."""

    def __init__(self, c: SearchConstraints):
        self.c = c
        self.free = IncrementalFreeChecker(c.exponent) if c.exponent else None
        self.tree = Eertree() if c.palindrome_budget is not None else None
        self.pal_limit = (c.palindrome_budget - 1) if c.palindrome_budget is not None else None
        self.forbidden = tuple(c.forbidden_factors)
        self.word: list[str] = []

    def push(self, ch: str) -> bool:
        """Append ch; False when the extension violates a constraint.
        The letter stays pushed either way; always pair with pop()."""
        self.word.append(ch)
        ok = True
        if self.free is not None:
            ok = self.free.push(ch)
        if self.tree is not None:
            self.tree.push(ch)
            if ok and self.tree.count() > self.pal_limit:
                ok = False
        if ok and self.forbidden:
            w = self.word
            n = len(w)
            for f in self.forbidden:
                lf = len(f)
                if lf <= n and "".join(w[n - lf:]) == f:
                    ok = False
                    break
        return ok

    def pop(self) -> None:
        self.word.pop()
        if self.free is not None:
            self.free.pop()
        if self.tree is not None:
            self.tree.pop()


@dataclass
class ExhaustionCertificate:
    constraints: SearchConstraints
    max_depth_reached: int
    nodes_visited: int
    longest_words: list[str]
    longest_count: int
    symmetry_reduced: bool
    depth_cap: int
    wall_ms: int = 0


@dataclass
class Reached:
    witness: str
    nodes_visited: int
    symmetry_reduced: bool


@dataclass
class Inconclusive:
    frontier: list[str]
    max_depth_reached: int
    nodes_visited: int
    symmetry_reduced: bool


@dataclass
class _DFS:
    state: ConstraintState
    letters: str
    depth_cap: int
    node_budget: int | None
    counts: list[int] | None
    stop_at_cap: bool
    nodes: int = 0
    max_depth: int = 0
    longest: list[str] = field(default_factory=list)
    longest_count: int = 0
    witness: str | None = None

    def run(self, roots: list[str]) -> list[str] | None:
        """Depth-first over all extensions of the given root prefixes; returns
        the unexplored frontier when the node budget runs out, else None."""
        for idx, root in enumerate(roots):
            pushed = 0
            ok = True
            for ch in root:
                if not self.state.push(ch):
                    ok = False
                    pushed += 1
                    break
                pushed += 1
            if ok:
                self._note(len(root))
                if len(root) == self.depth_cap:
                    if self.stop_at_cap and self.witness is None:
                        self.witness = root
                else:
                    rest = self._rec(root)
                    if rest is not None:
                        for _ in range(pushed):
                            self.state.pop()
                        return rest + roots[idx + 1:]
            for _ in range(pushed):
                self.state.pop()
            if self.witness is not None:
                break
        return None

    def _note(self, depth: int) -> None:
        if depth > self.max_depth:
            self.max_depth = depth
            self.longest = []
            self.longest_count = 0
        if depth == self.max_depth:
            self.longest_count += 1
            if len(self.longest) < LONGEST_KEPT:
                self.longest.append("".join(self.state.word) if self.state.word else "")
        if self.counts is not None and depth < len(self.counts):
            self.counts[depth] += 1

    def _rec(self, prefix: str) -> list[str] | None:
        depth = len(prefix)
        state = self.state
        for i, ch in enumerate(self.letters):
            if self.node_budget is not None and self.nodes >= self.node_budget:
                return [prefix + c for c in self.letters[i:]]
            self.nodes += 1
            if state.push(ch):
                word = prefix + ch
                self._note(depth + 1)
                if depth + 1 == self.depth_cap:
                    if self.stop_at_cap:
                        self.witness = word
                        state.pop()
                        return None
                else:
                    rest = self._rec(word)
                    if rest is not None:
                        state.pop()
                        # untried siblings at this level stay on the frontier
                        return rest + [prefix + c for c in self.letters[i + 1:]]
                    if self.witness is not None:
                        state.pop()
                        return None
            state.pop()
        return None


def search(c: SearchConstraints, depth_cap: int, node_budget: int | None = None,
           symmetry: bool = False, frontier: list[str] | None = None,
           counts: bool = False):
    """Exhausted(certificate) when no word of length depth_cap satisfies c
    (hence no infinite word does); Reached(witness) with the lexicographically
    least word of length depth_cap otherwise; Inconclusive on node budget."""
    if depth_cap < 1:
        raise ValueError("depth_cap must be >= 1")
    t0 = time.monotonic()
    state = ConstraintState(c)
    letters = ALPHABETS[c.alphabet_size]
    dfs = _DFS(state, letters, depth_cap, node_budget,
               [0] * (depth_cap + 1) if counts else None, stop_at_cap=True)
    if frontier is None:
        roots = [letters[0]] if symmetry else [ch for ch in letters]
    else:
        roots = list(frontier)
    rest = dfs.run(roots)
    ms = int((time.monotonic() - t0) * 1000)
    if dfs.witness is not None:
        return Reached(dfs.witness, dfs.nodes, symmetry)
    if rest is not None:
        return Inconclusive(rest, dfs.max_depth, dfs.nodes, symmetry)
    return ExhaustionCertificate(c, dfs.max_depth, dfs.nodes, sorted(dfs.longest),
                                 dfs.longest_count, symmetry, depth_cap, ms)


def count_words(c: SearchConstraints, n: int, symmetry: bool = True) -> list[int]:
    """Exact number of words of each length 0..n satisfying c.

    With symmetry=True only words starting with letter 0 are walked and the
    counts multiplied by the alphabet size; use it only when the constraints
    are invariant under alphabet permutations (freeness and palindrome
    budgets are, forbidden-factor sets usually are not)."""
    state = ConstraintState(c)
    letters = ALPHABETS[c.alphabet_size]
    dfs = _DFS(state, letters, n, None, [0] * (n + 1), stop_at_cap=False)
    roots = [letters[0]] if symmetry else [ch for ch in letters]
    rest = dfs.run(roots)
    assert rest is None
    counts = dfs.counts
    counts[0] = 1
    if symmetry:
        # constraints are complement-invariant; words starting with other
        # letters are complements of enumerated ones
        factor = c.alphabet_size
        counts = [1] + [x * factor for x in counts[1:]]
    return counts


def estimate_growth(counts: list[int], window: int | None = None) -> float:
    """Least-squares slope of log(count) over the trailing window."""
    pts = [(n, math.log(x)) for n, x in enumerate(counts) if x > 0]
    if len(pts) < 2:
        raise ValueError("not enough nonzero counts")
    if window is None:
        window = min(15, len(pts) // 2)
    pts = pts[-max(window, 2):]
    n = len(pts)
    sx = sum(p[0] for p in pts)
    sy = sum(p[1] for p in pts)
    sxx = sum(p[0] * p[0] for p in pts)
    sxy = sum(p[0] * p[1] for p in pts)
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    return math.exp(slope)


# ---------------------------------------------------------------------------
# pre-image refutation proofs


@dataclass
class ProofLeaf:
    word: str
    reason: str           # "image-forbidden", "image-exponent", "source-forbidden", "source-exponent"
    detail: str

    def lines(self, indent=0):
        yield "  " * indent + f"{self.word} : {self.reason} {self.detail}".rstrip()


@dataclass
class ProofNode:
    word: str
    side: str             # "left" | "right"
    children: list

    def lines(self, indent=0):
        yield "  " * indent + f"{self.word} : extend-{self.side}"
        for ch in self.children:
            yield from ch.lines(indent + 1)


@dataclass
class ProofLog:
    morphism_name: str
    target: str
    known_forbidden: tuple[str, ...]
    root: ProofNode | ProofLeaf
    depth: int
    nodes_examined: int

    def text(self) -> str:
        return "\n".join(self.root.lines())

    def size(self) -> int:
        def sz(node):
            if isinstance(node, ProofLeaf):
                return 1
            return 1 + sum(sz(c) for c in node.children)
        return sz(self.root)


def _image_refutation(m, w: str, image_forbidden, image_bound: ExponentBound):
    img = m.apply(w)
    for f in image_forbidden:
        if f in img:
            return ("image-forbidden", f"{f} in {img}")
    from .repetition import is_free
    v = is_free(img, image_bound)
    if v is not None:
        return ("image-exponent", f"{img} contains {v}")
    return None


def _source_refutation(w: str, known_forbidden, source_bound: ExponentBound):
    for f in known_forbidden:
        if f in w:
            return ("source-forbidden", f)
    from .repetition import is_free
    v = is_free(w, source_bound)
    if v is not None:
        return ("source-exponent", str(v))
    return None


def prove_preimage_forbidden(m, target: str, image_forbidden, known_forbidden,
                             image_bound: ExponentBound | None = None,
                             source_bound: ExponentBound | None = None,
                             max_depth: int = 16, node_budget: int = 2_000_000,
                             morphism_name: str = "") -> ProofLog | None:
    """Refute the hypothesis that target occurs in a bi-infinite source word
    whose image is image_bound-free and avoids image_forbidden.

    A word is refuted when its image violates the image constraints, or when
    on one side every one-letter extension is dead: it contains a cube-like
    violation of source_bound, contains an already-refuted factor, or is
    refuted recursively.  Returns the proof tree, or None within the budget.
    """
    if not m.is_injective():
        raise ValueError("pre-image arguments need an injective morphism")
    image_bound = image_bound or ExponentBound(Fraction(3), strict=False)
    source_bound = source_bound or ExponentBound(Fraction(3), strict=False)
    image_forbidden = tuple(image_forbidden)
    known_forbidden = tuple(known_forbidden)
    examined = 0

    def prove(w: str, depth: int, memo) -> ProofNode | ProofLeaf | None:
        nonlocal examined
        if w in memo:
            return memo[w]
        examined += 1
        if examined > node_budget:
            return None
        r = _image_refutation(m, w, image_forbidden, image_bound)
        if r is not None:
            leaf = ProofLeaf(w, *r)
            memo[w] = leaf
            return leaf
        if depth == 0:
            return None
        for side in ("right", "left"):
            kids = []
            all_dead = True
            for c in ALPHABETS[m.source_size]:
                w2 = w + c if side == "right" else c + w
                pr = _source_refutation(w2, known_forbidden, source_bound)
                if pr is not None:
                    kids.append(ProofLeaf(w2, *pr))
                    continue
                sub = prove(w2, depth - 1, memo)
                if sub is None:
                    all_dead = False
                    break
                kids.append(sub)
            if all_dead:
                node = ProofNode(w, side, kids)
                memo[w] = node
                return node
        memo[w] = None
        return None

    for d in range(1, max_depth + 1):
        root = prove(target, d, {})
        if root is not None:
            return ProofLog(morphism_name, target, known_forbidden, root, d, examined)
    return None


def replay_proof(log: ProofLog, m, image_forbidden,
                 image_bound: ExponentBound | None = None,
                 source_bound: ExponentBound | None = None) -> bool:
    """Re-verify every node of a proof tree against the stated constraints."""
    image_bound = image_bound or ExponentBound(Fraction(3), strict=False)
    source_bound = source_bound or ExponentBound(Fraction(3), strict=False)

    def check(node) -> bool:
        if isinstance(node, ProofLeaf):
            if node.reason.startswith("image"):
                return _image_refutation(m, node.word, image_forbidden,
                                         image_bound) is not None
            return _source_refutation(node.word, log.known_forbidden,
                                      source_bound) is not None
        # internal node: children must be exactly the extensions on one side
        expect = {(c + node.word if node.side == "left" else node.word + c)
                  for c in ALPHABETS[m.source_size]}
        got = {ch.word for ch in node.children}
        if got != expect:
            return False
        return all(check(ch) for ch in node.children)

    return check(log.root)


# ---------------------------------------------------------------------------
# two-sided extendability and factor equivalence


def extendable_middles(c: SearchConstraints, length: int, margin: int,
                       node_budget: int | None = None, symmetry: bool = False,
                       progress=None):
    """All middle windows w[margin:margin+length] over words w of length
    length + 2*margin satisfying c.  With symmetry=True only words starting
    with letter 0 are walked and the result is closed under complement
    (valid whenever the constraints are complement-invariant).

    Returns (middles, stats) or raises BudgetExceeded with a frontier.
    """
    total = length + 2 * margin
    state = ConstraintState(c)
    letters = ALPHABETS[c.alphabet_size]
    middles: set[str] = set()
    stats = {"nodes": 0, "leaves": 0}

    def rec(depth: int) -> None:
        if depth == total:
            stats["leaves"] += 1
            middles.add("".join(state.word[margin:margin + length]))
            return
        for ch in letters:
            stats["nodes"] += 1
            if node_budget is not None and stats["nodes"] > node_budget:
                raise BudgetExceeded(middles, stats)
            if state.push(ch):
                rec(depth + 1)
            state.pop()
        if progress is not None and depth <= 2:
            progress(stats)

    if symmetry:
        if state.push(letters[0]):
            rec(1)
        state.pop()
        middles |= {complement(w) for w in middles}
    else:
        rec(0)
    return middles, stats


class BudgetExceeded(Exception):
    def __init__(self, partial, stats):
        super().__init__("node budget exceeded")
        self.partial = partial
        self.stats = stats


@dataclass
class EquivalenceResult:
    length: int
    margin: int
    matched: bool
    only_search: list[str]
    only_reference: list[str]
    searched: int
    reference_count: int


def factor_equivalence(c: SearchConstraints, reference_prefix: str, length: int,
                       margin: int | None = None) -> EquivalenceResult:
    """Compare two-sided-extendable length-L words under c with the length-L
    factor set of the reference word."""
    if margin is None:
        margin = length
    middles, stats = extendable_middles(c, length, margin)
    ref = {reference_prefix[i:i + length]
           for i in range(len(reference_prefix) - length + 1)}
    only_search = sorted(middles - ref)
    only_ref = sorted(ref - middles)
    return EquivalenceResult(length, margin, not only_search and not only_ref,
                             only_search, only_ref, len(middles), len(ref))


# ---------------------------------------------------------------------------
# shipped pre-image data: the ternary forbidden family and the image-side
# forbidden sets for the two binary images, with the refutation orders the
# sequential arguments need

TERNARY_FORBIDDEN = ("00", "11", "22", "20", "212", "0101", "02102",
                     "121012", "01021010", "21021012102")

IMAGE_FORBIDDEN = {
    "mu": ("1101", "00100", "10101", "010011", "1011001011",
           "110010110011", "1011001010010110010"),
    "nu": ("0101", "1011", "010010", "1100110100110011"),
}

REFUTATION_ORDER = {
    "mu": ("22", "20", "00", "11", "212", "0101", "02102",
           "121012", "01021010", "21021012102"),
    "nu": ("00", "11", "22", "20", "212", "0101", "02102",
           "121012", "01021010", "21021012102"),
}

FAMILY_NAMES = {"mu": "F18", "nu": "F20"}


def run_preimage_family(morphism_name: str, max_depth: int = 16,
                        node_budget: int = 2_000_000):
    """Refute every member of the ternary forbidden family for one image
    morphism, in the shipped sequential order; returns the list of ProofLogs."""
    from .morphisms import load_morphism
    m = load_morphism(morphism_name)
    image_forbidden = IMAGE_FORBIDDEN[morphism_name]
    logs = []
    known: list[str] = []
    for target in REFUTATION_ORDER[morphism_name]:
        log = prove_preimage_forbidden(m, target, image_forbidden, tuple(known),
                                       max_depth=max_depth,
                                       node_budget=node_budget,
                                       morphism_name=morphism_name)
        if log is None:
            return logs, target
        logs.append(log)
        known.append(target)
    return logs, None

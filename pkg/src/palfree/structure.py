"""Special-factor and return-word analysis of the ternary fixed point and
its two binary images, with exact critical exponents.

The exponent of a uniformly recurrent aperiodic word is 1 + sup |w|/|r|
over bispecial factors w with shortest return word r.  Enumeration handles
every bispecial factor up to a cutoff; closed-form length sequences plus
interval-certified tail bounds dispose of the infinitely many beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cubic
from .cubic import CubicConstants, Interval, as_complex, solve_sequence
from .morphisms import Morphism, load_morphism
from .words import ALPHABETS

DEFAULT_PREFIX = 20000
PREFIX_CAP = 10 ** 7


class Stream:
    """Prefix provider for an infinite word."""

    name = "stream"
    periodic = False

    def prefix(self, n: int) -> str:
        raise NotImplementedError


class MorphicStream(Stream):
    """Fixed point of an endomorphism, optionally pushed through an outer
    morphism (images of prefixes are prefixes of the image word)."""

    def __init__(self, name: str, inner: Morphism, seed: str,
                 outer: Morphism | None = None):
        self.name = name
        self.inner = inner
        self.seed = seed
        self.outer = outer
        self._cache = ""

    def prefix(self, n: int) -> str:
        if len(self._cache) < n:
            m = n if self.outer is None else n // min(len(im) for im in self.outer.images) + 1
            base = self.inner.fixed_point_prefix(self.seed, max(m, 32))
            out = base if self.outer is None else self.outer.apply(base)
            while len(out) < n:
                m *= 2
                base = self.inner.fixed_point_prefix(self.seed, m)
                out = base if self.outer is None else self.outer.apply(base)
            self._cache = out
        return self._cache[:n]


class PeriodicStream(Stream):
    periodic = True

    def __init__(self, period_word: str):
        self.period_word = period_word
        self.name = f"({period_word})^w"

    def prefix(self, n: int) -> str:
        reps = n // len(self.period_word) + 1
        return (self.period_word * reps)[:n]


def named_stream(name: str) -> Stream:
    phi = load_morphism("phi")
    if name == "p":
        return MorphicStream("p", phi, "0")
    if name == "nu_p":
        return MorphicStream("nu_p", phi, "0", load_morphism("nu"))
    if name == "mu_p":
        return MorphicStream("mu_p", phi, "0", load_morphism("mu"))
    if set(name) <= set("0123") and name:
        return PeriodicStream(name)
    raise ValueError(f"unknown stream {name!r}")


def occurrences(text: str, w: str) -> list[int]:
    out = []
    i = text.find(w)
    while i != -1:
        out.append(i)
        i = text.find(w, i + 1)
    return out


@dataclass
class ExtensionProfile:
    word: str
    left: frozenset[str]
    right: frozenset[str]
    bi: frozenset[tuple[str, str]]
    stabilized_at: int = 0

    @property
    def b(self) -> int:
        return len(self.bi) - len(self.left) - len(self.right) + 1

    @property
    def kind(self) -> str:
        return "ordinary" if self.b == 0 else ("weak" if self.b < 0 else "strong")

    @property
    def bispecial(self) -> bool:
        return len(self.left) >= 2 and len(self.right) >= 2

    def key(self):
        return (self.word, self.left, self.right, self.bi)


def _profile_in(text: str, w: str) -> ExtensionProfile:
    L = len(text)
    if w == "":
        letters = sorted(set(text))
        bi = {(text[i], text[i + 1]) for i in range(L - 1)}
        return ExtensionProfile("", frozenset(letters), frozenset(letters),
                                frozenset(bi))
    occ = occurrences(text, w)
    if not occ:
        raise ValueError(f"{w!r} does not occur in the given prefix")
    n = len(w)
    left = {text[s - 1] for s in occ if s >= 1}
    right = {text[s + n] for s in occ if s + n < L}
    bi = {(text[s - 1], text[s + n]) for s in occ if s >= 1 and s + n < L}
    return ExtensionProfile(w, frozenset(left), frozenset(right), frozenset(bi))


def extension_profile(w: str, stream: Stream, L: int = DEFAULT_PREFIX) -> ExtensionProfile:
    """Extensions of w from all occurrences in a prefix, accepted only when
    doubling the prefix reproduces the same profile."""
    while True:
        a = _profile_in(stream.prefix(L), w)
        b = _profile_in(stream.prefix(2 * L), w)
        if a.key() == b.key():
            b.stabilized_at = 2 * L
            return b
        L *= 2
        if L > PREFIX_CAP:
            raise RuntimeError(f"extension profile of {w!r} did not stabilize")


@dataclass
class ReturnWordSet:
    word: str
    returns: frozenset[str]
    stabilized_at: int

    def shortest(self) -> str:
        return min(sorted(self.returns), key=len)


def _returns_in(text: str, w: str) -> frozenset[str]:
    occ = occurrences(text, w)
    if len(occ) < 2:
        raise ValueError(f"{w!r} occurs fewer than twice in the prefix")
    return frozenset(text[occ[i]:occ[i + 1]] for i in range(len(occ) - 1))


def return_words(w: str, stream: Stream, L: int = DEFAULT_PREFIX) -> ReturnWordSet:
    while True:
        a = _returns_in(stream.prefix(L), w)
        b = _returns_in(stream.prefix(2 * L), w)
        if a == b:
            return ReturnWordSet(w, b, 2 * L)
        L *= 2
        if L > PREFIX_CAP:
            raise RuntimeError(f"return words of {w!r} did not stabilize")


def _right_special_levels(text: str, max_len: int, alphabet: str):
    """Occurrence-start lists of right-special factors, level by level
    (every right-special factor's suffix is right special, so candidates are
    single-letter left extensions of the previous level)."""
    L = len(text)

    def right_count(starts, n):
        return len({text[s + n] for s in starts if s + n < L})

    level = {}
    for a in alphabet:
        occ = occurrences(text, a)
        if occ and right_count(occ, 1) >= 2:
            level[a] = occ
    yield level
    n = 1
    while n < max_len and level:
        nxt = {}
        for w, starts in level.items():
            for a in alphabet:
                s2 = [s - 1 for s in starts if s >= 1 and text[s - 1] == a]
                if s2 and right_count(s2, n + 1) >= 2:
                    nxt[a + w] = s2
        yield nxt
        level = nxt
        n += 1


def _bispecials_in(text: str, max_len: int, alphabet: str) -> list[ExtensionProfile]:
    out = []
    L = len(text)
    for level in _right_special_levels(text, max_len, alphabet):
        for w in sorted(level):
            starts = level[w]
            n = len(w)
            left = {text[s - 1] for s in starts if s >= 1}
            if len(left) < 2:
                continue
            right = {text[s + n] for s in starts if s + n < L}
            bi = {(text[s - 1], text[s + n]) for s in starts
                  if s >= 1 and s + n < L}
            out.append(ExtensionProfile(w, frozenset(left), frozenset(right),
                                        frozenset(bi)))
    return out


def bispecial_enumerate(stream: Stream, max_len: int,
                        L: int = DEFAULT_PREFIX) -> list[ExtensionProfile]:
    """All non-empty bispecial factors of length <= max_len, profiles
    stabilization-checked against a doubled prefix."""
    alphabet = "".join(sorted(set(stream.prefix(256))))
    while True:
        a = _bispecials_in(stream.prefix(L), max_len, alphabet)
        b = _bispecials_in(stream.prefix(2 * L), max_len, alphabet)
        if [x.key() for x in a] == [x.key() for x in b]:
            for x in b:
                x.stabilized_at = 2 * L
            return b
        L *= 2
        if L > PREFIX_CAP:
            raise RuntimeError("bispecial enumeration did not stabilize")


def factor_complexity(stream: Stream, max_n: int, L: int = DEFAULT_PREFIX) -> list[int]:
    """C(n) for n = 0..max_n via right-special extension counts
    (C(n+1) - C(n) = sum over right-special length-n factors of
    (#right extensions - 1)), stabilization-checked."""
    alphabet = "".join(sorted(set(stream.prefix(256))))

    def compute(text):
        Lt = len(text)
        counts = [1, len(set(text))]
        for n, level in enumerate(_right_special_levels(text, max_n, alphabet), 1):
            if n >= max_n:
                break
            inc = 0
            for w, starts in level.items():
                rext = len({text[s + n] for s in starts if s + n < Lt})
                inc += rext - 1
            counts.append(counts[-1] + inc)
        while len(counts) < max_n + 1:  # no special factors left: periodic tail
            counts.append(counts[-1])
        return counts[:max_n + 1]

    while True:
        a = compute(stream.prefix(L))
        b = compute(stream.prefix(2 * L))
        if a == b and len(a) == max_n + 1:
            return b
        L *= 2
        if L > PREFIX_CAP:
            raise RuntimeError("factor complexity did not stabilize")


# ---------------------------------------------------------------------------
# closed-form bispecial families

PHI = None


def _phi() -> Morphism:
    global PHI
    if PHI is None:
        PHI = load_morphism("phi")
    return PHI


def _phi_pow(w: str, k: int) -> str:
    m = _phi()
    for _ in range(k):
        w = m.apply(w)
    return w


def family_bispecial_p(fam: str, n: int) -> str:
    """Closed forms of the four bispecial families of the ternary fixed
    point; A and C start the two one-letter/two-letter branches."""
    if fam == "A":
        if n == 0:
            return "1"
        ones = ["1"] + [_phi_pow("1", 2 * k) for k in range(1, n + 1)]
        zeros = [_phi_pow("0", 2 * k - 1) for k in range(n, 0, -1)]
        return "".join(ones + zeros)
    if fam == "B":
        ones = [_phi_pow("1", 2 * k + 1) for k in range(0, n + 1)]
        zeros = [_phi_pow("0", 2 * k) for k in range(n, 0, -1)] + ["0"]
        return "".join(ones + zeros)
    if fam == "C":
        ones = ["1"] + [_phi_pow("1", 2 * k) for k in range(1, n + 1)]
        zeros = [_phi_pow("0", 2 * k) for k in range(n, 0, -1)] + ["0"]
        return "".join(ones + zeros)
    if fam == "D":
        ones = [_phi_pow("1", 2 * k + 1) for k in range(0, n + 1)]
        zeros = [_phi_pow("0", 2 * k + 1) for k in range(n, -1, -1)]
        return "".join(ones + zeros)
    raise ValueError(f"family must be one of A B C D, not {fam!r}")


def family_bispecial(kind: str, fam: str, n: int) -> str:
    """Closed-form bispecial words for p and its two binary images."""
    if kind == "p":
        return family_bispecial_p(fam, n)
    core = family_bispecial_p(fam, n)
    if kind == "nu_p":
        nu = load_morphism("nu")
        if fam == "A":
            return "1" + nu.apply(core) + "01"
        if fam == "B":
            return nu.apply(core) + "0"
        if fam == "C":
            return "1" + nu.apply(core) + "0"
        return nu.apply(core) + "01"
    if kind == "mu_p":
        mu = load_morphism("mu")
        if fam == "A":
            return mu.apply(core) + "01"
        if fam == "B":
            return "011001" + mu.apply(core)
        if fam == "C":
            return mu.apply(core)
        return "011001" + mu.apply(core) + "01"
    raise ValueError(f"kind must be p, nu_p or mu_p, not {kind!r}")


def expected_shortest_return_length(kind: str, fam: str, n: int) -> int:
    """Shortest-return-word lengths implied by the Parikh-equivalent forms:
    powers of the ternary morphism applied to 012 (families A, B) or 01
    (families C, D), pushed through the outer morphism for the images.
    Family A at n = 0 sits outside the closed form."""
    if fam == "A" and n == 0:
        if kind == "p":
            return 2
        if kind == "nu_p":
            return 3
        raise ValueError("family A starts at n = 1 for mu_p")
    word, power = {"A": ("012", 2 * n - 1), "B": ("012", 2 * n),
                   "C": ("01", 2 * n), "D": ("01", 2 * n + 1)}[fam]
    w = _phi_pow(word, power)
    if kind == "p":
        return len(w)
    outer = load_morphism("nu" if kind == "nu_p" else "mu")
    return len(outer.apply(w))


# length sequences: |outer(phi^n(base))|
SEQ_SEEDS = {
    ("nu_p", "012"): (6, 10, 17),
    ("nu_p", "01"): (4, 7, 13),
    ("mu_p", "012"): (11, 21, 36),
    ("mu_p", "01"): (10, 15, 26),
    ("p", "012"): (3, 5, 8),
    ("p", "01"): (2, 4, 7),
}


def length_sequence(kind: str, base: str, upto: int) -> list[int]:
    s = list(SEQ_SEEDS[(kind, base)])
    while len(s) <= upto:
        s.append(2 * s[-1] - s[-2] + s[-3])
    return s


@dataclass
class FamilySpec:
    seq_base: str   # "012" or "01"
    const: int      # additive constant in the numerator
    m0: int         # first sequence index (parity): ratios use s_{m0+2j}
    extra: tuple[tuple[str, Fraction], ...] = ()  # base cases outside the form


FAMILIES = {
    "nu_p": {
        "A": FamilySpec("012", 4, 1, (("1001", Fraction(4, 3)),)),
        "B": FamilySpec("012", 1, 0),
        "C": FamilySpec("01", 2, 0),
        "D": FamilySpec("01", 2, 1),
    },
    "mu_p": {
        "A": FamilySpec("012", 6, 1),
        "B": FamilySpec("012", 6, 0),
        "C": FamilySpec("01", 0, 0),
        "D": FamilySpec("01", 8, 1),
    },
}

TARGET_RATIO = {"nu_p": Fraction(3, 2), "mu_p": Fraction(17, 11)}

# ratios of the short bispecial factors outside all four families
SHORT_BISPECIAL_RATIOS = {
    "nu_p": {"0": Fraction(1), "1": Fraction(1), "01": Fraction(2, 3),
             "10": Fraction(1)},
    "mu_p": {"0": Fraction(1), "1": Fraction(1), "01": Fraction(1),
             "10": Fraction(1), "010": Fraction(3, 2), "1001": Fraction(1),
             "011001": Fraction(3, 2), "100101": Fraction(6, 5),
             "01100101": Fraction(4, 3)},
}


def exact_family_ratios(kind: str, fam: str, N: int) -> list[Fraction]:
    """|v^(j)| / |shortest return|, exactly, for j = 0..N-1."""
    spec = FAMILIES[kind][fam]
    seq = length_sequence(kind, spec.seq_base, spec.m0 + 2 * N)
    out = []
    total = spec.const
    for j in range(N):
        idx = spec.m0 + 2 * j
        total += seq[idx]
        out.append(Fraction(total, seq[idx]))
    return out


@dataclass
class TailBound:
    family: str
    n0: int
    holds: bool
    coeff: str
    lhs: str
    rhs_at_n0: str
    precision: float


def tail_bound(kind: str, fam: str, width=Fraction(1, 10 ** 16)) -> TailBound:
    """Interval proof that family ratios stay <= the target for all j >= n0.

    With s_m = A b^m + 2 Re(B l^m), the claim (K + sum_{k<=j} s_{m0+2k})
    / s_{m0+2j} <= tn/td reduces to C0 <= A b^{m0+2j} (tn - td - td/(b^2-1))
    where C0 collects the constant and oscillating parts; the right side
    grows with j, so checking j = n0 settles every larger j.
    """
    spec = FAMILIES[kind][fam]
    T = TARGET_RATIO[kind]
    tn, td = T.numerator, T.denominator
    consts = solve_sequence(SEQ_SEEDS[(kind, spec.seq_base)], width)
    beta, A, B = consts.beta, consts.A, consts.B
    b2 = beta * beta
    lam = consts.lam()
    lam_abs = lam.abs()
    lam2 = lam * lam
    abs_1ml2 = (as_complex(1) - lam2).abs()
    Babs = B.abs()
    coeff = (tn - td) - td / (b2 - 1)
    if not Interval(0).certainly_lt(coeff):
        return TailBound(fam, -1, False, repr(coeff), "", "", float(width))

    def pw(iv, k):
        out = Interval(1)
        for _ in range(k):
            out = out * iv
        return out

    for n0 in range(1, 9):
        lam_m0 = pw(lam_abs, spec.m0)
        lam_2n0 = pw(lam_abs, 2 * n0)
        lhs = (td * spec.const
               - td * A * pw(beta, spec.m0) / (b2 - 1)
               + 2 * td * Babs * lam_m0 * (1 + lam_2n0) / abs_1ml2
               + 2 * (tn - td) * Babs * lam_m0 * lam_2n0)
        rhs = A * pw(beta, spec.m0 + 2 * n0) * coeff
        if lhs.certainly_leq(rhs):
            return TailBound(fam, n0, True, repr(coeff), repr(lhs), repr(rhs),
                             float(max(lhs.width, rhs.width)))
    return TailBound(fam, -1, False, repr(coeff), repr(lhs), repr(rhs),
                     float(max(lhs.width, rhs.width)))


@dataclass
class FamilyRatioReport:
    kind: str
    family: str
    exact_ratios: list[Fraction]
    sup: Fraction
    sup_index: int | str
    bounded_by_target: bool
    target: Fraction
    tail: TailBound | None


def family_ratio_analysis(kind: str, family: str, N: int = 30) -> FamilyRatioReport:
    """Exact ratios for the first N family members plus the interval tail
    verdict; family "F" covers the short bispecial factors."""
    T = TARGET_RATIO[kind]
    if family == "F":
        ratios = SHORT_BISPECIAL_RATIOS[kind]
        sup = max(ratios.values())
        witness = min(w for w, r in ratios.items() if r == sup)
        return FamilyRatioReport(kind, "F", sorted(ratios.values()), sup,
                                 witness, sup <= T, T, None)
    spec = FAMILIES[kind][family]
    tail = tail_bound(kind, family)
    exact = exact_family_ratios(kind, family, max(N, tail.n0))
    candidates = list(enumerate(exact)) + [(w, r) for w, r in spec.extra]
    sup_index, sup = max(candidates, key=lambda t: t[1])
    ok = sup <= T and tail.holds and all(r <= T for r in exact)
    return FamilyRatioReport(kind, family, exact[:N], sup, sup_index, ok, T, tail)


@dataclass
class StructuralExponent:
    kind: str
    exponent: Fraction
    witness_word: str
    witness_ratio: Fraction
    families: dict[str, FamilyRatioReport]
    enumerated_max: Fraction
    enumerated_witness: str


def critical_exponent_via_bispecials(stream: Stream, max_bs_len: int = 500,
                                     L: int = DEFAULT_PREFIX):
    """1 + max |w|/|shortest return| over enumerated bispecial factors,
    with the maximizing witness.  Requires an aperiodic uniformly recurrent
    stream (periodic streams are rejected)."""
    if stream.periodic:
        raise ValueError("bispecial exponent formula needs an aperiodic word")
    text = stream.prefix(4 * DEFAULT_PREFIX)
    if len(set(text[i:i + 16] for i in range(len(text) - 16))) <= 16:
        raise ValueError("stream looks eventually periodic")
    profiles = bispecial_enumerate(stream, max_bs_len, L)
    best = (Fraction(0), "")
    for prof in profiles:
        rw = return_words(prof.word, stream, L)
        ratio = Fraction(len(prof.word), len(rw.shortest()))
        if ratio > best[0]:
            best = (ratio, prof.word)
    return 1 + best[0], best[1], best[0], profiles


def structural_exponent(kind: str, N: int = 30) -> StructuralExponent:
    """Assemble the exact critical exponent of one of the two binary images
    from the family analysis, cross-checked against enumeration."""
    if kind not in ("nu_p", "mu_p"):
        raise ValueError("structural exponent is computed for nu_p and mu_p")
    reports = {fam: family_ratio_analysis(kind, fam, N)
               for fam in ("A", "B", "C", "D", "F")}
    if not all(r.bounded_by_target for r in reports.values()):
        bad = [f for f, r in reports.items() if not r.bounded_by_target]
        raise ArithmeticError(f"tail bounds undecided for families {bad}")
    sup = max(r.sup for r in reports.values())
    best_fam = min(f for f, r in reports.items() if r.sup == sup)
    rep = reports[best_fam]
    if isinstance(rep.sup_index, int):
        # ratio index j maps to family index n = j (n = j + 1 for family A,
        # whose closed form starts at n = 1)
        n = rep.sup_index + (1 if best_fam == "A" else 0)
        witness = family_bispecial(kind, best_fam, n)
    else:
        witness = rep.sup_index
    stream = named_stream(kind)
    E, enum_wit, enum_ratio, _profiles = critical_exponent_via_bispecials(
        stream, max_bs_len=len(witness) + 50)
    exponent = 1 + sup
    if E != exponent:
        raise ArithmeticError(f"enumeration ({E}) disagrees with families ({exponent})")
    return StructuralExponent(kind, exponent, witness, sup, reports,
                              enum_ratio, enum_wit)


def asymptotic_exponent(kind: str, width=Fraction(1, 10 ** 12)) -> Interval:
    """1 + b^2/(b^2-1) for the Perron root b; the three words share it
    (the images are injective-morphic with synchronization points)."""
    if kind not in ("p", "nu_p", "mu_p"):
        raise ValueError("asymptotic exponent known for p, nu_p, mu_p only")
    return cubic.asymptotic_exponent_value(width)


def empirical_asymptotic(kind: str, prefix_len: int = 200000,
                         min_period: int = 50) -> Fraction:
    """Largest exponent among repetitions with long periods in a prefix:
    a direct cross-check of the asymptotic exponent."""
    from . import runs
    text = named_stream(kind).prefix(prefix_len)
    ln, p, _ = runs.max_stretch_ratio(text, min_period)
    return Fraction(ln, p)


def sequence_solver(seeds, width=Fraction(1, 10 ** 13)) -> CubicConstants:
    """Closed-form constants for a length sequence obeying
    s_{n+1} = 2 s_n - s_{n-1} + s_{n-2}; exact-interval output."""
    return solve_sequence(tuple(seeds), width)


def paper_display_checks(width=Fraction(1, 10 ** 13)) -> dict[str, bool]:
    """The eight literal tail displays from the source analysis, evaluated
    in interval arithmetic (historical record; the uniform tail_bound above
    is what the verdicts rest on).  One display (mu families, D) is known
    not to hold numerically even though its family is bounded."""
    c1 = solve_sequence((6, 10, 17), width)
    c2 = solve_sequence((4, 7, 13), width)
    c3 = solve_sequence((11, 21, 36), width)
    c4 = solve_sequence((10, 15, 26), width)
    beta = c1.beta
    b2 = beta * beta
    lam = c1.lam()
    la = lam.abs()
    lam2 = lam * lam
    one_m_l2 = as_complex(1) - lam2
    a1ml2 = one_m_l2.abs()
    A1, B1 = c1.A, c1.B.abs()
    A2, B2c = c2.A, c2.B
    B2 = B2c.abs()
    A3, B3 = c3.A, c3.B.abs()
    A4, B4c = c4.A, c4.B
    B4 = B4c.abs()
    la2 = la * la
    la4 = la2 * la2
    checks = {
        "nu-pre": (2 / (b2 - 1)).certainly_leq(1),
        "nu-A": (8 + 8 * B1 * la / a1ml2).certainly_leq(
            2 * A1 * beta / (b2 - 1) - 2 * B1 * la),
        "nu-B": (2 + 8 * B1 / a1ml2).certainly_leq(
            2 * A1 / (b2 - 1) - 2 * B1),
        "nu-C": (4 + 4 * (B2c / one_m_l2).re + 4 * B2 * la4 / a1ml2).certainly_leq(
            2 * A2 / (b2 - 1) - 2 * B2 * la4),
        "nu-D": (4 + 8 * B2 * la / a1ml2).certainly_leq(
            2 * A2 * beta / (b2 - 1) - 2 * B2 * la),
        "mu-pre": (11 / (b2 - 1)).certainly_leq(6),
        "mu-A": (66 + 44 * B3 * la / a1ml2).certainly_leq(
            11 * A3 * beta / (b2 - 1) - 12 * B3 * la),
        "mu-B": (66 + 22 * B3 * (1 + la2) / a1ml2).certainly_leq(
            11 * A3 / (b2 - 1) + A3 * b2 * (6 - 11 / (b2 - 1)) - 12 * B3 * la2),
        "mu-C": (22 * B4 * (1 + la2) / a1ml2).certainly_leq(
            11 * A4 / (b2 - 1) + A4 * b2 * (6 - 11 / (b2 - 1)) - 12 * B4 * la2),
        "mu-D": (88 + 22 * (B4c * lam / one_m_l2).re + 22 * B4 * la / a1ml2).certainly_leq(
            11 * A4 * beta / (b2 - 1) - 12 * B4 * la),
    }
    return checks

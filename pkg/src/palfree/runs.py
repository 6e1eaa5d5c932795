"""Maximal periodic stretches by divide and conquer (Z-function based).

A stretch is a pair (length, period): a factor of that length all of whose
positions i satisfy w[i] == w[i+period].  Every stretch of exponent >= 2
(a run) crossing a split midpoint is recovered exactly from four Z-arrays,
so the recursion sees every run; stretches of exponent < 2 are only found
inside the small base cases.  Callers must therefore treat results below
exponent 2 as a lower bound (see repetition.critical_exponent).
"""

from __future__ import annotations

_BASE = 64


def zfunc(s: str) -> list[int]:
    n = len(s)
    z = [0] * n
    if n == 0:
        return z
    z[0] = n
    l = r = 0
    for i in range(1, n):
        zi = 0
        if i < r:
            zi = z[i - l]
            if zi > r - i:
                zi = r - i
        while i + zi < n and s[zi] == s[i + zi]:
            zi += 1
        z[i] = zi
        if i + zi > r:
            l, r = i, i + zi
    return z


def _stretches_small(w: str, emit) -> None:
    """Emit (length, period, start) for every maximal stretch, every period."""
    n = len(w)
    for p in range(1, n):
        run = 0
        for i in range(p, n):
            if w[i] == w[i - p]:
                run += 1
                if i == n - 1 or w[i + 1] != w[i + 1 - p]:
                    emit(run + p, p, i - run - p + 1)
            else:
                run = 0


def max_stretch_ratio(w: str, min_period: int = 1):
    """(length, period, start) maximizing length/period over all maximal
    stretches found with period >= min_period; exact for the maximum
    whenever that maximum is >= 2."""
    best = (1, min_period, 0)

    def consider(ln, p, st):
        nonlocal best
        if p >= min_period and ln * best[1] > best[0] * p:
            best = (ln, p, st)

    _scan(w, 0, len(w), consider)
    return best


def violations(w: str, num: int, den: int, strict: bool):
    """All maximal stretches violating the bound num/den, as
    (length, period, start) triples.  Complete whenever num/den >= 2."""
    out = []

    def consider(ln, p, st):
        if (ln * den > p * num) if strict else (ln * den >= p * num):
            out.append((ln, p, st))

    _scan(w, 0, len(w), consider)
    return out


def _scan(w: str, lo: int, hi: int, consider) -> None:
    n = hi - lo
    if n <= _BASE:
        sub = w[lo:hi]
        _stretches_small(sub, lambda ln, p, st: consider(ln, p, lo + st))
        return
    mid = lo + n // 2
    _scan(w, lo, mid, consider)
    _scan(w, mid, hi, consider)
    u = w[lo:mid]
    v = w[mid:hi]
    lu, lv = len(u), len(v)
    ru = u[::-1]
    z_ru = zfunc(ru)
    z_uv = zfunc(v + "\x00" + w[lo:hi])
    # period window ends at the midpoint: compare positions mid-p+t / mid+t
    for p in range(1, lu + 1):
        b = z_ru[p] if p < lu else 0
        if b > lu - p:
            b = lu - p
        f = z_uv[lv + 1 + lu - p]
        if f > lv:
            f = lv
        if b + f >= 1:
            consider(p + b + f, p, lo + lu - p - b)
    rw = w[lo:hi][::-1]
    z_rur = zfunc(ru + "\x00" + rw)
    z_v = zfunc(v)
    # period window starts at the midpoint: compare positions mid+t / mid+p+t
    for p in range(1, lv + 1):
        f = z_v[p] if p < lv else 0
        if f > lv - p:
            f = lv - p
        b = z_rur[lu + 1 + (n - lu - p)]
        if b > lu:
            b = lu
        if b + f >= 1:
            consider(p + b + f, p, lo + lu - b)

"""Morphisms between free monoids: application, fixed points, incidence
matrices, uniformity, the synchronizing property, synchronization points."""

from __future__ import annotations

from importlib import resources
from itertools import product

from .words import ALPHABETS, FactorSet, check_word, parikh


class Morphism:
    """Letter-to-word map given as a tuple of images for letters 0..d-1."""

    def __init__(self, images, target_alphabet_size: int | None = None):
        self.images = tuple(images)
        if not self.images:
            raise ValueError("morphism needs at least one image")
        if any(im == "" for im in self.images):
            raise ValueError("erasing morphisms are not supported")
        self.source_size = len(self.images)
        if target_alphabet_size is None:
            target_alphabet_size = max(int(c) for im in self.images for c in im) + 1
        self.target_size = target_alphabet_size
        for im in self.images:
            check_word(im, self.target_size)

    def __repr__(self):
        body = ", ".join(f"{i}->{im}" for i, im in enumerate(self.images))
        return f"Morphism({body})"

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def apply(self, w: str) -> str:
        images = self.images
        try:
            return "".join(images[int(c)] for c in w)
        except IndexError:
            raise ValueError(f"word {w!r} leaves the source alphabet") from None

    __call__ = apply

    def compose(self, inner: "Morphism") -> "Morphism":
        """self after inner."""
        return Morphism(tuple(self.apply(im) for im in inner.images),
                        self.target_size)

    def is_prolongable_on(self, seed: str) -> bool:
        im = self.images[int(seed)]
        return im.startswith(seed) and len(im) >= 2

    def fixed_point_prefix(self, seed: str, n: int) -> str:
        """Length-n prefix of the fixed point grown from a prolongable seed.

        Expands letter images column by column instead of rewriting the whole
        string repeatedly, so output is linear in n.
        """
        if self.source_size != self.target_size:
            raise ValueError("fixed point needs an endomorphism")
        if not self.is_prolongable_on(seed):
            raise ValueError(f"morphism not prolongable on {seed!r}")
        if n == 0:
            return ""
        # buf = images of buf's own letters, read left to right; stays a
        # prefix of the fixed point, grows by >= 1 letter per step
        chunks = [self.images[int(seed)]]
        total = len(chunks[0])
        pos = 1
        buf = chunks[0]
        while total < n:
            if pos >= len(buf):
                buf = "".join(chunks)
            chunks.append(self.images[int(buf[pos])])
            total += len(chunks[-1])
            pos += 1
        return "".join(chunks)[:n]

    def incidence_matrix(self) -> list[list[int]]:
        """M[k][j] = occurrences of letter k in the image of letter j."""
        cols = [parikh(im, self.target_size) for im in self.images]
        return [[cols[j][k] for j in range(self.source_size)]
                for k in range(self.target_size)]

    def is_uniform(self) -> int | None:
        q = len(self.images[0])
        return q if all(len(im) == q for im in self.images) else None

    def is_injective(self) -> bool:
        """Sardinas-Patterson codeness of the image set (plus distinctness)."""
        imgs = self.images
        if len(set(imgs)) < len(imgs):
            return False
        codes = set(imgs)
        # dangling suffixes
        pending = set()
        for a, b in product(codes, codes):
            if a != b and b.startswith(a):
                pending.add(b[len(a):])
        seen = set(pending)
        while pending:
            nxt = set()
            for d in pending:
                for c in codes:
                    if c.startswith(d):
                        tail = c[len(d):]
                        if tail == "":
                            return False
                        if tail not in seen:
                            nxt.add(tail)
                    if d.startswith(c):
                        tail = d[len(c):]
                        if tail == "":
                            return False
                        if tail not in seen:
                            nxt.add(tail)
            seen |= nxt
            pending = nxt
        return True

    def is_synchronizing(self):
        """For q-uniform morphisms: True, or a counterexample tuple
        (a, b, c, u, v) with images f(ab) = u f(c) v breaking the property."""
        q = self.is_uniform()
        if q is None:
            raise ValueError("synchronizing test requires a uniform morphism")
        letters = ALPHABETS[self.source_size]
        for a, b in product(letters, letters):
            fab = self.apply(a + b)
            for c in letters:
                fc = self.images[int(c)]
                for off in range(0, q + 1):
                    if fab[off:off + q] != fc:
                        continue
                    if (off == 0 and a == c) or (off == q and b == c):
                        continue
                    return (a, b, c, fab[:off], fab[off + q:])
        return True


def synchronization_points(m: Morphism, w: str, context: FactorSet) -> list[int] | None:
    """Cut positions 0..|w| forced in every parse of w as a factor of images
    of context words; None when w admits no parse at all.

    Parses are enumerated over context factors long enough that any parse
    ambiguity has resolved (one extra image on each side).
    """
    if not w:
        return [0]
    min_im = min(len(im) for im in m.images)
    zlen = len(w) // min_im + 2
    cuts = None
    found = False
    for z in sorted(context.of_length(zlen)):
        img = m.apply(z)
        # image boundary positions of z inside img
        bounds = [0]
        for c in z:
            bounds.append(bounds[-1] + len(m.images[int(c)]))
        boundset = set(bounds)
        start = img.find(w)
        while start != -1:
            found = True
            here = {b - start for b in boundset if start <= b <= start + len(w)}
            cuts = here if cuts is None else (cuts & here)
            start = img.find(w, start + 1)
    if not found:
        return None
    return sorted(cuts)


def characteristic_polynomial(matrix) -> list[int]:
    """det(tI - M) over Z[t] by cofactor expansion, highest degree first.
    Exact integer arithmetic; alphabets here never exceed 4 letters."""
    n = len(matrix)

    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    def poly_add(a, b):
        la, lb = len(a), len(b)
        if la < lb:
            a = [0] * (lb - la) + a
        elif lb < la:
            b = [0] * (la - lb) + b
        return [x + y for x, y in zip(a, b)]

    # entries of tI - M as polynomials in t (highest degree first)
    entries = [[[1, -matrix[i][j]] if i == j else [-matrix[i][j]]
                for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        out = [0]
        r = rows[0]
        for idx, c in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = poly_mul(entries[r][c], minor)
            if idx % 2:
                term = [-x for x in term]
            out = poly_add(out, term)
        return out

    poly = det(list(range(n)), list(range(n)))
    while len(poly) > 1 and poly[0] == 0:
        poly = poly[1:]
    return poly


def parse_morphism(text: str) -> Morphism:
    """Text format: one line per letter, "letter -> image"."""
    images = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        left, _, right = line.partition("->")
        letter = left.strip()
        image = right.strip()
        if not letter.isdigit() or not image:
            raise ValueError(f"bad morphism line: {line!r}")
        images[int(letter)] = image
    if sorted(images) != list(range(len(images))):
        raise ValueError("morphism must define letters 0..d-1 exactly once each")
    return Morphism(tuple(images[i] for i in range(len(images))))


def load_morphism(name: str) -> Morphism:
    """Load one of the shipped morphism data files (phi, mu, nu, thm3a..thm3h)."""
    data = resources.files("palfree").joinpath(f"data/{name}.txt").read_text()
    return parse_morphism(data)


def shipped_morphisms() -> list[str]:
    data = resources.files("palfree").joinpath("data")
    return sorted(p.name[:-4] for p in data.iterdir() if p.name.endswith(".txt"))

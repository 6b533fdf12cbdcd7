"""Ternary analog of Grassmann algebra on N generators.

Generators ``th[A]`` carry grade 1 and conjugate generators ``bth[A]``
carry grade 2 (A = 1..N).  Binary products are free; ternary products
obey cyclic rotation rules with a cube-root-of-unity phase; all words of
length four or more vanish, as do mixed three-letter words and pure
triples with all indices equal.

Canonical words stored by ``GrassElement``:

* the empty word (unit), single letters;
* all two-letter words with any ``bth`` letters moved after ``th``
  letters (each swap contributes the phase j^2);
* pure three-letter words in their lexicographically least cyclic
  rotation, with phase j per left rotation for ``th`` triples and j^2
  per left rotation for ``bth`` triples.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .scalar import J2, ONE, Scalar, ZERO, jpow

# A letter is ("th" | "bth", index).
GrassLetter = tuple[str, int]
GrassWord = tuple[GrassLetter, ...]


def theta(index: int) -> GrassLetter:
    return ("th", index)


def bar_theta(index: int) -> GrassLetter:
    return ("bth", index)


def letter_grade(letter: GrassLetter) -> int:
    return 1 if letter[0] == "th" else 2


def word_grade(word: GrassWord) -> int:
    return sum(letter_grade(l) for l in word) % 3


def _canonical_cycle(word: GrassWord, phase_step: int) -> tuple[Scalar, GrassWord] | None:
    """Least cyclic rotation of a pure triple; None when all indices coincide."""
    idx = tuple(l[1] for l in word)
    if idx[0] == idx[1] == idx[2]:
        return None  # the orbit relation forces (1 - j) w = 0
    best: tuple[int, GrassWord] | None = None
    for s in range(3):
        rot = word[s:] + word[:s]
        if best is None or rot < best[1]:
            best = (s, rot)
    assert best is not None
    s, rot = best
    return (jpow(phase_step * s), rot)


def _normalize_letters(word: GrassWord, N: int) -> tuple[Scalar, GrassWord] | None:
    """Scalar-times-canonical-word for one raw word; None means zero."""
    for kind, index in word:
        if kind not in ("th", "bth"):
            raise ValueError(f"unknown generator kind {kind!r}")
        if not 1 <= index <= N:
            raise ValueError(f"generator index {index} out of range 1..{N}")
    if len(word) >= 4:
        return None
    if len(word) <= 1:
        return (ONE, word)
    kinds = {l[0] for l in word}
    if len(word) == 2:
        if kinds == {"th"} or kinds == {"bth"}:
            return (ONE, word)  # binary products are independent, kept as written
        if word[0][0] == "bth":  # reorder to th-before-bth, phase j^2 per swap
            return (J2, (word[1], word[0]))
        return (ONE, word)
    # length 3
    if len(kinds) > 1:
        return None  # mixed three-letter words vanish in the reduced algebra
    return _canonical_cycle(word, 1 if kinds == {"th"} else 2)


class GrassElement:
    """Scalar-linear combination of canonical generator words."""

    __slots__ = ("terms", "N")

    def __init__(
        self, N: int, terms: Iterable[tuple[Scalar, GrassWord]] = ()
    ) -> None:
        if N < 1:
            raise ValueError("generator count must be a positive integer")
        self.N = N
        self.terms: dict[GrassWord, Scalar] = {}
        for coeff, word in terms:
            got = _normalize_letters(word, N)
            if got is None:
                continue
            phase, canon = got
            val = self.terms.get(canon, ZERO) + coeff * phase
            if val.is_zero():
                self.terms.pop(canon, None)
            else:
                self.terms[canon] = val

    @staticmethod
    def zero(N: int) -> GrassElement:
        return GrassElement(N)

    @staticmethod
    def unit(N: int) -> GrassElement:
        return GrassElement(N, [(ONE, ())])

    @staticmethod
    def word(N: int, letters: Iterable[GrassLetter]) -> GrassElement:
        return GrassElement(N, [(ONE, tuple(letters))])

    def _require_same(self, other: GrassElement) -> None:
        if self.N != other.N:
            raise ValueError("generator count mismatch")

    def __add__(self, other: GrassElement) -> GrassElement:
        self._require_same(other)
        out = GrassElement(self.N)
        out.terms = dict(self.terms)
        for word, coeff in other.terms.items():
            val = out.terms.get(word, ZERO) + coeff
            if val.is_zero():
                out.terms.pop(word, None)
            else:
                out.terms[word] = val
        return out

    def __sub__(self, other: GrassElement) -> GrassElement:
        return self + other.scale(-ONE)

    def scale(self, s: Scalar) -> GrassElement:
        out = GrassElement(self.N)
        if not s.is_zero():
            out.terms = {w: c * s for w, c in self.terms.items()}
        return out

    def __mul__(self, other: GrassElement) -> GrassElement:
        self._require_same(other)
        items = []
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                items.append((c1 * c2, w1 + w2))
        return GrassElement(self.N, items)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassElement):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.N, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[tuple[GrassWord, Scalar]]:
        return iter(self.terms.items())

    def grade(self) -> int | str:
        """Common grade of all terms, "mixed" otherwise; the zero element is 0."""
        if not self.terms:
            return 0
        grades = {word_grade(w) for w in self.terms}
        return grades.pop() if len(grades) == 1 else "mixed"

    def __str__(self) -> str:
        from .render import render_grass

        return render_grass(self)

    def __repr__(self) -> str:
        return f"GrassElement(N={self.N}, terms={len(self.terms)})"


def normalize_word(N: int, letters: Iterable[GrassLetter]) -> GrassElement:
    return GrassElement.word(N, letters)


def multiply(x: GrassElement, y: GrassElement) -> GrassElement:
    return x * y


def grade(x: GrassElement) -> int | str:
    return x.grade()


def enumerate_basis(N: int) -> list[tuple[GrassWord, int]]:
    """All canonical nonzero words with their grades, in deterministic order.

    Counts: 1 unit, N + N single letters, 3 N^2 two-letter words, and
    (N^3 - N)/3 cyclic classes for each pure triple kind.
    """
    basis: list[tuple[GrassWord, int]] = [((), 0)]
    rng = range(1, N + 1)
    for kind in ("th", "bth"):
        for a in rng:
            word: GrassWord = ((kind, a),)
            basis.append((word, word_grade(word)))
    for k1, k2 in (("th", "th"), ("bth", "bth"), ("th", "bth")):
        for a in rng:
            for b in rng:
                word = ((k1, a), (k2, b))
                basis.append((word, word_grade(word)))
    for kind in ("th", "bth"):
        seen: set[GrassWord] = set()
        for a in rng:
            for b in rng:
                for c in rng:
                    if a == b == c:
                        continue
                    word = ((kind, a), (kind, b), (kind, c))
                    least = min(word[s:] + word[:s] for s in range(3))
                    if least not in seen:
                        seen.add(least)
                        basis.append((least, word_grade(least)))
    return basis


def theta_only_count(N: int) -> int:
    """Number of basis words built from ``th`` letters alone (unit excluded)."""
    return sum(
        1
        for word, _ in enumerate_basis(N)
        if word and all(kind == "th" for kind, _ in word)
    )

"""Normal forms and a decision procedure for the rewritten kernel group.

The six-generator kernel splits as a semidirect product: the subgroup ``H``
generated by ``a13, a23, c12, c13, c23`` is normal, with infinite cyclic
complement generated by ``a12``.  Inside ``H``, the letters ``a13, c13``
and ``a23, c23`` generate commuting pairs, so the subgroup they generate is
the free product of two rank-two free abelian groups; ``c12`` is a stable
letter conjugating the cyclic subgroup generated by ``a13 a23`` to itself
identically.  That exhibits ``H`` as an HNN extension, and Britton's lemma
decides its word problem.

Accordingly a word is decided in two stages:

* ``collect`` pushes every ``a12`` letter to the right, replacing each
  remaining letter by its conjugate under the appropriate power of ``a12``;
* the ``a12``-free part is Britton-reduced: free-product syllables are
  merged and every pinch ``c12^e (a13 a23)^n c12^-e`` is spliced out.

The result is trivial exactly when the ``a12`` exponent is zero and the
reduced ``H`` part is empty.  Intermediate words are length-capped
(default one million letters, override with the ``FPG_WORD_CAP``
environment variable) so pathological inputs fail fast instead of
exhausting memory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .st3 import st3_alphabet
from .words import Word, free_reduce, invert

__all__ = [
    "ForeignLetter",
    "CapacityExceeded",
    "DEFAULT_WORD_CAP",
    "word_cap",
    "ZZWord",
    "zz_normal_form",
    "zz_power",
    "zz_to_word",
    "cyclic_power",
    "HNormalForm",
    "britton_reduce",
    "h_is_trivial",
    "h_equal",
    "conjugate_by_complement",
    "complement_conjugates",
    "ST3NormalForm",
    "collect",
    "st3_is_trivial",
    "st3_equal",
]


class ForeignLetter(ValueError):
    """Raised when a word contains a letter outside the expected subgroup."""


class CapacityExceeded(RuntimeError):
    """Raised when an intermediate word outgrows the configured length cap."""


DEFAULT_WORD_CAP = 1_000_000


def word_cap() -> int:
    """The current intermediate-word length cap (env ``FPG_WORD_CAP``)."""
    return int(os.environ.get("FPG_WORD_CAP", DEFAULT_WORD_CAP))


def _check_cap(length: int) -> None:
    cap = word_cap()
    if length > cap:
        raise CapacityExceeded(
            f"intermediate word of {length} letters exceeds the cap of {cap}; "
            "raise FPG_WORD_CAP to allow larger computations"
        )


def _parse(word: Word | str) -> Word:
    if isinstance(word, str):
        word = st3_alphabet().word(word)
    elif word.alphabet != st3_alphabet():
        raise ValueError("expected a word over the six kernel generators")
    return free_reduce(word)


@lru_cache(maxsize=None)
def _indices() -> dict[str, int]:
    alphabet = st3_alphabet()
    return {name: alphabet.index(name) for name in alphabet.names}


# --------------------------------------------------------------------------
# Free product of two rank-two free abelian groups on (a13, c13) / (a23, c23)

# factor 1 holds a13/c13 exponents, factor 2 holds a23/c23 exponents
_FACTOR = {"a13": (1, 0), "c13": (1, 1), "a23": (2, 0), "c23": (2, 1)}


@dataclass(frozen=True)
class ZZWord:
    """Normal form in the free product: alternating syllables
    ``(factor, a_exponent, c_exponent)`` with no zero syllable."""

    syllables: tuple[tuple[int, int, int], ...]

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "ZZWord") -> "ZZWord":
        return ZZWord(_merge_syllables(self.syllables + other.syllables))

    def __invert__(self) -> "ZZWord":
        return ZZWord(
            tuple((f, -m, -p) for f, m, p in reversed(self.syllables))
        )

    def __str__(self) -> str:
        return " ".join(f"F{f}({m},{p})" for f, m, p in self.syllables) or "1"


def _merge_syllables(
    syllables: Iterable[tuple[int, int, int]]
) -> tuple[tuple[int, int, int], ...]:
    stack: list[tuple[int, int, int]] = []
    for factor, m, p in syllables:
        if stack and stack[-1][0] == factor:
            _, m0, p0 = stack.pop()
            m, p = m0 + m, p0 + p
        if m or p:
            stack.append((factor, m, p))
    return tuple(stack)


def zz_normal_form(word: Word | str) -> ZZWord:
    """Normal form of a word over ``a13, c13, a23, c23``.

    Raises :class:`ForeignLetter` on any other generator.  Words are equal
    in the free product exactly when their normal forms are equal.
    """
    word = _parse(word)
    names = st3_alphabet().names
    syllables = []
    for gen, sign in word.letters:
        name = names[gen]
        if name not in _FACTOR:
            raise ForeignLetter(
                f"{name!r} does not lie in the free-product subgroup"
            )
        factor, is_c = _FACTOR[name]
        syllables.append((factor, 0, sign) if is_c else (factor, sign, 0))
    return ZZWord(_merge_syllables(syllables))


def zz_power(n: int) -> ZZWord:
    """The normal form of the ``n``-th power of ``a13 a23``."""
    if n > 0:
        return ZZWord(((1, 1, 0), (2, 1, 0)) * n)
    if n < 0:
        return ZZWord(((2, -1, 0), (1, -1, 0)) * (-n))
    return ZZWord(())


def cyclic_power(z: ZZWord) -> int | None:
    """The ``n`` with ``z == zz_power(n)``, or ``None`` if there is none.

    This decides membership in the cyclic subgroup generated by ``a13 a23``,
    the associated subgroup of the stable letter.
    """
    count = len(z.syllables)
    if count == 0:
        return 0
    if count % 2:
        return None
    n = count // 2 if z.syllables[0] == (1, 1, 0) else -(count // 2)
    return n if z == zz_power(n) else None


def zz_to_word(z: ZZWord) -> Word:
    """The canonical spelling ``a^m c^p`` per syllable as a word."""
    idx = _indices()
    by_factor = {1: (idx["a13"], idx["c13"]), 2: (idx["a23"], idx["c23"])}
    letters: list[tuple[int, int]] = []
    for factor, m, p in z.syllables:
        a, c = by_factor[factor]
        letters.extend((a, 1 if m > 0 else -1) for _ in range(abs(m)))
        letters.extend((c, 1 if p > 0 else -1) for _ in range(abs(p)))
    return Word(st3_alphabet(), tuple(letters))


# --------------------------------------------------------------------------
# Britton reduction in the HNN extension with stable letter c12


@dataclass(frozen=True)
class HNormalForm:
    """A pinch-free spelling ``head  c12^e1 g1  c12^e2 g2 ...``.

    ``head`` and each ``g_i`` are free-product normal forms; ``e_i`` is the
    sign of the ``i``-th stable letter.  By Britton's lemma the element is
    trivial exactly when there are no stable letters and the head is empty.
    """

    head: ZZWord
    tail: tuple[tuple[int, ZZWord], ...]

    @property
    def is_trivial(self) -> bool:
        return not self.tail and self.head.is_identity

    @property
    def stable_letter_count(self) -> int:
        return len(self.tail)

    def __str__(self) -> str:
        parts = [] if self.head.is_identity else [str(self.head)]
        for sign, segment in self.tail:
            parts.append("c12" if sign == 1 else "c12^-1")
            if not segment.is_identity:
                parts.append(str(segment))
        return "H[" + " ".join(parts) + "]"


def britton_reduce(word: Word | str) -> HNormalForm:
    """Britton-reduce a word over ``a13, a23, c12, c13, c23``.

    Splits at stable letters, puts every segment in free-product normal
    form, and repeatedly splices out the leftmost pinch
    ``c12^e (a13 a23)^n c12^-e  ->  (a13 a23)^n`` until none remains.
    Raises :class:`ForeignLetter` if the word mentions ``a12``.
    """
    word = _parse(word)
    idx = _indices()
    stable = idx["c12"]
    if any(gen == idx["a12"] for gen, _ in word.letters):
        raise ForeignLetter("'a12' does not lie in the vertical subgroup")

    segments: list[ZZWord] = []
    signs: list[int] = []
    buffer: list[tuple[int, int]] = []
    for gen, sign in word.letters:
        if gen == stable:
            segments.append(zz_normal_form(Word(word.alphabet, tuple(buffer))))
            signs.append(sign)
            buffer = []
        else:
            buffer.append((gen, sign))
    segments.append(zz_normal_form(Word(word.alphabet, tuple(buffer))))

    i = 0
    while i + 1 < len(signs):
        if signs[i] == -signs[i + 1]:
            n = cyclic_power(segments[i + 1])
            if n is not None:
                merged = segments[i] * zz_power(n) * segments[i + 2]
                segments[i : i + 3] = [merged]
                del signs[i : i + 2]
                i = max(i - 1, 0)
                continue
        i += 1
    return HNormalForm(
        head=segments[0],
        tail=tuple(zip(signs, segments[1:])),
    )


def h_is_trivial(word: Word | str) -> bool:
    return britton_reduce(word).is_trivial


def h_equal(left: Word | str, right: Word | str) -> bool:
    return h_is_trivial(_parse(left) * invert(_parse(right)))


# --------------------------------------------------------------------------
# Conjugation by the complement generator a12

# image of each generator under w -> a12 w a12^-1 (+1) and its inverse (-1)
_COMPLEMENT_CONJ = {
    ("a13", 1): "a23^-1 a13 a23",
    ("a13", -1): "a13 a23 a13 a23^-1 a13^-1",
    ("a23", 1): "a23^-1 a13^-1 a23 a13 a23",
    ("a23", -1): "a13 a23 a13^-1",
    ("c12", 1): "c12",
    ("c12", -1): "c12",
    ("c13", 1): "a23^-1 c13 a23",
    ("c13", -1): "a13 a23 c13 a23^-1 a13^-1",
    ("c23", 1): "a23^-1 a13^-1 c23 a13 a23",
    ("c23", -1): "a13 c23 a13^-1",
}


@lru_cache(maxsize=None)
def _complement_conj_words() -> dict[tuple[int, int], Word]:
    alphabet = st3_alphabet()
    return {
        (alphabet.index(name), direction): alphabet.word(text)
        for (name, direction), text in _COMPLEMENT_CONJ.items()
    }


def conjugate_by_complement(word: Word | str, direction: int = 1) -> Word:
    """``a12 w a12^-1`` (``direction=1``) or ``a12^-1 w a12`` (``-1``),
    rewritten back into the vertical subgroup.

    The input must be ``a12``-free; the output is too, which is what makes
    the subgroup normal and the semidirect collection below possible.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    word = _parse(word)
    table = _complement_conj_words()
    idx = _indices()
    letters: list[tuple[int, int]] = []
    for gen, sign in word.letters:
        if gen == idx["a12"]:
            raise ForeignLetter("'a12' does not lie in the vertical subgroup")
        image = table[(gen, direction)]
        if sign == 1:
            letters.extend(image.letters)
        else:
            letters.extend((g, -s) for g, s in reversed(image.letters))
        _check_cap(len(letters))
    return free_reduce(Word(word.alphabet, tuple(letters)))


_POWER_CACHE: dict[tuple[int, int], Word] = {}


def complement_conjugates(gen_index: int, k: int) -> Word:
    """``a12^k x a12^-k`` for the single generator with index ``gen_index``.

    Computed incrementally and cached, so ascending or descending scans of
    ``k`` (the common access pattern during collection) stay cheap.
    """
    if k == 0:
        return Word(st3_alphabet(), ((gen_index, 1),))
    key = (gen_index, k)
    if key not in _POWER_CACHE:
        step = 1 if k > 0 else -1
        j = k
        while j != 0 and (gen_index, j) not in _POWER_CACHE:
            j -= step
        word = (
            Word(st3_alphabet(), ((gen_index, 1),))
            if j == 0
            else _POWER_CACHE[(gen_index, j)]
        )
        while j != k:
            j += step
            word = conjugate_by_complement(word, step)
            _POWER_CACHE[(gen_index, j)] = word
    return _POWER_CACHE[key]


# --------------------------------------------------------------------------
# The full group: semidirect collection, then Britton reduction


@dataclass(frozen=True)
class ST3NormalForm:
    """The collected form ``h * a12^k`` with ``h`` Britton-reduced."""

    h: HNormalForm
    a12_exponent: int

    @property
    def is_trivial(self) -> bool:
        return self.a12_exponent == 0 and self.h.is_trivial

    def __str__(self) -> str:
        return f"{self.h} * a12^{self.a12_exponent}"


def collect(word: Word | str) -> ST3NormalForm:
    """Collect all ``a12`` letters to the right and reduce what remains.

    Scanning left to right with ``k`` the net ``a12`` exponent seen so far,
    each other letter ``x`` contributes ``a12^k x a12^-k`` to the vertical
    part, since ``prefix * x = (prefix-collected h) (a12^k x a12^-k) a12^k``.
    """
    word = _parse(word)
    idx = _indices()
    a12 = idx["a12"]
    k = 0
    buffer: list[tuple[int, int]] = []
    for gen, sign in word.letters:
        if gen == a12:
            k += sign
            continue
        image = complement_conjugates(gen, k)
        if sign == 1:
            buffer.extend(image.letters)
        else:
            buffer.extend((g, -s) for g, s in reversed(image.letters))
        _check_cap(len(buffer))
    vertical = free_reduce(Word(st3_alphabet(), tuple(buffer)))
    return ST3NormalForm(h=britton_reduce(vertical), a12_exponent=k)


def st3_is_trivial(word: Word | str) -> bool:
    """Decide whether a word over the six generators is the identity."""
    return collect(word).is_trivial


def st3_equal(left: Word | str, right: Word | str) -> bool:
    """Decide whether two words over the six generators are equal."""
    return st3_is_trivial(_parse(left) * invert(_parse(right)))

"""Free-group words over a named alphabet, plus permutation images.

Words are stored as sequences of signed letters ``(generator_index, sign)``
with ``sign in {+1, -1}``.  A :class:`Word` freshly built from letters is kept
as given (it may be unreduced); every *operation* in this module returns a
freely reduced word, so anything produced by the public API is reduced.  The
empty word is the identity.

All types here are immutable and hashable, so they are safe to share between
threads and to use as dictionary keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Alphabet",
    "Word",
    "Permutation",
    "GeneratorAssignment",
    "ParseError",
    "MissingImage",
    "free_reduce",
    "invert",
    "concat",
    "apply_morphism",
    "word_to_perm",
    "parse_word",
    "word_to_text",
]

# Surface syntax for generator names: "s1", "a12", "t2", ...
TOKEN_NAME_RE = re.compile(r"[a-z][a-z0-9]*\Z")
_TOKEN_RE = re.compile(r"([^\^]+)(?:\^(-?\d+))?\Z")


class ParseError(ValueError):
    """Raised on malformed word text; carries the offending token index."""

    def __init__(self, message: str, token_index: int):
        super().__init__(f"token {token_index}: {message}")
        self.token_index = token_index


class MissingImage(KeyError):
    """Raised when a substitution map has no image for a generator."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of distinct generator names.

    The ordering is fixed at construction and is what shortlex comparisons
    and serialization use.  Names must match ``[a-z][a-z0-9]*`` unless
    ``strict=False`` (used for machine-generated symbol alphabets that are
    never parsed back from word text).
    """

    names: tuple[str, ...]
    strict: bool = field(default=True, compare=False)

    def __init__(self, names: Iterable[str], strict: bool = True):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for name in names:
            if not name:
                raise ValueError("generator names must be non-empty")
            if strict and not TOKEN_NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "strict", strict)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word(self, text: str) -> "Word":
        """Parse word text over this alphabet (see :func:`parse_word`)."""
        return parse_word(self, text)

    def letter(self, name: str, sign: int = 1) -> "Word":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return Word(self, ((self.index(name), sign),))

    @property
    def empty(self) -> "Word":
        return Word(self, ())


@dataclass(frozen=True)
class Word:
    """A word in the free group on an :class:`Alphabet`.

    ``letters`` is a tuple of ``(generator_index, sign)`` pairs.  Use ``*``
    for reduced concatenation, ``~`` for the inverse and ``**`` for powers.
    """

    alphabet: Alphabet
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        n = len(self.alphabet)
        for gen, sign in self.letters:
            if not 0 <= gen < n:
                raise ValueError(f"letter index {gen} out of range")
            if sign not in (1, -1):
                raise ValueError(f"invalid letter sign {sign}")

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else invert(self)
        out = self.alphabet.empty
        for _ in range(abs(n)):
            out = out * base
        return out

    def __str__(self) -> str:
        return word_to_text(self)

    def __repr__(self) -> str:
        return f"Word({word_to_text(self)!r})"

    @property
    def is_identity(self) -> bool:
        return not free_reduce(self).letters

    def reduced(self) -> "Word":
        return free_reduce(self)

    def names(self) -> list[str]:
        return [self.alphabet.names[g] for g, _ in self.letters]


def free_reduce(word: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain (single stack scan)."""
    stack: list[tuple[int, int]] = []
    for letter in word.letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    if len(stack) == len(word.letters):
        return word
    return Word(word.alphabet, tuple(stack))


def invert(word: Word) -> Word:
    return free_reduce(
        Word(word.alphabet, tuple((g, -s) for g, s in reversed(word.letters)))
    )


def concat(left: Word, right: Word) -> Word:
    if left.alphabet != right.alphabet:
        raise ValueError("cannot concatenate words over different alphabets")
    return free_reduce(Word(left.alphabet, left.letters + right.letters))


def apply_morphism(word: Word, images: Mapping[str, Word]) -> Word:
    """Substitute each generator by its image word and freely reduce.

    ``images`` maps generator *names* to words over the target alphabet.
    Inverse letters map to inverse images, so the substitution is a group
    homomorphism.  Raises :class:`MissingImage` if a generator occurring in
    ``word`` has no image.
    """
    target: Alphabet | None = None
    for image in images.values():
        target = image.alphabet
        break
    if target is None:
        target = word.alphabet
    out: list[tuple[int, int]] = []
    for gen, sign in word.letters:
        name = word.alphabet.names[gen]
        if name not in images:
            raise MissingImage(name)
        image = images[name]
        if image.alphabet != target:
            raise ValueError("images must all lie over one alphabet")
        if sign == 1:
            out.extend(image.letters)
        else:
            out.extend((g, -s) for g, s in reversed(image.letters))
    return free_reduce(Word(target, tuple(out)))


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``range(n)`` stored as its tuple of images.

    ``p * q`` applies ``p`` first and then ``q``:
    ``(p * q).images[i] == q.images[p.images[i]]``.  This matches reading a
    word left to right when mapping words to permutations.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images!r}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(n))
        images[i], images[j] = images[j], images[i]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[x] for x in self.images))

    def __invert__(self) -> "Permutation":
        images = [0] * self.degree
        for i, x in enumerate(self.images):
            images[x] = i
        return Permutation(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i]


@dataclass(frozen=True)
class GeneratorAssignment:
    """A map from an alphabet's generators to permutations of ``range(degree)``.

    This is the data of a homomorphism from the free group on ``alphabet``
    into the symmetric group; :func:`word_to_perm` evaluates it on words.
    """

    alphabet: Alphabet
    perms: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        if len(self.perms) != len(self.alphabet):
            raise ValueError("need exactly one permutation per generator")
        degrees = {p.degree for p in self.perms}
        if len(degrees) > 1:
            raise ValueError("all permutations must share one degree")

    @classmethod
    def from_dict(
        cls, alphabet: Alphabet, images: Mapping[str, Permutation], degree: int
    ) -> "GeneratorAssignment":
        perms = []
        for name in alphabet.names:
            perms.append(images.get(name, Permutation.identity(degree)))
        return cls(alphabet, tuple(perms))

    @property
    def degree(self) -> int:
        return self.perms[0].degree if self.perms else 1

    def image(self, gen: int, sign: int) -> Permutation:
        perm = self.perms[gen]
        return perm if sign == 1 else ~perm


def word_to_perm(word: Word, assignment: GeneratorAssignment) -> Permutation:
    """Evaluate the assignment on ``word``, composing letters left to right."""
    if word.alphabet != assignment.alphabet:
        raise ValueError("word and assignment use different alphabets")
    out = Permutation.identity(assignment.degree)
    for gen, sign in word.letters:
        out = out * assignment.image(gen, sign)
    return out


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse whitespace-separated tokens ``name`` or ``name^k`` (signed k).

    ``"s1 s2^-1"`` is the word with letters s1, s2^-1; ``"a12^3"`` expands to
    three a12 letters; an exponent of 0 contributes nothing.  The empty
    string is the empty word.  Errors carry the 0-based token index.  The
    result is returned as written, without free reduction.
    """
    letters: list[tuple[int, int]] = []
    for index, token in enumerate(text.split()):
        match = _TOKEN_RE.match(token)
        if not match:
            raise ParseError(f"malformed token {token!r}", index)
        name, exponent_text = match.groups()
        if not TOKEN_NAME_RE.match(name):
            raise ParseError(f"invalid generator name {name!r}", index)
        if name not in alphabet:
            raise ParseError(f"unknown generator {name!r}", index)
        gen = alphabet.index(name)
        exponent = 1 if exponent_text is None else int(exponent_text)
        sign = 1 if exponent > 0 else -1
        letters.extend((gen, sign) for _ in range(abs(exponent)))
    return Word(alphabet, tuple(letters))


def word_to_text(word: Word) -> str:
    """Format a word as tokens, run-length compressing equal adjacent letters.

    The empty word formats as the empty string.
    """
    parts: list[str] = []
    i = 0
    letters = word.letters
    while i < len(letters):
        gen, sign = letters[i]
        j = i
        while j < len(letters) and letters[j] == (gen, sign):
            j += 1
        exponent = (j - i) * sign
        name = word.alphabet.names[gen]
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
        i = j
    return " ".join(parts)

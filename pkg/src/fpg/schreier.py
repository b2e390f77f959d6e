"""Reidemeister-Schreier rewriting and Tietze elimination.

Given a finite presentation and a homomorphism onto a finite permutation
group, this module computes a Schreier transversal for the kernel, the
Schreier generators with their ambient words, the rewritten relator table
(one row per transversal element and defining relator), and a deterministic
Tietze elimination pass that removes redundant Schreier generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .words import (
    Alphabet,
    GeneratorAssignment,
    Permutation,
    Word,
    free_reduce,
    invert,
    word_to_perm,
    word_to_text,
)

__all__ = [
    "NotInKernel",
    "Presentation",
    "presentation_from_json",
    "presentation_to_json",
    "assignment_from_json",
    "Transversal",
    "SchreierGenerator",
    "schreier_generators",
    "schreier_alphabet",
    "tau_rewrite",
    "RewrittenRelator",
    "relator_table",
    "TietzeResult",
    "eliminate_generators",
    "cyclically_reduce",
    "cyclic_canonical",
    "words_cyclically_equal",
]


class NotInKernel(ValueError):
    """Raised when a word handed to the rewriter maps to a non-identity
    permutation and therefore does not lie in the subgroup being presented."""


@dataclass(frozen=True)
class Presentation:
    """A finite group presentation: an alphabet plus a tuple of relators.

    Relators must be non-empty freely reduced words over ``alphabet``.  An
    empty relator tuple (a free group) is allowed.
    """

    alphabet: Alphabet
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        for i, relator in enumerate(self.relators):
            if relator.alphabet != self.alphabet:
                raise ValueError(f"relator {i} is over a different alphabet")
            if not relator.letters:
                raise ValueError(f"relator {i} is empty")
            if free_reduce(relator).letters != relator.letters:
                raise ValueError(f"relator {i} is not freely reduced")

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names


def presentation_from_json(data: Mapping) -> Presentation:
    """Build a presentation from ``{"generators": [...], "relators": [[...]]}``.

    Each relator is a list of tokens in word syntax (``"a12"``, ``"c13^-1"``).
    Extra top-level keys are ignored.
    """
    alphabet = Alphabet(data["generators"])
    relators = tuple(
        alphabet.word(" ".join(tokens)) for tokens in data.get("relators", [])
    )
    return Presentation(alphabet, relators)


def presentation_to_json(presentation: Presentation) -> dict:
    return {
        "generators": list(presentation.alphabet.names),
        "relators": [word_to_text(r).split() for r in presentation.relators],
    }


def assignment_from_json(alphabet: Alphabet, data: Mapping) -> GeneratorAssignment:
    """Build a permutation assignment from ``{"degree": n, "images": {...}}``.

    ``images`` maps generator names to image tuples; omitted generators map
    to the identity permutation.
    """
    degree = int(data["degree"])
    images = {
        name: Permutation(tuple(perm)) for name, perm in data.get("images", {}).items()
    }
    for name in images:
        if name not in alphabet:
            raise KeyError(f"assignment names unknown generator {name!r}")
    return GeneratorAssignment.from_dict(alphabet, images, degree)


@dataclass(frozen=True)
class Transversal:
    """A Schreier transversal for the kernel of a permutation assignment.

    ``entries`` pairs each coset's permutation with its representative word,
    in breadth-first (shortlex) discovery order; entry 0 is the identity
    coset with the empty representative.  Representatives are prefix-closed.
    """

    assignment: GeneratorAssignment
    entries: tuple[tuple[Permutation, Word], ...]

    def __post_init__(self) -> None:
        lookup = {perm: i for i, (perm, _) in enumerate(self.entries)}
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def build(cls, assignment: GeneratorAssignment) -> "Transversal":
        """Enumerate the image subgroup breadth-first, generators in
        alphabet order, recording the first word reaching each coset."""
        identity = Permutation.identity(assignment.degree)
        entries = [(identity, assignment.alphabet.empty)]
        seen = {identity}
        queue = [0]
        while queue:
            index = queue.pop(0)
            perm, rep = entries[index]
            for gen in range(len(assignment.alphabet)):
                new_perm = perm * assignment.perms[gen]
                if new_perm not in seen:
                    seen.add(new_perm)
                    new_rep = Word(
                        assignment.alphabet, rep.letters + ((gen, 1),)
                    )
                    queue.append(len(entries))
                    entries.append((new_perm, new_rep))
        return cls(assignment, tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def rep(self, index: int) -> Word:
        return self.entries[index][1]

    def perm(self, index: int) -> Permutation:
        return self.entries[index][0]

    def coset_of(self, perm: Permutation) -> int:
        try:
            return self._lookup[perm]  # type: ignore[attr-defined]
        except KeyError:
            raise KeyError(f"permutation {perm.images} is outside the image group")

    def bar(self, word: Word) -> Word:
        """The representative of the coset containing ``word``."""
        return self.rep(self.coset_of(word_to_perm(word, self.assignment)))


@dataclass(frozen=True)
class SchreierGenerator:
    """One subgroup generator ``rep * letter * bar(rep * letter)^-1``.

    ``trivial`` marks generators whose ambient word freely reduces to the
    empty word; these are identity elements and are dropped on sight by the
    rewriter.
    """

    index: int
    coset: int
    rep: Word
    letter: str
    ambient_word: Word
    name: str
    trivial: bool


@lru_cache(maxsize=None)
def schreier_generators(transversal: Transversal) -> tuple[SchreierGenerator, ...]:
    """All Schreier generators, indexed ``coset * n_generators + generator``."""
    assignment = transversal.assignment
    alphabet = assignment.alphabet
    out = []
    for coset in range(len(transversal)):
        rep = transversal.rep(coset)
        for gen, letter in enumerate(alphabet.names):
            step = Word(alphabet, rep.letters + ((gen, 1),))
            target = transversal.bar(step)
            ambient = free_reduce(step) * invert(target)
            out.append(
                SchreierGenerator(
                    index=coset * len(alphabet) + gen,
                    coset=coset,
                    rep=rep,
                    letter=letter,
                    ambient_word=ambient,
                    name=f"S[{word_to_text(rep)};{letter}]",
                    trivial=not ambient.letters,
                )
            )
    return tuple(out)


@lru_cache(maxsize=None)
def schreier_alphabet(transversal: Transversal) -> Alphabet:
    """The alphabet of all Schreier generator names (trivial ones included)."""
    names = tuple(s.name for s in schreier_generators(transversal))
    return Alphabet(names, strict=False)


def tau_rewrite(word: Word, transversal: Transversal) -> Word:
    """Rewrite a kernel word into Schreier generators.

    Scans ``word`` left to right.  A positive letter ``a`` after prefix ``p``
    becomes the Schreier generator at ``(coset of p, a)``; a negative letter
    becomes the inverse of the generator at ``(coset of p * a^-1, a)``.
    Trivial generators are dropped and the result is freely reduced.  Raises
    :class:`NotInKernel` if the word's permutation image is not the identity.
    """
    assignment = transversal.assignment
    if word.alphabet != assignment.alphabet:
        raise ValueError("word is over a different alphabet than the transversal")
    if not word_to_perm(word, assignment).is_identity:
        raise NotInKernel(f"{word_to_text(word)!r} is not in the kernel")
    sgens = schreier_generators(transversal)
    target = schreier_alphabet(transversal)
    n = len(assignment.alphabet)
    prefix = Permutation.identity(assignment.degree)
    letters: list[tuple[int, int]] = []
    for gen, sign in word.letters:
        if sign == 1:
            coset = transversal.coset_of(prefix)
        else:
            coset = transversal.coset_of(prefix * ~assignment.perms[gen])
        symbol = coset * n + gen
        if not sgens[symbol].trivial:
            letters.append((symbol, sign))
        prefix = prefix * assignment.image(gen, sign)
    return free_reduce(Word(target, tuple(letters)))


@dataclass(frozen=True)
class RewrittenRelator:
    """One row of the rewritten relator table: the conjugate
    ``rep * relator * rep^-1`` expressed in Schreier generators."""

    coset: int
    conjugator: Word
    relator_index: int
    relator: Word
    image: Word


def relator_table(
    presentation: Presentation, transversal: Transversal
) -> tuple[RewrittenRelator, ...]:
    """Rewrite every conjugate of every relator by every transversal word.

    Rows are ordered by (coset index, relator index).  Together with the
    Schreier generators these images present the kernel subgroup.
    """
    if presentation.alphabet != transversal.assignment.alphabet:
        raise ValueError("presentation and transversal alphabets differ")
    rows = []
    for coset in range(len(transversal)):
        rep = transversal.rep(coset)
        for rel_index, relator in enumerate(presentation.relators):
            conjugate = rep * relator * invert(rep)
            rows.append(
                RewrittenRelator(
                    coset=coset,
                    conjugator=rep,
                    relator_index=rel_index,
                    relator=relator,
                    image=tau_rewrite(conjugate, transversal),
                )
            )
    return tuple(rows)


def cyclically_reduce(word: Word) -> Word:
    """Freely reduce, then strip cancelling first/last letter pairs."""
    letters = list(free_reduce(word).letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return Word(word.alphabet, tuple(letters))


def cyclic_canonical(word: Word) -> tuple[tuple[int, int], ...]:
    """A canonical form invariant under cyclic rotation and inversion.

    Cyclically reduces, then takes the lexicographically least rotation over
    the word and its inverse.  Two relators impose the same relation exactly
    when their canonical forms agree.
    """
    letters = cyclically_reduce(word).letters
    if not letters:
        return ()
    candidates = []
    inverse = tuple((g, -s) for g, s in reversed(letters))
    for base in (letters, inverse):
        for shift in range(len(base)):
            candidates.append(base[shift:] + base[:shift])
    return min(candidates)


def words_cyclically_equal(left: Word, right: Word) -> bool:
    """True when the words agree up to free/cyclic reduction, rotation and
    inversion — i.e. when they name the same relation."""
    if left.alphabet != right.alphabet:
        return False
    return cyclic_canonical(left) == cyclic_canonical(right)


@dataclass(frozen=True)
class TietzeResult:
    """Outcome of :func:`eliminate_generators`.

    ``dropped`` lists generators removed up front because they are identity
    elements; ``steps`` records each substitution as (generator name,
    replacement word over the original alphabet, as it stood at the time of
    that step); ``presentation`` is the simplified result.
    """

    presentation: Presentation
    dropped: tuple[str, ...]
    steps: tuple[tuple[str, Word], ...]


def _substitute(word: Word, gen: int, replacement: Word) -> Word:
    letters: list[tuple[int, int]] = []
    for g, s in word.letters:
        if g != gen:
            letters.append((g, s))
        elif s == 1:
            letters.extend(replacement.letters)
        else:
            letters.extend((h, -t) for h, t in reversed(replacement.letters))
    return free_reduce(Word(word.alphabet, tuple(letters)))


def eliminate_generators(
    presentation: Presentation,
    weights: Mapping[str, int] | None = None,
    drop: Iterable[str] = (),
) -> TietzeResult:
    """Remove redundant generators by deterministic Tietze transformations.

    A generator is *eligible* when some relator contains it exactly once
    (counting both signs); that relator then defines it as a word in the
    others.  Repeatedly, among all eligible generators, the one with the
    largest weight is eliminated, ties broken by smallest alphabet index;
    its definition comes from the earliest defining relator in the current
    list.  The substitution is applied to all other relators, which are
    freely reduced; the defining relator and any relators that become empty
    are discarded.  When no generator is eligible, relators that agree up to
    cyclic reduction, rotation and inversion are deduplicated (first
    occurrence kept) and the surviving generators keep their original order.

    ``weights`` defaults to zero for every generator.  ``drop`` names
    generators to delete before starting; they must not occur in any
    relator.
    """
    alphabet = presentation.alphabet
    weights = dict(weights or {})
    drop = tuple(drop)
    relators = [free_reduce(r) for r in presentation.relators]

    for name in drop:
        gen = alphabet.index(name)
        for relator in relators:
            if any(g == gen for g, _ in relator.letters):
                raise ValueError(f"cannot drop {name!r}: it occurs in a relator")

    live = [name not in drop for name in alphabet.names]
    steps: list[tuple[str, Word]] = []

    while True:
        counts = {gen: 0 for gen in range(len(alphabet))}
        first_definer: dict[int, int] = {}
        per_relator_counts = []
        for i, relator in enumerate(relators):
            local: dict[int, int] = {}
            for g, _ in relator.letters:
                local[g] = local.get(g, 0) + 1
            per_relator_counts.append(local)
            for g, c in local.items():
                counts[g] += c
                if c == 1 and g not in first_definer:
                    first_definer[g] = i

        eligible = [
            gen
            for gen in range(len(alphabet))
            if live[gen]
            and any(local.get(gen) == 1 for local in per_relator_counts)
        ]
        if not eligible:
            break
        target = max(
            eligible, key=lambda g: (weights.get(alphabet.names[g], 0), -g)
        )
        definer_index = next(
            i
            for i, local in enumerate(per_relator_counts)
            if local.get(target) == 1
        )
        definer = relators[definer_index]
        position, sign = next(
            (i, s) for i, (g, s) in enumerate(definer.letters) if g == target
        )
        if sign == -1:
            definer = invert(definer)
            position = next(
                i for i, (g, _) in enumerate(definer.letters) if g == target
            )
        rest = definer.letters[position + 1 :] + definer.letters[:position]
        replacement = invert(Word(alphabet, rest))
        steps.append((alphabet.names[target], replacement))
        live[target] = False
        new_relators = []
        for i, relator in enumerate(relators):
            if i == definer_index:
                continue
            image = _substitute(relator, target, replacement)
            if image.letters:
                new_relators.append(image)
        relators = new_relators

    seen: set[tuple[tuple[int, int], ...]] = set()
    kept: list[Word] = []
    for relator in relators:
        key = cyclic_canonical(relator)
        if not key or key in seen:
            continue
        seen.add(key)
        kept.append(cyclically_reduce(relator))

    survivor_names = tuple(
        name for gen, name in enumerate(alphabet.names) if live[gen]
    )
    final_alphabet = Alphabet(survivor_names, strict=alphabet.strict)
    remap = {
        gen: survivor_names.index(name)
        for gen, name in enumerate(alphabet.names)
        if live[gen]
    }
    final_relators = tuple(
        Word(final_alphabet, tuple((remap[g], s) for g, s in r.letters))
        for r in kept
    )
    return TietzeResult(
        presentation=Presentation(final_alphabet, final_relators),
        dropped=drop,
        steps=tuple(steps),
    )

"""The pure singular braid group on three strands as a rewritten kernel.

The ambient group is the three-strand singular braid group on generators
``s1, s2`` (braid) and ``t1, t2`` (singular), mapping onto the symmetric
group of degree three by ``s1 -> (1 2)``, ``s2 -> (2 3)``, ``t1, t2 -> 1``.
This module wires the generic Reidemeister-Schreier machinery to that kernel
and translates between three generating sets:

* ambient words over ``s1, s2, t1, t2`` that lie in the kernel;
* Schreier generators ``S[rep;letter]`` produced by rewriting;
* the six standard kernel generators ``a12, a13, a23, c12, c13, c23``.

Everything is computed once, lazily, from the packaged presentation data.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Mapping

from .schreier import (
    Presentation,
    Transversal,
    TietzeResult,
    assignment_from_json,
    eliminate_generators,
    presentation_from_json,
    relator_table,
    schreier_alphabet,
    schreier_generators,
    tau_rewrite,
)
from .words import (
    Alphabet,
    GeneratorAssignment,
    Word,
    apply_morphism,
    free_reduce,
    invert,
)

__all__ = [
    "UnknownSymbol",
    "load_data",
    "sb3_presentation",
    "sb3_assignment",
    "st3_presentation",
    "sp3_presentation",
    "st3_alphabet",
    "kernel_transversal",
    "kernel_relator_table",
    "kernel_elimination",
    "schreier_dictionary",
    "sgen_to_standard",
    "rewrite_kernel_word",
    "standard_to_ambient",
    "action_table",
    "act",
    "braid_projection",
    "singular_projection",
    "classify_conjugator",
    "projection_kernel_generators",
]


class UnknownSymbol(KeyError):
    """Raised when a Schreier symbol name is not part of this kernel."""


@lru_cache(maxsize=None)
def load_data(name: str) -> dict:
    """Load a packaged JSON data file by bare name (``"sb3"``, ...)."""
    path = resources.files("fpg.data").joinpath(f"{name}.json")
    return json.loads(path.read_text())


@lru_cache(maxsize=None)
def sb3_presentation() -> Presentation:
    """The ambient singular braid group presentation on two strands' worth
    of braid and singular generators (five relators)."""
    return presentation_from_json(load_data("sb3"))


@lru_cache(maxsize=None)
def sb3_assignment() -> GeneratorAssignment:
    """The projection onto the symmetric group of degree three."""
    return assignment_from_json(
        sb3_presentation().alphabet, load_data("sb3")["assignment"]
    )


@lru_cache(maxsize=None)
def st3_presentation() -> Presentation:
    """The six-generator, eight-relator kernel presentation."""
    return presentation_from_json(load_data("st3"))


@lru_cache(maxsize=None)
def sp3_presentation() -> Presentation:
    """The singular pure braid group presentation it is compared against."""
    return presentation_from_json(load_data("sp3"))


def st3_alphabet() -> Alphabet:
    return st3_presentation().alphabet


@lru_cache(maxsize=None)
def kernel_transversal() -> Transversal:
    return Transversal.build(sb3_assignment())


@lru_cache(maxsize=None)
def kernel_relator_table():
    return relator_table(sb3_presentation(), kernel_transversal())


@lru_cache(maxsize=None)
def kernel_elimination() -> TietzeResult:
    """Tietze-simplify the rewritten relator table.

    Generators are weighted by ambient word length so that the longest
    Schreier generators are eliminated first; the six standard kernel
    generators survive.
    """
    transversal = kernel_transversal()
    sgens = schreier_generators(transversal)
    table = Presentation(
        schreier_alphabet(transversal),
        tuple(row.image for row in kernel_relator_table()),
    )
    weights = {s.name: len(s.ambient_word) for s in sgens}
    trivial = [s.name for s in sgens if s.trivial]
    return eliminate_generators(table, weights=weights, drop=trivial)


@lru_cache(maxsize=None)
def schreier_dictionary() -> Mapping[str, Word]:
    """Every Schreier generator expressed in the six standard generators.

    Trivial generators map to the empty word.  For the rest, the image is
    obtained by replaying the elimination steps on the bare symbol and then
    renaming the surviving symbols to their standard names.
    """
    transversal = kernel_transversal()
    sgens = schreier_generators(transversal)
    s_alphabet = schreier_alphabet(transversal)
    result = kernel_elimination()
    standard_names: Mapping[str, str] = load_data("sb3")["kernel_names"]

    step_words = [
        (s_alphabet.index(name), replacement) for name, replacement in result.steps
    ]
    rename = {
        name: st3_alphabet().letter(standard_names[name])
        for name in result.presentation.alphabet.names
    }

    out: dict[str, Word] = {}
    for sgen in sgens:
        if sgen.trivial:
            out[sgen.name] = st3_alphabet().empty
            continue
        word = s_alphabet.letter(sgen.name)
        for target, replacement in step_words:
            letters: list[tuple[int, int]] = []
            for g, s in word.letters:
                if g != target:
                    letters.append((g, s))
                elif s == 1:
                    letters.extend(replacement.letters)
                else:
                    letters.extend(
                        (h, -t) for h, t in reversed(replacement.letters)
                    )
            word = free_reduce(Word(s_alphabet, tuple(letters)))
        out[sgen.name] = apply_morphism(
            word, {name: rename[name] for name in s_alphabet.names if name in rename}
        ) if word.letters else st3_alphabet().empty
    return out


def sgen_to_standard(name: str) -> Word:
    """The standard-generator word for one Schreier generator name."""
    dictionary = schreier_dictionary()
    if name not in dictionary:
        raise UnknownSymbol(name)
    return dictionary[name]


def rewrite_kernel_word(word: Word | str) -> Word:
    """Rewrite an ambient kernel word into the six standard generators.

    Accepts a word over the ambient alphabet or its text form.  Raises
    :class:`fpg.schreier.NotInKernel` if the word is not in the kernel.
    """
    if isinstance(word, str):
        word = sb3_presentation().alphabet.word(word)
    transversal = kernel_transversal()
    image = tau_rewrite(word, transversal)
    dictionary = schreier_dictionary()
    return apply_morphism(
        image, {name: dictionary[name] for name in image.alphabet.names}
    ) if image.letters else st3_alphabet().empty


@lru_cache(maxsize=None)
def standard_to_ambient() -> Mapping[str, Word]:
    """Each standard kernel generator as an ambient word (the ambient word
    of the surviving Schreier generator it renames)."""
    standard_names: Mapping[str, str] = load_data("sb3")["kernel_names"]
    sgens = {s.name: s for s in schreier_generators(kernel_transversal())}
    return {
        standard: sgens[sname].ambient_word
        for sname, standard in standard_names.items()
    }


@lru_cache(maxsize=None)
def action_table() -> Mapping[str, Mapping[str, Word]]:
    """Conjugation action of ambient generators on the kernel generators.

    ``action_table()[g][x]`` is a standard-generator word equal in the
    kernel to ``g^-1 x g``; ``g`` ranges over the four ambient generators
    and their inverses (``"s1"``, ``"s1^-1"``, ...).
    """
    data = load_data("action_table")
    alphabet = st3_alphabet()
    return {
        conj: {name: alphabet.word(text) for name, text in row.items()}
        for conj, row in data["conjugators"].items()
    }


def act(conjugator: str, word: Word | str) -> Word:
    """Apply the conjugation action ``w -> g^-1 w g`` letterwise.

    ``conjugator`` is an ambient generator name, optionally with ``^-1``.
    """
    table = action_table()
    if conjugator not in table:
        raise KeyError(
            f"unknown conjugator {conjugator!r}; expected one of {sorted(table)}"
        )
    if isinstance(word, str):
        word = st3_alphabet().word(word)
    return apply_morphism(word, table[conjugator])


def _as_st3_word(word: Word | str) -> Word:
    if isinstance(word, str):
        word = st3_alphabet().word(word)
    elif word.alphabet != st3_alphabet():
        raise ValueError("expected a word over the six kernel generators")
    return word


def _delete_letters(word: Word, names: frozenset[str]) -> Word:
    alphabet = word.alphabet
    kept = tuple(
        (g, s) for g, s in word.letters if alphabet.names[g] not in names
    )
    return free_reduce(Word(alphabet, kept))


def braid_projection(word: Word | str) -> Word:
    """The retraction onto the pure braid subgroup: delete every c letter.

    Every kernel relator maps to a freely trivial word or to one of the two
    pure braid relators, so this is a well-defined epimorphism.
    """
    return _delete_letters(
        _as_st3_word(word), frozenset({"c12", "c13", "c23"})
    )


def singular_projection(word: Word | str) -> Word:
    """The retraction onto the subgroup of the three c letters: delete every
    a letter.

    Every kernel relator maps to a freely trivial word, so the image is a
    free group of rank three.
    """
    return _delete_letters(
        _as_st3_word(word), frozenset({"a12", "a13", "a23"})
    )


def classify_conjugator(word: Word | str) -> frozenset[str]:
    """Classify a free word over ``a13, a23`` by its leading letters.

    ``M1``: the reduced word starts with a power of ``a13``.  ``M2``: it
    starts with a power of ``a23``.  ``M3``: in ``M2`` but not of the form
    ``a23^-1 a13^-1 u``.  The empty word is in none of the classes.
    """
    word = free_reduce(_as_st3_word(word))
    alphabet = word.alphabet
    a13, a23 = alphabet.index("a13"), alphabet.index("a23")
    for gen, _ in word.letters:
        if gen not in (a13, a23):
            raise ValueError(
                f"conjugators must use only a13 and a23, got "
                f"{alphabet.names[gen]!r}"
            )
    if not word.letters:
        return frozenset()
    if word.letters[0][0] == a13:
        return frozenset({"M1"})
    classes = {"M2", "M3"}
    if word.letters[:2] == ((a23, -1), (a13, -1)):
        classes.discard("M3")
    return frozenset(classes)


def _reduced_conjugators(max_len: int):
    """Reduced words over ``a13^±1, a23^±1`` ordered by length, then by the
    letter order a13, a13^-1, a23, a23^-1 at each position."""
    alphabet = st3_alphabet()
    order = [
        (alphabet.index("a13"), 1),
        (alphabet.index("a13"), -1),
        (alphabet.index("a23"), 1),
        (alphabet.index("a23"), -1),
    ]
    level: list[tuple[tuple[int, int], ...]] = [()]
    for _ in range(max_len):
        level = [
            prefix + (letter,)
            for prefix in level
            for letter in order
            if not (prefix and prefix[-1] == (letter[0], -letter[1]))
        ]
        for letters in level:
            yield Word(alphabet, letters)


def projection_kernel_generators(max_len: int) -> tuple[Word, ...]:
    """Generators of the kernel of the braid projection, by conjugator size.

    The kernel is generated by conjugates ``u^-1 c u``: for ``c12`` the
    conjugators range over class ``M3``, for ``c13`` over ``M2``, and for
    ``c23`` over ``M1`` (plus the empty conjugator for all three).  Returns
    the generators whose conjugator has at most ``max_len`` letters, in a
    deterministic order.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    alphabet = st3_alphabet()
    out = [alphabet.word("c12"), alphabet.word("c13"), alphabet.word("c23")]
    for u in _reduced_conjugators(max_len):
        classes = classify_conjugator(u)
        for name, wanted in (("c12", "M3"), ("c13", "M2"), ("c23", "M1")):
            if wanted in classes:
                out.append(invert(u) * alphabet.word(name) * u)
    return tuple(out)

"""Replayable derivation certificates for relations in a presented group.

A certificate claims that ``target`` is derivable from ``start`` using only
moves that preserve the group element: inserting a relator (or its inverse)
at a stated position, conjugating the whole word, and free reduction.  The
checker replays the moves literally and compares the final word with the
target up to free reduction.  It never consults a word-problem solver, so a
passing certificate is a self-contained combinatorial proof that
``start`` and ``target`` define the same element — in particular, a
certificate from the empty word proves that ``target`` is a relation.

Certificates are JSON objects::

    {
      "presentation": "st3" | "sp3" | "sb3" | {inline presentation},
      "start":  ["a13", "c23^-1", ...],
      "target": [...],
      "steps": [
        {"kind": "insert_relator", "relator": 3, "position": 0},
        {"kind": "insert_inverse_relator", "relator": 7, "position": 2},
        {"kind": "conjugate", "by": ["a12^-1"]},
        {"kind": "free_reduce"}
      ]
    }

Insertions and conjugations do not reduce the word; positions always refer
to the word exactly as the previous step left it.  ``conjugate`` with
conjugator ``g`` maps ``w`` to ``g^-1 w g``.  Any step may carry an
``expect`` token list, compared after free-reducing both sides; the first
mismatch stops the replay.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .schreier import Presentation, presentation_from_json
from .words import Word, free_reduce, word_to_text

__all__ = [
    "CertificateError",
    "CheckResult",
    "check_certificate",
    "load_certificate",
    "packaged_certificate",
    "PACKAGED_CERTIFICATES",
]

# name -> packaged data file stem
PACKAGED_CERTIFICATES = {
    "sp3-relator-in-st3": "cert_sp3_from_st3",
    "st3-relator-in-sp3": "cert_st3_from_sp3",
}


class CertificateError(ValueError):
    """A malformed certificate; ``step`` is the offending step index, or
    ``None`` when the problem is outside any step."""

    def __init__(self, message: str, step: int | None = None):
        prefix = f"step {step}: " if step is not None else ""
        super().__init__(prefix + message)
        self.step = step


@dataclass(frozen=True)
class CheckResult:
    """Outcome of replaying a certificate.

    ``ok`` is true when every ``expect`` matched and the final word equals
    the target up to free reduction.  On failure ``failed_step`` is the
    index of the first mismatching step, or the number of steps when only
    the final target comparison failed.
    """

    ok: bool
    failed_step: int | None
    final_word: Word
    steps_applied: int

    def describe(self) -> str:
        if self.ok:
            return (
                f"certificate ok: {self.steps_applied} steps, final word "
                f"{word_to_text(self.final_word) or '1'!r}"
            )
        if self.failed_step == self.steps_applied:
            return (
                f"certificate FAILED: final word "
                f"{word_to_text(self.final_word) or '1'!r} "
                "does not match the target"
            )
        return f"certificate FAILED at step {self.failed_step}"


def load_certificate(path: str | Path) -> dict:
    with open(path) as handle:
        return json.load(handle)


def packaged_certificate(name: str) -> dict:
    """One of the certificates shipped with the package, by name."""
    from .st3 import load_data

    if name not in PACKAGED_CERTIFICATES:
        raise KeyError(
            f"unknown certificate {name!r}; "
            f"available: {sorted(PACKAGED_CERTIFICATES)}"
        )
    return dict(load_data(PACKAGED_CERTIFICATES[name]))


def _resolve_presentation(spec) -> Presentation:
    if isinstance(spec, Mapping):
        return presentation_from_json(spec)
    if isinstance(spec, str):
        from . import st3

        presets = {
            "sb3": st3.sb3_presentation,
            "st3": st3.st3_presentation,
            "sp3": st3.sp3_presentation,
        }
        if spec in presets:
            return presets[spec]()
        path = Path(spec)
        if path.is_file():
            return presentation_from_json(json.loads(path.read_text()))
        raise CertificateError(
            f"unknown presentation {spec!r}: not a preset name or a file"
        )
    raise CertificateError("certificate lacks a usable 'presentation' field")


def _parse_tokens(
    presentation: Presentation, tokens, what: str, step: int | None
) -> Word:
    if not isinstance(tokens, Sequence) or isinstance(tokens, str):
        raise CertificateError(f"{what} must be a list of tokens", step)
    try:
        return presentation.alphabet.word(" ".join(tokens))
    except ValueError as error:
        raise CertificateError(f"bad {what}: {error}", step) from error


def check_certificate(
    data: Mapping, presentation: Presentation | None = None
) -> CheckResult:
    """Replay a certificate and report whether it proves its claim.

    ``presentation`` overrides the certificate's own presentation field
    when given.  Raises :class:`CertificateError` for structural problems
    (unknown step kind, out-of-range position or relator index, bad
    tokens); returns ``ok=False`` only for honest mismatches.
    """
    if presentation is None:
        presentation = _resolve_presentation(data.get("presentation"))
    start = _parse_tokens(presentation, data.get("start", []), "start", None)
    target = _parse_tokens(presentation, data.get("target"), "target", None)
    steps = data.get("steps", [])
    if not isinstance(steps, Sequence):
        raise CertificateError("'steps' must be a list")

    letters = list(start.letters)
    for index, step in enumerate(steps):
        if not isinstance(step, Mapping) or "kind" not in step:
            raise CertificateError("step must be an object with a 'kind'", index)
        kind = step["kind"]
        if kind in ("insert_relator", "insert_inverse_relator"):
            relator_index = step.get("relator")
            if not isinstance(relator_index, int) or not (
                0 <= relator_index < len(presentation.relators)
            ):
                raise CertificateError(
                    f"relator index {relator_index!r} out of range", index
                )
            position = step.get("position")
            if not isinstance(position, int) or not 0 <= position <= len(letters):
                raise CertificateError(
                    f"position {position!r} out of range for a word of "
                    f"{len(letters)} letters",
                    index,
                )
            relator = presentation.relators[relator_index]
            inserted = (
                relator.letters
                if kind == "insert_relator"
                else tuple((g, -s) for g, s in reversed(relator.letters))
            )
            letters[position:position] = inserted
        elif kind == "conjugate":
            conjugator = _parse_tokens(
                presentation, step.get("by"), "conjugator", index
            )
            inverse = [(g, -s) for g, s in reversed(conjugator.letters)]
            letters = inverse + letters + list(conjugator.letters)
        elif kind == "free_reduce":
            letters = list(
                free_reduce(Word(presentation.alphabet, tuple(letters))).letters
            )
        else:
            raise CertificateError(f"unknown step kind {kind!r}", index)

        if "expect" in step:
            expected = _parse_tokens(presentation, step["expect"], "expect", index)
            current = free_reduce(Word(presentation.alphabet, tuple(letters)))
            if current.letters != free_reduce(expected).letters:
                return CheckResult(
                    ok=False,
                    failed_step=index,
                    final_word=current,
                    steps_applied=index + 1,
                )

    final = free_reduce(Word(presentation.alphabet, tuple(letters)))
    if final.letters != free_reduce(target).letters:
        return CheckResult(
            ok=False,
            failed_step=len(steps),
            final_word=final,
            steps_applied=len(steps),
        )
    return CheckResult(
        ok=True, failed_step=None, final_word=final, steps_applied=len(steps)
    )

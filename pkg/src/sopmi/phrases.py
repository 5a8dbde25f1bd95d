"""Two-word phrase extraction by part-of-speech pattern."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from sopmi.tagging import PosTag, TaggedToken

_T = PosTag
_ADVERB = frozenset({_T.RB, _T.RBR, _T.RBS})
_NOUN = frozenset({_T.NN, _T.NNS})
_VERB = frozenset({_T.VB, _T.VBD, _T.VBN, _T.VBG})
_JJ = frozenset({_T.JJ})

# (first word, second word, third word must not be a noun)
PATTERNS = {
    1: (_JJ, _NOUN, False),
    2: (_ADVERB, _JJ, True),
    3: (_JJ, _JJ, True),
    4: (_NOUN, _JJ, True),
    5: (_ADVERB, _VERB, False),
}


@dataclass(frozen=True)
class CandidatePhrase:
    word1: str
    word2: str
    tag1: PosTag
    tag2: PosTag
    pattern: int
    start_position: int

    @property
    def text(self) -> str:
        return f"{self.word1} {self.word2}"

    @property
    def tags(self) -> str:
        return f"{self.tag1.value} {self.tag2.value}"


def match_pattern(tag1: PosTag, tag2: PosTag, tag3: Optional[PosTag] = None) -> Optional[int]:
    """Return the pattern row matched by a tag pair and its lookahead, or None.

    ``tag3`` is None when the pair ends the document; a missing third word
    is not a noun.
    """
    third_is_noun = tag3 in _NOUN
    for row, (first, second, forbid_noun) in PATTERNS.items():
        if tag1 in first and tag2 in second and not (forbid_noun and third_is_noun):
            return row
    return None


def extract_phrases(doc: Sequence[TaggedToken]) -> list[CandidatePhrase]:
    """Emit every adjacent pair that fits a pattern, overlaps included.

    Surfaces are lowercased. Output is in order of the first word's position.
    """
    out = []
    for i in range(len(doc) - 1):
        first, second = doc[i], doc[i + 1]
        third = doc[i + 2].tag if i + 2 < len(doc) else None
        row = match_pattern(first.tag, second.tag, third)
        if row is not None:
            out.append(
                CandidatePhrase(
                    word1=first.surface.lower(),
                    word2=second.surface.lower(),
                    tag1=first.tag,
                    tag2=second.tag,
                    pattern=row,
                    start_position=first.position,
                )
            )
    return out

"""Tokenization and Penn Treebank tagging.

Two routes produce tagged tokens: a small deterministic lexicon+suffix
tagger, and a parser for text already tagged by an external tool in
``surface/TAG`` form.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from sopmi.errors import MalformedPretagged

PUNCTUATION = frozenset('.,!?;:"()')
SENTENCE_END = frozenset(".!?")


class PosTag(str, enum.Enum):
    """Penn Treebank word tags. Anything else (punctuation included) is OTHER."""

    CC = "CC"
    CD = "CD"
    DT = "DT"
    EX = "EX"
    FW = "FW"
    IN = "IN"
    JJ = "JJ"
    JJR = "JJR"
    JJS = "JJS"
    LS = "LS"
    MD = "MD"
    NN = "NN"
    NNS = "NNS"
    NNP = "NNP"
    NNPS = "NNPS"
    PDT = "PDT"
    POS = "POS"
    PRP = "PRP"
    PRP_S = "PRP$"
    RB = "RB"
    RBR = "RBR"
    RBS = "RBS"
    RP = "RP"
    SYM = "SYM"
    TO = "TO"
    UH = "UH"
    VB = "VB"
    VBD = "VBD"
    VBG = "VBG"
    VBN = "VBN"
    VBP = "VBP"
    VBZ = "VBZ"
    WDT = "WDT"
    WP = "WP"
    WP_S = "WP$"
    WRB = "WRB"
    OTHER = "OTHER"

    @classmethod
    def parse(cls, tag: str) -> "PosTag":
        try:
            return cls(tag)
        except ValueError:
            return cls.OTHER

    def __str__(self) -> str:
        return self.value


NOUN_TAGS = frozenset({PosTag.NN, PosTag.NNS})
ADJ_TAGS = frozenset({PosTag.JJ, PosTag.JJR, PosTag.JJS})


@dataclass(frozen=True)
class Token:
    surface: str
    position: int


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: PosTag

    @property
    def surface(self) -> str:
        return self.token.surface

    @property
    def position(self) -> int:
        return self.token.position


def _split_word(word: str) -> list[str]:
    lead = 0
    while lead < len(word) and word[lead] in PUNCTUATION:
        lead += 1
    trail = len(word)
    while trail > lead and word[trail - 1] in PUNCTUATION:
        trail -= 1
    pieces = list(word[:lead])
    if trail > lead:
        pieces.append(word[lead:trail])
    pieces.extend(word[trail:])
    return pieces


def tokenize(text: str) -> list[Token]:
    """Split on whitespace, peeling sentence punctuation off word edges.

    Each stripped punctuation character becomes its own token.

    >>> [t.surface for t in tokenize('"very handy."')]
    ['"', 'very', 'handy', '.', '"']
    """
    surfaces = [piece for word in text.split() for piece in _split_word(word)]
    return [Token(s, i) for i, s in enumerate(surfaces)]


def _is_punctuation(surface: str) -> bool:
    return all(ch in PUNCTUATION for ch in surface)


def _er_stems(word: str) -> Iterable[str]:
    # bigger -> big, nicer -> nice, happier -> happy, older -> old
    stem = word[:-2]
    yield stem
    yield word[:-1]
    if len(stem) >= 2 and stem[-1] == stem[-2]:
        yield stem[:-1]
    if stem.endswith("i"):
        yield stem[:-1] + "y"


def _plural_stems(word: str) -> Iterable[str]:
    yield word[:-1]
    if word.endswith("es"):
        yield word[:-2]
    if word.endswith("ies"):
        yield word[:-3] + "y"


def _suffix_tag(lower: str, lexicon: Mapping[str, PosTag]) -> PosTag | None:
    if lower.endswith("ly"):
        return PosTag.RB
    if lower.endswith("ing"):
        return PosTag.VBG
    if lower.endswith("ed"):
        return PosTag.VBN
    if lower.endswith("est"):
        return PosTag.JJS
    if lower.endswith("er") and any(lexicon.get(s) in ADJ_TAGS for s in _er_stems(lower)):
        return PosTag.JJR
    if lower.endswith("s") and any(lexicon.get(s) in NOUN_TAGS for s in _plural_stems(lower)):
        return PosTag.NNS
    return None


def tag_baseline(tokens: Sequence[Token], lexicon: Mapping[str, PosTag] | None = None) -> list[TaggedToken]:
    """Tag tokens by lexicon lookup, then suffix rules, then capitalization.

    Priority per token: lowercase lexicon hit; suffix heuristic; capitalized
    and not sentence-initial -> NNP; otherwise NN. Punctuation tokens are
    always OTHER.
    """
    if lexicon is None:
        lexicon = default_lexicon()
    out = []
    for i, tok in enumerate(tokens):
        surface = tok.surface
        lower = surface.lower()
        if _is_punctuation(surface):
            tag = PosTag.OTHER
        elif lower in lexicon:
            tag = lexicon[lower]
        else:
            tag = _suffix_tag(lower, lexicon)
            if tag is None:
                sentence_start = tok.position == 0 or (i > 0 and tokens[i - 1].surface in SENTENCE_END)
                if surface[0].isupper() and not sentence_start:
                    tag = PosTag.NNP
                else:
                    tag = PosTag.NN
        out.append(TaggedToken(tok, tag))
    return out


def parse_pretagged(line: str) -> list[TaggedToken]:
    """Parse ``surface/TAG`` items, splitting each on its last slash."""
    out = []
    for i, item in enumerate(line.split()):
        surface, slash, tag = item.rpartition("/")
        if not slash:
            raise MalformedPretagged(f"item {i} has no '/': {item!r}")
        if not surface or not tag:
            raise MalformedPretagged(f"item {i} has an empty surface or tag: {item!r}")
        out.append(TaggedToken(Token(surface, i), PosTag.parse(tag)))
    return out


def render_pretagged(tagged: Iterable[TaggedToken]) -> str:
    return " ".join(f"{t.surface}/{t.tag.value}" for t in tagged)


def load_lexicon(path: str | Path) -> dict[str, PosTag]:
    """Read a ``surface<TAB>TAG`` lexicon file. Blank lines and ``#`` comments are ignored."""
    with open(path, encoding="utf-8") as fh:
        return _parse_lexicon(fh)


def _parse_lexicon(lines: Iterable[str]) -> dict[str, PosTag]:
    lexicon = {}
    for line_no, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        try:
            surface, tag = line.split("\t")
        except ValueError:
            raise ValueError(f"lexicon line {line_no}: expected 'surface<TAB>TAG'") from None
        lexicon[surface.strip().lower()] = PosTag.parse(tag.strip())
    return lexicon


@functools.lru_cache(maxsize=None)
def default_lexicon() -> Mapping[str, PosTag]:
    """The bundled lexicon, as a read-only mapping."""
    text = resources.files("sopmi.data").joinpath("lexicon.tsv").read_text(encoding="utf-8")
    return MappingProxyType(_parse_lexicon(text.splitlines()))

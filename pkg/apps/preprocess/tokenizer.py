"""
Line tokenizer that keeps the signals ordinary NLP preprocessing throws away.

Whitespace runs, special characters and word shapes become named tokens, the
line boundaries become tokens of their own, and nothing is lowercased or
dropped. Rules run in a fixed order: whitespace, then word shape, then single
characters, so that ``getUser(`` still yields ``Jcamelcased Jroundbracketopen``.
"""

import re
from dataclasses import dataclass
from functools import lru_cache

LINE_START = "Jlinestart"
LINE_END = "Jlineend"
TABULATOR = "Jtabulator"
DOUBLE_SPACE = "Jdoublespace"
CAMEL_CASED = "Jcamelcased"
UNDERSCORED = "Junderscored"
NUMBER = "Jnumber"
OTHER = "Jother"

# ───────────────────────────────────
# 1. REPLACEMENT TABLE
# ───────────────────────────────────

CHARACTER_TOKENS = {
    "(": "Jroundbracketopen",
    ")": "Jroundbracketclose",
    "{": "Jcurlybracketopen",
    "}": "Jcurlybracketclose",
    "[": "Jsquarebracketopen",
    "]": "Jsquarebracketclose",
    "<": "Janglebracketopen",
    ">": "Janglebracketclose",
    ";": "Jsemicolon",
    ":": "Jcolon",
    ",": "Jcomma",
    ".": "Jdot",
    "?": "Jquestionmark",
    "!": "Jexclamation",
    '"': "Jdoublequote",
    "'": "Jsinglequote",
    "`": "Jbacktick",
    "/": "Jslash",
    "\\": "Jbackslash",
    "|": "Jpipe",
    "&": "Jampersand",
    "@": "Jat",
    "#": "Jhash",
    "$": "Jdollar",
    "%": "Jpercent",
    "^": "Jcaret",
    "*": "Jasterisk",
    "+": "Jplus",
    "-": "Jminus",
    "=": "Jequals",
    "_": "Junderscore",
    "~": "Jtilde",
}


@dataclass(frozen=True)
class ReplacementRule:
    pattern: re.Pattern
    token: str


# Word-shape rules, applied in this order to each whitespace-delimited word.
WORD_SHAPE_RULES = (
    ReplacementRule(re.compile(r"([A-Z]?[a-z0-9]+)([A-Z][a-z0-9]*)+"), CAMEL_CASED),
    ReplacementRule(re.compile(r"[A-Za-z0-9]+(?:_[A-Za-z0-9]+)+"), UNDERSCORED),
    ReplacementRule(re.compile(r"(?<![A-Za-z0-9])[0-9]+(?![A-Za-z0-9])"), NUMBER),
)

REPLACEMENT_TABLE = (
    (re.compile(r"\t"), TABULATOR),
    (re.compile(r" {2,}"), DOUBLE_SPACE),
    *((rule.pattern, rule.token) for rule in WORD_SHAPE_RULES),
    *((re.compile(re.escape(char)), token) for char, token in CHARACTER_TOKENS.items()),
)

TOKEN_NAMES = frozenset(token for _, token in REPLACEMENT_TABLE) | {LINE_START, LINE_END, OTHER}

# Boundary tokens occur only at the ends of a sequence; the same text inside a line is OTHER.
BOUNDARY_TOKENS = frozenset({LINE_START, LINE_END})

WHITESPACE_OR_WORD = re.compile(r"(\t)|( {2,})|(\s)|(\S+)")


# ───────────────────────────────────
# 2. TOKEN SEQUENCES
# ───────────────────────────────────


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple

    def __post_init__(self):
        if len(self.tokens) < 2 or self.tokens[0] != LINE_START or self.tokens[-1] != LINE_END:
            raise ValueError("token sequence must be framed by line boundary tokens")

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def _is_plain_character(char):
    return char.isascii() and char.isalnum()


def _literal(text):
    return OTHER if text in BOUNDARY_TOKENS else text


def _word_tokens(word):
    for rule in WORD_SHAPE_RULES:
        word = rule.pattern.sub(f" {rule.token} ", word)
    tokens = []
    for piece in word.split():
        if piece in TOKEN_NAMES:
            tokens.append(_literal(piece))
            continue
        buffer = []
        for char in piece:
            if _is_plain_character(char):
                buffer.append(char)
                continue
            if buffer:
                tokens.append(_literal("".join(buffer)))
                buffer = []
            tokens.append(CHARACTER_TOKENS.get(char, OTHER))
        if buffer:
            tokens.append(_literal("".join(buffer)))
    return tokens


@lru_cache(maxsize=1 << 17)
def tokenize_line(text):
    """Tokenize one line (no newline characters) into a framed TokenSequence."""
    tokens = [LINE_START]
    for match in WHITESPACE_OR_WORD.finditer(text):
        tab, spaces, _separator, word = match.groups()
        if tab:
            tokens.append(TABULATOR)
        elif spaces:
            tokens.append(DOUBLE_SPACE)
        elif word:
            tokens.extend(_word_tokens(word))
    tokens.append(LINE_END)
    return TokenSequence(tuple(tokens))


def ngrams(seq, n_min=1, n_max=3):
    """All contiguous n-grams for n in [n_min, n_max], n ascending, then by position."""
    if not 1 <= n_min <= n_max:
        raise ValueError(f"invalid n-gram range {n_min}..{n_max}")
    tokens = seq.tokens
    return [
        " ".join(tokens[start : start + n])
        for n in range(n_min, n_max + 1)
        for start in range(len(tokens) - n + 1)
    ]

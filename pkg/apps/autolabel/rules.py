"""
The versioned expression table behind dataset generation and the regex baselines.

Markdown rules separate pre-formatted content from typed text; the noise-filter
banks then scrub artifacts that reporters pasted without formatting out of the
natural-language side. Bump ``RULESET_VERSION`` whenever an expression changes:
datasets built with different tables are not comparable.
"""

import re
from dataclasses import dataclass

from django.db import models

RULESET_VERSION = 1


class Action(models.TextChoices):
    ARTIFACT = "artifact", "Label as artifact"
    DISCARD = "discard", "Discard"


@dataclass(frozen=True)
class Rule:
    name: str
    bank: str
    pattern: re.Pattern
    action: Action = Action.ARTIFACT

    def matches(self, text):
        return self.pattern.search(text) is not None


def _rule(name, bank, pattern, action=Action.ARTIFACT):
    return Rule(name=name, bank=bank, pattern=re.compile(pattern, re.VERBOSE), action=action)


# ───────────────────────────────────
# 1. MARKDOWN RULES
# ───────────────────────────────────

# M1 is stateful: a delimiter opens a fence, the next delimiter made of the same
# character and at least as long closes it.
FENCE_DELIMITER = re.compile(r"^\s*(`{3,}|~{3,})\s*[\w+#.\-]*\s*$")

MARKDOWN_RULES = (
    _rule("indented_code", "M2", r"^(?:\ {4}|\t)"),
    _rule("standalone_image", "M3", r"^\s*!\[[^\]]*\]\([^)]*\)\s*$"),
    _rule("standalone_link", "M3", r"^\s*\[[^\]]*\]\([^)]*\)\s*$"),
    _rule("standalone_url", "M3", r"^\s*<?[A-Za-z][A-Za-z0-9+.\-]*://\S+?>?\s*$"),
    _rule("table_row", "M4", r"^\s*\|.*\|\s*$"),
    _rule("table_separator", "M4", r"^(?=[^|]*\|)(?=[^-]*-)[\s|:\-]+$"),
    _rule("blockquote", "M5", r"^\s*>", Action.DISCARD),
)

# ───────────────────────────────────
# 2. NOISE-FILTER BANKS
# ───────────────────────────────────

_SHELL_COMMANDS = (
    "sudo|apt|apt-get|yum|dnf|cd|ls|cat|mvn|gradle|java|javac|git|echo|export|"
    "docker|kubectl|npm|pip|make|curl|wget|chmod|chown|rm|cp|mv|mkdir|systemctl|service"
)

_LOG_LEVELS = "TRACE|DEBUG|INFO|WARN|WARNING|ERROR|FATAL|SEVERE"

PROMPT_BANK = (
    _rule(
        "unix_prompt",
        "P",
        rf"""^\s*(?:[\w.\-]+@[\w.\-]+(?::[^\s$\#]*)?\s*)?
            (?:\$|(?<![\w\#])\#(?=\s+(?:{_SHELL_COMMANDS})\b))\s+\S""",
    ),
    _rule("windows_prompt", "P", r"""^\s*(?:PS\s+)?[A-Za-z]:\\[^<>|"]*>"""),
)

STRUCTURED_DATA_BANK = (
    _rule(
        "json_like",
        "X",
        r"""^\s*[\[{]?\s*"[^"]+"\s*:\s*
                (?:"(?:[^"\\]|\\.)*"|-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?|true|false|null|[\[{])
                \s*[\]}]*\s*,?\s*$
            |^\s*[\[{]\s*"[^"]+"\s*:.*[\]}]\s*,?\s*$
            |^\s*[\[\]{}]+\s*[,;]?\s*$""",
    ),
    _rule(
        "xml_open_tag",
        "X",
        r"^\s*<(?:\?xml|!--|!DOCTYPE|[A-Za-z][\w:.\-]*)(?:\s[^<>]*)?>",
    ),
    _rule(
        "xml_close_tag",
        "X",
        r"^\s*(?:</[A-Za-z][\w:.\-]*\s*>|<[A-Za-z][\w:.\-]*(?:\s[^<>]*)?/>)",
    ),
)

JAVA_BANK = (
    _rule("java_statement", "J", r"""^\s*(?!//)\S.*[\w)\]"'+\-]\s*;\s*(?://.*)?$"""),
    _rule(
        "java_declaration",
        "J",
        r"""^\s*(?:(?:public|protected|private|static|final|abstract|synchronized|default)\s+)*
                (?:class|interface|enum|record)\s+[A-Z]\w*.*$
            |^\s*(?:[\w<>\[\],.?]+\s+)+[\w$]+\s*\([^;]*\)\s*(?:throws\s+[\w.,\s]+)?\{\s*\}?\s*$
            |^\s*\}\s*(?:else(?:\s+if\s*\(.*\))?|catch\s*\(.*\)|finally)\s*\{\s*$
            |^\s*(?:if|for|while|switch|try|do|else|synchronized)\b.*\{\s*$""",
    ),
    _rule(
        "java_import",
        "J",
        r"^\s*(?:import\s+(?:static\s+)?[\w.]+(?:\.\*)?|package\s+[\w.]+)\s*;\s*$",
    ),
    _rule(
        "stack_frame",
        "J",
        r"""^\s*(?:at\s+[\w$.<>/]+\((?:[\w$.\-]+\.(?:java|kt|scala|groovy)(?::\d+)?|Native\ Method|Unknown\ Source)\)
                (?:\s*~?\[.*\])?
            |\.\.\.\s*\d+\s+(?:more|common\ frames\ omitted))\s*$""",
    ),
    _rule("annotation", "J", r"^\s*@[A-Za-z][\w.]*(?:\(.*\))?\s*$"),
)

LOGGING_BANK = (
    _rule(
        "timestamp_prefix",
        "L",
        r"""^\s*\[?(?:\d{4}-\d{2}-\d{2}[T\ ]\d{2}:\d{2}(?::\d{2})?
                |\d{2}:\d{2}:\d{2}
                |\d{2}/[A-Z][a-z]{2}/\d{4}:\d{2}:\d{2}
                |[A-Z][a-z]{2}\s+\d{1,2},?\s+\d{4}\s+\d{1,2}:\d{2})""",
    ),
    _rule(
        "log_level",
        "L",
        rf"^\s*(?:\[(?:{_LOG_LEVELS})\]|(?:{_LOG_LEVELS})(?:\s*[:|]|\s+-\s|\s+\[))",
    ),
    _rule("logger_path", "L", r"^.*?\b(?:[a-z][\w$]*\.){2,}[\w$]+\s+[-:]\s+"),
    _rule(
        "exception_header",
        "L",
        r"""^\s*(?:Caused\ by:
            |Exception\ in\ thread\s
            |(?:[a-z][\w$]*\.)+[A-Z][\w$]*(?:Exception|Error|Throwable)\b
            |[A-Z][\w$]*Exception:)""",
    ),
)

DISCARD_BANK = (
    _rule("symbols_only", "D", r"^[^A-Za-z0-9]+$", Action.DISCARD),
    _rule(
        "short_key_value",
        "D",
        r"^\s*[-*]?\s*[\w.\-]+(?:\ [\w.\-]+){0,2}\s*[:=]\s*\S+(?:\ \S+){0,2}\s*$",
        Action.DISCARD,
    ),
)

NOISE_FILTER_BANKS = PROMPT_BANK + STRUCTURED_DATA_BANK + JAVA_BANK + LOGGING_BANK + DISCARD_BANK

# Banks that can label a line on its own, without document context.
LINE_ARTIFACT_RULES = tuple(
    rule for rule in MARKDOWN_RULES + NOISE_FILTER_BANKS if rule.bank in {"M2", "M3", "M4", "P", "X", "J", "L"}
)

# ───────────────────────────────────
# 3. MATCHING
# ───────────────────────────────────


def first_match(rules, text):
    for rule in rules:
        if rule.matches(text):
            return rule
    return None


def match_markdown_rule(text):
    return first_match(MARKDOWN_RULES, text)


def match_noise_rule(text):
    return first_match(NOISE_FILTER_BANKS, text)


def match_line_artifact_rule(text):
    return first_match(LINE_ARTIFACT_RULES, text)


def fence_mask(texts):
    """
    Per line, whether it is a fence delimiter or inside a fence.

    An unclosed fence runs to the end of the document.
    """
    mask, opened = [], None
    for text in texts:
        match = FENCE_DELIMITER.match(text)
        if opened is None:
            if match:
                opened = match.group(1)
            mask.append(opened is not None)
            continue
        mask.append(True)
        if match:
            marker = match.group(1)
            if marker[0] == opened[0] and len(marker) >= len(opened):
                opened = None
    return mask


def has_fenced_block(texts):
    return any(FENCE_DELIMITER.match(text) for text in texts)

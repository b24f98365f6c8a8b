"""Form-based givenness classification of NPs.

An NP is assigned exactly one of six categories by a deterministic rule
cascade, ordered specific to general:

1. empty-category: only ``-NONE-`` leaves.
2. pronoun: a single overt leaf tagged as a (possessive) personal pronoun.
3. proper-name: the head (rightmost overt, non-punctuation leaf among the
   NP's direct children) is tagged as a proper noun.
4. definite: starts with a definite determiner, a possessive pronoun, or a
   genitive NP (initial child ending in a ``POS`` clitic).
5. indefinite: starts with an indefinite determiner or a number.
6. not-classified: everything else (bare plurals, mass nouns, quantified or
   coordinated NPs, ...).

The classifier never consults discourse context; it is a surface heuristic
over the NP's own leaves, so identical trees always classify identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .treebank import EMPTY_POS, Internal, Leaf, Tree, is_punctuation
from .queries import NPOccurrence


class GivennessCategory(Enum):
    EMPTY_CATEGORY = "empty-category"
    PRONOUN = "pronoun"
    PROPER_NAME = "proper-name"
    DEFINITE = "definite"
    INDEFINITE = "indefinite"
    NOT_CLASSIFIED = "not-classified"


class NotAnNP(TypeError):
    """classify_np was handed a node that is not an internal NP."""


class ClassifierConfigError(ValueError):
    """Invalid classifier configuration (overlapping determiner sets, bad file)."""


DEFAULT_PRONOUN_POS_TAGS = frozenset({"PRP", "PRP$"})
DEFAULT_PROPER_POS_TAGS = frozenset({"NNP", "NNPS"})
DEFAULT_DEFINITE_DETERMINERS = frozenset({"the", "this", "that", "these", "those"})
DEFAULT_INDEFINITE_DETERMINERS = frozenset(
    {"a", "an", "some", "several", "many", "few", "another", "one"}
)


@dataclass(frozen=True)
class ClassifierConfig:
    pronoun_pos_tags: frozenset[str] = DEFAULT_PRONOUN_POS_TAGS
    proper_pos_tags: frozenset[str] = DEFAULT_PROPER_POS_TAGS
    definite_determiners: frozenset[str] = DEFAULT_DEFINITE_DETERMINERS
    indefinite_determiners: frozenset[str] = DEFAULT_INDEFINITE_DETERMINERS

    def __post_init__(self) -> None:
        object.__setattr__(self, "definite_determiners",
                           frozenset(d.lower() for d in self.definite_determiners))
        object.__setattr__(self, "indefinite_determiners",
                           frozenset(d.lower() for d in self.indefinite_determiners))
        overlap = self.definite_determiners & self.indefinite_determiners
        if overlap:
            raise ClassifierConfigError(
                f"determiner sets overlap: {sorted(overlap)}")

    @classmethod
    def from_file(cls, path) -> "ClassifierConfig":
        """Load from a plain key/value file: ``key = item item ...``.

        Unknown keys are rejected; omitted keys keep their defaults.
        """
        values = {}
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ClassifierConfigError(
                        f"{path}:{lineno}: expected 'key = items', got {line!r}")
                key, _, items = line.partition("=")
                key = key.strip()
                if key not in cls.__dataclass_fields__:
                    raise ClassifierConfigError(f"{path}:{lineno}: unknown key {key!r}")
                values[key] = frozenset(items.split())
        return cls(**values)

    def dump(self) -> str:
        lines = ["# npstat givenness classifier configuration"]
        for name in self.__dataclass_fields__:
            items = " ".join(sorted(getattr(self, name)))
            lines.append(f"{name} = {items}")
        return "\n".join(lines) + "\n"


DEFAULT_CONFIG = ClassifierConfig()


def classify_np(np: Tree, config: ClassifierConfig = DEFAULT_CONFIG) -> GivennessCategory:
    """Apply the rule cascade to one NP node; first matching rule wins."""
    if not (isinstance(np, Internal) and np.category == "NP"):
        raise NotAnNP(f"expected an internal NP node, got {np!r}")

    overt = [l for l in np.leaves() if l.pos != EMPTY_POS]
    if not overt:
        return GivennessCategory.EMPTY_CATEGORY

    if len(overt) == 1 and overt[0].pos in config.pronoun_pos_tags:
        return GivennessCategory.PRONOUN

    head = next(
        (
            child
            for child in reversed(np.children)
            if isinstance(child, Leaf)
            and child.pos != EMPTY_POS
            and not is_punctuation(child)
        ),
        None,
    )
    if head is not None and head.pos in config.proper_pos_tags:
        return GivennessCategory.PROPER_NAME

    first = overt[0]
    if first.token.lower() in config.definite_determiners:
        return GivennessCategory.DEFINITE
    if first.pos == "PRP$":
        return GivennessCategory.DEFINITE
    initial = np.children[0]
    if isinstance(initial, Internal) and initial.category == "NP":
        initial_overt = [l for l in initial.leaves() if l.pos != EMPTY_POS]
        if initial_overt and initial_overt[-1].pos == "POS":
            return GivennessCategory.DEFINITE

    if first.token.lower() in config.indefinite_determiners:
        return GivennessCategory.INDEFINITE
    if first.pos == "CD":
        return GivennessCategory.INDEFINITE

    return GivennessCategory.NOT_CLASSIFIED


def classify_all(
    occurrences: list[NPOccurrence], config: ClassifierConfig = DEFAULT_CONFIG
) -> list[tuple[NPOccurrence, GivennessCategory]]:
    """Order-preserving classification of a batch of NP occurrences."""
    return [(occ, classify_np(occ.node, config)) for occ in occurrences]

"""Read and write bracketed constituency treebanks.

Trees are immutable: an ``Internal`` node carries a :class:`NodeLabel` and a
non-empty tuple of children, a ``Leaf`` carries a raw part-of-speech tag and a
surface token.  Labels of internal nodes are decomposed into a category, a
sequence of function tags and an optional coindex; leaf tags are kept verbatim
(so ``-NONE-`` and ``-LRB-`` survive untouched).

Both common top-level layouts are accepted: bare ``(S ...)`` trees and trees
wrapped in an extra unlabeled ``( ... )`` pair.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

EMPTY_POS = "-NONE-"

# Brown- and WSJ-style punctuation preterminal tags.  The currency tags can be
# dropped by callers that want ``$``/``#`` treated as ordinary tokens.
CURRENCY_TAGS = frozenset({"$", "#"})
PUNCTUATION_TAGS = frozenset({",", ".", ":", "``", "''", "-LRB-", "-RRB-"}) | CURRENCY_TAGS


class TreebankSyntaxError(ValueError):
    """Malformed bracketed input; ``position`` is the offset into the text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnbalancedBrackets(TreebankSyntaxError):
    pass


class EmptyConstituent(TreebankSyntaxError):
    pass


_GAP_RE = re.compile(r"^(?P<base>.*?)(?P<gap>=\d+)$")


@dataclass(frozen=True)
class NodeLabel:
    """Decomposed nonterminal label, e.g. ``NP-SBJ-1`` or ``VP=2``.

    ``function_tags`` keeps hyphen-separated tags in their original order;
    a gap index like ``=2`` is stored as a tag of that spelling and always
    serialized last, after the coindex.
    """

    category: str
    function_tags: tuple[str, ...] = ()
    coindex: int | None = None

    @classmethod
    def from_string(cls, raw: str) -> "NodeLabel":
        gap = None
        base = raw
        m = _GAP_RE.match(raw)
        if m:
            base, gap = m.group("base"), m.group("gap")
        parts = base.split("-")
        category = parts[0]
        rest = parts[1:]
        if not category:
            # Labels like "-NONE-" only occur on leaves, where they are kept
            # raw; if one shows up on an internal node, keep it unsplit.
            return cls(category=raw)
        coindex = None
        if rest and rest[-1].isdigit():
            coindex = int(rest[-1])
            rest = rest[:-1]
        tags = tuple(rest) + ((gap,) if gap else ())
        return cls(category=category, function_tags=tags, coindex=coindex)

    def __str__(self) -> str:
        plain = [t for t in self.function_tags if not t.startswith("=")]
        gaps = [t for t in self.function_tags if t.startswith("=")]
        out = self.category + "".join("-" + t for t in plain)
        if self.coindex is not None:
            out += "-" + str(self.coindex)
        return out + "".join(gaps)


class Tree:
    """Base class for tree nodes; see :class:`Internal` and :class:`Leaf`."""

    def leaves(self) -> list["Leaf"]:
        out: list[Leaf] = []
        _collect_leaves(self, out)
        return out

    def iter_nodes(self) -> Iterator["Tree"]:
        """Pre-order traversal over all nodes, including leaves."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if isinstance(node, Internal):
                stack.extend(reversed(node.children))

    @property
    def category(self) -> str | None:
        return None

    def text(self) -> str:
        """Surface string: non-empty leaf tokens joined by spaces."""
        return " ".join(l.token for l in self.leaves() if l.pos != EMPTY_POS)


@dataclass(frozen=True)
class Leaf(Tree):
    pos: str
    token: str

    def leaves(self) -> list["Leaf"]:
        return [self]


@dataclass(frozen=True)
class Internal(Tree):
    label: NodeLabel
    children: tuple[Tree, ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise ValueError(f"internal node {self.label} has no children")

    @property
    def category(self) -> str:
        return self.label.category


def _collect_leaves(node: Tree, out: list[Leaf]) -> None:
    if isinstance(node, Leaf):
        out.append(node)
    else:
        for child in node.children:  # type: ignore[union-attr]
            _collect_leaves(child, out)


class TokenKind(Enum):
    OPEN = "open"
    CLOSE = "close"
    ATOM = "atom"


@dataclass(frozen=True)
class LexToken:
    kind: TokenKind
    text: str
    position: int


_TOKEN_RE = re.compile(r"[()]|[^()\s]+")


def tokenize_brackets(text: str) -> list[LexToken]:
    """Split bracketed text into open/close/atom tokens.

    Total: any input tokenizes; whitespace is the only discarded material.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        s = m.group()
        if s == "(":
            kind = TokenKind.OPEN
        elif s == ")":
            kind = TokenKind.CLOSE
        else:
            kind = TokenKind.ATOM
        tokens.append(LexToken(kind, s, m.start()))
    return tokens


# Intermediate s-expression layer: atoms are LexTokens, groups are lists whose
# first element records the open-paren offset.
@dataclass
class _Group:
    position: int
    items: list = field(default_factory=list)


def _read_groups(tokens: list[LexToken]) -> list:
    top: list = []
    stack: list[_Group] = []
    for tok in tokens:
        if tok.kind is TokenKind.OPEN:
            group = _Group(tok.position)
            (stack[-1].items if stack else top).append(group)
            stack.append(group)
        elif tok.kind is TokenKind.CLOSE:
            if not stack:
                raise UnbalancedBrackets("unmatched ')'", tok.position)
            stack.pop()
        else:
            (stack[-1].items if stack else top).append(tok)
    if stack:
        raise UnbalancedBrackets("unclosed '('", stack[-1].position)
    return top


def _to_tree(item) -> Tree:
    if isinstance(item, LexToken):
        raise TreebankSyntaxError(f"stray token {item.text!r} outside a constituent", item.position)
    items = item.items
    if not items:
        raise EmptyConstituent("empty constituent '()'", item.position)
    head = items[0]
    if isinstance(head, _Group):
        if len(items) == 1:
            # permissive: collapse a redundant unlabeled wrapper
            return _to_tree(head)
        raise EmptyConstituent("constituent has no label", item.position)
    if len(items) == 1:
        raise EmptyConstituent(f"constituent {head.text!r} has no children", item.position)
    if len(items) == 2 and isinstance(items[1], LexToken):
        return Leaf(pos=head.text, token=items[1].text)
    children = []
    for sub in items[1:]:
        if isinstance(sub, LexToken):
            raise TreebankSyntaxError(
                f"word {sub.text!r} outside a preterminal", sub.position)
        children.append(_to_tree(sub))
    return Internal(label=NodeLabel.from_string(head.text), children=tuple(children))


def parse_trees(text: str) -> list[Tree]:
    """Parse a concatenation of bracketed trees into a list of :class:`Tree`.

    A top-level unlabeled ``( ... )`` wrapper is transparent: each group it
    contains becomes its own tree.  Raises :class:`UnbalancedBrackets` or
    :class:`EmptyConstituent` (subclasses of :class:`TreebankSyntaxError`) on
    malformed input.
    """
    groups = _read_groups(tokenize_brackets(text))
    trees: list[Tree] = []
    for group in groups:
        if isinstance(group, LexToken):
            raise TreebankSyntaxError(
                f"stray text {group.text!r} between trees", group.position)
        if group.items and isinstance(group.items[0], _Group):
            for sub in group.items:
                trees.append(_to_tree(sub))
        else:
            trees.append(_to_tree(group))
    return trees


def serialize_tree(tree: Tree) -> str:
    """Render the canonical single-space bracketed form of one tree."""
    if isinstance(tree, Leaf):
        return f"({tree.pos} {tree.token})"
    assert isinstance(tree, Internal)
    inner = " ".join(serialize_tree(c) for c in tree.children)
    return f"({tree.label} {inner})"


def is_punctuation(leaf: Leaf, tags: frozenset[str] = PUNCTUATION_TAGS) -> bool:
    """True if the leaf's POS tag is a punctuation tag."""
    return leaf.pos in tags


def is_empty_category(node: Tree) -> bool:
    """True if every leaf under ``node`` is a ``-NONE-`` empty element."""
    return all(l.pos == EMPTY_POS for l in node.leaves())


@dataclass(frozen=True)
class SourceSpan:
    """Provenance of a match: file, sentence, and half-open leaf range."""

    file_id: str
    sentence_index: int
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start >= self.end:
            raise ValueError(f"empty leaf range [{self.start}, {self.end})")

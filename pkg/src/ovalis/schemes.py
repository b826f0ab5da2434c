"""Nested-oval schemes: parsing, serialization and combinatorial statistics.

A scheme is a forest. Each node is an oval (possibly containing further
nodes) or an empty figure-eight leaf. Ovals carry a sign recording their
planar direction; a linked pair contributes to ``pi_plus`` when the signs
differ and to ``pi_minus`` when they agree.

Text notation::

    scheme := term (WS term)* | <empty>
    term   := [INT] body
    body   := SIGN "<" scheme ">" | "<" scheme ">" | SIGN | "o" | "e"

``o<...>`` is accepted as a synonym of ``<...>``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

OVAL = "oval"
FIGURE8 = "figure8"

PLUS, MINUS, UNSIGNED = 1, -1, 0


class SchemeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position


class UnsignedSchemeError(ValueError):
    """An orientation-dependent quantity was requested for an unsigned oval."""


class FigureEightError(ValueError):
    """The operation needs a scheme without figure-eights."""


@dataclass(frozen=True)
class Node:
    kind: str = OVAL
    sign: int = UNSIGNED
    children: tuple[Node, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (OVAL, FIGURE8):
            raise ValueError(f"unknown node kind {self.kind!r}")
        if self.sign not in (PLUS, MINUS, UNSIGNED):
            raise ValueError(f"invalid sign {self.sign!r}")
        if self.kind == FIGURE8 and (self.children or self.sign):
            raise ValueError("figure-eights must be unsigned empty leaves")

    def __str__(self) -> str:
        if self.kind == FIGURE8:
            return "e"
        head = {PLUS: "+", MINUS: "-", UNSIGNED: ""}[self.sign]
        if self.children:
            return f"{head}<{_serialize(self.children)}>"
        return head or "o"


def _serialize(nodes: tuple[Node, ...]) -> str:
    terms = []
    for text, group in itertools.groupby(str(n) for n in nodes):
        count = len(list(group))
        terms.append(text if count == 1 else f"{count}{text}")
    return " ".join(terms)


@dataclass(frozen=True)
class Scheme:
    roots: tuple[Node, ...] = ()

    def __str__(self) -> str:
        return _serialize(self.roots)

    def walk(self) -> Iterator[tuple[Node, int, tuple[Node, ...]]]:
        """Preorder traversal yielding ``(node, depth, oval ancestors)``."""
        stack = [(node, ()) for node in reversed(self.roots)]
        while stack:
            node, ancestors = stack.pop()
            yield node, len(ancestors), ancestors
            for child in reversed(node.children):
                stack.append((child, ancestors + (node,)))

    @cached_property
    def ovals(self) -> list[tuple[Node, int, tuple[Node, ...]]]:
        return [entry for entry in self.walk() if entry[0].kind == OVAL]

    @property
    def oval_count(self) -> int:
        return len(self.ovals)

    @cached_property
    def figure_eight_count(self) -> int:
        return sum(1 for node, _, _ in self.walk() if node.kind == FIGURE8)

    @cached_property
    def _signs(self) -> frozenset[int]:
        return frozenset(node.sign for node, _, _ in self.ovals)

    def is_signed(self) -> bool:
        return UNSIGNED not in self._signs

    def is_unsigned(self) -> bool:
        return self._signs <= {UNSIGNED}

    @cached_property
    def _stats(self) -> SchemeStats:
        return _compute_stats(self)

    @cached_property
    def _link_counts(self) -> tuple[int, ...]:
        ovals = self.ovals
        # preorder: descendants of oval i are the run of deeper ovals after it
        sizes = [0] * len(ovals)
        open_: list[int] = []
        for i, (_, depth, _) in enumerate(ovals):
            while open_ and ovals[open_[-1]][1] >= depth:
                open_.pop()
            for j in open_:
                sizes[j] += 1
            open_.append(i)
        return tuple(depth + sizes[i] for i, (_, depth, _) in enumerate(ovals))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> SchemeSyntaxError:
        return SchemeSyntaxError(message, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> bool:
        start = self.pos
        while self.peek().isspace():
            self.pos += 1
        return self.pos > start

    def scheme(self, closing: str) -> list[Node]:
        nodes: list[Node] = []
        separated = True
        self.skip_ws()
        while self.peek() not in ("", closing):
            if nodes and not separated:
                raise self.error("expected whitespace between terms")
            nodes.extend(self.term())
            separated = self.skip_ws()
        return nodes

    def term(self) -> list[Node]:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        count = int(self.text[start:self.pos]) if self.pos > start else 1
        if count == 0:
            raise self.error("multiplicity must be at least 1", start)
        node = self.body()
        return [node] * count

    def body(self) -> Node:
        ch = self.peek()
        if ch == "e":
            self.pos += 1
            return Node(FIGURE8)
        if ch and ch in "+-":
            self.pos += 1
            sign = PLUS if ch == "+" else MINUS
        elif ch == "o":
            self.pos += 1
            sign = UNSIGNED
            if self.peek() != "<":
                return Node(OVAL, UNSIGNED)
        elif ch == "<":
            sign = UNSIGNED
        else:
            raise self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")
        if self.peek() != "<":
            return Node(OVAL, sign)
        self.pos += 1
        children = self.scheme(">")
        if self.peek() != ">":
            raise self.error("expected '>'")
        self.pos += 1
        return Node(OVAL, sign, tuple(children))


def parse(text: str) -> Scheme:
    parser = _Parser(text)
    nodes = parser.scheme("")
    if parser.peek():
        raise parser.error(f"unexpected {parser.peek()!r}")
    return Scheme(tuple(nodes))


def serialize(s: Scheme) -> str:
    return str(s)


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class SchemeStats:
    p: int
    n: int
    components: int
    double_points: int
    # orientation-dependent; None when some oval is unsigned
    pi_plus: int | None = None
    pi_minus: int | None = None
    d: int | None = None
    d_plus: int | None = None
    d_minus: int | None = None

    @property
    def oriented(self) -> bool:
        return self.pi_plus is not None

    def pi_diff(self) -> int:
        if self.pi_plus is None:
            raise UnsignedSchemeError("pair counts need every oval to be signed")
        return self.pi_plus - self.pi_minus

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "pi_plus": self.pi_plus,
            "pi_minus": self.pi_minus,
            "d": self.d,
            "d_plus": self.d_plus,
            "d_minus": self.d_minus,
            "components": self.components,
            "double_points": self.double_points,
        }


def stats(s: Scheme, *, oriented: bool = False) -> SchemeStats:
    """Depth, pair and Rokhlin counts of a scheme.

    With ``oriented=True`` an unsigned oval raises instead of leaving the
    orientation-dependent fields empty.
    """
    if oriented and not s.is_signed():
        raise UnsignedSchemeError(f"scheme {s} has unsigned ovals")
    return s._stats


def _compute_stats(s: Scheme) -> SchemeStats:
    ovals = s.ovals
    p = sum(1 for _, depth, _ in ovals if depth % 2 == 0)
    n = len(ovals) - p
    doubles = s.figure_eight_count
    base = dict(p=p, n=n, components=len(ovals) + doubles, double_points=doubles)
    if not s.is_signed():
        return SchemeStats(**base)

    pi_plus = pi_minus = d = d_plus = d_minus = 0
    for node, depth, ancestors in ovals:
        if depth % 2 == 1 and node.sign == ancestors[-1].sign:
            d += 1
        for k, outer in enumerate(ancestors):
            positive = outer.sign != node.sign
            if positive:
                pi_plus += 1
            else:
                pi_minus += 1
            # k is the depth of the outer oval
            if k % 2 == 1 and outer.sign == ancestors[k - 1].sign:
                if positive:
                    d_plus += 1
                else:
                    d_minus += 1
    return SchemeStats(
        **base, pi_plus=pi_plus, pi_minus=pi_minus, d=d, d_plus=d_plus, d_minus=d_minus
    )


def _require_nonsingular(s: Scheme) -> None:
    if s.figure_eight_count:
        raise FigureEightError(f"scheme {s} contains figure-eights; reduce it first")


def _subtree_sizes(node: Node) -> int:
    return 1 + sum(_subtree_sizes(c) for c in node.children)


def link_counts(s: Scheme) -> list[int]:
    """For each oval in preorder, the number of ovals it is linked with."""
    _require_nonsingular(s)
    return list(s._link_counts)


def is_odd_curve(s: Scheme) -> bool:
    return all(c % 2 == 1 for c in link_counts(s))


def is_even_curve(s: Scheme) -> bool:
    counts = link_counts(s)
    return len(counts) % 2 == 1 and all(c % 2 == 0 for c in counts)


def euler_parities_bplus(s: Scheme) -> list[int]:
    """Euler characteristic mod 2 of each component of the region inside an odd number of ovals."""
    _require_nonsingular(s)
    return [(1 - len(node.children)) % 2 for node, depth, _ in s.ovals if depth % 2 == 0]


def euler_parities_bminus(s: Scheme) -> list[int]:
    """Same for the complementary region; the outer (non-orientable) piece comes first."""
    _require_nonsingular(s)
    outer = (1 - len(s.roots)) % 2
    return [outer] + [
        (1 - len(node.children)) % 2 for node, depth, _ in s.ovals if depth % 2 == 1
    ]


def mu_simple(s: Scheme) -> int:
    """``(n + p - 2(pi_plus - pi_minus)) / 2`` in quarter units."""
    _require_nonsingular(s)
    st = stats(s, oriented=True)
    return 2 * (st.n + st.p - 2 * st.pi_diff())


# ---------------------------------------------------------------------------
# transformations


def _strip_figure_eights(nodes: tuple[Node, ...]) -> tuple[Node, ...]:
    return tuple(
        Node(OVAL, node.sign, _strip_figure_eights(node.children))
        for node in nodes
        if node.kind == OVAL
    )


def reduce_weak(s: Scheme) -> Scheme:
    """Delete every empty figure-eight."""
    return Scheme(_strip_figure_eights(s.roots))


def _canonical_nodes(nodes: tuple[Node, ...]) -> tuple[Node, ...]:
    canon = [Node(n.kind, n.sign, _canonical_nodes(n.children)) for n in nodes]
    return tuple(sorted(canon, key=_order_key))


def _order_key(node: Node) -> tuple:
    # figure-eights, then unsigned, plus, minus; smaller subtrees first
    kind = 0 if node.kind == FIGURE8 else 1
    sign = {UNSIGNED: 0, PLUS: 1, MINUS: 2}[node.sign]
    return (kind, _subtree_sizes(node), sign, tuple(_order_key(c) for c in node.children))


def canonicalize(s: Scheme) -> Scheme:
    return Scheme(_canonical_nodes(s.roots))


def _flip_nodes(nodes: tuple[Node, ...]) -> tuple[Node, ...]:
    return tuple(Node(n.kind, -n.sign, _flip_nodes(n.children)) for n in nodes)


def flip(s: Scheme) -> Scheme:
    return Scheme(_flip_nodes(s.roots))


def semiorientation_equal(a: Scheme, b: Scheme) -> bool:
    cb = canonicalize(b)
    return canonicalize(a) == cb or canonicalize(flip(a)) == cb


def semiorientation_representative(s: Scheme) -> Scheme:
    """Canonical member of ``{s, flip(s)}``."""
    a, b = canonicalize(s), canonicalize(flip(s))
    return min(a, b, key=lambda x: tuple(_order_key(n) for n in x.roots))


# ---------------------------------------------------------------------------
# enumeration


def _trees(size: int, _cache: dict[int, list[Node]] = {}) -> list[Node]:
    if size not in _cache:
        _cache[size] = [Node(OVAL, UNSIGNED, f) for f in _forests(size - 1)]
    return _cache[size]


def _forests(size: int, _cache: dict[int, list[tuple[Node, ...]]] = {}) -> list[tuple[Node, ...]]:
    if size in _cache:
        return _cache[size]
    out: list[tuple[Node, ...]] = []

    # emit multisets as non-increasing sequences of (tree size, tree index)
    def extend(remaining: int, bound: tuple[int, int], prefix: tuple[Node, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for tsize in range(min(remaining, bound[0]), 0, -1):
            trees = _trees(tsize)
            top = bound[1] if tsize == bound[0] else len(trees) - 1
            for idx in range(top, -1, -1):
                extend(remaining - tsize, (tsize, idx), prefix + (trees[idx],))

    extend(size, (size, len(_trees(size)) - 1) if size else (0, 0), ())
    _cache[size] = out
    return out


def unsigned_forests(n_ovals: int) -> Iterator[Scheme]:
    """Every unsigned figure-eight-free scheme with exactly ``n_ovals`` ovals, once each."""
    for roots in _forests(n_ovals):
        yield Scheme(roots)


def _signed_versions(node: Node) -> list[Node]:
    if node.kind == FIGURE8:
        return [node]
    out = []
    for children in _signed_multisets(node.children):
        for sign in (PLUS, MINUS):
            out.append(Node(OVAL, sign, children))
    return out


def _signed_multisets(nodes: tuple[Node, ...]) -> list[tuple[Node, ...]]:
    # identical siblings are interchangeable: choose their signings as multisets
    groups = [list(g) for _, g in itertools.groupby(_canonical_nodes(nodes))]
    per_group = []
    for group in groups:
        versions = _signed_versions(group[0])
        per_group.append(list(itertools.combinations_with_replacement(versions, len(group))))
    return [tuple(itertools.chain.from_iterable(combo)) for combo in itertools.product(*per_group)]


def signings(s: Scheme) -> Iterator[Scheme]:
    """Every signing of the ovals of ``s`` up to sibling permutation.

    Figure-eights are kept. Each isomorphism class is produced once;
    flips are not identified.
    """
    if not s.is_unsigned():
        raise ValueError("expected an unsigned scheme")
    for roots in _signed_multisets(s.roots):
        yield Scheme(roots)


def apply_signs(s: Scheme, signs: list[int]) -> Scheme:
    """Copy of ``s`` with the ovals, in preorder, given the listed signs."""
    it = iter(signs)

    def build(node: Node) -> Node:
        if node.kind == FIGURE8:
            return node
        sign = next(it)
        return Node(OVAL, sign, tuple(build(c) for c in node.children))

    roots = tuple(build(n) for n in s.roots)
    if next(it, None) is not None:
        raise ValueError("more signs than ovals")
    return Scheme(roots)


def semi_orientations(s: Scheme) -> list[Scheme]:
    """One canonical representative per semi-orientation class of signings of ``s``."""
    seen = {}
    for signed in signings(s):
        rep = semiorientation_representative(signed)
        seen.setdefault(str(rep), rep)
    return [seen[key] for key in sorted(seen)]

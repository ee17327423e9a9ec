"""Parser for graph family expressions used on the command line.

Grammar (whitespace-insensitive)::

    family := name '(' args ')'
    cycle_power(n, p)   circulant(n; s1, s2, ...)   complete(n)   path(n)   cycle(n)
    cartesian(family, family)   file(path)

Errors are :class:`FamilyError` with the byte offset of the offending token.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, GraphError, cartesian_product, circulant, complete, cycle, cycle_power, path, read_edge_list
from .predict import CYCLE_POWER, KM_CN, KM_PN

_INT_ARITY = {"cycle_power": 2, "complete": 1, "path": 1, "cycle": 1}
NAMES = ("cycle_power", "circulant", "complete", "path", "cycle", "cartesian", "file")


class FamilyError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class FamilyExpr:
    name: str
    ints: tuple[int, ...] = ()
    children: tuple[FamilyExpr, ...] = ()
    path: str | None = None

    def graph(self) -> Graph:
        if self.name == "cycle_power":
            return cycle_power(*self.ints)
        if self.name == "circulant":
            return circulant(self.ints[0], self.ints[1:])
        if self.name == "complete":
            return complete(self.ints[0])
        if self.name == "path":
            return path(self.ints[0])
        if self.name == "cycle":
            return cycle(self.ints[0])
        if self.name == "cartesian":
            return cartesian_product(self.children[0].graph(), self.children[1].graph())
        return read_edge_list(self.path)

    @property
    def width(self) -> int | None:
        """Size of the second factor for products, so vertex v reads as ``v // w . v % w``."""
        if self.name != "cartesian":
            return None
        return self.children[1].graph().n

    def known_family(self) -> tuple[str, int, int] | None:
        """``(family, a, b)`` when the expression is a cycle power or K_m □ P_n / C_n."""
        if self.name == "cycle_power":
            return CYCLE_POWER, self.ints[0], self.ints[1]
        if self.name == "cartesian" and self.children[0].name == "complete":
            second = self.children[1]
            m = self.children[0].ints[0]
            if second.name == "path":
                return KM_PN, m, second.ints[0]
            if second.name == "cycle":
                return KM_CN, m, second.ints[0]
        return None

    def __str__(self) -> str:
        if self.name == "circulant":
            return f"circulant({self.ints[0]}; {', '.join(map(str, self.ints[1:]))})"
        if self.name == "cartesian":
            return f"cartesian({self.children[0]}, {self.children[1]})"
        if self.name == "file":
            return f"file({self.path})"
        return f"{self.name}({', '.join(map(str, self.ints))})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos: int | None = None) -> int:
        return len(self.text[: self.pos if pos is None else pos].encode("utf-8"))

    def fail(self, message: str, pos: int | None = None):
        raise FamilyError(message, self.offset(pos))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str) -> None:
        self.skip()
        if self.pos >= len(self.text):
            self.fail(f"expected {ch!r}, got end of input")
        if self.text[self.pos] != ch:
            self.fail(f"expected {ch!r}, got {self.text[self.pos]!r}")
        self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        word = self.text[start : self.pos]
        if not word:
            self.fail("expected a family name")
        if word not in NAMES:
            self.fail(f"unknown family {word!r}", start)
        return word

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start : self.pos]
        if not token.lstrip("+-"):
            self.fail("expected an integer", start)
        return int(token)

    def int_list(self, arity: int, name: str, start: int) -> tuple[int, ...]:
        out = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            out.append(self.integer())
        if len(out) != arity:
            self.fail(f"{name} takes {arity} argument(s), got {len(out)}", start)
        return tuple(out)

    def family(self) -> FamilyExpr:
        self.skip()
        start = self.pos
        word = self.name()
        self.expect("(")
        if word == "file":
            # quoted paths may contain ')'; bare paths end at the first one
            self.skip()
            quote = self.peek()
            if quote in ("'", '"'):
                end = self.text.find(quote, self.pos + 1)
                if end < 0:
                    self.fail("unterminated quoted path")
                raw = self.text[self.pos + 1 : end]
                self.pos = end + 1
            else:
                end = self.text.find(")", self.pos)
                if end < 0:
                    self.fail("unterminated file(...)")
                raw = self.text[self.pos : end].strip()
                self.pos = end
            if not raw:
                self.fail("file() needs a path")
            self.expect(")")
            return FamilyExpr("file", path=raw)
        if word == "cartesian":
            left = self.family()
            self.expect(",")
            right = self.family()
            self.expect(")")
            return FamilyExpr("cartesian", children=(left, right))
        if word == "circulant":
            n = self.integer()
            self.expect(";")
            shifts = [self.integer()]
            while self.peek() == ",":
                self.pos += 1
                shifts.append(self.integer())
            self.expect(")")
            return FamilyExpr("circulant", (n, *shifts))
        ints = self.int_list(_INT_ARITY[word], word, start)
        self.expect(")")
        return FamilyExpr(word, ints)


def parse_family(text: str, validate: bool = True) -> FamilyExpr:
    """Parse a family expression; with ``validate`` also build the graph to check ranges."""
    p = _Parser(text)
    expr = p.family()
    p.skip()
    if p.pos != len(text):
        p.fail(f"trailing input {text[p.pos:]!r}")
    if validate and expr.name != "file":
        try:
            expr.graph()
        except GraphError as exc:
            raise FamilyError(str(exc), 0) from exc
    return expr

"""Free-group words and finite presentations.

A word is a tuple of non-zero ints: ``j+1`` stands for generator ``j`` and
``-(j+1)`` for its inverse.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ..perm import Perm

Word = tuple[int, ...]


class PresentationError(ValueError):
    pass


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def letter_pairs(w: Sequence[int]) -> list[tuple[int, int]]:
    """``(generator index, exponent)`` pairs."""
    return [(abs(x) - 1, 1 if x > 0 else -1) for x in w]


def _letter_key(w: Word) -> tuple[tuple[int, bool], ...]:
    return tuple((abs(x), x < 0) for x in w)


def canonical(w: Sequence[int]) -> Word:
    """Representative of ``w`` up to cyclic rotation and inversion.

    Prefers low generator indices and positive exponents, so ``x^-3`` becomes ``x^3``.
    """
    w = cyclic_reduce(w)
    if not w:
        return w
    best = None
    for v in (w, inverse(w)):
        for i in range(len(v)):
            r = v[i:] + v[:i]
            if best is None or _letter_key(r) < _letter_key(best):
                best = r
    return best  # type: ignore[return-value]


def power_root(w: Word) -> tuple[Word, int]:
    """Write ``w = u^k`` with ``k`` maximal."""
    n = len(w)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d], n // d
    return w, 1


def substitute(w: Sequence[int], images: dict[int, Word]) -> Word:
    """Replace generator ``j`` (0-based) by ``images[j]`` where given, then freely reduce."""
    out: list[int] = []
    for x in w:
        g = abs(x) - 1
        if g in images:
            out.extend(images[g] if x > 0 else inverse(images[g]))
        else:
            out.append(x)
    return free_reduce(out)


def evaluate_word(w: Sequence[int], images: Sequence[Perm]) -> Perm:
    """Left-to-right product of generator images."""
    if not images:
        if w:
            raise IndexError("word uses generators but no images were given")
        raise IndexError("cannot evaluate without images to fix the degree")
    result = Perm.identity(len(images[0]))
    invs: dict[int, Perm] = {}
    for x in w:
        j = abs(x) - 1
        if j >= len(images):
            raise IndexError(f"generator index {j} out of range")
        if x > 0:
            result = result * images[j]
        else:
            if j not in invs:
                invs[j] = images[j].inverse()
            result = result * invs[j]
    return result


@dataclass(frozen=True)
class Presentation:
    """``<generators | relators>`` with relators freely and cyclically reduced."""

    n_gens: int
    relators: tuple[Word, ...]
    names: tuple[str, ...]

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self) -> str:
        return format_presentation(self)


def default_names(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"f{i + 1}" for i in range(n))


def presentation(n_gens: int, relators: Iterable[Sequence[int]], names: Sequence[str] | None = None) -> Presentation:
    """Reduce relators, drop empty ones and duplicates up to rotation/inversion."""
    if n_gens < 0:
        raise PresentationError("negative generator count")
    names = tuple(names) if names is not None else default_names(n_gens)
    if len(names) != n_gens:
        raise PresentationError("one name per generator is required")
    seen: set[Word] = set()
    out = []
    for r in relators:
        for x in r:
            if x == 0 or abs(x) > n_gens:
                raise PresentationError(f"generator index {abs(x) - 1} out of range")
        w = cyclic_reduce(r)
        if not w:
            continue
        key = canonical(w)
        if key in seen:
            continue
        seen.add(key)
        out.append(w)
    return Presentation(n_gens, tuple(out), names)


# ---------------------------------------------------------------------------
# text form


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    w = tuple(w)
    if not w:
        return "1"
    root, k = power_root(w)
    if k > 1 and len(root) > 1:
        return f"({format_word(root, names)})^{k}"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        e = (j - i) * (1 if w[i] > 0 else -1)
        name = names[abs(w[i]) - 1]
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(parts)


def format_presentation(pres: Presentation) -> str:
    rels = ", ".join(format_word(r, pres.names) for r in pres.relators)
    return f"<{','.join(pres.names)} | {rels}>"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(-?\d+)|(.))")


class _WordParser:
    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            if m.group(1):
                self.tokens.append(("name", m.group(1)))
            elif m.group(2):
                self.tokens.append(("int", int(m.group(2))))
            else:
                self.tokens.append(("op", m.group(3)))
        self.pos = 0
        self.index = {n: i for i, n in enumerate(names)}

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self) -> Word:
        w = self.term()
        while self.peek() == ("op", "*"):
            self.take()
            w = w + self.term()
        return w

    def term(self) -> Word:
        kind, val = self.take()
        if kind == "name":
            if val not in self.index:
                raise PresentationError(f"unknown generator {val!r}")
            base: Word = (self.index[val] + 1,)
        elif kind == "int" and val == 1:
            base = ()
        elif (kind, val) == ("op", "("):
            base = self.expr()
            if self.take() != ("op", ")"):
                raise PresentationError("unbalanced parentheses")
        else:
            raise PresentationError(f"unexpected token {val!r}")
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "int":
                raise PresentationError("exponent must be an integer")
            base = base * e if e >= 0 else inverse(base) * (-e)
        return base

    def parse(self) -> Word:
        w = self.expr()
        if self.pos != len(self.tokens):
            raise PresentationError(f"trailing input at token {self.pos}")
        return w


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse ``"z*y^-1*(x*y)^2"``; the result is not reduced."""
    return _WordParser(text, names).parse()


def parse_presentation(text: str) -> Presentation:
    """Parse ``"<x,y | x^3, y^3, (x*y)^2>"``."""
    m = re.fullmatch(r"\s*<([^|]*)\|(.*)>\s*", text, re.S)
    if not m:
        raise PresentationError("expected '<gens | relators>'")
    names = [n.strip() for n in m.group(1).split(",") if n.strip()]
    if len(set(names)) != len(names):
        raise PresentationError("duplicate generator names")
    body = m.group(2).strip()
    rels = []
    if body:
        depth = 0
        cur = ""
        for ch in body:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                rels.append(cur)
                cur = ""
            else:
                cur += ch
        rels.append(cur)
    return presentation(len(names), [parse_word(r, names) for r in rels], names)

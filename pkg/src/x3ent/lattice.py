"""Lattice expressions over the three bi-separability cuts.

Expressions are built from atoms ``A``, ``B``, ``C`` (the cuts A|BC, B|CA,
C|AB) with meet ``^`` and join ``v``.  Only the 23 expressions generated by
the three atoms that appear in the inclusion diagram are cones of the
catalog; anything else is rejected by :func:`canonicalize`.

A trailing ``*`` (or ``°`` after atoms) marks an expression over the dual
atoms, so ``"Cv(A^B)*"`` is the join of the dual of C with the meet of the
duals of A and B.  The polar of a cone is obtained by swapping meets and
joins and toggling that flag.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

ATOMS = ("A", "B", "C")
MEET, JOIN = "^", "v"

_GREEK = {"A": "α", "B": "β", "C": "γ"}
_ALIASES = {"α": "A", "β": "B", "γ": "C", "∧": MEET, "&": MEET, "∨": JOIN, "|": JOIN}


class CanonicalizationError(ValueError):
    """Raised for text that is not one of the catalog's cone expressions."""


# -- syntax tree --------------------------------------------------------------
# An expression is either an atom string or a tuple (op, children) where
# children is a tuple sorted by _sort_key.


def _sort_key(e):
    if isinstance(e, str):
        return (0, e)
    return (1, render(e))


def render(e, dual: bool = False, greek: bool = False) -> str:
    """ASCII (or Greek) rendering; nested compounds are parenthesized."""
    if isinstance(e, str):
        if greek:
            return _GREEK[e] + ("°" if dual else "")
        return e
    op, children = e
    sym = (("∧" if op == MEET else "∨") if greek else op)
    parts = []
    for ch in children:
        text = render(ch, dual, greek)
        parts.append(text if isinstance(ch, str) else f"({text})")
    return sym.join(parts)


def _node(op, children):
    flat = []
    for ch in children:
        if not isinstance(ch, str) and ch[0] == op:
            flat.extend(ch[1])
        else:
            flat.append(ch)
    uniq = []
    for ch in flat:
        if ch not in uniq:
            uniq.append(ch)
    # absorption: x ^ (x v y) = x and x v (x ^ y) = x
    other = JOIN if op == MEET else MEET
    kept = []
    for ch in uniq:
        if not isinstance(ch, str) and ch[0] == other and any(o in ch[1] for o in uniq if o is not ch):
            continue
        kept.append(ch)
    if len(kept) == 1:
        return kept[0]
    return (op, tuple(sorted(kept, key=_sort_key)))


def normalize(e):
    if isinstance(e, str):
        return e
    op, children = e
    return _node(op, [normalize(ch) for ch in children])


def permute(e, mapping: dict):
    """Relabel atoms (``mapping`` sends atom -> atom)."""
    if isinstance(e, str):
        return mapping[e]
    op, children = e
    return _node(op, [permute(ch, mapping) for ch in children])


def lattice_dual(e):
    """Swap meets and joins."""
    if isinstance(e, str):
        return e
    op, children = e
    return _node(JOIN if op == MEET else MEET, [lattice_dual(ch) for ch in children])


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([ABC()^v*°])")


def _tokens(text: str):
    text = "".join(_ALIASES.get(ch, ch) for ch in text)
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise CanonicalizationError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse(text: str):
    """Parse cone text into ``(normalized tree, dual flag)``."""
    toks = _tokens(text)
    if not toks:
        raise CanonicalizationError("empty cone expression")
    dual_marks = [i for i, t in enumerate(toks) if t in ("*", "°")]
    atom_pos = [i for i, t in enumerate(toks) if t in ATOMS]
    dual = bool(dual_marks)
    if dual:
        trailing = dual_marks == [len(toks) - 1]
        per_atom = dual_marks == [i + 1 for i in atom_pos]
        if not (trailing or per_atom):
            raise CanonicalizationError(
                f"dual markers must follow every atom or end the expression: {text!r}"
            )
        toks = [t for t in toks if t not in ("*", "°")]
    tree, pos = _parse_join(toks, 0, text)
    if pos != len(toks):
        raise CanonicalizationError(f"unexpected {toks[pos]!r} in {text!r}")
    return normalize(tree), dual


def _parse_join(toks, pos, text):
    left, pos = _parse_meet(toks, pos, text)
    items = [left]
    while pos < len(toks) and toks[pos] == JOIN:
        right, pos = _parse_meet(toks, pos + 1, text)
        items.append(right)
    return (items[0] if len(items) == 1 else (JOIN, tuple(items))), pos


def _parse_meet(toks, pos, text):
    left, pos = _parse_atom(toks, pos, text)
    items = [left]
    while pos < len(toks) and toks[pos] == MEET:
        right, pos = _parse_atom(toks, pos + 1, text)
        items.append(right)
    return (items[0] if len(items) == 1 else (MEET, tuple(items))), pos


def _parse_atom(toks, pos, text):
    if pos >= len(toks):
        raise CanonicalizationError(f"unexpected end of {text!r}")
    t = toks[pos]
    if t in ATOMS:
        return t, pos + 1
    if t == "(":
        inner, pos = _parse_join(toks, pos + 1, text)
        if pos >= len(toks) or toks[pos] != ")":
            raise CanonicalizationError(f"unbalanced parentheses in {text!r}")
        return inner, pos + 1
    raise CanonicalizationError(f"unexpected {t!r} in {text!r}")


# -- the 23 cones -------------------------------------------------------------

PERMUTATIONS = tuple(dict(zip(ATOMS, p)) for p in itertools.permutations(ATOMS))

# one representative per symmetry class, in diagram order (top = smallest)
SHAPES = (
    "A^B^C",
    "A^B",
    "(A^B)v(A^C)",
    "A^(BvC)",
    "A",
    "Av(B^C)",
    "(AvB)^(AvC)",
    "AvB",
    "AvBvC",
)


@dataclass(frozen=True)
class ConeId:
    """A cone of the catalog: normalized expression plus dual-atoms flag."""

    expr: object
    dual: bool = False

    @property
    def name(self) -> str:
        return render(self.expr) + ("*" if self.dual else "")

    @property
    def pretty(self) -> str:
        return render(self.expr, self.dual, greek=True)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"ConeId({self.name!r})"

    @property
    def shape(self) -> "ConeId":
        return _shape_of()[self.expr][0].with_dual(self.dual)

    @property
    def perm(self) -> dict:
        """Atom relabeling sending the shape representative to this cone."""
        return dict(_shape_of()[self.expr][1])

    def with_dual(self, dual: bool) -> "ConeId":
        return ConeId(self.expr, dual)

    def polar(self) -> "ConeId":
        """The dual cone: meets and joins swapped, dual flag toggled."""
        return ConeId(lattice_dual(self.expr), not self.dual)

    def permuted(self, mapping: dict) -> "ConeId":
        return ConeId(permute(self.expr, mapping), self.dual)


@lru_cache(maxsize=None)
def _shape_of() -> dict:
    out = {}
    for text in SHAPES:
        rep, _ = parse(text)
        for mapping in PERMUTATIONS:
            image = permute(rep, mapping)
            if image not in out:
                out[image] = (ConeId(rep), tuple(sorted(mapping.items())))
    return out


@lru_cache(maxsize=None)
def all_cones(dual: bool = False) -> tuple:
    """The 23 cones, ordered by shape class then name."""
    shape_index = {parse(t)[0]: k for k, t in enumerate(SHAPES)}
    cones = [ConeId(e, dual) for e in _shape_of()]
    return tuple(sorted(cones, key=lambda c: (shape_index[c.shape.expr], c.name)))


def canonicalize(text: str) -> ConeId:
    """Parse cone text and map it to its catalog entry.

    The result's ``shape`` and ``perm`` give the symmetry-class
    representative and the atom relabeling used.
    """
    tree, dual = parse(text)
    if tree not in _shape_of():
        raise CanonicalizationError(f"{text!r} is not one of the catalog cones (got {render(tree)})")
    return ConeId(tree, dual)


def cone(text: str) -> ConeId:
    return canonicalize(text)


def as_cone(c) -> ConeId:
    return c if isinstance(c, ConeId) else canonicalize(c)


# -- inclusion diagram --------------------------------------------------------

_ARROWS_TEXT = (
    ("A^B^C", ("A^B", "A^C", "B^C")),
    ("A^B", ("(A^B)v(A^C)", "(A^B)v(B^C)")),
    ("A^C", ("(A^B)v(A^C)", "(A^C)v(B^C)")),
    ("B^C", ("(A^B)v(B^C)", "(A^C)v(B^C)")),
    ("(A^B)v(A^C)", ("A^(BvC)", "Bv(A^C)", "Cv(A^B)")),
    ("(A^B)v(B^C)", ("B^(AvC)", "Av(B^C)", "Cv(A^B)")),
    ("(A^C)v(B^C)", ("C^(AvB)", "Av(B^C)", "Bv(A^C)")),
    ("A^(BvC)", ("A", "(AvB)^(BvC)", "(AvC)^(BvC)")),
    ("B^(AvC)", ("B", "(AvB)^(AvC)", "(AvC)^(BvC)")),
    ("C^(AvB)", ("C", "(AvB)^(AvC)", "(AvB)^(BvC)")),
    ("A", ("Av(B^C)",)),
    ("B", ("Bv(A^C)",)),
    ("C", ("Cv(A^B)",)),
    ("Av(B^C)", ("(AvB)^(AvC)",)),
    ("Bv(A^C)", ("(AvB)^(BvC)",)),
    ("Cv(A^B)", ("(AvC)^(BvC)",)),
    ("(AvB)^(AvC)", ("AvB", "AvC")),
    ("(AvB)^(BvC)", ("AvB", "BvC")),
    ("(AvC)^(BvC)", ("AvC", "BvC")),
    ("AvB", ("AvBvC",)),
    ("AvC", ("AvBvC",)),
    ("BvC", ("AvBvC",)),
)


@lru_cache(maxsize=None)
def arrows(dual: bool = False) -> tuple:
    """Covering inclusions ``(smaller, larger)`` of the diagram."""
    out = []
    for src, dsts in _ARROWS_TEXT:
        for dst in dsts:
            out.append((canonicalize(src).with_dual(dual), canonicalize(dst).with_dual(dual)))
    return tuple(out)


def _check_arrows():
    # the arrow table must be closed under relabeling and cover every cone
    pairs = {(a.expr, b.expr) for a, b in arrows()}
    for mapping in PERMUTATIONS:
        moved = {(permute(a, mapping), permute(b, mapping)) for a, b in pairs}
        if moved != pairs:
            raise AssertionError("inclusion diagram is not symmetric")
    touched = {e for pair in pairs for e in pair}
    if touched != set(_shape_of()):
        raise AssertionError("inclusion diagram misses a cone")


_check_arrows()

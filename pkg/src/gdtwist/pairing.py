"""Group-algebra calculus: the diamond operations, the Fox pairing kappa,
its conjugated variant kappa-tilde, and the derivation action sigma.

kappa is read from a small data file on generators and extended to words by
the two product rules

    kappa(uv, w) = (1 (x) u) kappa(v, w) + kappa(u, w) (v (x) 1)
    kappa(u, vw) = kappa(u, v) (1 (x) w) + (v (x) 1) kappa(u, w)
"""
from __future__ import annotations

import os
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .free_group import GroupWord

TABLE_ENV = "GDTWIST_PAIRING_TABLE"
TABLE_MAGIC = "gdtwist-pairing-table"
TABLE_VERSION = 1

Word = GroupWord
Pair = Tuple[GroupWord, GroupWord]
_ONE_WORD = GroupWord()


class TableFormatError(ValueError):
    pass


# ---------------------------------------------------------------- elements

class AlgElement:
    """Finite rational combination of group words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[GroupWord, object]] = None):
        acc: Dict[GroupWord, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                acc[w] = acc.get(w, Fraction(0)) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, w: GroupWord, c=1) -> "AlgElement":
        return cls({w: c})

    @classmethod
    def minus_one(cls, w: GroupWord) -> "AlgElement":
        """w - 1."""
        return cls({w: 1}) - cls({_ONE_WORD: 1})

    def augmentation(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def __add__(self, other: "AlgElement") -> "AlgElement":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, Fraction(0)) + c
        return AlgElement(t)

    def __neg__(self):
        return AlgElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgElement":
        return AlgElement({w: Fraction(c) * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            acc: Dict[GroupWord, Fraction] = {}
            for u, cu in self.terms.items():
                for v, cv in other.terms.items():
                    w = u * v
                    acc[w] = acc.get(w, Fraction(0)) + cu * cv
            return AlgElement(acc)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        rows = [f"{c} ({w})" for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))]
        return " + ".join(rows)

    __repr__ = __str__


class BiElement:
    """Finite rational combination of pairs of words, an element of A (x) A."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Pair, object]] = None):
        acc: Dict[Pair, Fraction] = {}
        for p, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                acc[p] = acc.get(p, Fraction(0)) + c
        self.terms = {p: c for p, c in acc.items() if c}

    @classmethod
    def pure(cls, left: GroupWord, right: GroupWord, c=1) -> "BiElement":
        return cls({(left, right): c})

    @classmethod
    def unit(cls) -> "BiElement":
        return cls.pure(_ONE_WORD, _ONE_WORD)

    def __add__(self, other: "BiElement") -> "BiElement":
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, Fraction(0)) + c
        return BiElement(t)

    def __neg__(self):
        return BiElement({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BiElement":
        return BiElement({p: Fraction(c) * x for p, x in self.terms.items()})

    def __mul__(self, other):
        """Componentwise product in A (x) A, or scaling."""
        if isinstance(other, BiElement):
            acc: Dict[Pair, Fraction] = {}
            for (a1, a2), ca in self.terms.items():
                for (b1, b2), cb in other.terms.items():
                    key = (a1 * b1, a2 * b2)
                    acc[key] = acc.get(key, Fraction(0)) + ca * cb
            return BiElement(acc)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BiElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        rows = [f"{c} ({l}) (x) ({r})" for (l, r), c in sorted(self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][1]), t[0]))]
        return " + ".join(rows)

    __repr__ = __str__


def diamond(a: BiElement, b: BiElement) -> BiElement:
    """a <> b = a'b' (x) b''a''."""
    acc: Dict[Pair, Fraction] = {}
    for (a1, a2), ca in a.terms.items():
        for (b1, b2), cb in b.terms.items():
            key = (a1 * b1, b2 * a2)
            acc[key] = acc.get(key, Fraction(0)) + ca * cb
    return BiElement(acc)


def diamond_app(a: BiElement, c: AlgElement) -> AlgElement:
    """a <> c = a' c a''."""
    acc: Dict[GroupWord, Fraction] = {}
    for (a1, a2), ca in a.terms.items():
        for w, cw in c.terms.items():
            key = a1 * w * a2
            acc[key] = acc.get(key, Fraction(0)) + ca * cw
    return AlgElement(acc)


def contract(b: BiElement) -> AlgElement:
    """b' b''."""
    acc: Dict[GroupWord, Fraction] = {}
    for (l, r), c in b.terms.items():
        w = l * r
        acc[w] = acc.get(w, Fraction(0)) + c
    return AlgElement(acc)


# ---------------------------------------------------------------- the generator table

class GeneratorPairingTable:
    """kappa on pairs of generators, stored as handle-relative rules."""

    def __init__(self, rules: List[Tuple[str, str, str, int, str, str]], source: str = "<memory>"):
        self.rules = rules
        self.source = source
        self._cache: Dict[Tuple[int, int], List[Tuple[int, GroupWord, GroupWord]]] = {}

    @classmethod
    def parse(cls, text: str, source: str = "<string>") -> "GeneratorPairingTable":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise TableFormatError(f"{source}: empty table")
        head = lines[0].split()
        if len(head) != 2 or head[0] != TABLE_MAGIC:
            raise TableFormatError(f"{source}: missing '{TABLE_MAGIC} <version>' header")
        if head[1] != str(TABLE_VERSION):
            raise TableFormatError(f"{source}: unsupported table version {head[1]}")
        rules = []
        for n, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            if len(parts) != 6:
                raise TableFormatError(f"{source}: row {n} needs 6 fields: {ln!r}")
            rel, tx, ty, coeff, left, right = parts
            if rel not in ("same", "lt", "gt") or tx not in "ab*" or ty not in "ab*":
                raise TableFormatError(f"{source}: bad row {ln!r}")
            for word in (left, right):
                if word != "1" and any(ch not in "xyXY" for ch in word):
                    raise TableFormatError(f"{source}: bad placeholder word {word!r}")
            rules.append((rel, tx, ty, int(coeff), left, right))
        return cls(rules, source)

    @classmethod
    def load(cls, path: Optional[str] = None) -> "GeneratorPairingTable":
        """Read the table from path, $GDTWIST_PAIRING_TABLE, or the bundled file."""
        path = path or os.environ.get(TABLE_ENV)
        if path:
            with open(path, encoding="utf-8") as fh:
                return cls.parse(fh.read(), path)
        text = resources.files("gdtwist").joinpath("data/pairing_table.txt").read_text(encoding="utf-8")
        return cls.parse(text, "bundled pairing_table.txt")

    def value(self, x: int, y: int) -> List[Tuple[int, GroupWord, GroupWord]]:
        """kappa(x, y) for generator letters x, y as (coeff, left, right) terms."""
        key = (x, y)
        if key not in self._cache:
            hx, hy = x // 2, y // 2
            rel = "same" if hx == hy else ("lt" if hx < hy else "gt")
            types = ("a" if x % 2 == 0 else "b", "a" if y % 2 == 0 else "b")
            subst = {"x": x + 1, "X": -(x + 1), "y": y + 1, "Y": -(y + 1)}
            acc: Dict[Pair, int] = {}
            for r, tx, ty, c, left, right in self.rules:
                if r == rel and tx in (types[0], "*") and ty in (types[1], "*"):
                    lw = GroupWord([] if left == "1" else [subst[ch] for ch in left])
                    rw = GroupWord([] if right == "1" else [subst[ch] for ch in right])
                    acc[(lw, rw)] = acc.get((lw, rw), 0) + c
            self._cache[key] = [(c, l, r) for (l, r), c in acc.items() if c]
        return self._cache[key]

    def as_bielement(self, x: int, y: int) -> BiElement:
        return BiElement({(l, r): c for c, l, r in self.value(x, y)})


_DEFAULT: Optional[GeneratorPairingTable] = None


def default_table() -> GeneratorPairingTable:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = GeneratorPairingTable.load()
    return _DEFAULT


def set_default_table(table: Optional[GeneratorPairingTable]) -> None:
    global _DEFAULT
    _DEFAULT = table


# ---------------------------------------------------------------- kappa

def _syllable_kappa(s: int, t: int, table: GeneratorPairingTable) -> List[Tuple[Fraction, GroupWord, GroupWord]]:
    """kappa(s, t) for signed generators, using the inverse rules

    kappa(x^-1, y) = -(1 (x) x^-1) kappa(x, y) (x^-1 (x) 1)
    kappa(x, y^-1) = -(y^-1 (x) 1) kappa(x, y) (1 (x) y^-1).
    """
    out = []
    xi, yi = GroupWord([-abs(s)]), GroupWord([-abs(t)])
    for c, p, q in table.value(abs(s) - 1, abs(t) - 1):
        if s < 0:
            c, p, q = -c, p * xi, xi * q
        if t < 0:
            c, p, q = -c, yi * p, q * yi
        out.append((Fraction(c), p, q))
    return out


def kappa_words(x: GroupWord, y: GroupWord, table: Optional[GeneratorPairingTable] = None) -> BiElement:
    """kappa on two words: a term p (x) q of kappa(x_i, y_j) gives
    (y_<j p x_>i) (x) (x_<i q y_>j)."""
    table = table or default_table()
    xs, ys = x.syllables, y.syllables
    acc: Dict[Pair, Fraction] = {}
    for i, s in enumerate(xs):
        x_before, x_after = GroupWord._reduced(xs[:i]), GroupWord._reduced(xs[i + 1:])
        for j, t in enumerate(ys):
            terms = _syllable_kappa(s, t, table)
            if not terms:
                continue
            y_before, y_after = GroupWord._reduced(ys[:j]), GroupWord._reduced(ys[j + 1:])
            for c, p, q in terms:
                key = (y_before * p * x_after, x_before * q * y_after)
                acc[key] = acc.get(key, Fraction(0)) + c
    return BiElement(acc)


def _as_alg(u: Union[AlgElement, GroupWord]) -> AlgElement:
    return u if isinstance(u, AlgElement) else AlgElement.word(u)


def kappa(u: Union[AlgElement, GroupWord], v: Union[AlgElement, GroupWord],
          table: Optional[GeneratorPairingTable] = None) -> BiElement:
    """Bilinear Fox pairing on the group algebra."""
    u, v = _as_alg(u), _as_alg(v)
    out = BiElement()
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            out = out + kappa_words(wu, wv, table).scale(cu * cv)
    return out


def kappa_tilde(a: GroupWord, b: GroupWord, table: Optional[GeneratorPairingTable] = None) -> BiElement:
    """(1 (x) b^-1) <> kappa(a, b) <> (a^-1 (x) 1) = kappa' a^-1 (x) kappa'' b^-1."""
    ai, bi = a.inv(), b.inv()
    return BiElement({(l * ai, r * bi): c for (l, r), c in kappa_words(a, b, table).terms.items()})


def sigma_app(u: Union[AlgElement, GroupWord], v: Union[AlgElement, GroupWord],
              table: Optional[GeneratorPairingTable] = None) -> AlgElement:
    """sigma(|u|)(v) = kappa'(u, v) kappa''(u, v)."""
    return contract(kappa(u, v, table))


def conjugation_terms(b: BiElement) -> List[Tuple[Fraction, GroupWord]]:
    """Write b as sum c (w (x) w^-1); raises ValueError if it is not of that form."""
    out = []
    for (l, r), c in sorted(b.terms.items(), key=lambda t: (len(t[0][0]), t[0])):
        if r != l.inv():
            raise ValueError(f"term ({l}) (x) ({r}) is not of the form w (x) w^-1")
        out.append((c, l))
    return out

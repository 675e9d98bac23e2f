"""Words in the surface group, tree commutators, the Phi construction, decompositions.

A generator alpha_i / beta_i has the same index as the letter a_i / b_i of
H. A GroupWord stores signed generators ``l + 1`` (or ``-(l + 1)`` for the
inverse), so ``(1, 2, -1, -2)`` is [alpha1, beta1].
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .core import (
    LieElement,
    TensorSeries,
    letter_name,
    letter_of,
    lyndon_tree,
    lyndon_words,
    to_lyndon,
)


class ParseError(ValueError):
    """Malformed word or tree text; ``token`` and ``pos`` locate the problem."""

    def __init__(self, message: str, token: str = "", pos: int = -1):
        self.token, self.pos = token, pos
        super().__init__(message)


class ClassTooLow(ValueError):
    pass


class GroupWord:
    """Freely reduced word; immutable."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Sequence[int] = ()):
        out: List[int] = []
        for s in syllables:
            if s == 0:
                raise ValueError("0 is not a generator")
            if out and out[-1] == -s:
                out.pop()
            else:
                out.append(s)
        self.syllables = tuple(out)

    @classmethod
    def gen(cls, letter: int, power: int = 1) -> "GroupWord":
        s = letter + 1
        return cls([s] * power if power >= 0 else [-s] * (-power))

    @classmethod
    def parse(cls, text: str, genus: Optional[int] = None) -> "GroupWord":
        return parse_word(text, genus)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.syllables + other.syllables)

    def inv(self) -> "GroupWord":
        return GroupWord._reduced(tuple(-s for s in reversed(self.syllables)))

    __invert__ = inv

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inv()
        return GroupWord(base.syllables * abs(n))

    @classmethod
    def _reduced(cls, syl: Tuple[int, ...]) -> "GroupWord":
        w = cls.__new__(cls)
        w.syllables = syl
        return w

    def __len__(self):
        return len(self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.syllables == other.syllables

    def __lt__(self, other):
        return self.syllables < other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def max_genus(self) -> int:
        return max(((abs(s) - 1) // 2 + 1 for s in self.syllables), default=1)

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(_syl_name(s) for s in self.syllables)

    def __repr__(self):
        return f"GroupWord({self})"


def _syl_name(s: int) -> str:
    name = letter_name(abs(s) - 1)
    return name if s > 0 else name.upper()


def word_mul(u: GroupWord, v: GroupWord) -> GroupWord:
    return u * v


def word_inv(u: GroupWord) -> GroupWord:
    return u.inv()


def word_conj(x: GroupWord, y: GroupWord) -> GroupWord:
    """x^y = y x y^-1."""
    return y * x * y.inv()


def word_comm(x: GroupWord, y: GroupWord) -> GroupWord:
    """[x, y] = x y x^-1 y^-1."""
    return x * y * x.inv() * y.inv()


def zeta(genus: int) -> GroupWord:
    """The boundary word prod_i [alpha_i, beta_i]."""
    w = GroupWord()
    for i in range(genus):
        w = w * word_comm(GroupWord.gen(2 * i), GroupWord.gen(2 * i + 1))
    return w


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:([abAB]\d+)|(\[)|(\])|(,)|(\()|(\))|(\^)|(-?\d+)|([A-Za-z_]\w*|\S))")


def _tokenize(text: str):
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(0).strip() == "":
            continue
        toks.append((m.group(0).strip(), m.start(0) + len(m.group(0)) - len(m.group(0).lstrip())))
    return toks


def parse_word(text: str, genus: Optional[int] = None) -> GroupWord:
    """Parse 'a1 b2 A1 B2', 'a1b2A1', '[a1,b1]', '(a1 b1)^-2', or '1'.

    Uppercase is the inverse; brackets are group commutators; '^n' is a power.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i][0] if i < len(toks) else None

    def fail(msg):
        if i < len(toks):
            tok, pos = toks[i]
            raise ParseError(f"{msg}: unexpected token {tok!r} at position {pos}", tok, pos)
        raise ParseError(f"{msg}: unexpected end of input", "", len(text))

    def atom() -> GroupWord:
        nonlocal i
        tok = peek()
        if tok is None:
            fail("expected a generator")
        if re.fullmatch(r"[abAB]\d+", tok):
            l = letter_of(tok.lower())
            if tok[1:].lstrip("0") == "" or (genus is not None and l >= 2 * genus):
                fail(f"generator out of range for genus {genus}")
            i += 1
            return GroupWord.gen(l, 1 if tok[0].islower() else -1)
        if tok == "1":
            i += 1
            return GroupWord()
        if tok == "[":
            i += 1
            x = product(("," ,))
            if peek() != ",":
                fail("expected ','")
            i += 1
            y = product(("]",))
            if peek() != "]":
                fail("expected ']'")
            i += 1
            return word_comm(x, y)
        if tok == "(":
            i += 1
            x = product((")",))
            if peek() != ")":
                fail("expected ')'")
            i += 1
            return x
        fail("bad token")

    def factor() -> GroupWord:
        nonlocal i
        x = atom()
        while peek() == "^":
            i += 1
            tok = peek()
            if tok is None or not re.fullmatch(r"-?\d+", tok):
                fail("expected an integer exponent")
            i += 1
            x = x ** int(tok)
        return x

    def product(stops) -> GroupWord:
        x = GroupWord()
        while peek() is not None and peek() not in stops:
            x = x * factor()
        return x

    # compact tokens like 'a1b2A1' are split by the regex automatically
    w = product(())
    if i != len(toks):
        fail("trailing input")
    return w


# ---------------------------------------------------------------- expansions of words

def exp_letter(l: int, sign: int, genus: int, N: int) -> TensorSeries:
    """exp(sign * letter) truncated at N."""
    terms = {}
    c = Fraction(1)
    for n in range(N + 1):
        terms[(l,) * n] = c
        c = c * sign / (n + 1)
    return TensorSeries(terms, genus, N)


def expand_word(w: GroupWord, images: Dict[int, TensorSeries]) -> TensorSeries:
    """Product of the images of the syllables of w (keys are signed syllables)."""
    any_image = next(iter(images.values()))
    genus, N = any_image.genus, any_image.N
    return _expand_range(w.syllables, 0, len(w.syllables), images, genus, N)


def _expand_range(syl, lo, hi, images, genus, N) -> TensorSeries:
    if hi - lo == 0:
        return TensorSeries.one(genus, N)
    if hi - lo == 1:
        return images[syl[lo]]
    mid = (lo + hi) // 2
    return _expand_range(syl, lo, mid, images, genus, N) * _expand_range(syl, mid, hi, images, genus, N)


def magnus(w: GroupWord, N: int, genus: Optional[int] = None) -> TensorSeries:
    """Exponential expansion: alpha_i -> exp(a_i), beta_i -> exp(b_i)."""
    g = genus or w.max_genus()
    images = {}
    for l in range(2 * g):
        images[l + 1] = exp_letter(l, 1, g, N)
        images[-(l + 1)] = exp_letter(l, -1, g, N)
    return expand_word(w, images)


def lcs_class(w: GroupWord, N: int, genus: Optional[int] = None) -> int:
    """Largest k <= N with w in Gamma_k; N+1 stands for 'at least N+1'."""
    if not w:
        return N + 1
    return min((magnus(w, N, genus) - 1).valuation(), N + 1)


def leading_class(w: GroupWord, k: int, genus: Optional[int] = None) -> LieElement:
    """{w}_k in the degree-k part of the free Lie algebra."""
    g = genus or w.max_genus()
    m = magnus(w, k, g)
    c = min((m - 1).valuation(), k + 1)
    if c < k:
        raise ClassTooLow(f"word has class {c} < {k}")
    return to_lyndon(m.degree_part(k))


# ---------------------------------------------------------------- group operation back-ends

class WordOps:
    """Group operations on GroupWords, for the generic tree constructions."""

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        return x.inv()

    def one(self):
        return GroupWord()

    def comm(self, x, y):
        return word_comm(x, y)

    def conj(self, x, y):
        return word_conj(x, y)


class SeriesOps:
    """Group operations on truncated group-like series (constant term 1).

    Inverses use the antipode, which is only valid for group-like input.
    Commutators are computed as 1 + (x'y' - y'x') x^-1 y^-1 with x' = x - 1,
    truncated with the valuations of x' and y' in mind.
    """

    def __init__(self, genus: int, N: int):
        self.genus, self.N = genus, N

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        return x.antipode()

    def one(self):
        return TensorSeries.one(self.genus, self.N)

    def comm(self, x, y):
        xp, yp = x - 1, y - 1
        vx, vy = xp.valuation(), yp.valuation()
        if vx + vy > self.N:
            return self.one()
        core = xp * yp - yp * xp
        rest = self.N - core.valuation()
        if rest <= 0:
            return core + 1
        xi = x.truncate(rest).antipode()
        yi = y.truncate(rest).antipode()
        return _mul_padded(core, xi * yi, self.N) + 1

    def conj(self, x, y):
        xp = x - 1
        v = xp.valuation()
        rest = self.N - v
        if rest < 0:
            return self.one()
        yt = y.truncate(rest)
        return _mul_padded(_mul_padded(yt, xp, self.N), yt.antipode(), self.N) + 1


def _mul_padded(u: TensorSeries, v: TensorSeries, N: int) -> TensorSeries:
    """u * v at truncation N, zero-padding an operand stored at lower truncation.

    Correct through degree N whenever u is known through N - val(v) and v
    through N - val(u).
    """
    if u.N < N:
        u = u.extend(N)
    if v.N < N:
        v = v.extend(N)
    return u.truncate(N) * v.truncate(N)


# ---------------------------------------------------------------- planar trees

Shape = Union[None, tuple]  # None is a leaf; (left, right) an internal vertex
Edge = Tuple[int, ...]       # path from the root edge: 0 = left, 1 = right


class PlanarTree:
    """Planar binary rooted tree; leaves numbered 1..m from left to right.

    Edges are identified by the path from the root edge to their terminal
    vertex: () is the root edge, (0,) the left edge below the top vertex,
    and so on. A leaf edge is the path to a leaf.
    """

    __slots__ = ("shape",)

    def __init__(self, shape: Shape = None):
        self.shape = shape

    @classmethod
    def parse(cls, text: str) -> Tuple["PlanarTree", List[str]]:
        """'[g1,[[g2,g3],g4]]' -> (tree, ['g1', 'g2', 'g3', 'g4'])."""
        toks = [(m.group(0), m.start()) for m in re.finditer(r"[\[\],]|[^\s\[\],]+", text)]
        i = 0
        labels: List[str] = []

        def fail(msg):
            if i < len(toks):
                raise ParseError(f"{msg}: unexpected token {toks[i][0]!r} at position {toks[i][1]}", *toks[i])
            raise ParseError(f"{msg}: unexpected end of input", "", len(text))

        def node():
            nonlocal i
            if i >= len(toks):
                fail("expected a tree")
            tok = toks[i][0]
            if tok == "[":
                i += 1
                left = node()
                if i >= len(toks) or toks[i][0] != ",":
                    fail("expected ','")
                i += 1
                right = node()
                if i >= len(toks) or toks[i][0] != "]":
                    fail("expected ']'")
                i += 1
                return (left, right)
            if tok in ",]":
                fail("expected a leaf")
            labels.append(tok)
            i += 1
            return None

        shape = node()
        if i != len(toks):
            fail("trailing input")
        return cls(shape), labels

    @classmethod
    def from_nested(cls, t) -> Tuple["PlanarTree", list]:
        """Split a nested tuple of leaf objects into (shape, leaves)."""
        leaves: list = []

        def walk(t):
            if isinstance(t, tuple) and len(t) == 2:
                return (walk(t[0]), walk(t[1]))
            leaves.append(t)
            return None

        return cls(walk(t)), leaves

    def n_leaves(self) -> int:
        return _count(self.shape)

    def subtree(self, e: Edge) -> Shape:
        s = self.shape
        for step in e:
            if s is None:
                raise KeyError(f"unknown edge {e}")
            s = s[step]
        return s

    def leaf_range(self, e: Edge) -> Tuple[int, int]:
        """0-based half-open range of leaf indices below edge e."""
        s, start = self.shape, 0
        for step in e:
            if s is None:
                raise KeyError(f"unknown edge {e}")
            if step == 1:
                start += _count(s[0])
            s = s[step]
        return start, start + _count(s)

    def edges(self) -> List[Edge]:
        out: List[Edge] = []

        def walk(s, p):
            out.append(p)
            if s is not None:
                walk(s[0], p + (0,))
                walk(s[1], p + (1,))

        walk(self.shape, ())
        return out

    def leaf_edges(self) -> List[Edge]:
        return [e for e in self.edges() if self.subtree(e) is None]

    def leaf_edge(self, j: int) -> Edge:
        """Edge of the j-th leaf (1-based)."""
        return self.leaf_edges()[j - 1]

    def is_leaf_edge(self, e: Edge) -> bool:
        return self.subtree(e) is None

    def swap_root(self) -> "PlanarTree":
        if self.shape is None:
            return self
        return PlanarTree((self.shape[1], self.shape[0]))

    def render(self, labels: Sequence[str]) -> str:
        it = iter(labels)

        def walk(s):
            if s is None:
                return next(it)
            return f"[{walk(s[0])},{walk(s[1])}]"

        return walk(self.shape)

    def __eq__(self, other):
        return isinstance(other, PlanarTree) and self.shape == other.shape

    def __hash__(self):
        return hash(self.shape)

    def __repr__(self):
        return f"PlanarTree({self.render([f'g{i + 1}' for i in range(self.n_leaves())])})"


def _count(s: Shape) -> int:
    return 1 if s is None else _count(s[0]) + _count(s[1])


def _comm_shape(s: Shape, leaves: Sequence, ops) -> object:
    it = iter(leaves)

    def walk(s):
        if s is None:
            return next(it)
        return ops.comm(walk(s[0]), walk(s[1]))

    return walk(s)


def _check_arity(T: PlanarTree, leaves: Sequence) -> None:
    if len(leaves) != T.n_leaves():
        raise ValueError(f"tree has {T.n_leaves()} leaves but {len(leaves)} colors were given")


def comm_of_tree(T: PlanarTree, leaves: Sequence, ops=None):
    """Nested commutator T(g1, ..., gm)."""
    ops = ops or WordOps()
    _check_arity(T, leaves)
    return _comm_shape(T.shape, leaves, ops)


def xi(T: PlanarTree, leaves: Sequence, e: Edge, ops=None):
    """Commutator of the subtree hanging below e (the leaf color for a leaf edge)."""
    ops = ops or WordOps()
    _check_arity(T, leaves)
    lo, hi = T.leaf_range(e)
    return _comm_shape(T.subtree(e), leaves[lo:hi], ops)


def phi(T: PlanarTree, leaves: Sequence, h, e: Union[Edge, int], ops=None):
    """Phi_e(T, leaves, h); an int e means the leaf edge of that leaf (1-based).

    Root edge gives h. If e leaves its initial vertex to the left,
    Phi_e = [Phi_e0, (t_r^-1)^(t_l)]; to the right, Phi_e = [Phi_e0^(t_l^-1), t_l^(t_r)],
    where e0 is the edge above and t_l, t_r are xi of the two edges below e0.
    """
    ops = ops or WordOps()
    _check_arity(T, leaves)
    if isinstance(e, int):
        e = T.leaf_edge(e)
    T.subtree(e)  # validates the edge
    val = h
    for depth in range(len(e)):
        p = e[:depth]
        tl = xi(T, leaves, p + (0,), ops)
        tr = xi(T, leaves, p + (1,), ops)
        if e[depth] == 0:
            val = ops.comm(val, ops.conj(ops.inv(tr), tl))
        else:
            val = ops.comm(ops.conj(val, ops.inv(tl)), ops.conj(tl, tr))
    return val


def prune(T: PlanarTree, leaves: Sequence, e: Edge, ops=None) -> Tuple[PlanarTree, list]:
    """Cut T at the terminal vertex of e; the new leaf at e is colored xi(e)."""
    ops = ops or WordOps()
    _check_arity(T, leaves)
    if T.is_leaf_edge(e):
        return T, list(leaves)
    lo, hi = T.leaf_range(e)
    color = xi(T, leaves, e, ops)

    def rebuild(s, depth):
        if depth == len(e):
            return None
        step = e[depth]
        kids = list(s)
        kids[step] = rebuild(s[step], depth + 1)
        return tuple(kids)

    return PlanarTree(rebuild(T.shape, 0)), list(leaves[:lo]) + [color] + list(leaves[hi:])


# ---------------------------------------------------------------- decompositions

class CommutatorExpression:
    """A product of k-leaf tree commutators, in order."""

    def __init__(self, factors: Sequence[Tuple[PlanarTree, Sequence[GroupWord]]], k: int):
        for T, leaves in factors:
            if T.n_leaves() != k:
                raise ValueError(f"factor has {T.n_leaves()} leaves, expected {k}")
            _check_arity(T, leaves)
        self.factors = [(T, list(leaves)) for T, leaves in factors]
        self.k = k

    def product(self) -> GroupWord:
        w = GroupWord()
        for T, leaves in self.factors:
            w = w * comm_of_tree(T, leaves)
        return w

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        rows = []
        for T, leaves in self.factors:
            rows.append(T.render([f"({w})" if len(w) > 1 else str(w) for w in leaves]))
        return " * ".join(rows) if rows else "1"


def _lyndon_factors(x: LieElement, d: int, genus: int) -> List[Tuple[PlanarTree, List[GroupWord]]]:
    """Tree commutators whose classes sum to the degree-d part of x (integral coordinates)."""
    out = []
    for w in lyndon_words(d, 2 * genus):
        c = x.coords.get(w)
        if not c:
            continue
        if c.denominator != 1:
            raise ValueError(f"non-integral Lyndon coordinate {c}")
        T, leaves = PlanarTree.from_nested(lyndon_tree(w))
        leaves = [GroupWord.gen(l) for l in leaves]
        n = int(c)
        if n < 0:
            if T.shape is None:
                leaves = [leaves[0].inv()]
            else:
                nl = _count(T.shape[0])
                T, leaves = T.swap_root(), leaves[nl:] + leaves[:nl]
        out.extend([(T, list(leaves))] * abs(n))
    return out


def _fold(T: PlanarTree, leaves: List[GroupWord]) -> Tuple[PlanarTree, List[GroupWord]]:
    """Merge the leftmost cherry into a single leaf colored by its commutator."""
    idx = 0

    def walk(s):
        nonlocal idx
        if s is None:
            idx += 1
            return None, False
        if s[0] is None and s[1] is None:
            return None, True
        left, done = walk(s[0])
        if done:
            return (left, s[1]), True
        right, done = walk(s[1])
        return (left, right), done

    shape, done = walk(T.shape)
    if not done:
        raise ValueError("tree has no cherry")
    new_leaves = leaves[:idx] + [word_comm(leaves[idx], leaves[idx + 1])] + leaves[idx + 2:]
    return PlanarTree(shape), new_leaves


def decompose(w: GroupWord, k: int, depth: int = 1, genus: Optional[int] = None) -> CommutatorExpression:
    """Product of k-leaf tree commutators agreeing with w modulo Gamma_{k+depth}."""
    if depth not in (1, 2):
        raise ValueError("depth must be 1 or 2")
    g = genus or w.max_genus()
    c = lcs_class(w, k, g)
    if c < k:
        raise ClassTooLow(f"word has class {c} < {k}")
    factors = _lyndon_factors(leading_class(w, k, g), k, g)
    expr = CommutatorExpression(factors, k)
    if depth == 2:
        rest = expr.product().inv() * w
        extra = _lyndon_factors(leading_class(rest, k + 1, g), k + 1, g)
        expr = CommutatorExpression(factors + [_fold(T, leaves) for T, leaves in extra], k)
    check = expr.product() * w.inv()
    if lcs_class(check, k + depth, g) < k + depth:
        raise AssertionError("decomposition failed its class check")
    return expr

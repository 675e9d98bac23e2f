"""Truncated tensor algebra and free Lie algebra on H = span(a1, b1, ..., ag, bg).

Letters are integers: a_i is ``2*(i-1)`` and b_i is ``2*(i-1) + 1``, so the
natural integer order is the alphabet order a1 < b1 < a2 < b2 < ...
Monomials are tuples of letters; coefficients are exact ``Fraction``s.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class GenusMismatch(ValueError):
    pass


class NotLieError(ValueError):
    """Raised when a series has a homogeneous part outside the free Lie algebra."""

    def __init__(self, residue: "TensorSeries"):
        self.residue = residue
        super().__init__(f"not a Lie element; non-Lie residue: {residue}")


# ---------------------------------------------------------------- letters

def letter_name(l: int) -> str:
    return ("a" if l % 2 == 0 else "b") + str(l // 2 + 1)


def letter_of(name: str) -> int:
    """'a2' -> 2, 'b1' -> 1."""
    kind, idx = name[0], int(name[1:])
    if kind not in "ab" or idx < 1:
        raise ValueError(f"bad letter {name!r}")
    return 2 * (idx - 1) + (kind == "b")


def monomial_str(w: Sequence[int]) -> str:
    return "".join(letter_name(l) for l in w) if w else "1"


def dual_letter(l: int) -> int:
    """The letter paired with l by omega (a_i <-> b_i)."""
    return l ^ 1


def omega_pair(h1: int, h2: int) -> int:
    """Intersection pairing on letters: omega(a_i, b_i) = 1 = -omega(b_i, a_i)."""
    if h1 // 2 != h2 // 2 or h1 == h2:
        return 0
    return 1 if h1 % 2 == 0 else -1


def omega_bilinear(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Fraction:
    return sum((cx * cy * omega_pair(hx, hy) for hx, cx in x.items() for hy, cy in y.items()), ZERO)


def fmt_coeff(c: Fraction, first: bool) -> str:
    """Render a coefficient prefix, e.g. '', ' - ', '3/2 ', ' + 1/2 '."""
    sign = "-" if c < 0 else "+"
    a = abs(c)
    body = "" if a == 1 else f"{a} "
    if first:
        return ("-" if sign == "-" else "") + body
    return f" {sign} {body}"


class SymplecticBasis:
    """The 2g letters of H with the intersection form and the bivector."""

    def __init__(self, genus: int):
        if genus < 1:
            raise ValueError("genus must be positive")
        self.genus = genus
        self.letters = list(range(2 * genus))

    def names(self) -> List[str]:
        return [letter_name(l) for l in self.letters]

    def omega(self, h1: int, h2: int) -> int:
        return omega_pair(h1, h2)

    def omega_bivector(self, N: int = 2) -> "LieElement":
        # the convention ledger: omega = -sum_i [a_i, b_i]
        return LieElement({(2 * i, 2 * i + 1): Fraction(-1) for i in range(self.genus)}, self.genus, N)


# ---------------------------------------------------------------- series

class TensorSeries:
    """Element of the tensor algebra truncated above degree N.

    Stored as a list of per-degree dicts; ``parts[d]`` maps monomials of
    length d to nonzero Fractions.
    """

    __slots__ = ("genus", "N", "parts")

    def __init__(self, terms: Optional[Mapping[Sequence[int], object]] = None, genus: int = 1, N: int = 0):
        self.genus = genus
        self.N = N
        self.parts: List[Dict[Monomial, Fraction]] = [dict() for _ in range(N + 1)]
        if terms:
            n_letters = 2 * genus
            for w, c in terms.items():
                w = tuple(w)
                if len(w) > N:
                    continue
                if any(not 0 <= l < n_letters for l in w):
                    raise ValueError(f"letter out of range for genus {genus}: {w}")
                c = Fraction(c)
                if c:
                    d = self.parts[len(w)]
                    c = d.get(w, ZERO) + c
                    if c:
                        d[w] = c
                    else:
                        del d[w]

    @classmethod
    def _raw(cls, genus: int, N: int, parts: List[Dict[Monomial, Fraction]]) -> "TensorSeries":
        s = cls.__new__(cls)
        s.genus, s.N, s.parts = genus, N, parts
        return s

    @classmethod
    def zero(cls, genus: int, N: int) -> "TensorSeries":
        return cls._raw(genus, N, [dict() for _ in range(N + 1)])

    @classmethod
    def one(cls, genus: int, N: int) -> "TensorSeries":
        return cls.scalar(ONE, genus, N)

    @classmethod
    def scalar(cls, c, genus: int, N: int) -> "TensorSeries":
        s = cls.zero(genus, N)
        c = Fraction(c)
        if c:
            s.parts[0][()] = c
        return s

    @classmethod
    def letter(cls, l: int, genus: int, N: int) -> "TensorSeries":
        s = cls.zero(genus, N)
        if N >= 1:
            s.parts[1][(l,)] = ONE
        return s

    @classmethod
    def parse(cls, text: str, genus: int, N: int) -> "TensorSeries":
        """Parse sums like '1 + a1b1 - 1/2 b1a1'."""
        import re
        terms: Dict[Monomial, Fraction] = {}
        toks = re.findall(r"[+-]|[^\s+-]+", text.replace(" ", ""))
        sign = 1
        for tok in toks:
            if tok in "+-":
                sign = -1 if tok == "-" else 1
                continue
            m = re.fullmatch(r"(\d+(?:/\d+)?)?\*?((?:[ab]\d+)*)", tok)
            if not m or not (m.group(1) or m.group(2)):
                raise ValueError(f"cannot parse term {tok!r}")
            c = Fraction(m.group(1)) if m.group(1) else ONE
            w = tuple(letter_of(x) for x in re.findall(r"[ab]\d+", m.group(2)))
            terms[w] = terms.get(w, ZERO) + sign * c
            sign = 1
        return cls(terms, genus, N)

    # -- inspection

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        for d in self.parts:
            yield from d.items()

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self.items())

    def coeff(self, w: Sequence[int]) -> Fraction:
        w = tuple(w)
        if len(w) > self.N:
            return ZERO
        return self.parts[len(w)].get(w, ZERO)

    def constant(self) -> Fraction:
        return self.parts[0].get((), ZERO)

    def is_zero(self) -> bool:
        return not any(self.parts)

    def valuation(self) -> int:
        """Lowest degree with a nonzero term; N+1 for zero."""
        for d, p in enumerate(self.parts):
            if p:
                return d
        return self.N + 1

    def degree_part(self, d: int) -> "TensorSeries":
        s = TensorSeries.zero(self.genus, self.N)
        if 0 <= d <= self.N:
            s.parts[d] = dict(self.parts[d])
        return s

    def truncate(self, N: int) -> "TensorSeries":
        N = min(N, self.N)
        return TensorSeries._raw(self.genus, N, [dict(p) for p in self.parts[: N + 1]])

    def extend(self, N: int) -> "TensorSeries":
        """Same terms viewed at a higher truncation (only valid for exact data)."""
        parts = [dict(p) for p in self.parts] + [dict() for _ in range(N - self.N)]
        return TensorSeries._raw(self.genus, max(N, self.N), parts)

    def _check(self, other: "TensorSeries") -> None:
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")

    # -- arithmetic

    def __add__(self, other):
        if not isinstance(other, TensorSeries):
            other = TensorSeries.scalar(other, self.genus, self.N)
        self._check(other)
        N = min(self.N, other.N)
        parts = []
        for d in range(N + 1):
            p = dict(self.parts[d])
            for w, c in other.parts[d].items():
                c = p.get(w, ZERO) + c
                if c:
                    p[w] = c
                else:
                    p.pop(w, None)
            parts.append(p)
        return TensorSeries._raw(self.genus, N, parts)

    __radd__ = __add__

    def __neg__(self):
        return TensorSeries._raw(self.genus, self.N, [{w: -c for w, c in p.items()} for p in self.parts])

    def __sub__(self, other):
        if not isinstance(other, TensorSeries):
            other = TensorSeries.scalar(other, self.genus, self.N)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TensorSeries":
        c = Fraction(c)
        if not c:
            return TensorSeries.zero(self.genus, self.N)
        return TensorSeries._raw(self.genus, self.N, [{w: c * x for w, x in p.items()} for p in self.parts])

    def __mul__(self, other):
        if not isinstance(other, TensorSeries):
            return self.scale(other)
        return tensor_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(ONE / Fraction(c))

    def __pow__(self, n: int):
        out = TensorSeries.one(self.genus, self.N)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            if other == 0:
                return self.is_zero()
            return NotImplemented
        return self.genus == other.genus and self.N == other.N and self.parts == other.parts

    def equal_mod(self, other: "TensorSeries", n: int) -> bool:
        """Agreement in all degrees <= n."""
        return all(self.parts[d] == other.parts[d] for d in range(n + 1))

    def __hash__(self):
        return hash((self.genus, self.N, frozenset(self.items())))

    def __repr__(self):
        return f"TensorSeries({self}, N={self.N})"

    def __str__(self):
        out = []
        for w, c in sorted(self.items(), key=lambda t: (len(t[0]), t[0])):
            pre = fmt_coeff(c, not out)
            body = monomial_str(w)
            if body == "1" and abs(c) != 1:
                body = ""
                pre = pre.rstrip()
            out.append(pre + body)
        return "".join(out) if out else "0"

    # -- algebra operations

    def log(self) -> "TensorSeries":
        return tensor_log(self)

    def exp(self) -> "TensorSeries":
        return tensor_exp(self)

    def inverse(self) -> "TensorSeries":
        return tensor_inverse(self)

    def antipode(self) -> "TensorSeries":
        """w -> (-1)^|w| reversed(w); the inverse of a group-like series."""
        return TensorSeries._raw(
            self.genus, self.N,
            [{w[::-1]: (c if d % 2 == 0 else -c) for w, c in p.items()} for d, p in enumerate(self.parts)],
        )

    def substitute_linear(self, images: Mapping[int, Mapping[int, Fraction]]) -> "TensorSeries":
        """Apply the algebra map induced by a linear map on letters."""
        out = TensorSeries.zero(self.genus, self.N)
        for d, p in enumerate(self.parts):
            acc = out.parts[d]
            for w, c in p.items():
                partial = {(): c}
                for l in w:
                    nxt: Dict[Monomial, Fraction] = {}
                    for u, cu in partial.items():
                        for m, cm in images[l].items():
                            key = u + (m,)
                            nxt[key] = nxt.get(key, ZERO) + cu * cm
                    partial = nxt
                for u, cu in partial.items():
                    v = acc.get(u, ZERO) + cu
                    if v:
                        acc[u] = v
                    else:
                        acc.pop(u, None)
        return out


def tensor_mul(u: TensorSeries, v: TensorSeries) -> TensorSeries:
    """Concatenation product truncated at min(N_u, N_v)."""
    u._check(v)
    N = min(u.N, v.N)
    parts: List[Dict[Monomial, Fraction]] = [dict() for _ in range(N + 1)]
    vu, vv = u.valuation(), v.valuation()
    for p in range(vu, N + 1 - vv):
        up = u.parts[p]
        if not up:
            continue
        for q in range(vv, N + 1 - p):
            vq = v.parts[q]
            if not vq:
                continue
            acc = parts[p + q]
            for w1, c1 in up.items():
                for w2, c2 in vq.items():
                    key = w1 + w2
                    acc[key] = acc.get(key, ZERO) + c1 * c2
    for acc in parts:
        for key in [k for k, c in acc.items() if not c]:
            del acc[key]
    return TensorSeries._raw(u.genus, N, parts)


def bracket(u: TensorSeries, v: TensorSeries) -> TensorSeries:
    return u * v - v * u


def tensor_exp(u: TensorSeries) -> TensorSeries:
    if u.constant():
        raise ValueError("exp needs constant term 0")
    out = TensorSeries.one(u.genus, u.N)
    power = TensorSeries.one(u.genus, u.N)
    n = 1
    while True:
        power = (power * u).scale(Fraction(1, n))
        if power.is_zero():
            return out
        out = out + power
        n += 1


def tensor_log(u: TensorSeries) -> TensorSeries:
    if u.constant() != 1:
        raise ValueError("log needs constant term 1")
    y = u - 1
    out = TensorSeries.zero(u.genus, u.N)
    power = TensorSeries.one(u.genus, u.N)
    n = 1
    while True:
        power = power * y
        if power.is_zero():
            return out
        out = out + power.scale(Fraction((-1) ** (n - 1), n))
        n += 1


def tensor_inverse(u: TensorSeries) -> TensorSeries:
    """Multiplicative inverse of a series with constant term c != 0."""
    c = u.constant()
    if not c:
        raise ValueError("series with zero constant term is not invertible")
    y = TensorSeries.one(u.genus, u.N) - u.scale(ONE / c)
    out = TensorSeries.one(u.genus, u.N)
    power = TensorSeries.one(u.genus, u.N)
    while True:
        power = power * y
        if power.is_zero():
            return out.scale(ONE / c)
        out = out + power


def bch(x: TensorSeries, y: TensorSeries, check: bool = False) -> TensorSeries:
    """log(exp x exp y); with check=True the result is verified to be Lie."""
    z = tensor_log(tensor_exp(x) * tensor_exp(y))
    if check:
        to_lyndon(z)
    return z


# ---------------------------------------------------------------- Lyndon words

def lyndon_words(d: int, n: int) -> List[Monomial]:
    """Lyndon words of length exactly d over range(n), in lexicographic order (Duval)."""
    out = []
    if d < 1 or n < 1:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == d:
            out.append(tuple(w))
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return out


@lru_cache(maxsize=None)
def is_lyndon(w: Monomial) -> bool:
    n = len(w)
    return n > 0 and all(w < w[i:] + w[:i] for i in range(1, n))


@lru_cache(maxsize=None)
def standard_factorization(w: Monomial) -> Tuple[Monomial, Monomial]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


def lyndon_tree(w: Monomial):
    """Nested tuple bracketing: a letter int, or a pair (left, right)."""
    if len(w) == 1:
        return w[0]
    u, v = standard_factorization(w)
    return (lyndon_tree(u), lyndon_tree(v))


def tree_str(t) -> str:
    if isinstance(t, int):
        return letter_name(t)
    return f"[{tree_str(t[0])},{tree_str(t[1])}]"


def lyndon_str(w: Monomial) -> str:
    return tree_str(lyndon_tree(w))


@lru_cache(maxsize=None)
def _bracket_poly(w: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    """Integer polynomial of the standard bracketing of a Lyndon word."""
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    pu, pv = dict(_bracket_poly(u)), dict(_bracket_poly(v))
    acc: Dict[Monomial, int] = {}
    for x, cx in pu.items():
        for y, cy in pv.items():
            acc[x + y] = acc.get(x + y, 0) + cx * cy
            acc[y + x] = acc.get(y + x, 0) - cx * cy
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def lyndon_poly(w: Monomial) -> Dict[Monomial, int]:
    return dict(_bracket_poly(tuple(w)))


def lyndon_basis(d: int, genus: int) -> List[str]:
    """Bracketed Lyndon words of degree d, e.g. ['[a1,b1]'] for d=2, g=1."""
    return [lyndon_str(w) for w in lyndon_words(d, 2 * genus)]


def witt_number(d: int, n: int) -> int:
    """Dimension of the degree-d part of the free Lie algebra on n letters."""
    from sympy import divisors
    from sympy.functions.combinatorial.numbers import mobius
    return sum(int(mobius(e)) * n ** (d // e) for e in divisors(d)) // d


# ---------------------------------------------------------------- Lie elements

class LieElement:
    """Element of the free Lie algebra in Lyndon coordinates, truncated above N."""

    __slots__ = ("genus", "N", "coords")

    def __init__(self, coords: Optional[Mapping[Sequence[int], object]] = None, genus: int = 1, N: Optional[int] = None):
        self.genus = genus
        self.coords: Dict[Monomial, Fraction] = {}
        for w, c in (coords or {}).items():
            w = tuple(w)
            if not is_lyndon(w):
                raise ValueError(f"{monomial_str(w)} is not a Lyndon word")
            c = Fraction(c)
            if c:
                self.coords[w] = self.coords.get(w, ZERO) + c
        self.coords = {w: c for w, c in self.coords.items() if c}
        if N is None:
            N = max((len(w) for w in self.coords), default=0)
        self.N = N
        self.coords = {w: c for w, c in self.coords.items() if len(w) <= N}

    @classmethod
    def zero(cls, genus: int, N: int) -> "LieElement":
        return cls({}, genus, N)

    @classmethod
    def letter(cls, l: int, genus: int, N: int = 1) -> "LieElement":
        return cls({(l,): 1}, genus, N)

    def degree_part(self, d: int) -> "LieElement":
        return LieElement({w: c for w, c in self.coords.items() if len(w) == d}, self.genus, self.N)

    def degrees(self) -> List[int]:
        return sorted({len(w) for w in self.coords})

    def is_zero(self) -> bool:
        return not self.coords

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords.values())

    def to_series(self, N: Optional[int] = None) -> TensorSeries:
        return from_lyndon(self, N)

    def _combine(self, other: "LieElement", sign: int) -> "LieElement":
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")
        coords = dict(self.coords)
        for w, c in other.coords.items():
            coords[w] = coords.get(w, ZERO) + sign * c
        return LieElement(coords, self.genus, min(self.N, other.N))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return LieElement({w: -c for w, c in self.coords.items()}, self.genus, self.N)

    def scale(self, c) -> "LieElement":
        return LieElement({w: Fraction(c) * x for w, x in self.coords.items()}, self.genus, self.N)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def bracket(self, other: "LieElement", N: Optional[int] = None) -> "LieElement":
        if N is None:
            N = min(self.N, other.N) if self.N and other.N else max(self.N + other.N, 0)
        s = bracket(self.to_series(N), other.to_series(N))
        return to_lyndon(s)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.genus == other.genus and self.coords == other.coords

    def __hash__(self):
        return hash((self.genus, frozenset(self.coords.items())))

    def __repr__(self):
        return f"LieElement({self})"

    def __str__(self):
        out = []
        for w in sorted(self.coords, key=lambda w: (len(w), w)):
            out.append(fmt_coeff(self.coords[w], not out) + lyndon_str(w))
        return "".join(out) if out else "0"


def from_lyndon(x: LieElement, N: Optional[int] = None) -> TensorSeries:
    N = x.N if N is None else N
    parts: List[Dict[Monomial, Fraction]] = [dict() for _ in range(N + 1)]
    for w, c in x.coords.items():
        if len(w) > N:
            continue
        acc = parts[len(w)]
        for m, k in _bracket_poly(w):
            acc[m] = acc.get(m, ZERO) + c * k
    for acc in parts:
        for key in [k for k, c in acc.items() if not c]:
            del acc[key]
    return TensorSeries._raw(x.genus, N, parts)


def dynkin(u: TensorSeries) -> TensorSeries:
    """Left-normed bracketing of each monomial; equals d*u on Lie elements of degree d."""
    parts: List[Dict[Monomial, Fraction]] = [dict() for _ in range(u.N + 1)]
    for d in range(1, u.N + 1):
        acc = parts[d]
        for w, c in u.parts[d].items():
            for m, k in _left_normed(w):
                acc[m] = acc.get(m, ZERO) + c * k
        for key in [k for k, c in acc.items() if not c]:
            del acc[key]
    return TensorSeries._raw(u.genus, u.N, parts)


@lru_cache(maxsize=None)
def _left_normed(w: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    cur: Dict[Monomial, int] = {w[:1]: 1}
    for l in w[1:]:
        nxt: Dict[Monomial, int] = {}
        for m, c in cur.items():
            nxt[m + (l,)] = nxt.get(m + (l,), 0) + c
            nxt[(l,) + m] = nxt.get((l,) + m, 0) - c
        cur = nxt
    return tuple((m, c) for m, c in cur.items() if c)


def lie_projection(u: TensorSeries) -> TensorSeries:
    """Dynkin-Specht-Wever projection (1/d) Dyn on each degree d >= 1."""
    dyn = dynkin(u)
    return TensorSeries._raw(
        u.genus, u.N,
        [dict()] + [{w: c / d for w, c in dyn.parts[d].items()} for d in range(1, u.N + 1)],
    )


def to_lyndon(u: TensorSeries) -> LieElement:
    """Lyndon coordinates of a Lie series; raises NotLieError otherwise.

    Greedy triangular elimination: the least monomial in the support of a Lie
    polynomial is a Lyndon word w, and the bracket P(w) is w plus larger words.
    """
    coords: Dict[Monomial, Fraction] = {}
    failed = bool(u.constant())
    for d in range(1, u.N + 1):
        rest = dict(u.parts[d])
        heap = list(rest)
        heapq.heapify(heap)
        while heap and not failed:
            w = heapq.heappop(heap)
            c = rest.get(w)
            if not c:
                continue
            if not is_lyndon(w):
                failed = True
                break
            coords[w] = c
            for m, k in _bracket_poly(w):
                v = rest.get(m, ZERO) - c * k
                if v:
                    if m not in rest:
                        heapq.heappush(heap, m)
                    rest[m] = v
                else:
                    rest.pop(m, None)
        if failed:
            break
    if failed:
        raise NotLieError(u - lie_projection(u))
    return LieElement(coords, u.genus, u.N)


def is_lie(u: TensorSeries) -> bool:
    try:
        to_lyndon(u)
        return True
    except NotLieError:
        return False


# ---------------------------------------------------------------- cyclic words

def necklace(w: Monomial) -> Monomial:
    """Lexicographically minimal rotation."""
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class CyclicSeries:
    """Element of the cyclic quotient |T(H)| = T(H)/[T(H),T(H)], truncated above N."""

    __slots__ = ("genus", "N", "terms")

    def __init__(self, terms: Optional[Mapping[Sequence[int], object]] = None, genus: int = 1, N: int = 0):
        self.genus, self.N = genus, N
        acc: Dict[Monomial, Fraction] = {}
        for w, c in (terms or {}).items():
            w = necklace(tuple(w))
            if len(w) <= N:
                acc[w] = acc.get(w, ZERO) + Fraction(c)
        self.terms = {w: c for w, c in acc.items() if c}

    def __add__(self, other: "CyclicSeries") -> "CyclicSeries":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, ZERO) + c
        return CyclicSeries(t, self.genus, min(self.N, other.N))

    def scale(self, c) -> "CyclicSeries":
        return CyclicSeries({w: Fraction(c) * x for w, x in self.terms.items()}, self.genus, self.N)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def degree_part(self, d: int) -> "CyclicSeries":
        return CyclicSeries({w: c for w, c in self.terms.items() if len(w) == d}, self.genus, self.N)

    def valuation(self) -> int:
        return min((len(w) for w in self.terms), default=self.N + 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, CyclicSeries):
            return NotImplemented
        return self.genus == other.genus and self.terms == other.terms

    def __str__(self):
        out = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            out.append(fmt_coeff(self.terms[w], not out) + "|" + monomial_str(w) + "|")
        return "".join(out) if out else "0"

    __repr__ = __str__


def cyclic_project(u: TensorSeries) -> CyclicSeries:
    return CyclicSeries(dict(u.items()), u.genus, u.N)


def letters_series(genus: int, N: int) -> List[TensorSeries]:
    return [TensorSeries.letter(l, genus, N) for l in range(2 * genus)]


def lie_from_tree(t, genus: int, N: Optional[int] = None) -> LieElement:
    """Evaluate a nested-tuple bracket of letters in the free Lie algebra."""
    def ev(t):
        if isinstance(t, int):
            return TensorSeries.letter(t, genus, N)
        return bracket(ev(t[0]), ev(t[1]))
    if N is None:
        N = _tree_size(t)
    return to_lyndon(ev(t))


def _tree_size(t) -> int:
    return 1 if isinstance(t, int) else _tree_size(t[0]) + _tree_size(t[1])


def parse_lie(text: str, genus: int, N: Optional[int] = None) -> LieElement:
    """Parse a rational combination of brackets, e.g. '3/2 [a1,[a1,b1]] - [a2,b1]'."""
    import re
    text = text.strip()
    total: Optional[TensorSeries] = None
    terms = []
    sign = 1
    tokens = re.findall(r"\s*([+-]|\d+(?:/\d+)?|\[|\]|,|[ab]\d+|\S)", text)
    i = 0

    def expr():
        nonlocal i
        tok = tokens[i]
        if tok == "[":
            i += 1
            left = expr()
            if tokens[i] != ",":
                raise ValueError(f"expected ',' at token {tokens[i]!r}")
            i += 1
            right = expr()
            if tokens[i] != "]":
                raise ValueError(f"expected ']' at token {tokens[i]!r}")
            i += 1
            return (left, right)
        if re.fullmatch(r"[ab]\d+", tok):
            l = letter_of(tok)
            if l >= 2 * genus:
                raise ValueError(f"letter {tok!r} out of range for genus {genus}")
            i += 1
            return l
        raise ValueError(f"unexpected token {tok!r}")

    try:
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-":
                sign = -1 if tok == "-" else 1
                i += 1
                continue
            c = ONE
            if re.fullmatch(r"\d+(?:/\d+)?", tok):
                c = Fraction(tok)
                i += 1
            terms.append((sign * c, expr()))
            sign = 1
    except IndexError:
        raise ValueError("unexpected end of Lie expression") from None
    deg = max((_tree_size(t) for _, t in terms), default=0)
    N = deg if N is None else N
    total = TensorSeries.zero(genus, N)
    for c, t in terms:
        total = total + lie_from_tree(t, genus, N).to_series(N).scale(c)
    return to_lyndon(total)

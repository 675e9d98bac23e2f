"""Tree-diagram target: symplectic derivations in tensor form, root-to-root gluing,
Johnson homomorphisms, and the logarithm r^theta of an automorphism.

An HElement of degree j is an element sum_h h (x) E_h of H (x) L_{j+1}
whose bracket contraction sum_h [h, E_h] vanishes. A derivation D acting on
letters corresponds to E_{a_i} = D(b_i), E_{b_i} = -D(a_i), i.e. the
identification of H with its dual through h -> omega(h, -).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .core import (
    LieElement,
    TensorSeries,
    bracket,
    cyclic_project,
    letter_name,
    lyndon_tree,
    lyndon_words,
    to_lyndon,
    witt_number,
)
from .expansion import Expansion, expand
from .free_group import ClassTooLow, GroupWord, lcs_class, leading_class
from .twist import Derivation, TruncatedAutomorphism, s_derivation


class HElement:
    """sum_h h (x) E_h with each E_h a Lie element of degree j+1."""

    def __init__(self, comps: Mapping[int, LieElement], genus: int, j: int):
        self.genus, self.j = genus, j
        self.comps: Dict[int, LieElement] = {}
        for h in range(2 * genus):
            e = comps.get(h)
            if e is None:
                e = LieElement.zero(genus, j + 1)
            if any(len(w) != j + 1 for w in e.coords):
                raise ValueError(f"component for {letter_name(h)} is not homogeneous of degree {j + 1}")
            self.comps[h] = LieElement(e.coords, genus, j + 1)

    @classmethod
    def zero(cls, genus: int, j: int) -> "HElement":
        return cls({}, genus, j)

    @classmethod
    def from_tensor(cls, acc: Mapping[int, TensorSeries], genus: int, j: int) -> "HElement":
        return cls({h: to_lyndon(s.degree_part(j + 1)) for h, s in acc.items()}, genus, j)

    @classmethod
    def from_letter_map(cls, images: Mapping[int, TensorSeries], genus: int, j: int) -> "HElement":
        """From D(h) (degree j+1 parts) via E_{a_i} = D(b_i), E_{b_i} = -D(a_i)."""
        comps = {}
        for i in range(genus):
            a, b = 2 * i, 2 * i + 1
            comps[a] = to_lyndon(images[b].degree_part(j + 1))
            comps[b] = -to_lyndon(images[a].degree_part(j + 1))
        return cls(comps, genus, j)

    def contraction(self) -> LieElement:
        """sum_h [h, E_h] in L_{j+2}."""
        N = self.j + 2
        acc = TensorSeries.zero(self.genus, N)
        for h, e in self.comps.items():
            acc = acc + bracket(TensorSeries.letter(h, self.genus, N), e.to_series(N))
        return to_lyndon(acc)

    def is_symplectic(self) -> bool:
        return self.contraction().is_zero()

    def is_integral(self) -> bool:
        return all(e.is_integral() for e in self.comps.values())

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.comps.values())

    def vector(self) -> Dict[Tuple[int, Tuple[int, ...]], Fraction]:
        """Coordinates indexed by (letter, Lyndon word)."""
        return {(h, w): c for h, e in self.comps.items() for w, c in e.coords.items()}

    def _check(self, other: "HElement") -> None:
        if (self.genus, self.j) != (other.genus, other.j):
            raise ValueError("HElements of different genus or degree")

    def __add__(self, other: "HElement") -> "HElement":
        self._check(other)
        return HElement({h: self.comps[h] + other.comps[h] for h in self.comps}, self.genus, self.j)

    def __sub__(self, other: "HElement") -> "HElement":
        self._check(other)
        return HElement({h: self.comps[h] - other.comps[h] for h in self.comps}, self.genus, self.j)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "HElement":
        return HElement({h: e.scale(c) for h, e in self.comps.items()}, self.genus, self.j)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HElement):
            return NotImplemented
        return (self.genus, self.j) == (other.genus, other.j) and self.comps == other.comps

    def rows(self) -> List[str]:
        return [f"{letter_name(h)} ⊗ ({e})" for h, e in sorted(self.comps.items()) if not e.is_zero()]

    def __str__(self):
        rows = self.rows()
        return "\n".join(rows) if rows else "0"

    __repr__ = __str__


class GradedH(dict):
    """Map degree -> HElement."""

    def is_symplectic(self) -> bool:
        return all(h.is_symplectic() for h in self.values())


# ---------------------------------------------------------------- gluing

def _emit(tree, outside: TensorSeries, acc: Dict[int, TensorSeries], N: int, genus: int) -> None:
    """Add col(v) (x) comm(T re-rooted at v) for each leaf v of tree.

    ``outside`` is the Lie element carried by the edge above the tree. At a
    vertex with children (L, R) the cyclic order is (parent, R, L) read
    from L, so a leaf in L sees [comm(R), outside] and a leaf in R sees
    [outside, comm(L)].
    """
    if isinstance(tree, int):
        acc[tree] = acc[tree] + outside if tree in acc else outside
        return
    left, right = tree
    _emit(left, bracket(_comm(right, N, genus), outside), acc, N, genus)
    _emit(right, bracket(outside, _comm(left, N, genus)), acc, N, genus)


def _comm(tree, N: int, genus: int) -> TensorSeries:
    if isinstance(tree, int):
        return TensorSeries.letter(tree, genus, N)
    return bracket(_comm(tree[0], N, genus), _comm(tree[1], N, genus))


def _homogeneous_degree(x: LieElement) -> int:
    degs = x.degrees()
    if len(degs) > 1:
        raise ValueError("glue needs homogeneous Lie elements")
    return degs[0] if degs else 0


def glue(x: LieElement, y: LieElement, kx: Optional[int] = None, ky: Optional[int] = None) -> HElement:
    """eta of the root-to-root gluing of Lyndon-tree presentations of x and y."""
    if x.genus != y.genus:
        raise ValueError("genus mismatch")
    kx = _homogeneous_degree(x) if kx is None else kx
    ky = _homogeneous_degree(y) if ky is None else ky
    if kx < 1 or ky < 1 or kx + ky < 3:
        raise ValueError("glue needs degrees k, m >= 1 with k + m >= 3")
    genus, N = x.genus, kx + ky - 1
    acc: Dict[int, TensorSeries] = {}
    xs, ys = x.to_series(N), y.to_series(N)
    # emit is linear in the outside value, so each side is walked once per Lyndon tree
    for w, c in x.coords.items():
        part: Dict[int, TensorSeries] = {}
        _emit(lyndon_tree(w), ys, part, N, genus)
        for h, s in part.items():
            acc[h] = acc[h] + s.scale(c) if h in acc else s.scale(c)
    for w, c in y.coords.items():
        part = {}
        _emit(lyndon_tree(w), xs, part, N, genus)
        for h, s in part.items():
            acc[h] = acc[h] + s.scale(c) if h in acc else s.scale(c)
    return HElement.from_tensor(acc, genus, kx + ky - 2)


def glue_trees(tx, ty, genus: int) -> HElement:
    """Gluing of two explicit bracket trees (nested tuples of letters)."""
    kx, ky = _size(tx), _size(ty)
    N = kx + ky - 1
    acc: Dict[int, TensorSeries] = {}
    _emit(tx, _comm(ty, N, genus), acc, N, genus)
    _emit(ty, _comm(tx, N, genus), acc, N, genus)
    return HElement.from_tensor(acc, genus, kx + ky - 2)


def _size(t) -> int:
    return 1 if isinstance(t, int) else _size(t[0]) + _size(t[1])


def glue_via_s(x: LieElement, y: LieElement) -> HElement:
    """S(|x y|) restricted to H, in tensor form."""
    kx, ky = _homogeneous_degree(x), _homogeneous_degree(y)
    N = kx + ky
    c = cyclic_project(x.to_series(N) * y.to_series(N))
    D = s_derivation(c, N - 1)
    return HElement.from_letter_map(D.images, x.genus, N - 2)


# ---------------------------------------------------------------- Johnson homomorphisms

def tau(f: TruncatedAutomorphism, j: int, theta: Optional[Expansion] = None) -> HElement:
    """tau_j(f): the degree-(j+1) part of f(x) x^-1 on generators.

    Without theta the letter images F(h) - h are used; with theta the
    class of F(theta(x)) theta(x)^-1 - 1 is used instead.
    """
    if f.N < j + 1:
        raise ValueError(f"truncation {f.N} too low for tau_{j}")
    depth = f.johnson_depth()
    if depth < j:
        raise ValueError(f"automorphism has Johnson depth {depth} < {j}")
    g = f.genus
    if theta is None:
        images = {l: f.images[l] - TensorSeries.letter(l, g, f.N) for l in range(2 * g)}
    else:
        th = theta.truncate(j + 1)
        images = {}
        for l in range(2 * g):
            x = expand(th, GroupWord.gen(l))
            images[l] = f.apply(x) * x.antipode() - 1
    return HElement.from_letter_map(images, g, j)


def r_theta(f: TruncatedAutomorphism, degrees: Optional[Iterable[int]] = None) -> GradedH:
    """Degree components of log f restricted to H."""
    D = f.log_derivation()
    degrees = range(1, f.N) if degrees is None else degrees
    return GradedH({j: HElement.from_letter_map(D.images, f.genus, j) for j in degrees})


def derivation_component(D: Derivation, j: int) -> HElement:
    return HElement.from_letter_map(D.images, D.genus, j)


def thmB_value(gamma: GroupWord, k: int, eps: int = 1, genus: Optional[int] = None) -> HElement:
    """(eps/2) glue({gamma}_k, {gamma}_k); genus defaults to the smallest containing gamma."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    x = leading_class(gamma, k, genus or gamma.max_genus())
    return glue(x, x, k, k).scale(Fraction(eps, 2))


def thmC_value(gamma_p: GroupWord, gamma_m: GroupWord, k: int, genus: Optional[int] = None) -> HElement:
    """glue({gamma+}_k, {delta}_{k+1}) with delta = gamma+ gamma-^-1 of class >= k+1."""
    g = genus or max(gamma_p.max_genus(), gamma_m.max_genus())
    delta = gamma_p * gamma_m.inv()
    c = lcs_class(delta, k + 1, g)
    if c < k + 1:
        raise ClassTooLow(f"gamma+ gamma-^-1 has class {c} < {k + 1}")
    return glue(leading_class(gamma_p, k, g), leading_class(delta, k + 1, g), k, k + 1)


def integrality_check(h: HElement) -> bool:
    return h.is_integral()


# ---------------------------------------------------------------- ranks

def _rank(vectors: List[Dict]) -> int:
    """Exact rank over Q of sparse vectors (dicts)."""
    pivots: Dict = {}  # pivot key -> reduced row with leading coefficient 1
    rank = 0
    for v in vectors:
        v = {k: c for k, c in v.items() if c}
        while v:
            key = min(v)
            if key not in pivots:
                c = v[key]
                pivots[key] = {k: x / c for k, x in v.items()}
                rank += 1
                break
            row, c = pivots[key], v[key]
            for k, x in row.items():
                nv = v.get(k, Fraction(0)) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return rank


def tree_generators(j: int, genus: int) -> List[HElement]:
    """Glued generators of degree j: glue(x, y) with x in L_k, y in L_{k+1} for
    j = 2k-1, and (1/2) glue(x, x) with x in L_k for j = 2k-2, x running over
    Lyndon brackets and sums of two of them."""
    n = 2 * genus
    out = []
    if j % 2 == 1:
        k = (j + 1) // 2
        xs = [LieElement({w: 1}, genus, k) for w in lyndon_words(k, n)]
        ys = [LieElement({w: 1}, genus, k + 1) for w in lyndon_words(k + 1, n)]
        for x in xs:
            for y in ys:
                out.append(glue(x, y, k, k + 1))
    else:
        k = (j + 2) // 2
        xs = [LieElement({w: 1}, genus, k) for w in lyndon_words(k, n)]
        for p, x in enumerate(xs):
            out.append(glue(x, x, k, k).scale(Fraction(1, 2)))
            for y in xs[p + 1:]:
                s = x + y
                out.append(glue(s, s, k, k).scale(Fraction(1, 2)))
    return out


def h_rank(j: int, genus: int) -> int:
    """Rank over Q of the span of the glued generators of degree j."""
    return _rank([h.vector() for h in tree_generators(j, genus)])


def h_dimension(j: int, genus: int) -> int:
    """2g dim L_{j+1} - dim L_{j+2}."""
    n = 2 * genus
    return n * witt_number(j + 1, n) - witt_number(j + 2, n)

"""Generalized Dehn twists as truncated automorphisms of the tensor algebra.

Route 1: exp(eps * S(L(gamma))) with L(gamma) = |(1/2) (log theta(gamma))^2|.
Route 2: the group formula
    t^eps(x) x^-1 - 1 = eps * sum_ij kappa~(gamma_ij, x) <> (lambda_ij - 1),
    lambda_ij = Phi_j(T_i, gamma_i, gamma),
evaluated through an expansion, or realized as a genuine group word.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import (
    CyclicSeries,
    LieElement,
    TensorSeries,
    cyclic_project,
    omega_pair,
    tensor_log,
    to_lyndon,
)
from .expansion import Expansion, expand, neg_omega_series
from .free_group import (
    ClassTooLow,
    CommutatorExpression,
    GroupWord,
    SeriesOps,
    lcs_class,
    phi,
)
from .pairing import GeneratorPairingTable, conjugation_terms, kappa_tilde


# ---------------------------------------------------------------- derivations

class Derivation:
    """Derivation of the truncated tensor algebra, fixed by its letter images."""

    def __init__(self, images: Mapping[int, TensorSeries], genus: int, N: int):
        self.genus, self.N = genus, N
        self.images = {l: images[l].truncate(N) if l in images else TensorSeries.zero(genus, N)
                       for l in range(2 * genus)}
        # stored terms of D(h) have degree >= shift + 1
        self.shift = min(s.valuation() for s in self.images.values()) - 1

    def apply(self, u: TensorSeries) -> TensorSeries:
        """Leibniz extension: D(h1..hn) = sum_j h1..D(hj)..hn."""
        N = min(self.N, u.N)
        parts: List[Dict] = [dict() for _ in range(N + 1)]
        for d in range(1, N + 1):
            for w, c in u.parts[d].items():
                for j, h in enumerate(w):
                    img = self.images[h]
                    pre, post = w[:j], w[j + 1:]
                    room = N - d + 1
                    for e in range(max(img.valuation(), 0), min(img.N, room) + 1):
                        acc = parts[d - 1 + e]
                        for m, cm in img.parts[e].items():
                            key = pre + m + post
                            acc[key] = acc.get(key, Fraction(0)) + c * cm
        for acc in parts:
            for key in [k for k, v in acc.items() if not v]:
                del acc[key]
        return TensorSeries._raw(self.genus, N, parts)

    def scale(self, c) -> "Derivation":
        return Derivation({l: s.scale(c) for l, s in self.images.items()}, self.genus, self.N)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation({l: self.images[l] + other.images[l] for l in self.images}, self.genus,
                          min(self.N, other.N))

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.images == other.images

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.images.values())


def s_derivation(c: CyclicSeries, N: Optional[int] = None) -> Derivation:
    """S(|h1..hm|)(h) = sum_i omega(h_i, h) h_{i+1}..h_m h_1..h_{i-1}."""
    N = c.N - 1 if N is None else N
    acc: Dict[int, Dict] = {l: {} for l in range(2 * c.genus)}
    for w, coeff in c.terms.items():
        m = len(w)
        if m - 1 > N:
            continue
        for i, hi in enumerate(w):
            rot = w[i + 1:] + w[:i]
            for h in (hi ^ 1,):  # omega(hi, h) is nonzero only for the dual letter
                o = omega_pair(hi, h)
                if o:
                    acc[h][rot] = acc[h].get(rot, Fraction(0)) + o * coeff
    return Derivation({l: TensorSeries(t, c.genus, N) for l, t in acc.items()}, c.genus, N)


def l_gamma(theta: Expansion, gamma: GroupWord, N: Optional[int] = None) -> CyclicSeries:
    """|(1/2) (log theta(gamma))^2|, truncated above degree N (default theta.N)."""
    N = theta.N if N is None else N
    ell = tensor_log(expand(theta, gamma))
    v = ell.valuation()
    if v > N:
        return CyclicSeries({}, theta.genus, N)
    ell = ell.truncate(N - v).extend(N)
    return cyclic_project((ell * ell).scale(Fraction(1, 2)))


# ---------------------------------------------------------------- automorphisms

class TruncatedAutomorphism:
    """Algebra automorphism of the truncated tensor algebra, given on letters.

    ``images[l]`` is F(l), a primitive series. The image of theta(x) for a
    generator x is F(theta(x)) (see ``group_images``).
    """

    def __init__(self, images: Mapping[int, TensorSeries], genus: int, N: int):
        self.genus, self.N = genus, N
        self.images = {l: images[l].truncate(N) for l in range(2 * genus)}
        lin = self.linear_part()
        det = _det(lin, 2 * genus)
        if det == 0:
            raise ValueError("degree-1 part is not invertible")

    @classmethod
    def identity(cls, genus: int, N: int) -> "TruncatedAutomorphism":
        return cls({l: TensorSeries.letter(l, genus, N) for l in range(2 * genus)}, genus, N)

    def linear_part(self) -> Dict[int, Dict[int, Fraction]]:
        return {l: {w[0]: c for w, c in self.images[l].parts[1].items()} if self.N >= 1 else {}
                for l in range(2 * self.genus)}

    def apply(self, u: TensorSeries) -> TensorSeries:
        """F(u), by F(c0 + sum_h h u_h) = c0 + sum_h F(h) F(u_h)."""
        N = min(self.N, u.N)
        return self._apply(dict(u.items()), N)

    def _apply(self, terms: Dict[Tuple[int, ...], Fraction], n: int) -> TensorSeries:
        out = TensorSeries.scalar(terms.get((), 0), self.genus, n)
        if n == 0:
            return out
        by_first: Dict[int, Dict] = {}
        for w, c in terms.items():
            if w and len(w) <= n:
                by_first.setdefault(w[0], {})[w[1:]] = c
        for h, rest in by_first.items():
            img = self.images[h].truncate(n)
            inner = self._apply(rest, n - img.valuation()).extend(n)
            out = out + img * inner
        return out

    def apply_word(self, theta: Expansion, w: GroupWord) -> TensorSeries:
        """F(theta(w))."""
        return self.apply(expand(theta.truncate(self.N) if theta.N > self.N else theta, w))

    def apply_lie(self, x: LieElement) -> LieElement:
        return to_lyndon(self.apply(x.to_series(self.N)))

    def group_images(self, theta: Expansion) -> Dict[int, TensorSeries]:
        return {l: self.apply_word(theta, GroupWord.gen(l)) for l in range(2 * self.genus)}

    def compose(self, other: "TruncatedAutomorphism") -> "TruncatedAutomorphism":
        """self o other: h -> self(other(h))."""
        N = min(self.N, other.N)
        return TruncatedAutomorphism({l: self.apply(other.images[l].truncate(N)) for l in other.images},
                                     self.genus, N)

    __matmul__ = compose

    def inverse(self) -> "TruncatedAutomorphism":
        """Newton-type correction: G <- G - L^-1(F(G(h)) - h), one degree per step."""
        n_letters = 2 * self.genus
        lin = self.linear_part()
        inv_lin = _invert_matrix(lin, n_letters)
        G = TruncatedAutomorphism(
            {l: TensorSeries({(m,): c for m, c in inv_lin[l].items()}, self.genus, self.N) for l in range(n_letters)},
            self.genus, self.N)
        for _ in range(self.N + 1):
            err = {l: self.apply(G.images[l]) - TensorSeries.letter(l, self.genus, self.N) for l in range(n_letters)}
            if all(e.is_zero() for e in err.values()):
                return G
            G = TruncatedAutomorphism(
                {l: G.images[l] - err[l].substitute_linear(inv_lin) for l in range(n_letters)},
                self.genus, self.N)
        raise AssertionError("inversion did not converge")

    def johnson_depth(self) -> int:
        """Largest j <= N-1 with F(h) - h of valuation >= j+1 for every letter."""
        v = min((self.images[l] - TensorSeries.letter(l, self.genus, self.N)).valuation()
                for l in range(2 * self.genus))
        return min(v - 1, self.N - 1)

    def fixes(self, u: TensorSeries) -> bool:
        return self.apply(u) == u.truncate(min(u.N, self.N))

    def __eq__(self, other):
        return (isinstance(other, TruncatedAutomorphism) and self.N == other.N
                and self.images == other.images)

    def equal_mod(self, other: "TruncatedAutomorphism", n: int) -> bool:
        return all(self.images[l].equal_mod(other.images[l], n) for l in self.images)

    def log_derivation(self) -> Derivation:
        """log F = sum (-1)^(n-1)/n (F - id)^n on letters; needs F trivial on degree 1."""
        ident = TruncatedAutomorphism.identity(self.genus, self.N)
        if not self.equal_mod(ident, 1):
            raise ValueError("automorphism acts nontrivially in degree 1")
        out = {}
        for l in range(2 * self.genus):
            v = self.images[l] - TensorSeries.letter(l, self.genus, self.N)
            acc = TensorSeries.zero(self.genus, self.N)
            n = 1
            while not v.is_zero():
                acc = acc + v.scale(Fraction((-1) ** (n - 1), n))
                v = self.apply(v) - v
                n += 1
            out[l] = acc
        return Derivation(out, self.genus, self.N)

    # -- serialization: letter, degree, Lyndon word, coefficient
    def dumps(self) -> str:
        from .core import lyndon_str
        rows = ["gdtwist-automorphism 1", f"genus {self.genus}", f"N {self.N}"]
        for l in range(2 * self.genus):
            lie = to_lyndon(self.images[l])
            for w in sorted(lie.coords, key=lambda w: (len(w), w)):
                c = lie.coords[w]
                rows.append(f"{GroupWord.gen(l)} {len(w)} {lyndon_str(w)} {c.numerator} {c.denominator}")
        return "\n".join(rows) + "\n"

    @classmethod
    def loads(cls, text: str) -> "TruncatedAutomorphism":
        from .core import parse_lie
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if lines[0].split() != ["gdtwist-automorphism", "1"]:
            raise ValueError("not a version-1 automorphism file")
        meta = dict(ln.split() for ln in lines[1:3])
        genus, N = int(meta["genus"]), int(meta["N"])
        images = {l: TensorSeries.zero(genus, N) for l in range(2 * genus)}
        for ln in lines[3:]:
            gen, _, word, num, den = ln.split()
            l = GroupWord.parse(gen).syllables[0] - 1
            images[l] = images[l] + parse_lie(word, genus, N).to_series(N).scale(Fraction(int(num), int(den)))
        return cls(images, genus, N)


def _det(m: Dict[int, Dict[int, Fraction]], n: int) -> Fraction:
    a = [[Fraction(m[i].get(j, 0)) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return det


def _invert_matrix(m: Dict[int, Dict[int, Fraction]], n: int) -> Dict[int, Dict[int, Fraction]]:
    """Inverse of the letter map l -> sum_j m[l][j] j, in the same row format."""
    from sympy import Matrix
    M = Matrix(n, n, lambda i, j: m[i].get(j, 0))
    inv = M.inv()
    return {i: {j: Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(n) if inv[i, j] != 0}
            for i in range(n)}


def exp_derivation(D: Derivation) -> TruncatedAutomorphism:
    """exp(D) = sum D^n / n! on letters."""
    if D.shift < 1 and not D.is_zero():
        raise ValueError("exp needs a derivation raising degrees")
    out = {}
    for l in range(2 * D.genus):
        term = TensorSeries.letter(l, D.genus, D.N)
        acc = term
        n = 1
        while True:
            term = D.apply(term).scale(Fraction(1, n))
            if term.is_zero():
                break
            acc = acc + term
            n += 1
        out[l] = acc
    return TruncatedAutomorphism(out, D.genus, D.N)


def compose_aut(f: TruncatedAutomorphism, g: TruncatedAutomorphism) -> TruncatedAutomorphism:
    return f.compose(g)


def invert_aut(f: TruncatedAutomorphism) -> TruncatedAutomorphism:
    return f.inverse()


def aut_apply_word(f: TruncatedAutomorphism, theta: Expansion, w: GroupWord) -> TensorSeries:
    return f.apply_word(theta, w)


def aut_apply_lie(f: TruncatedAutomorphism, x: LieElement) -> LieElement:
    return f.apply_lie(x)


def johnson_depth(f: TruncatedAutomorphism) -> int:
    return f.johnson_depth()


# ---------------------------------------------------------------- generalized Dehn twists

def gdt_derivation(theta: Expansion, gamma: GroupWord, k: int, eps: int = 1, N: Optional[int] = None) -> Derivation:
    """eps * S(L(gamma)) at truncation N (default 2k+1)."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if k < 2:
        raise ValueError("generalized twists need k >= 2")
    N = 2 * k + 1 if N is None else N
    c = lcs_class(gamma, k, theta.genus)
    if c < k:
        raise ClassTooLow(f"gamma has class {c} < {k}")
    need = N + 1 - k
    if theta.N < need:
        raise ValueError(f"expansion truncation {theta.N} < {need} needed for N = {N}")
    L = l_gamma(theta.truncate(need), gamma, N + 1)
    return s_derivation(L, N).scale(eps)


def gdt(theta: Expansion, gamma: GroupWord, k: int, eps: int = 1, N: Optional[int] = None) -> TruncatedAutomorphism:
    """(t_gamma)^eps as exp(eps S(L(gamma))), truncated above degree N (default 2k+1)."""
    return exp_derivation(gdt_derivation(theta, gamma, k, eps, N))


def _lambda_series(theta: Expansion, T, leaves: Sequence[GroupWord], gamma_s: TensorSeries, j: int, N: int,
                   cache: Dict[GroupWord, TensorSeries]) -> TensorSeries:
    ops = SeriesOps(theta.genus, N)
    leaf_s = []
    for w in leaves:
        if w not in cache:
            cache[w] = expand(theta, w)
        leaf_s.append(cache[w])
    return phi(T, leaf_s, gamma_s, j, ops)


def _diamond_series(theta: Expansion, terms, inner: TensorSeries, N: int,
                    cache: Dict[GroupWord, TensorSeries]) -> TensorSeries:
    """sum c theta(w) inner theta(w)^-1 for conjugation terms (c, w)."""
    acc = TensorSeries.zero(theta.genus, N)
    v = inner.valuation()
    if v > N:
        return acc
    for c, w in terms:
        if w not in cache:
            cache[w] = expand(theta, w)
        tw = cache[w].truncate(N - v)
        conj = (tw.extend(N) * inner * tw.antipode().extend(N))
        acc = acc + conj.scale(c)
    return acc


def gdt_group_formula(decomp: CommutatorExpression, x: GroupWord, k: int, eps: int, theta: Expansion,
                      gamma: Optional[GroupWord] = None, refined: bool = True,
                      table: Optional[GeneratorPairingTable] = None) -> TensorSeries:
    """theta(t^eps(x)) truncated above degree 2k, from the group-algebra formula.

    refined=True sums kappa~(gamma_ij, x) <> (lambda_ij - 1) over the
    decomposition; refined=False uses kappa~(gamma, x) <> (gamma - 1).
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if decomp.k != k or k < 2:
        raise ValueError("decomposition class does not match k >= 2")
    N = 2 * k
    theta = theta.truncate(N) if theta.N > N else theta
    if theta.N < N:
        raise ValueError(f"expansion truncation {theta.N} < {N}")
    gamma = decomp.product() if gamma is None else gamma
    cache: Dict[GroupWord, TensorSeries] = {}
    gamma_s = expand(theta, gamma)
    total = TensorSeries.zero(theta.genus, N)
    if refined:
        for T, leaves in decomp.factors:
            for j, g in enumerate(leaves, start=1):
                terms = conjugation_terms(kappa_tilde(g, x, table))
                if not terms:
                    continue
                lam = _lambda_series(theta, T, leaves, gamma_s, j, N, cache)
                total = total + _diamond_series(theta, terms, lam - 1, N, cache)
    else:
        terms = conjugation_terms(kappa_tilde(gamma, x, table))
        total = _diamond_series(theta, terms, gamma_s - 1, N, cache)
    return (total.scale(eps) + 1) * expand(theta, x)


def gdt_group_word(decomp: CommutatorExpression, x: GroupWord, k: int, eps: int,
                   gamma: Optional[GroupWord] = None,
                   table: Optional[GeneratorPairingTable] = None) -> GroupWord:
    """A genuine word representing t^eps(x) modulo Gamma_{2k+1}:
    (prod_ij prod_(c, w) (w lambda_ij w^-1)^c)^eps x."""
    gamma = decomp.product() if gamma is None else gamma
    W = GroupWord()
    for T, leaves in decomp.factors:
        for j, g in enumerate(leaves, start=1):
            terms = conjugation_terms(kappa_tilde(g, x, table))
            if not terms:
                continue
            lam = phi(T, leaves, gamma, j)
            for c, w in terms:
                if c.denominator != 1:
                    raise ValueError("non-integral pairing coefficient")
                W = W * (w * lam * w.inv()) ** int(c)
    return (W ** eps) * x


def zeta_preserved(f: TruncatedAutomorphism, genus: int) -> bool:
    """Does f fix exp(-omega)?"""
    from .core import tensor_exp
    e = tensor_exp(neg_omega_series(genus, f.N))
    return f.fixes(e)

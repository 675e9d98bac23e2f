"""Group-like expansions of the surface group, including symplectic ones.

An expansion is fixed by the logarithms of the images of the generators.
A symplectic expansion additionally sends the boundary word
zeta = prod [alpha_i, beta_i] to exp(sum_i [a_i, b_i]) = exp(-omega).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .core import (
    SymplecticBasis,
    TensorSeries,
    bracket,
    dynkin,
    lyndon_str,
    tensor_exp,
    tensor_log,
    to_lyndon,
)
from .free_group import GroupWord, expand_word, zeta
from .pairing import AlgElement, BiElement

EXPANSION_MAGIC = "gdtwist-expansion"


class Expansion:
    """theta: pi -> group-like series, truncated above degree N."""

    def __init__(self, genus: int, N: int, logs: Mapping[int, TensorSeries], symplectic: bool = False):
        self.genus, self.N = genus, N
        self.logs = {l: logs[l].truncate(N) for l in range(2 * genus)}
        for l, s in self.logs.items():
            if s.constant() or s.parts[1] != {(l,): Fraction(1)}:
                raise ValueError(f"log image of generator {l} must be the letter plus higher terms")
        self.symplectic = symplectic
        self._images: Dict[int, TensorSeries] = {}
        for l in range(2 * genus):
            self._images[l + 1] = tensor_exp(self.logs[l])
            self._images[-(l + 1)] = tensor_exp(-self.logs[l])

    def image(self, s: int) -> TensorSeries:
        """Image of a signed generator."""
        return self._images[s]

    def truncate(self, N: int) -> "Expansion":
        return Expansion(self.genus, N, {l: s.truncate(N) for l, s in self.logs.items()}, self.symplectic)

    def __call__(self, w: GroupWord) -> TensorSeries:
        return expand(self, w)

    def __eq__(self, other):
        return isinstance(other, Expansion) and (self.genus, self.N, self.logs) == (other.genus, other.N, other.logs)

    def is_group_like(self) -> bool:
        try:
            for s in self.logs.values():
                to_lyndon(s)
        except ValueError:
            return False
        return True

    # -- serialization: generator, degree, Lyndon word, coefficient

    def dumps(self) -> str:
        rows = [f"{EXPANSION_MAGIC} 1", f"genus {self.genus}", f"N {self.N}",
                f"symplectic {int(self.symplectic)}"]
        for l in range(2 * self.genus):
            lie = to_lyndon(self.logs[l])
            for w in sorted(lie.coords, key=lambda w: (len(w), w)):
                c = lie.coords[w]
                gen = GroupWord.gen(l)
                rows.append(f"{gen} {len(w)} {lyndon_str(w)} {c.numerator} {c.denominator}")
        return "\n".join(rows) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Expansion":
        from .core import parse_lie
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        head = lines[0].split()
        if head[0] != EXPANSION_MAGIC or head[1] != "1":
            raise ValueError("not a version-1 expansion file")
        meta = dict(ln.split() for ln in lines[1:4])
        genus, N, symp = int(meta["genus"]), int(meta["N"]), meta["symplectic"] == "1"
        logs = {l: TensorSeries.zero(genus, N) for l in range(2 * genus)}
        for ln in lines[4:]:
            gen, deg, word, num, den = ln.split()
            l = GroupWord.parse(gen).syllables[0] - 1
            term = parse_lie(word, genus, N).to_series(N).scale(Fraction(int(num), int(den)))
            logs[l] = logs[l] + term
        return cls(genus, N, logs, symp)


def standard_expansion(genus: int, N: int) -> Expansion:
    """Generators go to the exponentials of their letters."""
    return Expansion(genus, N, {l: TensorSeries.letter(l, genus, N) for l in range(2 * genus)})


def expand(theta: Expansion, w: GroupWord) -> TensorSeries:
    if not w:
        return TensorSeries.one(theta.genus, theta.N)
    return expand_word(w, theta._images)


def expand_alg(theta: Expansion, u: AlgElement) -> TensorSeries:
    out = TensorSeries.zero(theta.genus, theta.N)
    for w, c in u.terms.items():
        out = out + expand(theta, w).scale(c)
    return out


def expand_bi(theta: Expansion, b: BiElement) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
    """Image in the completed T (x) T, truncated at total degree N."""
    acc: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}
    for (l, r), c in b.terms.items():
        tl, tr = expand(theta, l), expand(theta, r)
        for u, cu in tl.items():
            for v, cv in tr.items():
                if len(u) + len(v) <= theta.N:
                    acc[(u, v)] = acc.get((u, v), Fraction(0)) + c * cu * cv
    return {k: c for k, c in acc.items() if c}


def neg_omega_series(genus: int, N: int) -> TensorSeries:
    """-omega = sum_i [a_i, b_i] as a series."""
    return (-SymplecticBasis(genus).omega_bivector(N)).to_series(N)


def symplectic_defect(theta: Expansion) -> TensorSeries:
    """log theta(zeta) + omega; zero exactly when theta is symplectic."""
    return tensor_log(expand(theta, zeta(theta.genus))) - neg_omega_series(theta.genus, theta.N)


def _right_factor(r: TensorSeries, d: int) -> Dict[int, TensorSeries]:
    """Degree-d part of r written as sum_h r_h h."""
    out: Dict[int, Dict] = {}
    for w, c in r.parts[d].items():
        out.setdefault(w[-1], {})[w[:-1]] = c
    return {h: TensorSeries(t, r.genus, r.N) for h, t in out.items()}


def symplectic_expansion(genus: int, N: int, variant: int = 0) -> Expansion:
    """A symplectic expansion built by degree-wise correction of the standard one.

    At degree n the defect r_n of log theta(zeta) is a Lie element. Writing
    r_n = sum_h r_h h, the Dynkin operator gives r_n = (1/n) sum_h [Dyn(r_h), h],
    so adding u_i = -(1/n) Dyn(r_{b_i}) to log theta(alpha_i) and
    v_i = (1/n) Dyn(r_{a_i}) to log theta(beta_i) changes the defect by
    sum_i [u_i, b_i] + [a_i, v_i] = -r_n in degree n, and only later degrees
    otherwise.

    ``variant`` adds that multiple of h -> S(|[a1, b1][a1, b1]|)(h) at
    degree 3 (needs N >= 4). This derivation kills omega, so the result is
    still symplectic, and distinct variants give distinct expansions.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    logs = {l: TensorSeries.letter(l, genus, N) for l in range(2 * genus)}
    if variant:
        if N < 4:
            raise ValueError("a variant expansion needs N >= 4")
        from .twist import s_derivation
        from .core import cyclic_project
        a1 = TensorSeries.letter(0, genus, 4)
        b1 = TensorSeries.letter(1, genus, 4)
        c = cyclic_project(bracket(a1, b1) * bracket(a1, b1))
        D = s_derivation(c, 4)
        for l in logs:
            logs[l] = logs[l] + D.images[l].extend(N).scale(variant)
    for n in range(3, N + 1):
        theta = Expansion(genus, n, {l: s.truncate(n) for l, s in logs.items()})
        defect = symplectic_defect(theta)
        if not defect.truncate(n - 1).is_zero():
            raise AssertionError("lower-degree defect survived the correction")
        r = defect.degree_part(n)
        if r.is_zero():
            continue
        parts = _right_factor(r, n)
        for i in range(genus):
            a, b = 2 * i, 2 * i + 1
            if b in parts:
                logs[a] = logs[a] + dynkin(parts[b]).scale(Fraction(-1, n)).extend(N)
            if a in parts:
                logs[b] = logs[b] + dynkin(parts[a]).scale(Fraction(1, n)).extend(N)
    theta = Expansion(genus, N, logs, symplectic=True)
    if not symplectic_defect(theta).is_zero():
        raise AssertionError("symplectic correction failed")
    return theta


def make_expansion(kind: str, genus: int, N: int) -> Expansion:
    """'standard', 'symplectic', 'symplectic:<variant>', or a path to a saved file."""
    if kind == "standard":
        return standard_expansion(genus, N)
    if kind == "symplectic":
        return symplectic_expansion(genus, N)
    if kind.startswith("symplectic:"):
        return symplectic_expansion(genus, N, int(kind.split(":", 1)[1]))
    with open(kind, encoding="utf-8") as fh:
        theta = Expansion.loads(fh.read())
    if theta.genus != genus:
        raise ValueError(f"expansion file has genus {theta.genus}, expected {genus}")
    if theta.N < N:
        raise ValueError(f"expansion file has truncation {theta.N} < {N}")
    return theta.truncate(N)

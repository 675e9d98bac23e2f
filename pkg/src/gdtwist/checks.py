"""Seeded check suites over the identities the package implements.

Every suite takes a ``SuiteConfig`` and returns a list of ``CheckResult``;
the same functions back the ``check`` command and the acceptance tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .core import (
    LieElement,
    TensorSeries,
    lyndon_poly,
    lyndon_words,
    tensor_log,
    to_lyndon,
    witt_number,
)
from .diagrams import glue, h_dimension, h_rank, r_theta, tau, thmB_value, thmC_value
from .expansion import (
    expand,
    expand_alg,
    standard_expansion,
    symplectic_defect,
    symplectic_expansion,
)
from .free_group import (
    GroupWord,
    PlanarTree,
    comm_of_tree,
    decompose,
    lcs_class,
    phi,
    prune,
    word_comm,
    word_conj,
    word_inv,
    zeta,
)
from .pairing import AlgElement, BiElement, diamond, kappa_tilde, sigma_app
from .twist import (
    Derivation,
    TruncatedAutomorphism,
    exp_derivation,
    gdt,
    gdt_group_formula,
    gdt_group_word,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


@dataclass
class SuiteConfig:
    genus: int = 2
    k: int = 2
    N: Optional[int] = None
    seed: int = 0
    count: Optional[int] = None  # overrides the default sample size
    extra: Dict[str, object] = field(default_factory=dict)

    def n(self, default: int) -> int:
        return self.count if self.count is not None else default


# ---------------------------------------------------------------- random data

def random_word(rng: random.Random, genus: int, lo: int = 1, hi: int = 4) -> GroupWord:
    while True:
        n = rng.randint(lo, hi)
        w = GroupWord([rng.choice([1, -1]) * rng.randint(1, 2 * genus) for _ in range(n)])
        if len(w) >= lo or lo == 0:
            return w


def random_shape(rng: random.Random, m: int):
    if m == 1:
        return None
    left = rng.randint(1, m - 1)
    return (random_shape(rng, left), random_shape(rng, m - left))


def random_tree_commutator(rng: random.Random, genus: int, m: int, composite: bool = False,
                           leaf_len: int = 2) -> Tuple[PlanarTree, List[GroupWord]]:
    T = PlanarTree(random_shape(rng, m))
    leaves = [random_word(rng, genus, 1, leaf_len) for _ in range(m)]
    if composite:
        i = rng.randrange(m)
        leaves[i] = word_comm(random_word(rng, genus, 1, 1), random_word(rng, genus, 1, 1))
    return T, leaves


def random_gamma(rng: random.Random, genus: int, k: int, composite: bool = False) -> GroupWord:
    """A word of class exactly k built from random k-leaf tree commutators.

    With composite=True one extra factor has a commutator leaf (so it lies
    one step deeper) and the decomposition of the result has composite leaves.
    """
    while True:
        w = GroupWord()
        for _ in range(rng.randint(1, 2)):
            T, leaves = random_tree_commutator(rng, genus, k, leaf_len=1)
            w = w * comm_of_tree(T, leaves)
        if composite:
            T, leaves = random_tree_commutator(rng, genus, k, composite=True, leaf_len=1)
            w = w * comm_of_tree(T, leaves)
        if lcs_class(w, k, genus) == k:
            return w


def random_deep(rng: random.Random, genus: int, c: int) -> GroupWord:
    """A nontrivial word of class >= c: a random c-leaf commutator of generators."""
    while True:
        T, leaves = random_tree_commutator(rng, genus, c, leaf_len=1)
        w = comm_of_tree(T, leaves)
        if w:
            return w


def random_lie(rng: random.Random, genus: int, d: int, terms: int = 2) -> LieElement:
    acc = TensorSeries.zero(genus, d)
    for _ in range(terms):
        w = rng.choice(lyndon_words(d, 2 * genus))
        acc = acc + LieElement({w: rng.randint(-3, 3)}, genus, d).to_series(d)
    return to_lyndon(acc)


# ---------------------------------------------------------------- suites

def check_phi_golden(cfg: SuiteConfig) -> List[CheckResult]:
    """Phi_1, Phi_2 of the tree [g1,[[g2,g3],g4]] against the words written by hand."""
    g1, g2, g3, g4, h = (GroupWord.gen(i) for i in range(5))
    C, J, I = word_comm, word_conj, word_inv
    T, _ = PlanarTree.parse("[g1,[[g2,g3],g4]]")
    leaves = [g1, g2, g3, g4]
    expect1 = C(h, J(I(C(C(g2, g3), g4)), g1))
    expect2 = C(C(C(J(h, I(g1)), J(g1, C(C(g2, g3), g4))), J(I(g4), C(g2, g3))), J(I(g3), g2))
    out = [
        CheckResult("phi_1", phi(T, leaves, h, 1) == expect1, "Phi_1 = [h, (([[g2,g3],g4])^-1)^g1]"),
        CheckResult("phi_2", phi(T, leaves, h, 2) == expect2,
                    "Phi_2 = [[[h^(g1^-1), g1^[[g2,g3],g4]], (g4^-1)^[g2,g3]], (g3^-1)^g2]"),
        CheckResult("phi_root", phi(T, leaves, h, ()) == h, "root edge gives h"),
        CheckResult("comm", comm_of_tree(T, leaves) == C(g1, C(C(g2, g3), g4)), "T(g) = [g1,[[g2,g3],g4]]"),
    ]
    return out


def check_pruning(cfg: SuiteConfig) -> List[CheckResult]:
    rng = random.Random(cfg.seed)
    n = cfg.n(200)
    bad = 0
    for _ in range(n):
        m = rng.randint(1, 6)
        T = PlanarTree(random_shape(rng, m))
        leaves = [random_word(rng, cfg.genus, 1, 3) for _ in range(m)]
        h = random_word(rng, cfg.genus, 1, 4)
        e = rng.choice(T.edges())
        Te, ge = prune(T, leaves, e)
        if phi(T, leaves, h, e) != phi(Te, ge, h, e):
            bad += 1
    return [CheckResult("pruning", bad == 0, f"{n - bad}/{n} (tree, coloring, edge) triples agree")]


def _kt(a, x):
    return kappa_tilde(a, x)


def _pair(l: GroupWord, r: GroupWord, c=1) -> BiElement:
    return BiElement.pure(l, r, c)


def kappa_tilde_rules(alpha: GroupWord, beta: GroupWord, x: GroupWord, alphas: Sequence[GroupWord]) -> List[bool]:
    one = GroupWord()
    ai, bi = alpha.inv(), beta.inv()
    # (1)
    lhs1 = _kt(alpha * beta, x)
    rhs1 = _kt(alpha, x) + diamond(_kt(beta, x), _pair(ai, alpha))
    # (2)
    prefix = GroupWord()
    rhs2 = BiElement()
    for a in alphas:
        rhs2 = rhs2 + diamond(_kt(a, x), _pair(prefix.inv(), prefix))
        prefix = prefix * a
    lhs2 = _kt(prefix, x)
    # (3)
    lhs3 = _kt(ai, x)
    rhs3 = -diamond(_kt(alpha, x), _pair(alpha, ai))
    # (4)
    lhs4 = _kt(word_comm(alpha, beta), x)
    unit = _pair(one, one)
    t1 = diamond(_kt(alpha, x), unit - _pair(word_conj(bi, alpha), word_conj(beta, alpha)))
    t2 = diamond(diamond(_kt(beta, x), unit - _pair(word_conj(alpha, beta), word_conj(ai, beta))), _pair(ai, alpha))
    return [lhs1 == rhs1, lhs2 == rhs2, lhs3 == rhs3, lhs4 == t1 + t2]


def check_kappa_rules(cfg: SuiteConfig) -> List[CheckResult]:
    rng = random.Random(cfg.seed)
    n = cfg.n(100)
    fails = [0, 0, 0, 0]
    for _ in range(n):
        alpha = random_word(rng, cfg.genus, 1, 4)
        beta = random_word(rng, cfg.genus, 1, 4)
        x = random_word(rng, cfg.genus, 1, 3)
        alphas = [random_word(rng, cfg.genus, 1, 3) for _ in range(rng.randint(1, 4))]
        for i, ok in enumerate(kappa_tilde_rules(alpha, beta, x, alphas)):
            fails[i] += not ok
    names = ["product", "n-fold product", "inverse", "commutator"]
    return [CheckResult(f"kappa_tilde {names[i]} rule", fails[i] == 0, f"{n - fails[i]}/{n} word pairs")
            for i in range(4)]


def check_zeta(cfg: SuiteConfig) -> List[CheckResult]:
    rng = random.Random(cfg.seed)
    N = cfg.N or 6
    n = cfg.n(50)
    out = []
    for g in cfg.extra.get("genera", (1, 2)):
        theta = standard_expansion(g, N)
        z = zeta(g)
        bad_exact = bad_exp = 0
        for _ in range(n):
            u = AlgElement({random_word(rng, g, 1, 5): rng.randint(-2, 2) or 1 for _ in range(rng.randint(1, 3))})
            s = sigma_app(u, z)
            bad_exact += not s.is_zero()
            bad_exp += not expand_alg(theta, s).is_zero()
        out.append(CheckResult(f"zeta annihilation g={g}", bad_exp == 0,
                               f"{n - bad_exp}/{n} expand to 0 mod degree {N + 1}; {n - bad_exact}/{n} vanish exactly"))
    return out


def check_symplectic(cfg: SuiteConfig) -> List[CheckResult]:
    N = cfg.N or 7
    out = []
    for g in cfg.extra.get("genera", (1, 2)):
        theta = symplectic_expansion(g, N)
        out.append(CheckResult(f"symplectic g={g} N={N}", symplectic_defect(theta).is_zero() and theta.is_group_like(),
                               "log theta(zeta) = -omega and generator images group-like"))
    return out


def gamma_suite(cfg: SuiteConfig, n: int) -> List[GroupWord]:
    rng = random.Random(cfg.seed)
    return [random_gamma(rng, cfg.genus, cfg.k, composite=(i % 2 == 1)) for i in range(n)]


def _has_composite(expr) -> bool:
    return any(len(w) > 1 for _, leaves in expr.factors for w in leaves)


def check_crossroute(cfg: SuiteConfig) -> List[CheckResult]:
    k = cfg.k
    N = cfg.N or 2 * k + 1
    n = cfg.n(10)
    words = cfg.extra.get("word_checks", 2)
    theta = symplectic_expansion(cfg.genus, N)
    rng = random.Random(cfg.seed + 1)
    total = agree = coarse = composite = word_ok = word_total = 0
    for i, gamma in enumerate(gamma_suite(cfg, n)):
        eps = rng.choice((1, -1))
        F = gdt(theta, gamma, k, eps, N)
        dec = decompose(gamma, k, 2, cfg.genus)
        composite += _has_composite(dec)
        for l in range(2 * cfg.genus):
            x = GroupWord.gen(l)
            route1 = F.apply_word(theta, x).truncate(2 * k)
            route2 = gdt_group_formula(dec, x, k, eps, theta, gamma)
            route2c = gdt_group_formula(dec, x, k, eps, theta, gamma, refined=False)
            total += 1
            agree += route1 == route2
            coarse += route2 == route2c
            if i < words:
                W = gdt_group_word(dec, x, k, eps, gamma)
                word_total += 1
                word_ok += expand(theta.truncate(2 * k), W) == route1
    out = [
        CheckResult(f"cross-route g={cfg.genus} k={k} N={N}", agree == total and total > 0,
                    f"{agree}/{total} (gamma, generator) classes agree; {composite}/{n} decompositions with composite leaves"),
        CheckResult("coarse vs refined group formula", coarse == total, f"{coarse}/{total}"),
    ]
    if word_total:
        out.append(CheckResult("integral word realization", word_ok == word_total,
                               f"{word_ok}/{word_total} genuine words expand to the tensor-route class"))
    return out


def check_trees(cfg: SuiteConfig) -> List[CheckResult]:
    """r^theta of a twist through degree 2k-1 against the glued leading terms."""
    k = cfg.k
    N = cfg.N or 2 * k + 1
    theta = symplectic_expansion(cfg.genus, N)
    rng = random.Random(cfg.seed + 2)
    n = cfg.n(10)
    ok_even = ok_odd = 0
    for gamma in gamma_suite(cfg, n):
        eps = rng.choice((1, -1))
        R = r_theta(gdt(theta, gamma, k, eps, N), [2 * k - 2, 2 * k - 1])
        ell = to_lyndon(tensor_log(expand(theta.truncate(k + 1), gamma)))
        tk, tk1 = ell.degree_part(k), ell.degree_part(k + 1)
        ok_even += R[2 * k - 2] == glue(tk, tk, k, k).scale(Fraction(eps, 2))
        ok_odd += R[2 * k - 1] == glue(tk, tk1, k, k + 1).scale(eps)
    return [
        CheckResult(f"r_theta degree {2 * k - 2}", ok_even == n, f"{ok_even}/{n} equal (eps/2) glue(theta_k, theta_k)"),
        CheckResult(f"r_theta degree {2 * k - 1}", ok_odd == n, f"{ok_odd}/{n} equal eps glue(theta_k, theta_k+1)"),
    ]


def twist_pairs(cfg: SuiteConfig, n: int) -> List[Tuple[GroupWord, GroupWord]]:
    rng = random.Random(cfg.seed + 3)
    out = []
    while len(out) < n:
        gm = random_gamma(rng, cfg.genus, cfg.k)
        c = random_deep(rng, cfg.genus, cfg.k + 1)
        if lcs_class(c, cfg.k + 1, cfg.genus) == cfg.k + 1:
            out.append((c * gm, gm))
    return out


def check_leading_values(cfg: SuiteConfig) -> List[CheckResult]:
    k = cfg.k
    N = cfg.N or 2 * k + 1
    theta = symplectic_expansion(cfg.genus, N)
    rng = random.Random(cfg.seed + 4)
    n = cfg.n(10)
    okB = intB = 0
    for gamma in gamma_suite(cfg, n):
        eps = rng.choice((1, -1))
        value = thmB_value(gamma, k, eps, cfg.genus)
        okB += tau(gdt(theta, gamma, k, eps, N), 2 * k - 2) == value and value.is_symplectic()
        intB += value.is_integral()
    m = max(5, cfg.n(5) // 2)
    okC = intC = nonzero = 0
    for gp, gm in twist_pairs(cfg, m):
        f = gdt(theta, gm, k, -1, N).compose(gdt(theta, gp, k, 1, N))
        value = thmC_value(gp, gm, k, cfg.genus)
        okC += f.johnson_depth() >= 2 * k - 1 and tau(f, 2 * k - 1) == value
        intC += value.is_integral()
        nonzero += not value.is_zero()
    return [
        CheckResult("tau of twist = (eps/2) glue({gamma}_k, {gamma}_k)", okB == n, f"{okB}/{n}"),
        CheckResult("integrality of the even values", intB == n, f"{intB}/{n}"),
        CheckResult("tau of twist pair = glue({gamma+}_k, {delta}_k+1)", okC == m, f"{okC}/{m} ({nonzero} nonzero)"),
        CheckResult("integrality of the odd values", intC == m, f"{intC}/{m}"),
    ]


def random_automorphism(rng: random.Random, genus: int, k: int, N: int) -> TruncatedAutomorphism:
    """exp of a random derivation with Lie images in degrees k+1..N."""
    images = {}
    for l in range(2 * genus):
        s = TensorSeries.zero(genus, N)
        for d in range(k + 1, N + 1):
            s = s + random_lie(rng, genus, d, 1).to_series(N)
        images[l] = s
    return exp_derivation(Derivation(images, genus, N))


def check_invariance(cfg: SuiteConfig) -> List[CheckResult]:
    k = cfg.k
    N = cfg.N or 2 * k + 1
    g = cfg.genus
    theta = symplectic_expansion(g, N)
    rng = random.Random(cfg.seed + 5)
    # class-(k+2) perturbations
    n = cfg.n(20)
    gammas = gamma_suite(cfg, max(1, n // 4))
    ok = 0
    for i in range(n):
        gamma = gammas[i % len(gammas)]
        c = random_deep(rng, g, k + 2)
        ok += gdt(theta, gamma, k, 1, N).equal_mod(gdt(theta, gamma * c, k, 1, N), 2 * k)
    out = [CheckResult(f"class-{k + 2} invariance", ok == n, f"{ok}/{n} perturbations leave the twist unchanged mod degree {2 * k + 1}")]
    # commutation modulo degree 2k+1
    m = cfg.n(10)
    ok = 0
    for i in range(m):
        if i % 2 == 0:
            f = gdt(theta, gammas[i % len(gammas)], k, 1, 2 * k)
            h = gdt(theta, random_gamma(rng, g, k), k, rng.choice((1, -1)), 2 * k)
        else:
            f = random_automorphism(rng, g, k, 2 * k)
            h = random_automorphism(rng, g, k, 2 * k)
        ok += f.compose(h) == h.compose(f)
    out.append(CheckResult("commutation at N=2k", ok == m, f"{ok}/{m} pairs trivial on degrees <= {k} commute"))
    # independence of tau from the symplectic expansion
    theta2 = symplectic_expansion(g, N, variant=1)
    distinct = theta2 != theta
    ok = 0
    pairs = twist_pairs(cfg, max(1, n // 4))
    for gamma in gammas:
        eps = rng.choice((1, -1))
        ok += tau(gdt(theta, gamma, k, eps, N), 2 * k - 2) == tau(gdt(theta2, gamma, k, eps, N), 2 * k - 2)
    for gp, gm in pairs:
        f1 = gdt(theta, gm, k, -1, N).compose(gdt(theta, gp, k, 1, N))
        f2 = gdt(theta2, gm, k, -1, N).compose(gdt(theta2, gp, k, 1, N))
        ok += tau(f1, 2 * k - 1) == tau(f2, 2 * k - 1)
    total = len(gammas) + len(pairs)
    out.append(CheckResult("tau independent of the symplectic expansion", distinct and ok == total,
                           f"{ok}/{total} agree under two distinct expansions"))
    return out


def check_ranks(cfg: SuiteConfig) -> List[CheckResult]:
    max_d = cfg.extra.get("max_degree", 8)
    bad = []
    for g in (1, 2, 3):
        for d in range(1, max_d + 1):
            words = lyndon_words(d, 2 * g)
            if len(words) != witt_number(d, 2 * g):
                bad.append((g, d))
    # linear independence through the triangular leading monomial (small sizes)
    tri = all(min(lyndon_poly(w)) == w and lyndon_poly(w)[w] == 1
              for g in (1, 2) for d in range(1, 6) for w in lyndon_words(d, 2 * g))
    out = [CheckResult("Lyndon basis sizes are Witt numbers", not bad and tri,
                       f"d <= {max_d}, g <= 3; triangular leading terms checked for d <= 5, g <= 2")]
    rows = []
    ok = True
    for g in (1, 2):
        for j in range(1, cfg.extra.get("max_j", 4) + 1):
            r, e = h_rank(j, g), h_dimension(j, g)
            ok &= r == e
            rows.append(f"g={g} j={j}: {r}/{e}")
    out.append(CheckResult("glued generators span the symplectic derivations", ok, "; ".join(rows)))
    return out


def check_pairing(cfg: SuiteConfig) -> List[CheckResult]:
    """Filtration properties of kappa~ and the Phi-refinement, through expansions."""
    from .pairing import diamond_app
    rng = random.Random(cfg.seed + 6)
    k = cfg.k
    g = cfg.genus
    n = cfg.n(10)
    theta = standard_expansion(g, 2 * k + 1)
    ok_ux = ok_phi = 0
    for _ in range(n):
        x = random_word(rng, g, 1, 3)
        u = random_gamma(rng, g, k)
        lhs = diamond_app(BiElement.unit() - BiElement.pure(x, x.inv()), AlgElement.minus_one(u))
        rhs = AlgElement.minus_one(word_comm(u, x))
        ok_ux += expand_alg(theta, lhs).equal_mod(expand_alg(theta, rhs), 2 * k)
        q = rng.randint(1, k)
        T, leaves = random_tree_commutator(rng, g, q, leaf_len=2)
        gamma = comm_of_tree(T, leaves)
        delta = random_gamma(rng, g, k)
        left = diamond_app(kappa_tilde(gamma, x), AlgElement.minus_one(delta))
        right = AlgElement()
        for j, gj in enumerate(leaves, start=1):
            right = right + diamond_app(kappa_tilde(gj, x), AlgElement.minus_one(phi(T, leaves, delta, j)))
        ok_phi += expand_alg(theta, left).equal_mod(expand_alg(theta, right), 2 * k)
    # x, y of class k+1 behave additively modulo degree 2k+2
    theta2 = standard_expansion(g, 2 * k + 1)
    ok_pc = 0
    for _ in range(n):
        x, y = random_gamma(rng, g, k + 1), random_gamma(rng, g, k + 1)
        m1 = AlgElement.minus_one
        e = lambda u: expand_alg(theta2, u)
        ok_pc += (e(m1(x) + m1(y)) == e(m1(x * y))
                  and e(m1(x.inv()) + m1(x)).is_zero()
                  and e(m1(x * y)) == e(m1(y * x)))
    # sigma(|u|) lowers the augmentation filtration by at most 2
    ok_sf = 0
    for _ in range(n):
        m, p = rng.randint(1, 3), rng.randint(1, 3)
        u = AlgElement.word(GroupWord())
        for _ in range(m):
            u = u * AlgElement.minus_one(random_word(rng, g, 1, 2))
        v = AlgElement.word(GroupWord())
        for _ in range(p):
            v = v * AlgElement.minus_one(random_word(rng, g, 1, 2))
        low = max(m + p - 3, 0)
        s = expand_alg(standard_expansion(g, max(low, 1)), sigma_app(u, v))
        ok_sf += m + p - 2 <= 0 or s.truncate(low).is_zero()
    return [
        CheckResult("(1 - x (x) x^-1) <> (u - 1) = [u, x] - 1", ok_ux == n, f"{ok_ux}/{n} mod degree {2 * k + 1}"),
        CheckResult("x, y of class k+1: xy - 1 = (x - 1) + (y - 1) = yx - 1", ok_pc == n, f"{ok_pc}/{n} mod degree {2 * k + 2}"),
        CheckResult("sigma(|u|)(v) has degree >= m + n - 2", ok_sf == n, f"{ok_sf}/{n}"),
        CheckResult("kappa~(T(g), x) <> (delta - 1) refines along Phi", ok_phi == n, f"{ok_phi}/{n} mod degree {2 * k + 1}"),
    ]


SUITES: Dict[str, Callable[[SuiteConfig], List[CheckResult]]] = {
    "phi": check_phi_golden,
    "pruning": check_pruning,
    "lemma2.2": check_kappa_rules,
    "zeta": check_zeta,
    "symplectic": check_symplectic,
    "crossroute": check_crossroute,
    "trees": check_trees,
    "values": check_leading_values,
    "invariance": check_invariance,
    "ranks": check_ranks,
    "pairing": check_pairing,
}


def run_suite(name: str, cfg: SuiteConfig) -> List[CheckResult]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](cfg)

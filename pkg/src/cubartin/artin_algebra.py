"""Word problem and identity checks for dihedral and rank-3 spherical
Artin groups.

Dihedral contexts cover A_n = <a, b | aba... = bab...> (n letters per side)
with the index-2 subgroup A'_n generated by r = ab, s = a b^-1, t = a^-1 b
(and q = ba = s^-1 r t^-1).  Spherical contexts cover the three-generator
groups with labels (m_ab, m_bc, m_ac) = (3, 2, m), m in {3, 4, 5}, whose
Coxeter groups are finite of order 24 / 48 / 120.

Equality is decided by Garside normal forms; an independent bounded BFS
over length-preserving positive rewritings serves as the oracle.  Lemma
instances about centers and subgroup intersections are checked at explicit
bounds and reported as bounded verification, never as proofs.
"""

from __future__ import annotations

from itertools import product

from .coxeter import dihedral_table, triangle_table
from .garside import GarsideContext, GarsideElement
from .snf import (  # noqa: F401  (re-exported: abelianization backbone)
    abelian_invariants,
    in_row_span,
    smith_normal_form,
)
from .cube_model import Presentation
from .words import (
    Word,
    concat,
    exp_sum,
    free_reduce,
    invert,
    parse_word,
    power,
    substitute,
    word_str,
)


def alternating_word(x: str, y: str, n: int) -> Word:
    return tuple(((x, y)[i % 2], 1) for i in range(n))


def artin_relation(u: str, v: str, m: int) -> tuple[Word, Word]:
    return alternating_word(u, v, m), alternating_word(v, u, m)


class DihedralContext:
    """A_n with its Garside structure and the A'_n letters."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("dihedral index must be >= 2")
        self.n = n
        self.gens = ("a", "b")
        self.table = dihedral_table(n)
        self.garside = GarsideContext(self.table)
        self.delta_word = alternating_word("a", "b", n)
        self.z_word = power(self.delta_word, 2) if n % 2 else self.delta_word
        self.relations = [artin_relation("a", "b", n)]

    def nf(self, w: Word) -> GarsideElement:
        return self.garside.word_nf(w)

    def equal(self, w1: Word, w2: Word) -> bool:
        return self.nf(w1) == self.nf(w2)


class SphericalContext:
    """Three-generator spherical Artin group, labels (3, 2, m)."""

    def __init__(self, m: int):
        if m not in (3, 4, 5):
            raise ValueError("m must be one of 3, 4, 5")
        self.m = m
        self.gens = ("a", "b", "c")
        self.table = triangle_table(m)
        self.garside = GarsideContext(self.table)
        self.delta_word = tuple((g, 1) for g in self.table.words[self.table.w0])
        self.z_word = (
            power(self.delta_word, 2) if m == 3 else self.delta_word
        )
        self.relations = [
            artin_relation("a", "b", 3),
            artin_relation("b", "c", 2),
            artin_relation("a", "c", m),
        ]

    @property
    def coxeter_order(self) -> int:
        return self.table.size

    def nf(self, w: Word) -> GarsideElement:
        return self.garside.word_nf(w)

    def equal(self, w1: Word, w2: Word) -> bool:
        return self.nf(w1) == self.nf(w2)


def coxeter_enumerate(labels) -> SphericalContext:
    """Context from the label triple (m_ab, m_bc, m_ac) = (3, 2, m)."""
    if tuple(labels[:2]) != (3, 2):
        raise ValueError("labels must be (3, 2, m)")
    return SphericalContext(labels[2])


def garside_nf(ctx, w: Word) -> GarsideElement:
    return ctx.garside.word_nf(w)


def dihedral_equal(ctx: DihedralContext, w1: Word, w2: Word) -> bool:
    return ctx.equal(w1, w2)


# -- the index-2 subgroup A'_n ----------------------------------------------

APRIME_GENS = ("r", "s", "t")

_EXPAND = {
    "r": parse_word("ab"),
    "s": parse_word("aB"),
    "t": parse_word("Ab"),
    "q": parse_word("ba"),
}

# every ordered pair of +/- letters in a, b as a word in r, s, t
_PAIR_TABLE: dict[tuple, Word] = {}


def _pw(text: str) -> Word:
    out = []
    for ch in text:
        out.append((ch.lower(), 1 if ch.islower() else -1))
    return tuple(out)


for _pair, _val in {
    ("a+", "a+"): "rT",
    ("a+", "b+"): "r",
    ("a+", "b-"): "s",
    ("a+", "a-"): "",
    ("a-", "a+"): "",
    ("a-", "a-"): "tR",
    ("a-", "b+"): "t",
    ("a-", "b-"): "tRs",
    ("b+", "a+"): "SrT",
    ("b+", "b+"): "Sr",
    ("b+", "a-"): "S",
    ("b+", "b-"): "",
    ("b-", "a+"): "T",
    ("b-", "b-"): "Rs",
    ("b-", "a-"): "R",
    ("b-", "b+"): "",
}.items():
    _k = tuple((p[0], 1 if p[1] == "+" else -1) for p in _pair)
    _PAIR_TABLE[_k] = _pw(_val)


def even_rewrite(ctx: DihedralContext, w: Word) -> Word:
    """Rewrite an even-length word in a, b as a word in r, s, t."""
    if len(w) % 2:
        raise ValueError("word has odd length")
    out: Word = ()
    for i in range(0, len(w), 2):
        out = concat(out, _PAIR_TABLE[(w[i], w[i + 1])])
    return free_reduce(out)


def expand_prime(w: Word) -> Word:
    """Expand a word in r, s, t, q back to a, b."""
    return substitute(w, _EXPAND)


def delta_conjugation(ctx: DihedralContext, w: Word) -> Word:
    """Conjugation by Delta on A'_n letters: for odd n it swaps r and q and
    inverts s and t; for even n Delta is central, so it is the identity."""
    if ctx.n % 2 == 0:
        return w
    mapping = {"r": "q", "q": "r", "s": "s", "t": "t"}
    out = []
    for g, e in w:
        if g not in mapping:
            raise ValueError(f"letter {g!r} is not an A'_n generator")
        if g in ("s", "t"):
            out.append((g, -e))
        else:
            out.append((mapping[g], e))
    return tuple(out)


def build_phi(n: int) -> Word:
    """phi(s, t, r) = s^-1 * prod_{i=(n-3)/2 .. 0} r^-i t^-1 r^i."""
    if n % 2 == 0 or n < 3:
        raise ValueError("phi is defined for odd n >= 3")
    w: Word = (("s", -1),)
    for i in range((n - 3) // 2, -1, -1):
        w = concat(w, power((("r", 1),), -i), (("t", -1),), power((("r", 1),), i))
    return free_reduce(w)


def psi_word(n: int) -> Word:
    """psi = phi(s, t, r) * phi(s^-1, t^-1, q), with q = s^-1 r t^-1."""
    phi = build_phi(n)
    bar = substitute(
        phi, {"s": (("s", -1),), "t": (("t", -1),), "r": (("q", 1),)}
    )
    return free_reduce(concat(phi, bar))


def subgroup_presentation(p: Presentation, sign: dict) -> Presentation:
    """Reidemeister-Schreier for the kernel of a map onto Z/2.

    Schreier transversal {1, x0} with x0 the first generator of sign 1;
    Schreier generators are named g_0 (coset 1) and g_1 (coset x0), minus
    the trivial one x0_0.
    """
    if not any(sign.get(g, 0) % 2 for g in p.generators):
        raise ValueError("sign map is trivial")
    x0 = next(g for g in p.generators if sign.get(g, 0) % 2)

    def name(coset: int, g: str) -> str | None:
        if coset == 0 and g == x0:
            return None  # x0 * rep(x0)^-1 is trivial
        return f"{g}_{coset}"

    gens = []
    for g in p.generators:
        for coset in (0, 1):
            nm = name(coset, g)
            if nm is not None:
                gens.append(nm)

    def rewrite(rel: Word, coset: int) -> Word:
        out = []
        for g, e in rel:
            sg = sign.get(g, 0) % 2
            if e == 1:
                nm = name(coset, g)
                if nm is not None:
                    out.append((nm, 1))
                coset ^= sg
            else:
                coset ^= sg
                nm = name(coset, g)
                if nm is not None:
                    out.append((nm, -1))
        return free_reduce(tuple(out))

    relators = []
    for rel in p.relators:
        for coset in (0, 1):
            w = rewrite(rel, coset)
            if w:
                relators.append(w)
    return Presentation(tuple(gens), tuple(relators))


def aprime_presentation(n: int) -> Presentation:
    """Presentation of A'_n on exactly {r, s, t}: rewrite the Artin relator
    and its a-conjugate through the even-word table."""
    ctx = DihedralContext(n)
    l, r = artin_relation("a", "b", n)
    relator = free_reduce(concat(l, invert(r)))
    conj = free_reduce(concat(parse_word("a"), relator, parse_word("A")))
    return Presentation(
        APRIME_GENS,
        (even_rewrite(ctx, relator), even_rewrite(ctx, conj)),
    )


def commutator_membership(p: Presentation, w: Word) -> bool:
    """Whether w lies in the commutator subgroup: trivial image in the
    abelianization, i.e. its exponent vector is in the relator row lattice."""
    index = {g: i for i, g in enumerate(p.generators)}
    vec = [0] * len(p.generators)
    for g, e in w:
        if g not in index:
            raise ValueError(f"unknown generator {g!r}")
        vec[index[g]] += e
    return in_row_span(p.exponent_matrix(), vec)


# -- positive-word oracle ----------------------------------------------------

def positive_equal(ctx, w1: Word, w2: Word) -> bool:
    """Equality of positive words by BFS closure under the defining relations
    (homogeneous, so length-preserving and terminating)."""
    for w in (w1, w2):
        if any(e != 1 for _, e in w):
            raise ValueError("positive_equal needs positive words")
    if len(w1) != len(w2):
        return False
    s1 = tuple(g for g, _ in w1)
    s2 = tuple(g for g, _ in w2)
    return s2 in positive_class(ctx, s1)


def positive_class(ctx, letters: tuple) -> set:
    subs = []
    for l, r in ctx.relations:
        ls = tuple(g for g, _ in l)
        rs = tuple(g for g, _ in r)
        subs.append((ls, rs))
        subs.append((rs, ls))
    seen = {letters}
    queue = [letters]
    while queue:
        cur = queue.pop()
        for src, dst in subs:
            k = len(src)
            for i in range(len(cur) - k + 1):
                if cur[i : i + k] == src:
                    nxt = cur[:i] + dst + cur[i + k :]
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
    return seen


# -- lemma instance checks -----------------------------------------------------

def center_check(ctx) -> dict:
    """Verify centrality of the designated center generator against every
    Artin generator, and non-centrality of Delta where expected."""
    z = ctx.z_word
    delta = ctx.delta_word
    per_gen = {}
    for g in ctx.gens:
        gw = ((g, 1),)
        per_gen[g] = ctx.equal(concat(z, gw), concat(gw, z))
    delta_central = all(
        ctx.equal(concat(delta, ((g, 1),)), concat(((g, 1),), delta))
        for g in ctx.gens
    )
    z_is_delta = ctx.z_word == ctx.delta_word
    return {
        "center_generator": "Delta" if z_is_delta else "Delta^2",
        "central": all(per_gen.values()),
        "per_generator": per_gen,
        "delta_central": delta_central,
    }


def _bounded_words(gens, max_len):
    letters = [(g, e) for g in gens for e in (1, -1)]
    for length in range(1, max_len + 1):
        for combo in product(letters, repeat=length):
            w = free_reduce(combo)
            if len(w) == length:
                yield w


def bounded_lemma_checks(ctx: SphericalContext, L: int = 6, K: int = 2, M: int = 2) -> dict:
    """Bounded verification of the intersection lemma instances.

    (ii): no nonempty reduced word over {a, b} (or {b, c}) of length <= L
    equals z^k for 0 < |k| <= K.
    (iii): no c^j (0 < |j| <= M) equals g z^k with g over {a, b} of length
    <= L and |k| <= K.
    Results are bounded verification at (L, K, M), not proofs.
    """
    g = ctx.garside
    z_nfs = {}
    for k in range(-K, K + 1):
        if k:
            z_nfs[k] = g.word_nf(power(ctx.z_word, k))
    violations = []
    for pair in (("a", "b"), ("b", "c")):
        for w in _bounded_words(pair, L):
            nf = g.word_nf(w)
            for k, znf in z_nfs.items():
                if nf == znf:
                    violations.append(("ii", pair, word_str(w), k))
    ab_nfs = [(g.identity, "")]
    ab_nfs += [(g.word_nf(w), word_str(w)) for w in _bounded_words(("a", "b"), L)]
    for j in range(-M, M + 1):
        if not j:
            continue
        cj = g.word_nf(power((("c", 1),), j))
        for k in range(-K, K + 1):
            zk = g.word_nf(power(ctx.z_word, k))
            for nf, text in ab_nfs:
                if g.mul(nf, zk) == cj:
                    violations.append(("iii", text, k, j))
    return {
        "label": "bounded verification",
        "bounds": {"L": L, "K": K, "M": M},
        "ii_verified": not any(v[0] == "ii" for v in violations),
        "iii_verified": not any(v[0] == "iii" for v in violations),
        "violations": violations,
    }

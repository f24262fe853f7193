"""Reduced-word arithmetic in free products of strongly regular factors.

The free product is infinite, so it lives here intensionally: words
carry (factor, element) letters, multiplication resolves same-factor
boundaries through the factor's hyperoperation with recursive
cancellation of mutually inverse letters, and the global statements are
exercised on bounded-length enumerations and seeded samples.

No word ever carries an identity letter: identities can only appear in
a boundary product a*b when b is the unique inverse of a, and there
they are exactly the cancelled continuation.  That uniqueness is
asserted on every multiplication rather than assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from hyperkernel import errors
from hyperkernel.core import (
    HyperTable,
    bits,
    from_group,
    hyperproduct,
    identities,
    inverse_candidates,
    is_polygroup,
    is_strongly_regular_hg,
)
from hyperkernel.groups import (
    DirectSumElement,
    DirectSumFamily,
    GroupTable,
)
from hyperkernel.relations import Partition, beta, quotient_by

DEFAULT_WORD_BUDGET = 1_000_000


@dataclass(frozen=True, order=True)
class Letter:
    factor: int
    elem: int


@dataclass(frozen=True)
class ReducedWord:
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def sort_key(self) -> tuple:
        return (
            len(self.letters),
            tuple(l.factor for l in self.letters),
            tuple(l.elem for l in self.letters),
        )

    def __repr__(self) -> str:
        if not self.letters:
            return "ReducedWord(1)"
        body = " ".join(f"{l.elem}@{l.factor}" for l in self.letters)
        return f"ReducedWord({body})"


EMPTY_WORD = ReducedWord()


class WordSet:
    """Canonical finite set of reduced words (ordered by length, letters)."""

    __slots__ = ("words", "_set")

    def __init__(self, words: Iterable[ReducedWord]):
        uniq = set(words)
        self.words = tuple(sorted(uniq, key=ReducedWord.sort_key))
        self._set = uniq

    def __contains__(self, w: ReducedWord) -> bool:
        return w in self._set

    def __iter__(self):
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WordSet) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def __repr__(self) -> str:
        return f"WordSet({list(self.words)!r})"


class FactorRegistry:
    """Validated family of strongly regular factors with cached structure.

    Letters are tagged with their factor index, which keeps the factors
    disjoint regardless of their labels.  Each factor contributes its
    identity, its unique-inverse map, its fundamental partition and
    kernel, and the fundamental group used by the projection maps.
    """

    def __init__(self, factors: Sequence[HyperTable]):
        self.factors = tuple(factors)
        if not self.factors:
            raise errors.ShapeMismatch("registry needs at least one factor")
        idents = []
        inverses = []
        betas: list[Partition] = []
        fundamental: list[GroupTable] = []
        for i, H in enumerate(self.factors):
            if not is_strongly_regular_hg(H):
                raise errors.NotStronglyRegular(
                    f"factor {i} is not a strongly regular hypergroup"
                )
            e = identities(H).indices()
            if len(e) != 1:
                raise errors.NotStronglyRegular(f"factor {i} identity is not unique")
            idents.append(e[0])
            inv = []
            for x in range(H.n):
                c = inverse_candidates(H, x)[2].indices()
                if len(c) != 1:
                    raise errors.NotStronglyRegular(
                        f"factor {i} element {x} lacks a unique inverse"
                    )
                inv.append(c[0])
            inverses.append(tuple(inv))
            b = beta(H)
            betas.append(b)
            q = quotient_by(H, b)
            if not q.is_group:
                raise errors.NotStronglyRegular(f"factor {i} has no fundamental group")
            fundamental.append(q.group)
        self.identities = tuple(idents)
        self.inverses = tuple(inverses)
        self.betas = tuple(betas)
        self.kernels = tuple(
            betas[i].classes[fundamental[i].identity] for i in range(len(self.factors))
        )
        self.fundamental_groups = tuple(fundamental)
        self._fundamental_registry: "FactorRegistry | None" = None
        self._direct_sum_family: DirectSumFamily | None = None

    def letter(self, factor: int, elem: int) -> Letter:
        H = self.factors[factor]
        if not 0 <= elem < H.n:
            raise errors.UnknownLabel(f"element {elem} outside factor {factor}")
        return Letter(factor, elem)

    def inverse_letter(self, l: Letter) -> Letter:
        return Letter(l.factor, self.inverses[l.factor][l.elem])

    def fundamental_registry(self) -> "FactorRegistry":
        """Registry of the fundamental groups, lifted back to tables."""
        if self._fundamental_registry is None:
            lifts = [
                from_group(G.rows, names=G.names, name=None)
                for G in self.fundamental_groups
            ]
            self._fundamental_registry = FactorRegistry(lifts)
        return self._fundamental_registry

    def direct_sum_family(self) -> DirectSumFamily:
        if self._direct_sum_family is None:
            self._direct_sum_family = DirectSumFamily(self.fundamental_groups)
        return self._direct_sum_family


def make_word(registry: FactorRegistry, letters: Iterable[Letter]) -> ReducedWord:
    """Validate the reduced-word conditions; no silent auto-reduction."""
    letters = tuple(letters)
    prev = -1
    for l in letters:
        if not 0 <= l.factor < len(registry.factors):
            raise errors.ShapeMismatch(f"no factor {l.factor} in registry")
        if not 0 <= l.elem < registry.factors[l.factor].n:
            raise errors.UnknownLabel(f"element {l.elem} outside factor {l.factor}")
        if l.elem == registry.identities[l.factor]:
            raise errors.IdentityLetter(f"letter {l.elem}@{l.factor} is an identity")
        if l.factor == prev:
            raise errors.AdjacentSameFactor(
                f"adjacent letters from factor {l.factor}"
            )
        prev = l.factor
    return ReducedWord(letters)


def inverse_word(registry: FactorRegistry, w: ReducedWord) -> ReducedWord:
    """Reversed word with each letter replaced by its unique inverse."""
    return ReducedWord(
        tuple(registry.inverse_letter(l) for l in reversed(w.letters))
    )


def multiply(registry: FactorRegistry, w1: ReducedWord, w2: ReducedWord) -> WordSet:
    """Boundary-rule product of two reduced words.

    Different boundary factors concatenate.  Equal boundary factors
    multiply through the factor: the non-identity members of the
    boundary product each yield a word, and when the boundary letters
    are mutually inverse the product additionally cancels them and
    recurses (cascades included).  Folding the boundary product into the
    cancelling case is the associative completion of the plain
    cancel-only rule, which loses associativity whenever some factor has
    a product x*y containing x with y not the identity.
    """
    results: set[ReducedWord] = set()
    stack = [(w1.letters, w2.letters)]
    while stack:
        left, right = stack.pop()
        if not left:
            results.add(ReducedWord(right))
            continue
        if not right:
            results.add(ReducedWord(left))
            continue
        a = left[-1]
        b = right[0]
        if a.factor != b.factor:
            results.add(ReducedWord(left + right))
            continue
        ident = registry.identities[a.factor]
        cell = registry.factors[a.factor].rows[a.elem][b.elem]
        cancelling = b.elem == registry.inverses[a.factor][a.elem]
        if cancelling:
            stack.append((left[:-1], right[1:]))
        for t in bits(cell):
            if t == ident:
                if cancelling:
                    continue
                raise errors.NotStronglyRegular(
                    f"identity appeared in a non-cancelling product in factor {a.factor}"
                )
            results.add(ReducedWord(left[:-1] + (Letter(a.factor, t),) + right[1:]))
    return WordSet(results)


def multiply_sets(registry: FactorRegistry, A: Iterable[ReducedWord],
                  B: Iterable[ReducedWord]) -> WordSet:
    out: set[ReducedWord] = set()
    bs = list(B)
    for wa in A:
        for wb in bs:
            out.update(multiply(registry, wa, wb))
    return WordSet(out)


def word_product(registry: FactorRegistry, words: Sequence[ReducedWord]) -> WordSet:
    acc = WordSet([EMPTY_WORD])
    for w in words:
        acc = multiply_sets(registry, acc, [w])
    return acc


def support(w: ReducedWord) -> frozenset[Letter]:
    return frozenset(w.letters)


def embed(registry: FactorRegistry, factor: int, elem: int) -> ReducedWord:
    """One-letter image of a factor element; identities map to the empty word."""
    l = registry.letter(factor, elem)
    if elem == registry.identities[factor]:
        return EMPTY_WORD
    return ReducedWord((l,))


def phi(registry: FactorRegistry, w: ReducedWord) -> ReducedWord:
    """Letterwise projection into the free product of fundamental groups.

    Each letter maps to its fundamental class; kernel letters vanish and
    adjacent same-factor classes multiply out, so the image is a single
    reduced word over the fundamental-group registry.
    """
    target = registry.fundamental_registry()
    acc = EMPTY_WORD
    for l in w.letters:
        cls = registry.betas[l.factor].class_of[l.elem]
        piece = embed(target, l.factor, cls)
        prods = multiply(target, acc, piece)
        assert len(prods) == 1, "group-factor products must be single valued"
        acc = prods.words[0]
    return acc


def psi(family: DirectSumFamily, w: ReducedWord) -> DirectSumElement:
    """Sum of the abelianized letter images, componentwise."""
    from hyperkernel.groups import direct_sum_add

    acc = family.zero()
    for l in w.letters:
        if not 0 <= l.factor < len(family.groups):
            raise errors.FamilyMismatch(f"word letter references factor {l.factor}")
        if not 0 <= l.elem < family.groups[l.factor].n:
            raise errors.FamilyMismatch(
                f"letter {l.elem} outside group factor {l.factor}"
            )
        acc = direct_sum_add(family, acc, family.inject(l.factor, l.elem))
    return acc


def psi_image(registry: FactorRegistry, w: ReducedWord) -> DirectSumElement:
    """Composite projection: fundamental classes first, then the sum."""
    return psi(registry.direct_sum_family(), phi(registry, w))


def enumerate_words(
    registry: FactorRegistry, max_len: int, budget: int = DEFAULT_WORD_BUDGET
) -> list[ReducedWord]:
    """All reduced words of length <= max_len in canonical order."""
    nonident = [
        [x for x in range(H.n) if x != registry.identities[i]]
        for i, H in enumerate(registry.factors)
    ]
    out = [EMPTY_WORD]
    layer = [EMPTY_WORD]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            last = w.letters[-1].factor if w.letters else -1
            for i in range(len(registry.factors)):
                if i == last:
                    continue
                for x in nonident[i]:
                    nxt.append(ReducedWord(w.letters + (Letter(i, x),)))
                    if len(out) + len(nxt) > budget:
                        raise errors.BudgetExceeded(
                            f"more than {budget} words below length {max_len}"
                        )
        out.extend(nxt)
        layer = nxt
    return out


def word_inverse_unique(
    registry: FactorRegistry,
    w: ReducedWord,
    max_len: int,
    budget: int = DEFAULT_WORD_BUDGET,
    pool: Sequence[ReducedWord] | None = None,
) -> bool:
    """Exactly one enumerated word is a two-sided inverse, the expected one.

    A candidate can only multiply to the empty word through the
    cancellation case, so candidates whose first letter is not the
    inverse of w's last letter are skipped without multiplying.
    """
    if pool is None:
        pool = enumerate_words(registry, max_len, budget)
    expected = inverse_word(registry, w)
    hits = []
    if w.is_empty():
        needed = None
    else:
        needed = registry.inverse_letter(w.letters[-1])
    for v in pool:
        if needed is not None and (v.is_empty() or v.letters[0] != needed):
            continue
        if needed is None and not v.is_empty():
            continue
        if EMPTY_WORD in multiply(registry, w, v) and EMPTY_WORD in multiply(
            registry, v, w
        ):
            hits.append(v)
    return hits == [expected]


def _letterwise_images(
    words: Iterable[ReducedWord],
    target: FactorRegistry,
    class_maps: Sequence[Sequence[int]],
) -> dict[ReducedWord, WordSet]:
    """Image word sets under the per-letter class projection."""
    out = {}
    for w in words:
        acc: Iterable[ReducedWord] = [EMPTY_WORD]
        for l in w.letters:
            piece = embed(target, l.factor, class_maps[l.factor][l.elem])
            acc = multiply_sets(target, acc, [piece])
        out[w] = acc if isinstance(acc, WordSet) else WordSet(acc)
    return out


def _counts_by_length(words: Iterable[ReducedWord], max_len: int) -> list[int]:
    counts = [0] * (max_len + 1)
    for w in words:
        if len(w) <= max_len:
            counts[len(w)] += 1
    return counts


@dataclass(frozen=True)
class QuotientConjectureReport:
    """Bounded-length evidence on the claimed quotient formulas.

    Nothing here is asserted; each block pairs counts computed on the
    two sides of one claimed identity so a reader can compare them.
    """

    max_len: int
    free_product_of_quotients: dict
    fundamental_formula: dict
    commutative_formula: dict


def quotient_conjecture_report(
    factors: Sequence[HyperTable],
    subs: Sequence,
    max_len: int = 2,
) -> QuotientConjectureReport:
    from hyperkernel.quotients import quotient_hypergroup
    from hyperkernel.relations import congruence_mod, gamma, kernel_S

    if len(factors) != len(subs):
        raise errors.ShapeMismatch("one subhypergroup per factor required")
    base = FactorRegistry(factors)
    quots = [quotient_hypergroup(H, K) for H, K in zip(factors, subs)]
    qreg = FactorRegistry(quots)
    base_words = enumerate_words(base, max_len)
    q_words = enumerate_words(qreg, max_len)
    coset_maps = [
        congruence_mod(H, K).class_of for H, K in zip(factors, subs)
    ]

    # Words over the quotient factors vs coset images of base words.
    images = _letterwise_images(base_words, qreg, coset_maps)
    covered: set[ReducedWord] = set()
    kernel_images = 0
    for ws in images.values():
        covered.update(ws)
        if EMPTY_WORD in ws:
            kernel_images += 1
    sub_letter_counts = [
        sum(1 for x in K if x != base.identities[i]) for i, K in enumerate(subs)
    ]
    sub_words = 1
    layer = {(-1,): 1}
    for _ in range(max_len):
        nxt: dict[tuple, int] = {}
        for (last,), cnt in layer.items():
            for i, k in enumerate(sub_letter_counts):
                if i == last or k == 0:
                    continue
                nxt[(i,)] = nxt.get((i,), 0) + cnt * k
        sub_words += sum(nxt.values())
        layer = nxt
    formula_product = {
        "quotient_word_counts": _counts_by_length(q_words, max_len),
        "covered_image_counts": _counts_by_length(covered, max_len),
        "all_quotient_words_covered": set(q_words) <= covered,
        "base_words_with_identity_image": kernel_images,
        "sub_product_words": sub_words,
    }

    # Fundamental side: factors H_i/(S_i K_i) against the fundamental
    # groups of the quotient factors, then word counts of both targets.
    lifted = [
        hyperproduct(H, base.kernels[i], K)
        for i, (H, K) in enumerate(zip(factors, subs))
    ]
    fund_targets = [
        quotient_hypergroup(H, L) for H, L in zip(factors, lifted)
    ]
    treg = FactorRegistry(fund_targets)
    from hyperkernel.groups import isomorphic

    per_factor_iso = all(
        isomorphic(qreg.fundamental_groups[i], treg.fundamental_groups[i])[0]
        for i in range(len(factors))
    )
    fund_maps = [
        congruence_mod(H, L).class_of for H, L in zip(factors, lifted)
    ]
    fund_images = _letterwise_images(base_words, treg, fund_maps)
    distinct_fund = {ws.words[0] for ws in fund_images.values()}
    t_words = enumerate_words(treg, max_len)
    formula_fund = {
        "per_factor_quotients_isomorphic": per_factor_iso,
        "target_word_counts": _counts_by_length(t_words, max_len),
        "image_word_counts": _counts_by_length(distinct_fund, max_len),
        "images_cover_targets": set(t_words) <= distinct_fund,
    }

    # Commutative side: distinct summed images of quotient words against
    # reduced words over the factors H_i/(S_gamma_i K_i).
    gamma_lifts = [
        hyperproduct(H, kernel_S(H, gamma(H)), K)
        for H, K in zip(factors, subs)
    ]
    gamma_targets = [
        quotient_hypergroup(H, L) for H, L in zip(factors, gamma_lifts)
    ]
    greg = FactorRegistry(gamma_targets)
    sum_images = {psi_image(qreg, w).support for w in q_words}
    g_words = enumerate_words(greg, max_len)
    by_support = [0] * (max_len + 1)
    for s in sum_images:
        if len(s) <= max_len:
            by_support[len(s)] += 1
    formula_comm = {
        "summed_image_counts_by_support": by_support,
        "claimed_word_counts_by_length": _counts_by_length(g_words, max_len),
        "counts_agree": by_support == _counts_by_length(g_words, max_len),
    }

    return QuotientConjectureReport(
        max_len, formula_product, formula_fund, formula_comm
    )


@dataclass(frozen=True)
class ClosureReport:
    triples_checked: int
    failures: tuple[tuple[ReducedWord, ReducedWord, ReducedWord], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def polygroup_closure_check(
    registry: FactorRegistry,
    max_len: int,
    samples: int,
    seed: int = 0,
) -> ClosureReport:
    """Sampled reversibility: w1 in w2.w3 forces the two memberships back."""
    for i, H in enumerate(registry.factors):
        if not is_polygroup(H):
            raise errors.FactorsNotPolygroups(f"factor {i} is not a polygroup")
    rng = random.Random(seed)
    pool = enumerate_words(registry, max_len)
    failures = []
    checked = 0
    for _ in range(samples):
        w2 = pool[rng.randrange(len(pool))]
        w3 = pool[rng.randrange(len(pool))]
        prod = multiply(registry, w2, w3)
        w1 = prod.words[rng.randrange(len(prod.words))]
        back2 = multiply_sets(
            registry, [w1], [inverse_word(registry, w3)]
        )
        back3 = multiply_sets(
            registry, [inverse_word(registry, w2)], [w1]
        )
        checked += 1
        if w2 not in back2 or w3 not in back3:
            failures.append((w1, w2, w3))
    return ClosureReport(checked, tuple(failures))

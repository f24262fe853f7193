import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperkernel import corpus, errors
from hyperkernel.core import Partition, total_hypergroup
from hyperkernel.relations import (
    beta,
    congruence_mod,
    enumerate_strongly_regular,
    gamma,
    gamma_oracle,
    is_regular,
    is_strongly_regular,
    join,
    kernel_S,
    product_census,
    pullback,
    quotient_by,
)


def _classes(H, P):
    return sorted(sorted(H.names[i] for i in c) for c in P.classes)


class TestPartition:
    def test_canonical_class_ids_by_least_member(self):
        p = Partition(4, [7, 3, 7, 5])
        assert p.class_of == (0, 1, 0, 2)
        assert p.classes[0].indices() == (0, 2)

    def test_from_classes_requires_cover(self):
        with pytest.raises(errors.ShapeMismatch):
            Partition.from_classes(3, [[0, 1]])

    def test_refines(self):
        fine = Partition.discrete(4)
        coarse = Partition.single_class(4)
        assert fine.refines(coarse)
        assert not coarse.refines(fine)


class TestCensus:
    def test_h9_census_contents(self, h9):
        census = product_census(h9)
        assert h9.subset(["b", "c"]).mask in census.masks
        assert h9.subset(["e", "a", "b", "c"]).mask in census.masks

    def test_group_census_is_singletons(self):
        G = corpus.cyclic_group(3)
        assert sorted(product_census(G).masks) == [1, 2, 4]

    def test_total_census_single_set(self):
        T = total_hypergroup(4)
        assert product_census(T).masks == (T.full_mask,)

    def test_cap_raises(self, h9):
        with pytest.raises(errors.CapExceeded):
            product_census(h9, cap=3)


class TestBeta:
    def test_h9_beta_classes(self, h9):
        assert _classes(h9, beta(h9)) == [
            ["a", "b", "c", "e"],
            ["u", "z"],
            ["v"],
            ["x", "y"],
        ]

    def test_group_beta_discrete(self):
        G = corpus.symmetric_group_3()
        assert beta(G) == Partition.discrete(6)

    def test_total_beta_single(self):
        assert beta(total_hypergroup(5)) == Partition.single_class(5)

    def test_beta_on_bare_semihypergroup(self):
        # constant table: associative, fails reproduction, beta still works
        from hyperkernel.core import HyperTable, is_hypergroup, is_semihypergroup

        T = HyperTable(["0", "1"], [[1, 1], [1, 1]])
        assert is_semihypergroup(T)[0] and not is_hypergroup(T)
        assert beta(T) == Partition.discrete(2)


class TestGamma:
    def test_h9_gamma_equals_beta(self, h9):
        assert gamma(h9) == beta(h9)

    def test_s3_gamma_parity(self):
        G = corpus.symmetric_group_3()
        expected = Partition.from_classes(6, [[0, 1, 2], [3, 4, 5]])
        assert gamma(G) == expected

    def test_total_gamma_single(self):
        assert gamma(total_hypergroup(3)) == Partition.single_class(3)

    def test_oracle_matches_on_small_corpus(self):
        for name, H in corpus.small_corpus(5).items():
            assert gamma_oracle(H, nmax=4) == gamma(H), name

    def test_oracle_matches_s3_and_h9(self, h9):
        assert gamma_oracle(corpus.symmetric_group_3(), nmax=4) == gamma(
            corpus.symmetric_group_3()
        )
        assert gamma_oracle(h9, nmax=4) == gamma(h9)

    def test_oracle_budget(self, h9):
        with pytest.raises(errors.BudgetExceeded):
            gamma_oracle(h9, nmax=4, budget=100)

    def test_oracle_short_products_already_suffice_on_h9(self, h9):
        # every related block of h9 appears inside some length-2 product
        assert gamma_oracle(h9, nmax=2) == beta(h9)


class TestRegularityChecks:
    def test_beta_strongly_regular_everywhere(self, full_corpus):
        for H in full_corpus.values():
            assert is_strongly_regular(H, beta(H))

    def test_discrete_fails_on_proper_hypergroup(self, h9):
        assert not is_strongly_regular(h9, Partition.discrete(h9.n))

    def test_congruence_mod_regular(self, h9):
        sigma = congruence_mod(h9, h9.subset(["e", "a"]))
        assert is_regular(h9, sigma)

    def test_regular_not_strongly(self, h9):
        sigma = congruence_mod(h9, h9.subset(["e", "a"]))
        assert not is_strongly_regular(h9, sigma)


class TestQuotientBy:
    def test_h9_beta_quotient_is_v4(self, h9):
        q = quotient_by(h9, beta(h9))
        assert q.is_group
        from hyperkernel.groups import isomorphic

        assert isomorphic(q.group, corpus.v4_group_table())[0]

    def test_single_class_quotient_trivial(self, h9):
        q = quotient_by(h9, Partition.single_class(h9.n))
        assert q.is_group and q.group.n == 1

    def test_h9_coset_quotient_table(self, h9, h9q):
        sigma = congruence_mod(h9, h9.subset(["e", "a"]))
        q = quotient_by(h9, sigma)
        assert not q.is_group
        assert q.table.rows == h9q.rows

    def test_not_regular_raises_with_witness(self, h9):
        bad = Partition.from_classes(9, [[0, 4], [1], [2], [3], [5], [6], [7], [8]])
        with pytest.raises(errors.NotRegular):
            quotient_by(h9, bad)


class TestKernel:
    def test_h9_kernel(self, h9):
        assert kernel_S(h9, beta(h9)) == h9.subset(["e", "a", "b", "c"])
        assert kernel_S(h9, gamma(h9)) == h9.subset(["e", "a", "b", "c"])

    def test_group_discrete_kernel_is_identity(self):
        G = corpus.cyclic_group(4)
        assert kernel_S(G, Partition.discrete(4)) == G.set_of([0])

    def test_requires_strongly_regular(self, h9):
        sigma = congruence_mod(h9, h9.subset(["e", "a"]))
        with pytest.raises(errors.NotStronglyRegular):
            kernel_S(h9, sigma)


class TestCongruenceMod:
    def test_h9_mod_ea(self, h9):
        sigma = congruence_mod(h9, h9.subset(["e", "a"]))
        assert _classes(h9, sigma) == [
            ["a", "e"],
            ["b", "c"],
            ["u", "z"],
            ["v"],
            ["x"],
            ["y"],
        ]

    def test_mod_whole_single(self, h9):
        assert congruence_mod(h9, h9.carrier()) == Partition.single_class(h9.n)

    def test_mod_identity_in_group_is_discrete(self):
        G = corpus.cyclic_group(4)
        assert congruence_mod(G, G.set_of([0])) == Partition.discrete(4)

    def test_rejects_non_subhypergroup(self, h9):
        with pytest.raises(errors.NotASubhypergroup):
            congruence_mod(h9, h9.subset(["e", "x"]))


class TestPullbackJoin:
    def test_pullback_trivial_commutator(self, h9):
        b = beta(h9)
        sigma = Partition.discrete(len(b.classes))
        assert pullback(sigma, b) == b

    def test_pullback_through_one_class(self, h9):
        rho = Partition.single_class(h9.n)
        sigma = Partition.single_class(1)
        assert pullback(sigma, rho) == rho

    def test_pullback_parity_through_discrete(self):
        G = corpus.symmetric_group_3()
        rho = Partition.discrete(6)
        sigma = Partition.from_classes(6, [[0, 1, 2], [3, 4, 5]])
        assert pullback(sigma, rho) == sigma

    def test_pullback_shape_mismatch(self, h9):
        with pytest.raises(errors.ShapeMismatch):
            pullback(Partition.discrete(3), beta(h9))

    def test_join_idempotent_and_bounded(self, h9):
        b = beta(h9)
        assert join(b, b) == b
        assert join(Partition.discrete(h9.n), b) == b

    def test_join_beta_with_coset_congruence(self, h9):
        sigma = congruence_mod(h9, h9.subset(["e", "a"]))
        assert join(beta(h9), sigma) == beta(h9)


def _partitions(n):
    return st.builds(
        lambda values: Partition(n, values),
        st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
    )


class TestJoinProperties:
    @given(_partitions(6), _partitions(6))
    @settings(max_examples=80, deadline=None)
    def test_join_is_least_upper_bound(self, r1, r2):
        j = join(r1, r2)
        assert r1.refines(j) and r2.refines(j)
        # minimality: every block of the join is connected through r1/r2 steps
        for block in j.classes:
            members = set(block.indices())
            reached = {min(members)}
            frontier = [min(members)]
            while frontier:
                x = frontier.pop()
                for part in (r1, r2):
                    for y in part.class_set(x):
                        if y not in reached:
                            reached.add(y)
                            frontier.append(y)
            assert reached == members

    @given(_partitions(5), _partitions(5))
    @settings(max_examples=50, deadline=None)
    def test_join_commutes(self, r1, r2):
        assert join(r1, r2) == join(r2, r1)


class TestEnumerateSR:
    def test_total2_single_relation(self):
        found = enumerate_strongly_regular(total_hypergroup(2))
        assert len(found) == 1
        assert found[0] == Partition.single_class(2)

    def test_z2_congruences(self):
        found = enumerate_strongly_regular(corpus.cyclic_group(2))
        assert len(found) == 2

    def test_h9_matches_normal_closed_count(self, h9):
        from hyperkernel.quotients import subhypergroups

        found = enumerate_strongly_regular(h9)
        lattice = subhypergroups(h9)
        normal_closed = [
            e for e in lattice.all if e.normal and e.closed and e.contains_S_beta
        ]
        assert len(found) == len(normal_closed)

    def test_budget(self, h9):
        with pytest.raises(errors.BudgetExceeded):
            enumerate_strongly_regular(h9, budget=10)


class TestStructuralInvariants:
    def test_beta_is_smallest_sr(self, full_corpus):
        for H in full_corpus.values():
            if H.n > 6:
                continue
            b = beta(H)
            for R in enumerate_strongly_regular(H):
                assert b.refines(R)

    def test_gamma_smallest_with_abelian_quotient(self, full_corpus):
        for H in full_corpus.values():
            if H.n > 6:
                continue
            g = gamma(H)
            assert quotient_by(H, g).group.is_abelian()
            for R in enumerate_strongly_regular(H):
                q = quotient_by(H, R)
                if q.is_group and q.group.is_abelian():
                    assert g.refines(R)

    def test_kernel_class_identity(self, full_corpus):
        # Every class of a strongly regular relation is x * kernel.
        from hyperkernel.core import hyperproduct

        for H in full_corpus.values():
            if H.n > 6:
                continue
            for R in enumerate_strongly_regular(H):
                ker = kernel_S(H, R)
                for x in range(H.n):
                    assert (
                        hyperproduct(H, H.set_of([x]), ker) == R.class_set(x)
                    )

    def test_regular_containing_beta_is_strongly_regular(self, full_corpus):
        from hyperkernel.relations import _all_class_assignments

        for H in full_corpus.values():
            if H.n > 5:
                continue
            b = beta(H)
            for class_of in _all_class_assignments(H.n):
                R = Partition(H.n, class_of)
                if b.refines(R) and is_regular(H, R):
                    assert is_strongly_regular(H, R)

    def test_gamma_is_commutator_pullback(self, full_corpus):
        from hyperkernel.groups import commutator_subgroup, cosets

        for H in full_corpus.values():
            b = beta(H)
            q = quotient_by(H, b)
            sigma = cosets(q.group, commutator_subgroup(q.group))
            assert pullback(sigma, b) == gamma(H)

    def test_canonical_implies_gamma_equals_beta(self, full_corpus):
        from hyperkernel.core import is_canonical

        for H in full_corpus.values():
            if is_canonical(H):
                assert gamma(H) == beta(H)

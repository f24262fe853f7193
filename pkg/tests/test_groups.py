import pytest

from hyperkernel import corpus, errors
from hyperkernel.core import ElementSet
from hyperkernel.groups import (
    DirectSumFamily,
    abelianization,
    commutator_subgroup,
    cosets,
    direct_product_group,
    direct_sum_add,
    isomorphic,
    quotient_group,
    subgroup_generated,
    validate_group,
)

V4 = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
Z4 = [[(i + j) % 4 for j in range(4)] for i in range(4)]


def s3():
    names, rows = corpus._s3_rows()
    return validate_group(rows, names)


class TestValidation:
    def test_v4_valid(self):
        G = validate_group(V4, names=["e", "a", "b", "c"])
        assert G.identity == 0
        assert G.inverse == (0, 1, 2, 3)

    def test_corrupted_cell_not_associative(self):
        rows = [[(i + j) % 3 for j in range(3)] for i in range(3)]
        rows[1][2] = 1
        with pytest.raises(errors.InvalidGroupTable):
            validate_group(rows)

    def test_no_identity(self):
        with pytest.raises(errors.NoIdentity):
            validate_group([[1, 0], [0, 1]][::-1] and [[1, 1], [1, 1]])


class TestSubgroups:
    def test_identity_alone(self):
        G = s3()
        assert subgroup_generated(G, []) == ElementSet.from_indices(6, [0])

    def test_transposition_generates_order_two(self):
        G = s3()
        s = G.index("s")
        assert len(subgroup_generated(G, [s])) == 2

    def test_two_generators_give_whole_group(self):
        G = s3()
        assert subgroup_generated(G, [G.index("r"), G.index("s")]) == ElementSet(
            6, 0b111111
        )


class TestCommutators:
    def test_abelian_trivial(self):
        G = validate_group(V4)
        assert commutator_subgroup(G) == ElementSet.from_indices(4, [0])

    def test_s3_commutator_is_a3(self):
        G = s3()
        expected = ElementSet.from_indices(6, [G.index(x) for x in ("e", "r", "rr")])
        assert commutator_subgroup(G) == expected

    def test_product_commutator_splits(self):
        G1, G2 = s3(), s3()
        P = direct_product_group(G1, G2)
        c1 = commutator_subgroup(G1)
        c2 = commutator_subgroup(G2)
        expected = ElementSet.from_indices(
            P.n, (a * G2.n + b for a in c1 for b in c2)
        )
        assert commutator_subgroup(P) == expected


class TestQuotients:
    def test_mod_trivial_is_self(self):
        G = validate_group(Z4)
        Q = quotient_group(G, ElementSet.from_indices(4, [0]))
        assert Q.rows == G.rows

    def test_mod_whole_is_trivial(self):
        G = validate_group(Z4)
        Q = quotient_group(G, ElementSet(4, 0b1111))
        assert Q.n == 1

    def test_v4_mod_order_two(self):
        G = validate_group(V4)
        Q = quotient_group(G, ElementSet.from_indices(4, [0, 1]))
        assert Q.n == 2
        assert isomorphic(Q, validate_group([[0, 1], [1, 0]]))[0]

    def test_cosets_partition(self):
        G = s3()
        a3 = ElementSet.from_indices(6, [0, 1, 2])
        part = cosets(G, a3)
        assert len(part) == 2
        assert all(len(c) == 3 for c in part.classes)

    def test_non_normal_rejected(self):
        G = s3()
        with pytest.raises(errors.NotNormal):
            cosets(G, subgroup_generated(G, [G.index("s")]))

    def test_abelianization(self):
        assert abelianization(s3()).n == 2
        assert abelianization(validate_group(V4)).n == 4
        assert abelianization(validate_group(Z4)).is_abelian()

    def test_abelianization_of_product(self):
        G1, G2 = s3(), validate_group(Z4)
        left = abelianization(direct_product_group(G1, G2))
        right = direct_product_group(abelianization(G1), abelianization(G2))
        assert isomorphic(left, right)[0]


class TestIsomorphism:
    def test_v4_vs_z4(self):
        assert not isomorphic(validate_group(V4), validate_group(Z4))[0]

    def test_self_isomorphic(self):
        G = s3()
        ok, phi = isomorphic(G, G)
        assert ok
        assert phi is not None and phi[G.identity] == G.identity

    def test_witness_is_homomorphism(self):
        G = validate_group(V4)
        relabeled = validate_group(
            [[V4[(2, 3, 0, 1)[a]][(2, 3, 0, 1)[b]] for b in range(4)] for a in range(4)]
        )
        ok, phi = isomorphic(G, relabeled)
        assert ok
        for a in range(4):
            for b in range(4):
                assert phi[G.rows[a][b]] == relabeled.rows[phi[a]][phi[b]]

    def test_size_cap(self):
        G = validate_group([[(i + j) % 17 for j in range(17)] for i in range(17)])
        with pytest.raises(errors.SizeExceeded):
            isomorphic(G, G)

    def test_equivalence_spot_checks(self):
        z4 = validate_group(Z4)
        v4 = validate_group(V4)
        relabel = (1, 2, 3, 0)
        z4b = validate_group(
            [[relabel.index(Z4[relabel[a]][relabel[b]]) for b in range(4)] for a in range(4)]
        )
        assert isomorphic(z4, z4b)[0] and isomorphic(z4b, z4)[0]  # symmetric
        assert not isomorphic(v4, z4b)[0]  # transitive with v4 != z4

    def test_commutator_is_normal(self):
        G = s3()
        comm = commutator_subgroup(G)
        for g in range(G.n):
            gi = G.inverse[g]
            for a in comm:
                assert G.rows[G.rows[g][a]][gi] in comm

    def test_coset_order_formula(self):
        G = s3()
        a3 = ElementSet.from_indices(6, [0, 1, 2])
        part = cosets(G, a3)
        assert sum(len(c) for c in part.classes) == G.n
        assert G.n == len(a3) * len(part)


class TestDirectSums:
    def test_add_zero(self):
        fam = DirectSumFamily([s3(), validate_group(Z4)])
        a = fam.inject(1, 3)
        assert direct_sum_add(fam, a, fam.zero()) == a

    def test_add_inverse_is_zero(self):
        fam = DirectSumFamily([s3(), validate_group(Z4)])
        a = direct_sum_add(fam, fam.inject(0, 3), fam.inject(1, 1))
        assert direct_sum_add(fam, a, -a).is_zero()

    def test_disjoint_supports_union(self):
        fam = DirectSumFamily([validate_group(Z4), validate_group(V4)])
        a = fam.inject(0, 1)
        b = fam.inject(1, 2)
        out = direct_sum_add(fam, a, b)
        assert [i for i, _ in out.support] == [0, 1]

    def test_commutator_class_vanishes(self):
        fam = DirectSumFamily([s3()])
        assert fam.inject(0, 1).is_zero()  # a 3-cycle dies in the abelianization

    def test_family_mismatch(self):
        fam1 = DirectSumFamily([validate_group(Z4)])
        fam2 = DirectSumFamily([validate_group(Z4)])
        with pytest.raises(errors.FamilyMismatch):
            direct_sum_add(fam1, fam1.zero(), fam2.zero())

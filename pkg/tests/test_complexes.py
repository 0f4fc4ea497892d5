import json

import pytest

from skos.complexes import (
    GradedComplex,
    WindowError,
    build_berezinian,
    build_derham,
    build_koszul,
    specialize_koszul,
)
from skos.exact_linalg import ExactMatrix, homology
from skos.multilinear import SuperDim


def envelope(total=4, weights=(0, 1, 2, 3, 4, 5)):
    for a in range(total + 1):
        for b in range(total + 1 - a):
            for n in weights:
                yield a, b, n


class TestKoszulBuilder:
    def test_rank_one_even_line(self):
        C = build_koszul(1, 0, 4)
        assert C.positions == (-1, 0)
        assert [str(m) for m in C.basis_at[-1].entries] == ["x0^3*dx0"]
        assert C.diff_at[-1].to_dense() == [[1]]

    def test_odd_line_weight_three(self):
        C = build_koszul(0, 1, 3, 3)
        assert [C.dim(p) for p in C.positions] == [1, 1, 0, 0]
        assert [str(m) for m in C.basis_at[-3].entries] == ["dt1^3"]
        assert [str(m) for m in C.basis_at[-2].entries] == ["t1*dt1^2"]
        assert C.diff_at[-3].to_dense() == [[3]]

    def test_weight_zero(self):
        C = build_koszul(2, 2, 0)
        assert C.positions == (0,)
        assert [str(m) for m in C.basis_at[0].entries] == ["1"]
        assert C.diff_at == {}

    def test_cap_truncates_window(self):
        C = build_koszul(0, 1, 5, 2)
        assert C.positions == (-2, -1, 0)
        with pytest.raises(WindowError):
            C.incoming(-2)

    def test_rejects_negative_weight(self):
        with pytest.raises(ValueError):
            build_koszul(1, 1, -1, 2)


class TestDeRhamBuilder:
    def test_rank_one_even_line(self):
        C = build_derham(1, 0, 5)
        assert C.positions == (0, 1)
        assert C.diff_at[0].to_dense() == [[5]]

    def test_weight_zero(self):
        assert build_derham(3, 1, 0).positions == (0,)

    def test_odd_line_weight_two(self):
        C = build_derham(0, 1, 2, 4)
        assert [C.dim(p) for p in C.positions] == [0, 1, 1]
        assert C.diff_at[1].to_dense() == [[1]]


class TestStructuralInvariants:
    def test_squares_to_zero_and_parity_blocks(self):
        for a, b, n in envelope():
            for C in (build_koszul(a, b, n, n), build_derham(a, b, n, n)):
                for pos in C.positions[:-1]:
                    if pos + 1 in C.diff_at:
                        assert (C.diff_at[pos + 1] @ C.diff_at[pos]).is_zero()
                    M = C.diff_at[pos]
                    src = C.basis_at[pos].entries
                    dst = C.basis_at[pos + 1].entries
                    for (r, c, v) in M.triplets():
                        assert dst[r].parity == src[c].parity
                        assert dst[r].weight == src[c].weight

    def test_cartan_identity_as_matrices(self):
        for a, b, n in envelope():
            K = build_koszul(a, b, n, n)
            D = build_derham(a, b, n, n)
            for lam in range(0, n + 1):
                if -lam not in K.basis_at or lam not in D.basis_at:
                    continue
                dim = K.dim(-lam)
                assert dim == D.dim(lam)
                term1 = (
                    K.diff_at[-(lam + 1)] @ D.diff_at[lam]
                    if lam in D.diff_at and -(lam + 1) in K.diff_at
                    else ExactMatrix.zeros(dim, dim)
                )
                term2 = (
                    D.diff_at[lam - 1] @ K.diff_at[-lam]
                    if -lam in K.diff_at and lam - 1 in D.diff_at
                    else ExactMatrix.zeros(dim, dim)
                )
                assert term1 + term2 == ExactMatrix.identity(dim, n)

    def test_koszul_derham_duality_shift(self):
        # odd-line slices match even-line slices after reversing positions
        # by the weight and flipping parity by weight mod 2
        for p in (1, 2):
            for n in range(1, 6):
                K = build_koszul(0, p, n, n)
                D = build_derham(p, 0, n, n)
                for i in range(0, n + 1):
                    hk = homology(K, "Z", -i)
                    if n - i in D.basis_at:
                        hd = homology(D, "Z", n - i)
                        free, te, to = hd.free, hd.torsion_even, hd.torsion_odd
                    else:
                        free, te, to = SuperDim(0, 0), (), ()
                    if n % 2:
                        free = free.flip()
                        te, to = to, te
                    assert (hk.free, hk.torsion_even, hk.torsion_odd) == (free, te, to)


class TestBerezinianBuilder:
    def test_even_line_unit_coefficient(self):
        for n in range(0, 4):
            B = build_berezinian(1, 0, n, 1)
            assert [B.dim(p) for p in B.positions] == [1, 1]
            assert B.diff_at[0].to_dense() == [[1]]

    def test_odd_line_multiplicity_pattern(self):
        # the k-th slice below zero carries the single matrix [k+1] (up to sign)
        for k in range(0, 4):
            B = build_berezinian(0, 1, -k, 6)
            mats = [M.to_dense() for M in B.diff_at.values() if M.nnz]
            assert [[[abs(v) for v in row] for row in M] for M in mats] == [[[k + 1]]]

    def test_cap_zero(self):
        B = build_berezinian(2, 1, 1, 0)
        assert B.positions == (0,)
        assert B.diff_at == {}

    def test_differentials_compose_to_zero(self):
        for p in range(3):
            for q in range(3):
                for n in range(-4, 5):
                    B = build_berezinian(p, q, n, 6)
                    for pos in B.positions[:-1]:
                        if pos + 1 in B.diff_at:
                            assert (B.diff_at[pos + 1] @ B.diff_at[pos]).is_zero()

    def test_window_edge_raises(self):
        B = build_berezinian(1, 1, 0, 3)
        with pytest.raises(WindowError):
            B.outgoing(3)
        # bounded support: edges are fine
        B = build_berezinian(1, 0, 0, 5)
        assert B.outgoing(1).rows == 0

    def test_concentration_at_higher_ranks(self):
        # the dual-complex sign convention has to survive wedge degrees
        # beyond the small acceptance envelope
        for p, q in [(3, 0), (0, 3), (3, 1), (1, 3)]:
            for n in (q - p, q - p + 1, 0):
                B = build_berezinian(p, q, n, 6)
                for pos in B.positions:
                    try:
                        h = homology(B, "Q", pos)
                    except WindowError:
                        continue
                    expected = SuperDim(0, 0)
                    if pos == p and n == q - p:
                        expected = SuperDim(1, 0) if q % 2 == 0 else SuperDim(0, 1)
                    assert h.free == expected, (p, q, n, pos)

    def test_integral_concentration_at_dual_position(self):
        # over Z the dual complex has exactly one free rank-one cohomology
        # at position p, parity q, supported at weight q - p, no torsion
        for p in range(3):
            for q in range(3):
                for n in range(-4, 5):
                    B = build_berezinian(p, q, n, 6)
                    if p not in B.basis_at or (p + 1 not in B.basis_at and B.support_max is None):
                        continue
                    h = homology(B, "Z", p)
                    expected = SuperDim(0, 0)
                    if n == q - p:
                        expected = SuperDim(1, 0) if q % 2 == 0 else SuperDim(0, 1)
                    assert h.free == expected, (p, q, n, str(h.free))
                    assert not h.torsion_even and not h.torsion_odd, (p, q, n)


class TestSpecializedKoszul:
    def test_regular_sequence_is_exact(self):
        C = specialize_koszul(2, 0, (2, 3))
        assert C.diff_at[-1].to_dense() == [[2, 3]]
        assert sorted(v for _, _, v in C.diff_at[-2].triplets()) == [-3, 2]
        for pos in C.positions:
            h = homology(C, "Z", pos)
            assert h.free == SuperDim(0, 0) and not h.torsion_even and not h.torsion_odd

    def test_zero_specialization(self):
        C = specialize_koszul(1, 0, (0,))
        assert homology(C, "Z", 0).free == SuperDim(1, 0)
        assert homology(C, "Z", -1).free == SuperDim(1, 0)

    def test_unit_specialization_over_q(self):
        C = specialize_koszul(1, 0, (5,))
        assert homology(C, "Q", 0).free == SuperDim(0, 0)
        assert homology(C, "Q", -1).free == SuperDim(0, 0)

    def test_odd_slots_must_vanish(self):
        with pytest.raises(ValueError, match="odd slot"):
            specialize_koszul(1, 1, (2, 1))
        specialize_koszul(1, 1, (2, 0), 3)  # fine

    def test_squares_to_zero_with_odd_directions(self):
        C = specialize_koszul(2, 1, (3, 5, 0), 4)
        for pos in C.positions[:-1]:
            if pos + 1 in C.diff_at:
                assert (C.diff_at[pos + 1] @ C.diff_at[pos]).is_zero()


class TestSerialization:
    @pytest.mark.parametrize(
        "make",
        [
            lambda: build_koszul(2, 1, 3, 3),
            lambda: build_derham(1, 2, 2, 2),
            lambda: build_berezinian(1, 1, 1, 4),
            lambda: specialize_koszul(2, 1, (2, 3, 0), 3),
        ],
    )
    def test_record_round_trip(self, make):
        C = make()
        rec = json.loads(json.dumps(C.to_record(), sort_keys=True))
        C2 = GradedComplex.from_record(rec)
        assert C2.kind == C.kind and C2.gens == C.gens and C2.weight == C.weight
        assert C2.positions == C.positions
        assert C2.support_min == C.support_min and C2.support_max == C.support_max
        for pos in C.positions:
            assert C2.basis_at[pos] == C.basis_at[pos]
        assert C2.diff_at == C.diff_at
        assert C2.omega == C.omega

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError, match="format"):
            GradedComplex.from_record({"format": "nope"})

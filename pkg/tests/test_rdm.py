"""Closed-form RDM construction: validation, sub-block values, assembly,
block bookkeeping, and the large-system limit."""

import random
from fractions import Fraction as F

import pytest

from permrdm.rational import binomial
from permrdm.rdm import (RdmQuery, SubBlockIndex, SystemSpec, ThermoParams,
                         assemble_rdm, block_dim, block_view, decay_ratio,
                         energy, iter_nonzero_entries, permute_sites,
                         subblock_count, subblock_index, subblock_value,
                         subblock_values, thermo_value, validate,
                         validate_query, young_dimension)


def q(L, N, r, n):
    return RdmQuery(SystemSpec(L, N, r), n)


class TestValidate:
    def test_reference_case_valid(self):
        spec = SystemSpec(12, 6, 3)
        assert validate(spec) is spec

    def test_singlet_valid(self):
        validate(SystemSpec(2, 1, 1))

    def test_r_bound_named(self):
        with pytest.raises(ValueError, match=r"min\(N, L-N\) = 2"):
            validate(SystemSpec(4, 2, 3))

    def test_n_spins_bound_named(self):
        with pytest.raises(ValueError, match="0 <= N <= L"):
            validate(SystemSpec(4, 5, 0))

    def test_query_range(self):
        with pytest.raises(ValueError, match="1 <= n <= L"):
            validate_query(q(4, 2, 1, 5))


class TestYoungDimension:
    def test_values(self):
        assert young_dimension(12, 3) == 220 - 66 == 154
        assert young_dimension(4, 2) == 6 - 4 == 2

    @pytest.mark.parametrize("L", [1, 5, 9, 16])
    def test_symmetric_shape_is_one_dimensional(self, L):
        assert young_dimension(L, 0) == 1

    def test_range(self):
        with pytest.raises(ValueError):
            young_dimension(4, 3)

    def test_total_dimension(self):
        # two-row shapes with fixed polarization tile the whole space:
        # sum over N of deg(L, min(N, L-N) rows) recovers 2^L
        for L in range(1, 11):
            total = sum(young_dimension(L, r)
                        for N in range(L + 1)
                        for r in range(min(N, L - N) + 1))
            assert total == 2 ** L


class TestEnergy:
    def test_zero_point(self):
        assert energy(SystemSpec(12, 6, 0)) == 0

    def test_coupling_term(self):
        assert energy(SystemSpec(12, 6, 3)) == F(5, 4)

    def test_field_term(self):
        assert energy(SystemSpec(4, 1, 1, J=F(0), h=F(1))) == 1


class TestSubblockIndex:
    def test_origin(self):
        assert subblock_index(1, 1, 6) == SubBlockIndex(0, 0)

    def test_two_pair_exchange(self):
        assert subblock_index(0b1100 + 1, 0b0011 + 1, 4) == SubBlockIndex(2, 2)

    def test_polarization_mismatch_is_none(self):
        assert subblock_index(0b100 + 1, 0b110 + 1, 3) is None

    def test_bounds(self):
        with pytest.raises(ValueError):
            subblock_index(0, 1, 3)
        with pytest.raises(ValueError):
            subblock_index(1, 9, 3)

    def test_symmetric_in_arguments(self):
        for a in range(16):
            for b in range(16):
                ij = subblock_index(a + 1, b + 1, 4)
                ji = subblock_index(b + 1, a + 1, 4)
                assert (ij is None) == (ji is None)
                if ij is not None:
                    assert ij.Z == ji.Z


REFERENCE_VALUES = {
    (0, 0): F(1, 924),
    (1, 0): F(1, 154), (1, 1): F(1, 924),
    (2, 0): F(5, 308), (2, 1): F(5, 1848), (2, 2): F(-1, 924),
    (3, 0): F(5, 231), (3, 1): F(5, 1386), (3, 2): F(-1, 693), (3, 3): F(0),
}


class TestSubblockValue:
    def test_reference_values(self):
        query = q(12, 6, 3, 6)
        for (k, Z), want in REFERENCE_VALUES.items():
            assert subblock_value(query, SubBlockIndex(k, Z)) == want
            # mirrored blocks carry the same values at half filling
            assert subblock_value(query, SubBlockIndex(6 - k, Z)) == want

    def test_symmetric_state_is_z_independent(self):
        for L, N, n in [(8, 3, 4), (10, 5, 5), (6, 6, 3)]:
            query = q(L, N, 0, n)
            for k in range(n + 1):
                want = F(binomial(L - n, N - k), binomial(L, N))
                for Z in range(min(k, n - k) + 1):
                    assert subblock_value(query, SubBlockIndex(k, Z)) == want

    def test_range_checks(self):
        with pytest.raises(ValueError, match="k="):
            subblock_value(q(8, 4, 1, 4), SubBlockIndex(5, 0))
        with pytest.raises(ValueError, match="Z="):
            subblock_value(q(8, 4, 1, 4), SubBlockIndex(1, 2))

    def test_trace_normalization_grid(self):
        # diagonal values weighted by block dimensions sum to exactly one
        for L in range(1, 17):
            for N in range(L + 1):
                for r in range(min(N, L - N) + 1):
                    for n in range(1, min(L, 8) + 1):
                        query = q(L, N, r, n)
                        total = sum(
                            binomial(n, k) * subblock_value(query, SubBlockIndex(k, 0))
                            for k in range(n + 1))
                        assert total == 1, (L, N, r, n)


class TestAssembly:
    def test_singlet_marginal(self):
        m = assemble_rdm(q(2, 1, 1, 1))
        assert m.entry(1, 1) == F(1, 2)
        assert m.entry(2, 2) == F(1, 2)
        assert m.entry(1, 2) == 0

    def test_full_subsystem_allowed(self):
        # n = L keeps everything; the block k = N carries all the weight
        m = assemble_rdm(q(2, 1, 1, 2))
        assert m.entry(2, 2) == F(1, 2)
        assert m.entry(2, 3) == F(-1, 2)
        assert m.trace() == 1

    def test_reference_matrix_global_properties(self):
        m = assemble_rdm(q(12, 6, 3, 6))
        assert m.trace() == 1
        dim = m.dim
        for a in range(dim):
            for b in range(a, dim):
                va, vb = m.matrix.at(a, b), m.matrix.at(b, a)
                assert va == vb
                if a.bit_count() != b.bit_count():
                    assert va == 0

    def test_subblock_constancy(self):
        m = assemble_rdm(q(9, 4, 2, 4))
        seen = {}
        for a in range(m.dim):
            for b in range(m.dim):
                idx = subblock_index(a + 1, b + 1, m.n)
                if idx is None:
                    continue
                key = (idx.k, idx.Z)
                seen.setdefault(key, m.matrix.at(a, b))
                assert m.matrix.at(a, b) == seen[key]

    def test_permutation_invariance(self):
        rng = random.Random(7)
        for query in [q(12, 6, 3, 6), q(9, 4, 2, 4)]:
            m = assemble_rdm(query)
            for _ in range(20):
                perm = list(range(m.n))
                rng.shuffle(perm)
                assert permute_sites(m, perm).matrix.entries == m.matrix.entries

    def test_symmetric_state_blocks_are_flat(self):
        m = assemble_rdm(q(10, 4, 0, 5))
        for k in range(6):
            bv = block_view(m, k)
            assert len(set(bv.matrix.entries)) == 1

    def test_polarized_edge_cases(self):
        # N = 0 and N = L put all weight in a single diagonal entry
        m = assemble_rdm(q(5, 0, 0, 3))
        assert m.entry(1, 1) == 1
        assert sum(v != 0 for v in m.matrix.entries) == 1
        m = assemble_rdm(q(5, 5, 0, 3))
        assert m.entry(8, 8) == 1

    def test_assembly_cap(self):
        with pytest.raises(ValueError, match="cap"):
            assemble_rdm(q(12, 6, 3, 11))
        with pytest.raises(ValueError, match="cap"):
            list(iter_nonzero_entries(q(16, 8, 0, 15)))

    def test_stream_matches_assembly(self):
        query = q(8, 4, 2, 4)
        m = assemble_rdm(query)
        streamed = {(P, Q): v for P, Q, v in iter_nonzero_entries(query)}
        for a in range(m.dim):
            for b in range(m.dim):
                want = m.matrix.at(a, b)
                assert streamed.get((a + 1, b + 1), F(0)) == want
        pairs = list(streamed)
        assert pairs == sorted(pairs)


class TestBlockBookkeeping:
    def test_block_dim(self):
        assert block_dim(6, 3) == 20
        assert block_dim(6, 0) == 1
        assert sum(block_dim(6, k) for k in range(7)) == 64

    def test_subblock_count_values(self):
        assert subblock_count(6, 2, 0) == 15
        assert subblock_count(6, 2, 1) == 120
        assert subblock_count(6, 2, 2) == 90

    def test_subblock_count_by_enumeration(self):
        # count matrix positions carrying each (k=2, Z) label directly
        found = {}
        for a in range(64):
            for b in range(64):
                idx = subblock_index(a + 1, b + 1, 6)
                if idx is not None and idx.k == 2:
                    found[idx.Z] = found.get(idx.Z, 0) + 1
        assert found == {0: 15, 1: 120, 2: 90}

    def test_subblock_count_normalization(self):
        for n in range(1, 9):
            for k in range(n + 1):
                total = sum(subblock_count(n, k, Z)
                            for Z in range(min(k, n - k) + 1))
                assert total == binomial(n, k) ** 2

    def test_range_checks(self):
        with pytest.raises(ValueError):
            block_dim(4, 5)
        with pytest.raises(ValueError):
            subblock_count(6, 2, 3)


class TestThermo:
    def test_decay_ratio_values(self):
        assert decay_ratio(F(1, 2), F(0)) == 1
        assert decay_ratio(F(1, 2), F(1, 2)) == 0
        assert decay_ratio(F(1, 2), F(1, 4)) == F(1, 4)

    def test_decay_ratio_domain(self):
        with pytest.raises(ValueError, match="0 < p < 1"):
            decay_ratio(F(1), F(0))
        with pytest.raises(ValueError, match="0 < p < 1"):
            decay_ratio(F(0), F(0))
        with pytest.raises(ValueError, match="mu="):
            decay_ratio(F(1, 4), F(1, 2))

    def test_decay_ratio_bounded(self):
        for pn in range(1, 8):
            p = F(pn, 8)
            mu = F(0)
            while mu <= min(p, 1 - p):
                assert 0 <= decay_ratio(p, mu) <= 1
                mu += F(1, 16)

    def test_values(self):
        assert thermo_value(ThermoParams(F(1, 2), F(0), 4), SubBlockIndex(2, 1)) == F(1, 16)
        assert thermo_value(ThermoParams(F(1, 2), F(1, 2), 4), SubBlockIndex(2, 1)) == 0
        assert thermo_value(ThermoParams(F(1, 2), F(1, 4), 2), SubBlockIndex(1, 1)) == F(1, 16)

    def test_finite_size_convergence(self):
        # per-entry errors shrink monotonically; the table-wide (max) error
        # halves with L, confirming first-order finite-size behavior
        p, mu, n = F(1, 2), F(1, 4), 4
        tp = ThermoParams(p, mu, n)
        sizes = (8, 16, 32, 64)
        worst = {L: F(0) for L in sizes}
        for k in range(n + 1):
            for Z in range(min(k, n - k) + 1):
                limit = thermo_value(tp, SubBlockIndex(k, Z))
                errs = []
                for L in sizes:
                    query = q(L, int(p * L), int(mu * L), n)
                    err = abs(subblock_value(query, SubBlockIndex(k, Z)) - limit)
                    errs.append(err)
                    worst[L] = max(worst[L], err)
                assert all(e2 < e1 for e1, e2 in zip(errs, errs[1:])), (k, Z)
        ratios = [worst[b] / worst[a] for a, b in zip(sizes, sizes[1:])]
        assert all(F(3, 10) <= x <= F(7, 10) for x in ratios), ratios

"""Exact block reduced density matrices and spectra of permutation-invariant
spin-1/2 eigenstates, with a brute-force oracle and a CLI."""

from .rational import (RationalMatrix, binomial, is_positive_semidefinite,
                       parse_rational, rational_rank, rational_str)
from .rdm import (BlockView, RdmMatrix, RdmQuery, SubBlockIndex, SystemSpec,
                  ThermoParams, assemble_rdm, block_dim, block_view,
                  decay_ratio, energy, iter_nonzero_entries,
                  patterns_by_popcount, permute_sites, site_permutation_table,
                  subblock_count, subblock_index, subblock_value,
                  subblock_values, thermo_value, thermo_values, validate,
                  validate_query, validate_thermo, young_dimension)
from .spectrum import (CoeffTable, SpectrumEntry, coeff_table, eigenvalue,
                       eigenvalue_from_values, entropy, full_spectrum,
                       multiplicity, penultimate_coeff, purity, spectral_coeff)
from .oracle import (SINGLET_PROJECTOR, PureState, brute_force_rdm,
                     decomposition_check, density_matrix_checks, dicke_state,
                     full_density_matrix, partial_trace_sites, young_state)
from .verify import run_verification

__version__ = "0.1.0"

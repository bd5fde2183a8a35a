"""Projective symmetry classes, LSM-type obstructions and finite-chain checks."""
from .groups import (GradedGroup, GroupError, builtin, direct_product, from_permutations,
                     make_cyclic, trivial_group, validate, z2_time_reversal, z2xz2, zn_x_zn)
from .cohomology import (CohomologyClass, CohomologyGroup, Cochain1, Cocycle2, class_of,
                         coboundary, compute_H2, solve_divisibility, validate_cocycle)
from .projective import (SesquiOperator, SesquiRep, almost_commuting_pair, classify,
                         representation_group_rep, spin_rep_time_reversal, spin_rep_z2xz2,
                         tensor, trivial_rep)
from .mps import (EdgeRep, MPSTensor, aklt, dimer_spt, extract_edge_rep, left_right_indices,
                  product_state, verify_main_identity)
from .lsm import (ChainSpec, Verdict, check_reflection, check_star, check_translation,
                  propagate_indices, reduce_compact_group)
from .spectra import (ChainHamiltonian, build_heisenberg, build_xx, gap_scan, lowest_spectrum,
                      twist_energy_check, twist_expectation_check, twist_operator)

__version__ = "0.1.0"

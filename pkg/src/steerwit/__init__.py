"""Steering-ellipsoid geometry for two-qubit states and entanglement witnesses."""
from ._accel import JIT_ENABLED
from .classification import (ClassInvariants, ClassLabel, OperatorClass, classify,
                             classify_by_determinants, classify_by_ellipsoid, compute_invariants)
from .ellipsoid import (Containment, EllipsoidRep, canonical_filter, canonical_operator,
                        ellipsoid_of, is_inside_bloch_sphere, max_radius, semiaxes, surface_point)
from .oracle import (ProductStateResult, brute_max_radius, min_product_expectation,
                     verify_block_positive)
from .pauli import (PauliForm, decompose, det4, eigenvalues4, normalize, partial_trace_A,
                    partial_transpose_B, reconstruct)
from .report import ClassificationReport, classification_report
from .witness import (Finer, FinerResult, WitnessProperties, analyze_witness, conjecture_explore,
                      detects, ew4_optimal, flip_witness, is_finer, pure_state_witness, werner,
                      wp_witness)

__version__ = "0.1.0"

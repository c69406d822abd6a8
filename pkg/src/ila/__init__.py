"""Implicit linear algebra over exact fields."""
from .errors import *  # noqa: F401,F403
from .field import GF, QQ, field_from_name
from .spaces import (Label, Space, compose, contract, direct_sum, idt_holds, intersect, make_space,
                     perp, rename, restrict, sign_flip, skew_compose, vsum)
from .linkage import Linkage, intersection_sum, iit_solve, scalar_mul, transpose
from .poly import Poly
from .genops import (GDS, Genaut, adjoint, annihilates, classify, gds_from_matrices, map_genaut,
                     minimal_annihilating_poly, poly_eval)
from .invariants import (image, invariance_check, max_controlled_invariant, min_conditioned_invariant,
                         preimage)
from .control import (basic_sequence, feedback, feedback_apply, feedback_recover, injection,
                      injection_apply, injection_recover, place_poles, place_poles_injection)
from .netgraph import DirectedGraph, kirchhoff_spaces, multiport_decompose, port_count_formula
from .emulator import (ELinkagePair, Network, build_rlc_emulator, elinkage_verify, feedback_transfer,
                       injection_transfer, invariant_transfer, linkage_adjoint, network_gds,
                       poly_transfer, random_rlc_network)
from .netlist import parse_netlist, serialize

__version__ = "0.1.0"

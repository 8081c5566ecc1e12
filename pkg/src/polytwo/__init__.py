"""Two-orbit abstract polytopes: flags, automorphism groups, generators and cosets."""

from .apf import parse_apf, serialize_apf
from .catalog import (CATALOG, make_hemi, make_regular, medial, torus_44, torus_map,
                      torus_search)
from .classify import (ClassProfile, DoubleSchlafli, chain_orbit_check, classify,
                       double_schlafli, face_transitivity_report, section_class_check,
                       section_orbit_report)
from .errors import *  # noqa: F401,F403
from .flags import FlagGraph, apply_word, build_flag_graph, connecting_word, export_flags
from .generators import (FactorizationTrace, GeneratorSystem, RelationReport,
                         distinguished_generators, factorize, rebase, verify_generation,
                         verify_relations)
from .groups import (Automorphism, Coset, Group, automorphism_group, coset_intersects,
                     extend_flag_map, generate_subgroup, orbits)
from .order import CosetFace, incidence_oracle, rebuild_order, roundtrip_check
from .poset import (BOT, TOP, Face, RankedPoset, SectionHandle, ValidationReport, dual,
                    is_isomorphic, section, validate_polytope)
from .stabilizers import (GammaLDecomposition, SubgroupFamily, build_family,
                          gamma_l_decomposition, verify_deficiency_lemmas,
                          verify_intersection_property, verify_intertwine,
                          verify_section_transitivity, verify_stabilizers)

__version__ = "0.1.0"

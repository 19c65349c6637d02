"""Exact decision procedures for the Identity, Subgroup and Left-Order
Extension problems in unitriangular matrix groups and in the affine groups
G_lambda, with machine-checkable certificates."""
from .affine import (AffineMap, AffineSystem, Lambda, Type1, Type2, classify, compose,
                     decide_identity_affine, inverse, order_positive, witness_order)
from .engines import (Decision, decide, decide_identity, decide_identity_cone,
                      decide_identity_facet, decide_left_order_extension, decide_subgroup)
from .nilpotent import (GeneratorSystem, LieElement, UTElement, abelianized_coords,
                        lie_closure, mat_exp, mat_log)
from .oracle import enumerate_ball, find_identity_word, find_inverse_word

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "AffineSystem", "Lambda", "Type1", "Type2", "classify", "compose",
    "decide_identity_affine", "inverse", "order_positive", "witness_order",
    "Decision", "decide", "decide_identity", "decide_identity_cone", "decide_identity_facet",
    "decide_left_order_extension", "decide_subgroup",
    "GeneratorSystem", "LieElement", "UTElement", "abelianized_coords", "lie_closure",
    "mat_exp", "mat_log",
    "enumerate_ball", "find_identity_word", "find_inverse_word",
]

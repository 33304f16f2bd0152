"""Exact constructions linking separable snakes and Morse polynomials.

Given a separable alternating permutation, ``realize_snake`` builds a real
polynomial whose critical values, read left to right, are ranked by that
permutation. ``arnold_snake_of`` goes the other way.
"""
from .contact_tree import ContactTree, contact_tree_of, realize_tree
from .errors import ContractViolation, DomainError, InputError, SnakeForgeError
from .exact_arith import BiPoly, UniPoly, parse_bipoly, parse_unipoly, precedes_right
from .permutations import Permutation, is_separable, is_snake, parse_permutation, snake_of_sequence
from .realization import RealizationResult, realize_snake
from .separating_tree import build_separating_tree
from .snake_extract import MorseCertificate, arnold_snake_of, morse_check
from .valuation import area_valuation, area_valuation_oracle

__all__ = [
    "BiPoly", "ContactTree", "ContractViolation", "DomainError", "InputError", "MorseCertificate",
    "Permutation", "RealizationResult", "SnakeForgeError", "UniPoly", "area_valuation",
    "area_valuation_oracle", "arnold_snake_of", "build_separating_tree", "contact_tree_of",
    "is_separable", "is_snake", "morse_check", "parse_bipoly", "parse_permutation", "parse_unipoly",
    "precedes_right", "realize_snake", "realize_tree", "snake_of_sequence",
]

"""Exact characters of Demazure and generalized Demazure modules for current algebras."""
from .affring import AffWeight, CharElement
from .affweyl import AffWeylElement, dominant_reduce, element_length, translation_element
from .demazure import (DemazureCharacter, demazure_character, demazure_from_extremal,
                       demazure_op, demazure_op_word, finite_character,
                       generalized_demazure_character)
from .rootsys import RootSystem, build_root_system, parse_weight

__all__ = [
    "AffWeight", "AffWeylElement", "CharElement", "DemazureCharacter", "RootSystem",
    "build_root_system", "demazure_character", "demazure_from_extremal", "demazure_op",
    "demazure_op_word", "dominant_reduce", "element_length", "finite_character",
    "generalized_demazure_character", "parse_weight", "translation_element",
]

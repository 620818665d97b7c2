"""Tangent cones of Schubert varieties for type A, computed with exact Groebner bases."""

from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    elimination_ideal,
    ideal_dimension,
    ideal_member,
    lowest_form_ideal,
    radical_member,
    variety_contains,
    variety_equal,
)
from .poly import GREVLEX, GRLEX, LEX, Polynomial, VariableTable, parse_poly, print_poly
from .schubert import TangentCone, cell_ideal, coxeter_cone, tangent_cone, x_table
from .weyl import Permutation, length, parse_cycles, print_cycles, reduced_word

__version__ = "0.1.0"

"""Congruence lattices, term-condition commutators and prime spectra of finite algebras."""

from .algebra import AlgebraError, FiniteAlgebra, Signature, product, quotient, subalgebra_generate
from .classify import classification_report, is_baer, is_hyperarchimedean, is_strongly_baer
from .commutator import (
    HypothesisError,
    commutator,
    commutator_table,
    hypothesis_flags,
    perp,
    residuum,
    term_condition_holds,
)
from .extensions import extension_report, make_extension, theorem_suite
from .io import emit_report, export_dot, parse_algebra_file, serialize_algebra
from .partitions import Congruence, all_congruences, cg
from .spectra import is_prime, radical, spectrum, stone_topology

__version__ = "0.1.0"

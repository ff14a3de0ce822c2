"""Exact reflection-equation algebra characters built from Hecke symmetries."""

from .braiding import (
    BirankError,
    HeckeSymmetry,
    NotHeckeError,
    NotSkewInvertibleError,
    drinfeld_jimbo,
    hecke_symmetry,
    load_r_matrix,
    validate,
)
from .charalg import (
    GeneratorConventionError,
    NewtonError,
    NotScalarError,
    PowerMatrices,
    RepresentedGenerators,
    cayley_hamilton_residual,
    extract_character,
    lemma44_check,
    monomial_action_t,
    newton_convert,
    power_matrices,
    represented_generators,
)
from .heckerep import (
    StandardTableau,
    YoungIdempotent,
    jucys_murphy,
    partitions,
    standard_tableaux,
    young_idempotent,
    young_idempotents,
)
from .scalar import LaurentPoly, NonGenericError, PoleError, RatFunc, ScalarBackend, parse_scalar, render_scalar
from .spectral import (
    CharacterTable,
    SpectrumAssignment,
    character_table,
    classical_limit,
    closed_characters,
    lemma42_check,
    multiplicities,
    series_identities,
    spectral_power_sums,
    spectrum,
)
from .tensor import TensorOp
from .verify import SuiteConfig, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]

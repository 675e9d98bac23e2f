"""Generalized Dehn twists, Fox pairings and Johnson images on a genus-g surface with one boundary."""
from .core import (
    CyclicSeries,
    LieElement,
    NotLieError,
    SymplecticBasis,
    TensorSeries,
    bch,
    cyclic_project,
    from_lyndon,
    lyndon_basis,
    parse_lie,
    to_lyndon,
    witt_number,
)
from .diagrams import HElement, glue, glue_via_s, h_rank, integrality_check, r_theta, tau, thmB_value, thmC_value
from .expansion import Expansion, expand, make_expansion, standard_expansion, symplectic_expansion
from .free_group import (
    ClassTooLow,
    CommutatorExpression,
    GroupWord,
    ParseError,
    PlanarTree,
    decompose,
    lcs_class,
    magnus,
    parse_word,
    phi,
    prune,
)
from .pairing import AlgElement, BiElement, GeneratorPairingTable, diamond, kappa, kappa_tilde, sigma_app
from .twist import Derivation, TruncatedAutomorphism, gdt, gdt_group_formula, gdt_group_word, l_gamma, s_derivation

__version__ = "0.1.0"

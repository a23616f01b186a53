"""Quantum strategic games: EWL quantization, strong isomorphisms,
lifted mappings, and equilibrium search."""

from .games import (
    ClassicalGame,
    GameMapping,
    MixedProfile2x2,
    apply_mapping,
    bimatrix,
    compose,
    equilibrium_transport_check,
    find_strong_isomorphisms,
    image_game,
    is_strong_isomorphism,
    mixed_nash_2x2,
    pd_game,
    pure_nash_equilibria,
    strategic_equivalence,
)
from .linalg import (
    SU2Params,
    basis_index,
    basis_state,
    entangler,
    expectation,
    permutation_operator,
    su2,
    tensor,
)
from .ewl import (
    EwlGame,
    StrategySpace,
    ewl_payoffs,
    final_state,
    parse_space,
    payoff_operator,
    two_param_payoff_closed_form,
    unrestricted_payoffs,
)
from .lift import (
    FLIP,
    KEEP,
    AngleTransform,
    LiftedMapping,
    LiftReport,
    apply_lift,
    lift,
    operator_identity_suite,
    verify_lift,
)
from .search import (
    EpsEquilibrium,
    ParamGrid,
    best_reply_two_param,
    grid_pure_ne,
    witness_deviation,
)
from .gamefile import (
    GameFile,
    GameFileError,
    load_game_file,
    parse_game_file,
    save_game_file,
    serialize_game_file,
)

__version__ = "0.1.0"

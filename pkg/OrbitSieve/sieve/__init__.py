from .bounds import (
    BETA_KAPPA,
    SPECTRAL_GAPS,
    RBoundResult,
    SieveParams,
    beta_for,
    delta_threshold,
    exponent_of_distribution,
    m_zeta,
    optimize_R,
    saturation_table,
    tau_parameter,
)
from .functions import (
    SieveFunctionTable,
    a_kappa,
    minimize_r_bound,
    r_bound_integral,
    sigma_branch_jump,
    solve_F_f,
    solve_sigma,
    solve_tables,
)

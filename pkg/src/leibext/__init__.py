"""Exact Leibniz and Chevalley-Eilenberg cohomology, and Ext between Leibniz bimodules."""

from .algebra import (
    LeibnizAlgebra,
    LieAlgebra,
    is_simple_leibniz,
    killing_form,
    leibniz_kernel,
    lie_quotient,
    validate_leibniz,
)
from .bimodule import (
    Bimodule,
    LieModule,
    Parity,
    adjoint_bimodule,
    check_bimodule,
    hom_module,
    lift,
    m0_submodule,
    trivial_bimodule,
)
from .catalog import algebra_from_spec, hemisemidirect, sl2, sl2_irrep
from .cohomology import ce, ce_dims, hl, hl_dims, induced_action_on_hl
from .exactlin import Mat, kernel_basis, rank, solve
from .extcalc import (
    ExtEngine,
    SimpleBimoduleSpec,
    e2_page,
    ext1_direct,
    ext_certified,
    ext_table,
    nhat,
    prop23_groups,
)

__version__ = "0.1.0"

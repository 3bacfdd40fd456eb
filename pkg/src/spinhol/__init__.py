"""Exact-arithmetic fix and holonomy algebras of Clifford torsion elements."""

from .clifford import (
    MultiVector,
    contract_vector,
    from_json,
    from_record,
    geometric_product,
    grade_profile,
    hodge_components,
    inner_product,
    involutions,
    sandwich_sum,
    selfdual_split,
    star,
    to_json,
    to_record,
    volume_element,
    wedge,
)
from .lie import (
    LieDescriptor,
    ModelAlgebra,
    Subspace,
    classify,
    close_span,
    derived_and_center,
    invariant_form_signature,
    model_algebra,
)
from .spectra import (
    SpectrumCandidate,
    comb0_condition,
    combin_condition,
    family_search,
    power_norm_sequence,
)
from .spinrep import (
    SpinPairing,
    SpinRep,
    Spinor,
    bilinear_spinor_products,
    build_rep,
    mu_inverse,
    mu_matrix,
    sandwich_constant,
    spinor_square,
    sym_spinors,
    wedge_spinors,
)
from .torsion import (
    FixAlgebraResult,
    FixedSpinors,
    HermitianStructure,
    InvertibilityReport,
    Lambda2Splitting,
    OddAnnihilator,
    SpectrumData,
    TorsionForm,
    analyze_fix_algebra,
    fixed_spinors,
    from_spectrum,
    hermitian_from_plane,
    identity_suite,
    invertibility_report,
    lambda2_splitting,
    make_form,
    odd_power_inclusion,
    q_spaces,
    spectrum,
    spinor_square_form,
    su4_form,
    two_form_square,
    unipotent_pair,
    volume_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

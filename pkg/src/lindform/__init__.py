"""Kossakowski matrices of Markovian dissipators: extraction by two
independent routes, diagonal Lindblad form and complete-positivity tests."""

from .cp_analysis import (
    CpVerdict,
    LindbladForm,
    compare_spectra,
    cp_verdict,
    lindblad_form,
    restore_cp,
    spectrum,
)
from .kossakowski import (
    CoherenceAffineForm,
    KossakowskiMatrix,
    TransformationTensor,
    build_tensor,
    coherence_form,
    kossakowski_pinv,
    kossakowski_trace,
    kossakowski_via_coherence,
    reconstruct_dissipator,
    tensor_for,
)
from .models_psbr import (
    PsbrParams,
    lambda_system_dissipator,
    v_system_coherence_oracle,
    v_system_dissipator,
)
from .sun_basis import GeneratorBasis, StructureConstants, check_sum_rule, generate_basis, structure_constants
from .superop import Dissipator, VecOrdering, apply, devec, reorder, validate_dissipator, vec

__version__ = "0.1.0"

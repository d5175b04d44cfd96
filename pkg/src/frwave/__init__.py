"""Fractional Fourier transforms and fractional biorthogonal wavelet analysis."""

from .errors import (
    DegenerateAngle,
    EmptyBattery,
    FrwaveError,
    GridCoverage,
    GridMismatch,
    InputError,
    NonConvergent,
    NotRealProfile,
    RieszLowerBoundZero,
    SupportTooSmall,
    TailTooFat,
)
from .grids import (
    Angle,
    SampledSignal,
    SpectrumSamples,
    as_angle,
    read_signal_csv,
    read_spectrum_csv,
    resample,
    sample_at,
    write_signal_csv,
    write_spectrum_csv,
)
from .frft import (
    CHIRP,
    DIRECT,
    FrFTPlan,
    chirp_modulate,
    frft,
    frft_eval,
    inverse_frft,
    kernel_constant,
    kernel_eval,
    parseval_defect,
)
from .wavelets import (
    ContinuousAtomParams,
    DiscreteAtomIndex,
    FrameSumReport,
    MotherWavelet,
    admissibility_constant,
    admissibility_refinement,
    atom_continuous,
    atom_discrete,
    battery,
    frame_sum,
    frwt_continuous,
    make_mother,
)
from .riesz import (
    PeriodicProfile,
    RieszBounds,
    SequenceSpectrum,
    biortho_profile,
    check_biorthogonal,
    dual_scaling,
    periodization_gram,
    riesz_bounds,
    sequence_spectrum_eval,
    spectrum_on_grid,
    translate_atom,
    translate_expansion,
    translate_gram,
    translate_spectrum,
)
from .mra import (
    MRALevel,
    ScalingFilter,
    auxiliary_function,
    level_atom,
    operator_norm_estimate,
    project,
    projection_residual_curve,
    refine_cascade,
    scaling_filter,
    two_scale_apply,
    two_scale_defect,
    two_scale_spectral_defect,
)
from .banks import (
    box_signal,
    cdf53_system,
    cdf53_taps,
    fractional_scaling,
    fractional_taps,
    haar_system,
    haar_taps,
    hat_signal,
    spectral_scaling,
    spectral_scaling_from_filter,
)
from .biortho import (
    BiorthoWaveletPair,
    DecayReport,
    RieszBoundsPair,
    WaveletFilterBank,
    cross_level_orthogonality,
    cross_orthogonality_check,
    decay_check,
    expand_reconstruct,
    highpass_from_lowpass,
    level_split_defect,
    load_bank,
    make_bank,
    matrix_condition_defect,
    riesz_frame_bounds,
    save_bank,
    wavelet_biortho_check,
    wavelet_synthesize,
)
from .report import AnalysisReport, RunConfig, Verdict, dumps_deterministic

__version__ = "0.1.0"

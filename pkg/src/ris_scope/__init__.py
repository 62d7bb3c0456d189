"""Far-field scattering, bistatic RCS, link budgets and micro-Doppler for quantized RIS."""

from .core import ConfigurationError, Direction, RisGeometry
from .link_budget import LinkBudget, Scene, default_scene, detection_scan, horn_gain, snr_db
from .microdoppler import Spectrogram, TargetTrajectory, stft_spectrogram, synthesize_echo
from .phase_profile import (
    ReflectionProfile,
    SteeringConfig,
    build_profile,
    effective_periods,
    predict_grating_lobes,
    quantize_phase,
)
from .rcs import (
    CutSpec,
    PatternCut,
    backward_pattern,
    beam_squint,
    bistatic_rcs,
    forward_pattern,
    monostatic_rcs,
    pslr,
    steering_metrics,
)
from .scattering import PlaneWave, element_excitations, far_field, pattern_cut

__version__ = "0.1.0"

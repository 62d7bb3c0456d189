"""
Demo: micro-Doppler of a reflector swung in front of the RIS.

Synthesizes the RIS-routed echo, removes the static clutter and prints
the Doppler ridge of the STFT frame by frame.
"""

import numpy as np

from ris_scope import LinkBudget, RisGeometry, SteeringConfig, build_profile
from ris_scope.microdoppler import (
    TargetTrajectory,
    instantaneous_doppler,
    stft_spectrogram,
    synthesize_echo,
)

geom = RisGeometry.from_size(16, 10)
profile = build_profile(geom, SteeringConfig.from_signed(0, 30), 1)
link = LinkBudget(p_tx=0.0, g_a=12.0, sigma_f=0.0, sigma_b=0.0, sigma_t=0.0,
                  wavelength=geom.wavelength, r1=1.6, r2=1.0, n0=-105.0)
fs = 1000.0

####################################################################################################
# Constant radial speed: one line at 2 v / lambda

traj = TargetTrajectory.radial(30.0, 1.5, -1.0, 1.0, fs)
spec = stft_spectrogram(synthesize_echo(traj, geom, profile, link), fs)
print(f'approaching at 1 m/s: ridge {np.median(spec.ridge()):.1f} Hz '
      f'(2 v / lambda = {2 / geom.wavelength:.2f} Hz, bin {spec.bin_width:.0f} Hz)')

####################################################################################################
# Pendulum: the ridge swings between positive and negative Doppler

swing = TargetTrajectory.pendulum((0.5, 1.2), arm_length=0.6, swing_deg=30, swing_rate_hz=1.0,
                                  duration=2.0, sample_rate=fs)
echo = synthesize_echo(swing, geom, profile, link)
raw = stft_spectrogram(echo, fs, dc_filter=False)
spec = stft_spectrogram(echo, fs)
truth = instantaneous_doppler(swing, geom.wavelength)
print(f'clutter line before / after DC filtering: {raw.magnitudes_db.max():.1f} / '
      f'{spec.magnitudes_db.max():.1f} dB')

print(f'\n{"t (s)":>6}{"ridge":>8}{"true":>8}')
for t, f in zip(spec.times[::3], spec.ridge()[::3]):
    print(f'{t:6.3f}{f:8.1f}{truth[int(t * fs)]:8.1f}')

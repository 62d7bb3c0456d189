"""
Demo: where 1-bit quantization sends the energy.

A 1-bit profile is real valued, so its pattern is symmetric and a mirror
lobe appears opposite the steered one.  The effective supercell period
predicts where it lands.
"""

import numpy as np

from ris_scope import CutSpec, RisGeometry, SteeringConfig, build_profile, forward_pattern
from ris_scope.phase_profile import effective_periods, predict_grating_lobes

geom = RisGeometry.from_size(16, 10)
steer = SteeringConfig.from_signed(0, 45)
cut = CutSpec(step=0.05)

####################################################################################################
# Phase states along the steering axis

for bits in (None, 3, 2, 1):
    profile = build_profile(geom, steer, bits)
    states = np.round(profile.phases[0] / (np.pi / 4)).astype(int) % 8
    label = 'cont' if bits is None else f'{bits}-bit'
    print(f'{label:>6}: ' + ' '.join(str(s) for s in states) + '   (units of pi/4)')

####################################################################################################
# Supercell period and predicted diffraction orders

profile = build_profile(geom, steer, 1)
periods = effective_periods(profile, geom)
print(f'\ndominant period {periods.dominant_cells[1]:.3f} cells, '
      f'fundamental {periods.fundamental_cells[1]} cells '
      f'(lambda / (p sin 45) = {geom.wavelength / (0.016 * np.sin(np.pi / 4)):.3f})')
pred = predict_grating_lobes(steer, periods, geom.wavelength)
for order, direction in pred.grating_lobes:
    print(f'  order {order}: {direction.signed_degrees(90):+.2f} deg')

####################################################################################################
# Scanned pattern: the two lobes are equal

pattern = forward_pattern(geom, steer, profile, cut)
for target in (45, -45):
    theta, value = pattern.main_lobe(target)
    print(f'lobe near {target:+d}: {value:.2f} dBsm at {theta:+.2f} deg')

# coarse ASCII cut, 4 deg per row, 1 char per dB above -20 dBsm
print()
for theta in np.arange(-80, 81, 4):
    level = pattern.value_at(theta)
    print(f'{theta:+4.0f} | ' + '#' * max(0, int(round(level + 20))))

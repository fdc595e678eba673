"""Hard-coded high-precision constants shared across modules.

These are pinned rather than computed at runtime so that derived
quantities (normalized maxima, Dickman tails) cannot silently absorb
quadrature or special-function drift.
"""

import math

EULER_GAMMA = 0.5772156649015329
EXP_GAMMA = 1.7810724179901979      # e^gamma
EXP_MINUS_GAMMA = 0.5614594835668851  # e^-gamma
LOG2 = math.log(2.0)

# eta = e^-gamma * log 2, the shift appearing in the tail exponents
ETA = EXP_MINUS_GAMMA * LOG2

TWO_PI = 2.0 * math.pi

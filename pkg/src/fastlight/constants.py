"""Physical constants used across the package.

All frequencies inside the library are angular (rad/s); lengths are meters,
times are seconds, powers are watts. Hz appears only at the I/O boundary.
"""

# Speed of light in vacuum, m/s (exact by definition).
C0 = 299_792_458.0

# Planck constant, J*s (exact, 2019 SI), and the reduced form.
PLANCK = 6.626_070_15e-34
HBAR = PLANCK / (2.0 * 3.141592653589793)

# Sidereal rotation rate of the Earth, rad/s.
OMEGA_EARTH = 7.292_1159e-5

# Lense-Thirring frame-dragging rate at the Earth's surface, as a fraction
# of the Earth rotation rate.
LENSE_THIRRING_FRACTION = 5.6e-10

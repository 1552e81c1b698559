//! Physical constants (SI, CODATA 2018 exact values where defined).

/// Vacuum speed of light (m/s).
pub const C0: f64 = 299_792_458.0;
/// Vacuum permeability (H/m).
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Vacuum permittivity (F/m), tied to `MU0` and `C0` so that `ETA0² = MU0/EPS0` holds to rounding.
pub const EPS0: f64 = 1.0 / (MU0 * C0 * C0);
/// Free-space wave impedance (Ω), about 376.73.
pub const ETA0: f64 = MU0 * C0;
/// Planck constant (J·s).
pub const H: f64 = 6.626_070_15e-34;
/// Boltzmann constant (J/K).
pub const KB: f64 = 1.380_649e-23;
/// Elementary charge (C).
pub const E_CHARGE: f64 = 1.602_176_634e-19;

#pragma once

namespace eur {

/// Airy function Ai by its Maclaurin series; accurate to ~1e-14 for |x| <= 6,
/// which covers locating the first zero.
double airy_ai(double x);

/// Magnitude of the first zero of Ai (approximately 2.33811).
double airy_first_zero_magnitude();

}  // namespace eur

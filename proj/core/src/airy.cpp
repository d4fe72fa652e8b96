#include "eur/airy.hpp"

#include <cmath>

namespace eur {

double airy_ai(double x) {
    // Ai(x) = c1 f(x) - c2 g(x), f'' = xf with f(0)=1,f'(0)=0 and g(0)=0,g'(0)=1.
    const double c1 = 0.35502805388781723926;  // 3^(-2/3)/Gamma(2/3)
    const double c2 = 0.25881940379280679841;  // 3^(-1/3)/Gamma(1/3)
    const double x3 = x * x * x;
    double f = 1.0, tf = 1.0;
    double g = x, tg = x;
    for (int k = 1; k < 60; ++k) {
        tf *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
        tg *= x3 / ((3.0 * k + 1.0) * (3.0 * k));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
    }
    return c1 * f - c2 * g;
}

double airy_first_zero_magnitude() {
    double lo = 2.0, hi = 2.8;  // Ai(-2) > 0, Ai(-2.8) < 0
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (airy_ai(-mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace eur

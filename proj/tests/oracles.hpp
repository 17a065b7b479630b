#pragma once

// Independent closed forms used to check the library. Nothing here calls into
// coopber's analytic code.

#include <cmath>
#include <cstdint>
#include <random>

namespace coopber::test {

/// Average BPSK BER over one Rayleigh branch: (1 - sqrt(g / (1 + g))) / 2.
inline double rayleigh_bpsk(double g) { return 0.5 * (1.0 - std::sqrt(g / (1.0 + g))); }

/// Two-branch MRC over independent Rayleigh branches with means g1, g2
/// (partial fractions of the MGF product; the equal-mean case is the
/// repeated-pole limit).
inline double mrc_two_branch(double g1, double g2) {
    const double mu1 = std::sqrt(g1 / (1.0 + g1));
    const double mu2 = std::sqrt(g2 / (1.0 + g2));
    if (std::abs(g1 - g2) < 1e-12 * std::max(g1, g2)) {
        const double p = 0.5 * (1.0 - mu1);
        return p * p * (2.0 + mu1);
    }
    return 0.5 * (1.0 - (g1 * mu1 - g2 * mu2) / (g1 - g2));
}

/// MGF of the maximum of n i.i.d. exponentials with mean g: the maximum is
/// a sum of independent exponentials with means g / k, k = 1..n.
inline double max_exponential_mgf(int n, double g, double s) {
    double p = 1.0;
    for (int k = 1; k <= n; ++k) p *= k / (k + g * s);
    return p;
}

/// P(X < Y) for independent exponentials with means a and b.
inline double exponential_less(double a, double b) { return b / (a + b); }

inline double harmonic(int n) {
    double h = 0.0;
    for (int k = 1; k <= n; ++k) h += 1.0 / k;
    return h;
}

/// Quantile of the chi-square distribution at 0.99 for small dof.
inline double chi2_critical_99(int dof) {
    static constexpr double table[] = {0.0, 6.635, 9.210, 11.345, 13.277, 15.086,
                                       16.812, 18.475, 20.090, 21.666, 23.209};
    return table[dof];
}

}  // namespace coopber::test

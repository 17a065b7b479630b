#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace coopber::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int order() const { return static_cast<int>(nodes.size()); }
};

/// Rule of the requested order, computed by Newton iteration on P_n.
GaussLegendreRule make_gauss_legendre(int order);

/// Shared, lazily built rules for orders 32, 64, ..., 1024.
const GaussLegendreRule& cached_rule(int order);

inline constexpr int kBaseOrder = 64;
inline constexpr int kMaxOrder = 1024;

struct QuadResult {
    double value;
    int order;        // final order (or panel count for the adaptive routine)
    double delta;     // last refinement change
};

using Integrand = std::function<double(double)>;

double apply_rule(const GaussLegendreRule& rule, const Integrand& f, double a, double b);

/// Fixed-order Gauss-Legendre on [a, b], doubling the order from 64 until two
/// successive estimates agree to `rel_tol` (relative). Throws NumericalError
/// mentioning `label` if order 1024 is reached without agreement.
QuadResult integrate_doubling(const Integrand& f, double a, double b, const std::string& label,
                              double rel_tol = 1e-12);

/// Recursive bisection with a 32-point panel rule; a panel is accepted once
/// its two halves agree with it to max(abs_tol, rel_tol * |panel|).
QuadResult integrate_adaptive(const Integrand& f, double a, double b, const std::string& label,
                              double abs_tol = 1e-13, double rel_tol = 1e-11);

}  // namespace coopber::quadrature

#include "coopber/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coopber/types.hpp"

namespace coopber::quadrature {

GaussLegendreRule make_gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess for the i-th root.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

const GaussLegendreRule& cached_rule(int order) {
    static const std::array<GaussLegendreRule, 6> rules = [] {
        std::array<GaussLegendreRule, 6> r;
        r[0] = make_gauss_legendre(32);
        for (int k = 1; k < 6; ++k) r[k] = make_gauss_legendre(32 << k);
        return r;
    }();
    for (const auto& r : rules) {
        if (r.order() == order) return r;
    }
    throw std::invalid_argument("no cached Gauss-Legendre rule of order " + std::to_string(order));
}

double apply_rule(const GaussLegendreRule& rule, const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return sum * half;
}

QuadResult integrate_doubling(const Integrand& f, double a, double b, const std::string& label,
                              double rel_tol) {
    int order = kBaseOrder;
    double previous = apply_rule(cached_rule(order), f, a, b);
    double delta = 0.0;
    while (order < kMaxOrder) {
        order *= 2;
        const double current = apply_rule(cached_rule(order), f, a, b);
        delta = std::abs(current - previous);
        if (!std::isfinite(current)) break;
        if (delta <= rel_tol * std::abs(current) || delta <= 1e-300) {
            return {current, order, delta};
        }
        previous = current;
    }
    throw NumericalError("quadrature did not converge for " + label + " (order " +
                         std::to_string(order) + ", delta " + std::to_string(delta) + ")");
}

namespace {

struct AdaptiveState {
    const Integrand& f;
    const GaussLegendreRule& rule;
    double abs_tol;
    double rel_tol;
    int panels = 0;
    bool failed = false;
};

double adaptive_panel(AdaptiveState& st, double a, double b, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = apply_rule(st.rule, st.f, a, mid);
    const double right = apply_rule(st.rule, st.f, mid, b);
    const double refined = left + right;
    const double err = std::abs(refined - whole);
    if (err <= std::max(st.abs_tol, st.rel_tol * std::abs(refined)) || depth >= 40) {
        if (depth >= 40 && err > std::max(st.abs_tol, st.rel_tol * std::abs(refined))) {
            st.failed = true;
        }
        ++st.panels;
        return refined;
    }
    return adaptive_panel(st, a, mid, left, depth + 1) + adaptive_panel(st, mid, b, right, depth + 1);
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const std::string& label,
                              double abs_tol, double rel_tol) {
    AdaptiveState st{f, cached_rule(32), abs_tol, rel_tol};
    const double whole = apply_rule(st.rule, f, a, b);
    const double value = adaptive_panel(st, a, b, whole, 0);
    if (st.failed || !std::isfinite(value)) {
        throw NumericalError("adaptive quadrature did not converge for " + label);
    }
    return {value, st.panels, 0.0};
}

}  // namespace coopber::quadrature

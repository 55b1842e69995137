#ifndef BLOCKMAP_QUADRATURE_HPP
#define BLOCKMAP_QUADRATURE_HPP

#include <blockmap/numeric.hpp>

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace blockmap {

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1], built once by Newton
// iteration on P_15 (double precision is the target accuracy here).
struct GL15 {
    std::array<double, 15> x{};
    std::array<double, 15> w{};

    GL15() {
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

inline const GL15& gl15() {
    static const GL15 rule;
    return rule;
}

template <typename F, typename V>
V gl15_panel(F&& f, double a, double b) {
    const auto& r = gl15();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    V acc = V(0);
    for (int i = 0; i < 15; ++i) acc += V(r.w[i]) * f(mid + half * r.x[i]);
    return acc * V(half);
}

template <typename F, typename V>
V adapt(F&& f, double a, double b, double tol, double floor_, const V& whole, int depth) {
    if (depth > 40) throw numerical_error("adaptive quadrature failed to converge");
    const double mid = 0.5 * (a + b);
    const V left = gl15_panel<F, V>(std::forward<F>(f), a, mid);
    const V right = gl15_panel<F, V>(std::forward<F>(f), mid, b);
    using std::abs;
    const double err = static_cast<double>(abs(left + right - whole));
    const double scale = static_cast<double>(abs(left) + abs(right));
    if (err <= tol * scale || err <= floor_) return left + right;
    return adapt(std::forward<F>(f), a, mid, tol, floor_, left, depth + 1) +
           adapt(std::forward<F>(f), mid, b, tol, floor_, right, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre with panel bisection. rel_tol applies panel-wise
// against an absolute floor derived from the first whole-interval estimate,
// so panels that contribute nothing terminate. Works for real and complex
// integrands.
template <typename F>
auto integrate(F&& f, double a, double b, double rel_tol = 1e-10) {
    using V = decltype(f(a));
    const V whole = detail::gl15_panel<F, V>(std::forward<F>(f), a, b);
    using std::abs;
    const double floor_ =
        rel_tol * static_cast<double>(abs(whole)) * 1e-3 + 1e-300;
    return detail::adapt(std::forward<F>(f), a, b, rel_tol, floor_, whole, 0);
}

// Split at the given interior points first (useful when the integrand has
// distinct regimes), then adapt per panel with a shared absolute floor.
template <typename F>
auto integrate_segmented(F&& f, const std::vector<double>& pts, double rel_tol = 1e-10) {
    using V = decltype(f(pts[0]));
    using std::abs;
    std::vector<V> first;
    double total = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        first.push_back(detail::gl15_panel<F, V>(std::forward<F>(f), pts[i], pts[i + 1]));
        total += static_cast<double>(abs(first.back()));
    }
    const double floor_ = rel_tol * total * 1e-3 + 1e-300;
    V acc = V(0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        acc += detail::adapt(std::forward<F>(f), pts[i], pts[i + 1], rel_tol, floor_,
                             first[i], 0);
    return acc;
}

}  // namespace blockmap

#endif

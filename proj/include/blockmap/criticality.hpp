#ifndef BLOCKMAP_CRITICALITY_HPP
#define BLOCKMAP_CRITICALITY_HPP

#include <blockmap/models.hpp>
#include <blockmap/numeric.hpp>
#include <blockmap/quadrature.hpp>
#include <blockmap/series.hpp>

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

namespace blockmap {

// u_cr = (M1 + 2 g1 M1') / (M1 (1 - M1) + 2 g1 M1'), from u = 1 data only.
template <typename T>
T ucrit_from_u1_data(const T& g1, const T& M1, const T& M1prime) {
    const T num = M1 + 2 * g1 * M1prime;
    const T den = M1 * (1 - M1) + 2 * g1 * M1prime;
    if (!(den > 0))
        throw numerical_error("u_cr denominator not positive: model outside assumptions");
    return num / den;
}

// g_c(u_cr) = g1 (1 + M1 (1 - M1) / (2 g1 M1'))^2
template <typename T>
T gc_at_ucrit(const T& g1, const T& M1, const T& M1prime) {
    if (M1prime == 0) throw numerical_error("M1' vanishes");
    const T f = 1 + M1 * (1 - M1) / (2 * g1 * M1prime);
    return g1 * f * f;
}

// g_cr(u) = t_cr / (1 + u (B(t_cr) - 1))^2 with B(t_cr) = M1(g1)
template <typename T>
T gcr_of_u(const T& u, const T& t_cr, const T& B_at_tcr) {
    const T f = 1 + u * (B_at_tcr - 1);
    return t_cr / (f * f);
}

// ---- string susceptibility / KPZ / duality algebra ----

template <typename T>
struct ExponentSet {
    T c;
    T gamma;
    T gamma_prime;    // 4 / gamma
    T gamma_S;        // <= 0
    T gamma_S_prime;  // dual, in (0, 1)
    T alpha;          // 1 - gamma_S
};

// gamma = (sqrt(25-c) - sqrt(1-c))/sqrt(6) and the dual set, c <= 1.
template <typename T>
ExponentSet<T> lqg_exponents(const T& c) {
    using std::sqrt;
    if (!(c <= 1)) throw std::domain_error("central charge must satisfy c <= 1");
    const T s25 = sqrt(T(25) - c), s1 = sqrt(T(1) - c), s6 = sqrt(T(6));
    ExponentSet<T> e;
    e.c = c;
    e.gamma = (s25 - s1) / s6;
    e.gamma_prime = (s25 + s1) / s6;
    e.gamma_S = (c - 1 - s25 * s1) / 12;
    e.gamma_S_prime = (c - 1 + s25 * s1) / 12;
    e.alpha = 1 - e.gamma_S;
    return e;
}

template <typename T>
T a_gamma(const T& gamma) {
    return 2 / gamma - gamma / 2;
}

// positive inverse of the KPZ relation; valid on both branches gamma < 2 and
// gamma' > 2 (where a_gamma < 0)
template <typename T>
T kpz(const T& x, const T& gamma) {
    using std::sqrt;
    const T a = a_gamma(gamma);
    return (sqrt(4 * x + a * a) - a) / gamma;
}

// x = (gamma^2/4) D^2 + (1 - gamma^2/4) D, the forward KPZ relation
template <typename T>
T kpz_forward(const T& Delta, const T& gamma) {
    const T g24 = gamma * gamma / 4;
    return g24 * Delta * Delta + (1 - g24) * Delta;
}

// Delta' = (Delta - gamma_S) / (1 - gamma_S); involutive with the dual set
template <typename T>
T dual_dimension(const T& Delta, const T& gamma_S) {
    if (!(gamma_S < 1)) throw std::domain_error("gamma_S must be < 1");
    return (Delta - gamma_S) / (1 - gamma_S);
}

// gamma^2 = kappa ∧ 16/kappa, gamma'^2 = kappa ∨ 16/kappa
template <typename T>
std::pair<T, T> sle_coupling(const T& kappa) {
    using std::sqrt;
    if (!(kappa > 0)) throw std::domain_error("kappa must be positive");
    const T other = 16 / kappa;
    const T lo = kappa < other ? kappa : other;
    const T hi = kappa < other ? other : kappa;
    return {sqrt(lo), sqrt(hi)};
}

// e = arccos(q/2)/pi, c = -1 - 6 e^2/(1-e)
template <typename T>
T meander_central_charge(const T& q) {
    using std::acos;
    if (!(q >= 0 && q <= 2)) throw std::domain_error("q must lie in [0, 2]");
    const T e = acos(q / 2) / pi_const<T>();
    if (e == 1) throw std::domain_error("q = -2 limit not defined");
    return -1 - 6 * e * e / (1 - e);
}

// P_A(t) = A/sqrt(2 pi t^3) exp(-(A - a t)^2 / (2t))
template <typename T>
T quantum_ball_density(const T& A, const T& t, const T& gamma) {
    using std::exp;
    using std::sqrt;
    if (!(A > 0 && t > 0 && gamma > 0)) throw std::domain_error("need A, t, gamma > 0");
    const T a = a_gamma(gamma);
    const T d = A - a * t;
    return A / sqrt(2 * pi_const<T>() * t * t * t) * exp(-d * d / (2 * t));
}

// Integral over t in (0, inf): substituting t = A^2/s^2 turns the density
// into sqrt(2/pi) exp(-(s - a A / s)^2 / 2), which decays like a Gaussian at
// both ends. Equals 1 for a_gamma >= 0 and exp(2 A a_gamma) otherwise.
inline double quantum_ball_integral(double A, double gamma, double rel_tol = 1e-12) {
    const double a = 2.0 / gamma - gamma / 2.0;
    const double c = a * A;
    const double smax = std::abs(c) + 15.0;
    auto f = [&](double s) {
        if (s <= 0) return 0.0;
        const double d = s - c / s;
        return std::sqrt(2.0 / M_PI) * std::exp(-0.5 * d * d);
    };
    return integrate(f, 0.0, smax, rel_tol);
}

// ---- critical point from the block series ----

// u(t) = 1 / (1 - B(t) + 2 t B'(t)); decreasing in t for positive b_j.
template <typename T, typename BF, typename BPF>
T u_of_t(const T& t, BF&& B, BPF&& Bprime) {
    return 1 / (1 - B(t) + 2 * t * Bprime(t));
}

// Solve u = u(t_c) for t_c in [0, t_cr] by bisection, then g_c(u). Requires
// u >= u_cr; below u_cr the equation has no solution with t_c <= t_cr.
template <typename T, typename BF, typename BPF>
std::pair<T, T> solve_tc(const T& u, BF&& B, BPF&& Bprime, const T& t_cr,
                         int max_iter = 200) {
    const T u_cr = u_of_t(t_cr, B, Bprime);
    if (u < u_cr)
        throw numerical_error("u below u_cr: no solution with t_c <= t_cr");
    T lo = 0, hi = t_cr;  // u(lo) = +inf, u(hi) = u_cr <= u
    for (int i = 0; i < max_iter; ++i) {
        const T mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        const T um = u_of_t(mid, B, Bprime);
        if (um >= u)
            lo = mid;
        else
            hi = mid;
        using std::abs;
        if (abs(hi - lo) <= abs(hi) * T(1e-14)) break;
    }
    const T tc = (lo + hi) / 2;
    const T gc = tc / ((1 + u * (B(tc) - 1)) * (1 + u * (B(tc) - 1)));
    return {tc, gc};
}

// Series-backed B and B' (formal derivative of the truncated series).
template <typename T>
std::pair<std::function<T(T)>, std::function<T(T)>> series_block_function(
    const TruncatedSeries<Rational>& b_series) {
    auto B = [b_series](T t) { return b_series.template eval<T>(t); };
    auto Bp = [d = b_series.formal_derivative()](T t) { return d.template eval<T>(t); };
    return {B, Bp};
}

// ---- rooted simple quadrangulations: exact block function ----

// B(t) solves B^3 - B^2 - 18 t B + 27 t^2 + 16 t = 0 on the combinatorial
// branch B(0) = 1, increasing to B(4/27) = 4/3. The bracket below isolates
// that branch: the cubic's local minimum in B sits left of it.
template <typename T>
T quad_block_B(const T& t) {
    using std::sqrt;
    if (t == 0) return T(1);
    auto F = [&](const T& B) {
        return B * B * B - B * B - 18 * t * B + 27 * t * t + 16 * t;
    };
    const T Bmin = (1 + sqrt(1 + 54 * t)) / 3;
    T lo = Bmin > 1 ? Bmin : T(1);
    T hi = T(4) / 3;
    if (F(lo) > 0) throw numerical_error("quad block solve: bracket failed");
    for (int i = 0; i < 500; ++i) {
        const T mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        if (F(mid) <= 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

// implicit derivative of the cubic. Both numerator and denominator vanish
// like (t_cr - t)^{3/2} at the singularity, so once the denominator drops
// below the cancellation floor we switch to the singular expansion
// B'(t) = 3 - (9/2) sqrt(t_cr - t) + O(t_cr - t).
template <typename T>
T quad_block_Bprime(const T& t) {
    using std::abs;
    using std::sqrt;
    if (t == 0) return T(2);  // b_1 = 2
    const T B = quad_block_B(t);
    const T num = 18 * B - 54 * t - 16;
    const T den = 3 * B * B - 2 * B - 18 * t;
    if (abs(den) < T(1e-25)) {
        const T s = T(4) / 27 - t;
        return 3 - T(9) / 2 * sqrt(s > 0 ? s : T(0));
    }
    return num / den;
}

// residual of the quartic satisfied by M_u(g); exactly 0 on the surface
template <typename T>
T mu_quartic_residual(const T& u, const T& g, const T& M) {
    const T M2 = M * M, M3 = M2 * M, M4 = M2 * M2;
    return 27 * u * u * u * g * g * M4 + (1 - 18 * u * u * g) * M3 -
           (3 - 2 * u + 2 * u * u * u * g - 18 * u * u * g) * M2 +
           (3 - 4 * u + u * u) * M - (1 - u) * (1 - u);
}

// Newton solve of the quartic from a seed on the physical branch.
template <typename T>
T solve_mu_quartic(const T& u, const T& g, const T& seed) {
    T M = seed;
    for (int i = 0; i < 200; ++i) {
        const T f = mu_quartic_residual(u, g, M);
        const T df = 108 * u * u * u * g * g * M * M * M +
                     3 * (1 - 18 * u * u * g) * M * M -
                     2 * (3 - 2 * u + 2 * u * u * u * g - 18 * u * u * g) * M +
                     (3 - 4 * u + u * u);
        if (df == 0) throw numerical_error("quartic Newton: vanishing derivative");
        const T step = f / df;
        M -= step;
        using std::abs;
        if (abs(step) <= abs(M) * T(1e-40)) break;
    }
    return M;
}

// d_quad(gamma)/gamma = 2/gamma + gamma/2 + 1/sqrt(6), invariant under duality
template <typename T>
T ding_gwynne_dimension(const T& gamma) {
    using std::sqrt;
    return 2 + gamma * gamma / 2 + gamma / sqrt(T(6));
}

struct HausdorffDimensions {
    Real whole_map;              // D(gamma') = 1/gamma'_S
    std::optional<Real> bubble;  // (4/gamma^2) d_gamma when d_gamma is known
    Real ding_gwynne;            // the conjectured d(gamma') value
};

template <typename T>
HausdorffDimensions hausdorff_dimensions(const T& gamma_prime,
                                         std::optional<T> d_gamma = std::nullopt) {
    if (!(gamma_prime > 2)) throw std::domain_error("gamma' must exceed 2");
    HausdorffDimensions h{Real(0), std::nullopt, Real(0)};
    const T gsp = 1 - 4 / (gamma_prime * gamma_prime);
    h.whole_map = to_real(T(1) / gsp);
    if (d_gamma) {
        const T gamma = 4 / gamma_prime;
        h.bubble = to_real(4 / (gamma * gamma) * (*d_gamma));
    }
    h.ding_gwynne = to_real(ding_gwynne_dimension(gamma_prime));
    return h;
}

// ---- per-model critical data ----

template <typename T>
struct CriticalData {
    T t_cr;
    T u_cr;
    T g1;
    T M1_at_g1;
    T M1prime_at_g1;
    T g_c_at_ucrit;
    std::function<T(T)> g_cr_of_u;  // valid for u <= u_cr
    std::function<T(T)> g_c_of_u;   // valid for u >= u_cr (quads only here)
};

template <typename T>
CriticalData<T> critical_data(Family f) {
    const U1Data<T> d = u1_data<T>(f);
    CriticalData<T> c;
    c.t_cr = d.t_cr;
    c.g1 = d.g1;
    c.M1_at_g1 = d.M1;
    c.M1prime_at_g1 = d.M1prime;
    c.u_cr = ucrit_from_u1_data(d.g1, d.M1, d.M1prime);
    c.g_c_at_ucrit = gc_at_ucrit(d.g1, d.M1, d.M1prime);
    c.g_cr_of_u = [t_cr = d.t_cr, B = d.M1](T u) { return gcr_of_u(u, t_cr, B); };
    if (f == Family::QuadSimpleBlocks) {
        c.g_c_of_u = [t_cr = d.t_cr](T u) {
            auto B = [](T t) { return quad_block_B(t); };
            auto Bp = [](T t) { return quad_block_Bprime(t); };
            return solve_tc(u, B, Bp, t_cr).second;
        };
    }
    return c;
}

}  // namespace blockmap

#endif

#ifndef BLOCKMAP_PROFILE_HPP
#define BLOCKMAP_PROFILE_HPP

#include <blockmap/numeric.hpp>
#include <blockmap/quadrature.hpp>

#include <cmath>
#include <complex>
#include <vector>

namespace blockmap {
namespace profile {

// kernel arguments: c(x) = cos(kc sqrt(x)), ch(x) = cosh(kh sqrt(x)) with
// kc = sqrt(3)/2^{2/3} and kh = 3/2^{2/3} (likewise s, sh)
inline double kc() { return std::sqrt(3.0) / std::pow(2.0, 2.0 / 3.0); }
inline double kh() { return 3.0 / std::pow(2.0, 2.0 / 3.0); }

inline double gamma43() { return std::tgamma(4.0 / 3.0); }
inline double gamma53() { return std::tgamma(5.0 / 3.0); }

// Phi(r) ~ K2 r^2 and rho(r) ~ 2 K2 r at small r
inline double small_r_constant() {
    return 3.0 * gamma53() / (5.0 * std::pow(2.0, 4.0 / 3.0) * gamma43());
}

constexpr double kSeriesSwitch = 1e-3;  // x below this uses the series branch
constexpr double kMuMax = 4.2;          // e^{-mu^3} mu^4 < 1e-18 beyond

// integrand bracket of the cumulative profile:
//   1 - 6 (1 - c ch + s sh / sqrt(3)) / (c - ch)^2
// The closed form loses every digit as x -> 0 because (c - ch)^2 vanishes
// like x^2 against an O(x^2) numerator; the series branch below was derived
// symbolically once and is accurate to ~1e-15 at the switch point.
inline double phi_bracket(double x) {
    if (x < kSeriesSwitch) {
        const double c1 = 3.0 * std::pow(2.0, 2.0 / 3.0) / 20.0;   // x
        const double c3 = -3.0 / 400.0;                            // x^3
        const double c4 = 9.0 * std::pow(2.0, 2.0 / 3.0) / 12320.0;  // x^4
        return x * (c1 + x * x * (c3 + x * c4));
    }
    const double sx = std::sqrt(x);
    const double c = std::cos(kc() * sx), s = std::sin(kc() * sx);
    if (kh() * sx > 20.0) {
        // exponent-scaled form in E = e^{-kh sqrt(x)}; avoids cosh overflow
        const double E = std::exp(-kh() * sx);
        const double D = 1.0 + E * E - 2.0 * E * c;
        const double num = 2.0 * E - c * (1.0 + E * E) + s * (1.0 - E * E) / std::sqrt(3.0);
        return 1.0 - 12.0 * E * num / (D * D);
    }
    const double ch = std::cosh(kh() * sx), sh = std::sinh(kh() * sx);
    const double d = c - ch;
    return 1.0 - 6.0 * (1.0 - c * ch + s * sh / std::sqrt(3.0)) / (d * d);
}

// integrand factor of the density: sh (c (c + ch) - 2) / (c - ch)^3, with
// the same small-x treatment (the numerator cancels through x^2)
inline double rho_factor(double x) {
    if (x < kSeriesSwitch) {
        const double b0 = std::pow(2.0, 1.0 / 3.0) / 40.0;           // sqrt(x)
        const double b2 = -3.0 * std::pow(2.0, 2.0 / 3.0) / 1600.0;  // x^{5/2}
        const double b3 = 3.0 * std::pow(2.0, 1.0 / 3.0) / 6160.0;   // x^{7/2}
        return std::sqrt(x) * (b0 + x * x * (b2 + x * b3));
    }
    const double sx = std::sqrt(x);
    const double c = std::cos(kc() * sx);
    if (kh() * sx > 20.0) {
        const double E = std::exp(-kh() * sx);
        const double D = 1.0 + E * E - 2.0 * E * c;
        const double num = 2.0 * E * (c * c - 2.0) + c * (1.0 + E * E);
        return -2.0 * E * (1.0 - E * E) * num / (D * D * D);
    }
    const double ch = std::cosh(kh() * sx), sh = std::sinh(kh() * sx);
    const double d = c - ch;
    return sh * (c * (c + ch) - 2.0) / (d * d * d);
}

inline std::vector<double> mu_panels() {
    return {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, kMuMax};
}

// cumulative distance profile Phi(r); Phi(0) = 0, Phi(inf) = 1
inline double phi(double r, double rel_tol = 1e-11) {
    if (r < 0) throw std::domain_error("r must be >= 0");
    if (r == 0) return 0.0;
    auto f = [&](double mu) {
        return std::exp(-mu * mu * mu) * mu * mu * mu * phi_bracket(mu * r * r);
    };
    return 3.0 / gamma43() * integrate_segmented(f, mu_panels(), rel_tol);
}

// density rho(r) = dPhi/dr
inline double rho(double r, double rel_tol = 1e-11) {
    if (!(r > 0)) throw std::domain_error("r must be > 0");
    const double pref = 9.0 * std::pow(2.0, 7.0 / 3.0) / gamma43();
    auto f = [&](double mu) {
        return std::exp(-mu * mu * mu) * std::pow(mu, 3.5) * rho_factor(mu * r * r);
    };
    return pref * integrate_segmented(f, mu_panels(), rel_tol);
}

// F(L; sigma) = (2/3) sigma^2 (1 + 3 / sinh^2(sigma L))
inline std::complex<double> scaling_F(std::complex<double> L, double sigma) {
    const std::complex<double> sh = std::sinh(sigma * L);
    return 2.0 / 3.0 * sigma * sigma * (1.0 + 3.0 / (sh * sh));
}

// both conjugate branches of the pre-simplification integrand combination
inline std::complex<double> contour_combination(double mu, double r) {
    const double sigma = std::pow(3.0, 0.25) / std::sqrt(2.0);
    const double c0 = std::pow(3.0, 0.25) / std::pow(2.0, 1.0 / 6.0);
    const std::complex<double> wp = std::polar(1.0, M_PI / 6.0);
    const std::complex<double> wm = std::conj(wp);
    const std::complex<double> Lp = c0 * std::sqrt(mu) * wp * r;
    const std::complex<double> Lm = c0 * std::sqrt(mu) * wm * r;
    return wm * scaling_F(Lp, sigma) + wp * scaling_F(Lm, sigma);
}

// Phi evaluated through the two-branch contour form; must agree with phi(r)
inline double phi_contour_crosscheck(double r, double rel_tol = 1e-11) {
    if (!(r > 0)) throw std::domain_error("r must be > 0");
    auto f = [&](double mu) -> std::complex<double> {
        return std::exp(-mu * mu * mu) * mu * mu * mu * contour_combination(mu, r);
    };
    const std::complex<double> v =
        3.0 / gamma43() * integrate_segmented(f, mu_panels(), rel_tol);
    return v.real();
}

// least-squares slope of log(-log rho(r)) against log r over [r_min, r_max];
// Fisher's law predicts 1/(1 - nu) = 6/5 asymptotically
inline double fisher_tail_exponent(double r_min, double r_max, int samples = 16) {
    if (!(r_max > r_min && r_min >= 2.0))
        throw std::domain_error("need r_max > r_min >= 2");
    // below ~1e-12 the double-precision quadrature noise floor swamps the
    // true stretched-exponential value; refuse rather than fit garbage
    constexpr double kRhoFloor = 1e-12;
    std::vector<double> xs, ys;
    for (int i = 0; i < samples; ++i) {
        const double lr = std::log(r_min) +
                          (std::log(r_max) - std::log(r_min)) * i / (samples - 1);
        const double r = std::exp(lr);
        const double v = rho(r);
        if (!(v > kRhoFloor) || !(v < 1.0))
            throw numerical_error("rho underflow (or not in (0,1)) in the Fisher window");
        xs.push_back(lr);
        ys.push_back(std::log(-std::log(v)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int k = static_cast<int>(xs.size());
    for (int i = 0; i < k; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// generic fit used by the synthetic test path: slope on caller-provided data
inline double fisher_fit(const std::vector<double>& rs, const std::vector<double>& rhos) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int k = static_cast<int>(rs.size());
    if (k < 2) throw std::invalid_argument("need at least two samples");
    for (int i = 0; i < k; ++i) {
        if (!(rhos[i] > 1e-300) || !(rhos[i] < 1.0))
            throw numerical_error("rho out of range for the Fisher fit");
        const double x = std::log(rs[i]);
        const double y = std::log(-std::log(rhos[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

struct ProfileCurve {
    std::vector<double> r;
    std::vector<double> phi;
    std::vector<double> rho;
    std::vector<double> phi_contour;  // filled only when requested
};

inline ProfileCurve profile_curve(double r_max, int points, bool with_contour = false) {
    ProfileCurve c;
    c.r.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double r = r_max * i / (points - 1);
        c.r.push_back(r);
        c.phi.push_back(phi(r));
        c.rho.push_back(r == 0.0 ? 0.0 : rho(r));
        if (with_contour) c.phi_contour.push_back(r == 0.0 ? 0.0 : phi_contour_crosscheck(r));
    }
    return c;
}

}  // namespace profile
}  // namespace blockmap

#endif

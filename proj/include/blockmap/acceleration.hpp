#ifndef BLOCKMAP_ACCELERATION_HPP
#define BLOCKMAP_ACCELERATION_HPP

#include <blockmap/numeric.hpp>

#include <map>
#include <string>
#include <vector>

namespace blockmap {

// A finite window t_0..t_N of a positive sequence with asymptotics
// t_n ~ g*^{-n} / n^delta, possibly after multiplying in (log n)^eta.
struct SequenceWindow {
    std::vector<Real> values;  // t_0..t_N
    std::string label;
    double log_power_eta = 0.0;

    int max_index() const { return static_cast<int>(values.size()) - 1; }
};

// Indexed subsequence a_{first_n}, a_{first_n + 1}, ...
struct IndexedSequence {
    int first_n = 1;
    std::vector<Real> values;

    int last_n() const { return first_n + static_cast<int>(values.size()) - 1; }
    const Real& at(int n) const { return values.at(n - first_n); }
};

struct EstimateReport {
    int N = 0;
    int p = 0;
    Real estimate;
    IndexedSequence delta;        // delta_n
    IndexedSequence delta_hat;    // n^p delta_n
    IndexedSequence delta_tilde;  // accelerated
    std::string target;
};

namespace detail {

// apply (log n)^eta; defined from n = 2 on (log 1 = 0 would zero out t_1)
inline std::vector<Real> premultiplied(const SequenceWindow& w) {
    std::vector<Real> t = w.values;
    if (w.log_power_eta != 0.0) {
        for (std::size_t n = 2; n < t.size(); ++n)
            t[n] *= pow(log(Real(n)), Real(w.log_power_eta));
    }
    return t;
}

}  // namespace detail

// delta_n = n^2 (t_{n+2} t_n / t_{n+1}^2 - 1) for n >= first_n
inline IndexedSequence delta_sequence(const std::vector<Real>& t, int first_n = 1) {
    const int N = static_cast<int>(t.size()) - 1;
    if (N < first_n + 2) throw std::invalid_argument("sequence too short for delta");
    IndexedSequence d;
    d.first_n = first_n;
    for (int n = first_n; n <= N - 2; ++n) {
        if (t[n] <= 0 || t[n + 1] <= 0 || t[n + 2] <= 0)
            throw numerical_error("delta sequence needs positive terms");
        d.values.push_back(Real(n) * Real(n) * (t[n + 2] * t[n] / (t[n + 1] * t[n + 1]) - 1));
    }
    return d;
}

// delta~^(p)_n = (1/p!) Delta^p (n^p delta_n); exact limit for delta_n = d + c/n
inline IndexedSequence accelerate(const IndexedSequence& d, int p) {
    if (p < 0) throw std::invalid_argument("p must be >= 0");
    if (p == 0) return d;
    if (static_cast<int>(d.values.size()) <= p)
        throw std::invalid_argument("sequence too short to accelerate");
    std::vector<Real> cur(d.values.size());
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        const long n = d.first_n + static_cast<long>(i);
        Real np = 1;
        for (int k = 0; k < p; ++k) np *= n;
        cur[i] = np * d.values[i];
    }
    for (int it = 0; it < p; ++it) {
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) cur[i] = cur[i + 1] - cur[i];
        cur.pop_back();
    }
    Real fact = 1;
    for (int k = 2; k <= p; ++k) fact *= k;
    IndexedSequence out;
    out.first_n = d.first_n;
    out.values.reserve(cur.size());
    for (auto& v : cur) out.values.push_back(v / fact);
    return out;
}

// The (N,p)-estimate delta~^(p)_{N-2-p} of the exponent delta in
// t_n ~ g*^{-n} / n^delta, from t_0..t_N.
inline EstimateReport np_estimate(const SequenceWindow& w, int N, int p) {
    if (p < 1 || p > 10) throw std::invalid_argument("p must lie in 1..10");
    const int first_n = w.log_power_eta != 0.0 ? 2 : 1;
    if (N - 2 - p < first_n) throw std::invalid_argument("N - 2 - p too small");
    if (w.max_index() < N) throw std::invalid_argument("window shorter than N");
    std::vector<Real> t = detail::premultiplied(w);
    t.resize(N + 1);
    EstimateReport r;
    r.N = N;
    r.p = p;
    r.target = w.label;
    r.delta = delta_sequence(t, first_n);
    r.delta_hat = r.delta;
    for (std::size_t i = 0; i < r.delta_hat.values.size(); ++i) {
        const long n = r.delta_hat.first_n + static_cast<long>(i);
        Real np = 1;
        for (int k = 0; k < p; ++k) np *= n;
        r.delta_hat.values[i] *= np;
    }
    r.delta_tilde = accelerate(r.delta, p);
    r.estimate = r.delta_tilde.at(N - 2 - p);
    return r;
}

// Richardson limit of a sequence a_n via the same Delta^p(n^p a_n)/p!
// operator (exact on polynomials in 1/n of degree <= p), evaluated at the
// last available index.
inline Real richardson_limit(const IndexedSequence& a, int p) {
    const IndexedSequence acc = accelerate(a, p);
    if (acc.values.empty()) throw std::invalid_argument("sequence exhausted by acceleration");
    return acc.values.back();
}

// growth-rate estimate g*: Richardson extrapolation of t_n / t_{n+1}
inline Real growth_rate_estimate(const SequenceWindow& w, int p) {
    const std::vector<Real> t = detail::premultiplied(w);
    const int N = static_cast<int>(t.size()) - 1;
    if (N < p + 3) throw std::invalid_argument("window too short for growth rate");
    const int first_n = w.log_power_eta != 0.0 ? 2 : 1;
    IndexedSequence ratios;
    ratios.first_n = first_n;
    for (int n = first_n; n <= N - 1; ++n) {
        if (!(t[n] > 0) || !(t[n + 1] > 0))
            throw numerical_error("growth rate needs positive terms");
        ratios.values.push_back(t[n] / t[n + 1]);
    }
    return richardson_limit(ratios, p);
}

// Polynomial extrapolation to x = 0 through the last p+1 points (x_i, y_i).
inline Real neville_to_zero(const std::vector<Real>& xs, const std::vector<Real>& ys) {
    std::vector<Real> f = ys;
    const std::size_t k = f.size();
    for (std::size_t m = 1; m < k; ++m)
        for (std::size_t i = k - 1; i >= m; --i)
            f[i] = f[i - 1] + (Real(0) - xs[i - m]) * (f[i] - f[i - 1]) / (xs[i] - xs[i - m]);
    return f[k - 1];
}

// The u_cr estimator sequence built from partial sums of M_1 at g1
// (numerator and denominator of the closed-form u_cr with M_1 truncated).
inline IndexedSequence ucrit_sequence(const std::vector<Real>& m1, const Real& g1) {
    if (!(g1 > 0)) throw std::invalid_argument("g1 must be positive");
    const int N = static_cast<int>(m1.size()) - 1;
    IndexedSequence seq;
    seq.first_n = 1;
    Real M = m1[0];      // partial sum at g1
    Real Mp = 0;         // derivative partial sum
    Real gpow = 1;       // g1^{j-1}
    for (int n = 1; n <= N; ++n) {
        M += m1[n] * gpow * g1;
        Mp += n * m1[n] * gpow;
        gpow *= g1;
        const Real num = M + 2 * g1 * Mp;
        const Real den = M * (1 - M) + 2 * g1 * Mp;
        if (!(den > 0))
            throw numerical_error("u_cr sequence denominator changed sign");
        seq.values.push_back(num / den);
    }
    return seq;
}

// Extrapolate the u_cr sequence. The tail of the partial-sum error goes like
// n^{-theta} with theta = alpha - 1 (subcritical exponent), so the Neville
// abscissas are x_n = n^{-theta}; theta = 1/2 for the quadrangulation class.
inline Real ucrit_extrapolate(const std::vector<Real>& m1, const Real& g1,
                              double theta = 0.5, int p = 5) {
    if (static_cast<int>(m1.size()) < 10)
        throw std::invalid_argument("u_cr extrapolation needs at least 10 terms");
    const IndexedSequence seq = ucrit_sequence(m1, g1);
    const int last = seq.last_n();
    const int points = p + 1;
    if (last - seq.first_n + 1 < points)
        throw std::invalid_argument("u_cr extrapolation needs more terms than p+1");
    std::vector<Real> xs, ys;
    for (int n = last - points + 1; n <= last; ++n) {
        xs.push_back(pow(Real(n), Real(-theta)));
        ys.push_back(seq.at(n));
    }
    return neville_to_zero(xs, ys);
}

}  // namespace blockmap

#endif

#ifndef BLOCKMAP_SUBSTITUTION_HPP
#define BLOCKMAP_SUBSTITUTION_HPP

#include <blockmap/numeric.hpp>
#include <blockmap/polynomial.hpp>
#include <blockmap/series.hpp>

#include <stdexcept>
#include <vector>

namespace blockmap {

// Incremental table of powers of a valuation-1 series: row j holds T^j up to
// the orders filled so far. The triangular solvers below extend it one order
// at a time, so that coefficient n of every power is computed exactly once.
template <typename R>
class PowerTable {
  public:
    PowerTable(int order, int max_power)
        : order_(order), rows_(max_power + 1, std::vector<R>(order + 1, R(0))) {
        rows_[0][0] = R(1);
    }

    // extend all powers to order n, given T filled through coefficient n
    void extend(const TruncatedSeries<R>& t, int n) {
        const int jmax = std::min<int>(n, static_cast<int>(rows_.size()) - 1);
        for (int j = 1; j <= jmax; ++j) {
            R acc(0);
            for (int k = 1; k <= n - (j - 1); ++k)
                acc += t.coeff(k) * rows_[j - 1][n - k];
            rows_[j][n] = acc;
        }
    }

    const R& at(int power, int n) const { return rows_[power][n]; }

  private:
    int order_;
    std::vector<std::vector<R>> rows_;
};

// Solve y = z*phi(y) through order N. phi must have a nonzero constant term
// (otherwise the tree equation is degenerate); y has y_0 = 0, y_1 = phi_0.
// Coefficient n of the equation is linear in y_n, so the solve is a plain
// triangular pass maintaining the powers of y.
template <typename R>
TruncatedSeries<R> solve_tree_fixed_point(const TruncatedSeries<R>& phi, int N) {
    if (N < 1) throw std::invalid_argument("tree solve needs N >= 1");
    if (phi.coeff(0) == R(0))
        throw std::invalid_argument("phi has zero constant term: tree equation degenerate");

    TruncatedSeries<R> y(N);
    PowerTable<R> pow(N, N);
    // [z^n] y = [z^{n-1}] phi(y) = sum_i phi_i [z^{n-1}] y^i ; y^i needs only
    // y_1..y_{n-1}, already known when order n is reached.
    for (int n = 1; n <= N; ++n) {
        pow.extend(y, n - 1);
        R acc(0);
        const int imax = std::min(n - 1, phi.order());
        for (int i = 0; i <= imax; ++i) acc += phi.coeff(i) * pow.at(i, n - 1);
        y.coeff(n) = acc;
    }
    return y;
}

// Invert M1(g) = B(g M1(g)^2) for the block coefficients b_1..b_N. b_j enters
// the order-j coefficient linearly, with unit leading factor since m_0 = 1.
template <typename R>
std::vector<R> extract_block_coefficients(const TruncatedSeries<R>& m1, int N) {
    if (m1.order() < N) throw std::invalid_argument("m1 series too short");
    if (!(m1.coeff(0) == R(1)))
        throw validation_error("block extraction requires constant term 1");

    const TruncatedSeries<R> t = shifted_square(m1);
    PowerTable<R> pow(N, N);
    for (int n = 1; n <= N; ++n) pow.extend(t, n);

    std::vector<R> b(N + 1, R(0));
    for (int n = 1; n <= N; ++n) {
        R acc(0);
        for (int j = 1; j < n; ++j) acc += b[j] * pow.at(j, n);
        // leading factor T_1^n = m_0^{2n} = 1
        b[n] = m1.coeff(n) - acc;
    }
    return b;
}

// M_u(g) = 1 + u [B(g M_u(g)^2) - 1] over the polynomial ring in u. Block
// coefficients b_j live in R; the result's coefficients are Polynomial<R>
// with degree in u at most n (a block needs at least one unit of size).
template <typename R>
TruncatedSeries<Polynomial<R>> weighted_map_series(const std::vector<R>& b, int N) {
    using P = Polynomial<R>;
    if (static_cast<int>(b.size()) < N + 1)
        throw std::invalid_argument("need block coefficients through order N");

    TruncatedSeries<P> m(N);
    m.coeff(0) = P(1);
    TruncatedSeries<P> t(N);
    PowerTable<P> pow(N, N);
    for (int n = 1; n <= N; ++n) {
        // T_n = [g^{n-1}] M^2 uses m_0..m_{n-1} only
        P acc;
        for (int k = 0; k <= n - 1; ++k) acc += m.coeff(k) * m.coeff(n - 1 - k);
        t.coeff(n) = acc;
        pow.extend(t, n);
        P sum;
        for (int j = 1; j <= n; ++j) sum += pow.at(j, n) * b[j];
        m.coeff(n) = sum.shifted_up();  // the factor u
        if (m.coeff(n).degree() > n)
            throw std::logic_error("u-degree of m_n exceeded n");
    }
    return m;
}

// S_u(g) = M_u(g)^a * C(g M_u(g)^2); c holds c_0..c_J. The order of C must
// cover the requested order of S.
template <typename S, typename CT>
TruncatedSeries<S> compose_outer(const std::vector<CT>& c, const TruncatedSeries<S>& m, int a) {
    if (a < 0 || a > 2) throw std::invalid_argument("outer power a must be 0, 1 or 2");
    const int N = m.order();
    if (static_cast<int>(c.size()) < N + 1)
        throw std::invalid_argument("correlator coefficients do not cover the series order");

    const TruncatedSeries<S> t = shifted_square(m);
    TruncatedSeries<S> s(N);
    s.coeff(0) = S(1) * c[0];
    TruncatedSeries<S> pj(N);
    pj.coeff(0) = S(1);
    for (int j = 1; j <= N; ++j) {
        pj = pj * t;
        if (c[j] == CT(0)) continue;
        for (int n = j; n <= N; ++n) s.coeff(n) += pj.coeff(n) * c[j];
    }
    for (int k = 0; k < a; ++k) s = s * m;
    return s;
}

// C(t) = 1 - B(t) + 2t B'(t): c_0 = 0 and c_j = (2j-1) b_j.
template <typename R>
std::vector<R> correlator_from_blocks(const std::vector<R>& b) {
    std::vector<R> c(b.size(), R(0));
    for (std::size_t j = 1; j < b.size(); ++j) c[j] = b[j] * R(2 * static_cast<long>(j) - 1);
    return c;
}

// Given S1 and M1 at u=1, recover the outer coefficients c_j of
// S1 = M1^a C(g M1^2). Division by M1^a stays in the ring because m_0 = 1.
template <typename R>
std::vector<R> extract_outer_coefficients(const TruncatedSeries<R>& s1,
                                          const TruncatedSeries<R>& m1, int a) {
    const int N = s1.order();
    if (m1.order() != N) throw std::invalid_argument("series orders differ");
    if (!(m1.coeff(0) == R(1)))
        throw validation_error("outer extraction requires m_0 = 1");

    // w = S1 / M1^a by triangular division
    TruncatedSeries<R> w = s1;
    for (int k = 0; k < a; ++k) {
        TruncatedSeries<R> q(N);
        for (int n = 0; n <= N; ++n) {
            R acc = w.coeff(n);
            for (int j = 0; j < n; ++j) acc -= q.coeff(j) * m1.coeff(n - j);
            q.coeff(n) = acc;  // m_0 = 1
        }
        w = q;
    }
    const TruncatedSeries<R> t = shifted_square(m1);
    PowerTable<R> pow(N, N);
    for (int n = 1; n <= N; ++n) pow.extend(t, n);
    std::vector<R> c(N + 1, R(0));
    c[0] = w.coeff(0);
    for (int n = 1; n <= N; ++n) {
        R acc(0);
        for (int j = 1; j < n; ++j) acc += c[j] * pow.at(j, n);
        c[n] = w.coeff(n) - acc;
    }
    return c;
}

// Evaluate a series with Polynomial<R> coefficients at a numeric u.
template <typename T, typename R>
std::vector<T> evaluate_u(const TruncatedSeries<Polynomial<R>>& m, const T& u) {
    std::vector<T> out;
    out.reserve(m.order() + 1);
    for (int n = 0; n <= m.order(); ++n) out.push_back(m.coeff(n).template eval<T>(u));
    return out;
}

template <typename T>
std::vector<T> evaluate_uq(const TruncatedSeries<UQPoly>& m, const T& u, const T& q) {
    std::vector<T> out;
    out.reserve(m.order() + 1);
    for (int n = 0; n <= m.order(); ++n) out.push_back(eval_uq(m.coeff(n), u, q));
    return out;
}

// Collapse the u-polynomial coefficients at u = 1, back to the base ring.
template <typename R>
TruncatedSeries<R> collapse_u_at_one(const TruncatedSeries<Polynomial<R>>& m) {
    TruncatedSeries<R> r(m.order());
    for (int n = 0; n <= m.order(); ++n) r.coeff(n) = m.coeff(n).eval_at_one();
    return r;
}

}  // namespace blockmap

#endif

#ifndef BLOCKMAP_SERIES_HPP
#define BLOCKMAP_SERIES_HPP

#include <blockmap/numeric.hpp>
#include <blockmap/polynomial.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace blockmap {

// Power series truncated at a fixed order N, coefficients in an exact ring R.
// Arithmetic between two series requires identical truncation order; the
// result carries the same order. No floating point enters any operation.
template <typename R>
class TruncatedSeries {
  public:
    using ring = R;

    explicit TruncatedSeries(int order) : c_(order + 1, R(0)) {
        if (order < 0) throw std::invalid_argument("series order must be >= 0");
    }
    TruncatedSeries(int order, std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (order < 0 || c_.size() != static_cast<std::size_t>(order) + 1)
            throw std::invalid_argument("coefficient count must equal order+1");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const R& coeff(int n) const { return c_.at(n); }
    R& coeff(int n) { return c_.at(n); }
    const std::vector<R>& coeffs() const { return c_; }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

    // naive convolution, truncated at the common order
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_same(b);
        const int N = a.order();
        TruncatedSeries r(N);
        for (int i = 0; i <= N; ++i) {
            if (a.c_[i] == R(0)) continue;
            for (int j = 0; j + i <= N; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    template <typename S>
    TruncatedSeries& scale(const S& s) {
        for (auto& x : c_) x = x * s;
        return *this;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.c_ == b.c_;
    }

    // formal derivative; order drops by one
    TruncatedSeries formal_derivative() const {
        if (order() == 0) return TruncatedSeries(0);
        TruncatedSeries r(order() - 1);
        for (int n = 1; n <= order(); ++n) r.c_[n - 1] = c_[n] * R(n);
        return r;
    }

    // (2g d/dg + 1): coefficient n maps to (2n+1) times itself
    TruncatedSeries point_marked() const {
        TruncatedSeries r = *this;
        for (int n = 0; n <= order(); ++n) r.c_[n] = c_[n] * R(2 * n + 1);
        return r;
    }

    template <typename T>
    T eval(const T& x) const {
        T acc(0);
        for (int n = order(); n >= 0; --n) acc = acc * x + coeff_as<T>(c_[n]);
        return acc;
    }

  private:
    template <typename T, typename K>
    static T coeff_as(const K& c) {
        if constexpr (std::is_same_v<T, K>)
            return c;
        else if constexpr (std::is_same_v<T, double>)
            return c.template convert_to<double>();
        else if constexpr (std::is_same_v<T, Real>)
            return to_real(c);
        else
            return T(c);
    }

    void check_same(const TruncatedSeries& o) const {
        if (order() != o.order())
            throw std::invalid_argument("series truncation orders differ");
    }

    std::vector<R> c_;
};

// g * M(g)^2, the substitution argument of the block series; same order as M.
template <typename R>
TruncatedSeries<R> shifted_square(const TruncatedSeries<R>& m) {
    const int N = m.order();
    TruncatedSeries<R> t(N);
    for (int n = 1; n <= N; ++n) {
        R acc(0);
        for (int k = 0; k <= n - 1; ++k) acc += m.coeff(k) * m.coeff(n - 1 - k);
        t.coeff(n) = acc;
    }
    return t;
}

}  // namespace blockmap

#endif

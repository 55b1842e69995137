#ifndef BLOCKMAP_NUMERIC_HPP
#define BLOCKMAP_NUMERIC_HPP

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace blockmap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Working float for everything transcendental: 50 significant digits so that
// p-fold iterated differences of near-polynomial sequences keep ~40 digits.
using Real = boost::multiprecision::cpp_dec_float_50;

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline BigInt catalan(int n) { return binomial(2 * n, n) / (n + 1); }

template <typename T>
T pi_const() {
    return boost::math::constants::pi<T>();
}

inline Real to_real(const BigInt& x) { return Real(x); }
inline Real to_real(const Rational& x) {
    return Real(boost::multiprecision::numerator(x)) /
           Real(boost::multiprecision::denominator(x));
}
inline Real to_real(const Real& x) { return x; }
inline Real to_real(double x) { return Real(x); }
inline Real to_real(long x) { return Real(x); }

}  // namespace blockmap

#endif

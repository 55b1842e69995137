#ifndef BLOCKMAP_POLYNOMIAL_HPP
#define BLOCKMAP_POLYNOMIAL_HPP

#include <blockmap/numeric.hpp>

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace blockmap {

template <typename C>
class Polynomial;

template <typename T>
struct is_polynomial : std::false_type {};
template <typename C>
struct is_polynomial<Polynomial<C>> : std::true_type {};

// Dense univariate polynomial over a commutative ring C. Trailing zeros are
// trimmed so that equality is canonical; the zero polynomial has no stored
// coefficients. Nesting Polynomial<Polynomial<BigInt>> gives the bivariate
// ring used by component-weighted meanders (outer variable u, inner q).
template <typename C>
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(long v) {  // NOLINT: implicit by design, mirrors ring literals
        if (!(C(v) == C(0))) c_.push_back(C(v));
    }
    explicit Polynomial(C v) {
        if (!(v == C(0))) c_.push_back(std::move(v));
    }
    Polynomial(std::initializer_list<C> cs) : c_(cs) { trim(); }
    explicit Polynomial(std::vector<C> cs) : c_(std::move(cs)) { trim(); }

    static Polynomial monomial(C coeff, int power) {
        Polynomial p;
        if (coeff == C(0)) return p;
        p.c_.assign(power + 1, C(0));
        p.c_[power] = std::move(coeff);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    C coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : C(0);
    }
    const std::vector<C>& coeffs() const { return c_; }

    Polynomial& operator+=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == C(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Polynomial& a, const C& s) {
        Polynomial r = a;
        if (s == C(0)) return Polynomial();
        for (auto& x : r.c_) x *= s;
        r.trim();
        return r;
    }
    friend Polynomial operator*(const C& s, const Polynomial& a) { return a * s; }

    // multiply by the ring variable (shift exponents up by one)
    Polynomial shifted_up() const {
        if (is_zero()) return *this;
        Polynomial r;
        r.c_.reserve(c_.size() + 1);
        r.c_.push_back(C(0));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) {
        return !(a == b);
    }

    template <typename T>
    T eval(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + eval_coeff<T>(*it, x);
        return acc;
    }

    // collapse the outer variable at 1 (sum of coefficients)
    C eval_at_one() const {
        C acc(0);
        for (const auto& x : c_) acc += x;
        return acc;
    }

    std::string str(const char* var = "u") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == C(0)) continue;
            if (!first) os << " + ";
            first = false;
            os << term_str(c_[i], var, static_cast<int>(i));
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        return os << p.str();
    }

  private:
    template <typename T, typename K>
    static T eval_coeff(const K& c, const T&) {
        if constexpr (std::is_same_v<T, K>)
            return c;
        else if constexpr (std::is_same_v<K, BigInt> || std::is_same_v<K, Rational>) {
            if constexpr (std::is_same_v<T, double>)
                return c.template convert_to<double>();
            else if constexpr (std::is_same_v<T, Real>)
                return to_real(c);
            else
                return T(c);
        } else {
            return T(c);
        }
    }
    template <typename T, typename K>
    static T eval_coeff(const Polynomial<K>& c, const T& x) = delete;

    template <typename K>
    static std::string term_str(const K& c, const char* var, int i) {
        std::ostringstream os;
        std::string cs;
        if constexpr (is_polynomial<K>::value) {
            cs = "(" + c.str("q") + ")";
        } else {
            std::ostringstream tmp;
            tmp << c;
            cs = tmp.str();
        }
        if (i == 0) {
            os << cs;
        } else {
            if (!(c == K(1))) os << cs << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

    void trim() {
        while (!c_.empty() && c_.back() == C(0)) c_.pop_back();
    }

    std::vector<C> c_;
};

using UPoly = Polynomial<BigInt>;               // integer polynomial in u
using QPoly = Polynomial<BigInt>;               // integer polynomial in q
using UQPoly = Polynomial<Polynomial<BigInt>>;  // u outside, q inside

// Evaluate a u-polynomial whose coefficients are q-polynomials at (u, q).
template <typename T>
T eval_uq(const UQPoly& p, const T& u, const T& q) {
    T acc(0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * u + p.coeff(i).eval(q);
    return acc;
}

// Collapse q at a numeric value, leaving a polynomial in u over T.
inline UPoly collapse_q_at_one(const UQPoly& p) {
    std::vector<BigInt> cs;
    cs.reserve(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) cs.push_back(p.coeff(i).eval_at_one());
    return UPoly(std::move(cs));
}

}  // namespace blockmap

#endif

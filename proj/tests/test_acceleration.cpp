#include <blockmap/acceleration.hpp>
#include <blockmap/models.hpp>
#include <blockmap/substitution.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace blockmap;

namespace {

double dbl(const Real& x) { return x.convert_to<double>(); }

SequenceWindow synthetic_window(double rho, double delta, int N, double eta = 0.0) {
    SequenceWindow w;
    w.label = "synthetic";
    w.values.reserve(N + 1);
    w.values.push_back(Real(1));  // t_0 unused by the estimators
    for (int n = 1; n <= N; ++n) {
        Real t = pow(Real(rho), Real(-n)) * pow(Real(n), Real(-delta));
        if (eta != 0.0) t *= pow(log(Real(n)), Real(-eta));
        w.values.push_back(t);
    }
    return w;
}

}  // namespace

TEST_CASE("delta sequence on exact inputs") {
    SECTION("pure geometric has delta_n = 0") {
        std::vector<Real> t;
        for (int n = 0; n <= 12; ++n) t.push_back(pow(Real(2), Real(-n)));
        auto d = delta_sequence(t);
        for (const auto& v : d.values) CHECK(abs(v) < 1e-45);
    }
    SECTION("t_n = 1/n^2: delta_10 = 241/144") {
        std::vector<Real> t;
        t.push_back(Real(1));
        for (int n = 1; n <= 14; ++n) t.push_back(Real(1) / (Real(n) * Real(n)));
        auto d = delta_sequence(t);
        CHECK(abs(d.at(10) - Real(241) / 144) < 1e-40);
    }
    SECTION("rejects nonpositive terms") {
        std::vector<Real> t = {Real(1), Real(1), Real(0), Real(1), Real(1)};
        CHECK_THROWS_AS(delta_sequence(t), numerical_error);
    }
}

TEST_CASE("acceleration operator") {
    SECTION("delta_n = 2 + 1/n is resolved exactly at p = 1") {
        IndexedSequence d;
        d.first_n = 1;
        for (int n = 1; n <= 10; ++n) d.values.push_back(2 + Real(1) / n);
        auto a = accelerate(d, 1);
        for (const auto& v : a.values) CHECK(abs(v - 2) < 1e-45);
    }
    SECTION("constants are fixed points for every p") {
        IndexedSequence d;
        d.first_n = 1;
        for (int n = 1; n <= 12; ++n) d.values.push_back(Real(7));
        for (int p = 1; p <= 4; ++p) {
            auto a = accelerate(d, p);
            for (const auto& v : a.values) CHECK(abs(v - 7) < 1e-40);
        }
    }
    SECTION("p = 0 returns the sequence unchanged") {
        IndexedSequence d;
        d.first_n = 3;
        d.values = {Real(1), Real(2)};
        auto a = accelerate(d, 0);
        CHECK(a.first_n == 3);
        CHECK(a.values == d.values);
    }
    SECTION("insufficient length throws") {
        IndexedSequence d;
        d.first_n = 1;
        d.values = {Real(1), Real(2)};
        CHECK_THROWS_AS(accelerate(d, 2), std::invalid_argument);
    }
}

TEST_CASE("synthetic exponent recovery and monotone improvement") {
    auto w = synthetic_window(0.3, 1.75, 40);
    const double target = 1.75;
    double prev_err = 1e9;
    for (int p = 1; p <= 5; ++p) {
        auto r = np_estimate(w, 40, p);
        const double err = std::abs(dbl(r.estimate) - target);
        CHECK(err <= prev_err + 1e-12);
        prev_err = err;
    }
    auto r5 = np_estimate(w, 40, 5);
    CHECK(std::abs(dbl(r5.estimate) - target) < 1e-6);
    // report bookkeeping: estimate = delta~^{(p)}_{N-2-p}
    CHECK(r5.delta_tilde.at(40 - 2 - 5) == r5.estimate);
    CHECK(r5.N == 40);
    CHECK(r5.p == 5);
}

TEST_CASE("log-corrected estimation") {
    // t_n = rho^{-n} n^{-3/2} (log n)^{-1/2}: eta = 1/2 recovers 3/2, eta = 0
    // carries a visible systematic bias
    auto w = synthetic_window(0.25, 1.5, 50, 0.5);
    w.log_power_eta = 0.5;
    auto good = np_estimate(w, 50, 5);
    CHECK(std::abs(dbl(good.estimate) - 1.5) < 0.02);
    w.log_power_eta = 0.0;
    auto biased = np_estimate(w, 50, 5);
    CHECK(std::abs(dbl(biased.estimate) - 1.5) > 0.02);
}

TEST_CASE("np_estimate input validation") {
    auto w = synthetic_window(0.5, 1.0, 20);
    CHECK_THROWS_AS(np_estimate(w, 20, 0), std::invalid_argument);
    CHECK_THROWS_AS(np_estimate(w, 20, 11), std::invalid_argument);
    CHECK_THROWS_AS(np_estimate(w, 20, 17), std::invalid_argument);
    CHECK_THROWS_AS(np_estimate(w, 25, 5), std::invalid_argument);
}

TEST_CASE("quads (50,5)-estimate reproduces the exponent plateau") {
    const int N = 50;
    std::vector<BigInt> b(N + 1, 0);
    for (int j = 1; j <= N; ++j) b[j] = quad_block_count(j);
    auto m = weighted_map_series(b, N);

    auto window_at = [&](const Real& u) {
        SequenceWindow w;
        w.label = "quad m_n(u)";
        w.values = evaluate_u(m, u);
        return w;
    };
    // u = 1: subcritical value 5/2
    auto r1 = np_estimate(window_at(Real(1)), N, 5);
    CHECK(std::abs(dbl(r1.estimate) - 2.5) < 0.02);
    // u = 9/5: critical value 5/3
    auto rc = np_estimate(window_at(Real(9) / 5), N, 5);
    CHECK(std::abs(dbl(rc.estimate) - 5.0 / 3.0) < 0.05);
    // u = 3: supercritical 3/2
    auto rs = np_estimate(window_at(Real(3)), N, 5);
    CHECK(std::abs(dbl(rs.estimate) - 1.5) < 0.05);
}

TEST_CASE("growth rate estimates") {
    SECTION("quads: g1 = 1/12") {
        SequenceWindow w;
        for (int n = 0; n <= 50; ++n)
            w.values.push_back(to_real(closed_form_count(Family::QuadSimpleBlocks, n)));
        CHECK(std::abs(dbl(growth_rate_estimate(w, 5)) - 1.0 / 12.0) < 1e-6);
    }
    SECTION("meanders: g1 = 1/16") {
        SequenceWindow w;
        for (int n = 0; n <= 50; ++n)
            w.values.push_back(to_real(closed_form_count(Family::Meander, n)));
        CHECK(std::abs(dbl(growth_rate_estimate(w, 5)) - 1.0 / 16.0) < 1e-5);
    }
    SECTION("window too short") {
        SequenceWindow w;
        w.values = {Real(1), Real(1), Real(1)};
        CHECK_THROWS_AS(growth_rate_estimate(w, 5), std::invalid_argument);
    }
}

TEST_CASE("u_cr extrapolation") {
    SECTION("quads from 50 closed-form terms: 9/5 within 1e-4") {
        std::vector<Real> m1;
        for (int n = 0; n <= 50; ++n)
            m1.push_back(to_real(closed_form_count(Family::QuadSimpleBlocks, n)));
        const Real est = ucrit_extrapolate(m1, Real(1) / 12, 0.5, 5);
        CHECK(std::abs(dbl(est) - 1.8) < 1e-4);
    }
    SECTION("the raw sequence is monotone decreasing toward u_cr") {
        std::vector<Real> m1;
        for (int n = 0; n <= 30; ++n)
            m1.push_back(to_real(closed_form_count(Family::Meander, n)));
        auto seq = ucrit_sequence(m1, Real(1) / 16);
        for (std::size_t i = 0; i + 1 < seq.values.size(); ++i)
            CHECK(seq.values[i] > seq.values[i + 1]);
        // 30 meander terms with the alpha = 2 abscissa get close to the exact value
        const Real pi = pi_const<Real>();
        const Real exact = pi * (pi - 2) / (30 * pi - 3 * pi * pi - 64);
        const Real est = ucrit_extrapolate(m1, Real(1) / 16, 1.0, 5);
        CHECK(std::abs(dbl(est - exact)) < 1e-4);
    }
    SECTION("g1 <= 0 and short tables are rejected") {
        std::vector<Real> m1(20, Real(1));
        CHECK_THROWS_AS(ucrit_extrapolate(m1, Real(0)), std::invalid_argument);
        std::vector<Real> tiny(5, Real(1));
        CHECK_THROWS_AS(ucrit_extrapolate(tiny, Real(1)), std::invalid_argument);
    }
}

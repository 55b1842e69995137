#include <blockmap/models.hpp>
#include <blockmap/substitution.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace blockmap;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = (std::filesystem::temp_directory_path() /
                ("blockmap_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++) + ".txt")).string();
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("closed-form counts") {
    CHECK(closed_form_count(Family::QuadSimpleBlocks, 0) == 1);
    CHECK(closed_form_count(Family::QuadSimpleBlocks, 2) == 9);
    CHECK(closed_form_count(Family::CubicHamiltonian, 2) == 10);
    CHECK(closed_form_count(Family::CubicOpenPath, 2) == 32);
    CHECK(closed_form_count(Family::Meander, 2) == 4);
    for (Family f : {Family::QuadSimpleBlocks, Family::CubicHamiltonian,
                     Family::CubicOpenPath, Family::Meander})
        CHECK(closed_form_count(f, 0) == 1);
    CHECK_THROWS_AS(closed_form_count(Family::BicubicHamiltonian, 3), validation_error);
}

TEST_CASE("quad block counts and §-table cross-check via closed form") {
    CHECK(quad_block_count(1) == 2);
    CHECK(quad_block_count(2) == 1);
    CHECK(quad_block_count(3) == 2);
    CHECK(quad_block_count(4) == 6);
    // m^{(1)} = 1, 2, 9, 54, 378
    CHECK(closed_form_count(Family::QuadSimpleBlocks, 3) == 54);
    CHECK(closed_form_count(Family::QuadSimpleBlocks, 4) == 378);
}

TEST_CASE("oracle equivalence: cubic series equals brute force (small n)") {
    const int n_max = 6;
    auto brute = brute_force_weighted_counts(Family::CubicHamiltonian, n_max);
    auto m1 = closed_form_series(Family::CubicHamiltonian, n_max);
    auto br = extract_block_coefficients(m1, n_max);
    std::vector<BigInt> b(n_max + 1);
    for (int j = 0; j <= n_max; ++j) b[j] = boost::multiprecision::numerator(br[j]);
    auto m = weighted_map_series(b, n_max);
    for (int n = 0; n <= n_max; ++n) CHECK(m.coeff(n) == brute[n]);
}

TEST_CASE("oracle equivalence: meander series equals brute force (small n)") {
    const int n_max = 6;
    auto brute = brute_force_weighted_counts(Family::Meander, n_max);
    auto m1 = closed_form_series(Family::Meander, n_max);
    auto br = extract_block_coefficients(m1, n_max);
    std::vector<BigInt> b(n_max + 1);
    for (int j = 0; j <= n_max; ++j) b[j] = boost::multiprecision::numerator(br[j]);
    auto m = weighted_map_series(b, n_max);
    for (int n = 0; n <= n_max; ++n) CHECK(m.coeff(n) == brute[n]);
}

TEST_CASE("oracle equivalence: open-path correlator equals brute force (small n)") {
    const int n_max = 5;
    auto brute = brute_force_weighted_counts(Family::CubicOpenPath, n_max);
    auto m1 = closed_form_series(Family::CubicHamiltonian, n_max);
    auto s1 = closed_form_series(Family::CubicOpenPath, n_max);
    auto ct = extract_outer_coefficients(s1, m1, 1);
    auto br = extract_block_coefficients(m1, n_max);
    std::vector<Rational> b(br.begin(), br.end());
    auto mu = weighted_map_series(b, n_max);
    auto su = compose_outer(ct, mu, 1);
    for (int n = 0; n <= n_max; ++n) {
        UPoly expect;
        for (int j = 0; j <= su.coeff(n).degree(); ++j) {
            const Rational c = su.coeff(n).coeff(j);
            REQUIRE(boost::multiprecision::denominator(c) == 1);
            expect += UPoly::monomial(boost::multiprecision::numerator(c), j);
        }
        CHECK(expect == brute[n]);
    }
}

TEST_CASE("meander-q brute force: q = 1 collapse and sum rules") {
    const int n_max = 5;
    auto tq = brute_force_weighted_counts_q(n_max);
    auto tu = brute_force_weighted_counts(Family::Meander, n_max);
    for (int n = 0; n <= n_max; ++n) {
        CHECK(collapse_q_at_one(tq[n]) == tu[n]);
        // total over u and q weights equals Cat(n)^2
        BigInt total = 0;
        for (int j = 0; j <= tq[n].degree(); ++j) total += tq[n].coeff(j).eval_at_one();
        CHECK(total == closed_form_count(Family::Meander, n));
    }
    // spec example: meander n = 2 components at u = 1: m_{2,1} = 2, m_{2,2} = 2
    QPoly q_at_2;
    for (int j = 0; j <= tq[2].degree(); ++j) q_at_2 += tq[2].coeff(j);
    CHECK(q_at_2 == QPoly{0, 2, 2});
}

TEST_CASE("meander component table: sum rule and known single-loop counts") {
    const int n_max = 6;
    auto table = meander_component_table(n_max);
    const BigInt meandric[] = {0, 1, 2, 8, 42, 262, 1828};
    for (int n = 1; n <= n_max; ++n) {
        BigInt total = 0;
        for (int k = 1; k <= n; ++k) total += table[n][k];
        CHECK(total == catalan(n) * catalan(n));
        CHECK(table[n][1] == meandric[n]);
    }
    CHECK(table[2][1] == 2);
    CHECK(table[2][2] == 2);
}

TEST_CASE("brute-force counts collapse to closed forms at u = 1") {
    for (Family f : {Family::CubicHamiltonian, Family::Meander}) {
        auto brute = brute_force_weighted_counts(f, 5);
        for (int n = 0; n <= 5; ++n)
            CHECK(brute[n].eval_at_one() == closed_form_count(f, n));
    }
}

TEST_CASE("external file loading and validation") {
    SECTION("accepts a correct meander component table") {
        std::string text = "# A008828-style rows\n";
        auto table = meander_component_table(5);
        for (int k = 1; k <= 5; ++k)
            for (int n = k; n <= 5; ++n)
                if (table[n].size() > static_cast<std::size_t>(k) && table[n][k] != 0)
                    text += std::to_string(n) + " " + std::to_string(k) + " " +
                            table[n][k].str() + "\n";
        TempFile f(text);
        auto t = load_external_counts(Family::MeanderQ, f.path, 5);
        CHECK(t.component_resolved);
        CHECK(t.max_n() == 5);
    }
    SECTION("rejects a corrupted table") {
        TempFile f("1 1 1\n2 1 3\n2 2 2\n");  // m_{2,1} should be 2
        CHECK_THROWS_AS(load_external_counts(Family::MeanderQ, f.path, 4), validation_error);
    }
    SECTION("rejects an empty file") {
        TempFile f("# nothing\n");
        CHECK_THROWS_AS(load_external_counts(Family::MeanderQ, f.path), validation_error);
    }
    SECTION("accepts correct bicubic counts") {
        auto brute = brute_force_weighted_counts(Family::BicubicHamiltonian, 5);
        std::string text;
        for (int n = 1; n <= 5; ++n)
            text += std::to_string(n) + " " + brute[n].eval_at_one().str() + "\n";
        TempFile f(text);
        auto t = load_external_counts(Family::BicubicHamiltonian, f.path, 5);
        CHECK_FALSE(t.component_resolved);
    }
    SECTION("rejects wrong bicubic counts") {
        TempFile f("1 1\n2 8\n3 41\n");
        CHECK_THROWS_AS(load_external_counts(Family::BicubicHamiltonian, f.path, 3),
                        validation_error);
    }
}

TEST_CASE("u1 closed-form data") {
    auto d = quad_u1_data();
    CHECK(d.g1 == Rational(1, 12));
    CHECK(d.M1 == Rational(4, 3));
    CHECK(d.M1prime == Rational(16));
    CHECK(d.t_cr == Rational(4, 27));
    auto dr = u1_data<Real>(Family::QuadSimpleBlocks);
    CHECK(abs(dr.t_cr - Real(4) / 27) < 1e-45);
    // t_cr = g1 M1^2 for every family with closed forms
    for (Family f : {Family::QuadSimpleBlocks, Family::CubicHamiltonian, Family::Meander}) {
        auto u1 = u1_data<Real>(f);
        CHECK(abs(u1.t_cr - u1.g1 * u1.M1 * u1.M1) < 1e-45);
    }
}

TEST_CASE("model specs bind sane defaults") {
    auto quad = ModelSpec::for_family(Family::QuadSimpleBlocks);
    CHECK(quad.count_source == CountSource::ClosedForm);
    CHECK(quad.default_order == 50);
    auto bic = ModelSpec::for_family(Family::BicubicHamiltonian);
    CHECK(bic.count_source == CountSource::ExternalFile);
    CHECK(bic.brute_force_cap == 10);
    auto me = ModelSpec::for_family(Family::Meander);
    CHECK(me.brute_force_cap == kDefaultMeanderCap);
}

TEST_CASE("family names round-trip") {
    for (Family f : {Family::QuadSimpleBlocks, Family::CubicHamiltonian,
                     Family::CubicOpenPath, Family::BicubicHamiltonian,
                     Family::Meander, Family::MeanderQ})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_FALSE(family_from_name("nope").has_value());
}

// blockmap: exact series, critical data, exponent estimates and the critical
// distance profile for block-weighted map families.
//
// Subcommands:
//   coeffs    coefficient tables (CSV on stdout)
//   critical  critical constants and exponents (JSON on stdout)
//   estimate  (N,p)-estimates over u (JSON report; optional CSV sweep)
//   profile   critical distance profile curve (CSV; optional checks)
//
// Exit codes: 0 ok, 1 usage, 2 data validation, 3 numerical failure.

#include <blockmap/acceleration.hpp>
#include <blockmap/arch_systems.hpp>
#include <blockmap/criticality.hpp>
#include <blockmap/models.hpp>
#include <blockmap/profile.hpp>
#include <blockmap/substitution.hpp>
#include <blockmap/table_io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace blockmap;
using json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double as_double(const Real& x) { return x.convert_to<double>(); }

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path == "-") return std::cout;
    file.open(path);
    if (!file) throw validation_error("cannot open output file: " + path);
    return file;
}

Family parse_family(const std::string& name) {
    auto f = family_from_name(name);
    if (!f) throw CLI::ValidationError("--model", "unknown model: " + name);
    return *f;
}

// ---- data assembly -------------------------------------------------------

struct SeriesData {
    TruncatedSeries<UPoly> mu;        // m_n^{(u)}
    std::vector<BigInt> blocks;       // b_j
    std::string source;               // closed-form / brute-force / external-file
};

std::vector<BigInt> to_bigint(const std::vector<Rational>& r) {
    std::vector<BigInt> b(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (boost::multiprecision::denominator(r[i]) != 1)
            throw validation_error("block coefficients left the integer ring");
        b[i] = boost::multiprecision::numerator(r[i]);
    }
    return b;
}

// m^{(1)} table for families without closed forms, through n_max
std::vector<BigInt> bicubic_counts(int n_max, const std::string& counts_file,
                                   Cache& cache, std::string& source) {
    if (!counts_file.empty()) {
        auto t = load_external_counts(Family::BicubicHamiltonian, counts_file,
                                      std::min(n_max, 8));
        source = "external-file";
        std::vector<BigInt> m1(t.max_n() + 1);
        m1[0] = 1;
        for (const auto& [n, v] : t.plain) m1[n] = v;
        return m1;
    }
    source = "brute-force";
    const std::string key = "bicubic-m1-n" + std::to_string(n_max);
    std::string payload;
    if (cache.load(key, payload)) {
        auto table = deserialize_upoly_table(payload, n_max);
        std::vector<BigInt> m1(n_max + 1);
        for (int n = 0; n <= n_max; ++n) m1[n] = table[n].eval_at_one();
        return m1;
    }
    auto table = brute_force_weighted_counts(Family::BicubicHamiltonian, n_max);
    cache.store(key, serialize_upoly_table(table));
    std::vector<BigInt> m1(n_max + 1);
    for (int n = 0; n <= n_max; ++n) m1[n] = table[n].eval_at_one();
    return m1;
}

SeriesData series_for(Family f, int N, const std::string& counts_file, Cache& cache) {
    SeriesData d{TruncatedSeries<UPoly>(0), {}, "closed-form"};
    switch (f) {
        case Family::QuadSimpleBlocks: {
            d.blocks.assign(N + 1, 0);
            for (int j = 1; j <= N; ++j) d.blocks[j] = quad_block_count(j);
            break;
        }
        case Family::CubicHamiltonian:
        case Family::Meander: {
            d.blocks = to_bigint(extract_block_coefficients(closed_form_series(f, N), N));
            break;
        }
        case Family::BicubicHamiltonian: {
            auto m1 = bicubic_counts(std::min(N, 10), counts_file, cache, d.source);
            const int order = std::min<int>(N, static_cast<int>(m1.size()) - 1);
            TruncatedSeries<Rational> s(order);
            for (int n = 0; n <= order; ++n) s.coeff(n) = Rational(m1[n]);
            d.blocks = to_bigint(extract_block_coefficients(s, order));
            N = order;
            break;
        }
        default:
            throw validation_error("no u-polynomial series for this model");
    }
    d.mu = weighted_map_series(d.blocks, N);
    return d;
}

// m^{(1)}(q) series in the q-polynomial ring (brute force or external file)
std::vector<QPoly> meander_q_counts(int n_max, const std::string& counts_file,
                                    Cache& cache, std::string& source) {
    if (!counts_file.empty()) {
        auto t = load_external_counts(Family::MeanderQ, counts_file, std::min(n_max, 8));
        if (!t.component_resolved)
            throw validation_error("meander-q needs a component-resolved table");
        source = "external-file";
        return t.q_polynomials(t.max_n());
    }
    source = "brute-force";
    const int upto = std::min(n_max, 8);
    const std::string key = "meander-mq-n" + std::to_string(upto);
    std::string payload;
    if (cache.load(key, payload)) {
        auto table = deserialize_uqpoly_table(payload, upto);
        std::vector<QPoly> m1(upto + 1);
        for (int n = 0; n <= upto; ++n) m1[n] = table[n].eval_at_one();
        return m1;
    }
    auto table = brute_force_weighted_counts_q(upto);
    cache.store(key, serialize_uqpoly_table(table));
    std::vector<QPoly> m1(upto + 1);
    for (int n = 0; n <= upto; ++n) m1[n] = table[n].eval_at_one();
    return m1;
}

// ---- coeffs --------------------------------------------------------------

int cmd_coeffs(Family f, const std::string& what, int n_max,
               const std::string& counts_file, const std::string& out_path) {
    Cache cache;
    std::ofstream file;
    std::ostream& out = open_output(out_path, file);

    if (what == "mu") {
        if (f == Family::MeanderQ) {
            std::string source;
            auto m1q = meander_q_counts(n_max, counts_file, cache, source);
            const int order = std::min<int>(n_max, static_cast<int>(m1q.size()) - 1);
            TruncatedSeries<QPoly> s(order);
            for (int n = 0; n <= order; ++n) s.coeff(n) = m1q[n];
            auto b = extract_block_coefficients(s, order);
            auto mu = weighted_map_series(b, order);
            out << "n,u_power,q_power,coefficient\n";
            for (int n = 0; n <= order; ++n)
                for (int j = 0; j <= mu.coeff(n).degree(); ++j)
                    for (int k = 0; k <= mu.coeff(n).coeff(j).degree(); ++k)
                        if (mu.coeff(n).coeff(j).coeff(k) != 0)
                            out << n << "," << j << "," << k << ","
                                << mu.coeff(n).coeff(j).coeff(k) << "\n";
            return 0;
        }
        auto d = series_for(f, n_max, counts_file, cache);
        out << "n,u_power,coefficient\n";
        for (int n = 0; n <= d.mu.order(); ++n)
            for (int j = 0; j <= d.mu.coeff(n).degree(); ++j)
                if (d.mu.coeff(n).coeff(j) != 0)
                    out << n << "," << j << "," << d.mu.coeff(n).coeff(j) << "\n";
        return 0;
    }
    if (what == "blocks" || what == "correlator") {
        auto d = series_for(f, n_max, counts_file, cache);
        if (what == "blocks") {
            out << "j,b_j\n";
            for (int j = 1; j <= n_max && j < static_cast<int>(d.blocks.size()); ++j)
                out << j << "," << d.blocks[j] << "\n";
        } else {
            auto c = correlator_from_blocks(d.blocks);
            out << "j,c_j\n";
            for (int j = 1; j <= n_max && j < static_cast<int>(c.size()); ++j)
                out << j << "," << c[j] << "\n";
        }
        return 0;
    }
    if (what == "s") {
        auto d = series_for(f, n_max, counts_file, cache);
        auto c = correlator_from_blocks(d.blocks);
        const int a = (f == Family::QuadSimpleBlocks) ? 0 : 2;
        auto s = compose_outer(c, d.mu, a);
        out << "n,u_power,coefficient\n";
        for (int n = 0; n <= s.order(); ++n)
            for (int j = 0; j <= s.coeff(n).degree(); ++j)
                if (s.coeff(n).coeff(j) != 0)
                    out << n << "," << j << "," << s.coeff(n).coeff(j) << "\n";
        return 0;
    }
    if (what == "open") {
        if (f != Family::CubicOpenPath)
            throw validation_error("--what open applies to the open model");
        auto m1 = closed_form_series(Family::CubicHamiltonian, n_max);
        auto s1 = closed_form_series(Family::CubicOpenPath, n_max);
        auto ct = extract_outer_coefficients(s1, m1, 1);
        auto b = extract_block_coefficients(m1, n_max);
        auto mu = weighted_map_series(b, n_max);
        auto su = compose_outer(ct, mu, 1);
        out << "n,u_power,coefficient\n";
        for (int n = 0; n <= su.order(); ++n)
            for (int j = 0; j <= su.coeff(n).degree(); ++j)
                if (!(su.coeff(n).coeff(j) == 0))
                    out << n << "," << j << ","
                        << boost::multiprecision::numerator(su.coeff(n).coeff(j)) << "\n";
        return 0;
    }
    if (what == "components") {
        if (f != Family::Meander && f != Family::MeanderQ)
            throw validation_error("--what components applies to meander models");
        const int upto = std::min(n_max, kDefaultMeanderCap);
        const std::string key = "meander-components-n" + std::to_string(upto);
        std::string payload;
        std::vector<std::vector<BigInt>> table;
        if (cache.load(key, payload)) {
            std::istringstream in(payload);
            table.assign(upto + 1, {});
            for (int n = 0; n <= upto; ++n) table[n].assign(n + 1, 0);
            int n, k;
            std::string v;
            while (in >> n >> k >> v) table.at(n).at(k) = BigInt(v);
        } else {
            table = meander_component_table(upto);
            std::ostringstream os;
            for (int n = 1; n <= upto; ++n)
                for (int k = 1; k <= n; ++k)
                    if (table[n][k] != 0) os << n << " " << k << " " << table[n][k] << "\n";
            cache.store(key, os.str());
        }
        out << "n,k,count\n";
        for (int n = 1; n <= upto; ++n)
            for (int k = 1; k <= n; ++k)
                if (table[n][k] != 0) out << n << "," << k << "," << table[n][k] << "\n";
        return 0;
    }
    throw CLI::ValidationError("--what", "unknown table: " + what);
}

// ---- critical ------------------------------------------------------------

json exponent_json(const ExponentSet<Real>& e) {
    json j;
    j["c"] = as_double(e.c);
    j["gamma"] = as_double(e.gamma);
    j["gamma_prime"] = as_double(e.gamma_prime);
    j["gamma_S"] = as_double(e.gamma_S);
    j["gamma_S_prime"] = as_double(e.gamma_S_prime);
    j["alpha"] = as_double(e.alpha);
    return j;
}

int cmd_critical(Family f, double q, const std::string& counts_file) {
    json rep;
    rep["model"] = family_name(f);
    rep["source"] = "closed-form";

    if (f == Family::BicubicHamiltonian) {
        if (counts_file.empty())
            throw validation_error(
                "bicubic has no closed form: supply --counts <file> with the "
                "m_n^{(1)} table (n up to 34)");
        auto t = load_external_counts(f, counts_file, 8);
        rep["source"] = "external-file";
        std::vector<Real> m1;
        m1.push_back(Real(1));
        for (const auto& [n, v] : t.plain) m1.push_back(to_real(v));
        SequenceWindow w;
        w.values = m1;
        const Real g1 = growth_rate_estimate(w, 5);
        const Real ucr = ucrit_extrapolate(m1, g1, (1 + std::sqrt(13.0)) / 6.0, 5);
        rep["g1"] = {{"value", as_double(g1)}, {"source", "external-file"}};
        rep["u_cr"] = {{"value", as_double(ucr)}, {"source", "external-file"}};
        auto e = lqg_exponents(Real(-1));
        rep["exponents"] = exponent_json(e);
        std::cout << rep.dump(2) << "\n";
        return 0;
    }
    if (f == Family::MeanderQ) {
        const Real c = meander_central_charge(Real(q));
        auto e = lqg_exponents(c);
        rep["q"] = q;
        rep["central_charge"] = as_double(c);
        rep["exponents"] = exponent_json(e);
        std::cout << rep.dump(2) << "\n";
        return 0;
    }

    auto cd = critical_data<Real>(f);
    json results;
    if (f == Family::QuadSimpleBlocks) {
        const auto dq = quad_u1_data();
        const Rational ucr = ucrit_from_u1_data(dq.g1, dq.M1, dq.M1prime);
        const Rational gc = gc_at_ucrit(dq.g1, dq.M1, dq.M1prime);
        results["u_cr"] = {{"exact", "9/5"}, {"value", as_double(cd.u_cr)},
                           {"source", "closed-form"}};
        results["g_c_at_ucrit"] = {{"exact", "25/432"}, {"value", as_double(cd.g_c_at_ucrit)},
                                   {"source", "closed-form"}};
        results["t_cr"] = {{"exact", "4/27"}, {"value", as_double(cd.t_cr)},
                           {"source", "closed-form"}};
        if (ucr != Rational(9, 5) || gc != Rational(25, 432))
            throw numerical_error("exact quadrangulation constants drifted");
    } else {
        results["u_cr"] = {{"value", as_double(cd.u_cr)}, {"source", "closed-form"}};
        results["g_c_at_ucrit"] = {{"value", as_double(cd.g_c_at_ucrit)},
                                   {"source", "closed-form"}};
        results["t_cr"] = {{"value", as_double(cd.t_cr)}, {"source", "closed-form"}};
    }
    results["g1"] = {{"value", as_double(cd.g1)}, {"source", "closed-form"}};
    results["M1_at_g1"] = {{"value", as_double(cd.M1_at_g1)}, {"source", "closed-form"}};
    results["M1prime_at_g1"] = {{"value", as_double(cd.M1prime_at_g1)},
                                {"source", "closed-form"}};
    rep["results"] = results;

    const Real c = f == Family::QuadSimpleBlocks ? Real(0) : Real(-2);
    auto e = lqg_exponents(c);
    rep["exponents"] = exponent_json(e);

    json checks = json::array();
    auto add_check = [&](const std::string& name, const Real& resid, double tol) {
        checks.push_back({{"name", name}, {"residual", as_double(abs(resid))},
                          {"pass", abs(resid) < tol}});
    };
    add_check("gamma*gamma_prime=4", e.gamma * e.gamma_prime - 4, 1e-12);
    add_check("(1-gamma_S)(1-gamma_S_prime)=1",
              (1 - e.gamma_S) * (1 - e.gamma_S_prime) - 1, 1e-12);
    add_check("g_cr(u_cr)=g_c(u_cr)", cd.g_cr_of_u(cd.u_cr) - cd.g_c_at_ucrit, 1e-10);
    if (f == Family::QuadSimpleBlocks) {
        add_check("quartic residual at (9/5,25/432,8/5)",
                  Real(mu_quartic_residual(Real(9) / 5, Real(25) / 432, Real(8) / 5)), 1e-30);
        auto B = [](Real t) { return quad_block_B(t); };
        auto Bp = [](Real t) { return quad_block_Bprime(t); };
        auto [tc, gc2] = solve_tc(cd.u_cr, B, Bp, cd.t_cr);
        add_check("solve_tc(u_cr) returns t_cr", tc - cd.t_cr, 1e-10);
    }
    rep["checks"] = checks;
    std::cout << rep.dump(2) << "\n";
    return 0;
}

// ---- estimate --------------------------------------------------------------

int cmd_estimate(Family f, const std::string& what, int N, int p, double eta,
                 std::vector<double> us, bool at_ucrit, double q,
                 const std::string& counts_file, const std::string& csv_path,
                 bool with_trail) {
    Cache cache;
    json rep;
    rep["model"] = family_name(f);
    rep["what"] = what;
    rep["N"] = N;
    rep["p"] = p;
    rep["eta"] = eta;

    std::string source = "closed-form";
    // per-u coefficient evaluation
    std::function<std::vector<Real>(Real)> values_at;
    Real ucrit(0);
    if (f == Family::MeanderQ) {
        std::string src;
        auto m1q = meander_q_counts(N, counts_file, cache, src);
        source = src;
        const int order = std::min<int>(N, static_cast<int>(m1q.size()) - 1);
        TruncatedSeries<QPoly> s(order);
        for (int n = 0; n <= order; ++n) s.coeff(n) = m1q[n];
        auto b = extract_block_coefficients(s, order);
        auto mu = weighted_map_series(b, order);
        N = order;
        const Real qr(q);
        values_at = [mu, qr](Real u) { return evaluate_uq(mu, u, qr); };
        rep["q"] = q;
        // u_cr for meander-q is not known in closed form
        if (at_ucrit) throw validation_error("--at-ucrit unsupported for meander-q");
    } else if (what == "open") {
        auto m1 = closed_form_series(Family::CubicHamiltonian, N);
        auto s1 = closed_form_series(Family::CubicOpenPath, N);
        auto ct = extract_outer_coefficients(s1, m1, 1);
        auto b = extract_block_coefficients(m1, N);
        auto mu = weighted_map_series(b, N);
        auto su = compose_outer(ct, mu, 1);
        values_at = [su](Real u) { return evaluate_u(su, u); };
        ucrit = critical_data<Real>(Family::CubicHamiltonian).u_cr;
    } else {
        auto d = series_for(f, N, counts_file, cache);
        source = d.source;
        N = d.mu.order();
        if (what == "mu") {
            auto mu = d.mu;
            values_at = [mu](Real u) { return evaluate_u(mu, u); };
        } else if (what == "s") {
            auto c = correlator_from_blocks(d.blocks);
            const int a = (f == Family::QuadSimpleBlocks) ? 0 : 2;
            auto s = compose_outer(c, d.mu, a);
            values_at = [s](Real u) { return evaluate_u(s, u); };
        } else {
            throw CLI::ValidationError("--what", "unknown estimate target: " + what);
        }
        if (f == Family::QuadSimpleBlocks || f == Family::CubicHamiltonian ||
            f == Family::Meander)
            ucrit = critical_data<Real>(f).u_cr;
    }
    rep["source"] = source;
    if (N - 2 - p < 1)
        throw validation_error("table too short for the requested (N,p)");

    std::vector<std::pair<std::string, Real>> points;
    for (double u : us) points.emplace_back(fmt17(u), Real(u));
    if (at_ucrit) {
        if (ucrit == 0) throw validation_error("model has no closed-form u_cr");
        points.emplace_back("u_cr", ucrit);
    }
    if (points.empty()) throw validation_error("no u values requested");

    json rows = json::array();
    std::ostringstream csv;
    csv << "u,estimate\n";
    for (auto& [ulabel, u] : points) {
        SequenceWindow w;
        w.label = std::string(family_name(f)) + " " + what;
        w.log_power_eta = eta;
        w.values = values_at(u);
        auto r = np_estimate(w, N, p);
        json row;
        row["u"] = ulabel == "u_cr" ? json(as_double(u)) : json(std::stod(ulabel));
        if (ulabel == "u_cr") row["at"] = "u_cr";
        row["estimate"] = as_double(r.estimate);
        if (with_trail) {
            json trail = json::array();
            for (const auto& v : r.delta_tilde.values) trail.push_back(as_double(v));
            row["delta_tilde"] = trail;
            row["first_n"] = r.delta_tilde.first_n;
        }
        rows.push_back(row);
        csv << fmt17(as_double(u)) << "," << fmt17(as_double(r.estimate)) << "\n";
    }
    rep["estimates"] = rows;
    if (!csv_path.empty()) {
        std::ofstream file;
        std::ostream& out = open_output(csv_path, file);
        out << csv.str();
    }
    std::cout << rep.dump(2) << "\n";
    return 0;
}

// ---- profile ----------------------------------------------------------------

int cmd_profile(double r_max, int points, bool crosscheck, bool fisher,
                const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_output(out_path, file);
    auto curve = profile::profile_curve(r_max, points, crosscheck);
    out << (crosscheck ? "r,phi,rho,phi_contour\n" : "r,phi,rho\n");
    for (std::size_t i = 0; i < curve.r.size(); ++i) {
        out << fmt17(curve.r[i]) << "," << fmt17(curve.phi[i]) << ","
            << fmt17(curve.rho[i]);
        if (crosscheck) out << "," << fmt17(curve.phi_contour[i]);
        out << "\n";
    }
    // summary lines ride along as CSV comments so one stream stays parseable
    out << "# phi_at_20," << fmt17(profile::phi(20.0)) << "\n";
    out << "# small_r_constant," << fmt17(profile::small_r_constant()) << "\n";
    out << "# phi_small_r_ratio," << fmt17(profile::phi(0.05) / (0.05 * 0.05)) << "\n";
    if (crosscheck) {
        double worst = 0;
        for (std::size_t i = 1; i < curve.r.size(); ++i)
            worst = std::max(worst, std::abs(curve.phi[i] - curve.phi_contour[i]));
        out << "# crosscheck_max_deviation," << fmt17(worst) << "\n";
    }
    if (fisher) {
        const double slope = profile::fisher_tail_exponent(2.5, 4.0);
        out << "# fisher_exponent," << fmt17(slope) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-weighted planar map toolkit"};
    app.require_subcommand(1);

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "emit coefficient tables as CSV");
    std::string c_model = "quad", c_what = "mu", c_counts, c_out = "-";
    int c_n = 10;
    coeffs->add_option("--model", c_model, "model family");
    coeffs->add_option("--what", c_what, "mu|blocks|correlator|s|open|components");
    coeffs->add_option("--n", c_n, "maximum order");
    coeffs->add_option("--counts", c_counts, "external coefficient file");
    coeffs->add_option("--out", c_out, "output path (- for stdout)");

    // critical
    auto* critical = app.add_subcommand("critical", "critical constants and exponents");
    std::string k_model = "quad", k_counts;
    double k_q = 1.0;
    critical->add_option("--model", k_model, "model family");
    critical->add_option("--q", k_q, "component weight (meander-q)");
    critical->add_option("--counts", k_counts, "external coefficient file");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "(N,p)-estimates of exponents");
    std::string e_model = "quad", e_what = "mu", e_counts, e_csv;
    int e_N = 50, e_p = 5;
    double e_eta = 0.0, e_q = 1.0;
    std::vector<double> e_us;
    double e_from = 0, e_to = 0, e_step = 0;
    bool e_ucrit = false, e_trail = false;
    estimate->add_option("--model", e_model, "model family");
    estimate->add_option("--what", e_what, "mu|s|open");
    estimate->add_option("--N", e_N, "table length");
    estimate->add_option("--p", e_p, "acceleration order");
    estimate->add_option("--eta", e_eta, "log-power correction");
    estimate->add_option("--u", e_us, "u values");
    estimate->add_option("--u-from", e_from, "sweep start");
    estimate->add_option("--u-to", e_to, "sweep end");
    estimate->add_option("--u-step", e_step, "sweep step");
    estimate->add_flag("--at-ucrit", e_ucrit, "evaluate at the model u_cr");
    estimate->add_option("--q", e_q, "component weight (meander-q)");
    estimate->add_option("--counts", e_counts, "external coefficient file");
    estimate->add_option("--csv", e_csv, "write the sweep as CSV");
    estimate->add_flag("--trail", e_trail, "include the acceleration trail");

    // profile
    auto* profile_cmd = app.add_subcommand("profile", "critical distance profile");
    double p_rmax = 4.0;
    int p_points = 200;
    bool p_cross = false, p_fisher = false;
    std::string p_out = "-";
    profile_cmd->add_option("--r-max", p_rmax, "grid end");
    profile_cmd->add_option("--points", p_points, "grid size");
    profile_cmd->add_flag("--crosscheck", p_cross, "add the contour-form column");
    profile_cmd->add_flag("--fisher", p_fisher, "fit the Fisher tail exponent");
    profile_cmd->add_option("--out", p_out, "output path (- for stdout)");

    try {
        app.parse(argc, argv);
        if (coeffs->parsed())
            return cmd_coeffs(parse_family(c_model), c_what, c_n, c_counts, c_out);
        if (critical->parsed())
            return cmd_critical(parse_family(k_model), k_q, k_counts);
        if (estimate->parsed()) {
            if (e_step > 0)
                for (double u = e_from; u <= e_to + 1e-12; u += e_step) e_us.push_back(u);
            return cmd_estimate(parse_family(e_model), e_what, e_N, e_p, e_eta, e_us,
                                e_ucrit, e_q, e_counts, e_csv, e_trail);
        }
        if (profile_cmd->parsed())
            return cmd_profile(p_rmax, p_points, p_cross, p_fisher, p_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const validation_error& e) {
        std::cerr << "data validation error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

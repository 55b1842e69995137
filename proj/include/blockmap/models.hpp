#ifndef BLOCKMAP_MODELS_HPP
#define BLOCKMAP_MODELS_HPP

#include <blockmap/arch_systems.hpp>
#include <blockmap/numeric.hpp>
#include <blockmap/series.hpp>
#include <blockmap/substitution.hpp>
#include <blockmap/table_io.hpp>

#include <optional>
#include <string>
#include <vector>

namespace blockmap {

enum class Family {
    QuadSimpleBlocks,
    CubicHamiltonian,
    CubicOpenPath,
    BicubicHamiltonian,
    Meander,
    MeanderQ,
};

enum class CountSource { ClosedForm, BruteForce, ExternalFile };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::QuadSimpleBlocks: return "quad";
        case Family::CubicHamiltonian: return "cubic";
        case Family::CubicOpenPath: return "open";
        case Family::BicubicHamiltonian: return "bicubic";
        case Family::Meander: return "meander";
        case Family::MeanderQ: return "meander-q";
    }
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
    for (Family f : {Family::QuadSimpleBlocks, Family::CubicHamiltonian,
                     Family::CubicOpenPath, Family::BicubicHamiltonian,
                     Family::Meander, Family::MeanderQ})
        if (s == family_name(f)) return f;
    return std::nullopt;
}

// m_n^{(1)}: quad 2*3^n Cat(n)/(n+2); cubic Cat(n)Cat(n+1); open 4^n Cat(n);
// meander Cat(n)^2. Bicubic has no closed form.
inline BigInt closed_form_count(Family f, int n) {
    switch (f) {
        case Family::QuadSimpleBlocks: {
            BigInt p3 = 1;
            for (int i = 0; i < n; ++i) p3 *= 3;
            return 2 * p3 * catalan(n) / (n + 2);
        }
        case Family::CubicHamiltonian:
            return catalan(n) * catalan(n + 1);
        case Family::CubicOpenPath: {
            BigInt p4 = 1;
            for (int i = 0; i < n; ++i) p4 *= 4;
            return p4 * catalan(n);
        }
        case Family::Meander:
        case Family::MeanderQ:
            return catalan(n) * catalan(n);
        case Family::BicubicHamiltonian:
            throw validation_error("bicubic has no closed form; use brute force or a file");
    }
    throw std::invalid_argument("unknown family");
}

inline TruncatedSeries<Rational> closed_form_series(Family f, int N) {
    TruncatedSeries<Rational> s(N);
    for (int n = 0; n <= N; ++n) s.coeff(n) = Rational(closed_form_count(f, n));
    return s;
}

// rooted simple quadrangulations: b_j = 2 (3j-3)! / ((2j-1)! j!)
inline BigInt quad_block_count(int j) {
    return 2 * factorial(3 * j - 3) / (factorial(2 * j - 1) * factorial(j));
}

inline std::vector<Rational> block_coefficients(Family f, int N) {
    switch (f) {
        case Family::QuadSimpleBlocks: {
            std::vector<Rational> b(N + 1, Rational(0));
            for (int j = 1; j <= N; ++j) b[j] = Rational(quad_block_count(j));
            return b;
        }
        case Family::CubicHamiltonian:
        case Family::Meander:
            return extract_block_coefficients(closed_form_series(f, N), N);
        default:
            throw validation_error("block coefficients need closed-form counts");
    }
}

// ---- brute-force weighted counts (the oracle layer) ----

inline constexpr int kOpenArchCap = 8;

// sum of u^{#blocks} over all systems of the family, n = 0..n_max
inline std::vector<UPoly> brute_force_weighted_counts(Family f, int n_max,
                                                      int cap = kDefaultArchCap) {
    std::vector<UPoly> out(n_max + 1);
    out[0] = UPoly(1);
    switch (f) {
        case Family::CubicHamiltonian:
        case Family::BicubicHamiltonian: {
            ArchOptions opts;
            opts.bicolored = (f == Family::BicubicHamiltonian);
            for (int n = 1; n <= n_max; ++n) {
                std::vector<BigInt> by_blocks(n + 1, 0);
                enumerate_arch_systems(n, opts, [&](const ArchSystem& s) {
                    ++by_blocks[count_blocks(s)];
                }, cap);
                out[n] = UPoly(std::move(by_blocks));
            }
            return out;
        }
        case Family::CubicOpenPath: {
            if (n_max > std::min(cap, kOpenArchCap))
                throw std::invalid_argument("open enumeration cap exceeded");
            ArchOptions opts;
            opts.open = true;
            for (int n = 1; n <= n_max; ++n) {
                std::vector<BigInt> by_blocks(n + 1, 0);
                enumerate_arch_systems(n, opts, [&](const ArchSystem& s) {
                    ++by_blocks[count_open_blocks(s)];
                }, cap);
                out[n] = UPoly(std::move(by_blocks));
            }
            return out;
        }
        case Family::Meander: {
            for (int n = 1; n <= n_max; ++n) {
                std::vector<BigInt> by_blocks(n + 1, 0);
                enumerate_meander_systems(n, [&](const MeanderSystem& s) {
                    ++by_blocks[count_blocks(s)];
                }, cap);
                out[n] = UPoly(std::move(by_blocks));
            }
            return out;
        }
        default:
            throw validation_error("no brute-force enumerator for this family");
    }
}

// meander systems: u per irreducible block, q per connected component
inline std::vector<UQPoly> brute_force_weighted_counts_q(int n_max,
                                                         int cap = kDefaultMeanderCap) {
    std::vector<UQPoly> out(n_max + 1);
    out[0] = UQPoly(1);
    UnionFind uf(2);
    for (int n = 1; n <= n_max; ++n) {
        // counts[b][k]
        std::vector<std::vector<BigInt>> counts(n + 1, std::vector<BigInt>(n + 1, 0));
        enumerate_meander_systems(n, [&](const MeanderSystem& s) {
            ++counts[count_blocks(s)][connected_components(s, uf)];
        }, cap);
        UQPoly p;
        for (int b = 1; b <= n; ++b) {
            QPoly qs;
            for (int k = 1; k <= n; ++k)
                if (counts[b][k] != 0) qs += QPoly::monomial(counts[b][k], k);
            if (!qs.is_zero()) p += UQPoly::monomial(qs, b);
        }
        out[n] = p;
    }
    return out;
}

// m_{n,k}: meander systems with k connected components. The inner loop runs
// over ordered pairs of matchings once, using the symmetry in (upper, lower).
inline std::vector<std::vector<BigInt>> meander_component_table(int n_max,
                                                                int cap = kDefaultMeanderCap) {
    if (n_max > cap) throw std::invalid_argument("meander enumeration cap exceeded");
    std::vector<std::vector<BigInt>> table(n_max + 1);
    table[0] = {BigInt(1)};
    for (int n = 1; n <= n_max; ++n) {
        const auto matchings = noncrossing_matchings(n);
        const int m = static_cast<int>(matchings.size());
        const int pts = 2 * n;
        std::vector<long long> counts(n + 1, 0);
        std::vector<int> next(pts + 1);
        std::vector<uint8_t> seen(pts + 1);
        for (int i = 0; i < m; ++i) {
            const auto& up = matchings[i];
            for (int j = i; j < m; ++j) {
                const auto& lo = matchings[j];
                // cycles of lower∘upper: each meander loop splits into two
                for (int p = 1; p <= pts; ++p) {
                    next[p] = lo[up[p]];
                    seen[p] = 0;
                }
                int cycles = 0;
                for (int p = 1; p <= pts; ++p) {
                    if (seen[p]) continue;
                    ++cycles;
                    for (int q = p; !seen[q]; q = next[q]) seen[q] = 1;
                }
                counts[cycles / 2] += (i == j) ? 1 : 2;
            }
        }
        table[n].assign(n + 1, 0);
        for (int k = 1; k <= n; ++k) table[n][k] = counts[k];
        // guard: components of a 2n-point system come in pairs of points
        BigInt total = 0;
        for (int k = 1; k <= n; ++k) total += table[n][k];
        if (total != catalan(n) * catalan(n))
            throw numerical_error("meander component table total mismatch");
    }
    return table;
}

// ---- external files ----

// Parse and validate a coefficient file against the brute-force enumerator on
// the overlapping small-n range. A mismatch signals the wrong file.
inline CoefficientTable load_external_counts(Family f, const std::string& path,
                                             int overlap_n = 6) {
    CoefficientTable t = load_coefficient_table(path);
    if (t.max_n() < 1) throw validation_error("insufficient data: " + path);
    if (f == Family::MeanderQ || f == Family::Meander) {
        if (t.component_resolved) {
            const int upto = std::min({t.max_n(), overlap_n, kDefaultMeanderCap});
            const auto brute = meander_component_table(upto);
            for (int n = 1; n <= upto; ++n)
                for (int k = 1; k <= n; ++k) {
                    const auto it = t.resolved.find({n, k});
                    const BigInt got = it == t.resolved.end() ? BigInt(0) : it->second;
                    if (got != brute[n][k])
                        throw validation_error("file disagrees with brute force at n=" +
                                               std::to_string(n) + " k=" + std::to_string(k));
                }
        } else {
            const int upto = std::min(t.max_n(), overlap_n);
            for (int n = 1; n <= upto; ++n) {
                const auto it = t.plain.find(n);
                if (it == t.plain.end() || it->second != closed_form_count(Family::Meander, n))
                    throw validation_error("file disagrees with Cat(n)^2 at n=" +
                                           std::to_string(n));
            }
        }
        return t;
    }
    if (f == Family::BicubicHamiltonian) {
        if (t.component_resolved)
            throw validation_error("bicubic counts must be a plain table");
        const int upto = std::min(t.max_n(), overlap_n);
        const auto brute = brute_force_weighted_counts(Family::BicubicHamiltonian, upto);
        for (int n = 1; n <= upto; ++n) {
            const auto it = t.plain.find(n);
            if (it == t.plain.end() || it->second != brute[n].eval_at_one())
                throw validation_error("file disagrees with brute force at n=" +
                                       std::to_string(n));
        }
        return t;
    }
    throw validation_error("external counts unsupported for this family");
}

// ---- u = 1 critical data (closed forms) ----

template <typename T>
struct U1Data {
    T g1;
    T M1;       // M_1(g_1)
    T M1prime;  // M_1'(g_1)
    T t_cr;     // g_1 M_1(g_1)^2
};

inline U1Data<Rational> quad_u1_data() {
    // g1 = 1/12, M1 = 4/3, M1' = 16, t_cr = 4/27
    return {Rational(1, 12), Rational(4, 3), Rational(16), Rational(4, 27)};
}

template <typename T>
U1Data<T> u1_data(Family f) {
    const T pi = pi_const<T>();
    switch (f) {
        case Family::QuadSimpleBlocks:
            return {T(1) / 12, T(4) / 3, T(16), T(4) / 27};
        case Family::CubicHamiltonian: {
            const T M1 = 8 * (1 - 8 / (3 * pi));
            return {T(1) / 16, M1, 128 * (10 / (3 * pi) - 1), M1 * M1 / 16};
        }
        case Family::Meander:
        case Family::MeanderQ: {
            const T M1 = 4 * (4 / pi - 1);
            return {T(1) / 16, M1, 64 * (1 - 3 / pi), M1 * M1 / 16};
        }
        default:
            throw validation_error("no closed-form u=1 data for this family");
    }
}

struct ModelSpec {
    Family family;
    CountSource count_source;
    int default_order;   // truncation order used by the pipelines
    int brute_force_cap; // enumeration ceiling

    static ModelSpec for_family(Family f) {
        switch (f) {
            case Family::QuadSimpleBlocks: return {f, CountSource::ClosedForm, 50, 0};
            case Family::CubicHamiltonian: return {f, CountSource::ClosedForm, 50, kDefaultArchCap};
            case Family::CubicOpenPath:   return {f, CountSource::ClosedForm, 50, kOpenArchCap};
            case Family::BicubicHamiltonian: return {f, CountSource::ExternalFile, 30, 10};
            case Family::Meander:         return {f, CountSource::ClosedForm, 50, kDefaultMeanderCap};
            case Family::MeanderQ:        return {f, CountSource::ExternalFile, 30, kDefaultMeanderCap};
        }
        throw std::invalid_argument("unknown family");
    }
};

}  // namespace blockmap

#endif

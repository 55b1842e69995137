#ifndef BLOCKMAP_TABLE_IO_HPP
#define BLOCKMAP_TABLE_IO_HPP

#include <blockmap/numeric.hpp>
#include <blockmap/polynomial.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace blockmap {

// Coefficient file format: UTF-8 text, one record per line,
//   n <ws> integer            (plain counts)
//   n <ws> k <ws> integer     (component-resolved counts)
// Lines starting with '#' are ignored. n must be strictly increasing within
// each k.
struct CoefficientTable {
    bool component_resolved = false;
    std::map<int, BigInt> plain;                     // n -> count
    std::map<std::pair<int, int>, BigInt> resolved;  // (n,k) -> count

    int max_n() const {
        int m = 0;
        for (const auto& [n, v] : plain) m = std::max(m, n);
        for (const auto& [nk, v] : resolved) m = std::max(m, nk.first);
        return m;
    }

    // collapse a resolved table at numeric weight q per component
    template <typename T>
    std::vector<T> collapse_q(const T& q, int n_max) const {
        std::vector<T> out(n_max + 1, T(0));
        out[0] = T(1);
        for (const auto& [nk, v] : resolved) {
            const auto [n, k] = nk;
            if (n > n_max) continue;
            T qk(1);
            for (int i = 0; i < k; ++i) qk *= q;
            if constexpr (std::is_same_v<T, double>)
                out[n] += v.template convert_to<double>() * qk;
            else
                out[n] += T(v) * qk;
        }
        return out;
    }

    // q-polynomial per n
    std::vector<QPoly> q_polynomials(int n_max) const {
        std::vector<QPoly> out(n_max + 1);
        out[0] = QPoly(1);
        for (const auto& [nk, v] : resolved) {
            const auto [n, k] = nk;
            if (n <= n_max) out[n] += QPoly::monomial(v, k);
        }
        return out;
    }
};

inline CoefficientTable parse_coefficient_table(std::istream& in) {
    CoefficientTable t;
    std::string line;
    int lineno = 0, records = 0;
    int shape = 0;  // 0 unknown, 2 plain, 3 resolved
    std::map<int, int> last_n_for_k;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string w;
        while (ss >> w) tok.push_back(w);
        if (tok.size() != 2 && tok.size() != 3)
            throw validation_error("line " + std::to_string(lineno) +
                                   ": expected 2 or 3 fields");
        if (shape == 0) shape = static_cast<int>(tok.size());
        if (static_cast<int>(tok.size()) != shape)
            throw validation_error("line " + std::to_string(lineno) +
                                   ": mixed record shapes");
        int n = 0, k = 0;
        BigInt v;
        try {
            n = std::stoi(tok[0]);
            if (shape == 2) {
                v = BigInt(tok[1]);
            } else {
                k = std::stoi(tok[1]);
                v = BigInt(tok[2]);
            }
        } catch (const std::exception&) {
            throw validation_error("line " + std::to_string(lineno) + ": parse failure");
        }
        if (shape == 2) {
            auto& last = last_n_for_k[-1];
            if (records > 0 && n <= last)
                throw validation_error("line " + std::to_string(lineno) +
                                       ": n not strictly increasing");
            last = n;
            t.plain[n] = v;
        } else {
            auto it = last_n_for_k.find(k);
            if (it != last_n_for_k.end() && n <= it->second)
                throw validation_error("line " + std::to_string(lineno) +
                                       ": n not strictly increasing within k");
            last_n_for_k[k] = n;
            t.resolved[{n, k}] = v;
        }
        ++records;
    }
    if (records == 0) throw validation_error("insufficient data: empty coefficient file");
    t.component_resolved = (shape == 3);
    return t;
}

inline CoefficientTable load_coefficient_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open coefficient file: " + path);
    return parse_coefficient_table(in);
}

// ---- cache ----

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

// Content cache under $BLOCKMAP_CACHE (default ./.cache). Entries are keyed
// by (model, N, ring); payloads reuse the coefficient text format plus a
// checksum header so reloads can be verified byte-for-byte.
class Cache {
  public:
    Cache() {
        const char* env = std::getenv("BLOCKMAP_CACHE");
        dir_ = env && *env ? env : ".cache";
    }
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}

    const std::string& dir() const { return dir_; }

    std::string path_for(const std::string& key) const {
        return (std::filesystem::path(dir_) /
                (key + "-" + hex64(fnv1a64(key)) + ".txt")).string();
    }

    bool load(const std::string& key, std::string& payload) const {
        std::ifstream in(path_for(key), std::ios::binary);
        if (!in) return false;
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        // verify the checksum line: "# fnv <hex> of the remainder"
        const auto nl = text.find('\n');
        if (nl == std::string::npos) return false;
        const std::string head = text.substr(0, nl);
        const std::string body = text.substr(nl + 1);
        if (head.rfind("# fnv ", 0) != 0) return false;
        if (head.substr(6) != hex64(fnv1a64(body))) return false;
        payload = body;
        return true;
    }

    // atomic write: temp file in the same directory, then rename
    void store(const std::string& key, const std::string& payload) const {
        namespace fs = std::filesystem;
        fs::create_directories(dir_);
        const std::string target = path_for(key);
        const std::string tmp = target + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << "# fnv " << hex64(fnv1a64(payload)) << "\n" << payload;
            if (!out) throw std::runtime_error("cache write failed: " + tmp);
        }
        fs::rename(tmp, target);
    }

  private:
    std::string dir_;
};

// Deterministic text form of a u-polynomial table: lines "n j coeff".
inline std::string serialize_upoly_table(const std::vector<UPoly>& table) {
    std::ostringstream os;
    for (std::size_t n = 0; n < table.size(); ++n)
        for (int j = 0; j <= table[n].degree(); ++j)
            if (!(table[n].coeff(j) == 0)) os << n << " " << j << " " << table[n].coeff(j) << "\n";
    return os.str();
}

inline std::vector<UPoly> deserialize_upoly_table(const std::string& text, int n_max) {
    std::vector<UPoly> out(n_max + 1);
    std::istringstream in(text);
    int n, j;
    std::string v;
    while (in >> n >> j >> v) {
        if (n < 0 || n > n_max) throw validation_error("cache row out of range");
        out[n] += UPoly::monomial(BigInt(v), j);
    }
    return out;
}

// Bivariate table: lines "n j k coeff" meaning coefficient of u^j q^k.
inline std::string serialize_uqpoly_table(const std::vector<UQPoly>& table) {
    std::ostringstream os;
    for (std::size_t n = 0; n < table.size(); ++n)
        for (int j = 0; j <= table[n].degree(); ++j) {
            const QPoly& qc = table[n].coeff(j);
            for (int k = 0; k <= qc.degree(); ++k)
                if (!(qc.coeff(k) == 0))
                    os << n << " " << j << " " << k << " " << qc.coeff(k) << "\n";
        }
    return os.str();
}

inline std::vector<UQPoly> deserialize_uqpoly_table(const std::string& text, int n_max) {
    std::vector<UQPoly> out(n_max + 1);
    std::istringstream in(text);
    int n, j, k;
    std::string v;
    while (in >> n >> j >> k >> v) {
        if (n < 0 || n > n_max) throw validation_error("cache row out of range");
        out[n] += UQPoly::monomial(QPoly::monomial(BigInt(v), k), j);
    }
    return out;
}

}  // namespace blockmap

#endif

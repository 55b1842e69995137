#ifndef BLOCKMAP_ARCH_SYSTEMS_HPP
#define BLOCKMAP_ARCH_SYSTEMS_HPP

#include <blockmap/numeric.hpp>

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace blockmap {

// Side-labeled non-crossing perfect matching of points 1..2n. Arches on the
// same side never cross. For open configurations an arch may wind around the
// right extremity of the segment; such arches carry wind = true and have
// endpoints on opposite sides.
struct ArchSystem {
    int n = 0;
    std::vector<int> partner;     // index 1..2n; partner[0] unused
    std::vector<uint8_t> side;    // 0 above, 1 below (side seen at that endpoint)
    std::vector<uint8_t> wind;    // arch winds around the right extremity
    bool bicolored = false;

    explicit ArchSystem(int arches = 0)
        : n(arches), partner(2 * arches + 1, 0), side(2 * arches + 1, 0),
          wind(2 * arches + 1, 0) {}
};

// Upper/lower pair of non-crossing perfect matchings on the same 2n points.
struct MeanderSystem {
    int n = 0;
    std::vector<int> upper;  // index 1..2n
    std::vector<int> lower;

    explicit MeanderSystem(int arches = 0)
        : n(arches), upper(2 * arches + 1, 0), lower(2 * arches + 1, 0) {}
};

struct ArchOptions {
    bool bicolored = false;  // arches join points of opposite parity
    bool open = false;       // allow winding arches (Hamiltonian paths)
};

namespace detail {

// Closed systems: walk points left to right, each point either opens an arch
// on one side or closes the innermost open arch of its side. Non-crossing on
// a line means closing always pairs with the most recent open endpoint.
template <typename Fn>
void enumerate_closed(bool bicolored, ArchSystem& sys, std::vector<int>& stackA,
                      std::vector<int>& stackB, int point, int open_count, Fn&& fn) {
    const int total = 2 * sys.n;
    if (point > total) {
        if (stackA.empty() && stackB.empty()) fn(static_cast<const ArchSystem&>(sys));
        return;
    }
    const int remaining = total - point + 1;
    // prune: every open arch still needs a closing point
    if (open_count > remaining) return;
    if (open_count < remaining) {  // may open
        stackA.push_back(point);
        sys.side[point] = 0;
        enumerate_closed(bicolored, sys, stackA, stackB, point + 1, open_count + 1, fn);
        stackA.pop_back();
        stackB.push_back(point);
        sys.side[point] = 1;
        enumerate_closed(bicolored, sys, stackA, stackB, point + 1, open_count + 1, fn);
        stackB.pop_back();
    }
    if (!stackA.empty() && (!bicolored || ((point - stackA.back()) & 1))) {
        const int j = stackA.back();
        stackA.pop_back();
        sys.partner[point] = j;
        sys.partner[j] = point;
        sys.side[point] = 0;
        enumerate_closed(bicolored, sys, stackA, stackB, point + 1, open_count - 1, fn);
        stackA.push_back(j);
    }
    if (!stackB.empty() && (!bicolored || ((point - stackB.back()) & 1))) {
        const int j = stackB.back();
        stackB.pop_back();
        sys.partner[point] = j;
        sys.partner[j] = point;
        sys.side[point] = 1;
        enumerate_closed(bicolored, sys, stackA, stackB, point + 1, open_count - 1, fn);
        stackB.push_back(j);
    }
}

// All non-crossing perfect matchings of the positions seq[0..2n-1] taken in
// order: the first point of a segment pairs with an even-offset partner,
// splitting the segment in two. Pending segments live on an explicit stack
// so the recursion stays monomorphic.
template <typename Fn>
void match_segments(const std::vector<int>& seq, std::vector<std::pair<int, int>>& work,
                    std::vector<std::pair<int, int>>& acc, Fn&& fn) {
    if (work.empty()) {
        fn(static_cast<const std::vector<std::pair<int, int>>&>(acc));
        return;
    }
    const auto [lo, hi] = work.back();
    work.pop_back();
    if (lo > hi) {
        match_segments(seq, work, acc, fn);
    } else {
        for (int i = lo + 1; i <= hi; i += 2) {
            acc.emplace_back(seq[lo], seq[i]);
            work.emplace_back(i + 1, hi);
            work.emplace_back(lo + 1, i - 1);
            match_segments(seq, work, acc, fn);
            work.pop_back();
            work.pop_back();
            acc.pop_back();
        }
    }
    work.emplace_back(lo, hi);
}

template <typename Fn>
void enumerate_matchings(const std::vector<int>& seq, Fn&& fn) {
    std::vector<std::pair<int, int>> work, acc;
    work.emplace_back(0, static_cast<int>(seq.size()) - 1);
    match_segments(seq, work, acc, fn);
}

}  // namespace detail

inline constexpr int kDefaultArchCap = 12;

// Stream every valid configuration exactly once, in a deterministic order.
// The ArchSystem reference passed to the callback is reused between calls;
// copy it if it must outlive the callback.
template <typename Fn>
void enumerate_arch_systems(int n, const ArchOptions& opts, Fn&& fn,
                            int cap = kDefaultArchCap) {
    if (n > cap) throw std::invalid_argument("arch enumeration cap exceeded");
    if (n == 0) {
        ArchSystem sys(0);
        sys.bicolored = opts.bicolored;
        fn(static_cast<const ArchSystem&>(sys));
        return;
    }
    if (!opts.open) {
        ArchSystem sys(n);
        sys.bicolored = opts.bicolored;
        std::vector<int> stackA, stackB;
        stackA.reserve(n);
        stackB.reserve(n);
        detail::enumerate_closed(opts.bicolored, sys, stackA, stackB, 1, 0, fn);
        return;
    }
    // Open systems: choose the side seen at each point, then a non-crossing
    // matching on the boundary circle read as (above points ascending, then
    // below points descending). A chord between opposite-side points winds
    // around the right extremity.
    ArchSystem sys(n);
    const int total = 2 * n;
    std::vector<int> seq;
    seq.reserve(total);
    for (uint32_t mask = 0; mask < (uint32_t{1} << total); ++mask) {
        seq.clear();
        for (int p = 1; p <= total; ++p)
            if (mask >> (p - 1) & 1) seq.push_back(p);
        for (int p = total; p >= 1; --p)
            if (!(mask >> (p - 1) & 1)) seq.push_back(p);
        detail::enumerate_matchings(seq, [&](const std::vector<std::pair<int, int>>& pairs) {
            for (auto [a, b] : pairs) {
                const uint8_t sa = mask >> (a - 1) & 1 ? 0 : 1;
                const uint8_t sb = mask >> (b - 1) & 1 ? 0 : 1;
                sys.partner[a] = b;
                sys.partner[b] = a;
                sys.side[a] = sa;
                sys.side[b] = sb;
                sys.wind[a] = sys.wind[b] = (sa != sb);
            }
            fn(static_cast<const ArchSystem&>(sys));
        });
    }
}

inline constexpr int kDefaultMeanderCap = 10;

// All non-crossing perfect matchings on 1..2n as partner arrays.
inline std::vector<std::vector<int>> noncrossing_matchings(int n) {
    std::vector<std::vector<int>> out;
    if (n == 0) return out;
    std::vector<int> seq(2 * n);
    std::iota(seq.begin(), seq.end(), 1);
    detail::enumerate_matchings(seq, [&](const std::vector<std::pair<int, int>>& pairs) {
        std::vector<int> partner(2 * n + 1, 0);
        for (auto [a, b] : pairs) {
            partner[a] = b;
            partner[b] = a;
        }
        out.push_back(std::move(partner));
    });
    return out;
}

template <typename Fn>
void enumerate_meander_systems(int n, Fn&& fn, int cap = kDefaultMeanderCap) {
    if (n > cap) throw std::invalid_argument("meander enumeration cap exceeded");
    const auto matchings = noncrossing_matchings(n);
    MeanderSystem sys(n);
    for (const auto& up : matchings) {
        sys.upper = up;
        for (const auto& lo : matchings) {
            sys.lower = lo;
            fn(static_cast<const MeanderSystem&>(sys));
        }
    }
}

// ---- irreducibility and block decomposition ----

namespace detail {

// Segment [i..j] is self-matched when every point inside is matched inside.
// The matcher returns the largest partner over both matchings at a point, or
// a value < i to signal an escape to the left.
template <typename MaxPartner>
int largest_self_matched_end(MaxPartner&& mp, int i, int hi) {
    int jmax = -1, mx = -1;
    for (int p = i; p <= hi; ++p) {
        const auto [pmin, pmax] = mp(p);
        if (pmin < i) break;
        mx = std::max(mx, pmax);
        if (mx == p) jmax = p;
    }
    return jmax;
}

template <typename MaxPartner>
int count_blocks_impl(MaxPartner&& mp, int lo, int hi) {
    if (lo > hi) return 0;
    int total = 1;
    int i = lo + 1;  // never extract a segment containing the first arch
    while (i <= hi) {
        const int jmax = largest_self_matched_end(mp, i, hi);
        if (jmax >= 0) {
            total += count_blocks_impl(mp, i, jmax);
            i = jmax + 1;
        } else {
            ++i;
        }
    }
    return total;
}

template <typename MaxPartner>
bool is_irreducible_impl(MaxPartner&& mp, int lo, int hi) {
    // proper self-matched subsegments may start anywhere, including lo
    for (int i = lo; i <= hi; ++i) {
        const int jmax = largest_self_matched_end(mp, i, hi);
        if (jmax >= 0 && !(i == lo && jmax == hi)) return true;
    }
    return false;
}

}  // namespace detail

inline auto arch_span(const ArchSystem& s) {
    return [&s](int p) {
        const int q = s.partner[p];
        return std::pair<int, int>(std::min(p, q), std::max(p, q));
    };
}

inline auto meander_span(const MeanderSystem& s) {
    return [&s](int p) {
        const int a = s.upper[p], b = s.lower[p];
        return std::pair<int, int>(std::min({p, a, b}), std::max({a, b}));
    };
}

// Regular (non-winding) span for open systems: winding arches poison any
// segment containing one of their endpoints.
inline auto open_regular_span(const ArchSystem& s) {
    return [&s](int p) {
        if (s.wind[p]) return std::pair<int, int>(-1, -1);
        const int q = s.partner[p];
        return std::pair<int, int>(std::min(p, q), std::max(p, q));
    };
}

inline bool is_irreducible(const ArchSystem& s) {
    if (s.n == 0) throw std::invalid_argument("irreducibility of an empty system");
    return !detail::is_irreducible_impl(arch_span(s), 1, 2 * s.n);
}

inline bool is_irreducible(const MeanderSystem& s) {
    if (s.n == 0) throw std::invalid_argument("irreducibility of an empty system");
    return !detail::is_irreducible_impl(meander_span(s), 1, 2 * s.n);
}

// Number of irreducible blocks in the canonical decomposition (the component
// containing the first arch is kept at every level).
inline int count_blocks(const ArchSystem& s) {
    if (s.n == 0) return 0;
    return detail::count_blocks_impl(arch_span(s), 1, 2 * s.n);
}

inline int count_blocks(const MeanderSystem& s) {
    if (s.n == 0) return 0;
    return detail::count_blocks_impl(meander_span(s), 1, 2 * s.n);
}

// Open configurations: every maximal regular self-matched segment (anywhere,
// including a prefix) detaches and decomposes as a closed system; the winding
// core is never weighted.
inline int count_open_blocks(const ArchSystem& s) {
    if (s.n == 0) return 0;
    auto mp = arch_span(s);
    auto rp = open_regular_span(s);
    int total = 0;
    int i = 1;
    const int hi = 2 * s.n;
    while (i <= hi) {
        const int jmax = detail::largest_self_matched_end(rp, i, hi);
        if (jmax >= 0) {
            total += detail::count_blocks_impl(mp, i, jmax);
            i = jmax + 1;
        } else {
            ++i;
        }
    }
    return total;
}

namespace detail {

template <typename System, typename MaxPartner, typename Extract>
void decompose_into(const System& s, MaxPartner&& mp, Extract&& extract, int lo, int hi,
                    std::vector<System>& out) {
    // gather the extracted segments first, then recurse within each
    std::vector<std::pair<int, int>> cut;
    int i = lo + 1;
    while (i <= hi) {
        const int jmax = largest_self_matched_end(mp, i, hi);
        if (jmax >= 0) {
            cut.emplace_back(i, jmax);
            i = jmax + 1;
        } else {
            ++i;
        }
    }
    out.push_back(extract(s, lo, hi, cut));
    for (auto [a, b] : cut) decompose_into(s, mp, extract, a, b, out);
}

}  // namespace detail

// The multiset of irreducible blocks, root block first at each level. Block
// sizes sum to n and every returned block is irreducible.
inline std::vector<ArchSystem> block_decomposition(const ArchSystem& s) {
    std::vector<ArchSystem> out;
    if (s.n == 0) return out;
    auto extract = [](const ArchSystem& sys, int lo, int hi,
                      const std::vector<std::pair<int, int>>& cut) {
        std::vector<int> keep;
        for (int p = lo; p <= hi; ++p) {
            bool removed = false;
            for (auto [a, b] : cut) removed = removed || (p >= a && p <= b);
            if (!removed) keep.push_back(p);
        }
        ArchSystem blk(static_cast<int>(keep.size()) / 2);
        std::vector<int> newidx(2 * sys.n + 1, 0);
        for (std::size_t k = 0; k < keep.size(); ++k) newidx[keep[k]] = static_cast<int>(k) + 1;
        for (int p : keep) {
            blk.partner[newidx[p]] = newidx[sys.partner[p]];
            blk.side[newidx[p]] = sys.side[p];
        }
        return blk;
    };
    detail::decompose_into(s, arch_span(s), extract, 1, 2 * s.n, out);
    return out;
}

inline std::vector<MeanderSystem> block_decomposition(const MeanderSystem& s) {
    std::vector<MeanderSystem> out;
    if (s.n == 0) return out;
    auto extract = [](const MeanderSystem& sys, int lo, int hi,
                      const std::vector<std::pair<int, int>>& cut) {
        std::vector<int> keep;
        for (int p = lo; p <= hi; ++p) {
            bool removed = false;
            for (auto [a, b] : cut) removed = removed || (p >= a && p <= b);
            if (!removed) keep.push_back(p);
        }
        MeanderSystem blk(static_cast<int>(keep.size()) / 2);
        std::vector<int> newidx(2 * sys.n + 1, 0);
        for (std::size_t k = 0; k < keep.size(); ++k) newidx[keep[k]] = static_cast<int>(k) + 1;
        for (int p : keep) {
            blk.upper[newidx[p]] = newidx[sys.upper[p]];
            blk.lower[newidx[p]] = newidx[sys.lower[p]];
        }
        return blk;
    };
    detail::decompose_into(s, meander_span(s), extract, 1, 2 * s.n, out);
    return out;
}

// ---- connected components of a meandric system ----

class UnionFind {
  public:
    explicit UnionFind(int n) : id_(n), count_(n) {
        std::iota(id_.begin(), id_.end(), 0);
    }
    int find(int p) {
        while (p != id_[p]) {
            id_[p] = id_[id_[p]];  // path halving
            p = id_[p];
        }
        return p;
    }
    void unite(int a, int b) {
        const int ra = find(a), rb = find(b);
        if (ra == rb) return;
        id_[ra] = rb;
        --count_;
    }
    int components() const { return count_; }

    // reuse the same storage across many systems
    void reset(int n) {
        id_.resize(n);
        std::iota(id_.begin(), id_.end(), 0);
        count_ = n;
    }

  private:
    std::vector<int> id_;
    int count_;
};

// Loops formed by alternately following upper and lower arches.
inline int connected_components(const MeanderSystem& s) {
    UnionFind uf(2 * s.n);
    for (int p = 1; p <= 2 * s.n; ++p) {
        uf.unite(p - 1, s.upper[p] - 1);
        uf.unite(p - 1, s.lower[p] - 1);
    }
    return uf.components();
}

inline int connected_components(const MeanderSystem& s, UnionFind& uf) {
    uf.reset(2 * s.n);
    for (int p = 1; p <= 2 * s.n; ++p) {
        uf.unite(p - 1, s.upper[p] - 1);
        uf.unite(p - 1, s.lower[p] - 1);
    }
    return uf.components();
}

}  // namespace blockmap

#endif

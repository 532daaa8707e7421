#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "latlin/bits.hpp"
#include "latlin/check.hpp"
#include "latlin/errors.hpp"
#include "latlin/parallel.hpp"
#include "latlin/types.hpp"

namespace latlin {

/// A finite lattice on elements {0, .., n-1}: dense order relation plus
/// precomputed join/meet tables. Immutable after construction; every
/// construction path proves the order is a lattice or raises a structured
/// error naming the defect.
class FiniteLattice {
public:
    /// Builds a lattice from its cover relation (lo covered-by hi pairs).
    /// Ids are kept exactly as given; redundant (transitive) input pairs are
    /// tolerated and disappear under canonical cover extraction.
    ///
    /// Raises CycleDetected, NoBottom, NoTop, or NotALattice (with the
    /// lexicographically least offending pair) when the input is not a
    /// finite lattice; std::invalid_argument for malformed ids or labels.
    static FiniteLattice from_covers(std::size_t n,
                                     const std::vector<std::pair<ElemId, ElemId>>& covers,
                                     std::vector<std::string> labels = {});

    std::size_t size() const { return n_; }

    bool leq(ElemId x, ElemId y) const { return up_.test(x, y); }
    ElemId join(ElemId x, ElemId y) const { return join_[static_cast<std::size_t>(x) * n_ + y]; }
    ElemId meet(ElemId x, ElemId y) const { return meet_[static_cast<std::size_t>(x) * n_ + y]; }

    /// Join of an arbitrary set of elements; the empty join is bottom.
    ElemId join_set(const std::vector<ElemId>& xs) const {
        ElemId j = bottom_;
        for (ElemId x : xs) j = join(j, x);
        return j;
    }

    ElemId bottom() const { return bottom_; }
    ElemId top() const { return top_; }

    /// Atoms: the covers of bottom, ascending by id.
    const std::vector<ElemId>& atoms() const { return atoms_; }

    /// Canonical cover relation (transitively reduced), sorted (lo, hi) pairs.
    const std::vector<std::pair<ElemId, ElemId>>& covers() const { return covers_; }
    const std::vector<ElemId>& covers_up(ElemId x) const { return cover_up_[x]; }
    const std::vector<ElemId>& covers_down(ElemId x) const { return cover_dn_[x]; }

    /// True when y covers x: x < y with an empty open interval between them.
    bool is_cover(ElemId x, ElemId y) const {
        if (x == y || !leq(x, y)) return false;
        detail::BitRow between(n_);
        between.assign_and(up_.row(x), down_.row(y));
        return between.count() == 2;  // exactly {x, y}
    }

    /// Length of the longest chain from bottom to x (height of bottom is 0).
    int height(ElemId x) const { return height_[x]; }

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(ElemId x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Same carrier and same order relation (ids included).
    bool same_order(const FiniteLattice& other) const {
        return n_ == other.n_ && up_ == other.up_;
    }

    /// Raw order rows: up().row(x) is the upward closure of x, down().row(x)
    /// the downward closure. Exposed for the checker implementations.
    const detail::BitRel& up() const { return up_; }
    const detail::BitRel& down() const { return down_; }

    /// A default-constructed lattice is an empty placeholder; assign from a
    /// factory before use.
    FiniteLattice() = default;

private:
    std::size_t n_ = 0;
    detail::BitRel up_, down_;
    std::vector<ElemId> join_, meet_;
    ElemId bottom_ = 0, top_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<ElemId>> cover_up_, cover_dn_;
    std::vector<std::pair<ElemId, ElemId>> covers_;
    std::vector<ElemId> atoms_;
    std::vector<int> height_;
};

/// An interval [lo, hi] as a lattice of its own, re-indexed to dense ids in
/// ascending ambient order, plus the map from new ids to ambient ids.
struct IntervalSublattice {
    FiniteLattice lattice;
    std::vector<ElemId> to_ambient;
};

namespace detail {

// Finds a directed cycle in the adjacency list, if any (colors: 0 white,
// 1 on stack, 2 done). Returns the cycle in walk order.
inline std::optional<std::vector<ElemId>> find_cycle(
    const std::vector<std::vector<ElemId>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> color(n, 0);
    std::vector<ElemId> stack, next_idx;
    for (std::size_t s = 0; s < n; ++s) {
        if (color[s] != 0) continue;
        stack = {static_cast<ElemId>(s)};
        next_idx = {0};
        color[s] = 1;
        while (!stack.empty()) {
            ElemId v = stack.back();
            if (next_idx.back() < static_cast<ElemId>(adj[v].size())) {
                ElemId w = adj[v][next_idx.back()++];
                if (color[w] == 1) {
                    auto it = std::find(stack.begin(), stack.end(), w);
                    return std::vector<ElemId>(it, stack.end());
                }
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back(w);
                    next_idx.push_back(0);
                }
            } else {
                color[v] = 2;
                stack.pop_back();
                next_idx.pop_back();
            }
        }
    }
    return std::nullopt;
}

// Topological order of an acyclic adjacency list (sources first).
inline std::vector<ElemId> topo_order(const std::vector<std::vector<ElemId>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> indeg(n, 0);
    for (const auto& row : adj)
        for (ElemId w : row) ++indeg[w];
    std::vector<ElemId> order;
    order.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) order.push_back(static_cast<ElemId>(v));
    for (std::size_t i = 0; i < order.size(); ++i)
        for (ElemId w : adj[order[i]])
            if (--indeg[w] == 0) order.push_back(w);
    return order;
}

}  // namespace detail

inline FiniteLattice FiniteLattice::from_covers(
    std::size_t n, const std::vector<std::pair<ElemId, ElemId>>& covers,
    std::vector<std::string> labels) {
    if (n == 0) throw std::invalid_argument("a lattice needs at least one element");
    if (!labels.empty() && labels.size() != n)
        throw std::invalid_argument("labels must be empty or match the element count");

    std::vector<std::vector<ElemId>> adj(n);
    for (const auto& [lo, hi] : covers) {
        if (lo < 0 || hi < 0 || static_cast<std::size_t>(lo) >= n ||
            static_cast<std::size_t>(hi) >= n)
            throw std::invalid_argument("cover pair references an id outside [0, n)");
        if (lo == hi) throw CycleDetected({lo});
        adj[lo].push_back(hi);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    if (auto cycle = detail::find_cycle(adj)) throw CycleDetected(*cycle);
    const std::vector<ElemId> order = detail::topo_order(adj);

    FiniteLattice L;
    L.n_ = n;
    L.labels_ = std::move(labels);
    L.up_ = detail::BitRel(n, n);
    L.down_ = detail::BitRel(n, n);

    // Reflexive-transitive closure by dynamic programming over the DAG;
    // down is the transpose of up.
    for (std::size_t i = n; i-- > 0;) {
        ElemId v = order[i];
        L.up_.set(v, v);
        for (ElemId w : adj[v]) L.up_.or_row(v, w);
    }
    for (std::size_t x = 0; x < n; ++x)
        detail::for_each_bit(L.up_.row(x), L.up_.words(),
                             [&](int y) { L.down_.set(y, static_cast<int>(x)); });

    // Unique least and greatest elements.
    {
        auto row_count = [&](const detail::BitRel& rel, std::size_t v) {
            std::size_t c = 0;
            for (std::size_t w = 0; w < rel.words(); ++w) c += std::popcount(rel.row(v)[w]);
            return c;
        };
        std::vector<ElemId> minimal, maximal;
        for (std::size_t v = 0; v < n; ++v) {
            if (row_count(L.down_, v) == 1) minimal.push_back(static_cast<ElemId>(v));
            if (row_count(L.up_, v) == 1) maximal.push_back(static_cast<ElemId>(v));
        }
        if (minimal.size() != 1) throw NoBottom();
        if (maximal.size() != 1) throw NoTop();
        L.bottom_ = minimal[0];
        L.top_ = maximal[0];
    }

    // Ids form a linear extension iff every cover ascends; that enables the
    // fast least/greatest candidate test below.
    bool linext = true;
    for (const auto& [lo, hi] : covers)
        if (lo > hi) linext = false;

    // Join and meet tables with uniqueness checks, scanning pairs in
    // lexicographic order so the first defect reported is the least pair.
    L.join_.assign(n * n, 0);
    L.meet_.assign(n * n, 0);
    detail::BitRow cand(n);
    auto bound = [&](ElemId x, ElemId y, bool joins) -> ElemId {
        const detail::BitRel& dir = joins ? L.up_ : L.down_;
        const detail::BitRel& opp = joins ? L.down_ : L.up_;
        if (dir.test(x, y)) return y;
        if (dir.test(y, x)) return x;
        cand.assign_and(dir.row(x), dir.row(y));
        if (cand.empty()) throw NotALattice(x, y);
        if (linext) {
            ElemId c = joins ? cand.lowest() : cand.highest();
            if (!cand.subset_of(dir.row(c))) throw NotALattice(x, y);
            return c;
        }
        ElemId least = -1;
        int extremal = 0;
        detail::for_each_bit(cand.data(), cand.words(), [&](int m) {
            detail::BitRow in_cand(n);
            in_cand.assign_and(opp.row(m), cand.data());
            if (in_cand.count() == 1) {
                ++extremal;
                least = m;
            }
        });
        if (extremal != 1) throw NotALattice(x, y);
        return least;
    };
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x; y < n; ++y) {
            ElemId j = bound(static_cast<ElemId>(x), static_cast<ElemId>(y), true);
            ElemId m = bound(static_cast<ElemId>(x), static_cast<ElemId>(y), false);
            L.join_[x * n + y] = L.join_[y * n + x] = j;
            L.meet_[x * n + y] = L.meet_[y * n + x] = m;
        }
    }

    // Canonical covers from the closure: x covered by y iff [x, y] = {x, y}.
    L.cover_up_.assign(n, {});
    L.cover_dn_.assign(n, {});
    detail::BitRow between(n);
    for (std::size_t x = 0; x < n; ++x) {
        detail::for_each_bit(L.up_.row(x), L.up_.words(), [&](int y) {
            if (static_cast<std::size_t>(y) == x) return;
            between.assign_and(L.up_.row(x), L.down_.row(y));
            if (between.count() == 2) {
                L.cover_up_[x].push_back(y);
                L.cover_dn_[y].push_back(static_cast<ElemId>(x));
                L.covers_.emplace_back(static_cast<ElemId>(x), y);
            }
        });
    }
    std::sort(L.covers_.begin(), L.covers_.end());
    for (auto& row : L.cover_up_) std::sort(row.begin(), row.end());
    for (auto& row : L.cover_dn_) std::sort(row.begin(), row.end());

    L.atoms_ = L.cover_up_[L.bottom_];

    // Heights: longest cover-path from bottom, DP in topological order.
    L.height_.assign(n, 0);
    for (ElemId v : order)
        for (ElemId w : L.cover_up_[v]) L.height_[w] = std::max(L.height_[w], L.height_[v] + 1);

    return L;
}

/// The interval [lo, hi] as a standalone lattice. Elements are re-indexed in
/// ascending ambient-id order; the second member maps new ids back. Raises
/// NotComparable unless lo <= hi.
inline IntervalSublattice interval(const FiniteLattice& L, ElemId lo, ElemId hi) {
    if (lo < 0 || hi < 0 || static_cast<std::size_t>(lo) >= L.size() ||
        static_cast<std::size_t>(hi) >= L.size())
        throw std::invalid_argument("interval endpoint out of range");
    if (!L.leq(lo, hi)) throw NotComparable(lo, hi);

    std::vector<ElemId> members;
    detail::BitRow row(L.size());
    row.assign_and(L.up().row(lo), L.down().row(hi));
    detail::for_each_bit(row.data(), row.words(), [&](int v) { members.push_back(v); });

    std::vector<ElemId> new_id(L.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) new_id[members[i]] = static_cast<ElemId>(i);

    // Intervals are order-convex, so covers inside [lo, hi] are exactly the
    // ambient covers between members.
    std::vector<std::pair<ElemId, ElemId>> covers;
    for (ElemId v : members)
        for (ElemId w : L.covers_up(v))
            if (new_id[w] >= 0) covers.emplace_back(new_id[v], new_id[w]);

    std::vector<std::string> labels;
    if (L.has_labels()) {
        labels.reserve(members.size());
        for (ElemId v : members) labels.push_back(L.label(v));
    }
    return {FiniteLattice::from_covers(members.size(), covers, std::move(labels)), members};
}

/// All maximal chains from bottom to any fixed element have equal length.
/// On failure the witness names the offending element and carries two
/// maximal chains of different lengths ending there.
inline CheckReport is_graded(const FiniteLattice& L) {
    const std::size_t n = L.size();
    std::vector<int> shortest(n, 0), longest(n, 0);
    std::vector<ElemId> by_height(n);
    std::iota(by_height.begin(), by_height.end(), 0);
    std::sort(by_height.begin(), by_height.end(), [&](ElemId a, ElemId b) {
        return std::make_pair(L.height(a), a) < std::make_pair(L.height(b), b);
    });
    for (ElemId v : by_height) {
        const auto& preds = L.covers_down(v);
        if (preds.empty()) continue;
        int lo = INT32_MAX, hi = 0;
        for (ElemId p : preds) {
            lo = std::min(lo, shortest[p] + 1);
            hi = std::max(hi, longest[p] + 1);
        }
        shortest[v] = lo;
        longest[v] = hi;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (shortest[v] == longest[v]) continue;
        // Reconstruct one shortest and one longest maximal chain to v.
        auto chain = [&](const std::vector<int>& len) {
            std::vector<ElemId> c = {static_cast<ElemId>(v)};
            ElemId cur = static_cast<ElemId>(v);
            while (len[cur] > 0) {
                for (ElemId p : L.covers_down(cur)) {
                    if (len[p] == len[cur] - 1) {
                        cur = p;
                        break;
                    }
                }
                c.push_back(cur);
            }
            std::reverse(c.begin(), c.end());
            return c;
        };
        Witness w;
        w.parts = {{"element", static_cast<ElemId>(v)}};
        w.chains = {chain(shortest), chain(longest)};
        return CheckReport::fail(std::move(w));
    }
    return CheckReport::pass();
}

/// For every element x and atom a, either a <= x or x v a covers x.
inline CheckReport has_atomic_cover_property(const FiniteLattice& L, unsigned jobs = 1) {
    const auto& atoms = L.atoms();
    auto worker = [&](std::size_t x) -> std::optional<Witness> {
        for (ElemId a : atoms) {
            if (L.leq(a, static_cast<ElemId>(x))) continue;
            ElemId j = L.join(static_cast<ElemId>(x), a);
            if (!L.is_cover(static_cast<ElemId>(x), j))
                return Witness{{{"x", static_cast<ElemId>(x)}, {"atom", a}}, {}};
        }
        return std::nullopt;
    };
    if (auto w = detail::first_hit(L.size(), jobs, worker)) return CheckReport::fail(std::move(*w));
    return CheckReport::pass();
}

/// Every element is the join of the atoms below it.
inline CheckReport is_atomistic(const FiniteLattice& L, unsigned jobs = 1) {
    const auto& atoms = L.atoms();
    auto worker = [&](std::size_t x) -> std::optional<Witness> {
        ElemId j = L.bottom();
        for (ElemId a : atoms)
            if (L.leq(a, static_cast<ElemId>(x))) j = L.join(j, a);
        if (j != static_cast<ElemId>(x))
            return Witness{{{"element", static_cast<ElemId>(x)}}, {}};
        return std::nullopt;
    };
    if (auto w = detail::first_hit(L.size(), jobs, worker)) return CheckReport::fail(std::move(*w));
    return CheckReport::pass();
}

}  // namespace latlin

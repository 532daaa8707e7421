#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latlin/endo.hpp"
#include "latlin/errors.hpp"
#include "latlin/gf.hpp"
#include "latlin/lattice.hpp"

namespace latlin {

/// Default caps for generated instances.
inline constexpr std::size_t kDefaultSubspaceCap = 1000;
inline constexpr std::size_t kDefaultElementCap = 4096;
inline constexpr std::size_t kMaxPowersetGround = 10;

/// The lattice of all subspaces of GF(p)^n ordered by inclusion, together
/// with the subspace each element id stands for. Ids ascend by dimension
/// (zero space first, full space last), so they are a linear extension of
/// the order.
struct SubspaceLattice {
    FiniteLattice lattice;
    std::vector<gf::Subspace> subspaces;

    /// Element id of a subspace given in canonical form.
    ElemId index_of(const gf::Subspace& s) const {
        auto it = index_by_key.find(key_of(s));
        if (it == index_by_key.end())
            throw std::invalid_argument("subspace is not an element of this lattice");
        return it->second;
    }

    static std::string key_of(const gf::Subspace& s) {
        std::string k;
        for (const auto& row : s.basis()) {
            for (std::uint8_t v : row) k += static_cast<char>('0' + v);
            k += '|';
        }
        return k;
    }

    std::map<std::string, ElemId> index_by_key;
};

/// Builds the subspace lattice of GF(p)^n. Joins and meets obtained from
/// the generic bound search are verified pair-by-pair against subspace sum
/// and intersection, so the two routes cross-check each other on every
/// construction. Raises TooLarge beyond `cap` subspaces.
inline SubspaceLattice subspace_lattice(unsigned p, std::size_t n,
                                        std::size_t cap = kDefaultSubspaceCap) {
    SubspaceLattice out;
    out.subspaces = gf::enumerate_subspaces(p, n, cap);
    const std::size_t m = out.subspaces.size();

    for (std::size_t i = 0; i < m; ++i)
        out.index_by_key.emplace(SubspaceLattice::key_of(out.subspaces[i]), static_cast<ElemId>(i));

    // Inclusion order, then covers: T covers S iff S < T with no subspace
    // strictly between; dimensions make the between-test cheap.
    std::vector<std::vector<char>> leq(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            leq[i][j] = out.subspaces[j].contains(out.subspaces[i]);
    std::vector<std::pair<ElemId, ElemId>> covers;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || !leq[i][j]) continue;
            if (out.subspaces[j].dim() != out.subspaces[i].dim() + 1) continue;
            covers.emplace_back(static_cast<ElemId>(i), static_cast<ElemId>(j));
        }

    std::vector<std::string> labels(m);
    for (std::size_t i = 0; i < m; ++i) labels[i] = out.subspaces[i].label();
    out.lattice = FiniteLattice::from_covers(m, covers, std::move(labels));

    // Cross-check: lattice join/meet must agree with subspace sum/intersect.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            ElemId js = out.index_of(gf::subspace_sum(out.subspaces[i], out.subspaces[j]));
            ElemId ms = out.index_of(gf::subspace_intersect(out.subspaces[i], out.subspaces[j]));
            if (out.lattice.join(static_cast<ElemId>(i), static_cast<ElemId>(j)) != js ||
                out.lattice.meet(static_cast<ElemId>(i), static_cast<ElemId>(j)) != ms)
                throw CertificateFailure("lattice bounds disagree with subspace arithmetic at (" +
                                         std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    return out;
}

/// The endomorphism a square matrix induces on the subspace lattice: each
/// element maps to the element representing the image of its subspace.
inline JoinEndo induced_endo(const SubspaceLattice& sl, const gf::GFMatrix& a) {
    if (sl.subspaces.empty()) throw std::invalid_argument("empty subspace lattice");
    const std::size_t n = sl.subspaces[0].ambient();
    if (a.rows() != n || a.cols() != n || a.p() != sl.subspaces[0].p())
        throw DimensionMismatch("matrix shape or field does not match the lattice");
    std::vector<ElemId> table(sl.lattice.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = sl.index_of(gf::matrix_image(a, sl.subspaces[i]));
    return JoinEndo(sl.lattice, std::move(table));
}

/// The powerset lattice of {1..k}: subsets ordered by inclusion, ids
/// ascending by (size, numeric mask), labeled "{1,3}" style. `id_of_mask`
/// and `mask_of` translate between element ids and subset bitmasks.
struct PowersetLattice {
    FiniteLattice lattice;
    std::vector<unsigned> mask_of;
    std::vector<ElemId> id_of_mask;
};

inline PowersetLattice powerset_lattice(std::size_t k,
                                        std::size_t cap = kDefaultElementCap) {
    if (k > kMaxPowersetGround) throw TooLarge(k, kMaxPowersetGround);
    const std::size_t n = std::size_t{1} << k;
    if (n > cap) throw TooLarge(n, cap);

    PowersetLattice out;
    out.mask_of.resize(n);
    std::iota(out.mask_of.begin(), out.mask_of.end(), 0u);
    std::sort(out.mask_of.begin(), out.mask_of.end(), [](unsigned a, unsigned b) {
        return std::make_pair(std::popcount(a), a) < std::make_pair(std::popcount(b), b);
    });
    out.id_of_mask.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) out.id_of_mask[out.mask_of[i]] = static_cast<ElemId>(i);

    std::vector<std::pair<ElemId, ElemId>> covers;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        unsigned m = out.mask_of[i];
        std::string lab = "{";
        for (std::size_t b = 0; b < k; ++b)
            if (m & (1u << b)) {
                if (lab.size() > 1) lab += ",";
                lab += std::to_string(b + 1);
            }
        labels[i] = lab + "}";
        for (std::size_t b = 0; b < k; ++b)
            if (!(m & (1u << b)))
                covers.emplace_back(static_cast<ElemId>(i), out.id_of_mask[m | (1u << b)]);
    }
    out.lattice = FiniteLattice::from_covers(n, covers, std::move(labels));
    return out;
}

/// The set-image endomorphism of the powerset lattice induced by a partial
/// point function f on {1..k}: A maps to {f(i) : i in A, f defined at i}.
/// This preserves unions by construction; it meets the kernel-complement
/// condition exactly when f is injective on its domain, which makes the
/// family a ready source of counterexamples. The kernel element is the
/// complement of dom(f). The carrier must outlive the returned map.
inline JoinEndo powerset_endo(const PowersetLattice& pl, const std::map<int, int>& f) {
    const std::size_t k = pl.id_of_mask.empty()
                              ? 0
                              : static_cast<std::size_t>(std::countr_zero(pl.id_of_mask.size()));
    unsigned image_bit[kMaxPowersetGround] = {};
    bool defined[kMaxPowersetGround] = {};
    for (const auto& [from, to] : f) {
        if (from < 1 || to < 1 || static_cast<std::size_t>(from) > k ||
            static_cast<std::size_t>(to) > k)
            throw BadFunction("point function maps outside {1.." + std::to_string(k) + "}");
        defined[from - 1] = true;
        image_bit[from - 1] = 1u << (to - 1);
    }
    const std::size_t n = pl.lattice.size();
    std::vector<ElemId> table(n);
    for (std::size_t i = 0; i < n; ++i) {
        unsigned m = pl.mask_of[i], im = 0;
        for (std::size_t b = 0; b < k; ++b)
            if ((m & (1u << b)) && defined[b]) im |= image_bit[b];
        table[i] = pl.id_of_mask[im];
    }
    return JoinEndo(pl.lattice, std::move(table));
}

/// Named small lattices: "chain" k (k elements), "boolean" k (2^k subsets),
/// "m3" (diamond), "n5" (pentagon). Raises UnknownName for anything else
/// and TooLarge when k exceeds the element cap.
inline FiniteLattice standard_lattice(std::string_view name, std::size_t k = 0,
                                      std::size_t cap = kDefaultElementCap) {
    if (name == "chain") {
        if (k < 1) throw std::invalid_argument("chain needs at least one element");
        if (k > cap) throw TooLarge(k, cap);
        std::vector<std::pair<ElemId, ElemId>> covers;
        for (std::size_t i = 0; i + 1 < k; ++i)
            covers.emplace_back(static_cast<ElemId>(i), static_cast<ElemId>(i + 1));
        std::vector<std::string> labels(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (i == 0) labels[i] = "0";
            else if (i + 1 == k) labels[i] = "1";
            else if (k <= 28) labels[i] = std::string(1, static_cast<char>('a' + i - 1));
            else labels[i] = "m" + std::to_string(i);
        }
        if (k == 1) labels[0] = "0";
        return FiniteLattice::from_covers(k, covers, std::move(labels));
    }
    if (name == "boolean") {
        return powerset_lattice(k, cap).lattice;
    }
    if (name == "m3") {
        return FiniteLattice::from_covers(
            5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}},
            {"0", "a1", "a2", "a3", "1"});
    }
    if (name == "n5") {
        return FiniteLattice::from_covers(5, {{0, 1}, {0, 2}, {2, 3}, {1, 4}, {3, 4}},
                                          {"0", "a", "b", "c", "1"});
    }
    throw UnknownName(std::string(name));
}

}  // namespace latlin

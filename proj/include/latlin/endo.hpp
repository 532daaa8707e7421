#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "latlin/check.hpp"
#include "latlin/errors.hpp"
#include "latlin/lattice.hpp"
#include "latlin/parallel.hpp"

namespace latlin {

/// Checks that `table` defines a join-preserving endomorphism: it must fix
/// bottom and satisfy table[x v y] = table[x] v table[y] for all pairs.
/// On a finite lattice this binary law extends to arbitrary joins by
/// induction, so nothing beyond the pair scan is needed. The witness is
/// "bottom" alone, or the lexicographically least violating pair (x, y).
inline CheckReport validate_endo(const FiniteLattice& L, const std::vector<ElemId>& table,
                                 unsigned jobs = 1) {
    const std::size_t n = L.size();
    if (table.size() != n) throw std::invalid_argument("endomorphism table has wrong size");
    for (ElemId t : table)
        if (t < 0 || static_cast<std::size_t>(t) >= n)
            throw std::invalid_argument("endomorphism table value out of range");
    if (table[L.bottom()] != L.bottom())
        return CheckReport::fail({{{"bottom", L.bottom()}}, {}});
    auto worker = [&](std::size_t x) -> std::optional<Witness> {
        for (std::size_t y = x; y < n; ++y) {
            ElemId lhs = table[L.join(static_cast<ElemId>(x), static_cast<ElemId>(y))];
            ElemId rhs = L.join(table[x], table[y]);
            if (lhs != rhs)
                return Witness{{{"x", static_cast<ElemId>(x)}, {"y", static_cast<ElemId>(y)}}, {}};
        }
        return std::nullopt;
    };
    if (auto w = detail::first_hit(n, jobs, worker)) return CheckReport::fail(std::move(*w));
    return CheckReport::pass();
}

/// A join-preserving endomorphism of a finite lattice, stored as a full
/// value table. Construction validates the join law and bottom preservation;
/// instances are immutable afterwards. The lattice is held by reference and
/// must outlive the endomorphism.
class JoinEndo {
public:
    JoinEndo(const FiniteLattice& L, std::vector<ElemId> table) : lat_(&L), table_(std::move(table)) {
        CheckReport r = validate_endo(L, table_);
        if (!r.holds) {
            std::string what = "table is not a join endomorphism (";
            for (const auto& [role, id] : r.witness.parts)
                what += role + "=" + std::to_string(id) + " ";
            what.back() = ')';
            throw std::invalid_argument(what);
        }
        image_ = table_[L.top()];
        kernel_ = L.bottom();
        for (std::size_t x = 0; x < L.size(); ++x)
            if (table_[x] == L.bottom()) kernel_ = L.join(kernel_, static_cast<ElemId>(x));
    }

    static JoinEndo identity(const FiniteLattice& L) {
        std::vector<ElemId> t(L.size());
        std::iota(t.begin(), t.end(), 0);
        return JoinEndo(L, std::move(t));
    }

    /// The constant-bottom map.
    static JoinEndo zero(const FiniteLattice& L) {
        return JoinEndo(L, std::vector<ElemId>(L.size(), L.bottom()));
    }

    const FiniteLattice& lattice() const { return *lat_; }
    const std::vector<ElemId>& table() const { return table_; }
    ElemId operator()(ElemId x) const { return table_[x]; }

    /// The largest value: image = table[top]; every value sits below it.
    ElemId image() const { return image_; }

    /// The largest element mapped to bottom: kernel = v{x : table[x] = 0}.
    /// Since the map preserves joins, x <= kernel iff table[x] = bottom.
    ElemId kernel() const { return kernel_; }

    bool same_lattice(const JoinEndo& other) const {
        return lat_ == other.lat_ || lat_->same_order(*other.lat_);
    }

private:
    const FiniteLattice* lat_;
    std::vector<ElemId> table_;
    ElemId image_ = 0, kernel_ = 0;
};

/// f after g: (compose(f, g))(x) = f(g(x)). Raises LatticeMismatch unless
/// both maps live on the same lattice. The composite is revalidated on
/// construction (it is automatically join-preserving).
inline JoinEndo compose(const JoinEndo& f, const JoinEndo& g) {
    if (!f.same_lattice(g)) throw LatticeMismatch();
    const FiniteLattice& L = f.lattice();
    std::vector<ElemId> t(L.size());
    for (std::size_t x = 0; x < L.size(); ++x) t[x] = f(g(static_cast<ElemId>(x)));
    return JoinEndo(L, std::move(t));
}

/// k-fold composite; power(f, 0) is the identity so powers form a monoid.
inline JoinEndo power(const JoinEndo& f, std::size_t k) {
    JoinEndo acc = JoinEndo::identity(f.lattice());
    for (std::size_t i = 0; i < k; ++i) acc = compose(f, acc);
    return acc;
}

/// Kernel-complement condition: whenever x <= y and both map to the same
/// value, some u with f(u) = bottom joins x up to y exactly. Candidates u
/// are scanned only below the kernel, which is sound because f(u) = bottom
/// iff u <= kernel. Witness: the least pair (x, y) with no such u.
inline CheckReport check_jnb2(const JoinEndo& f, unsigned jobs = 1) {
    const FiniteLattice& L = f.lattice();
    const std::size_t n = L.size();
    std::vector<ElemId> kernel_elems;
    for (std::size_t u = 0; u < n; ++u)
        if (f(static_cast<ElemId>(u)) == L.bottom()) kernel_elems.push_back(static_cast<ElemId>(u));
    auto worker = [&](std::size_t x) -> std::optional<Witness> {
        std::optional<Witness> hit;
        detail::for_each_bit(L.up().row(x), L.up().words(), [&](int y) {
            if (hit || f(static_cast<ElemId>(x)) != f(y)) return;
            for (ElemId u : kernel_elems)
                if (L.join(static_cast<ElemId>(x), u) == y) return;
            hit = Witness{{{"x", static_cast<ElemId>(x)}, {"y", y}}, {}};
        });
        return hit;
    };
    if (auto w = detail::first_hit(n, jobs, worker)) return CheckReport::fail(std::move(*w));
    return CheckReport::pass();
}

/// Local surjectivity onto lower sets of image points: for every x, each
/// t <= f(x) must be f(z) for some z <= x. Witness: the least pair (x, t)
/// with an unreachable target.
inline CheckReport check_jnb3(const JoinEndo& f, unsigned jobs = 1) {
    const FiniteLattice& L = f.lattice();
    const std::size_t n = L.size();
    auto worker = [&](std::size_t x) -> std::optional<Witness> {
        detail::BitRow reach(n);
        detail::for_each_bit(L.down().row(x), L.down().words(),
                             [&](int z) { reach.set(f(z)); });
        std::optional<Witness> hit;
        detail::for_each_bit(L.down().row(f(static_cast<ElemId>(x))), L.down().words(), [&](int t) {
            if (!hit && !reach.test(t))
                hit = Witness{{{"x", static_cast<ElemId>(x)}, {"t", t}}, {}};
        });
        return hit;
    };
    if (auto w = detail::first_hit(n, jobs, worker)) return CheckReport::fail(std::move(*w));
    return CheckReport::pass();
}

/// Canonical preimage of t inside [0, x]: the join z* of every z <= x with
/// f(z) <= t. Always f(z*) <= t; when local surjectivity holds at (x, t) an
/// exact preimage sits below z*, forcing f(z*) = t, and z* is then the
/// maximum of all exact preimages. Raises NotBelowImage unless t <= f(x),
/// and PreimageGap when f(z*) falls short (a surjectivity counterexample).
inline ElemId jnb3_preimage(const JoinEndo& f, ElemId x, ElemId t) {
    const FiniteLattice& L = f.lattice();
    if (!L.leq(t, f(x))) throw NotBelowImage(t, x);
    ElemId z_star = L.bottom();
    detail::for_each_bit(L.down().row(x), L.down().words(), [&](int z) {
        if (L.leq(f(z), t)) z_star = L.join(z_star, z);
    });
    if (f(z_star) != t) throw PreimageGap(x, t, z_star, f(z_star));
    return z_star;
}

/// The lowest-id u with f(u) = bottom and x v u = y, for x <= y with
/// f(x) = f(y). Raises NoComplement when no kernel element completes the
/// join (a kernel-complement counterexample at (x, y)).
inline ElemId jnb2_witness(const JoinEndo& f, ElemId x, ElemId y) {
    const FiniteLattice& L = f.lattice();
    if (!L.leq(x, y)) throw NotComparable(x, y);
    if (f(x) != f(y))
        throw std::invalid_argument("jnb2_witness requires f(x) = f(y)");
    for (std::size_t u = 0; u < L.size(); ++u)
        if (f(static_cast<ElemId>(u)) == L.bottom() && L.join(x, static_cast<ElemId>(u)) == y)
            return static_cast<ElemId>(u);
    throw NoComplement(x, y);
}

}  // namespace latlin

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latlin/check.hpp"
#include "latlin/endo.hpp"
#include "latlin/errors.hpp"
#include "latlin/lattice.hpp"
#include "latlin/types.hpp"

namespace latlin {

/// Search caps: independence and minimal-base searches are exponential in
/// the number of atoms, so both refuse lists beyond this size.
inline constexpr std::size_t kMaxSearchAtoms = 20;

/// Result of an independence test. `order` is a permutation of positions
/// into the tested list whose partial joins strictly ascend; it is set
/// exactly when the list is independent.
struct IndependenceResult {
    bool independent = false;
    std::vector<std::size_t> order;

    explicit operator bool() const { return independent; }
};

/// A verified atomic generating set: joining `atoms` along `order` ascends
/// strictly and reaches `join`.
struct BaseCertificate {
    AtomList atoms;
    std::vector<std::size_t> order;
    ElemId join = 0;
};

namespace detail {

inline void require_atoms(const FiniteLattice& L, const AtomList& atoms) {
    std::vector<char> seen(L.size(), 0);
    for (ElemId a : atoms) {
        if (a < 0 || static_cast<std::size_t>(a) >= L.size())
            throw std::invalid_argument("atom id out of range: " + std::to_string(a));
        if (!std::binary_search(L.atoms().begin(), L.atoms().end(), a)) throw NotAnAtom(a);
        if (seen[a]) throw DuplicateAtom(a);
        seen[a] = 1;
    }
}

// Verifies that partial joins along `order` ascend strictly; returns the
// total join.
inline ElemId verify_ascending(const FiniteLattice& L, const AtomList& atoms,
                               const std::vector<std::size_t>& order) {
    ElemId cur = L.bottom();
    for (std::size_t pos : order) {
        ElemId next = L.join(cur, atoms[pos]);
        if (next == cur)
            throw CertificateFailure("certificate chain stalls at atom " +
                                     std::to_string(atoms[pos]));
        cur = next;
    }
    return cur;
}

}  // namespace detail

/// A set of atoms is independent when some ordering makes the partial joins
/// strictly ascend. Searched by DFS over (used-subset, current-join) states
/// with dead-state memoization; a state is dead when every unused atom
/// already sits below the current join. Atoms are tried in list order, so
/// the returned ordering is deterministic. The empty list is independent.
inline IndependenceResult is_independent(const FiniteLattice& L, const AtomList& atoms) {
    detail::require_atoms(L, atoms);
    const std::size_t m = atoms.size();
    if (m > kMaxSearchAtoms) throw TooLarge(m, kMaxSearchAtoms);
    if (m == 0) return {true, {}};

    std::unordered_set<std::uint32_t> dead;
    std::vector<std::size_t> path;
    path.reserve(m);
    const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);

    auto dfs = [&](auto&& self, std::uint32_t mask, ElemId joined) -> bool {
        if (mask == full) return true;
        if (dead.contains(mask)) return false;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (1u << i)) continue;
            if (L.leq(atoms[i], joined)) continue;  // would stall the chain
            path.push_back(i);
            if (self(self, mask | (1u << i), L.join(joined, atoms[i]))) return true;
            path.pop_back();
        }
        dead.insert(mask);
        return false;
    };
    if (dfs(dfs, 0, L.bottom())) return {true, std::move(path)};
    return {false, {}};
}

/// A list of atoms joins irredundantly when dropping any single atom
/// strictly lowers the total join. Witness: the first droppable atom.
inline CheckReport is_irredundant(const FiniteLattice& L, const AtomList& atoms) {
    detail::require_atoms(L, atoms);
    ElemId total = L.join_set(atoms);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        ElemId without = L.bottom();
        for (std::size_t j = 0; j < atoms.size(); ++j)
            if (j != i) without = L.join(without, atoms[j]);
        if (without == total) return CheckReport::fail({{{"atom", atoms[i]}}, {}});
    }
    return CheckReport::pass();
}

/// Smallest set of atoms joining to `target`, found by scanning subset
/// cardinalities 1, 2, .. and, within a cardinality, subsets of the
/// ascending atom list in lexicographic order. Minimality makes every
/// ordering of the result strictly ascending; the certificate carries the
/// identity order after verifying it. Raises TopNotAtomJoin when the atoms
/// below `target` do not join up to it.
inline BaseCertificate minimal_atomic_base(const FiniteLattice& L, ElemId target) {
    if (target < 0 || static_cast<std::size_t>(target) >= L.size())
        throw std::invalid_argument("target id out of range");
    AtomList cand;
    for (ElemId a : L.atoms())
        if (L.leq(a, target)) cand.push_back(a);
    if (L.join_set(cand) != target) throw TopNotAtomJoin(target, L.join_set(cand));
    if (target == L.bottom()) return {{}, {}, L.bottom()};
    if (cand.size() > kMaxSearchAtoms) throw TooLarge(cand.size(), kMaxSearchAtoms);

    const std::size_t k = cand.size();
    std::vector<std::size_t> idx;
    for (std::size_t m = 1; m <= k; ++m) {
        // Lexicographic m-combinations of positions 0..k-1.
        idx.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        while (true) {
            ElemId j = L.bottom();
            for (std::size_t i : idx) j = L.join(j, cand[i]);
            if (j == target) {
                BaseCertificate cert;
                for (std::size_t i : idx) cert.atoms.push_back(cand[i]);
                cert.order.resize(m);
                std::iota(cert.order.begin(), cert.order.end(), 0);
                cert.join = detail::verify_ascending(L, cert.atoms, cert.order);
                return cert;
            }
            // Advance the combination: bump the rightmost position that has
            // room, then repack the tail just after it.
            bool advanced = false;
            std::size_t i = m;
            while (i-- > 0) {
                if (idx[i] != i + k - m) {
                    ++idx[i];
                    for (std::size_t l = i + 1; l < m; ++l) idx[l] = idx[l - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    throw CertificateFailure("minimal base search exhausted despite atoms joining to target");
}

/// Minimal atomic base of the whole lattice (target = top).
inline BaseCertificate minimal_atomic_base(const FiniteLattice& L) {
    return minimal_atomic_base(L, L.top());
}

/// On a graded lattice with the atomic cover property, every independent
/// atom list joins irredundantly. Verifies the hypotheses (gradedness
/// first, then the cover property, then independence), raising
/// HypothesisUnmet naming the first failure, and returns the irredundance
/// verdict. A failing verdict would contradict the theory and should be
/// treated as a soundness alarm by callers.
inline CheckReport check_irredundant_join(const FiniteLattice& L, const AtomList& atoms) {
    if (CheckReport g = is_graded(L); !g.holds) throw HypothesisUnmet("graded", g);
    if (CheckReport c = has_atomic_cover_property(L); !c.holds)
        throw HypothesisUnmet("atomic_cover", c);
    if (!is_independent(L, atoms).independent) throw HypothesisUnmet("independence");
    return is_irredundant(L, atoms);
}

/// Lifts an atom of [0, image(f)] through f: returns the lowest-id atom a*
/// of the lattice with f(a*) = a. Requires an atomistic lattice and local
/// surjectivity of f (checked, raising HypothesisUnmet), under which a lift
/// always exists; NoAtomPreimage signals an internal soundness failure.
inline ElemId lift_atom(const JoinEndo& f, ElemId a) {
    const FiniteLattice& L = f.lattice();
    if (CheckReport at = is_atomistic(L); !at.holds) throw HypothesisUnmet("atomistic", at);
    if (CheckReport j3 = check_jnb3(f); !j3.holds) throw HypothesisUnmet("jnb3", j3);
    if (!std::binary_search(L.atoms().begin(), L.atoms().end(), a) || !L.leq(a, f.image()))
        throw HypothesisUnmet("atom_below_image");
    for (ElemId c : L.atoms())
        if (f(c) == a) return c;
    throw NoAtomPreimage(a);
}

/// Extends an atomic base of [0, kernel(f)] by lifts of an atomic base of
/// [0, image(f)] into an atomic base of the whole lattice. Requires an
/// atomistic lattice and both endomorphism conditions (kernel complements
/// and local surjectivity); the supplied lists must be independent atom
/// sets joining to kernel and image respectively (ambient ids).
///
/// The certificate lists kernel atoms first, then the lifted atoms, ordered
/// by each input's own independence witness; the combined chain is verified
/// to ascend strictly to top (CertificateFailure otherwise) and has size
/// p + q for |im_base| = p, |ker_base| = q.
inline BaseCertificate extend_base(const JoinEndo& f, const AtomList& ker_base,
                                   const AtomList& im_base) {
    const FiniteLattice& L = f.lattice();
    if (CheckReport at = is_atomistic(L); !at.holds) throw HypothesisUnmet("atomistic", at);
    if (CheckReport j2 = check_jnb2(f); !j2.holds) throw HypothesisUnmet("jnb2", j2);
    if (CheckReport j3 = check_jnb3(f); !j3.holds) throw HypothesisUnmet("jnb3", j3);

    detail::require_atoms(L, ker_base);
    detail::require_atoms(L, im_base);
    for (ElemId b : ker_base)
        if (!L.leq(b, f.kernel())) throw HypothesisUnmet("ker_base_below_kernel");
    for (ElemId c : im_base)
        if (!L.leq(c, f.image())) throw HypothesisUnmet("im_base_below_image");

    IndependenceResult ker_ind = is_independent(L, ker_base);
    if (!ker_ind.independent) throw HypothesisUnmet("ker_base_independent");
    if (L.join_set(ker_base) != f.kernel()) throw HypothesisUnmet("ker_base_joins_kernel");
    IndependenceResult im_ind = is_independent(L, im_base);
    if (!im_ind.independent) throw HypothesisUnmet("im_base_independent");
    if (L.join_set(im_base) != f.image()) throw HypothesisUnmet("im_base_joins_image");

    BaseCertificate cert;
    cert.atoms = ker_base;
    for (ElemId c : im_base) cert.atoms.push_back(lift_atom(f, c));
    for (std::size_t pos : ker_ind.order) cert.order.push_back(pos);
    for (std::size_t pos : im_ind.order) cert.order.push_back(ker_base.size() + pos);
    cert.join = detail::verify_ascending(L, cert.atoms, cert.order);
    if (cert.join != L.top())
        throw CertificateFailure("extended base joins to " + std::to_string(cert.join) +
                                 " instead of top");
    return cert;
}

/// Lattice rank-nullity data: p atoms span [0, image], q atoms span
/// [0, kernel], and their extension is a p + q atomic base of the lattice.
struct RankNullity {
    std::size_t p = 0, q = 0;
    BaseCertificate im_base, ker_base, combined;
};

/// Computes minimal atomic bases of [0, image(f)] and [0, kernel(f)] and
/// extends them to a base of the whole lattice. Preconditions are those of
/// extend_base. On graded atomistic lattices p + q equals the height of top.
inline RankNullity rank_nullity_report(const JoinEndo& f) {
    const FiniteLattice& L = f.lattice();
    RankNullity r;
    r.ker_base = minimal_atomic_base(L, f.kernel());
    r.im_base = minimal_atomic_base(L, f.image());
    r.q = r.ker_base.atoms.size();
    r.p = r.im_base.atoms.size();
    r.combined = extend_base(f, r.ker_base.atoms, r.im_base.atoms);
    return r;
}

}  // namespace latlin

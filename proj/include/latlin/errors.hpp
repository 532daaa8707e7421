#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "latlin/check.hpp"
#include "latlin/types.hpp"

namespace latlin {

/// Base class for all structured errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string ids_to_string(const std::vector<ElemId>& ids) {
    std::string s = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(ids[i]);
    }
    return s + "]";
}
}  // namespace detail

/// The cover digraph contains a directed cycle (listed in walk order).
struct CycleDetected : Error {
    std::vector<ElemId> path;
    explicit CycleDetected(std::vector<ElemId> p)
        : Error("cover relation contains a cycle through " + detail::ids_to_string(p)),
          path(std::move(p)) {}
};

/// The poset has no unique least element.
struct NoBottom : Error {
    NoBottom() : Error("poset has no unique bottom element") {}
};

/// The poset has no unique greatest element.
struct NoTop : Error {
    NoTop() : Error("poset has no unique top element") {}
};

/// Some pair has no unique least upper bound or greatest lower bound.
/// (x, y) is the lexicographically least offending pair.
struct NotALattice : Error {
    ElemId x, y;
    NotALattice(ElemId x_, ElemId y_)
        : Error("not a lattice: pair (" + std::to_string(x_) + ", " + std::to_string(y_) +
                ") has no unique bound"),
          x(x_), y(y_) {}
};

/// An interval request [lo, hi] with lo not below hi.
struct NotComparable : Error {
    ElemId lo, hi;
    NotComparable(ElemId lo_, ElemId hi_)
        : Error("elements " + std::to_string(lo_) + " and " + std::to_string(hi_) +
                " are not ordered lo <= hi"),
          lo(lo_), hi(hi_) {}
};

/// Two endomorphisms were combined over different lattices.
struct LatticeMismatch : Error {
    LatticeMismatch() : Error("endomorphisms live on different lattices") {}
};

/// Preimage request for a target not below the image of the point.
struct NotBelowImage : Error {
    ElemId t, x;
    NotBelowImage(ElemId t_, ElemId x_)
        : Error("target " + std::to_string(t_) + " is not below the image of " +
                std::to_string(x_)),
          t(t_), x(x_) {}
};

/// The canonical preimage candidate undershoots its target; doubles as a
/// surjectivity counterexample at (x, t).
struct PreimageGap : Error {
    ElemId x, t, z_star, maps_to;
    PreimageGap(ElemId x_, ElemId t_, ElemId z, ElemId mt)
        : Error("preimage gap at (x=" + std::to_string(x_) + ", t=" + std::to_string(t_) +
                "): largest candidate " + std::to_string(z) + " maps to " + std::to_string(mt)),
          x(x_), t(t_), z_star(z), maps_to(mt) {}
};

/// No kernel element completes x to y by a join.
struct NoComplement : Error {
    ElemId x, y;
    NoComplement(ElemId x_, ElemId y_)
        : Error("no kernel element joins " + std::to_string(x_) + " up to " + std::to_string(y_)),
          x(x_), y(y_) {}
};

/// An element supplied as an atom is not an atom.
struct NotAnAtom : Error {
    ElemId id;
    explicit NotAnAtom(ElemId id_)
        : Error("element " + std::to_string(id_) + " is not an atom"), id(id_) {}
};

/// An atom list contains the same atom twice.
struct DuplicateAtom : Error {
    ElemId id;
    explicit DuplicateAtom(ElemId id_)
        : Error("atom " + std::to_string(id_) + " appears more than once"), id(id_) {}
};

/// The join of all available atoms falls short of the requested element.
struct TopNotAtomJoin : Error {
    ElemId target, atom_join;
    TopNotAtomJoin(ElemId target_, ElemId aj)
        : Error("element " + std::to_string(target_) + " is not a join of atoms (atoms join to " +
                std::to_string(aj) + ")"),
          target(target_), atom_join(aj) {}
};

/// A stated hypothesis of an operation does not hold. `which` names the
/// hypothesis; `detail` carries the failing check's witness when one exists.
struct HypothesisUnmet : Error {
    std::string which;
    CheckReport detail;
    explicit HypothesisUnmet(std::string which_, CheckReport detail_ = CheckReport::pass())
        : Error("hypothesis unmet: " + which_), which(std::move(which_)),
          detail(std::move(detail_)) {}
};

/// No atom maps onto the requested atom. Unreachable when the stated
/// hypotheses were verified; raised as a soundness alarm otherwise.
struct NoAtomPreimage : Error {
    ElemId atom;
    explicit NoAtomPreimage(ElemId a)
        : Error("no atom maps onto atom " + std::to_string(a)), atom(a) {}
};

/// A constructed certificate failed its own verification. Indicates a bug,
/// never a property of the input.
struct CertificateFailure : Error {
    using Error::Error;
};

/// An instance exceeds the configured size cap.
struct TooLarge : Error {
    std::size_t count, cap;
    TooLarge(std::size_t count_, std::size_t cap_)
        : Error("instance size " + std::to_string(count_) + " exceeds cap " +
                std::to_string(cap_)),
          count(count_), cap(cap_) {}
};

/// Matrix/vector dimensions or field characteristics do not line up.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Requested field order is not a supported prime.
struct NotAField : Error {
    unsigned p;
    explicit NotAField(unsigned p_, unsigned max_prime)
        : Error("field order must be a prime <= " + std::to_string(max_prime) + ", got " +
                std::to_string(p_)),
          p(p_) {}
};

/// A point function on {1..n} is malformed.
struct BadFunction : Error {
    using Error::Error;
};

/// Unknown generator family name.
struct UnknownName : Error {
    std::string name;
    explicit UnknownName(std::string n)
        : Error("unknown name: " + n), name(std::move(n)) {}
};

}  // namespace latlin

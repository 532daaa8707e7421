#pragma once

// Hand-written cover lists shared by the test files.

#include <utility>
#include <vector>

#include "latlin/lattice.hpp"

namespace testutil {

using CoverList = std::vector<std::pair<latlin::ElemId, latlin::ElemId>>;

/// Diamond: bottom 0, atoms 1 2 3, top 4.
inline const CoverList kM3Covers = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};

/// Pentagon: bottom 0, short side 1, long side 2 < 3, top 4.
inline const CoverList kN5Covers = {{0, 1}, {0, 2}, {2, 3}, {1, 4}, {3, 4}};

/// Subsets of {0,1,2}; element id = characteristic bitmask 0..7.
inline CoverList cube_covers() {
    CoverList c;
    for (int s = 0; s < 8; ++s)
        for (int b = 0; b < 3; ++b)
            if (!(s >> b & 1)) c.push_back({s, s | (1 << b)});
    return c;
}

inline latlin::FiniteLattice make_cube() {
    return latlin::FiniteLattice::from_covers(8, cube_covers());
}

inline latlin::FiniteLattice make_m3() {
    return latlin::FiniteLattice::from_covers(5, kM3Covers);
}

inline latlin::FiniteLattice make_n5() {
    return latlin::FiniteLattice::from_covers(5, kN5Covers);
}

inline latlin::FiniteLattice make_chain(int k) {
    CoverList c;
    for (int i = 0; i + 1 < k; ++i) c.push_back({i, i + 1});
    return latlin::FiniteLattice::from_covers(static_cast<std::size_t>(k), c);
}

}  // namespace testutil

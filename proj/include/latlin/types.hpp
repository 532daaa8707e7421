#pragma once

#include <vector>

namespace latlin {

/// Elements of a finite lattice are dense integer ids in [0, n).
using ElemId = int;

/// A list of atom ids (order matters for independence witnesses).
using AtomList = std::vector<ElemId>;

}  // namespace latlin

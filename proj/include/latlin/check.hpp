#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latlin/types.hpp"

namespace latlin {

/// Concrete evidence for a failed check: element ids tagged with the role
/// they play in the violated definition. Checks whose counterexamples are
/// chains (e.g. gradedness) additionally carry the chains themselves, each
/// listed bottom-up.
struct Witness {
    std::vector<std::pair<std::string, ElemId>> parts;
    std::vector<std::vector<ElemId>> chains;

    ElemId at(const std::string& role) const {
        for (const auto& [r, id] : parts)
            if (r == role) return id;
        return -1;
    }
};

/// Verdict of a property check. A witness is present exactly when the
/// property fails, and replaying it against the definition must exhibit
/// the violation.
struct CheckReport {
    bool holds = true;
    Witness witness;

    static CheckReport pass() { return {true, {}}; }
    static CheckReport fail(Witness w) { return {false, std::move(w)}; }

    explicit operator bool() const { return holds; }
};

}  // namespace latlin

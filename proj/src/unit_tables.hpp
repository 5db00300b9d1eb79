#pragma once

#include <string>
#include <vector>

#include "tforge/structure.hpp"

namespace tforge::detail {

struct BlockText {
    std::string label;
    std::size_t size;
    /// Empty for a residual block.
    std::vector<std::string> units;
};

/// corner < 0: the full algebra; otherwise E_corner* T E_corner*.
std::vector<BlockText> unit_table(CaseKind k, int corner);

}  // namespace tforge::detail

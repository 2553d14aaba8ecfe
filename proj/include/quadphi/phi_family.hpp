#pragma once

#include <vector>

#include "quadphi/matrix.hpp"

namespace quadphi {

/// Ordered approximations C_0..C_L of the oscillatory functions at one
/// scaling level; members[k] approximates the index-k function of the
/// level's argument.
struct PhiFamily {
    int level = 0;
    std::vector<DenseMatrix> members;

    int highest_index() const { return int(members.size()) - 1; }
    int dim() const { return members.empty() ? 0 : members.front().dim(); }
};

} // namespace quadphi

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadphi/matrix.hpp"

namespace quadphi::gallery {

/// Deterministic generator request: same spec always yields a bit-identical
/// matrix, on any platform, because all randomness flows through the
/// counter-based generator below.
struct GallerySpec {
    std::string name;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<double> params;
};

/// splitmix64 finalizer; the suite's sole source of randomness.
std::uint64_t splitmix64(std::uint64_t state);

/// Deterministic double in [-1, 1) from (seed, counter): the counter is
/// folded into the state with the 64-bit golden-ratio increment and the top
/// 53 bits of the mixed word form the mantissa.
double uniform_pm1(std::uint64_t seed, std::uint64_t counter);

/// Registered generators: zero, identity-scaled, diag-logspace, jordan-block,
/// symmetric-psd, symmetric-indefinite, nonnormal-triangular, random-dense,
/// nilpotent, rotation-like. Unknown names throw.
DenseMatrix generate(const GallerySpec& spec);

struct SuiteEntry {
    std::string id; // unique within the suite; used in manifests and reports
    GallerySpec spec;
    bool psd = false;
};

/// Default verification suite: 30+ members, dimensions up to 16, 1-norms
/// from zero through 1e4, covering every degree/scaling branch of the
/// parameter selector.
std::vector<SuiteEntry> default_suite();

} // namespace quadphi::gallery

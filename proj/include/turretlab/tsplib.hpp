#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace turretlab::tsplib {

/// Writes a symmetric TSPLIB instance with EDGE_WEIGHT_TYPE: EXPLICIT and
/// EDGE_WEIGHT_FORMAT: FULL_MATRIX. Weights are round(1e6 * radians).
void write_explicit_full_matrix(const std::filesystem::path& file,
                                const std::string& name,
                                const std::string& comment,
                                const std::vector<std::vector<double>>& radians);

}  // namespace turretlab::tsplib

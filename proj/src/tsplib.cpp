#include "turretlab/tsplib.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "turretlab/errors.hpp"

namespace turretlab::tsplib {

void write_explicit_full_matrix(const std::filesystem::path& file,
                                const std::string& name,
                                const std::string& comment,
                                const std::vector<std::vector<double>>& radians) {
    std::ofstream out(file);
    if (!out) throw Error("tsplib: cannot open " + file.string());

    const std::size_t dim = radians.size();
    out << "NAME : " << name << "\n";
    out << "COMMENT : " << comment << "\n";
    out << "TYPE : TSP\n";
    out << "DIMENSION : " << dim << "\n";
    out << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
    out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
    out << "EDGE_WEIGHT_SECTION\n";
    for (const auto& row : radians) {
        if (row.size() != dim) throw Error("tsplib: matrix is not square");
        for (std::size_t j = 0; j < dim; ++j) {
            auto w = static_cast<std::int64_t>(std::llround(1e6 * row[j]));
            out << w << (j + 1 == dim ? "\n" : " ");
        }
    }
    out << "EOF\n";
}

}  // namespace turretlab::tsplib

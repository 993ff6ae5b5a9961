#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polylab/vec.hpp"

namespace polylab::io {

// One polygon as it appears in the CSV stream. The format is one row per edge:
//   poly_id, edge_index, x, y[, z]
// with the z column present exactly when dim == 3; numbers are written with 17
// significant digits so doubles round-trip bit-exactly.
struct PolygonRecord {
    std::int64_t poly_id = 0;
    int dim = 3;
    std::vector<Vec3> edges;
};

std::string format_g17(double v);

void write_polygons_csv(std::ostream& os, const std::vector<PolygonRecord>& polys);
std::vector<PolygonRecord> read_polygons_csv(std::istream& is);

}  // namespace polylab::io

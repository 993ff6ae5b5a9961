#include "polylab/csvio.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace polylab::io {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_polygons_csv(std::ostream& os, const std::vector<PolygonRecord>& polys) {
    if (polys.empty()) {
        os << "poly_id,edge_index,x,y,z\n";
        return;
    }
    const int dim = polys.front().dim;
    os << (dim == 3 ? "poly_id,edge_index,x,y,z\n" : "poly_id,edge_index,x,y\n");
    for (const PolygonRecord& p : polys) {
        if (p.dim != dim)
            throw std::invalid_argument("write_polygons_csv: mixed dimensions in one stream");
        for (std::size_t i = 0; i < p.edges.size(); ++i) {
            os << p.poly_id << ',' << i << ',' << format_g17(p.edges[i].x) << ','
               << format_g17(p.edges[i].y);
            if (dim == 3) os << ',' << format_g17(p.edges[i].z);
            os << '\n';
        }
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::runtime_error("polygon CSV: bad number '" + s + "' on line " +
                                 std::to_string(line_no));
    return v;
}

}  // namespace

std::vector<PolygonRecord> read_polygons_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("polygon CSV: empty input");
    const auto header = split_csv_line(line);
    int dim;
    if (header.size() == 5)
        dim = 3;
    else if (header.size() == 4)
        dim = 2;
    else
        throw std::runtime_error("polygon CSV: header must have 4 or 5 columns");

    std::vector<PolygonRecord> polys;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (static_cast<int>(f.size()) != (dim == 3 ? 5 : 4))
            throw std::runtime_error("polygon CSV: wrong column count on line " +
                                     std::to_string(line_no));
        const std::int64_t id = std::strtoll(f[0].c_str(), nullptr, 10);
        const long idx = std::strtol(f[1].c_str(), nullptr, 10);
        Vec3 e{parse_double(f[2], line_no), parse_double(f[3], line_no),
               dim == 3 ? parse_double(f[4], line_no) : 0.0};
        if (polys.empty() || polys.back().poly_id != id) {
            if (idx != 0)
                throw std::runtime_error("polygon CSV: polygon " + std::to_string(id) +
                                         " does not start at edge_index 0");
            polys.push_back({id, dim, {}});
        } else if (idx != static_cast<long>(polys.back().edges.size())) {
            throw std::runtime_error("polygon CSV: non-consecutive edge_index on line " +
                                     std::to_string(line_no));
        }
        polys.back().edges.push_back(e);
    }
    return polys;
}

}  // namespace polylab::io

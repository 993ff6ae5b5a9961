#include "polylab/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polylab::geom {

namespace {

void check_edges(int dim, const std::vector<Vec3>& edges, std::size_t min_count,
                 const char* what) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument(std::string(what) + ": dimension must be 2 or 3");
    if (edges.size() < min_count)
        throw std::invalid_argument(std::string(what) + ": too few edges (need >= " +
                                    std::to_string(min_count) + ", got " +
                                    std::to_string(edges.size()) + ")");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!edges[i].is_finite())
            throw std::invalid_argument(std::string(what) + ": non-finite edge at index " +
                                        std::to_string(i));
        if (dim == 2 && edges[i].z != 0.0)
            throw std::invalid_argument(std::string(what) + ": planar edge at index " +
                                        std::to_string(i) + " has nonzero z");
    }
}

double checked_norm(const Vec3& e, int index) {
    const double n = e.norm();
    if (n <= 0.0)
        throw std::domain_error("zero-length edge at index " + std::to_string(index));
    return n;
}

double turning_angle_indexed(const Vec3& e1, const Vec3& e2, int i1, int i2) {
    const double n1 = checked_norm(e1, i1);
    const double n2 = checked_norm(e2, i2);
    const double c = std::clamp(dot(e1, e2) / (n1 * n2), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace

PolygonArm::PolygonArm(int dim, std::vector<Vec3> edges) : dim_(dim), edges_(std::move(edges)) {
    check_edges(dim_, edges_, 1, "PolygonArm");
}

ClosedPolygon::ClosedPolygon(int dim, std::vector<Vec3> edges, double closure_tol)
    : dim_(dim), edges_(std::move(edges)), closure_tol_(closure_tol) {
    check_edges(dim_, edges_, 3, "ClosedPolygon");
    Vec3 sum{};
    double len = 0.0;
    for (const Vec3& e : edges_) {
        sum += e;
        len += e.norm();
    }
    if (sum.norm() > closure_tol_ * len)
        throw std::invalid_argument("ClosedPolygon: closure defect " +
                                    std::to_string(sum.norm()) + " exceeds tolerance");
}

double turning_angle(const Vec3& e1, const Vec3& e2) {
    return turning_angle_indexed(e1, e2, 0, 1);
}

double total_curvature(const ClosedPolygon& p) {
    const auto& e = p.edges();
    const int n = p.edge_count();
    double kappa = 0.0;
    for (int i = 0; i < n; ++i)
        kappa += turning_angle_indexed(e[i], e[(i + 1) % n], i, (i + 1) % n);
    return kappa;
}

double total_curvature(const PolygonArm& p) {
    const auto& e = p.edges();
    const int n = p.edge_count();
    double kappa = 0.0;
    for (int i = 0; i + 1 < n; ++i) kappa += turning_angle_indexed(e[i], e[i + 1], i, i + 1);
    return kappa;
}

double total_torsion(const ClosedPolygon& p) {
    if (p.dim() != 3)
        throw std::invalid_argument("total_torsion: requires a 3-dimensional polygon");
    const auto& e = p.edges();
    const int n = p.edge_count();
    // Binormal direction of each consecutive edge pair; near-parallel pairs
    // get a zero marker and their dihedral contributions are skipped.
    std::vector<Vec3> binormal(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vec3& a = e[i];
        const Vec3& b = e[(i + 1) % n];
        checked_norm(a, i);
        const Vec3 c = cross(a, b);
        const double cn = c.norm();
        binormal[i] = (cn > 1e-14 * a.norm() * b.norm()) ? c * (1.0 / cn) : Vec3{};
    }
    double tau = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec3& b1 = binormal[i];
        const Vec3& b2 = binormal[(i + 1) % n];
        if (b1.norm2() == 0.0 || b2.norm2() == 0.0) continue;
        tau += std::acos(std::clamp(dot(b1, b2), -1.0, 1.0));
    }
    return tau;
}

std::vector<Vec3> vertices(const PolygonArm& p) {
    std::vector<Vec3> v(static_cast<std::size_t>(p.edge_count()) + 1);
    v[0] = Vec3{};
    for (int i = 0; i < p.edge_count(); ++i) v[i + 1] = v[i] + p.edge(i);
    return v;
}

std::vector<Vec3> vertices(const ClosedPolygon& p) {
    std::vector<Vec3> v(static_cast<std::size_t>(p.edge_count()));
    v[0] = Vec3{};
    for (int i = 0; i + 1 < p.edge_count(); ++i) v[i + 1] = v[i] + p.edge(i);
    return v;
}

double chord_squared_mean(const ClosedPolygon& p, int k) {
    const int n = p.edge_count();
    if (k < 1 || k > n)
        throw std::invalid_argument("chord_squared_mean: k must be in [1, n]");
    const int kk = std::min(k, n - k);  // chord(k) == chord(n-k) made exact
    if (kk == 0) return 0.0;
    const auto v = vertices(p);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec3 d = v[(i + kk) % n] - v[i];
        acc += d.norm2();
    }
    return acc / n;
}

double chord_squared_mean(const PolygonArm& p, int k) {
    const int n = p.edge_count();
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("chord_squared_mean: k must be in [1, n-1] for arms");
    const auto v = vertices(p);
    double acc = 0.0;
    for (int i = 0; i < n - k; ++i) {
        Vec3 d = v[i + k] - v[i];
        acc += d.norm2();
    }
    return acc / (n - k);
}

double gyradius_squared_of_points(std::span<const Vec3> pts) {
    Vec3 c{};
    for (const Vec3& v : pts) c += v;
    c *= 1.0 / static_cast<double>(pts.size());
    double acc = 0.0;
    for (const Vec3& v : pts) acc += (v - c).norm2();
    return acc / static_cast<double>(pts.size());
}

double gyradius_squared(const ClosedPolygon& p) {
    const auto v = vertices(p);
    return gyradius_squared_of_points(v);
}

double gyradius_squared(const PolygonArm& p) {
    const auto v = vertices(p);
    return gyradius_squared_of_points(v);
}

Vec3 closure_defect(const PolygonArm& p) {
    Vec3 sum{};
    for (const Vec3& e : p.edges()) sum += e;
    return sum;
}

double total_length(const ClosedPolygon& p) {
    double len = 0.0;
    for (const Vec3& e : p.edges()) len += e.norm();
    return len;
}

double total_length(const PolygonArm& p) {
    double len = 0.0;
    for (const Vec3& e : p.edges()) len += e.norm();
    return len;
}

}  // namespace polylab::geom

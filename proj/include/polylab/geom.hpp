#pragma once

#include <span>
#include <string>
#include <vector>

#include "polylab/vec.hpp"

namespace polylab::geom {

// Edge-vector representation of an open polygonal chain. Planar chains are
// stored with z == 0 and dim == 2 so that all functionals share one code path.
class PolygonArm {
  public:
    PolygonArm(int dim, std::vector<Vec3> edges);

    int dim() const { return dim_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Vec3>& edges() const { return edges_; }
    const Vec3& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }

  private:
    int dim_;
    std::vector<Vec3> edges_;
};

// Closed polygon: edge vectors summing to (numerically) zero. The relative
// closure defect |sum e_i| / sum |e_i| is checked against tol at construction.
class ClosedPolygon {
  public:
    static constexpr double kDefaultClosureTol = 1e-10;

    ClosedPolygon(int dim, std::vector<Vec3> edges, double closure_tol = kDefaultClosureTol);

    int dim() const { return dim_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Vec3>& edges() const { return edges_; }
    const Vec3& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
    double closure_tol() const { return closure_tol_; }

  private:
    int dim_;
    std::vector<Vec3> edges_;
    double closure_tol_;
};

// Angle in [0, pi] between two edge vectors; the cosine is clamped to [-1, 1]
// since the inner product can exceed |e1||e2| by a few ulps.
double turning_angle(const Vec3& e1, const Vec3& e2);

// Sum of turning angles. Closed polygons include the wraparound pair
// (e_{n-1}, e_0); an n-edge arm has n-1 angles. Fenchel: closed => >= 2*pi.
double total_curvature(const ClosedPolygon& p);
double total_curvature(const PolygonArm& p);

// Sum over consecutive edge triples of the angle in [0, pi] between successive
// binormals e_i x e_{i+1}. Triples with parallel adjacent edges contribute 0
// (the binormal is undefined there, a measure-zero event). Requires dim == 3.
double total_torsion(const ClosedPolygon& p);

// Mean over start positions of the squared chord skipping k edges. Closed
// polygons use all n cyclic windows and satisfy chord(k) == chord(n-k) exactly
// (evaluation canonicalizes k to min(k, n-k)); k == n is admitted and returns
// the closure value 0. Arms use the n-k windows starting at vertices 0..n-k-1.
double chord_squared_mean(const ClosedPolygon& p, int k);
double chord_squared_mean(const PolygonArm& p, int k);

// Squared radius of gyration: mean squared distance of the vertices from their
// centroid. Arms use all n+1 vertices 0, e_1, e_1+e_2, ...; closed polygons use
// their n distinct vertices.
double gyradius_squared(const ClosedPolygon& p);
double gyradius_squared(const PolygonArm& p);
double gyradius_squared_of_points(std::span<const Vec3> pts);

Vec3 closure_defect(const PolygonArm& p);

double total_length(const ClosedPolygon& p);
double total_length(const PolygonArm& p);

// Vertices with the first placed at the origin: n+1 points for an n-edge arm,
// n points for a closed polygon (the repeated endpoint is dropped).
std::vector<Vec3> vertices(const PolygonArm& p);
std::vector<Vec3> vertices(const ClosedPolygon& p);

}  // namespace polylab::geom

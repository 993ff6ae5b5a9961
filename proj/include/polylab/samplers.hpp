#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polylab/geom.hpp"
#include "polylab/rng.hpp"

namespace polylab::samplers {

struct SamplerConfig {
    int n = 3;
    int d = 3;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// A spherically symmetric edge-generating law, described by its radial part.
struct RadialDensity {
    std::string label;
    std::function<double(Rng&)> sample_radius;
    std::function<double(int)> moment;         // m_p for p in {0,1,2,3}
    std::function<double(double)> density;     // f(r); empty when unavailable
};

// Point mass at r = 1: the equilateral edge law.
RadialDensity unit_radius_density();

// chi-squared radius with the given dof; dof = 2^{d-1} reproduces the
// Hopf-Gaussian edgelength law in dimension d.
RadialDensity chi_squared_radius_density(int dof);

// n iid edges, each the Hopf image of a standard Gaussian quaternion (d = 3)
// or of a Gaussian point in one of the two planar model-space components (d = 2).
class HopfGaussianArmSampler {
  public:
    explicit HopfGaussianArmSampler(const SamplerConfig& cfg);
    geom::PolygonArm next();
    const SamplerConfig& config() const { return cfg_; }

  private:
    SamplerConfig cfg_;
    Rng rng_;
};

// Closed polygons of total length 2 from Haar-random orthonormal 2-frames:
// Gaussian frame vectors, modified Gram-Schmidt with one re-orthogonalization
// pass, then the coordinatewise Hopf map. Closure and total length hold to
// roughly n * eps.
class SymmetricClosedSampler {
  public:
    explicit SymmetricClosedSampler(const SamplerConfig& cfg);
    geom::ClosedPolygon next();
    std::uint64_t degenerate_resamples() const { return degenerate_; }
    const SamplerConfig& config() const { return cfg_; }
    Rng& rng() { return rng_; }

  private:
    void draw_frame_complex();
    void draw_frame_real();

    SamplerConfig cfg_;
    Rng rng_;
    std::uint64_t degenerate_ = 0;
    std::vector<std::complex<double>> u_, v_;
    std::vector<double> ur_, vr_;
};

// Hopf-Gaussian measure on closed polygons, realized through its product
// structure: a symmetric-measure polygon scaled by an independent chi-squared
// total length with 2^{d-1} n degrees of freedom.
class HopfGaussianClosedSampler {
  public:
    explicit HopfGaussianClosedSampler(const SamplerConfig& cfg);
    geom::ClosedPolygon next();

  private:
    SymmetricClosedSampler symmetric_;
    SamplerConfig cfg_;
};

// n iid edges: uniform direction scaled by an iid radius from the law.
class RadialArmSampler {
  public:
    RadialArmSampler(const SamplerConfig& cfg, RadialDensity law);
    geom::PolygonArm next();
    const RadialDensity& law() const { return law_; }

  private:
    SamplerConfig cfg_;
    RadialDensity law_;
    Rng rng_;
};

struct McmcOptions {
    long burn_in = -1;            // -1 => 10 n moves
    long thinning = -1;           // -1 => n moves between emitted samples
    long reclose_interval = 256;  // moves between closure re-projections
};

// Crankshaft Markov chain on closed equilateral n-gons: rotate the sub-chain
// between two random vertices about their chord by a uniform angle. Closure
// and unit edgelengths are preserved exactly by the move; edges are
// renormalized after each move and the closure defect re-projected
// periodically to control floating-point drift.
class EquilateralMcmcSampler {
  public:
    explicit EquilateralMcmcSampler(const SamplerConfig& cfg, McmcOptions opts = {});

    geom::ClosedPolygon next();    // advances `thinning` moves, snapshots
    void step();                   // one crankshaft move
    void advance(long moves);
    const std::vector<Vec3>& edges() const { return edges_; }
    std::uint64_t degenerate_chords() const { return degenerate_; }

  private:
    void reclose();

    SamplerConfig cfg_;
    McmcOptions opts_;
    Rng rng_;
    std::vector<Vec3> edges_;
    long moves_done_ = 0;
    std::uint64_t degenerate_ = 0;
};

}  // namespace polylab::samplers

#include "polylab/samplers.hpp"

#include <cmath>
#include <stdexcept>

#include "polylab/hopf.hpp"

namespace polylab::samplers {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;

Vec3 random_direction3(Rng& rng) {
    const double z = 1.0 - 2.0 * rng.uniform01();
    const double phi = kTwoPi * rng.uniform01();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

Vec3 random_direction2(Rng& rng) {
    const double phi = kTwoPi * rng.uniform01();
    return {std::cos(phi), std::sin(phi), 0.0};
}

double chi_squared_sample(Rng& rng, int dof) {
    double s = 0.0;
    for (int i = 0; i < dof; ++i) {
        const double g = rng.normal();
        s += g * g;
    }
    return s;
}

}  // namespace

RadialDensity unit_radius_density() {
    return RadialDensity{
        "unit",
        [](Rng&) { return 1.0; },
        [](int p) {
            if (p < 0) throw std::invalid_argument("radial moment: p must be >= 0");
            return 1.0;
        },
        nullptr,  // delta mass has no density
    };
}

RadialDensity chi_squared_radius_density(int dof) {
    if (dof < 1) throw std::invalid_argument("chi_squared_radius_density: dof must be >= 1");
    const double k2 = 0.5 * dof;
    return RadialDensity{
        "chi2-" + std::to_string(dof),
        [dof](Rng& rng) { return chi_squared_sample(rng, dof); },
        [k2](int p) {
            if (p < 0) throw std::invalid_argument("radial moment: p must be >= 0");
            // E r^p = 2^p Gamma(k/2 + p)/Gamma(k/2)
            double v = 1.0;
            for (int i = 0; i < p; ++i) v *= 2.0 * (k2 + i);
            return v;
        },
        [k2](double r) {
            if (r <= 0.0) return 0.0;
            return std::exp((k2 - 1.0) * std::log(r) - 0.5 * r - k2 * std::log(2.0) -
                            std::lgamma(k2));
        },
    };
}

HopfGaussianArmSampler::HopfGaussianArmSampler(const SamplerConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed, cfg.stream_id) {
    if (cfg_.n < 1) throw std::invalid_argument("HopfGaussianArmSampler: n must be >= 1");
    if (cfg_.d != 2 && cfg_.d != 3)
        throw std::invalid_argument("HopfGaussianArmSampler: d must be 2 or 3");
}

geom::PolygonArm HopfGaussianArmSampler::next() {
    std::vector<Vec3> edges(static_cast<std::size_t>(cfg_.n));
    if (cfg_.d == 3) {
        for (auto& e : edges) {
            const hopf::Quaternion q{rng_.normal(), rng_.normal(), rng_.normal(),
                                     rng_.normal()};
            e = hopf::hopf_map(q);
        }
    } else {
        // Fair coin between the two planar model-space components; both share
        // the same coordinate image.
        const auto component = (rng_.next_u64() & 1ull) ? hopf::PlanarComponent::second
                                                        : hopf::PlanarComponent::first;
        (void)component;
        for (auto& e : edges) {
            const Vec2 p = hopf::hopf_map_planar_one(rng_.normal(), rng_.normal());
            e = {p.x, p.y, 0.0};
        }
    }
    return geom::PolygonArm(cfg_.d, std::move(edges));
}

SymmetricClosedSampler::SymmetricClosedSampler(const SamplerConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed, cfg.stream_id) {
    if (cfg_.n < 3) throw std::invalid_argument("SymmetricClosedSampler: n must be >= 3");
    if (cfg_.d != 2 && cfg_.d != 3)
        throw std::invalid_argument("SymmetricClosedSampler: d must be 2 or 3");
    if (cfg_.d == 3) {
        u_.resize(static_cast<std::size_t>(cfg_.n));
        v_.resize(static_cast<std::size_t>(cfg_.n));
    } else {
        ur_.resize(static_cast<std::size_t>(cfg_.n));
        vr_.resize(static_cast<std::size_t>(cfg_.n));
    }
}

void SymmetricClosedSampler::draw_frame_complex() {
    const std::size_t n = u_.size();
    for (auto& c : u_) c = {rng_.normal(), rng_.normal()};
    double nu = 0.0;
    for (const auto& c : u_) nu += std::norm(c);
    nu = std::sqrt(nu);
    for (auto& c : u_) c /= nu;

    for (;;) {
        for (auto& c : v_) c = {rng_.normal(), rng_.normal()};
        // Modified Gram-Schmidt with one re-orthogonalization pass.
        for (int pass = 0; pass < 2; ++pass) {
            std::complex<double> h{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) h += v_[i] * std::conj(u_[i]);
            for (std::size_t i = 0; i < n; ++i) v_[i] -= h * u_[i];
        }
        double nv = 0.0;
        for (const auto& c : v_) nv += std::norm(c);
        nv = std::sqrt(nv);
        if (nv < 1e-8) {  // frame degeneracy; essentially never at double precision
            ++degenerate_;
            continue;
        }
        for (auto& c : v_) c /= nv;
        return;
    }
}

void SymmetricClosedSampler::draw_frame_real() {
    const std::size_t n = ur_.size();
    for (auto& c : ur_) c = rng_.normal();
    double nu = 0.0;
    for (double c : ur_) nu += c * c;
    nu = std::sqrt(nu);
    for (auto& c : ur_) c /= nu;

    for (;;) {
        for (auto& c : vr_) c = rng_.normal();
        for (int pass = 0; pass < 2; ++pass) {
            double h = 0.0;
            for (std::size_t i = 0; i < n; ++i) h += vr_[i] * ur_[i];
            for (std::size_t i = 0; i < n; ++i) vr_[i] -= h * ur_[i];
        }
        double nv = 0.0;
        for (double c : vr_) nv += c * c;
        nv = std::sqrt(nv);
        if (nv < 1e-8) {
            ++degenerate_;
            continue;
        }
        for (auto& c : vr_) c /= nv;
        return;
    }
}

geom::ClosedPolygon SymmetricClosedSampler::next() {
    std::vector<Vec3> edges(static_cast<std::size_t>(cfg_.n));
    if (cfg_.d == 3) {
        draw_frame_complex();
        // q_i = u_i + v_i j realizes the theta = pi/4 join coordinate: the
        // frame is unit-norm in each slot, so the total length is exactly 2.
        for (std::size_t i = 0; i < edges.size(); ++i)
            edges[i] = hopf::hopf_map_complex({u_[i], v_[i]});
    } else {
        draw_frame_real();
        const auto component = (rng_.next_u64() & 1ull) ? hopf::PlanarComponent::second
                                                        : hopf::PlanarComponent::first;
        (void)component;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Vec2 p = hopf::hopf_map_planar_one(ur_[i], vr_[i]);
            edges[i] = {p.x, p.y, 0.0};
        }
    }
    return geom::ClosedPolygon(cfg_.d, std::move(edges));
}

HopfGaussianClosedSampler::HopfGaussianClosedSampler(const SamplerConfig& cfg)
    : symmetric_(cfg), cfg_(cfg) {}

geom::ClosedPolygon HopfGaussianClosedSampler::next() {
    geom::ClosedPolygon sym = symmetric_.next();
    // Total length is chi-squared, independent of the shape, and drawn from
    // the frame sampler's stream so one (seed, stream_id) pair owns the whole
    // sample. The closure constraint costs 2d degrees of freedom relative to
    // the arm-space length law chi^2_{2^{d-1} n}: conditioning on the
    // codimension-d subspace scales the length density by L^{-d}, and the
    // resulting chi^2_{2^{d-1} n - 2d} mean 2(2n-3) (d = 3) is exactly what
    // the closed-polygon edge moments require.
    const int dof = (cfg_.d == 3 ? 4 : 2) * cfg_.n - 2 * cfg_.d;
    const double len = chi_squared_sample(symmetric_.rng(), dof);
    std::vector<Vec3> edges = sym.edges();
    const double s = len / 2.0;
    for (auto& e : edges) e *= s;
    return geom::ClosedPolygon(cfg_.d, std::move(edges));
}

EquilateralMcmcSampler::EquilateralMcmcSampler(const SamplerConfig& cfg, McmcOptions opts)
    : cfg_(cfg), opts_(opts), rng_(cfg.seed, cfg.stream_id) {
    if (cfg_.n < 4)
        throw std::invalid_argument(
            "EquilateralMcmcSampler: n must be >= 4 (no nontrivial moves below)");
    if (cfg_.d != 3)
        throw std::invalid_argument("EquilateralMcmcSampler: crankshaft moves require d = 3");
    if (opts_.burn_in < 0) opts_.burn_in = 10L * cfg_.n;
    if (opts_.thinning < 0) opts_.thinning = cfg_.n;

    // Seed chain: regular planar n-gon with unit edges.
    edges_.resize(static_cast<std::size_t>(cfg_.n));
    for (int i = 0; i < cfg_.n; ++i) {
        const double a = kTwoPi * i / cfg_.n;
        edges_[i] = {std::cos(a), std::sin(a), 0.0};
    }
    reclose();
    advance(opts_.burn_in);
}

void EquilateralMcmcSampler::reclose() {
    const int n = cfg_.n;
    for (int pass = 0; pass < 3; ++pass) {
        Vec3 defect{};
        for (const Vec3& e : edges_) defect += e;
        const Vec3 shift = defect * (1.0 / n);
        for (Vec3& e : edges_) {
            e -= shift;
            e *= 1.0 / e.norm();
        }
    }
}

void EquilateralMcmcSampler::step() {
    const int n = cfg_.n;
    const int start = static_cast<int>(rng_.next_u64() % static_cast<std::uint64_t>(n));
    const int len = 1 + static_cast<int>(rng_.next_u64() % static_cast<std::uint64_t>(n - 1));
    const double angle = kTwoPi * rng_.uniform01();

    // Rotating the complement by the same angle about the shared chord gives
    // the same polygon up to a global rotation, which the target measure and
    // every functional here are invariant under, so rotate the shorter side.
    int w_start = start, w_len = len;
    if (w_len > n - w_len) {
        w_start = (start + len) % n;
        w_len = n - len;
    }

    // The window may wrap; handle it as two contiguous runs to keep the hot
    // loops free of modular indexing.
    Vec3* const e0 = edges_.data();
    const int run1 = std::min(w_len, n - w_start);
    const int run2 = w_len - run1;

    Vec3 chord{};
    for (int m = 0; m < run1; ++m) chord += e0[w_start + m];
    for (int m = 0; m < run2; ++m) chord += e0[m];
    const double cn = chord.norm();
    ++moves_done_;
    if (cn < 1e-12) {
        ++degenerate_;  // chord endpoints coincide; no rotation axis
        return;
    }

    const Vec3 k = chord * (1.0 / cn);
    const double c = std::cos(angle), s = std::sin(angle);
    const double omc = 1.0 - c;
    // Rodrigues rotation as a matrix applied to each window edge.
    const double R[3][3] = {
        {c + k.x * k.x * omc, k.x * k.y * omc - k.z * s, k.x * k.z * omc + k.y * s},
        {k.y * k.x * omc + k.z * s, c + k.y * k.y * omc, k.y * k.z * omc - k.x * s},
        {k.z * k.x * omc - k.y * s, k.z * k.y * omc + k.x * s, c + k.z * k.z * omc}};
    auto rotate_run = [&R](Vec3* e, int count) {
        for (int m = 0; m < count; ++m) {
            const Vec3 r{R[0][0] * e[m].x + R[0][1] * e[m].y + R[0][2] * e[m].z,
                         R[1][0] * e[m].x + R[1][1] * e[m].y + R[1][2] * e[m].z,
                         R[2][0] * e[m].x + R[2][1] * e[m].y + R[2][2] * e[m].z};
            e[m] = r * (1.0 / r.norm());
        }
    };
    rotate_run(e0 + w_start, run1);
    rotate_run(e0, run2);
    if (moves_done_ % opts_.reclose_interval == 0) reclose();
}

void EquilateralMcmcSampler::advance(long moves) {
    for (long i = 0; i < moves; ++i) step();
}

geom::ClosedPolygon EquilateralMcmcSampler::next() {
    advance(opts_.thinning);
    return geom::ClosedPolygon(3, edges_);
}

RadialArmSampler::RadialArmSampler(const SamplerConfig& cfg, RadialDensity law)
    : cfg_(cfg), law_(std::move(law)), rng_(cfg.seed, cfg.stream_id) {
    if (cfg_.n < 1) throw std::invalid_argument("RadialArmSampler: n must be >= 1");
    if (cfg_.d != 2 && cfg_.d != 3)
        throw std::invalid_argument("RadialArmSampler: d must be 2 or 3");
    if (!law_.sample_radius)
        throw std::invalid_argument("RadialArmSampler: law has no radius sampler");
}

geom::PolygonArm RadialArmSampler::next() {
    std::vector<Vec3> edges(static_cast<std::size_t>(cfg_.n));
    for (auto& e : edges) {
        const double r = law_.sample_radius(rng_);
        e = ((cfg_.d == 3) ? random_direction3(rng_) : random_direction2(rng_)) * r;
    }
    return geom::PolygonArm(cfg_.d, std::move(edges));
}

}  // namespace polylab::samplers

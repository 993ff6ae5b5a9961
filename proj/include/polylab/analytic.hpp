#pragma once

#include <stdexcept>

namespace polylab::analytic {

// Order nu = m + 1/2; m = -1 encodes nu = -1/2 (equal to K_{1/2} by symmetry).
struct HalfIntOrder {
    int m = 0;

    explicit HalfIntOrder(int m_) : m(m_) {
        if (m < -1) throw std::invalid_argument("HalfIntOrder: m must be >= -1");
    }
    double nu() const { return m + 0.5; }
};

// ln Gamma(half/2) for half >= 1, memoized for the orders this library uses.
double ln_gamma_half(int twice_x);
double ln_factorial(int k);
double beta_function(double a, double b);

// Modified Bessel function of the second kind at half-integer order, evaluated
// by the exact finite sum
//   K_{m+1/2}(z) = sqrt(pi/(2z)) e^{-z} sum_{i=0}^{m} (m+i)! / (i! (m-i)! (2z)^i).
// Terms span many orders of magnitude for large m, so they are accumulated in
// log space with a max-shift; bessel_k_half may overflow to +inf for extreme
// (m, z) combinations where ln_bessel_k_half stays finite.
double ln_bessel_k_half(HalfIntOrder order, double z);
double bessel_k_half(HalfIntOrder order, double z);

// ln of z^{m+1/2} K_{m+1/2}(z/2), the combination every pdf here needs. The
// Bessel pole cancels: the product is e^{-z/2} times a degree-m polynomial in
// z, so z = 0 is admitted (m >= 0).
double ln_scaled_bessel_k_half(int m, double z);

// Density at radius r of the end-to-end vector of a k-edge Hopf-Gaussian arm:
//   G_k(r) = r^{k-3/2} K_{k-3/2}(r/2) / (2^{2k+2} pi^{3/2} Gamma(k)).
// G_1(r) = e^{-r/2}/(16 pi r) with a genuine pole at 0; for k >= 2 the value
// at r = 0 is the constant term of the polynomial form, i.e. C_k.
double green_function(int k, double r);

// C_n = G_n(0) = Gamma(n - 3/2) / (64 sqrt(pi) Gamma(n)), n >= 2.
double hausdorff_constant(int n);

// Density on the line of a single coordinate of the k-edge end-to-end vector
// (difference of two chi-squared_{2k} variables):
//   f(y) = |y|^{k-1/2} K_{k-1/2}(|y|/2) / (4^k sqrt(pi) Gamma(k)).
double projection_pdf(int k, double y);

struct PairLengthsAngle {
    double r1 = 0.0, r2 = 0.0, theta = 0.0;
};

struct PairXYZ {
    double x = 0.0, y = 0.0, z = 0.0;
};

// x = (r1+r2)/2, y = (r1-r2)/2, z = |e1 + e2|.
PairXYZ to_xyz(const PairLengthsAngle& p);

// Precomputed log-space constants for the closed-polygon pdfs at a fixed edge
// count. Gamma(2n-4) overflows doubles near n = 90, so every prefactor is kept
// as a log and exponentiated only after combining with the Bessel factor.
class AnalyticContext {
  public:
    explicit AnalyticContext(int n);

    int n() const { return n_; }
    double cn() const { return cn_; }

    // pdf of a single edge of a closed Hopf-Gaussian n-gon, w.r.t. volume; r > 0.
    double single_edge_pdf(double r) const;

    // pdf of an adjacent edge pair in (r1, r2, theta) coordinates, including
    // the sin(theta) factor; n >= 4.
    double pairwise_pdf(const PairLengthsAngle& p) const;

    // The same density in (x, y, z) coordinates; independent of y. n >= 4.
    double pairwise_pdf_xyz(const PairXYZ& p) const;

    // ln of the z-dependent part of the (x,y,z) density including its
    // prefactor: ln[ Gamma(n)/(2 sqrt(pi) Gamma(2n-4)) * z^{n-5/2} K_{n-7/2}(z/2) ].
    // The quadrature module integrates against this after handling x and y.
    double ln_pair_z_part(double z) const;

    // p-th moment of edgelength of a closed n-gon:
    //   (n-1) Gamma(2n+p-3) / (2 Gamma(2n-4)) * B(p+2, n-2).
    double edge_moment(int p) const;

  private:
    void require_pairwise() const;

    int n_;
    double cn_;
    double single_pref_ln_;
    double pair_rrt_pref_ln_;
    double pair_xyz_pref_ln_;
};

// E(kappa) for a closed n-gon under the symmetric measure:
//   pi/2 n + pi/4 2n/(2n-3)  ==  pi n(n-1)/(2n-3).
double exact_expected_total_curvature(int n);

// E(theta) for one turning angle: pi (n-1)/(2n-3).
double exact_expected_turning_angle(int n);

// Limit of the total-curvature surplus E(kappa) - pi/2 n as n -> infinity for a
// measure generated by a radial law with moments m1, m2:
//   d/(d-1) * B(d/2, d/2)/B((d-1)/2, (d+1)/2) * m1^2/m2.
double asymptotic_surplus(int d, double m1, double m2);

// p-th moment of edgelength of a Hopf-Gaussian arm: 2^p p! (d=2), 2^p (p+1)! (d=3).
double arm_edge_moment(int d, int p);

struct ClosedPolygonExpectations {
    int n;

    double edge_moment(int p) const;
    // E squared chord length skipping k edges: (n-k)/n * 12k(2n-3)/(n+1).
    double chord(int k) const;
    // E squared gyradius: (n-1)/n * (2n-3).
    double gyradius() const;
};
ClosedPolygonExpectations closed_polygon_expectations(int n);

// Lower bound on the fraction of closed n-gons with total curvature below
// 2 pi B (unknotted for B = 2, by Fary-Milnor):
//   max(0, 1 - (n-2)(n-3) / ((B-1) 2 (2n-3))).
double unknot_fraction_bound(int n, int bridge = 2);

}  // namespace polylab::analytic

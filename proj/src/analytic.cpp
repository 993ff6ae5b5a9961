#include "polylab/analytic.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

namespace polylab::analytic {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLnPi = 1.144729885849400174143427351353058712;
constexpr double kLn2 = 0.693147180559945309417232121458176568;

constexpr int kGammaTableMax = 2080;  // ln Gamma(j/2) for j = 1..2080 covers n <= 512

const std::vector<double>& gamma_half_table() {
    static std::vector<double> table = [] {
        std::vector<double> t(kGammaTableMax + 1, 0.0);
        for (int j = 1; j <= kGammaTableMax; ++j) t[j] = std::lgamma(0.5 * j);
        return t;
    }();
    return table;
}

}  // namespace

double ln_gamma_half(int twice_x) {
    if (twice_x < 1) throw std::domain_error("ln_gamma_half: argument must be positive");
    if (twice_x <= kGammaTableMax) return gamma_half_table()[twice_x];
    return std::lgamma(0.5 * twice_x);
}

double ln_factorial(int k) {
    if (k < 0) throw std::domain_error("ln_factorial: negative argument");
    return ln_gamma_half(2 * (k + 1));
}

double beta_function(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double ln_bessel_k_half(HalfIntOrder order, double z) {
    if (!(z > 0.0)) throw std::domain_error("ln_bessel_k_half: argument must be positive");
    const int m = (order.m < 0) ? 0 : order.m;  // K_{-1/2} = K_{1/2}
    const double ln2z = std::log(2.0 * z);

    // ln of term i = (m+i)! / (i! (m-i)! (2z)^i); the terms are unimodal in i.
    double max_ln = -std::numeric_limits<double>::infinity();
    std::vector<double> lnt(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        const double v =
            ln_factorial(m + i) - ln_factorial(i) - ln_factorial(m - i) - i * ln2z;
        lnt[i] = v;
        if (v > max_ln) max_ln = v;
    }
    double sum = 0.0, comp = 0.0;  // Kahan
    for (int i = 0; i <= m; ++i) {
        const double term = std::exp(lnt[i] - max_ln);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return 0.5 * (kLnPi - kLn2 - std::log(z)) - z + max_ln + std::log(sum);
}

double bessel_k_half(HalfIntOrder order, double z) {
    return std::exp(ln_bessel_k_half(order, z));
}

double ln_scaled_bessel_k_half(int m, double z) {
    if (m < 0) throw std::invalid_argument("ln_scaled_bessel_k_half: m must be >= 0");
    if (!(z >= 0.0)) throw std::domain_error("ln_scaled_bessel_k_half: z must be >= 0");
    // z^{m+1/2} K_{m+1/2}(z/2) = sqrt(pi) e^{-z/2} sum_i c_i z^{m-i},
    // c_i = (m+i)! / (i! (m-i)!).
    if (z == 0.0) return 0.5 * kLnPi + ln_factorial(2 * m) - ln_factorial(m);
    const double lnz = std::log(z);
    double max_ln = -std::numeric_limits<double>::infinity();
    std::vector<double> lnt(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        const double v = ln_factorial(m + i) - ln_factorial(i) - ln_factorial(m - i) +
                         (m - i) * lnz;
        lnt[i] = v;
        if (v > max_ln) max_ln = v;
    }
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double term = std::exp(lnt[i] - max_ln);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return 0.5 * kLnPi - 0.5 * z + max_ln + std::log(sum);
}

double green_function(int k, double r) {
    if (k < 1) throw std::invalid_argument("green_function: k must be >= 1");
    if (!(r >= 0.0)) throw std::domain_error("green_function: r must be >= 0");
    if (k == 1) {
        if (r == 0.0) return std::numeric_limits<double>::infinity();
        return std::exp(-0.5 * r) / (16.0 * kPi * r);
    }
    const double ln_pref = -(2.0 * k + 2.0) * kLn2 - 1.5 * kLnPi - ln_gamma_half(2 * k);
    return std::exp(ln_scaled_bessel_k_half(k - 2, r) + ln_pref);
}

// Gamma(n - 3/2) / (64 pi^{3/2} Gamma(n)). Reducing the polynomial form of
// G_n(0) with the gamma duplication formula gives pi^{3/2}; the single-edge
// and pairwise pdf prefactors are consistent with exactly this value.
double hausdorff_constant(int n) {
    if (n < 2) throw std::invalid_argument("hausdorff_constant: n must be >= 2");
    return std::exp(ln_gamma_half(2 * n - 3) - ln_gamma_half(2 * n) - 6.0 * kLn2 -
                    1.5 * kLnPi);
}

double projection_pdf(int k, double y) {
    if (k < 1) throw std::invalid_argument("projection_pdf: k must be >= 1");
    const double a = std::fabs(y);
    const double ln_pref = -2.0 * k * kLn2 - 0.5 * kLnPi - ln_gamma_half(2 * k);
    return std::exp(ln_scaled_bessel_k_half(k - 1, a) + ln_pref);
}

PairXYZ to_xyz(const PairLengthsAngle& p) {
    const double z2 = p.r1 * p.r1 + p.r2 * p.r2 + 2.0 * p.r1 * p.r2 * std::cos(p.theta);
    return {0.5 * (p.r1 + p.r2), 0.5 * (p.r1 - p.r2), std::sqrt(std::max(z2, 0.0))};
}

AnalyticContext::AnalyticContext(int n) : n_(n) {
    if (n < 3) throw std::invalid_argument("AnalyticContext: n must be >= 3");
    cn_ = hausdorff_constant(n);
    single_pref_ln_ =
        std::log(static_cast<double>(n - 1)) - (2.0 * n - 2.0) * kLn2 - kLnPi -
        ln_gamma_half(2 * n - 3);
    if (n >= 4) {
        const double lg_n = ln_gamma_half(2 * n);
        const double lg_2nm4 = ln_gamma_half(2 * (2 * n - 4));
        pair_rrt_pref_ln_ = lg_n - 2.0 * kLn2 - 0.5 * kLnPi - lg_2nm4;
        pair_xyz_pref_ln_ = lg_n - kLn2 - 0.5 * kLnPi - lg_2nm4;
    } else {
        pair_rrt_pref_ln_ = pair_xyz_pref_ln_ = std::numeric_limits<double>::quiet_NaN();
    }
}

void AnalyticContext::require_pairwise() const {
    if (n_ < 4)
        throw std::invalid_argument("pairwise pdf requires n >= 4 (order n - 7/2 >= 1/2)");
}

double AnalyticContext::single_edge_pdf(double r) const {
    if (!(r > 0.0)) throw std::domain_error("single_edge_pdf: r must be positive");
    // e^{-r/2} r^{n-7/2} K_{n-5/2}(r/2) = e^{-r/2} scaled(n-3, r) / r
    return std::exp(single_pref_ln_ - 0.5 * r + ln_scaled_bessel_k_half(n_ - 3, r) -
                    std::log(r));
}

double AnalyticContext::pairwise_pdf(const PairLengthsAngle& p) const {
    require_pairwise();
    if (!(p.r1 > 0.0) || !(p.r2 > 0.0))
        throw std::domain_error("pairwise_pdf: edge lengths must be positive");
    if (!(p.theta >= 0.0) || !(p.theta <= kPi))
        throw std::domain_error("pairwise_pdf: theta must lie in [0, pi]");
    if (p.theta == 0.0 || p.theta == kPi) return 0.0;  // sin factor vanishes
    const double s = std::sin(p.theta);
    if (s <= 0.0) return 0.0;
    const double z2 =
        p.r1 * p.r1 + p.r2 * p.r2 + 2.0 * p.r1 * p.r2 * std::cos(p.theta);
    const double z = std::sqrt(std::max(z2, 0.0));
    return std::exp(pair_rrt_pref_ln_ + std::log(p.r1) + std::log(p.r2) -
                    0.5 * (p.r1 + p.r2) + ln_scaled_bessel_k_half(n_ - 4, z) +
                    std::log(s));
}

double AnalyticContext::pairwise_pdf_xyz(const PairXYZ& p) const {
    require_pairwise();
    const double slack = 1e-12 * (1.0 + p.z);
    if (!(p.z > 0.0) || p.x < 0.5 * p.z - slack || std::fabs(p.y) > 0.5 * p.z + slack)
        throw std::domain_error(
            "pairwise_pdf_xyz: point violates z > 0, x >= z/2, |y| <= z/2");
    // z^{n-5/2} K_{n-7/2}(z/2) = z * scaled(n-4, z)
    return std::exp(pair_xyz_pref_ln_ - p.x + std::log(p.z) +
                    ln_scaled_bessel_k_half(n_ - 4, p.z));
}

double AnalyticContext::ln_pair_z_part(double z) const {
    require_pairwise();
    if (!(z > 0.0)) throw std::domain_error("ln_pair_z_part: z must be positive");
    return pair_xyz_pref_ln_ + std::log(z) + ln_scaled_bessel_k_half(n_ - 4, z);
}

double AnalyticContext::edge_moment(int p) const {
    if (p < 0) throw std::invalid_argument("edge_moment: p must be >= 0");
    const double ln_b = ln_gamma_half(2 * (p + 2)) + ln_gamma_half(2 * (n_ - 2)) -
                        ln_gamma_half(2 * (n_ + p));
    return std::exp(std::log(static_cast<double>(n_ - 1)) +
                    ln_gamma_half(2 * (2 * n_ + p - 3)) - kLn2 -
                    ln_gamma_half(2 * (2 * n_ - 4)) + ln_b);
}

double exact_expected_total_curvature(int n) {
    if (n < 3) throw std::invalid_argument("exact_expected_total_curvature: n must be >= 3");
    // pi n(n-1)/(2n-3); the ratio is exact in doubles for small n (n = 3 gives 2 pi).
    return kPi * (static_cast<double>(n) * static_cast<double>(n - 1) /
                  static_cast<double>(2 * n - 3));
}

double exact_expected_turning_angle(int n) {
    if (n < 3) throw std::invalid_argument("exact_expected_turning_angle: n must be >= 3");
    return kPi * (static_cast<double>(n - 1) / static_cast<double>(2 * n - 3));
}

double asymptotic_surplus(int d, double m1, double m2) {
    if (d < 2) throw std::invalid_argument("asymptotic_surplus: d must be >= 2");
    if (!(m1 > 0.0) || !(m2 > 0.0))
        throw std::invalid_argument("asymptotic_surplus: moments must be positive");
    const double ratio = beta_function(0.5 * d, 0.5 * d) /
                         beta_function(0.5 * (d - 1), 0.5 * (d + 1));
    return (static_cast<double>(d) / (d - 1)) * ratio * m1 * m1 / m2;
}

double arm_edge_moment(int d, int p) {
    if (d != 2 && d != 3) throw std::invalid_argument("arm_edge_moment: d must be 2 or 3");
    if (p < 0) throw std::invalid_argument("arm_edge_moment: p must be >= 0");
    // chi-squared with 2^{d-1} dof: 2^p p! in the plane, 2^p (p+1)! in space
    double v = 1.0;
    const int top = (d == 2) ? p : p + 1;
    for (int i = 2; i <= top; ++i) v *= i;
    return std::ldexp(v, p);
}

double ClosedPolygonExpectations::edge_moment(int p) const {
    return AnalyticContext(n).edge_moment(p);
}

double ClosedPolygonExpectations::chord(int k) const {
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("chord expectation: k must be in [1, n-1]");
    return (static_cast<double>(n - k) / n) *
           (12.0 * k * (2.0 * n - 3.0) / (n + 1.0));
}

double ClosedPolygonExpectations::gyradius() const {
    return (static_cast<double>(n - 1) / n) * (2.0 * n - 3.0);
}

ClosedPolygonExpectations closed_polygon_expectations(int n) {
    if (n < 4) throw std::invalid_argument("closed_polygon_expectations: n must be >= 4");
    return ClosedPolygonExpectations{n};
}

double unknot_fraction_bound(int n, int bridge) {
    if (n < 3) throw std::invalid_argument("unknot_fraction_bound: n must be >= 3");
    if (bridge < 2) throw std::invalid_argument("unknot_fraction_bound: bridge must be >= 2");
    const double knotted_bound = static_cast<double>(n - 2) * (n - 3) /
                                 ((bridge - 1) * 2.0 * (2.0 * n - 3.0));
    return std::max(0.0, 1.0 - knotted_bound);
}

}  // namespace polylab::analytic

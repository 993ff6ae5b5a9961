#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "polylab/analytic.hpp"

namespace polylab::quad {

struct QuadratureSpec {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    int max_intervals = 5000;
    // Semi-infinite integrals are truncated where an e^{-tail_decay * t} bound
    // on the remaining mass drops below abs_tol.
    double tail_decay = 0.5;
    double cutoff_start = 40.0;
};

struct IntegrationResult {
    double value = 0.0;
    double error_bound = 0.0;
    long evaluations = 0;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, double best, double error)
        : std::runtime_error(msg), best_(best), error_(error) {}

    double best_estimate() const { return best_; }
    double error_bound() const { return error_; }

  private:
    double best_;
    double error_;
};

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                     double b, const QuadratureSpec& spec = {});

// Upper truncation point for an exponentially decaying integrand on [a, inf).
double find_upper_cutoff(const std::function<double(double)>& f, const QuadratureSpec& spec);

// Total integral of the pairwise pdf, with the y and x integrations done
// analytically (width z in y, e^{-z/2} from x) and the remaining z-integral
// done numerically. Equals 1 for every n >= 4.
IntegrationResult integrate_pairwise_normalization(const analytic::AnalyticContext& ctx,
                                                   const QuadratureSpec& spec = {});

// E(theta) for one turning angle of a closed n-gon, computed by integrating the
// closed-form inner y-integral  pi z + pi sqrt(4x^2 - z^2) - 2 pi x  against the
// (x, z) density. The substitution x = z/2 + s^2 removes the square-root
// singularity at the lower x limit.
IntegrationResult expected_turning_angle_numeric(const analytic::AnalyticContext& ctx,
                                                 const QuadratureSpec& spec = {});

enum class RadialWeight { solid3d, planar2d };

// Integral over R^d of a spherically symmetric density given radially:
// int_0^inf 4 pi r^2 rho(r) dr (3D) or 2 pi r weighting (2D).
IntegrationResult integrate_radial_density(const std::function<double(double)>& density,
                                           RadialWeight weight,
                                           const QuadratureSpec& spec = {});

}  // namespace polylab::quad

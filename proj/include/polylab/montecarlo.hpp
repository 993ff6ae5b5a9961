#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polylab/stats.hpp"

namespace polylab::mc {

// Samples are partitioned into fixed-size blocks; block b always draws from
// RNG stream (seed, stream_base + b) regardless of which worker runs it, so
// results are bit-identical for any worker count.
constexpr std::int64_t kBlockSize = 16384;

struct EstimateOptions {
    std::string quantity;
    std::string sampler;
    int n = 0;
    int d = 3;
    std::uint64_t seed = 0;
    std::int64_t count = 0;
    int workers = 0;                // 0 => hardware concurrency
    std::uint64_t stream_base = 0;  // offset so one run can host many estimates
};

struct EstimateReport {
    std::string quantity;
    std::string sampler;
    int n = 0;
    int d = 3;
    std::int64_t count = 0;
    double mean = 0.0;
    double std_error = 0.0;        // sample standard deviation / sqrt(count)
    double batch_std_error = 0.0;  // from block means; robust to serial correlation
    double effective_samples = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

// A functional raised an error on a concrete sample; carries the (stream,
// index) pair needed to reproduce it.
class EstimateError : public std::runtime_error {
  public:
    EstimateError(const std::string& msg, std::uint64_t stream_id, std::int64_t index)
        : std::runtime_error(msg + " (stream " + std::to_string(stream_id) + ", sample " +
                             std::to_string(index) + ")"),
          stream_id_(stream_id),
          index_(index) {}

    std::uint64_t stream_id() const { return stream_id_; }
    std::int64_t sample_index() const { return index_; }

  private:
    std::uint64_t stream_id_;
    std::int64_t index_;
};

// A block evaluator draws one sample per call and returns the functional
// value; the factory builds one per RNG stream.
using BlockEval = std::function<double()>;
using KernelFactory = std::function<BlockEval(std::uint64_t stream_id)>;

EstimateReport estimate(const EstimateOptions& opts, const KernelFactory& factory);

struct CensusReport {
    int n = 0;
    double threshold_multiple = 2.0;  // of 2 pi
    std::int64_t count_below = 0;
    std::int64_t total = 0;
    double fraction = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    double min_curvature = 0.0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

// Fraction of symmetric-measure closed n-gons with total curvature below
// threshold_multiple * 2 pi.
CensusReport curvature_census(int n, double threshold_multiple, std::int64_t count,
                              std::uint64_t seed, int workers = 0);

struct SurplusRow {
    int n = 0;
    double mean_surplus = 0.0;
    double std_error = 0.0;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
};

enum class SurplusMeasure { symmetric, equilateral_mcmc };

// Mean total-curvature surplus kappa - pi n / 2 per edge count.
std::vector<SurplusRow> surplus_curve(const std::vector<int>& ns, std::int64_t count,
                                      std::uint64_t seed, int workers = 0,
                                      SurplusMeasure measure = SurplusMeasure::symmetric);

}  // namespace polylab::mc

#include "polylab/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

#include "polylab/geom.hpp"
#include "polylab/samplers.hpp"

namespace polylab::mc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

struct FailureInfo {
    std::string message;
    std::uint64_t stream_id;
    std::int64_t index;
};

// Runs `count` samples split into kBlockSize blocks across workers. The
// per-block functor fills blocks[b]; blocks are merged by the caller in block
// order, so the result is independent of scheduling.
template <typename Block, typename RunBlock>
std::vector<Block> run_blocks(std::int64_t count, int workers, const RunBlock& run_block) {
    if (count < 1) throw std::invalid_argument("monte carlo: count must be >= 1");
    const std::int64_t nblocks = (count + kBlockSize - 1) / kBlockSize;
    std::vector<Block> blocks(static_cast<std::size_t>(nblocks));

    std::atomic<std::int64_t> next{0};
    std::mutex failure_mutex;
    std::optional<FailureInfo> failure;

    auto worker_fn = [&]() {
        for (;;) {
            const std::int64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure) return;
            }
            const std::int64_t lo = b * kBlockSize;
            const std::int64_t size = std::min(kBlockSize, count - lo);
            try {
                run_block(static_cast<std::uint64_t>(b), size,
                          blocks[static_cast<std::size_t>(b)]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = FailureInfo{e.what(), static_cast<std::uint64_t>(b), -1};
            }
        }
    };

    const int nworkers = resolve_workers(workers);
    if (nworkers <= 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker_fn);
        for (auto& t : pool) t.join();
    }
    if (failure) throw EstimateError(failure->message, failure->stream_id, failure->index);
    return blocks;
}

}  // namespace

EstimateReport estimate(const EstimateOptions& opts, const KernelFactory& factory) {
    const auto t0 = std::chrono::steady_clock::now();

    auto blocks = run_blocks<stats::RunningStat>(
        opts.count, opts.workers,
        [&](std::uint64_t block, std::int64_t size, stats::RunningStat& out) {
            BlockEval eval = factory(opts.stream_base + block);
            for (std::int64_t i = 0; i < size; ++i) {
                double v;
                try {
                    v = eval();
                } catch (const EstimateError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw EstimateError(e.what(), opts.stream_base + block, i);
                }
                out.add(v);
            }
        });

    stats::RunningStat total;
    stats::RunningStat block_means;  // over full blocks only
    for (const auto& b : blocks) {
        total.merge(b);
        if (b.n == kBlockSize) block_means.add(b.mean);
    }

    EstimateReport rep;
    rep.quantity = opts.quantity;
    rep.sampler = opts.sampler;
    rep.n = opts.n;
    rep.d = opts.d;
    rep.count = total.n;
    rep.mean = total.mean;
    rep.std_error = total.std_error();
    if (block_means.n >= 2) {
        rep.batch_std_error =
            std::sqrt(block_means.variance() / static_cast<double>(block_means.n));
        rep.effective_samples = rep.batch_std_error > 0.0
                                    ? total.variance() / (rep.batch_std_error * rep.batch_std_error)
                                    : static_cast<double>(total.n);
    } else {
        rep.batch_std_error = rep.std_error;
        rep.effective_samples = static_cast<double>(total.n);
    }
    rep.min_value = total.min_value;
    rep.max_value = total.max_value;
    rep.seed = opts.seed;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

CensusReport curvature_census(int n, double threshold_multiple, std::int64_t count,
                              std::uint64_t seed, int workers) {
    if (n < 3) throw std::invalid_argument("curvature_census: n must be >= 3");
    if (!(threshold_multiple > 1.0))
        throw std::invalid_argument("curvature_census: threshold multiple must exceed 1");
    const auto t0 = std::chrono::steady_clock::now();
    const double threshold = threshold_multiple * 2.0 * kPi;

    struct Block {
        std::int64_t below = 0;
        std::int64_t total = 0;
        double min_kappa = std::numeric_limits<double>::infinity();
    };
    auto blocks = run_blocks<Block>(
        count, workers, [&](std::uint64_t block, std::int64_t size, Block& out) {
            samplers::SymmetricClosedSampler sampler({n, 3, seed, block});
            for (std::int64_t i = 0; i < size; ++i) {
                const double kappa = geom::total_curvature(sampler.next());
                if (kappa < threshold) ++out.below;
                if (kappa < out.min_kappa) out.min_kappa = kappa;
                ++out.total;
            }
        });

    CensusReport rep;
    rep.n = n;
    rep.threshold_multiple = threshold_multiple;
    rep.min_curvature = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks) {
        rep.count_below += b.below;
        rep.total += b.total;
        rep.min_curvature = std::min(rep.min_curvature, b.min_kappa);
    }
    rep.fraction = static_cast<double>(rep.count_below) / static_cast<double>(rep.total);
    const auto ci = stats::binomial_ci95(rep.count_below, rep.total);
    rep.ci95_low = ci.low;
    rep.ci95_high = ci.high;
    rep.seed = seed;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<SurplusRow> surplus_curve(const std::vector<int>& ns, std::int64_t count,
                                      std::uint64_t seed, int workers,
                                      SurplusMeasure measure) {
    std::vector<SurplusRow> rows;
    rows.reserve(ns.size());
    for (std::size_t idx = 0; idx < ns.size(); ++idx) {
        const int n = ns[idx];
        EstimateOptions opts;
        opts.quantity = "curvature-surplus";
        opts.sampler = measure == SurplusMeasure::symmetric ? "symmetric-closed"
                                                            : "equilateral-mcmc";
        opts.n = n;
        opts.d = 3;
        opts.seed = seed;
        opts.count = count;
        opts.workers = workers;
        // Disjoint stream ranges per row: blocks never collide across rows.
        opts.stream_base = (static_cast<std::uint64_t>(idx) + 1) << 32;

        KernelFactory factory;
        if (measure == SurplusMeasure::symmetric) {
            factory = [n, seed](std::uint64_t stream) -> BlockEval {
                auto sampler = std::make_shared<samplers::SymmetricClosedSampler>(
                    samplers::SamplerConfig{n, 3, seed, stream});
                return [sampler]() { return geom::total_curvature(sampler->next()); };
            };
        } else {
            factory = [n, seed](std::uint64_t stream) -> BlockEval {
                auto sampler = std::make_shared<samplers::EquilateralMcmcSampler>(
                    samplers::SamplerConfig{n, 3, seed, stream});
                return [sampler]() { return geom::total_curvature(sampler->next()); };
            };
        }
        EstimateReport rep = estimate(opts, factory);
        rows.push_back({n, rep.mean - 0.5 * kPi * n, rep.std_error, rep.count, seed});
    }
    return rows;
}

}  // namespace polylab::mc

// polylab command-line front end: reproducible sampling, exact formula
// evaluation, quadrature, and Monte Carlo estimation for random polygons.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polylab/analytic.hpp"
#include "polylab/csvio.hpp"
#include "polylab/geom.hpp"
#include "polylab/manifest.hpp"
#include "polylab/montecarlo.hpp"
#include "polylab/quadrature.hpp"
#include "polylab/samplers.hpp"

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using polylab::io::format_g17;

std::uint64_t apply_seed_env(std::uint64_t seed) {
    if (const char* env = std::getenv("POLYLAB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
        throw std::invalid_argument("POLYLAB_SEED is not an unsigned integer");
    }
    return seed;
}

// Small hand-rolled JSON emission so numeric fields carry 17 significant
// digits; the manifest uses nlohmann::json separately.
class JsonWriter {
  public:
    void field(const std::string& key, const std::string& value) {
        add(key, '"' + value + '"');
    }
    void field(const std::string& key, double value) { add(key, format_g17(value)); }
    void field(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
    void field(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void field(const std::string& key, int value) { add(key, std::to_string(value)); }

    void raw_field(const std::string& key, const std::string& rendered_json) {
        add(key, rendered_json);
    }

    std::string str() const { return "{" + body_ + "}"; }

  private:
    void add(const std::string& key, const std::string& rendered) {
        if (!body_.empty()) body_ += ", ";
        body_ += '"' + key + "\": " + rendered;
    }
    std::string body_;
};

struct MeasureSpec {
    std::string name;
    bool closed = false;
};

MeasureSpec parse_measure(const std::string& m) {
    if (m == "hopf-gaussian-arm") return {m, false};
    if (m == "hopf-gaussian-closed") return {m, true};
    if (m == "symmetric-closed") return {m, true};
    if (m == "equilateral-mcmc") return {m, true};
    if (m.rfind("radial:", 0) == 0) return {m, false};
    throw CLI::ValidationError("--measure", "unknown measure '" + m + "'");
}

polylab::samplers::RadialDensity radial_law_by_name(const std::string& name) {
    if (name == "unit") return polylab::samplers::unit_radius_density();
    if (name.rfind("chi2-", 0) == 0) {
        const int dof = std::atoi(name.c_str() + 5);
        if (dof >= 1) return polylab::samplers::chi_squared_radius_density(dof);
    }
    throw CLI::ValidationError("--measure",
                               "unknown radial law '" + name + "' (use unit or chi2-<dof>)");
}

// Draw-and-evaluate closure for one RNG stream; the estimate harness builds
// one per block.
polylab::mc::BlockEval make_eval(const MeasureSpec& measure, const std::string& quantity,
                                 int n, int d, std::uint64_t seed, std::uint64_t stream,
                                 int chord_k) {
    using namespace polylab;
    samplers::SamplerConfig cfg{n, d, seed, stream};

    auto closed_functional = [quantity, chord_k](const geom::ClosedPolygon& p) -> double {
        if (quantity == "curvature") return geom::total_curvature(p);
        if (quantity == "curvature-surplus")
            return geom::total_curvature(p) - 0.5 * kPi * p.edge_count();
        if (quantity == "torsion") return geom::total_torsion(p);
        if (quantity == "edge-sq") return p.edge(0).norm2();
        if (quantity == "edgelen") return p.edge(0).norm();
        if (quantity == "chord") return geom::chord_squared_mean(p, chord_k);
        if (quantity == "gyradius") return geom::gyradius_squared(p);
        if (quantity == "total-length") return geom::total_length(p);
        throw std::invalid_argument("quantity '" + quantity +
                                    "' is not defined for closed polygons");
    };
    auto arm_functional = [quantity, chord_k](const geom::PolygonArm& p) -> double {
        if (quantity == "curvature") return geom::total_curvature(p);
        if (quantity == "edge-sq") return p.edge(0).norm2();
        if (quantity == "edgelen") return p.edge(0).norm();
        if (quantity == "chord") return geom::chord_squared_mean(p, chord_k);
        if (quantity == "gyradius") return geom::gyradius_squared(p);
        if (quantity == "total-length") return geom::total_length(p);
        if (quantity == "defect-sq") return geom::closure_defect(p).norm2();
        throw std::invalid_argument("quantity '" + quantity + "' is not defined for arms");
    };

    if (measure.name == "symmetric-closed") {
        auto s = std::make_shared<samplers::SymmetricClosedSampler>(cfg);
        return [s, closed_functional]() { return closed_functional(s->next()); };
    }
    if (measure.name == "hopf-gaussian-closed") {
        auto s = std::make_shared<samplers::HopfGaussianClosedSampler>(cfg);
        return [s, closed_functional]() { return closed_functional(s->next()); };
    }
    if (measure.name == "equilateral-mcmc") {
        auto s = std::make_shared<samplers::EquilateralMcmcSampler>(cfg);
        return [s, closed_functional]() { return closed_functional(s->next()); };
    }
    if (measure.name == "hopf-gaussian-arm") {
        auto s = std::make_shared<samplers::HopfGaussianArmSampler>(cfg);
        return [s, arm_functional]() { return arm_functional(s->next()); };
    }
    // radial:<name>
    auto s = std::make_shared<samplers::RadialArmSampler>(
        cfg, radial_law_by_name(measure.name.substr(7)));
    return [s, arm_functional]() { return arm_functional(s->next()); };
}

// Writes the result JSON with the manifest embedded; when writing to a file,
// the manifest also lands next to it as <file>.manifest.json with the digest.
void emit_result(JsonWriter& j, const std::string& output_path,
                 polylab::io::RunManifest& manifest) {
    if (output_path.empty()) {
        manifest.finished_at = polylab::io::iso8601_utc_now();
        nlohmann::json m = nlohmann::json::parse(manifest.to_json());
        m.erase("outputs");
        j.raw_field("manifest", m.dump());
        std::cout << j.str() << std::endl;
        return;
    }
    {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("cannot write " + output_path);
        out << j.str() << '\n';
    }
    polylab::io::add_output_file(manifest, output_path);
    polylab::io::finish_and_write_manifest(manifest, output_path + ".manifest.json");
    std::cout << j.str() << std::endl;
}

int run(int argc, char** argv) {
    CLI::App app{"random polygon toolkit: samplers, exact formulas, quadrature, Monte Carlo"};
    app.require_subcommand(1);

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "stream sampled polygons as CSV");
    std::string s_measure = "symmetric-closed", s_output;
    int s_n = 6, s_d = 3;
    std::int64_t s_count = 1;
    std::uint64_t s_seed = 1, s_stream = 0;
    sample->add_option("--measure", s_measure,
                       "hopf-gaussian-arm | hopf-gaussian-closed | symmetric-closed | "
                       "equilateral-mcmc | radial:<unit|chi2-N>");
    sample->add_option("--n", s_n, "edge count")->required();
    sample->add_option("--d", s_d, "dimension (2 or 3)");
    sample->add_option("--count", s_count, "number of polygons")->required();
    sample->add_option("--seed", s_seed, "RNG seed (env POLYLAB_SEED overrides)");
    sample->add_option("--stream", s_stream, "RNG stream id");
    sample->add_option("--output", s_output, "output CSV path (default stdout)");

    // ---- exact ----
    auto* exact = app.add_subcommand("exact", "closed-form expectation values as JSON");
    std::string e_quantity, e_output;
    int e_n = 0, e_d = 3, e_k = 1, e_p = 1, e_bridge = 2;
    double e_m1 = -1.0, e_m2 = -1.0;
    exact
        ->add_option("--quantity", e_quantity,
                     "total-curvature | turning-angle | surplus-asymptote | arm-moment | "
                     "edge-moment | chord | gyradius | cn | unknot-bound")
        ->required();
    exact->add_option("--n", e_n, "edge count");
    exact->add_option("--d", e_d, "dimension");
    exact->add_option("--k", e_k, "chord skip");
    exact->add_option("--p", e_p, "moment order");
    exact->add_option("--bridge", e_bridge, "bridge number");
    exact->add_option("--m1", e_m1, "first edgelength moment (surplus-asymptote)");
    exact->add_option("--m2", e_m2, "second edgelength moment (surplus-asymptote)");
    exact->add_option("--output", e_output, "write JSON here as well");

    // ---- estimate ----
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of a functional");
    std::string m_quantity = "curvature", m_measure = "symmetric-closed", m_output;
    int m_n = 6, m_d = 3, m_k = 1, m_workers = 0;
    std::int64_t m_count = 100000;
    std::uint64_t m_seed = 1;
    estimate->add_option("--quantity", m_quantity,
                         "curvature | curvature-surplus | torsion | edge-sq | edgelen | "
                         "chord | gyradius | total-length | defect-sq");
    estimate->add_option("--measure", m_measure, "sampling measure (see sample)");
    estimate->add_option("--n", m_n, "edge count")->required();
    estimate->add_option("--d", m_d, "dimension (2 or 3)");
    estimate->add_option("--k", m_k, "chord skip (quantity chord)");
    estimate->add_option("--count", m_count, "sample count");
    estimate->add_option("--seed", m_seed, "RNG seed");
    estimate->add_option("--workers", m_workers, "worker threads (0 = auto)");
    estimate->add_option("--output", m_output, "write JSON here as well");

    // ---- integrate ----
    auto* integrate = app.add_subcommand("integrate", "deterministic quadrature of pdfs");
    std::string q_quantity, q_output;
    int q_n = 6, q_p = 1;
    double q_reltol = 1e-11, q_abstol = 1e-13;
    integrate->add_option("--quantity", q_quantity, "turning-angle | pair-norm | edge-moment")
        ->required();
    integrate->add_option("--n", q_n, "edge count")->required();
    integrate->add_option("--p", q_p, "moment order (edge-moment)");
    integrate->add_option("--reltol", q_reltol, "relative tolerance");
    integrate->add_option("--abstol", q_abstol, "absolute tolerance");
    integrate->add_option("--output", q_output, "write JSON here as well");

    // ---- census ----
    auto* census = app.add_subcommand("census", "curvature-threshold census (symmetric measure)");
    int c_n = 6, c_workers = 0;
    double c_multiple = 2.0;
    std::int64_t c_count = 1000000;
    std::uint64_t c_seed = 1;
    std::string c_output;
    census->add_option("--n", c_n, "edge count")->required();
    census->add_option("--threshold-multiple", c_multiple, "threshold as a multiple of 2 pi");
    census->add_option("--count", c_count, "sample count");
    census->add_option("--seed", c_seed, "RNG seed");
    census->add_option("--workers", c_workers, "worker threads (0 = auto)");
    census->add_option("--output", c_output, "write JSON here as well");

    // ---- compare ----
    auto* compare = app.add_subcommand(
        "compare", "exact vs quadrature vs Monte Carlo accuracy table (CSV)");
    std::string p_range = "5:25", p_counts = "1000000,5000000", p_output;
    std::uint64_t p_seed = 1;
    int p_workers = 0;
    compare->add_option("--n-range", p_range, "inclusive edge-count range lo:hi");
    compare->add_option("--mc-counts", p_counts, "comma-separated ensemble sizes");
    compare->add_option("--seed", p_seed, "RNG seed");
    compare->add_option("--workers", p_workers, "worker threads (0 = auto)");
    compare->add_option("--output", p_output, "output CSV path (default stdout)");

    app.parse(argc, argv);

    using namespace polylab;

    if (*sample) {
        s_seed = apply_seed_env(s_seed);
        io::RunManifest manifest = io::start_manifest(argc, argv, s_seed);
        const MeasureSpec measure = parse_measure(s_measure);

        std::vector<io::PolygonRecord> records;
        records.reserve(static_cast<std::size_t>(s_count));
        samplers::SamplerConfig cfg{s_n, s_d, s_seed, s_stream};
        auto push = [&](std::int64_t id, const std::vector<Vec3>& edges) {
            records.push_back({id, s_d, edges});
        };
        if (measure.name == "symmetric-closed") {
            samplers::SymmetricClosedSampler s(cfg);
            for (std::int64_t i = 0; i < s_count; ++i) push(i, s.next().edges());
        } else if (measure.name == "hopf-gaussian-closed") {
            samplers::HopfGaussianClosedSampler s(cfg);
            for (std::int64_t i = 0; i < s_count; ++i) push(i, s.next().edges());
        } else if (measure.name == "equilateral-mcmc") {
            if (s_d != 3) throw CLI::ValidationError("--d", "equilateral-mcmc requires d=3");
            samplers::EquilateralMcmcSampler s(cfg);
            for (std::int64_t i = 0; i < s_count; ++i) push(i, s.next().edges());
        } else if (measure.name == "hopf-gaussian-arm") {
            samplers::HopfGaussianArmSampler s(cfg);
            for (std::int64_t i = 0; i < s_count; ++i) push(i, s.next().edges());
        } else {
            samplers::RadialArmSampler s(cfg, radial_law_by_name(measure.name.substr(7)));
            for (std::int64_t i = 0; i < s_count; ++i) push(i, s.next().edges());
        }

        if (s_output.empty()) {
            io::write_polygons_csv(std::cout, records);
        } else {
            std::ofstream out(s_output);
            if (!out) throw std::runtime_error("cannot write " + s_output);
            io::write_polygons_csv(out, records);
            out.close();
            io::add_output_file(manifest, s_output);
            io::finish_and_write_manifest(manifest, s_output + ".manifest.json");
        }
        return 0;
    }

    if (*exact) {
        io::RunManifest manifest = io::start_manifest(argc, argv, 0);
        double value = 0.0;
        JsonWriter j;
        j.field("quantity", e_quantity);
        if (e_quantity == "total-curvature") {
            value = analytic::exact_expected_total_curvature(e_n);
            j.field("n", e_n);
        } else if (e_quantity == "turning-angle") {
            value = analytic::exact_expected_turning_angle(e_n);
            j.field("n", e_n);
        } else if (e_quantity == "surplus-asymptote") {
            double m1 = e_m1, m2 = e_m2;
            if (m1 <= 0.0 || m2 <= 0.0) {
                // Hopf-Gaussian defaults for the requested dimension.
                m1 = analytic::arm_edge_moment(e_d, 1);
                m2 = analytic::arm_edge_moment(e_d, 2);
            }
            value = analytic::asymptotic_surplus(e_d, m1, m2);
            j.field("d", e_d);
            j.field("m1", m1);
            j.field("m2", m2);
        } else if (e_quantity == "arm-moment") {
            value = analytic::arm_edge_moment(e_d, e_p);
            j.field("d", e_d);
            j.field("p", e_p);
        } else if (e_quantity == "edge-moment") {
            value = analytic::AnalyticContext(e_n).edge_moment(e_p);
            j.field("n", e_n);
            j.field("p", e_p);
        } else if (e_quantity == "chord") {
            value = analytic::closed_polygon_expectations(e_n).chord(e_k);
            j.field("n", e_n);
            j.field("k", e_k);
        } else if (e_quantity == "gyradius") {
            value = analytic::closed_polygon_expectations(e_n).gyradius();
            j.field("n", e_n);
        } else if (e_quantity == "cn") {
            value = analytic::hausdorff_constant(e_n);
            j.field("n", e_n);
        } else if (e_quantity == "unknot-bound") {
            value = analytic::unknot_fraction_bound(e_n, e_bridge);
            j.field("n", e_n);
            j.field("bridge", e_bridge);
        } else {
            throw CLI::ValidationError("--quantity", "unknown quantity '" + e_quantity + "'");
        }
        j.field("value", value);
        emit_result(j, e_output, manifest);
        return 0;
    }

    if (*estimate) {
        m_seed = apply_seed_env(m_seed);
        io::RunManifest manifest = io::start_manifest(argc, argv, m_seed);
        const MeasureSpec measure = parse_measure(m_measure);
        if (m_quantity == "torsion" && m_d != 3)
            throw CLI::ValidationError("--quantity", "torsion requires d=3");
        if (m_quantity == "defect-sq" && measure.closed)
            throw CLI::ValidationError("--quantity", "defect-sq applies to arm measures");

        mc::EstimateOptions opts;
        opts.quantity = m_quantity;
        opts.sampler = m_measure;
        opts.n = m_n;
        opts.d = m_d;
        opts.seed = m_seed;
        opts.count = m_count;
        opts.workers = m_workers;
        const MeasureSpec ms = measure;
        const std::string quantity = m_quantity;
        const int n = m_n, d = m_d, k = m_k;
        const std::uint64_t seed = m_seed;
        mc::EstimateReport rep = mc::estimate(opts, [=](std::uint64_t stream) {
            return make_eval(ms, quantity, n, d, seed, stream, k);
        });

        JsonWriter j;
        j.field("quantity", rep.quantity);
        j.field("measure", rep.sampler);
        j.field("n", rep.n);
        j.field("d", rep.d);
        j.field("count", rep.count);
        j.field("mean", rep.mean);
        j.field("std_error", rep.std_error);
        j.field("batch_std_error", rep.batch_std_error);
        j.field("effective_samples", rep.effective_samples);
        j.field("min", rep.min_value);
        j.field("max", rep.max_value);
        j.field("seed", rep.seed);
        j.field("wall_seconds", rep.wall_seconds);
        emit_result(j, m_output, manifest);
        return 0;
    }

    if (*integrate) {
        io::RunManifest manifest = io::start_manifest(argc, argv, 0);
        quad::QuadratureSpec spec;
        spec.rel_tol = q_reltol;
        spec.abs_tol = q_abstol;
        const analytic::AnalyticContext ctx(q_n);
        const auto t0 = std::chrono::steady_clock::now();
        quad::IntegrationResult res;
        if (q_quantity == "turning-angle") {
            res = quad::expected_turning_angle_numeric(ctx, spec);
        } else if (q_quantity == "pair-norm") {
            res = quad::integrate_pairwise_normalization(ctx, spec);
        } else if (q_quantity == "edge-moment") {
            res = quad::integrate_radial_density(
                [&ctx, q_p](double r) { return std::pow(r, q_p) * ctx.single_edge_pdf(r); },
                quad::RadialWeight::solid3d, spec);
        } else {
            throw CLI::ValidationError("--quantity", "unknown quantity '" + q_quantity + "'");
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        JsonWriter j;
        j.field("quantity", q_quantity);
        j.field("n", q_n);
        if (q_quantity == "edge-moment") j.field("p", q_p);
        j.field("value", res.value);
        j.field("error_bound", res.error_bound);
        j.field("evaluations", static_cast<std::int64_t>(res.evaluations));
        j.field("wall_seconds", wall);
        emit_result(j, q_output, manifest);
        return 0;
    }

    if (*census) {
        c_seed = apply_seed_env(c_seed);
        io::RunManifest manifest = io::start_manifest(argc, argv, c_seed);
        mc::CensusReport rep = mc::curvature_census(c_n, c_multiple, c_count, c_seed, c_workers);
        JsonWriter j;
        j.field("n", rep.n);
        j.field("threshold_multiple", rep.threshold_multiple);
        j.field("count_below", rep.count_below);
        j.field("total", rep.total);
        j.field("fraction", rep.fraction);
        j.field("ci95_low", rep.ci95_low);
        j.field("ci95_high", rep.ci95_high);
        j.field("min_curvature", rep.min_curvature);
        j.field("seed", rep.seed);
        j.field("wall_seconds", rep.wall_seconds);
        emit_result(j, c_output, manifest);
        return 0;
    }

    if (*compare) {
        p_seed = apply_seed_env(p_seed);
        io::RunManifest manifest = io::start_manifest(argc, argv, p_seed);

        const auto colon = p_range.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--n-range", "expected lo:hi");
        const int lo = std::atoi(p_range.substr(0, colon).c_str());
        const int hi = std::atoi(p_range.substr(colon + 1).c_str());
        if (lo < 4 || hi < lo) throw CLI::ValidationError("--n-range", "need 4 <= lo <= hi");

        std::vector<std::int64_t> counts;
        {
            std::stringstream ss(p_counts);
            std::string tok;
            while (std::getline(ss, tok, ',')) counts.push_back(std::atoll(tok.c_str()));
        }

        auto digits = [](double approx, double exact_v) {
            const double rel = std::fabs(approx - exact_v) / std::fabs(exact_v);
            if (rel == 0.0) return 17.0;
            return std::max(0.0, std::min(17.0, -std::log10(rel)));
        };

        std::ostringstream csv;
        csv << "n,method,samples,value,correct_digits\n";
        for (int n = lo; n <= hi; ++n) {
            const double exact_v = analytic::exact_expected_total_curvature(n);
            csv << n << ",exact,0," << format_g17(exact_v) << ",17\n";

            const analytic::AnalyticContext ctx(n);
            const quad::IntegrationResult q = quad::expected_turning_angle_numeric(ctx, {});
            const double quad_kappa = n * q.value;
            csv << n << ",quadrature,0," << format_g17(quad_kappa) << ','
                << format_g17(digits(quad_kappa, exact_v)) << '\n';

            for (std::size_t ci = 0; ci < counts.size(); ++ci) {
                mc::EstimateOptions opts;
                opts.quantity = "curvature";
                opts.sampler = "symmetric-closed";
                opts.n = n;
                opts.d = 3;
                opts.seed = p_seed;
                opts.count = counts[ci];
                opts.workers = p_workers;
                opts.stream_base =
                    (static_cast<std::uint64_t>(n) << 40) + (static_cast<std::uint64_t>(ci) << 32);
                const std::uint64_t seed_v = p_seed;
                const int n_v = n;
                mc::EstimateReport rep = mc::estimate(opts, [=](std::uint64_t stream) {
                    return make_eval({"symmetric-closed", true}, "curvature", n_v, 3, seed_v,
                                     stream, 1);
                });
                csv << n << ",mc," << counts[ci] << ',' << format_g17(rep.mean) << ','
                    << format_g17(digits(rep.mean, exact_v)) << '\n';
            }
        }

        if (p_output.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream out(p_output);
            if (!out) throw std::runtime_error("cannot write " + p_output);
            out << csv.str();
            out.close();
            io::add_output_file(manifest, p_output);
            io::finish_and_write_manifest(manifest, p_output + ".manifest.json");
        }
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << "usage error: " << e.what() << std::endl;
        return 2;
    } catch (const polylab::quad::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what()
                  << " (best estimate " << format_g17(e.best_estimate()) << " +/- "
                  << format_g17(e.error_bound()) << ")" << std::endl;
        return 1;
    } catch (const polylab::mc::EstimateError& e) {
        std::cerr << "estimation error: " << e.what() << std::endl;
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}

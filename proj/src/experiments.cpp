#include "turretlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <thread>
#include <vector>

#include "turretlab/duo2d.hpp"
#include "turretlab/errors.hpp"
#include "turretlab/geometry2d.hpp"
#include "turretlab/placement2d.hpp"
#include "turretlab/sim3d.hpp"
#include "turretlab/sphere3d.hpp"
#include "turretlab/tsplib.hpp"

namespace turretlab::experiments {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Tracks files created by a run so failures do not leave partial outputs.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
        fs::create_directories(dir_);
    }

    fs::path path(const std::string& name) {
        fs::path p = dir_ / name;
        created_.push_back(p);
        return p;
    }

    void discard_all() {
        for (const auto& p : created_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

private:
    fs::path dir_;
    std::vector<fs::path> created_;
};

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                return key == a;
            }) == allowed.end()) {
            throw BadSpec("unknown key '" + key + "' in " + where);
        }
    }
}

/// Deterministic index-sharded parallel loop; results land by index.
void parallel_for(int count, int threads,
                  const std::function<void(int)>& body) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (a + 1) + b;
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    return x;
}

void write_manifest(OutputSet& out, const ExperimentSpec& spec) {
    json manifest;
    manifest["subcommand"] = spec.subcommand;
    manifest["params"] = spec.params;
    manifest["seed"] = spec.seed;
    manifest["threads"] = spec.threads;
    manifest["code_version"] = kVersion;
    auto now = std::chrono::system_clock::now();
    manifest["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
            .count();
    std::ofstream f(out.path("manifest.json"));
    f << manifest.dump(2) << "\n";
}

// --- region2d: radial and tangent survivable boundaries -------------------

void run_region2d(const ExperimentSpec& spec, OutputSet& out) {
    check_keys(spec.params, {"v", "samples"}, "region2d params");
    double v = spec.params.value("v", 1.0);
    int samples = spec.params.value("samples", 1000);
    if (v <= 0.0 || samples < 2) throw BadSpec("region2d: v > 0, samples >= 2");

    std::ofstream csv(out.path("region2d.csv"));
    csv << "kind,param,x,y\n";
    for (int i = 0; i < samples; ++i) {
        double alpha = -kPi + kTwoPi * i / (samples - 1);
        double r = geometry2d::radial_region_boundary(alpha, v);
        csv << "radial," << fmt_double(alpha) << ','
            << fmt_double(r * std::cos(alpha)) << ','
            << fmt_double(r * std::sin(alpha)) << "\n";
    }
    double gmax = geometry2d::gamma_max();
    for (int i = 0; i < samples; ++i) {
        double gamma = -gmax + 2.0 * gmax * i / (samples - 1);
        Vec2 p = geometry2d::survivable_boundary(gamma, 0.0, v);
        csv << "tangent," << fmt_double(gamma) << ',' << fmt_double(p.x) << ','
            << fmt_double(p.y) << "\n";
    }
}

// --- sweep2d: random trials plus the structured placements ----------------

void run_sweep2d(const ExperimentSpec& spec, OutputSet& out) {
    check_keys(spec.params, {"n_min", "n_max", "trials", "epsilon"},
               "sweep2d params");
    int n_min = spec.params.value("n_min", 1);
    int n_max = spec.params.value("n_max", 10);
    int trials = spec.params.value("trials", 500);
    if (n_min < 1 || n_max < n_min || n_max > 22 || trials < 1) {
        throw BadSpec("sweep2d: need 1 <= n_min <= n_max <= 22, trials >= 1");
    }

    struct Row {
        int n;
        int trial;
        placement2d::TrialResult result;
    };
    std::vector<Row> rows;
    for (int n = n_min; n <= n_max; ++n) {
        for (int t = 0; t < trials; ++t) rows.push_back({n, t, {}});
    }
    parallel_for(static_cast<int>(rows.size()), spec.threads, [&](int i) {
        rows[i].result = placement2d::random_trial(
            rows[i].n, mix_seed(spec.seed, rows[i].n, rows[i].trial));
    });

    std::ofstream csv(out.path("trials.csv"));
    csv << "n,trial,greedy_len,optimal_len\n";
    for (const Row& r : rows) {
        csv << r.n << ',' << r.trial << ',' << fmt_double(r.result.greedy_len)
            << ',' << fmt_double(r.result.optimal_len) << "\n";
    }

    std::ofstream closed(out.path("closed_form.csv"));
    closed << "n,epsilon,greedy_spacing_greedy,greedy_spacing_optimal,"
              "doubling_greedy,doubling_optimal\n";
    for (int n = n_min; n <= n_max; ++n) {
        double eps = spec.params.value("epsilon", 1e-3);
        eps = std::min(eps, 0.5 * std::pow(0.5, n - 1) * kPi);
        auto spaced = placement2d::greedy_spacing(n, eps);
        auto doubled = placement2d::doubling_spacing(n);
        closed << n << ',' << fmt_double(eps) << ','
               << fmt_double(placement2d::greedy_sweep(spaced).total_length)
               << ','
               << fmt_double(placement2d::optimal_sweep(spaced).total_length)
               << ','
               << fmt_double(placement2d::greedy_sweep(doubled).total_length)
               << ','
               << fmt_double(placement2d::optimal_sweep(doubled).total_length)
               << "\n";
    }
}

// --- duo2d: r_max(alpha1) curves per strategy ------------------------------

void run_duo2d(const ExperimentSpec& spec, OutputSet& out) {
    check_keys(spec.params,
               {"grid", "transition_points", "dt", "hybrid_seam"},
               "duo2d params");
    int grid = spec.params.value("grid", 100);
    int transition_points = spec.params.value("transition_points", 5);
    double seam = spec.params.value("hybrid_seam", 1.4337);
    if (grid < 2) throw BadSpec("duo2d: grid >= 2");

    duo2d::DuoParams dparams;
    dparams.dt = spec.params.value("dt", 1e-4);

    struct Row {
        double alpha1;
        const char* strategy;
        double r_max = 0.0;
    };
    std::vector<Row> rows;
    for (int i = 0; i < grid; ++i) {
        double a = kPi * i / (grid - 1);
        rows.push_back({a, "radial", 0.0});
        rows.push_back({a, "tangent", 0.0});
        if (a <= seam) rows.push_back({a, "hybrid", 0.0});
    }
    for (int i = 0; i < transition_points; ++i) {
        double a = seam + (kPi / 2 - seam) * (i + 1) /
                              static_cast<double>(transition_points);
        rows.push_back({a, "transition", 0.0});
    }

    parallel_for(static_cast<int>(rows.size()), spec.threads, [&](int i) {
        Row& r = rows[i];
        duo2d::Strategy s = duo2d::Strategy::Radial;
        if (std::string_view(r.strategy) == "tangent") s = duo2d::Strategy::Tangent;
        if (std::string_view(r.strategy) == "hybrid") s = duo2d::Strategy::Hybrid;
        if (std::string_view(r.strategy) == "transition") {
            s = duo2d::Strategy::Transition;
        }
        r.r_max = duo2d::r_max(r.alpha1, s, dparams);
    });

    std::ofstream csv(out.path("duo2d.csv"));
    csv << "alpha1,strategy,r_max_over_v\n";
    for (const Row& r : rows) {
        csv << fmt_double(r.alpha1) << ',' << r.strategy << ','
            << fmt_double(r.r_max) << "\n";
    }
}

// --- spherepaths: NN vs improved vs exact, sqrt-n fit, TSPLIB export -------

void run_spherepaths(const ExperimentSpec& spec, OutputSet& out) {
    check_keys(spec.params,
               {"ns", "generators", "lloyd_iterations", "exact_limit",
                "tsplib", "metric"},
               "spherepaths params");
    std::vector<int> ns = spec.params.value("ns", std::vector<int>{25, 50, 100, 200, 400});
    std::vector<std::string> generators =
        spec.params.value("generators", std::vector<std::string>{"fibonacci", "lloyd"});
    int lloyd_iters = spec.params.value("lloyd_iterations", 50);
    int exact_limit = spec.params.value("exact_limit", 12);
    bool tsp_export = spec.params.value("tsplib", true);
    std::string metric_name = spec.params.value("metric", std::string("free"));

    sphere3d::Metric metric;
    if (metric_name == "free") {
        metric.kind = sphere3d::MetricKind::FreeRotation;
    } else if (metric_name == "pantilt") {
        metric.kind = sphere3d::MetricKind::PanTiltRate;
        metric.pan_rate = metric.tilt_rate = 1.0;
    } else {
        throw BadSpec("spherepaths: metric must be 'free' or 'pantilt'");
    }
    const Vec3 start{1.0, 0.0, 0.0};

    std::ofstream csv(out.path("paths.csv"));
    csv << "n,generator,solver,total_radians\n";
    std::vector<double> fit_ns;
    std::vector<double> fit_nn;
    std::vector<double> fit_improved;

    for (const std::string& gen : generators) {
        for (int n : ns) {
            sphere3d::SpherePointSet set =
                gen == "fibonacci"
                    ? sphere3d::fibonacci_sphere(n)
                    : sphere3d::lloyd_relax(n, mix_seed(spec.seed, n, 17),
                                            lloyd_iters);
            auto nn = sphere3d::nn_path(set, start, metric);
            auto improved = sphere3d::nn_two_opt_path(set, start, metric);
            csv << n << ',' << gen << ",nn," << fmt_double(nn.total) << "\n";
            csv << n << ',' << gen << ",nn-2opt," << fmt_double(improved.total)
                << "\n";
            if (n <= exact_limit && n <= 22) {
                auto exact = sphere3d::exact_shp(set, start, metric);
                csv << n << ',' << gen << ",exact-dp,"
                    << fmt_double(exact.total) << "\n";
            }
            if (gen == "fibonacci") {
                fit_ns.push_back(n);
                fit_nn.push_back(nn.total);
                fit_improved.push_back(improved.total);
            }
            if (tsp_export) {
                auto matrix = sphere3d::phantom_transform(set, start, metric);
                char name[64];
                std::snprintf(name, sizeof(name), "%s_%d.tsp", gen.c_str(), n);
                tsplib::write_explicit_full_matrix(
                    out.path(name), name,
                    "phantom_index=" + std::to_string(n + 1) +
                        " start_index=0 weights=round(1e6*radians)",
                    matrix);
            }
        }
    }

    if (fit_ns.size() >= 3) {
        std::ofstream fit(out.path("sqrtfit.csv"));
        fit << "series,coefficient,rms_residual,relative_residual\n";
        auto dump = [&](const char* series, const std::vector<double>& totals) {
            auto f = sphere3d::sqrt_fit(fit_ns, totals);
            double mean = 0.0;
            for (double t : totals) mean += t;
            mean /= static_cast<double>(totals.size());
            fit << series << ',' << fmt_double(f.coefficient) << ','
                << fmt_double(f.rms_residual) << ','
                << fmt_double(f.rms_residual / mean) << "\n";
        };
        dump("fibonacci-nn", fit_nn);
        dump("fibonacci-nn-2opt", fit_improved);
    }
}

// --- engagement3d: max starting distances over the xi grid -----------------

void run_engagement3d(const ExperimentSpec& spec, OutputSet& out) {
    check_keys(spec.params,
               {"formations", "strategies", "xi_grid", "n", "d_init", "d_min",
                "d_cap", "accel", "max_time", "trace"},
               "engagement3d params");
    std::vector<std::string> formations =
        spec.params.value("formations", std::vector<std::string>{"cylinder"});
    std::vector<std::string> strategies =
        spec.params.value("strategies",
                          std::vector<std::string>{"direct", "indirect"});
    std::vector<double> xi_grid = spec.params.value(
        "xi_grid", std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
    int n = spec.params.value("n", 28);
    double d_init = spec.params.value("d_init", 20.0);
    double d_min = spec.params.value("d_min", 2.0);
    double d_cap = spec.params.value("d_cap", 150.0);
    bool trace = spec.params.value("trace", false);

    sim3d::SimParams params;
    params.drone_max_accel = spec.params.value("accel", 15.0);
    params.max_time = spec.params.value("max_time", 240.0);

    auto parse_formation = [](const std::string& s) {
        if (s == "plane") return sim3d::Formation::Plane;
        if (s == "half-cylinder") return sim3d::Formation::HalfCylinder;
        if (s == "cylinder") return sim3d::Formation::Cylinder;
        throw BadSpec("engagement3d: unknown formation '" + s + "'");
    };
    auto parse_strategy = [](const std::string& s) {
        if (s == "direct") return sim3d::AttackStrategy::Direct;
        if (s == "indirect") return sim3d::AttackStrategy::Indirect;
        throw BadSpec("engagement3d: unknown strategy '" + s + "'");
    };

    struct Row {
        std::string formation;
        std::string strategy;
        double xi;
        double max_distance = 0.0;
        bool unbounded = false;
        bool violated = false;
        bool never = false;
    };
    std::vector<Row> rows;
    for (const auto& f : formations) {
        parse_formation(f);
        for (const auto& s : strategies) {
            parse_strategy(s);
            for (double xi : xi_grid) rows.push_back({f, s, xi});
        }
    }

    parallel_for(static_cast<int>(rows.size()), spec.threads, [&](int i) {
        Row& r = rows[i];
        sim3d::AttackConfig cfg;
        cfg.formation = parse_formation(r.formation);
        cfg.strategy = parse_strategy(r.strategy);
        cfg.n = n;
        cfg.xi = r.xi;
        cfg.distance = d_init;
        try {
            auto res = sim3d::max_start_distance(cfg, params, d_min, d_cap);
            r.max_distance = res.distance;
            r.unbounded = res.unbounded;
            r.violated = res.monotonicity_violated;
        } catch (const AttackNeverSucceeds&) {
            r.never = true;
        }
    });

    std::ofstream csv(out.path("engagement3d.csv"));
    csv << "formation,strategy,xi,max_distance_m,flags\n";
    for (const Row& r : rows) {
        std::string flags;
        if (r.never) flags = "never-succeeds";
        if (r.unbounded) flags = "unbounded";
        if (r.violated) flags += std::string(flags.empty() ? "" : ";") +
                                 "non-monotone";
        csv << r.formation << ',' << r.strategy << ',' << fmt_double(r.xi)
            << ',' << fmt_double(r.never ? 0.0 : r.max_distance) << ','
            << flags << "\n";
    }

    if (trace) {
        // One replayable trace per (formation, strategy) at its xi=first
        // winning distance, sampled at 0.1 s.
        struct JsonTrace : sim3d::TraceSink {
            json steps = json::array();
            int counter = 0;
            void on_step(double t, const Turret3D& turret,
                         const std::vector<sim3d::DroneBody>& drones) override {
                if (counter++ % 24 != 0) return;
                json row;
                row["t"] = t;
                row["pan"] = turret.pan;
                row["tilt"] = turret.tilt;
                json ds = json::array();
                for (const auto& d : drones) {
                    ds.push_back({{"x", d.p.x},
                                  {"y", d.p.y},
                                  {"z", d.p.z},
                                  {"alive", d.alive}});
                }
                row["drones"] = ds;
                steps.push_back(row);
            }
        };
        for (const Row& r : rows) {
            if (r.never || r.xi != xi_grid.front()) continue;
            sim3d::AttackConfig cfg;
            cfg.formation = parse_formation(r.formation);
            cfg.strategy = parse_strategy(r.strategy);
            cfg.n = n;
            cfg.xi = r.xi;
            cfg.distance = r.max_distance;
            JsonTrace sink;
            auto res = sim3d::run_engagement(cfg, params, &sink);
            json doc;
            doc["formation"] = r.formation;
            doc["strategy"] = r.strategy;
            doc["xi"] = r.xi;
            doc["distance"] = r.max_distance;
            doc["outcome"] = static_cast<int>(res.outcome);
            json kills = json::array();
            for (const auto& k : res.kill_log) {
                kills.push_back({{"drone", k.drone},
                                 {"time", k.time},
                                 {"x", k.position.x},
                                 {"y", k.position.y},
                                 {"z", k.position.z}});
            }
            doc["kills"] = kills;
            doc["steps"] = sink.steps;
            std::ofstream f(out.path("trace_" + r.formation + "_" +
                                     r.strategy + ".json"));
            f << doc.dump() << "\n";
        }
    }
}

}  // namespace

ExperimentSpec parse_spec_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw BadSpec("cannot open spec file " + file.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw BadSpec(std::string("spec is not valid JSON: ") + e.what());
    }
    check_keys(doc, {"subcommand", "params", "seed", "out", "threads"},
               "spec root");
    ExperimentSpec spec;
    if (!doc.contains("subcommand") || !doc["subcommand"].is_string()) {
        throw BadSpec("spec needs a string 'subcommand'");
    }
    spec.subcommand = doc["subcommand"];
    spec.params = doc.value("params", json::object());
    if (!spec.params.is_object()) throw BadSpec("'params' must be an object");
    spec.seed = doc.value("seed", 0);
    spec.threads = doc.value("threads", 1);
    if (doc.contains("out")) spec.out_dir = doc["out"].get<std::string>();
    return spec;
}

void run(const ExperimentSpec& spec) {
    OutputSet out(spec.out_dir);
    try {
        write_manifest(out, spec);
        if (spec.subcommand == "region2d") {
            run_region2d(spec, out);
        } else if (spec.subcommand == "sweep2d") {
            run_sweep2d(spec, out);
        } else if (spec.subcommand == "duo2d") {
            run_duo2d(spec, out);
        } else if (spec.subcommand == "spherepaths") {
            run_spherepaths(spec, out);
        } else if (spec.subcommand == "engagement3d") {
            run_engagement3d(spec, out);
        } else {
            throw BadSpec("unknown subcommand '" + spec.subcommand + "'");
        }
    } catch (...) {
        out.discard_all();
        throw;
    }
}

}  // namespace turretlab::experiments

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "restartive/restartive.hpp"

namespace fs = std::filesystem;
using namespace restartive;

namespace {

struct CommonOpts {
    std::string preset;
    std::string config_path;
    std::string out_dir = "runs";
    long long seed = -1;
    int jobs = 1;
    std::string mnist_dir;
    long record_every = -1;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--preset", o.preset, "named experiment preset (fig2a, fig2b, fig2c, fig3, thm2)");
    sub->add_option("--config", o.config_path, "path to a JSON experiment config");
    sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "replace the configured seed list with this single seed");
    sub->add_option("--jobs", o.jobs, "worker threads for independent runs")->capture_default_str();
    sub->add_option("--mnist-dir", o.mnist_dir,
                    "directory holding train-images-idx3-ubyte and train-labels-idx1-ubyte "
                    "(default: RESTARTIVE_MNIST_DIR)");
    sub->add_option("--record-every", o.record_every, "trace recording stride");
    sub->add_option("overrides", o.overrides,
                    "dotted config overrides, e.g. oracle.sigma=0.01 stages.0.step_size=5e-4");
}

std::string sanitize_label(const std::string& label) {
    std::string out;
    for (char c : label) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')
                        || (c >= '0' && c <= '9') || c == '-' || c == '_';
        out += ok ? c : '_';
    }
    return out;
}

const char* problem_kind_name(ProblemSpec::Kind k) {
    switch (k) {
    case ProblemSpec::Kind::CycleQuadratic: return "cycle_quadratic";
    case ProblemSpec::Kind::Rosenbrock: return "rosenbrock";
    case ProblemSpec::Kind::LogregSynthetic: return "logreg_synthetic";
    case ProblemSpec::Kind::LogregMnist: return "logreg_mnist";
    }
    return "?";
}

// family guard: each topical subcommand only accepts its own problem kind
void check_problem_family(const std::string& sub, const ProblemSpec& p) {
    bool ok = true;
    if (sub == "quadratic") ok = p.kind == ProblemSpec::Kind::CycleQuadratic;
    if (sub == "logreg")
        ok = p.kind == ProblemSpec::Kind::LogregSynthetic
             || p.kind == ProblemSpec::Kind::LogregMnist;
    if (sub == "nonconvex") ok = p.kind == ProblemSpec::Kind::Rosenbrock;
    if (!ok)
        throw std::runtime_error("subcommand '" + sub + "' cannot run a "
                                 + std::string(problem_kind_name(p.kind))
                                 + " problem; use 'compare' for arbitrary configs");
}

int run_experiment(const std::string& sub, const std::string& default_preset,
                   const CommonOpts& opts) {
    if (!opts.preset.empty() && !opts.config_path.empty())
        throw std::runtime_error("give either --preset or --config, not both");
    if (opts.jobs < 1) throw std::runtime_error("--jobs must be >= 1");

    json doc;
    if (!opts.config_path.empty()) {
        std::ifstream f(opts.config_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open config file " + opts.config_path);
        std::ostringstream ss;
        ss << f.rdbuf();
        const std::string text = ss.str();
        bool blank = true;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) {
            doc = json::object();
        } else {
            try {
                doc = json::parse(text);
            } catch (const json::parse_error& e) {
                throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
            }
        }
    } else {
        std::string name = opts.preset.empty() ? default_preset : opts.preset;
        if (name.empty())
            throw std::runtime_error("'" + sub + "' needs --preset or --config");
        doc = preset_json(name);
    }

    for (const auto& ov : opts.overrides) apply_override(doc, ov);
    if (opts.seed >= 0) doc["seeds"] = json::array({opts.seed});
    if (opts.record_every >= 0) {
        if (opts.record_every < 1) throw std::runtime_error("--record-every must be >= 1");
        doc["record_every"] = opts.record_every;
    }

    ExperimentConfig cfg = config_from_json(doc);
    check_problem_family(sub, cfg.problem);

    std::string mnist_dir = opts.mnist_dir;
    if (mnist_dir.empty()) {
        if (const char* env = std::getenv("RESTARTIVE_MNIST_DIR")) mnist_dir = env;
    }

    BuiltProblem prob = build_problem(cfg.problem, mnist_dir, &std::cerr);
    ComparisonReport rep = compare(cfg, prob, opts.jobs);

    fs::create_directories(opts.out_dir);
    {
        std::ofstream rc(fs::path(opts.out_dir) / "resolved_config.json", std::ios::binary);
        if (!rc) throw std::runtime_error("cannot write resolved_config.json under " + opts.out_dir);
        rc << cfg.resolved_json;
    }
    for (const auto& rr : rep.runs) {
        const std::string fname =
            sanitize_label(rr.label) + "_seed" + std::to_string(rr.seed) + ".csv";
        write_trace_csv(rr.trace, (fs::path(opts.out_dir) / fname).string());
    }
    write_report_csv(rep, (fs::path(opts.out_dir) / "report.csv").string());

    std::printf("experiment: %s\n", cfg.name.c_str());
    std::printf("problem: %s", problem_kind_name(cfg.problem.kind));
    if (prob.mnist_fallback_used) std::printf(" (synthetic fallback)");
    std::printf("  dim=%ld\n", prob.dim());
    std::printf("runs: %zu methods x %zu seeds, %ld iters\n", cfg.methods.size(),
                cfg.seeds.size(), cfg.total_iters);
    std::printf("f_ref: %.10g (observed %.10g", rep.f_ref, rep.f_ref_observed);
    if (rep.f_ref_lstsq) std::printf(", least-squares %.10g", *rep.f_ref_lstsq);
    std::printf(")\n");
    std::printf("%-10s %13s %13s %13s %13s %9s\n", "method", "mean_gap", "sd_gap",
                "mean_loss", "sd_loss", "diverged");
    for (const auto& ms : rep.methods)
        std::printf("%-10s %13.6g %13.6g %13.6g %13.6g %5ld/%ld\n", ms.label.c_str(),
                    ms.mean_final_gap, ms.stddev_final_gap, ms.mean_final_loss,
                    ms.stddev_final_loss, ms.n_diverged, ms.n_runs);
    std::printf("wrote %s/resolved_config.json, %zu trace files, %s/report.csv\n",
                opts.out_dir.c_str(), rep.runs.size(), opts.out_dir.c_str());

    if (rep.all_diverged) {
        std::fprintf(stderr, "all runs diverged\n");
        return 2;
    }
    return 0;
}

int run_selftest() {
    int failures = 0;
    int checks = 0;
    auto check = [&](const char* name, bool ok) {
        ++checks;
        if (!ok) {
            ++failures;
            std::printf("FAIL - %s\n", name);
        } else {
            std::printf("ok - %s\n", name);
        }
    };

    {
        const Vec y = axpy(-0.25, {4.0, 8.0}, {1.0, 1.0});
        check("axpy example", y[0] == 0.0 && y[1] == -1.0);
    }
    {
        Rng rng(123);
        bool in_range = true;
        for (int i = 0; i < 1000; ++i) {
            const double u = rng.next_uniform();
            if (!(u > 0.0 && u < 1.0)) in_range = false;
        }
        check("uniform draws stay inside (0,1)", in_range);
    }
    {
        OptimizerState st = make_state({0.0});
        Vec g = {0.5};
        nag_step(st, g, 1.0);
        const auto oc = nag_step(st, g, 1.0);
        check("nag momentum after two steps", std::abs(oc.momentum_used - 0.2817538) < 1e-6);
    }
    {
        OptimizerState st = make_state({0.0});
        Vec g = {0.0};
        double mus[6];
        for (int i = 0; i < 6; ++i) mus[i] = sr_step(st, g, 1.0, 3).momentum_used;
        check("sr momentum cycle of three",
              mus[0] == 0.0 && mus[1] == 0.25 && mus[2] == 0.4 && mus[3] == 0.0
                  && mus[4] == 0.25 && mus[5] == 0.4);
    }
    {
        OptimizerState st = make_state({1.0, -2.0});
        Vec params = {1.0, -2.0};
        Vec buf = params;
        long ic = 1;
        bool agree = true;
        Rng rng(5);
        for (int i = 0; i < 12; ++i) {
            Vec g = {rng.next_gaussian(), rng.next_gaussian()};
            sr_step(st, g, 0.1, 4);
            auto r = buffer_sr_step(params, buf, g, 0.1, ic, 4);
            params = r.params;
            buf = r.buffer;
            ic = r.iter_count;
            for (int k = 0; k < 2; ++k)
                if (std::abs(params[static_cast<std::size_t>(k)] - st.w[static_cast<std::size_t>(k)]) > 1e-15)
                    agree = false;
        }
        check("buffered sr matches the stateful sr walk", agree);
    }
    {
        const FrequencyPlan lin = FrequencyPlan::linear(30, 2.0, 4);
        const FrequencyPlan expo = FrequencyPlan::exponential(40, 1.25, 4);
        bool ok = true;
        const long lin_expect[4] = {30, 60, 90, 120};
        const long exp_expect[4] = {40, 50, 63, 78};
        for (int s = 0; s < 4; ++s) {
            if (frequency_at(lin, s, 0.0) != lin_expect[s]) ok = false;
            if (frequency_at(expo, s, 0.0) != exp_expect[s]) ok = false;
        }
        check("frequency ramp tables", ok);
    }
    {
        CycleQuadratic q(4);
        const auto [f, g] = q.value_grad({1.0, 1.0, 1.0, 1.0});
        check("cycle quadratic at the all-ones point", f == -1.0 && g[0] == -1.0 && g[1] == 0.0);
    }
    {
        Rosenbrock r(4);
        auto fd = finite_diff_gradient([&r](const Vec& x) { return r.value_grad(x).first; },
                                       {0.4, -0.3, 1.2, 0.9}, 1e-6);
        const Vec g = r.value_grad({0.4, -0.3, 1.2, 0.9}).second;
        check("rosenbrock gradient vs finite differences", max_rel_error(g, fd) < 1e-6);
    }
    {
        BuiltProblem prob;
        prob.quad.emplace(16, true);
        RunConfig rc;
        rc.method.kind = MethodKind::GD;
        rc.method.label = "GD";
        rc.stages = StagePlan::single(200, 0.25);
        rc.total_iters = 200;
        rc.record_every = 1;
        rc.seed = 1;
        const auto out = run(prob, OracleSpec::exact(), rc);
        bool monotone = true;
        for (std::size_t i = 1; i < out.trace.rows.size(); ++i)
            if (out.trace.rows[i].f_value > out.trace.rows[i - 1].f_value + 1e-15)
                monotone = false;
        check("gradient descent is non-increasing on the quadratic", monotone);
    }

    if (failures == 0) {
        std::printf("selftest: PASS (%d checks)\n", checks);
        return 0;
    }
    std::printf("selftest: %d of %d checks failed\n", failures, checks);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"restarted and adaptive momentum experiment runner"};
    app.require_subcommand(1);

    CommonOpts quad_opts, logreg_opts, noncvx_opts, cmp_opts;
    auto* quad = app.add_subcommand("quadratic", "cycle-graph quadratic experiments (default preset fig2a)");
    add_common(quad, quad_opts);
    auto* logreg = app.add_subcommand("logreg", "softmax regression experiments (default preset fig3)");
    add_common(logreg, logreg_opts);
    auto* noncvx = app.add_subcommand("nonconvex", "rosenbrock experiments (default preset thm2)");
    add_common(noncvx, noncvx_opts);
    auto* cmp = app.add_subcommand("compare", "run any experiment config");
    add_common(cmp, cmp_opts);
    auto* self = app.add_subcommand("selftest", "run built-in sanity checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(quad)) return run_experiment("quadratic", "fig2a", quad_opts);
        if (app.got_subcommand(logreg)) return run_experiment("logreg", "fig3", logreg_opts);
        if (app.got_subcommand(noncvx)) return run_experiment("nonconvex", "thm2", noncvx_opts);
        if (app.got_subcommand(cmp)) return run_experiment("compare", "", cmp_opts);
        if (app.got_subcommand(self)) return run_selftest();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

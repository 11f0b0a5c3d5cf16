#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperdecay/pipeline.hpp"

#ifndef HYPERDECAY_MODELS_DIR
#define HYPERDECAY_MODELS_DIR "models"
#endif

using namespace hyperdecay;

namespace {

struct ModelArgs {
    std::string model;
    int dim = 0;
    std::vector<std::string> params;

    void add(CLI::App* cmd) {
        cmd->add_option("model", model, "preset name or model JSON file")->required();
        cmd->add_option("--dim", dim, "space dimension (presets only)");
        cmd->add_option("--param", params, "preset parameter override, name=value (repeatable)");
    }

    Model load(const std::string& models_dir) const {
        Model m = load_model(model, models_dir);
        if ((dim > 0 || !params.empty()) && m.preset.empty()) throw Error("--dim/--param apply to presets only");
        if (dim > 0) m.dim = dim;
        for (const auto& kv : params) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error("--param expects name=value, got '" + kv + "'");
            try {
                m.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw Error("bad value in --param '" + kv + "'");
            }
        }
        m.stack();
        return m;
    }
};

struct SeriesArgs {
    std::string data;
    int k = 0;
    double s = 0.0;
    TimeWindow win;

    void add(CLI::App* cmd) {
        cmd->add_option("--data", data, "data JSON file {\"u\": [...]}; default: unit gaussian in the top datum");
        cmd->add_option("--k", k, "time derivatives");
        cmd->add_option("--s", s, "homogeneous Sobolev order");
        cmd->add_option("--tmin", win.tmin, "first output time");
        cmd->add_option("--tmax", win.tmax, "last output time");
        cmd->add_option("--per-decade", win.per_decade, "output times per decade");
        cmd->add_option("--fit-tmin", win.fit_tmin, "slope fit window start (default tmin)");
        cmd->add_option("--fit-tmax", win.fit_tmax, "slope fit window end (default tmax)");
    }

    DataSpec load(const OperatorStack& st) const {
        return data.empty() ? data_from_json(json::object(), st) : data_from_json(read_json_file(data), st);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperdecay: stability, root asymptotics and decay rates of higher-order hyperbolic operators"};
    app.require_subcommand(1);
    PipelineOptions opt;
    std::string models_dir = HYPERDECAY_MODELS_DIR;
    app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", opt.threads, "worker threads (computations are sequential)")->check(CLI::PositiveNumber);
    app.add_option("--tol", opt.tol, "relative tolerance for expansion coefficients in reproduce")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--models", models_dir, "fixture directory used for preset names")->capture_default_str();
    app.add_flag("--quiet", opt.quiet, "suppress warnings and the summary line");

    ModelArgs classify_m, asym_m, predict_m, sim_m, prof_m, semi_m, repro_m;

    auto* c_classify = app.add_subcommand("classify", "stability verdict (interlacing lemmas plus abscissa check)");
    classify_m.add(c_classify);

    auto* c_asym = app.add_subcommand("asymptotics", "low/high-frequency root expansions with remainder fits");
    asym_m.add(c_asym);
    std::string regime = "both";
    std::vector<std::string> dir_args;
    c_asym->add_option("--regime", regime, "low, high or both")->check(CLI::IsMember({"low", "high", "both"}));
    c_asym->add_option("--direction", dir_args, "direction as comma list, e.g. 1,0 (repeatable)");

    auto* c_predict = app.add_subcommand("predict", "predicted decay exponent from the classification");
    predict_m.add(c_predict);
    int pn = 0;
    double pq = 1.0, pk = 0.0, ps = 0.0, pnu = 2.0;
    bool pzero = false;
    c_predict->add_option("--n", pn, "space dimension for the estimate (default: model dimension)");
    c_predict->add_option("--q", pq, "data in L^q, q in [1, 2]");
    c_predict->add_option("--k", pk, "time derivatives");
    c_predict->add_option("--s", ps, "homogeneous Sobolev order");
    c_predict->add_option("--nu", pnu, "regularity traded for decay (weak top interlacing)");
    c_predict->add_flag("--moment-zero", pzero, "data with vanishing moment");

    auto* c_sim = app.add_subcommand("simulate", "norm time series of the exact Fourier solution with slope fit");
    sim_m.add(c_sim);
    SeriesArgs sim_a;
    sim_a.add(c_sim);

    auto* c_prof = app.add_subcommand("profile", "solution versus asymptotic profile");
    prof_m.add(c_prof);
    SeriesArgs prof_a;
    prof_a.add(c_prof);

    auto* c_semi = app.add_subcommand("semilinear", "pseudospectral run with a power nonlinearity");
    semi_m.add(c_semi);
    SemilinearConfig cfg;
    std::string semi_data;
    double amplitude = 1e-3, width = 2.0;
    c_semi->add_option("--p", cfg.p, "power of the nonlinearity");
    c_semi->add_option("--sign", cfg.sign, "sign of the nonlinearity, 1 or -1");
    c_semi->add_option("--nu", cfg.nu, "time derivative inside the nonlinearity");
    c_semi->add_option("--L", cfg.L, "half box length");
    c_semi->add_option("--N", cfg.N, "modes per axis");
    c_semi->add_option("--T", cfg.T, "final time");
    c_semi->add_option("--dt", cfg.dt0, "initial step");
    c_semi->add_flag("--linear", cfg.linear, "drop the nonlinearity");
    c_semi->add_option("--amplitude", amplitude, "gaussian amplitude of the top datum (ignored with --data)");
    c_semi->add_option("--width", width, "gaussian width of the top datum (ignored with --data)");
    c_semi->add_option("--data", semi_data, "data JSON file");

    auto* c_repro = app.add_subcommand("reproduce", "run every step and diff against the model's fixtures");
    repro_m.add(c_repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_CONFIG;
    }

    CommandResult res;
    try {
        if (*c_classify) {
            res = run_classify(classify_m.load(models_dir), opt);
        } else if (*c_asym) {
            Model m = asym_m.load(models_dir);
            std::vector<Direction> dirs;
            for (const auto& d : dir_args) dirs.push_back(parse_direction(d, m.dim));
            res = run_asymptotics(m, regime, dirs, opt);
        } else if (*c_predict) {
            res = run_predict(predict_m.load(models_dir), pn, pq, pk, ps, pzero, pnu, opt);
        } else if (*c_sim) {
            Model m = sim_m.load(models_dir);
            res = run_simulate(m, sim_a.load(m.stack()), sim_a.k, sim_a.s, sim_a.win, opt);
        } else if (*c_prof) {
            Model m = prof_m.load(models_dir);
            res = run_profile(m, prof_a.load(m.stack()), prof_a.k, prof_a.s, prof_a.win, opt);
        } else if (*c_semi) {
            Model m = semi_m.load(models_dir);
            auto st = m.stack();
            DataSpec data = semi_data.empty()
                                ? top_datum(st.m(), st.dim(), DataProfile::gaussian(amplitude, width))
                                : data_from_json(read_json_file(semi_data), st);
            res = run_semilinear_cmd(m, cfg, data, opt);
        } else if (*c_repro) {
            res = run_reproduce(repro_m.load(models_dir), opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }

    if (!opt.quiet) {
        for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
        if (res.report.contains("checks")) {
            int failed = 0;
            for (const auto& c : res.report["checks"])
                if (!c["ok"].get<bool>()) {
                    ++failed;
                    std::cout << "MISMATCH " << c["check"].get<std::string>() << "\n";
                }
            std::cout << res.report["checks"].size() - failed << "/" << res.report["checks"].size() << " checks pass\n";
        }
    }
    return res.exit_code;
}

#pragma once

// Command implementations behind the hyperdecay tool. Each command writes a JSON report (and CSV
// series where there is one) into the output directory and returns an exit code:
//   0 ok, 1 configuration error, 2 fixture mismatch or non-hyperbolic symbol, 3 inconclusive stability.

#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "hyperdecay/asymptotics.hpp"
#include "hyperdecay/decay.hpp"
#include "hyperdecay/model_io.hpp"
#include "hyperdecay/profiles.hpp"
#include "hyperdecay/semilinear.hpp"
#include "hyperdecay/stability.hpp"

namespace hyperdecay {

enum ExitCode { EXIT_OK = 0, EXIT_CONFIG = 1, EXIT_MISMATCH = 2, EXIT_INCONCLUSIVE = 3 };

struct PipelineOptions {
    std::string out_dir = "out";
    int threads = 1;       // accepted for interface compatibility; all work is sequential
    double tol = 1e-8;     // relative tolerance for expansion coefficients against fixtures
    bool quiet = false;
};

struct CommandResult {
    int exit_code = EXIT_OK;
    json report;
    std::vector<std::string> files;  // written outputs, in order
};

inline json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json stability_json(const StabilityReport& r) {
    json j;
    j["route"] = r.route;
    j["m"] = r.m;
    j["depth"] = r.depth;
    j["strictly_stable"] = r.strictly_stable;
    j["conclusive"] = r.conclusive;
    j["lemma_verdict"] = r.lemma_verdict;
    j["abscissa_verdict"] = r.abscissa_verdict;
    j["max_abscissa"] = r.max_abscissa;
    j["abscissa_witness"] = r.abscissa_witness;
    json h = json::array();
    for (std::size_t i = 0; i < r.hyperbolicity.size(); ++i) {
        const auto& x = r.hyperbolicity[i];
        const std::string name = i == 0 ? std::string("P_m") : "P_{m-" + std::to_string(i) + "}";
        h.push_back({{"symbol", name}, {"class", to_string(x.cls)}, {"min_gap", x.min_gap}, {"witness", x.witness},
                     {"witness_root", cplx_json(x.witness_root)}});
    }
    j["hyperbolicity"] = h;
    auto il = [](const InterlacingClass& c) {
        return json{{"kind", to_string(c.kind)}, {"margin", c.margin}, {"direction", c.direction}, {"detail", c.detail}};
    };
    j["top"] = il(r.top);
    if (r.depth >= 2 && r.route != "hermite_biehler") {
        j["lower"] = il(r.lower);
        j["no_common_triple_root"] = r.no_common_triple_root;
        j["triple_margin"] = r.triple_margin;
    }
    j["flags"] = flag_names(r.flags);
    j["notes"] = r.notes;
    return j;
}

inline int stability_exit_code(const StabilityReport& r) {
    for (const auto& h : r.hyperbolicity)
        if (h.cls == Hyperbolicity::NONE) return EXIT_MISMATCH;
    return r.conclusive ? EXIT_OK : EXIT_INCONCLUSIVE;
}

inline std::string out_path(const PipelineOptions& opt, const std::string& file) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / file).string();
}

inline void emit_json(CommandResult& res, const PipelineOptions& opt, const std::string& file) {
    std::string p = out_path(opt, file);
    save_json(res.report, p);
    res.files.push_back(p);
}

inline void emit_csv(CommandResult& res, const PipelineOptions& opt, const std::string& file, const CsvWriter& w) {
    std::string p = out_path(opt, file);
    w.save(p);
    res.files.push_back(p);
}

/// Parses "1,0,0" into a unit direction of dimension n.
inline Direction parse_direction(const std::string& s, int n) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw Error("bad direction component '" + tok + "'");
        }
    }
    if (static_cast<int>(v.size()) != n) throw Error("direction needs " + std::to_string(n) + " components");
    return Direction::normalized(v);
}

// ---- classify

inline CommandResult run_classify(const Model& model, const PipelineOptions& opt) {
    CommandResult res;
    auto st = model.stack();
    auto rep = classify(st);
    res.report = {{"command", "classify"}, {"model", model.name}, {"stability", stability_json(rep)}};
    res.exit_code = stability_exit_code(rep);
    emit_json(res, opt, "classify_" + model.name + ".json");
    return res;
}

// ---- asymptotics

inline json record_json(const ExpansionRecord& r, const ExpansionFit* fit) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back(json::array({t.power, t.coeff.real(), t.coeff.imag()}));
    json j{{"regime", to_string(r.regime)}, {"kind", to_string(r.kind)}, {"branch", r.branch}, {"root", r.root},
           {"terms", terms}};
    if (fit) {
        j["fitted_order"] = fit->fitted_order;
        j["exact"] = fit->exact;
        j["max_rel_err"] = fit->max_rel_err;
        j["fit_ok"] = expansion_fit_ok(r, *fit);
    }
    return j;
}

struct AsymptoticsRun {
    Direction dir = Direction::axis(1);
    DirectionalExpansions ex;
    std::vector<ExpansionFit> low_fits, high_fits;
};

inline AsymptoticsRun asymptotics_along(const OperatorStack& st, const Direction& d) {
    AsymptoticsRun a;
    a.dir = d;
    a.ex = expansions_along(st, d);
    for (const auto& r : a.ex.low) a.low_fits.push_back(verify_expansion(a.ex.branches, r));
    for (const auto& r : a.ex.high) a.high_fits.push_back(verify_expansion(a.ex.branches, r));
    return a;
}

inline void asymptotics_rows(CsvWriter& w, int dir_index, const AsymptoticsRun& a, bool low, bool high) {
    auto rows = [&](const std::vector<ExpansionRecord>& recs) {
        for (const auto& r : recs)
            for (const auto& t : r.terms)
                w.row(std::vector<std::string>{std::to_string(dir_index), to_string(r.regime), std::to_string(r.branch),
                                               to_string(r.kind), fmt17(r.root), std::to_string(t.power),
                                               fmt17(t.coeff.real()), fmt17(t.coeff.imag())});
    };
    if (low) rows(a.ex.low);
    if (high) rows(a.ex.high);
}

inline json asymptotics_json(const AsymptoticsRun& a, bool low, bool high) {
    json j{{"direction", a.dir.components()}};
    if (low) {
        j["low"] = json::array();
        for (std::size_t i = 0; i < a.ex.low.size(); ++i) j["low"].push_back(record_json(a.ex.low[i], &a.low_fits[i]));
    }
    if (high) {
        j["high"] = json::array();
        for (std::size_t i = 0; i < a.ex.high.size(); ++i) j["high"].push_back(record_json(a.ex.high[i], &a.high_fits[i]));
    }
    j["low_to_high"] = a.ex.permutation;
    return j;
}

inline CsvWriter asymptotics_csv() {
    return CsvWriter({"direction", "regime", "branch", "kind", "root", "power", "re_coeff", "im_coeff"});
}

/// regime: "low", "high" or "both"; an empty direction list means the first sampling direction.
inline CommandResult run_asymptotics(const Model& model, const std::string& regime, std::vector<Direction> dirs,
                                     const PipelineOptions& opt) {
    if (regime != "low" && regime != "high" && regime != "both") throw Error("regime must be low, high or both");
    const bool low = regime != "high", high = regime != "low";
    auto st = model.stack();
    if (dirs.empty()) dirs.push_back(stack_directions(st).front());
    CommandResult res;
    CsvWriter w = asymptotics_csv();
    json all = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        auto a = asymptotics_along(st, dirs[i]);
        asymptotics_rows(w, static_cast<int>(i), a, low, high);
        json j = asymptotics_json(a, low, high);
        for (const char* key : {"low", "high"})
            if (j.contains(key))
                for (const auto& r : j[key]) ok = ok && r["fit_ok"].get<bool>();
        all.push_back(j);
    }
    res.report = {{"command", "asymptotics"}, {"model", model.name}, {"regime", regime}, {"directions", all},
                  {"all_fits_ok", ok}};
    emit_csv(res, opt, "asymptotics_" + model.name + ".csv", w);
    emit_json(res, opt, "asymptotics_" + model.name + ".json");
    return res;
}

// ---- predict

inline json prediction_json(const DecayPrediction& p) {
    return {{"exponent", p.exponent},       {"per_datum", p.per_datum}, {"constraint_ok", p.constraint_ok},
            {"violated", p.violated},       {"regime", p.regime},       {"regularity_loss", p.regularity_loss},
            {"requirements", p.requirements}, {"notes", p.notes}};
}

inline CommandResult run_predict(const Model& model, int n, double q, double k, double s, bool moment_zero, double nu,
                                 const PipelineOptions& opt) {
    auto st = model.stack();
    auto rep = classify(st);
    CommandResult res;
    if (int code = stability_exit_code(rep)) {
        res.exit_code = code;
        res.report = {{"command", "predict"}, {"model", model.name}, {"stability", stability_json(rep)}};
        emit_json(res, opt, "predict_" + model.name + ".json");
        return res;
    }
    auto p = predict_decay(rep, n > 0 ? n : st.dim(), q, k, s, moment_zero, nu);
    res.report = {{"command", "predict"},
                  {"model", model.name},
                  {"query", {{"n", n > 0 ? n : st.dim()}, {"q", q}, {"k", k}, {"s", s}, {"moment_zero", moment_zero}}},
                  {"prediction", prediction_json(p)}};
    if (!p.constraint_ok && !opt.quiet)
        std::cerr << "warning: decay constraint violated (" << p.violated << "); the estimate does not apply\n";
    emit_json(res, opt, "predict_" + model.name + ".json");
    return res;
}

// ---- simulate / profile

struct TimeWindow {
    double tmin = 1e2, tmax = 1e4;
    int per_decade = 10;
    double fit_tmin = 0.0, fit_tmax = 0.0;  // 0: whole window

    std::vector<double> times() const {
        if (!(tmin > 0.0) || !(tmax > tmin) || per_decade < 1) throw Error("time window needs 0 < tmin < tmax");
        return log_grid(tmin, tmax, per_decade);
    }
    SimulationOptions options() const {
        SimulationOptions o;
        o.fit_tmin = fit_tmin > 0.0 ? fit_tmin : tmin;
        o.fit_tmax = fit_tmax > 0.0 ? fit_tmax : tmax;
        return o;
    }
};

inline json series_fit_json(const NormTimeSeries& ts) {
    return {{"k", ts.k},
            {"s", ts.s},
            {"slope_defined", ts.slope_defined},
            {"fitted_slope", ts.fitted_slope},
            {"slope_stderr", ts.slope_stderr},
            {"fit_tmin", ts.fit_tmin},
            {"fit_tmax", ts.fit_tmax},
            {"fit_points", ts.fit_points},
            {"underflow", ts.underflow}};
}

inline CommandResult run_simulate(const Model& model, const DataSpec& data, int k, double s, const TimeWindow& win,
                                  const PipelineOptions& opt) {
    auto st = model.stack();
    auto ts = simulate(st, data, win.times(), k, s, win.options());
    CommandResult res;
    CsvWriter w({"t", "norm"});
    for (std::size_t i = 0; i < ts.times.size(); ++i) w.row(std::vector<double>{ts.times[i], ts.values[i]});
    res.report = {{"command", "simulate"}, {"model", model.name}, {"data", data_to_json(data)}, {"series", series_fit_json(ts)}};
    emit_csv(res, opt, "simulate_" + model.name + ".csv", w);
    emit_json(res, opt, "simulate_" + model.name + ".json");
    return res;
}

inline CommandResult run_profile(const Model& model, const DataSpec& data, int k, double s, const TimeWindow& win,
                                 const PipelineOptions& opt) {
    auto st = model.stack();
    auto r = profile_gap_series(st, data, win.times(), k, s, win.options());
    CommandResult res;
    CsvWriter w({"t", "solution_norm", "gap_norm"});
    for (std::size_t i = 0; i < r.solution.times.size(); ++i)
        w.row(std::vector<double>{r.solution.times[i], r.solution.values[i], r.gap.values[i]});
    json spec{{"kind", to_string(r.spec.kind)}, {"M", r.spec.M}, {"riesz_order", r.spec.riesz_order}, {"roots", r.spec.roots}};
    const double diff = r.gap.fitted_slope - r.solution.fitted_slope;
    res.report = {{"command", "profile"},
                  {"model", model.name},
                  {"data", data_to_json(data)},
                  {"profile", spec},
                  {"solution", series_fit_json(r.solution)},
                  {"gap", series_fit_json(r.gap)},
                  {"gap_minus_solution", diff}};
    emit_csv(res, opt, "profile_" + model.name + ".csv", w);
    emit_json(res, opt, "profile_" + model.name + ".json");
    return res;
}

// ---- semilinear

inline CommandResult run_semilinear_cmd(const Model& model, const SemilinearConfig& cfg, const DataSpec& data,
                                        const PipelineOptions& opt) {
    auto st = model.stack();
    auto run = run_semilinear(st, cfg, data);
    CommandResult res;
    CsvWriter w({"t", "l2", "linf"});
    for (std::size_t i = 0; i < run.times.size(); ++i) w.row(std::vector<double>{run.times[i], run.l2[i], run.linf[i]});
    json c{{"p_bar", run.critical.p_bar}, {"n_min", run.critical.n_min}, {"n_max", run.critical.n_max},
           {"admissible", run.critical.admissible}, {"iota", run.critical.iota}, {"nu", run.critical.nu}};
    res.report = {{"command", "semilinear"},
                  {"model", model.name},
                  {"config",
                   {{"p", cfg.p}, {"sign", cfg.sign}, {"nu", cfg.nu}, {"L", cfg.L}, {"N", cfg.N}, {"T", cfg.T},
                    {"dt0", cfg.dt0}, {"adaptive", cfg.adaptive}, {"linear", cfg.linear}}},
                  {"data", data_to_json(data)},
                  {"verdict", run.verdict()},
                  {"blowup", run.blowup_flag},
                  {"blowup_time", run.blowup_time},
                  {"initial_l2", run.l2.empty() ? 0.0 : run.l2.front()},
                  {"final_l2", run.l2.empty() ? 0.0 : run.l2.back()},
                  {"final_time", run.t},
                  {"steps", run.steps},
                  {"halvings", run.halvings},
                  {"boundary_ratio", run.boundary_ratio},
                  {"critical", c},
                  {"supercritical", run.supercritical}};
    emit_csv(res, opt, "semilinear_" + model.name + ".csv", w);
    emit_json(res, opt, "semilinear_" + model.name + ".json");
    return res;
}

// ---- fixtures

/// |got - want| <= tol |want|, or <= tol when want is zero.
inline bool coeff_close(cplx got, cplx want, double tol) {
    const double scale = std::abs(want) > 0.0 ? std::abs(want) : 1.0;
    return std::abs(got - want) <= tol * scale;
}

inline bool terms_match(const ExpansionRecord& r, const json& want_terms, double tol, double* worst = nullptr) {
    if (r.terms.size() != want_terms.size()) return false;
    bool ok = true;
    double w = 0.0;
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const auto& t = want_terms[i];
        if (t[0].get<int>() != r.terms[i].power) return false;
        cplx want(t[1].get<double>(), t[2].get<double>());
        const double scale = std::abs(want) > 0.0 ? std::abs(want) : 1.0;
        w = std::max(w, std::abs(r.terms[i].coeff - want) / scale);
        ok = ok && coeff_close(r.terms[i].coeff, want, tol);
    }
    if (worst) *worst = w;
    return ok;
}

/// One check per fixture entry: a record of the same kind on the same root whose terms match.
inline json match_fixture_records(const std::vector<ExpansionRecord>& recs, const json& fixtures, double tol,
                                  const std::string& label) {
    json checks = json::array();
    std::vector<bool> used(recs.size(), false);
    for (const auto& f : fixtures) {
        const std::string kind = f.at("kind").get<std::string>();
        const double root = f.at("root").get<double>();
        int best = -1;
        double best_err = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < recs.size(); ++i) {
            if (used[i] || kind != to_string(recs[i].kind) || std::abs(recs[i].root - root) > 1e-9 * (1.0 + std::abs(root)))
                continue;
            double err = std::numeric_limits<double>::infinity();
            terms_match(recs[i], f.at("terms"), tol, &err);
            if (err < best_err) {
                best_err = err;
                best = static_cast<int>(i);
            }
        }
        json c{{"check", label + " " + kind + " root " + fmt17(root)}, {"source", f.value("source", "")}};
        if (best < 0) {
            c["ok"] = false;
            c["detail"] = "no record of this kind on this root";
        } else {
            used[best] = true;
            c["ok"] = terms_match(recs[best], f.at("terms"), tol);
            c["max_rel_err"] = best_err;
            c["got"] = record_json(recs[best], nullptr)["terms"];
            if (f.contains("displayed")) {
                // value printed in the source text, kept for comparison only
                json disp = json::array();
                for (const auto& t : f["displayed"])
                    for (const auto& term : recs[best].terms)
                        if (term.power == t[0].get<int>())
                            disp.push_back({{"power", term.power}, {"displayed", cplx_json({t[1].get<double>(), t[2].get<double>()})},
                                            {"computed", cplx_json(term.coeff)}});
                c["displayed_discrepancy"] = disp;
            }
        }
        checks.push_back(c);
    }
    return checks;
}

inline json make_check(const std::string& name, bool ok, const std::string& source, json detail = json::object()) {
    json c{{"check", name}, {"ok", ok}, {"source", source}};
    c.update(detail);
    return c;
}

inline TimeWindow window_from_fixture(const json& f) {
    TimeWindow w;
    w.tmin = f.value("tmin", 1e2);
    w.tmax = f.value("tmax", 1e4);
    w.per_decade = f.value("per_decade", 10);
    return w;
}

/// classify -> asymptotics -> predict -> simulate -> profile, each diffed against the model's fixtures.
inline CommandResult run_reproduce(const Model& model, const PipelineOptions& opt) {
    if (!model.doc.contains("expected")) throw Error("model '" + model.name + "' has no fixtures to reproduce");
    const json& E = model.doc.at("expected");
    auto st = model.stack();
    CommandResult res;
    json checks = json::array();
    json steps = json::object();
    const std::string tag = "reproduce_" + model.name;

    // stability
    auto rep = classify(st);
    steps["classify"] = stability_json(rep);
    int code = stability_exit_code(rep);
    if (E.contains("stability")) {
        const json& f = E["stability"];
        const std::string src = f.value("source", "");
        if (f.contains("strictly_stable"))
            checks.push_back(make_check("strictly_stable", rep.strictly_stable == f["strictly_stable"].get<bool>(), src,
                                        {{"got", rep.strictly_stable}}));
        if (f.contains("top"))
            checks.push_back(make_check("top interlacing", f["top"].get<std::string>() == to_string(rep.top.kind), src,
                                        {{"got", to_string(rep.top.kind)}}));
        if (f.contains("lower"))
            checks.push_back(make_check("lower interlacing", f["lower"].get<std::string>() == to_string(rep.lower.kind),
                                        src, {{"got", to_string(rep.lower.kind)}}));
        if (f.contains("flags")) {
            auto want = f["flags"].get<std::vector<std::string>>();
            auto got = flag_names(rep.flags);
            checks.push_back(make_check("scenario flags",
                                        std::set<std::string>(want.begin(), want.end()) ==
                                            std::set<std::string>(got.begin(), got.end()),
                                        src, {{"got", got}}));
        }
    }

    // expansions
    if (E.contains("expansions")) {
        CsvWriter w = asymptotics_csv();
        json dirs = json::array();
        int di = 0;
        for (const auto& block : E["expansions"]) {
            Direction d = Direction::normalized(block.at("direction").get<std::vector<double>>());
            if (d.dim() != st.dim()) throw Error("fixture direction has the wrong dimension");
            auto a = asymptotics_along(st, d);
            asymptotics_rows(w, di, a, true, true);
            dirs.push_back(asymptotics_json(a, true, true));
            for (const char* key : {"low", "high"}) {
                if (!block.contains(key)) continue;
                const auto& recs = std::string(key) == "low" ? a.ex.low : a.ex.high;
                for (auto& c : match_fixture_records(recs, block[key], opt.tol, std::string(key) + " dir " + std::to_string(di)))
                    checks.push_back(c);
            }
            for (std::size_t i = 0; i < a.ex.low.size(); ++i)
                checks.push_back(make_check("remainder order low dir " + std::to_string(di) + " branch " +
                                                std::to_string(a.ex.low[i].branch),
                                            expansion_fit_ok(a.ex.low[i], a.low_fits[i]), "derivation",
                                            {{"fitted_order", a.low_fits[i].fitted_order}}));
            for (std::size_t i = 0; i < a.ex.high.size(); ++i)
                checks.push_back(make_check("remainder order high dir " + std::to_string(di) + " branch " +
                                                std::to_string(a.ex.high[i].branch),
                                            expansion_fit_ok(a.ex.high[i], a.high_fits[i]), "derivation",
                                            {{"fitted_order", a.high_fits[i].fitted_order}}));
            ++di;
        }
        steps["asymptotics"] = dirs;
        emit_csv(res, opt, tag + "_asymptotics.csv", w);
    }

    // decay prediction
    if (E.contains("predict") && rep.strictly_stable && rep.depth <= 2) {
        const json& f = E["predict"];
        auto p = predict_decay(rep, f.at("n").get<int>(), f.at("q").get<double>(), f.at("k").get<double>(),
                               f.at("s").get<double>());
        steps["predict"] = prediction_json(p);
        const double want = f.at("exponent").get<double>();
        checks.push_back(make_check("predicted exponent", std::abs(p.exponent - want) <= 1e-12, f.value("source", ""),
                                    {{"got", p.exponent}, {"want", want}}));
    }

    // simulated decay slope
    if (E.contains("simulate")) {
        const json& f = E["simulate"];
        TimeWindow win = window_from_fixture(f);
        auto ts = simulate(st, data_from_json(f.at("data"), st), win.times(), f.at("k").get<int>(), f.at("s").get<double>(),
                           win.options());
        CsvWriter w({"t", "norm"});
        for (std::size_t i = 0; i < ts.times.size(); ++i) w.row(std::vector<double>{ts.times[i], ts.values[i]});
        emit_csv(res, opt, tag + "_simulate.csv", w);
        steps["simulate"] = series_fit_json(ts);
        const double want = f.at("slope").get<double>(), tol = f.at("tol").get<double>();
        checks.push_back(make_check("simulated slope", ts.slope_defined && std::abs(ts.fitted_slope - want) <= tol,
                                    f.value("source", ""), {{"got", ts.fitted_slope}, {"want", want}, {"tol", tol}}));
    }

    // profile gap
    if (E.contains("profile")) {
        const json& f = E["profile"];
        TimeWindow win = window_from_fixture(f);
        auto r = profile_gap_series(st, data_from_json(f.at("data"), st), win.times(), f.at("k").get<int>(),
                                    f.at("s").get<double>(), win.options());
        CsvWriter w({"t", "solution_norm", "gap_norm"});
        for (std::size_t i = 0; i < r.solution.times.size(); ++i)
            w.row(std::vector<double>{r.solution.times[i], r.solution.values[i], r.gap.values[i]});
        emit_csv(res, opt, tag + "_profile.csv", w);
        const double diff = r.gap.fitted_slope - r.solution.fitted_slope;
        steps["profile"] = {{"kind", to_string(r.spec.kind)}, {"M", r.spec.M}, {"solution", series_fit_json(r.solution)},
                            {"gap", series_fit_json(r.gap)}, {"gap_minus_solution", diff}};
        auto win_ok = f.at("gap_minus_solution").get<std::vector<double>>();
        checks.push_back(make_check("profile gap improvement",
                                    r.solution.slope_defined && r.gap.slope_defined && diff >= win_ok[0] && diff <= win_ok[1],
                                    f.value("source", ""), {{"got", diff}, {"want", win_ok}}));
    }

    bool all_ok = true;
    for (const auto& c : checks) all_ok = all_ok && c["ok"].get<bool>();
    res.report = {{"command", "reproduce"}, {"model", model.name}, {"all_ok", all_ok}, {"checks", checks}, {"steps", steps}};
    if (code == EXIT_OK && !all_ok) code = EXIT_MISMATCH;
    res.exit_code = code;
    emit_json(res, opt, tag + ".json");
    return res;
}

}  // namespace hyperdecay

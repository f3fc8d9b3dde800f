// tflab: batch driver for the thin-film stability laboratory.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "tfl/coercivity.hpp"
#include "tfl/config.hpp"
#include "tfl/evolution.hpp"
#include "tfl/nonlinear.hpp"
#include "tfl/resolvent.hpp"
#include "tfl/suite.hpp"
#include "tfl/validation.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace tfl;

namespace {

enum Exit { ok = 0, bad_config = 1, failed_validation = 2, numerical_guard = 3 };

struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json config_json(const ExperimentConfig& c)
{
    json out = json::object();
    std::istringstream in(echo(c));
    std::string line, section;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '[') {
            section = line.substr(1, line.size() - 2);
            out[section] = json::object();
            continue;
        }
        const auto eq = line.find(" = ");
        out[section][line.substr(0, eq)] = line.substr(eq + 3);
    }
    return out;
}

json provenance(const ExperimentConfig& c)
{
    return json{{"config", config_json(c)}, {"config_hash", git_blob_hash(echo(c))}};
}

// CSV with the resolved config as leading comment lines.
class CsvWriter {
public:
    CsvWriter(const fs::path& path, const ExperimentConfig& c, const std::string& header) : f_(path)
    {
        if (!f_) throw std::runtime_error("cannot write " + path.string());
        f_ << "# config_hash = " << git_blob_hash(echo(c)) << "\n";
        std::istringstream in(echo(c));
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) f_ << "# " << line << "\n";
        f_ << header << "\n";
    }
    void row(const std::vector<double>& xs)
    {
        char buf[40];
        for (size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", xs[i]);
            f_ << (i ? "," : "") << buf;
        }
        f_ << "\n";
    }

private:
    std::ofstream f_;
};

fs::path out_path(const ExperimentConfig& c, const std::string& stem)
{
    fs::create_directories(c.dir);
    return fs::path(c.dir) / (c.prefix + "_" + stem);
}

GridFunction read_samples(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("csv", "cannot open '" + path + "'");
    std::vector<double> s, v;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("csv", "expected 's,value' rows in '" + path + "'");
        try {
            s.push_back(std::stod(line.substr(0, comma)));
            v.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ConfigError("csv", "unreadable row '" + line + "'");
        }
    }
    if (s.size() < 16) throw ConfigError("csv", "need at least 16 samples");
    const LogGrid g = LogGrid::make(s.front(), s.back(), static_cast<int>(s.size()));
    for (int i = 0; i < g.n; ++i)
        if (std::abs(s[i] - g.s(i)) > 1e-9 * std::max(1.0, std::abs(g.s(i))))
            throw ConfigError("csv", "s must be uniformly spaced");
    return GridFunction(g, v);
}

GridFunction initial_data(const ExperimentConfig& c, const LogGrid& g)
{
    if (c.profile == "monomial")
        return GridFunction::of_x(g, [&](double x) { return c.amplitude * std::pow(x, c.power); });
    if (c.profile == "tapered") return perturbation(g, c.amplitude, true);
    return GridFunction::of_x(g, [&](double x) { return c.amplitude * x * x * x * std::exp(-x); });
}

json interval_list(const std::vector<Interval>& v)
{
    json out = json::array();
    for (const auto& i : v) out.push_back({i.lo, i.hi});
    return out;
}

// ---- subcommands ----

int cmd_coercivity(const ExperimentConfig& c, bool as_json)
{
    json rows = json::array();
    for (const auto& P : canonical::all()) {
        const CoercivityReport r = coercivity_report(P);
        rows.push_back({{"name", r.name},
                        {"mean", r.mean},
                        {"sigma", r.sigma},
                        {"closed_form", interval_list(r.closed)},
                        {"numeric", interval_list(r.numeric)},
                        {"max_discrepancy", r.max_discrepancy}});
    }
    for (auto [name, which] : {std::pair{"A", Composite::A}, std::pair{"A_tilde", Composite::A_tilde},
                               std::pair{"A_check", Composite::A_check}}) {
        const auto closed = composite_range(which);
        const auto numeric = composite_range(which, true);
        rows.push_back({{"name", name},
                        {"closed_form", interval_list(closed)},
                        {"numeric", interval_list(numeric)},
                        {"max_discrepancy", interval_discrepancy(closed, numeric)}});
    }
    if (as_json) {
        json out = provenance(c);
        out["operators"] = rows;
        std::cout << out.dump(2) << "\n";
        return ok;
    }
    std::printf("# config_hash = %s\n", git_blob_hash(echo(c)).c_str());
    std::printf("%-8s %10s %10s  %-34s %-34s %12s\n", "name", "m", "sigma", "closed form", "numeric", "max gap");
    auto show = [](const json& list) {
        std::string s;
        char buf[64];
        for (const auto& i : list) {
            std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", i[0].get<double>(), i[1].get<double>());
            s += (s.empty() ? "" : " ") + std::string(buf);
        }
        return s.empty() ? std::string("empty") : s;
    };
    for (const auto& r : rows) {
        const std::string m = r.contains("mean") ? std::to_string(r["mean"].get<double>()) : "-";
        const std::string sg = r.contains("sigma") ? std::to_string(r["sigma"].get<double>()) : "-";
        std::printf("%-8s %10s %10s  %-34s %-34s %12.3g\n", r["name"].get<std::string>().c_str(), m.c_str(),
                    sg.c_str(), show(r["closed_form"]).c_str(), show(r["numeric"]).c_str(),
                    r["max_discrepancy"].get<double>());
    }
    return ok;
}

int cmd_norms(const ExperimentConfig& c, const std::string& csv, int sub)
{
    const GridFunction w = read_samples(csv);
    json out = provenance(c);
    out["grid"] = {{"s_min", w.grid.s_min}, {"s_max", w.grid.s_max}, {"n", w.grid.n}};
    json list = json::array();
    for (double a : c.alpha) {
        NormSpec spec{c.k, a, sub, {}, {}};
        if (sub > 0) spec.tail_cut = kNormTailCut;
        list.push_back({{"k", c.k}, {"alpha", a}, {"sub", sub}, {"value", weighted_norm(w, spec)}});
    }
    out["weighted"] = list;
    out["init_norm"] = {{"N", c.N}, {"k", c.k}, {"delta", c.delta}, {"value", init_norm(w, c.N, c.k, c.delta)}};
    std::cout << out.dump(2) << "\n";
    return ok;
}

int cmd_resolvent(const ExperimentConfig& c, double lambda, const std::string& csv)
{
    if (!(lambda > 0.0)) throw ConfigError("lambda", "must be positive");
    const GridFunction g = read_samples(csv);
    const DiscreteOperator op = assemble(g.grid);
    const ResolventSolve r = solve(op, lambda, g);
    const fs::path path = out_path(c, "resolvent.csv");
    CsvWriter w(path, c, "s,x,u");
    for (int i = 0; i < g.size(); ++i) w.row({g.grid.s(i), g.grid.x(i), r.solution.v[i]});
    json out = provenance(c);
    out["lambda"] = lambda;
    out["solution_csv"] = path.string();
    out["residual"] = r.residual_norm;
    out["decay"] = {{"ok", r.decay.ok}, {"rate", r.decay.rate}, {"points", r.decay.points},
                    {"predicted", 1.0 / std::sqrt(2.0)}, {"message", r.decay.message}};
    const auto co = leading_coefficients(r.solution);
    out["coefficients"] = {{"u1", co[0]}, {"u2", co[1]}, {"u3", co[2]}};
    std::cout << out.dump(2) << "\n";
    return ok;
}

bool is_snapshot(const ExperimentConfig& c, double t)
{
    return std::any_of(c.snapshot_times.begin(), c.snapshot_times.end(),
                       [&](double s) { return std::abs(s - t) < 0.5 * c.dt; });
}

json linear_evolve(const ExperimentConfig& c, bool write_files)
{
    const LogGrid g = c.grid();
    const DiscreteOperator op = assemble(g);
    EnergyMonitor mon{c.alpha_tilde, c.monitor_k, 1e-10};
    const EvolutionState st = run(op, initial_data(c, g), {}, c.dt, c.T, mon);
    json out = provenance(c);
    if (write_files) {
        std::string header = "t,energy,energy_top";
        for (double a : c.alpha) header += ",norm_k" + std::to_string(c.k) + "_alpha" + std::to_string(a);
        header += ",u1,u2,u3";
        const fs::path path = out_path(c, "linear.csv");
        CsvWriter w(path, c, header);
        for (size_t j = 0; j < st.traj.t.size(); ++j) {
            std::vector<double> row{st.traj.t[j], st.energy_log[j].base, st.energy_log[j].top};
            for (double a : c.alpha) row.push_back(weighted_norm(st.traj.u[j], NormSpec{c.k, a}));
            for (double v : st.coefficients[j]) row.push_back(v);
            w.row(row);
            if (is_snapshot(c, st.traj.t[j])) {
                char name[64];
                std::snprintf(name, sizeof name, "linear_snapshot_t%.6g.csv", st.traj.t[j]);
                CsvWriter s(out_path(c, name), c, "s,x,u");
                for (int i = 0; i < g.n; ++i) s.row({g.s(i), g.x(i), st.traj.u[j].v[i]});
            }
        }
        out["trajectory_csv"] = path.string();
    }
    out["steps"] = st.traj.t.size() - 1;
    out["energy_initial"] = st.energy_log.front().base;
    out["energy_final"] = st.energy_log.back().base;
    out["energy_monotone"] = st.energy_monotone();
    out["energy_increase_steps"] = st.energy_increase_steps;
    out["u1_final"] = st.coefficients.back()[0];
    out["u2_final"] = st.coefficients.back()[1];
    out["coefficient_relation_defect"] = coefficient_track_defect(st);
    return out;
}

json nonlinear_evolve(const ExperimentConfig& c, bool write_files)
{
    const LogGrid g = c.grid();
    const DiscreteOperator op = assemble(g);
    NonlinearOptions opt;
    opt.picard_tol = c.picard_tol;
    opt.picard_max = c.picard_max;
    opt.threshold = c.lipschitz_threshold;
    opt.monitor = EnergyMonitor{c.alpha_tilde, c.monitor_k, 1e-10};
    const NonlinearState st = run_nonlinear(op, perturbation(g, c.epsilon, c.taper), c.dt, c.T, opt);
    json out = provenance(c);
    if (write_files) {
        const fs::path path = out_path(c, "nonlinear.csv");
        CsvWriter w(path, c, "t,init_norm,u1,u2,sup_vx,Y0,picard_iterations");
        json films = json::array();
        for (size_t j = 0; j < st.traj.t.size(); ++j) {
            const double t = st.traj.t[j];
            w.row({t, st.init_norms[j], st.coefficients[j][0], st.coefficients[j][1], st.sup_vx[j],
                   st.contact_line[j], static_cast<double>(st.picard_iterations[j])});
            if (is_snapshot(c, t)) {
                std::vector<double> ys;
                for (int i = 0; i <= 500; ++i) ys.push_back(st.contact_line[j] - 0.5 + 0.01 * i);
                const FilmReconstruction rec = reconstruct(st.traj.u[j], t, ys, c.lipschitz_threshold);
                char name[64];
                std::snprintf(name, sizeof name, "film_t%.6g.csv", t);
                const fs::path fp = out_path(c, name);
                CsvWriter f(fp, c, "y,h");
                for (const auto& [y, h] : rec.samples) f.row({y, h});
                films.push_back(fp.string());
            }
        }
        out["trajectory_csv"] = path.string();
        out["film_csv"] = films;
    }
    out["steps"] = st.traj.t.size() - 1;
    out["init_norm_initial"] = st.init_norms.front();
    out["init_norm_final"] = st.init_norms.back();
    out["max_sup_vx"] = *std::max_element(st.sup_vx.begin(), st.sup_vx.end());
    out["max_picard_iterations"] = *std::max_element(st.picard_iterations.begin(), st.picard_iterations.end());
    out["u1_final"] = st.coefficients.back()[0];
    out["contact_line_final"] = st.contact_line.back();
    return out;
}

int cmd_validate(const ExperimentConfig& c)
{
    const auto checks = oracle_suite();
    json out = provenance(c);
    json list = json::array();
    for (const auto& k : checks) {
        json e{{"name", k.name}, {"value", k.value}, {"threshold", k.threshold}, {"pass", k.pass}, {"gating", k.gating}};
        if (!k.note.empty()) e["note"] = k.note;
        list.push_back(e);
    }
    const bool passed = suite_passed(checks);
    out["checks"] = list;
    out["pass"] = passed;
    std::cout << out.dump(2) << "\n";
    return passed ? ok : failed_validation;
}

unsigned worker_count()
{
    if (const char* env = std::getenv("TFL_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return static_cast<unsigned>(w);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_sweep(const ExperimentConfig& base, const std::string& param, const std::vector<std::string>& values,
              const std::string& mode)
{
    if (values.size() < 2) throw ConfigError("values", "a sweep needs at least two values");
    if (mode != "linear" && mode != "nonlinear") throw ConfigError("mode", "must be linear or nonlinear");
    const std::string key = param == "dt" ? "solver.dt" : param == "n" ? "grid.n" : param;
    std::vector<ExperimentConfig> configs;
    for (size_t i = 0; i < values.size(); ++i) {
        ExperimentConfig c = base;
        set_value(c, key, values[i]);
        c.prefix = base.prefix + "_sweep" + std::to_string(i);
        validate(c);
        configs.push_back(c);
    }
    std::vector<json> results(configs.size());
    std::vector<std::string> errors(configs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < configs.size();) {
            try {
                results[i] = mode == "linear" ? linear_evolve(configs[i], true) : nonlinear_evolve(configs[i], true);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned nw = std::min<unsigned>(worker_count(), static_cast<unsigned>(configs.size()));
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty()) throw std::runtime_error("run " + std::to_string(i) + ": " + errors[i]);

    json out = provenance(base);
    out["param"] = key;
    out["values"] = values;
    out["runs"] = results;
    // observed order from the last three runs, assuming a constant refinement ratio
    const std::string q = mode == "linear" ? "u1_final" : "init_norm_final";
    const size_t m = results.size();
    if (m >= 3) {
        const double a = results[m - 3][q], b = results[m - 2][q], d = results[m - 1][q];
        const double r = std::stod(values[m - 3]) / std::stod(values[m - 2]);
        const double ratio = std::abs(a - b) / std::abs(b - d);
        const double order = std::log(ratio) / std::log(r);
        out["richardson"] = {{"quantity", q},
                             {"refinement_ratio", r},
                             {"observed_order", order},
                             {"extrapolated", d + (d - b) / (std::pow(r, order) - 1.0)}};
    }
    std::cout << out.dump(2) << "\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical laboratory for the stability of the receding thin-film traveling wave"};
    app.require_subcommand(1);
    std::string config_path;
    std::vector<std::string> overrides;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI configuration file");
        sub->add_option("--set", overrides, "override as section.key=value");
    };

    auto* coer = app.add_subcommand("coercivity", "coercivity windows of the quartic symbols");
    bool coer_json = false;
    coer->add_flag("--json", coer_json, "emit JSON instead of a table");
    add_common(coer);

    auto* norms = app.add_subcommand("norms", "weighted norms of a sampled function (CSV s,value)");
    std::string norms_csv;
    int norms_sub = 0;
    norms->add_option("csv", norms_csv, "input CSV")->required();
    norms->add_option("--sub", norms_sub, "expansion terms subtracted");
    add_common(norms);

    auto* res = app.add_subcommand("resolvent", "solve (lambda + A) u = g");
    double lambda = 0.0;
    std::string g_csv;
    res->add_option("--lambda", lambda, "resolvent parameter")->required();
    res->add_option("--g", g_csv, "right-hand side CSV (s,value)")->required();
    add_common(res);

    auto* lin = app.add_subcommand("linear-evolve", "implicit Euler for u_t + A u = 0");
    add_common(lin);
    auto* non = app.add_subcommand("nonlinear-evolve", "Picard-implicit run of u_t + A u = N(u)");
    add_common(non);
    auto* val = app.add_subcommand("validate", "run the oracle suite");
    add_common(val);

    auto* sweep = app.add_subcommand("sweep", "repeat a run over parameter values");
    std::string param;
    std::string values_text;
    std::string mode = "linear";
    sweep->add_option("--param", param, "dt, n, or section.key")->required();
    sweep->add_option("--values", values_text, "comma-separated values")->required();
    sweep->add_option("--mode", mode, "linear or nonlinear");
    add_common(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) throw ConfigError(o, "override must read section.key=value");
            set_value(c, o.substr(0, eq), o.substr(eq + 1));
        }
        validate(c);

        if (*coer) return cmd_coercivity(c, coer_json);
        if (*norms) return cmd_norms(c, norms_csv, norms_sub);
        if (*res) return cmd_resolvent(c, lambda, g_csv);
        if (*lin) {
            const json out = linear_evolve(c, true);
            std::cout << out.dump(2) << "\n";
            return out["energy_monotone"].get<bool>() ? ok : failed_validation;
        }
        if (*non) {
            std::cout << nonlinear_evolve(c, true).dump(2) << "\n";
            return ok;
        }
        if (*val) return cmd_validate(c);
        if (*sweep) {
            std::vector<std::string> values;
            std::stringstream ss(values_text);
            for (std::string v; std::getline(ss, v, ',');)
                if (!v.empty()) values.push_back(v);
            return cmd_sweep(c, param, values, mode);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return bad_config;
    } catch (const GuardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return numerical_guard;
    } catch (const PicardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return numerical_guard;
    } catch (const SingularOperatorError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return numerical_guard;
    } catch (const CompatibilityError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return numerical_guard;
    } catch (const ValidationFailure& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return failed_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numerical_guard;
    }
    return ok;
}

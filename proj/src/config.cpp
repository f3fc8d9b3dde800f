#include "tfl/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tfl {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    const std::string s = trim(v);
    double out = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(out))
        throw ConfigError(key, "expected a real number, got '" + v + "'");
    return out;
}

long to_long(const std::string& key, const std::string& v)
{
    const std::string s = trim(v);
    long out = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError(key, "expected an integer, got '" + v + "'");
    return out;
}

std::vector<double> to_list(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(to_double(key, item));
    return out;
}

bool to_bool(const std::string& key, const std::string& v)
{
    const std::string s = trim(v);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_list(const std::vector<double>& xs)
{
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + fmt(xs[i]);
    return out;
}

struct Key {
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

template <class T>
Key real_key(const std::string& name, T ExperimentConfig::*m)
{
    return {[name, m](ExperimentConfig& c, const std::string& v) { c.*m = to_double(name, v); },
            [m](const ExperimentConfig& c) { return fmt(c.*m); }};
}

template <class T>
Key int_key(const std::string& name, T ExperimentConfig::*m)
{
    return {[name, m](ExperimentConfig& c, const std::string& v) {
                const long x = to_long(name, v);
                if (x < 0 && std::is_unsigned_v<T>) throw ConfigError(name, "must be non-negative");
                c.*m = static_cast<T>(x);
            },
            [m](const ExperimentConfig& c) { return std::to_string(c.*m); }};
}

Key list_key(const std::string& name, std::vector<double> ExperimentConfig::*m)
{
    return {[name, m](ExperimentConfig& c, const std::string& v) { c.*m = to_list(name, v); },
            [m](const ExperimentConfig& c) { return fmt_list(c.*m); }};
}

const std::map<std::string, Key>& keys()
{
    using C = ExperimentConfig;
    static const std::map<std::string, Key> table = {
        {"grid.s_min", real_key("grid.s_min", &C::s_min)},
        {"grid.s_max", real_key("grid.s_max", &C::s_max)},
        {"grid.n", int_key("grid.n", &C::n)},
        {"solver.dt", real_key("solver.dt", &C::dt)},
        {"solver.T", real_key("solver.T", &C::T)},
        {"solver.lambda", list_key("solver.lambda", &C::lambda)},
        {"norms.N", int_key("norms.N", &C::N)},
        {"norms.k", int_key("norms.k", &C::k)},
        {"norms.delta", real_key("norms.delta", &C::delta)},
        {"norms.alpha", list_key("norms.alpha", &C::alpha)},
        {"initial.profile",
         {[](C& c, const std::string& v) { c.profile = trim(v); }, [](const C& c) { return c.profile; }}},
        {"initial.amplitude", real_key("initial.amplitude", &C::amplitude)},
        {"initial.power", int_key("initial.power", &C::power)},
        {"monitor.alpha_tilde", real_key("monitor.alpha_tilde", &C::alpha_tilde)},
        {"monitor.k", int_key("monitor.k", &C::monitor_k)},
        {"nonlinear.epsilon", real_key("nonlinear.epsilon", &C::epsilon)},
        {"nonlinear.taper",
         {[](C& c, const std::string& v) { c.taper = to_bool("nonlinear.taper", v); },
          [](const C& c) { return std::string(c.taper ? "true" : "false"); }}},
        {"nonlinear.picard_tol", real_key("nonlinear.picard_tol", &C::picard_tol)},
        {"nonlinear.picard_max", int_key("nonlinear.picard_max", &C::picard_max)},
        {"nonlinear.lipschitz_threshold", real_key("nonlinear.lipschitz_threshold", &C::lipschitz_threshold)},
        {"output.dir", {[](C& c, const std::string& v) { c.dir = trim(v); }, [](const C& c) { return c.dir; }}},
        {"output.prefix",
         {[](C& c, const std::string& v) { c.prefix = trim(v); }, [](const C& c) { return c.prefix; }}},
        {"output.snapshot_times", list_key("output.snapshot_times", &C::snapshot_times)},
        {"run.seed", int_key("run.seed", &C::seed)},
    };
    return table;
}

}  // namespace

void set_value(ExperimentConfig& c, const std::string& dotted, const std::string& value)
{
    const auto it = keys().find(dotted);
    if (it == keys().end()) throw ConfigError(dotted, "unknown key");
    it->second.set(c, value);
}

ExperimentConfig parse_config(const std::string& text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()), e.message());
    }
    ExperimentConfig c;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError(section, "key outside any section");
        for (const auto& [key, leaf] : body) set_value(c, section + "." + key, leaf.data());
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig& c)
{
    if (!(c.s_min < c.s_max)) throw ConfigError("grid.s_max", "must exceed grid.s_min");
    if (c.s_min < -40.0) throw ConfigError("grid.s_min", "below -40 the grid underflows the weights");
    if (c.s_max > 12.0) throw ConfigError("grid.s_max", "above 12 the far-field rows lose precision");
    if (c.n < 64 || c.n > 1 << 20) throw ConfigError("grid.n", "must lie in [64, 2^20]");
    if (!(c.dt > 0.0)) throw ConfigError("solver.dt", "must be positive");
    if (!(c.T > 0.0)) throw ConfigError("solver.T", "must be positive");
    if (c.T / c.dt > 1e6) throw ConfigError("solver.T", "more than 1e6 steps");
    for (double l : c.lambda)
        if (!(l > 0.0)) throw ConfigError("solver.lambda", "entries must be positive");
    if (c.N < 0 || c.N > 2) throw ConfigError("norms.N", "must be 0, 1 or 2");
    if (c.k < 0 || c.k > 8) throw ConfigError("norms.k", "must lie in [0, 8]");
    if (!(c.delta > 0.0 && c.delta < 0.5)) throw ConfigError("norms.delta", "must lie in (0, 1/2)");
    if (c.profile != "x3exp" && c.profile != "monomial" && c.profile != "tapered")
        throw ConfigError("initial.profile", "must be x3exp, monomial or tapered");
    if (c.power < 1 || c.power > 8) throw ConfigError("initial.power", "must lie in [1, 8]");
    if (c.monitor_k < 0 || c.monitor_k > 8) throw ConfigError("monitor.k", "must lie in [0, 8]");
    if (!(c.alpha_tilde > -0.5 && c.alpha_tilde < 1.5)) throw ConfigError("monitor.alpha_tilde", "must lie in (-1/2, 3/2)");
    if (!(c.picard_tol > 0.0)) throw ConfigError("nonlinear.picard_tol", "must be positive");
    if (c.picard_max < 1) throw ConfigError("nonlinear.picard_max", "must be at least 1");
    if (!(c.lipschitz_threshold > 0.0 && c.lipschitz_threshold < 1.0))
        throw ConfigError("nonlinear.lipschitz_threshold", "must lie in (0, 1)");
    for (double t : c.snapshot_times)
        if (t < 0.0 || t > c.T + 1e-12) throw ConfigError("output.snapshot_times", "entries must lie in [0, T]");
    if (c.prefix.empty() || c.prefix.find('/') != std::string::npos)
        throw ConfigError("output.prefix", "must be a plain file name stem");
}

std::string echo(const ExperimentConfig& c)
{
    std::string out, section;
    for (const auto& [name, key] : keys()) {
        const auto dot = name.find('.');
        const std::string sec = name.substr(0, dot);
        if (sec != section) {
            out += (section.empty() ? "" : "\n") + ("[" + sec + "]\n");
            section = sec;
        }
        out += name.substr(dot + 1) + " = " + key.get(c) + "\n";
    }
    return out;
}

std::string git_blob_hash(const std::string& content)
{
    const std::string header = "blob " + std::to_string(content.size());
    std::string data = header;
    data.push_back('\0');
    data += content;
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1)
        throw std::runtime_error("sha1 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        const unsigned char b = md[i];
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 15]);
    }
    return out;
}

}  // namespace tfl

#include "l1dg/config.hpp"

#include <algorithm>
#include <json.hpp>

namespace l1dg {

namespace {

using json = nlohmann::json;

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), curr(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        curr[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

std::string suggest(const std::string& got, const std::vector<std::string>& candidates) {
    std::string best;
    int best_d = 4; // only suggest close misses
    for (const auto& c : candidates) {
        const int d = edit_distance(got, c);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config error at '" + where + "': " + what);
}

void check_keys(const json& obj, const std::string& where,
                const std::vector<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            std::string msg = "unknown key '" + item.key() + "'";
            const std::string s = suggest(item.key(), allowed);
            if (!s.empty())
                msg += "; did you mean '" + s + "'?";
            fail(where.empty() ? item.key() : where, msg);
        }
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
    if (!obj.contains(key))
        return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number())
        fail(where + key, "expected a number");
    return v.get<double>();
}

int get_integer(const json& obj, const std::string& where, const std::string& key,
                int fallback) {
    if (!obj.contains(key))
        return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer())
        fail(where + key, "expected an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key,
                       const std::string& fallback) {
    if (!obj.contains(key))
        return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string())
        fail(where + key, "expected a string");
    return v.get<std::string>();
}

std::string get_enum(const json& obj, const std::string& where, const std::string& key,
                     const std::string& fallback, const std::vector<std::string>& values) {
    const std::string got = get_string(obj, where, key, fallback);
    if (std::find(values.begin(), values.end(), got) != values.end())
        return got;
    std::string msg = "invalid value '" + got + "'";
    const std::string s = suggest(got, values);
    if (!s.empty())
        msg += "; did you mean '" + s + "'?";
    fail(where + key, msg);
}

void apply_override(json& root, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment + "' must have the form key.path=value");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw; // bare words become strings
    }

    json* node = &root;
    std::size_t pos = 0;
    while (true) {
        const auto dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot - pos);
        if (key.empty())
            throw ConfigError("override '" + assignment + "' has an empty path segment");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

} // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config must be a JSON object");

    for (const auto& o : overrides)
        apply_override(root, o);

    check_keys(root, "", {"problem", "p", "elements", "domain", "t_end", "cfl", "mode", "flux",
                          "apply_every", "output_dir", "precision", "sensor", "admm"});

    RunConfig cfg;
    if (!root.contains("problem"))
        fail("problem", "required key is missing");
    cfg.problem =
        get_enum(root, "", "problem", "", {"burgers", "advection", "pc-system"});

    const bool scalar = cfg.problem != "pc-system";
    struct Defaults {
        int p;
        int elements;
        double t_end;
        double kappa;
        std::string flux;
    };
    const Defaults d = cfg.problem == "burgers"
                           ? Defaults{4, 15, 0.345, 0.8, "llf"}
                           : (cfg.problem == "advection" ? Defaults{4, 8, 2.0, 0.8, "llf"}
                                                         : Defaults{6, 100, 0.25, 0.9,
                                                                    "entropy-stable"});

    cfg.degree = get_integer(root, "", "p", d.p);
    if (cfg.degree < 1)
        fail("p", "polynomial degree must be >= 1");
    cfg.elements = get_integer(root, "", "elements", d.elements);
    if (cfg.elements < 1)
        fail("elements", "element count must be >= 1");

    if (root.contains("domain")) {
        const auto& dom = root.at("domain");
        if (!dom.is_array() || dom.size() != 2 || !dom[0].is_number() || !dom[1].is_number())
            fail("domain", "expected an array [a, b] of two numbers");
        cfg.domain_a = dom[0].get<double>();
        cfg.domain_b = dom[1].get<double>();
        if (!(cfg.domain_a < cfg.domain_b))
            fail("domain", "requires a < b");
    }

    cfg.t_end = get_number(root, "", "t_end", d.t_end);
    if (cfg.t_end < 0.0)
        fail("t_end", "must be >= 0");
    if (cfg.problem == "burgers" && cfg.t_end > 0.5)
        fail("t_end", "the Burgers reference solution is available up to t = 0.5");

    cfg.cfl = get_number(root, "", "cfl", 0.5);
    if (!(cfg.cfl > 0.0))
        fail("cfl", "must be > 0");

    const std::string mode = get_enum(root, "", "mode", "none", {"none", "l1", "l1-mc"});
    cfg.mode = mode == "none" ? RegMode::none
                              : (mode == "l1" ? RegMode::l1 : RegMode::l1_mass_corrected);

    const std::string flux = get_enum(root, "", "flux", d.flux,
                                      {"llf", "entropy-conservative", "entropy-stable"});
    cfg.flux = flux == "llf" ? FluxMode::llf
                             : (flux == "entropy-conservative" ? FluxMode::entropy_conservative
                                                               : FluxMode::entropy_stable);
    if (scalar && cfg.flux != FluxMode::llf)
        fail("flux", "scalar problems support only the 'llf' flux");

    cfg.apply_every = get_integer(root, "", "apply_every", 1);
    if (cfg.apply_every < 1)
        fail("apply_every", "must be >= 1");

    cfg.output_dir = get_string(root, "", "output_dir", ".");
    cfg.precision = get_integer(root, "", "precision", 17);
    if (cfg.precision < 2 || cfg.precision > 17)
        fail("precision", "significant digits must lie in [2, 17]");

    cfg.sensor.kappa = d.kappa;
    if (root.contains("sensor")) {
        const auto& s = root.at("sensor");
        if (!s.is_object())
            fail("sensor", "expected an object");
        check_keys(s, "sensor", {"kappa", "lambda_max"});
        cfg.sensor.kappa = get_number(s, "sensor.", "kappa", d.kappa);
        cfg.sensor.lambda_max = get_number(s, "sensor.", "lambda_max", cfg.sensor.lambda_max);
    }
    if (cfg.sensor.kappa < 0.0 || cfg.sensor.kappa >= 1.0)
        fail("sensor.kappa", "must lie in [0, 1)");
    if (!(cfg.sensor.lambda_max > 0.0))
        fail("sensor.lambda_max", "must be > 0");

    if (root.contains("admm")) {
        const auto& a = root.at("admm");
        if (!a.is_object())
            fail("admm", "expected an object");
        check_keys(a, "admm", {"outer_iters", "beta", "alpha", "tol", "inner_max"});
        cfg.admm.outer_iters = get_integer(a, "admm.", "outer_iters", cfg.admm.outer_iters);
        cfg.admm.beta = get_number(a, "admm.", "beta", cfg.admm.beta);
        cfg.admm.alpha = get_number(a, "admm.", "alpha", cfg.admm.alpha);
        cfg.admm.tol = get_number(a, "admm.", "tol", cfg.admm.tol);
        cfg.admm.inner_max = get_integer(a, "admm.", "inner_max", cfg.admm.inner_max);
    }
    if (cfg.admm.outer_iters < 1)
        fail("admm.outer_iters", "must be >= 1");
    if (!(cfg.admm.beta > 0.0) || !(cfg.admm.alpha > 0.0) || !(cfg.admm.tol > 0.0))
        fail("admm", "beta, alpha, tol must be > 0");
    if (cfg.admm.inner_max < 1)
        fail("admm.inner_max", "must be >= 1");

    if (cfg.mode != RegMode::none && cfg.degree < cfg.sensor.order_high)
        fail("mode", "regularization needs p >= " + std::to_string(cfg.sensor.order_high) +
                         " for the order-" + std::to_string(cfg.sensor.order_high) +
                         " annihilation operator");
    return cfg;
}

std::string effective_config_json(const RunConfig& cfg) {
    json root;
    root["problem"] = cfg.problem;
    root["p"] = cfg.degree;
    root["elements"] = cfg.elements;
    root["domain"] = {cfg.domain_a, cfg.domain_b};
    root["t_end"] = cfg.t_end;
    root["cfl"] = cfg.cfl;
    root["mode"] = to_string(cfg.mode);
    root["flux"] = cfg.flux == FluxMode::llf
                       ? "llf"
                       : (cfg.flux == FluxMode::entropy_conservative ? "entropy-conservative"
                                                                     : "entropy-stable");
    root["apply_every"] = cfg.apply_every;
    root["output_dir"] = cfg.output_dir;
    root["precision"] = cfg.precision;
    root["sensor"] = {{"kappa", cfg.sensor.kappa}, {"lambda_max", cfg.sensor.lambda_max}};
    root["admm"] = {{"outer_iters", cfg.admm.outer_iters},
                    {"beta", cfg.admm.beta},
                    {"alpha", cfg.admm.alpha},
                    {"tol", cfg.admm.tol},
                    {"inner_max", cfg.admm.inner_max}};
    return root.dump(2) + "\n";
}

} // namespace l1dg

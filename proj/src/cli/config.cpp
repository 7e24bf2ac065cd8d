#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "skinspec/cli.hpp"

namespace skinspec::cli {

namespace {

using nlohmann::json;

double finite_number(const json& doc, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + key + "' must be finite");
    return x;
}

std::size_t count_value(const json& doc, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ConfigError("'" + key + "' must be a positive integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

// Scalar or list of numbers, expanded to length n.
std::vector<double> expand(const json& doc, const std::string& key, std::size_t n) {
    const json& v = doc.at(key);
    if (v.is_number()) return std::vector<double>(n, finite_number(doc, key));
    if (!v.is_array()) throw ConfigError("'" + key + "' must be a number or a list of numbers");
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>())) {
            throw ConfigError("'" + key + "' entries must be finite numbers");
        }
        out.push_back(e.get<double>());
    }
    if (out.size() != n) {
        throw ConfigError("'" + key + "' has " + std::to_string(out.size()) + " entries, expected " +
                          std::to_string(n));
    }
    return out;
}

// N-1 explicit spacings, or a periodic pattern of one or two values.
std::vector<double> spacing_list(const json& doc, std::size_t n) {
    const json& v = doc.at("spacings");
    std::vector<double> pattern;
    if (v.is_number()) {
        pattern.push_back(finite_number(doc, "spacings"));
    } else if (v.is_array()) {
        for (const json& e : v) {
            if (!e.is_number() || !std::isfinite(e.get<double>())) {
                throw ConfigError("'spacings' entries must be finite numbers");
            }
            pattern.push_back(e.get<double>());
        }
    } else {
        throw ConfigError("'spacings' must be a number or a list of numbers");
    }
    if (pattern.size() + 1 == n) return pattern;
    if (pattern.size() == 1 || pattern.size() == 2) {
        std::vector<double> out(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) out[i] = pattern[i % pattern.size()];
        return out;
    }
    throw ConfigError("'spacings' needs N-1 = " + std::to_string(n - 1) + " values or a pattern of 1 or 2 values");
}

const std::set<std::string> kMatrixKeys{"alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "a", "b", "n"};
const std::set<std::string> kChainKeys{"N", "ell", "spacings", "gamma", "delta", "v", "v_b"};
const std::set<std::string> kCommonKeys{"mode", "samples", "grid", "eps", "samples_per_gap"};

Mode infer_mode(const json& doc) {
    bool matrix = false;
    bool chain = false;
    for (const auto& item : doc.items()) {
        if (kMatrixKeys.contains(item.key())) {
            matrix = true;
        } else if (kChainKeys.contains(item.key())) {
            chain = true;
        } else if (!kCommonKeys.contains(item.key())) {
            throw ConfigError("unknown configuration key '" + item.key() + "'");
        }
    }
    if (matrix && chain) throw ConfigError("configuration mixes matrix and chain keys");
    if (doc.contains("mode")) {
        const json& m = doc.at("mode");
        const std::string name = m.is_string() ? m.get<std::string>() : "";
        if (name == "matrix" && !chain) return Mode::matrix;
        if ((name == "chain" || name == "interface") && !matrix) return name == "chain" ? Mode::chain : Mode::interface;
        throw ConfigError("'mode' must be \"matrix\", \"chain\" or \"interface\" and match the given keys");
    }
    if (matrix) return Mode::matrix;
    if (chain) return Mode::chain;
    throw ConfigError("configuration specifies neither matrix coefficients nor a resonator chain");
}

void require_keys(const json& doc, std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
        if (!doc.contains(k)) throw ConfigError(std::string("missing key '") + k + "'");
    }
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return {buffer, result.ptr};
}

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw ConfigError("format must be csv or json");
}

namespace {

std::vector<double> split_numbers(std::string_view text, const char* what) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view token = text.substr(pos, comma - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        double x = 0.0;
        const auto r = std::from_chars(token.data(), token.data() + token.size(), x);
        if (token.empty() || r.ec != std::errc() || r.ptr != token.data() + token.size() || !std::isfinite(x)) {
            throw ConfigError(std::string("malformed ") + what + " value '" + std::string(token) + "'");
        }
        values.push_back(x);
        pos = comma + 1;
    }
    return values;
}

spectral::GridSpec grid_from_values(const std::vector<double>& v) {
    if (v.size() != 6) throw ConfigError("grid needs re0,re1,im0,im1,nx,ny");
    spectral::GridSpec g;
    g.re0 = v[0];
    g.re1 = v[1];
    g.im0 = v[2];
    g.im1 = v[3];
    for (int i : {4, 5}) {
        if (v[i] < 16 || v[i] != std::floor(v[i]) || v[i] > 1e5) {
            throw ConfigError("grid resolution must be an integer >= 16");
        }
    }
    g.nx = static_cast<std::size_t>(v[4]);
    g.ny = static_cast<std::size_t>(v[5]);
    if (!(g.re0 < g.re1) || !(g.im0 < g.im1)) throw ConfigError("grid needs re0 < re1 and im0 < im1");
    return g;
}

std::vector<double> checked_epsilons(std::vector<double> eps) {
    if (eps.empty()) throw ConfigError("epsilon list is empty");
    for (double e : eps) {
        if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("epsilons must be positive and finite");
    }
    return eps;
}

}  // namespace

spectral::GridSpec parse_grid(std::string_view text) { return grid_from_values(split_numbers(text, "grid")); }

std::vector<double> parse_epsilons(std::string_view text) { return checked_epsilons(split_numbers(text, "eps")); }

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

    RunConfig config;
    try {
        config.mode = infer_mode(doc);
        if (config.mode == Mode::matrix) {
            require_keys(doc, {"alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "n"});
            PerturbedDimerParams& p = config.params;
            p.alpha1 = finite_number(doc, "alpha1");
            p.alpha2 = finite_number(doc, "alpha2");
            p.beta1 = finite_number(doc, "beta1");
            p.beta2 = finite_number(doc, "beta2");
            p.gamma1 = finite_number(doc, "gamma1");
            p.gamma2 = finite_number(doc, "gamma2");
            p.a = doc.contains("a") ? finite_number(doc, "a") : 0.0;
            p.b = doc.contains("b") ? finite_number(doc, "b") : 0.0;
            config.n = count_value(doc, "n");
            if (config.n < 2) throw ConfigError("'n' must be at least 2");
            if (!p.admissible()) throw ConfigError("coefficients must satisfy gamma1*beta1 > 0 and gamma2*beta2 > 0");
        } else {
            require_keys(doc, {"N", "ell", "spacings", "gamma"});
            const std::size_t n = count_value(doc, "N");
            if (n < 2) throw ConfigError("'N' must be at least 2");
            config.n = n;
            auto& chain = config.chain;
            if (config.mode == Mode::interface) {
                if (!doc.at("gamma").is_number() || !doc.at("ell").is_number()) {
                    throw ConfigError("interface mode takes scalar 'gamma' and 'ell'");
                }
                const auto sp = spacing_list(doc, 3);
                if (doc.at("spacings").is_array() && doc.at("spacings").size() > 2) {
                    throw ConfigError("interface mode takes a spacing pattern [s1, s2]");
                }
                chain = capacitance::interface_chain(n, finite_number(doc, "gamma"), finite_number(doc, "ell"), sp[0],
                                                     sp[1]);
            } else {
                chain.lengths = expand(doc, "ell", n);
                chain.gammas = expand(doc, "gamma", n);
                chain.spacings = spacing_list(doc, n);
            }
            if (doc.contains("delta")) chain.delta = finite_number(doc, "delta");
            if (doc.contains("v")) chain.v = finite_number(doc, "v");
            if (doc.contains("v_b")) chain.v_b = finite_number(doc, "v_b");
            chain.validate();
        }
        if (doc.contains("samples")) config.samples = count_value(doc, "samples");
        if (doc.contains("samples_per_gap")) config.samples_per_gap = count_value(doc, "samples_per_gap");
        if (doc.contains("grid")) {
            const json& g = doc.at("grid");
            if (g.is_string()) {
                config.grid = parse_grid(g.get<std::string>());
            } else if (g.is_array()) {
                std::vector<double> values;
                for (const json& e : g) {
                    if (!e.is_number()) throw ConfigError("'grid' entries must be numbers");
                    values.push_back(e.get<double>());
                }
                config.grid = grid_from_values(values);
            } else {
                throw ConfigError("'grid' must be a list [re0, re1, im0, im1, nx, ny]");
            }
        }
        if (doc.contains("eps")) {
            const json& e = doc.at("eps");
            if (!e.is_array()) throw ConfigError("'eps' must be a list of numbers");
            std::vector<double> values;
            for (const json& x : e) {
                if (!x.is_number()) throw ConfigError("'eps' entries must be numbers");
                values.push_back(x.get<double>());
            }
            config.epsilons = checked_epsilons(values);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read configuration file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace skinspec::cli

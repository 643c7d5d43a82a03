#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/kernels.hpp"

namespace sqgp {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("value of '" + key + "' is not a number: '" + value + "'");
    }
}

inline std::vector<double> parse_double_list(const std::string& key,
                                             const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty element in list '" + key + "'");
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

}  // namespace detail

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines; '#' starts a comment, blank lines are
/// skipped. Duplicate keys are rejected.
inline KeyValues parse_config_stream(std::istream& in) {
    KeyValues out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + " is not key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key on line " + std::to_string(lineno));
        if (!out.emplace(key, value).second)
            throw ConfigError("duplicate key '" + key + "'");
    }
    return out;
}

inline KeyValues parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config_stream(in);
}

inline KeyValues parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config_stream(in);
}

/**
 * Builds a ProcessModel from the model schema keys
 *
 *     kernel.kind = white | ar1 | ma | table
 *     kernel.theta                  (ar1)
 *     kernel.coeffs = a,b,...       (ma: MA coefficients; table: k(0..T))
 *     mean.kind = constant | alternating | decaying   (default constant)
 *     mean.m_inf                    (default 0)
 *     mean.c, mean.rho              (decaying)
 *     perturbation.kind = none | separable            (default none)
 *     perturbation.c, perturbation.rho                (separable)
 *
 * Consumed keys are erased from `kv`; keys in these sections that do not
 * apply to the selected kinds, or are unknown, are rejected.
 */
inline ProcessModel model_from_keys(KeyValues& kv) {
    auto take = [&kv](const std::string& key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError("missing required key '" + key + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_optional = [&kv](const std::string& key, const std::string& fallback) {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    const std::string kernel_kind = take("kernel.kind");
    KernelSpec kernel = KernelSpec::white();
    try {
        if (kernel_kind == "white") {
        } else if (kernel_kind == "ar1") {
            kernel = KernelSpec::ar1(detail::parse_double("kernel.theta", take("kernel.theta")));
        } else if (kernel_kind == "ma") {
            kernel = KernelSpec::ma(detail::parse_double_list("kernel.coeffs", take("kernel.coeffs")));
        } else if (kernel_kind == "table") {
            kernel = KernelSpec::table(detail::parse_double_list("kernel.coeffs", take("kernel.coeffs")));
        } else {
            throw ConfigError("unknown kernel.kind '" + kernel_kind + "'");
        }

        const std::string mean_kind = take_optional("mean.kind", "constant");
        const double m_inf =
            detail::parse_double("mean.m_inf", take_optional("mean.m_inf", "0"));
        MeanSpec mean = MeanSpec::constant(0.0);
        if (mean_kind == "constant") {
            mean = MeanSpec::constant(m_inf);
        } else if (mean_kind == "alternating") {
            mean = MeanSpec::alternating(m_inf);
        } else if (mean_kind == "decaying") {
            mean = MeanSpec::decaying(m_inf,
                                      detail::parse_double("mean.c", take("mean.c")),
                                      detail::parse_double("mean.rho", take("mean.rho")));
        } else {
            throw ConfigError("unknown mean.kind '" + mean_kind + "'");
        }

        const std::string pert_kind = take_optional("perturbation.kind", "none");
        Perturbation pert = Perturbation::none();
        if (pert_kind == "separable") {
            pert = Perturbation::separable(
                detail::parse_double("perturbation.c", take("perturbation.c")),
                detail::parse_double("perturbation.rho", take("perturbation.rho")));
        } else if (pert_kind != "none") {
            throw ConfigError("unknown perturbation.kind '" + pert_kind + "'");
        }

        for (const auto& [key, value] : kv) {
            if (key.rfind("kernel.", 0) == 0 || key.rfind("mean.", 0) == 0 ||
                key.rfind("perturbation.", 0) == 0)
                throw ConfigError("key '" + key + "' does not apply here");
        }
        return ProcessModel{mean, kernel, pert};
    } catch (const DomainError& e) {
        throw ConfigError(e.what());  // invalid parameter values are config errors
    }
}

}  // namespace sqgp

// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#ifndef BJORLING_GALLERY_DIR
#define BJORLING_GALLERY_DIR "gallery"
#endif

namespace bjorling::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    if (trim(s).empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.emplace_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

/// Constant arithmetic such as "2*pi" or "-1.5".
double parse_number(const std::string& v)
{
    const Expr e = parse_expr(v, VarSet{});
    return eval_real(e, std::span<const double>{});
}

int parse_int(const std::string& v)
{
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("expected an integer, got '" + v + "'");
    }
    return out;
}

bool parse_bool(const std::string& v)
{
    if (v == "true" || v == "yes" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "0") {
        return false;
    }
    throw ConfigError("expected true or false, got '" + v + "'");
}

PeriodKind parse_kind(const std::string& v)
{
    for (PeriodKind k : {PeriodKind::None, PeriodKind::Periodic, PeriodKind::Moebius, PeriodKind::Helicoidal}) {
        if (v == to_string(k)) {
            return k;
        }
    }
    throw ConfigError("periodicity must be none, periodic, moebius or helicoidal, got '" + v + "'");
}

/// Value text with surrounding quotes removed and any trailing comment dropped.
std::string parse_value(std::string_view raw)
{
    raw = trim(raw);
    if (!raw.empty() && raw.front() == '"') {
        const auto close = raw.find('"', 1);
        if (close == std::string_view::npos) {
            throw ConfigError("unterminated quoted value");
        }
        const auto rest = trim(raw.substr(close + 1));
        if (!rest.empty() && rest.front() != '#') {
            throw ConfigError("unexpected text after quoted value");
        }
        return std::string(raw.substr(1, close - 1));
    }
    const auto hash = raw.find('#');
    return std::string(trim(raw.substr(0, hash)));
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["name"] = [](RunConfig& c, const std::string& v) { c.name = v; };
        const char* axes[] = {"x", "y", "z"};
        for (int i = 0; i < 3; ++i) {
            t[std::string("beta.") + axes[i]] = [i](RunConfig& c, const std::string& v) {
                c.beta[static_cast<std::size_t>(i)] = v;
            };
            t[std::string("B.") + axes[i]] = [i](RunConfig& c, const std::string& v) {
                c.field[static_cast<std::size_t>(i)] = v;
            };
        }
        t["H"] = [](RunConfig& c, const std::string& v) { c.h = v; };
        t["s0"] = [](RunConfig& c, const std::string& v) { c.s0 = parse_number(v); };
        t["s1"] = [](RunConfig& c, const std::string& v) { c.s1 = parse_number(v); };
        t["periodicity"] = [](RunConfig& c, const std::string& v) { c.periodicity = parse_kind(v); };
        t["T"] = [](RunConfig& c, const std::string& v) { c.T = parse_number(v); };
        t["grid"] = [](RunConfig& c, const std::string& v) {
            if (v != "periodic" && v != "open") {
                throw ConfigError("grid must be periodic or open");
            }
            c.periodic_grid = v == "periodic";
        };
        t["method"] = [](RunConfig& c, const std::string& v) {
            if (v != "ck" && v != "fd") {
                throw ConfigError("method must be ck or fd");
            }
            c.method = v;
        };
        t["K"] = [](RunConfig& c, const std::string& v) { c.K = parse_int(v); };
        t["N"] = [](RunConfig& c, const std::string& v) { c.N = parse_int(v); };
        t["M_t"] = [](RunConfig& c, const std::string& v) { c.M_t = parse_int(v); };
        t["delta"] = [](RunConfig& c, const std::string& v) {
            if (v == "auto") {
                c.delta.reset();
            } else {
                c.delta = parse_number(v);
            }
        };
        t["safety"] = [](RunConfig& c, const std::string& v) { c.safety = parse_number(v); };
        t["allow_beyond_radius"] = [](RunConfig& c, const std::string& v) { c.allow_beyond_radius = parse_bool(v); };
        t["fd.dt"] = [](RunConfig& c, const std::string& v) { c.fd.dt = parse_number(v); };
        t["fd.steps"] = [](RunConfig& c, const std::string& v) { c.fd.n_steps = parse_int(v); };
        t["fd.cutoff"] = [](RunConfig& c, const std::string& v) { c.fd.filter_cutoff = parse_number(v); };
        t["output"] = [](RunConfig& c, const std::string& v) { c.output = v; };
        t["mesh.glue"] = [](RunConfig& c, const std::string& v) { c.glue = parse_bool(v); };
        t["checks"] = [](RunConfig& c, const std::string& v) {
            c.checks = split_list(v);
            c.checks_given = true;
            for (const auto& name : c.checks) {
                const auto& known = known_checks();
                if (std::find(known.begin(), known.end(), name) == known.end()) {
                    throw ConfigError("unknown check '" + name + "'");
                }
            }
        };
        t["symmetry.phi"] = [](RunConfig& c, const std::string& v) { c.symmetry_phi = parse_number(v); };
        t["symmetry.shift"] = [](RunConfig& c, const std::string& v) { c.symmetry_shift = parse_int(v); };
        t["symmetry.v"] = [](RunConfig& c, const std::string& v) {
            const auto parts = split_list(v);
            if (parts.size() != 3) {
                throw ConfigError("symmetry.v needs three comma-separated components");
            }
            c.symmetry_v = {parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
        };
        t["translator.tau"] = [](RunConfig& c, const std::string& v) { c.translator_tau = parse_number(v); };
        return t;
    }();
    return table;
}

} // namespace

const std::vector<std::string>& known_checks()
{
    static const std::vector<std::string> names = {
        "conformality", "mean_curvature", "pde_residual", "symmetry",     "mobius_involution",
        "normal_antipodality", "schwarz",  "translator",   "cross_solver",
    };
    return names;
}

RunConfig parse_config(std::string_view text, const std::string& origin)
{
    RunConfig c;
    std::set<std::string> seen;
    bool grid_given = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        auto fail = [&](const std::string& msg) -> ConfigError {
            return ConfigError(origin + ":" + std::to_string(line_no) + ": " + msg);
        };
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw fail("expected 'key = value'");
        }
        const std::string key(trim(content.substr(0, eq)));
        std::string value;
        try {
            value = parse_value(content.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw fail(e.what());
        }
        if (!seen.insert(key).second) {
            throw fail("duplicate key '" + key + "'");
        }
        try {
            if (key.rfind("threshold.", 0) == 0) {
                const std::string check = key.substr(10);
                const auto& known = known_checks();
                if (std::find(known.begin(), known.end(), check) == known.end()) {
                    throw ConfigError("unknown check '" + check + "'");
                }
                c.thresholds[check] = parse_number(value);
                continue;
            }
            const auto it = setters().find(key);
            if (it == setters().end()) {
                throw ConfigError("unknown key '" + key + "'");
            }
            it->second(c, value);
            grid_given = grid_given || key == "grid";
        } catch (const ConfigError& e) {
            throw fail(e.what());
        } catch (const ParseError& e) {
            throw fail("in '" + key + "': " + e.what());
        } catch (const EvalError& e) {
            throw fail("in '" + key + "': " + e.what());
        }
    }
    for (const char* required : {"beta.x", "beta.y", "beta.z", "B.x", "B.y", "B.z"}) {
        if (!seen.count(required)) {
            throw ConfigError(origin + ": missing required key '" + required + "'");
        }
    }
    if (c.periodicity != PeriodKind::None && !(c.T > 0.0)) {
        throw ConfigError(origin + ": periodicity '" + to_string(c.periodicity) + "' needs a period T > 0");
    }
    if (!grid_given) {
        c.periodic_grid = c.periodicity != PeriodKind::None;
    }
    if (c.output.empty()) {
        c.output = c.name + ".obj";
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

std::filesystem::path gallery_dir()
{
    if (const char* env = std::getenv("BJORLING_GALLERY_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return BJORLING_GALLERY_DIR;
}

std::vector<std::string> gallery_names()
{
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(gallery_dir(), ec)) {
        if (entry.path().extension() == ".cfg") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

std::filesystem::path resolve_config(const std::string& arg)
{
    const std::filesystem::path direct(arg);
    if (std::filesystem::is_regular_file(direct)) {
        return direct;
    }
    const auto preset = gallery_dir() / (arg + ".cfg");
    if (std::filesystem::is_regular_file(preset)) {
        return preset;
    }
    throw ConfigError("no config file or gallery preset named '" + arg + "'");
}

} // namespace bjorling::cli

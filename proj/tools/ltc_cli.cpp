#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltc/ltc.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_for(int status) {
    if (status == LTC_OK) return kExitPass;
    if (status == LTC_CONFIG_ERROR || status == LTC_PARSE_ERROR || status == LTC_INVALID_ARGUMENT) return kExitConfig;
    return kExitFail;
}

int report_error(int status) {
    std::string name = ltc_status_name(status), msg = ltc_last_error();
    if (msg.rfind(name, 0) != 0) msg = name + ": " + msg;
    std::cerr << "error: " << msg << "\n";
    return exit_for(status);
}

std::string take(char* s) {
    std::string out = s ? s : "";
    ltc_string_free(s);
    return out;
}

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    try {
        return ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
}

struct Options {
    long p = 3;
    std::string model = "multiplicative";
    std::string field = "qp";
    std::string field_file;
    std::string prec;
    long seed = 1;
    std::string format;
    std::string config_file;
};

// flags, then the field file, then the config file; later layers win
ordered_json build_config(const Options& o, CLI::App& app) {
    ordered_json j;
    j["p"] = o.p;
    j["model"] = o.model;
    const std::string& f = o.field;
    auto colon = f.find(':');
    std::string kind = f.substr(0, colon);
    if (kind == "qp") {
        j["field"] = "qp";
    } else if (kind == "unramified" || kind == "unram") {
        if (colon == std::string::npos) throw ConfigError("--field unramified:F needs a degree");
        j["field"] = "unramified";
        j["degree"] = std::stol(f.substr(colon + 1));
    } else if (kind == "eisenstein" || kind == "eis") {
        if (colon == std::string::npos) throw ConfigError("--field eisenstein:a0,a1,... needs coefficients");
        j["field"] = "eisenstein";
        std::vector<long> a;
        std::stringstream ss(f.substr(colon + 1));
        for (std::string item; std::getline(ss, item, ',');) a.push_back(std::stol(item));
        j["eisenstein"] = a;
    } else {
        throw ConfigError("unknown field '" + f + "'");
    }
    if (!o.prec.empty()) {
        auto comma = o.prec.find(',');
        if (comma == std::string::npos) throw ConfigError("--prec expects M,N");
        j["prec"] = {std::stol(o.prec.substr(0, comma)), std::stol(o.prec.substr(comma + 1))};
    }
    if (app.count("--seed")) j["seed"] = o.seed;
    for (const std::string* path : {&o.field_file, &o.config_file}) {
        if (path->empty()) continue;
        ordered_json layer = read_json_file(*path);
        if (!layer.is_object()) throw ConfigError("'" + *path + "' must hold a JSON object");
        for (auto& [k, v] : layer.items()) j[k] = v;
    }
    return j;
}

std::string output_format(const Options& o, const ordered_json& cfg, const std::string& fallback) {
    if (cfg.contains("format")) return cfg["format"].get<std::string>();
    return o.format.empty() ? fallback : o.format;
}

// context keys only
std::string context_json(ordered_json cfg) {
    for (const char* k : {"suites", "seed", "count", "format", "timing"}) cfg.erase(k);
    return cfg.dump();
}

struct Context {
    ltc_context* ctx = nullptr;
    ~Context() { ltc_context_destroy(ctx); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lubin-Tate operator calculus: exact identity checks at finite precision"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--p", o.p, "residue characteristic (odd prime)");
    app.add_option("--model", o.model, "formal group: special or multiplicative");
    app.add_option("--field", o.field, "qp, unramified:F or eisenstein:a0,a1,...");
    app.add_option("--field-file", o.field_file, "JSON file with p, field, degree, eisenstein");
    app.add_option("--prec", o.prec, "precisions M,N (pi-adic and Z-adic)");
    app.add_option("--seed", o.seed, "seed for randomized checks");
    app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--config", o.config_file, "JSON config file; its keys override flags");

    auto* verify = app.add_subcommand("verify", "run identity suites");
    std::vector<std::string> suites;
    long count = 0;
    bool timing = false;
    verify->add_option("--suite", suites, "suite to run (repeatable); default: all the model supports");
    verify->add_option("--count", count, "randomized cases per identity");
    verify->add_flag("--timing", timing, "record elapsed times (reports stop being byte-stable)");

    auto* fg = app.add_subcommand("fg", "formal group data");
    auto* fg_dump = fg->add_subcommand("dump", "print [pi](Z), the group law and log_LT");
    long degree = 3;
    fg_dump->add_option("--degree", degree, "highest total degree printed");
    fg->require_subcommand(1);

    auto* mellin = app.add_subcommand("mellin", "Mellin transform");
    auto* mellin_eval = mellin->add_subcommand("eval", "evaluate the Mellin image of (1+Z)^a at chi^n");
    long a_val = 1, n_val = 0;
    mellin_eval->add_option("--a", a_val, "exponent a")->required();
    mellin_eval->add_option("--n", n_val, "character power n")->required();
    mellin->require_subcommand(1);

    auto* regulator = app.add_subcommand("regulator", "regulator composite against its closed form");
    std::string g_spec;
    long r_val = 2, mult = 1;
    regulator->add_option("--g", g_spec, "builtin:cyclo(c) or a series in Z")->required();
    regulator->add_option("--r", r_val, "character power r");
    regulator->add_option("--a", mult, "a-multiplier");

    auto* koszul = app.add_subcommand("koszul", "Koszul complexes");
    auto* selfdual = koszul->add_subcommand("selfdual", "check the signed self-duality");
    int d_val = 2;
    selfdual->add_option("--d", d_val, "number of commuting operators");
    koszul->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        ordered_json cfg = build_config(o, app);
        if (verify->parsed()) {
            if (!suites.empty() && !cfg.contains("suites")) cfg["suites"] = suites;
            if (count > 0 && !cfg.contains("count")) cfg["count"] = count;
            if (timing && !cfg.contains("timing")) cfg["timing"] = true;
            std::string fmt = output_format(o, cfg, "json");
            cfg.erase("format");
            ltc_report* rep = nullptr;
            int st = ltc_verify(cfg.dump().c_str(), &rep);
            if (st != LTC_OK) return report_error(st);
            char* text = nullptr;
            st = ltc_report_render(rep, fmt.c_str(), &text);
            bool pass = ltc_report_all_pass(rep);
            ltc_report_destroy(rep);
            if (st != LTC_OK) return report_error(st);
            std::cout << take(text);
            return pass ? kExitPass : kExitFail;
        }
        if (selfdual->parsed()) {
            char* out = nullptr;
            int st = ltc_koszul_selfdual(d_val, &out);
            if (st != LTC_OK) return report_error(st);
            std::string js = take(out);
            if (output_format(o, cfg, "text") == "json") {
                std::cout << js << "\n";
            } else {
                auto j = ordered_json::parse(js);
                for (const auto& a : j["alpha"]) std::cout << "alpha_-" << a["q"].get<int>() << " = " << a["matrix"].dump() << "\n";
                for (const auto& s : j["squares"])
                    std::cout << "square q=" << s["q"].get<int>() << ": " << (s["commutes"].get<bool>() ? "commutes" : "fails") << "\n";
            }
            return kExitPass;
        }

        Context c;
        int st = ltc_context_create(context_json(cfg).c_str(), &c.ctx);
        if (st != LTC_OK) return report_error(st);
        std::string fmt = output_format(o, cfg, "text");
        char* out = nullptr;
        if (fg_dump->parsed()) {
            st = ltc_fg_dump(c.ctx, degree, &out);
            if (st != LTC_OK) return report_error(st);
            std::string text = take(out);
            if (fmt == "json") {
                ordered_json j;
                std::stringstream ss(text);
                for (std::string line; std::getline(ss, line);) {
                    auto eq = line.find(" = ");
                    auto colon = line.find(": ");
                    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 3);
                    else if (colon != std::string::npos) j[line.substr(0, colon)] = line.substr(colon + 2);
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << text;
            }
            return kExitPass;
        }
        if (mellin_eval->parsed()) {
            st = ltc_mellin_eval(c.ctx, a_val, n_val, &out);
            if (st != LTC_OK) return report_error(st);
            std::string v = take(out);
            if (fmt == "json") std::cout << ordered_json{{"a", a_val}, {"n", n_val}, {"value", v}}.dump(2) << "\n";
            else std::cout << v << "\n";
            return kExitPass;
        }
        if (regulator->parsed()) {
            st = ltc_regulator(c.ctx, g_spec.c_str(), r_val, mult, &out);
            if (st != LTC_OK) return report_error(st);
            std::string js = take(out);
            auto j = ordered_json::parse(js);
            if (fmt == "json") {
                std::cout << js << "\n";
            } else {
                std::cout << "g = " << g_spec << ", r = " << r_val << ", a = " << mult << "\n"
                          << "composite   = " << j["composite"].get<std::string>() << "\n"
                          << "closed form = " << j["closed_form"].get<std::string>() << "\n"
                          << "value       = " << j["composite_exact"].get<std::string>() << "\n"
                          << "closed exact= " << j["closed_form_exact"].get<std::string>() << "\n"
                          << "match: " << (j["match"].get<bool>() ? "yes" : "no") << "\n";
            }
            return j["match"].get<bool>() ? kExitPass : kExitFail;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: ConfigError: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: ConfigError: malformed number in options\n";
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: ConfigError: number out of range in options\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: ConfigError: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}

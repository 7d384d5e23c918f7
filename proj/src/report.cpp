#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace ltc {

using nlohmann::ordered_json;

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"core-ops", "psi-omega", "formal-group", "mellin",
                                                "residue-identity", "coleman-kato", "koszul"};
    return names;
}

bool suite_needs_period(const std::string& suite) {
    return suite == "mellin" || suite == "residue-identity" || suite == "coleman-kato";
}

std::vector<std::string> RunConfig::selected() const {
    if (!suites.empty()) return suites;
    std::vector<std::string> out;
    bool period = model == ModelKind::Multiplicative && field.kind == FieldKind::Qp;
    for (const auto& s : suite_names())
        if (period || !suite_needs_period(s)) out.push_back(s);
    return out;
}

namespace {

const char* field_kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::Qp: return "qp";
        case FieldKind::Unramified: return "unramified";
        case FieldKind::Eisenstein: return "eisenstein";
    }
    return "qp";
}

long get_long(const ordered_json& v, const std::string& key) {
    if (!v.is_number_integer()) throw Error(Err::ConfigError, "'" + key + "' must be an integer");
    return v.get<long>();
}

void read_keys(const ordered_json& j, RunConfig& c);
void validate(const RunConfig& c);

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(Err::ConfigError, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Err::ConfigError, "configuration must be a JSON object");
    RunConfig c;
    try {
        read_keys(j, c);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Err::ConfigError, std::string("bad value type: ") + e.what());
    }
    validate(c);
    return c;
}

namespace {

void read_keys(const ordered_json& j, RunConfig& c) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const auto& v = it.value();
        if (k == "p") {
            c.field.p = get_long(v, k);
        } else if (k == "field") {
            std::string s = v.get<std::string>();
            if (s == "qp") c.field.kind = FieldKind::Qp;
            else if (s == "unramified") c.field.kind = FieldKind::Unramified;
            else if (s == "eisenstein") c.field.kind = FieldKind::Eisenstein;
            else throw Error(Err::ConfigError, "unknown field kind '" + s + "'");
        } else if (k == "degree") {
            c.field.degree = get_long(v, k);
        } else if (k == "eisenstein") {
            c.field.eisenstein.clear();
            for (const auto& x : v) c.field.eisenstein.push_back(get_long(x, k));
        } else if (k == "model") {
            try {
                c.model = parse_model(v.get<std::string>());
            } catch (const Error& e) {
                throw Error(Err::ConfigError, e.what());
            }
            if (c.model == ModelKind::Custom) throw Error(Err::ConfigError, "custom models are not available in suites");
        } else if (k == "prec") {
            if (!v.is_array() || v.size() != 2) throw Error(Err::ConfigError, "'prec' must be [M, N]");
            c.M = get_long(v[0], k);
            c.N = get_long(v[1], k);
        } else if (k == "M") {
            c.M = get_long(v, k);
        } else if (k == "N") {
            c.N = get_long(v, k);
        } else if (k == "suites") {
            c.suites.clear();
            for (const auto& x : v) c.suites.push_back(x.get<std::string>());
        } else if (k == "seed") {
            if (!v.is_number_unsigned() && !v.is_number_integer()) throw Error(Err::ConfigError, "'seed' must be an integer");
            c.seed = v.get<std::uint64_t>();
        } else if (k == "count") {
            c.count = get_long(v, k);
        } else if (k == "format") {
            c.format = v.get<std::string>();
        } else if (k == "timing") {
            c.timing = v.get<bool>();
        } else {
            throw Error(Err::ConfigError, "unknown configuration key '" + k + "'");
        }
    }
}

void validate(const RunConfig& c) {
    if (c.field.p < 3 || c.field.p > 997 || mpz_probab_prime_p(mpz_class(c.field.p).get_mpz_t(), 25) == 0) throw Error(Err::ConfigError, "p must be an odd prime below 1000");
    if (c.M < 4 || c.M > 400) throw Error(Err::ConfigError, "M must lie in [4, 400]");
    if (c.N < 8 || c.N > 512) throw Error(Err::ConfigError, "N must lie in [8, 512]");
    if (c.count < 1 || c.count > 10000) throw Error(Err::ConfigError, "count must lie in [1, 10000]");
    if (c.format != "json" && c.format != "text") throw Error(Err::ConfigError, "format must be json or text");
    bool period = c.model == ModelKind::Multiplicative && c.field.kind == FieldKind::Qp;
    for (const auto& s : c.suites) {
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw Error(Err::ConfigError, "unknown suite '" + s + "'");
        if (suite_needs_period(s) && !period)
            throw Error(Err::ConfigError, "suite '" + s + "' needs the multiplicative model over Q_p");
    }
    try {
        LocalField::make(c.field);
    } catch (const Error& e) {
        throw Error(Err::ConfigError, e.what());
    }
}

}  // namespace

std::string config_to_json(const RunConfig& c) {
    ordered_json j;
    j["p"] = c.field.p;
    j["field"] = field_kind_name(c.field.kind);
    if (c.field.kind == FieldKind::Unramified) j["degree"] = c.field.degree;
    if (c.field.kind == FieldKind::Eisenstein) j["eisenstein"] = c.field.eisenstein;
    j["model"] = model_name(c.model);
    j["prec"] = {c.M, c.N};
    j["suites"] = c.selected();
    j["seed"] = c.seed;
    j["count"] = c.count;
    return j.dump();
}

bool IdentityReport::all_pass() const { return failures() == 0; }

long IdentityReport::failures() const {
    return std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; });
}

void IdentityReport::sort() {
    std::stable_sort(records.begin(), records.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return std::tie(a.suite, a.identity, a.parameters) < std::tie(b.suite, b.identity, b.parameters);
    });
}

std::string IdentityReport::to_json() const {
    ordered_json j;
    j["schema"] = 1;
    j["config"] = ordered_json::parse(config_to_json(config));
    j["passed"] = static_cast<long>(records.size()) - failures();
    j["failed"] = failures();
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) {
        ordered_json x;
        x["suite"] = r.suite;
        x["identity"] = r.identity;
        x["anchor"] = r.anchor;
        x["parameters"] = r.parameters;
        x["status"] = r.pass ? "pass" : "fail";
        if (!r.pass) x["witness"] = {{"lhs", r.lhs}, {"rhs", r.rhs}};
        if (!r.detail.empty()) x["detail"] = r.detail;
        if (config.timing) x["elapsed_ms"] = r.elapsed_ms;
        recs.push_back(x);
    }
    j["records"] = recs;
    return j.dump(2) + "\n";
}

std::string IdentityReport::to_text() const {
    std::ostringstream os;
    for (const auto& r : records) {
        os << (r.pass ? "PASS " : "FAIL ") << r.suite << " " << r.identity << " [" << r.parameters << "]";
        if (!r.detail.empty()) os << " " << r.detail;
        if (config.timing) os << " (" << r.elapsed_ms << " ms)";
        os << "\n";
        if (!r.pass) os << "  lhs: " << r.lhs << "\n  rhs: " << r.rhs << "\n";
    }
    os << (static_cast<long>(records.size()) - failures()) << " passed, " << failures() << " failed\n";
    return os.str();
}

Outcome outcome_equal(const Scalar& lhs, const Scalar& rhs, long min_prec) {
    Outcome o;
    long prec = std::min(lhs.prec(), rhs.prec());
    o.pass = lhs.equals(rhs) && prec >= min_prec;
    o.detail = "prec=" + std::to_string(prec);
    if (!o.pass) {
        o.lhs = lhs.str();
        o.rhs = rhs.str();
    }
    return o;
}

Outcome outcome_series(const Series& lhs, const Series& rhs, long upto, long min_count, long min_prec) {
    Outcome o;
    SeriesCompare c = compare(lhs, rhs, upto);
    long mp = c.count ? c.min_prec : -kInf;
    o.pass = c.equal && c.count >= min_count && mp >= min_prec;
    o.detail = "coefficients=" + std::to_string(c.count) + " prec=" + std::to_string(mp);
    if (!o.pass) {
        long k = c.equal ? lhs.lo() : c.first_bad;
        o.lhs = "Z^" + std::to_string(k) + ": " + lhs.coeff(k).str();
        o.rhs = "Z^" + std::to_string(k) + ": " + rhs.coeff(k).str();
    }
    return o;
}

Outcome outcome_bool(bool pass, const std::string& detail) {
    Outcome o;
    o.pass = pass;
    o.detail = detail;
    if (!pass) {
        o.lhs = "false";
        o.rhs = "true";
    }
    return o;
}

void Recorder::check(const std::string& identity, const std::string& anchor, const std::string& parameters,
                     const std::function<Outcome()>& fn) {
    CheckRecord r;
    r.suite = suite_;
    r.identity = identity;
    r.anchor = anchor;
    r.parameters = parameters;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome o = fn();
        r.pass = o.pass;
        r.lhs = o.lhs;
        r.rhs = o.rhs;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.lhs = e.what();
        r.rhs = "no exception";
    }
    if (timing_) r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    records_.push_back(std::move(r));
}

}  // namespace ltc

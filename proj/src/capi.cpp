#include <algorithm>
#include "ltc/ltc.h"

#include <gmpxx.h>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "coleman.hpp"
#include "json.hpp"
#include "koszul.hpp"
#include "suites.hpp"

struct ltc_context {
    ltc::RunConfig cfg;
    ltc::FieldPtr F;
    ltc::ContextPtr C;
};

struct ltc_report {
    ltc::IdentityReport rep;
};

namespace {

using namespace ltc;

thread_local std::string g_last_error;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
int guarded(Fn&& fn) {
    g_last_error.clear();
    try {
        fn();
        return LTC_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LTC_INTERNAL_ERROR;
    }
}

int invalid(const char* what) {
    g_last_error = what;
    return LTC_INVALID_ARGUMENT;
}

// a/b with |a|, b <= bound and a = b u mod m, if one exists
bool rational_reconstruct(const mpz_class& u, const mpz_class& m, mpz_class& a, mpz_class& b) {
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
    mpz_class r0 = m, r1 = u % m, s0 = 0, s1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (s1 == 0 || abs(s1) > bound) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return false;
    a = s1 < 0 ? mpz_class(-r1) : r1;
    b = abs(s1);
    return true;
}

// short exact form of a scalar over Q_p (a rational when one is recognizable), otherwise its full form
std::string compact(const Scalar& s) {
    if (s.is_zero()) return "0";
    const LocalField* F = s.field();
    if (F->d() != 1 || s.rel_prec() < 2) return "(" + s.str() + ")";
    mpz_class m = F->ppow(s.rel_prec());
    mpz_class a, b;
    if (!rational_reconstruct(s.unit()[0], m, a, b)) return "(" + s.str() + ")";
    long k = s.valuation();
    if (k > 0) a *= F->ppow(k);
    if (k < 0) b *= F->ppow(-k);
    mpq_class x(a, b);
    x.canonicalize();
    return x.get_str();
}

std::string monomial(const std::string& var, long e) {
    if (e == 0) return "";
    return var + (e > 1 ? "^" + std::to_string(e) : "");
}

void append_term(std::string& out, const std::string& coeff, const std::string& mono) {
    if (coeff == "0") return;
    bool neg = coeff[0] == '-';
    std::string c = neg ? coeff.substr(1) : coeff;
    if (c == "1" && !mono.empty()) c.clear();
    else if (c.find('/') != std::string::npos && !mono.empty()) c = "(" + c + ")";
    if (out.empty()) out = neg ? "-" : "";
    else out += neg ? "-" : "+";
    out += c + mono;
}

std::string univariate(const Series& f, long upto, bool exact) {
    std::string out;
    for (long k = std::max(f.lo(), 0L); k <= upto; ++k) append_term(out, compact(f.coeff(k)), monomial("Z", k));
    if (out.empty()) out = "0";
    if (!exact) out += "+O(Z^" + std::to_string(upto + 1) + ")";
    return out;
}

Series parse_g(const OperatorContext& C, const std::string& spec) {
    const std::string pre = "builtin:cyclo(";
    if (spec.rfind(pre, 0) == 0 && spec.back() == ')') {
        std::string num = spec.substr(pre.size(), spec.size() - pre.size() - 1);
        char* end = nullptr;
        long c = std::strtol(num.c_str(), &end, 10);
        if (num.empty() || *end != '\0' || c < 1) throw Error(Err::ParseError, "bad builtin '" + spec + "'");
        return cyclotomic_coleman(C, c);
    }
    if (spec == "builtin:z") return Series::monomial(exact_int(C.field(), 1), 1);
    return parse_series(C.field(), spec, C.model().M());
}

}  // namespace

extern "C" {

const char* ltc_version(void) { return "1.0.0"; }

const char* ltc_status_name(int status) {
    if (status == LTC_OK) return "OK";
    if (status == LTC_INVALID_ARGUMENT) return "InvalidArgument";
    if (status == LTC_INTERNAL_ERROR) return "InternalError";
    if (status >= 1 && status <= LTC_PARSE_ERROR) return err_name(static_cast<Err>(status));
    return "Unknown";
}

const char* ltc_last_error(void) { return g_last_error.c_str(); }

void ltc_string_free(char* s) { std::free(s); }

int ltc_context_create(const char* config_json, ltc_context** out) {
    if (!config_json || !out) return invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        auto ctx = std::make_unique<ltc_context>();
        ctx->cfg = parse_config(config_json);
        ctx->F = LocalField::make(ctx->cfg.field);
        ctx->C = OperatorContext::make(FormalGroup::make(ctx->F, ctx->cfg.model, ctx->cfg.N, ctx->cfg.M));
        *out = ctx.release();
    });
}

void ltc_context_destroy(ltc_context* ctx) { delete ctx; }

int ltc_context_describe(const ltc_context* ctx, char** out) {
    if (!ctx || !out) return invalid("null argument");
    return guarded([&] {
        const FormalGroup& G = ctx->C->model();
        *out = dup(std::string(model_name(G.kind())) + " model over " + ctx->F->describe() + ", precision pi^" +
                   std::to_string(G.M()) + " and Z^" + std::to_string(G.N()) + ", q = " + std::to_string(ctx->C->q()));
    });
}

int ltc_fg_dump(const ltc_context* ctx, long degree, char** out) {
    if (!ctx || !out) return invalid("null argument");
    if (degree < 1 || degree > 40) return invalid("degree must lie in [1, 40]");
    return guarded([&] {
        const FormalGroup& G = ctx->C->model();
        const long D = degree + 1;
        Bivariate law = G.group_law(D);
        std::string f;
        for (long t = 1; t < D; ++t)
            for (long i = t; i >= 0; --i) append_term(f, compact(law.at(i, t - i)), monomial("X", i) + monomial("Y", t - i));
        // the multiplicative law is the polynomial X + Y + XY
        bool exact = G.kind() == ModelKind::Multiplicative;
        if (!exact) f += "+O(deg " + std::to_string(D) + ")";
        std::string text;
        text += "field: " + ctx->F->describe() + "\n";
        text += std::string("model: ") + model_name(G.kind()) + "\n";
        text += "[pi](Z) = " + univariate(G.frobenius(G.M()), G.frob_degree(), true) + "\n";
        text += "F = " + f + "\n";
        text += "log(Z) = " + univariate(G.log(), degree, false) + "\n";
        text += "g(Z) = " + univariate(G.g(), degree, false) + "\n";
        *out = dup(text);
    });
}

int ltc_mellin_eval(const ltc_context* ctx, long a, long n, char** out) {
    if (!ctx || !out) return invalid("null argument");
    if (n < 0 || n > 64) return invalid("n must lie in [0, 64]");
    return guarded([&] {
        const OperatorContext& C = *ctx->C;
        MellinElement G = MellinElement::make(C, eta(C, a, C.model().N()).series);
        MellinValue v = mellin_eval(C, G, n);
        *out = dup(v.value.with_prec(C.model().M()).str());
    });
}

int ltc_regulator(const ltc_context* ctx, const char* g_spec, long r, long a, char** out_json) {
    if (!ctx || !g_spec || !out_json) return invalid("null argument");
    return guarded([&] {
        const OperatorContext& C = *ctx->C;
        if (r < 1 || r > 32) throw Error(Err::ConfigError, "r must lie in [1, 32]");
        Series g = parse_g(C, g_spec);
        RegulatorValue v = regulator_value(C, g, r, exact_int(C.field(), a));
        nlohmann::ordered_json j;
        j["g"] = g_spec;
        j["r"] = r;
        j["a"] = a;
        const long M = C.model().M();
        j["composite"] = v.value.str();
        j["closed_form"] = v.closed.with_prec(std::max(M, v.value.prec())).str();
        j["composite_exact"] = compact(v.value);
        j["closed_form_exact"] = compact(v.closed);
        j["factor"] = v.factor.with_prec(M).str();
        j["factor_exact"] = compact(v.factor);
        j["match"] = v.value.equals(v.closed);
        *out_json = dup(j.dump(2));
    });
}

int ltc_koszul_selfdual(int d, char** out_json) {
    if (!out_json) return invalid("null argument");
    return guarded([&] {
        DualityReport rep = duality_check(d);
        nlohmann::ordered_json j;
        j["d"] = d;
        j["all_commute"] = rep.all_commute;
        nlohmann::ordered_json sq = nlohmann::ordered_json::array();
        for (const auto& s : rep.squares) sq.push_back({{"q", s.q}, {"commutes", s.commutes}});
        j["squares"] = sq;
        nlohmann::ordered_json al = nlohmann::ordered_json::array();
        for (int q = 0; q <= d; ++q)
            al.push_back({{"q", q}, {"rows", subsets(d, d - q)}, {"cols", subsets(d, q)}, {"matrix", rep.alpha[static_cast<size_t>(q)]}});
        j["alpha"] = al;
        *out_json = dup(j.dump(2));
    });
}

int ltc_verify(const char* config_json, ltc_report** out) {
    if (!config_json || !out) return invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        auto rep = std::make_unique<ltc_report>();
        rep->rep = run_suites(parse_config(config_json));
        *out = rep.release();
    });
}

int ltc_report_all_pass(const ltc_report* rep) { return rep && rep->rep.all_pass() ? 1 : 0; }

long ltc_report_failures(const ltc_report* rep) { return rep ? rep->rep.failures() : -1; }

long ltc_report_size(const ltc_report* rep) { return rep ? static_cast<long>(rep->rep.records.size()) : -1; }

int ltc_report_render(const ltc_report* rep, const char* format, char** out) {
    if (!rep || !out) return invalid("null argument");
    std::string f = format ? format : rep->rep.config.format;
    if (f != "json" && f != "text") return invalid("format must be json or text");
    return guarded([&] { *out = dup(f == "json" ? rep->rep.to_json() : rep->rep.to_text()); });
}

void ltc_report_destroy(ltc_report* rep) { delete rep; }

}  // extern "C"

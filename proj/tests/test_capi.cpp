#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "ltc/ltc.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    ltc_string_free(s);
    return out;
}

struct Ctx {
    ltc_context* c = nullptr;
    explicit Ctx(const char* cfg) { REQUIRE(ltc_context_create(cfg, &c) == LTC_OK); }
    ~Ctx() { ltc_context_destroy(c); }
};

}  // namespace

TEST_CASE("status names and errors") {
    CHECK(std::string(ltc_status_name(LTC_OK)) == "OK");
    CHECK(std::string(ltc_status_name(LTC_CONFIG_ERROR)) == "ConfigError");
    CHECK(std::string(ltc_status_name(LTC_SIGN_VIOLATION)) == "SignViolation");
    CHECK(std::string(ltc_status_name(12345)) == "Unknown");
    ltc_context* c = nullptr;
    CHECK(ltc_context_create(R"({"p": 4})", &c) == LTC_CONFIG_ERROR);
    CHECK(c == nullptr);
    CHECK(std::string(ltc_last_error()).find("odd prime") != std::string::npos);
    CHECK(ltc_context_create(nullptr, &c) == LTC_INVALID_ARGUMENT);
}

TEST_CASE("formal group dump") {
    Ctx m(R"({"p": 3, "model": "multiplicative", "prec": [20, 32]})");
    char* out = nullptr;
    REQUIRE(ltc_fg_dump(m.c, 4, &out) == LTC_OK);
    std::string text = take(out);
    CHECK(text.find("F = X+Y+XY\n") != std::string::npos);
    CHECK(text.find("[pi](Z) = 3Z+3Z^2+Z^3") != std::string::npos);
    CHECK(text.find("log(Z) = Z-(1/2)Z^2+(1/3)Z^3-(1/4)Z^4+O(Z^5)") != std::string::npos);

    Ctx s(R"({"p": 3, "model": "special", "prec": [20, 32]})");
    REQUIRE(ltc_fg_dump(s.c, 3, &out) == LTC_OK);
    text = take(out);
    CHECK(text.find("[pi](Z) = 3Z+Z^3") != std::string::npos);
    // X^2 Y coefficient 1/8 of the special law
    CHECK(text.find("(1/8)X^2Y") != std::string::npos);
    CHECK(text.find("+O(deg 4)") != std::string::npos);
    CHECK(ltc_fg_dump(s.c, 0, &out) == LTC_INVALID_ARGUMENT);
}

TEST_CASE("Mellin evaluation and regulator") {
    Ctx m(R"({"p": 3, "model": "multiplicative", "prec": [20, 48]})");
    char* out = nullptr;
    REQUIRE(ltc_mellin_eval(m.c, 2, 3, &out) == LTC_OK);
    CHECK(take(out) == "8 + O(3^20)");
    REQUIRE(ltc_regulator(m.c, "builtin:cyclo(2)", 2, 1, &out) == LTC_OK);
    std::string js = take(out);
    CHECK(js.find("\"match\": true") != std::string::npos);
    CHECK(js.find("\"composite_exact\": \"-1\"") != std::string::npos);
    CHECK(ltc_regulator(m.c, "builtin:cyclo(x)", 2, 1, &out) == LTC_PARSE_ERROR);
    CHECK(ltc_regulator(m.c, "builtin:z", 2, 1, &out) == LTC_POLE_AT_ZERO);

    Ctx s(R"({"p": 3, "model": "special", "prec": [20, 32]})");
    CHECK(ltc_mellin_eval(s.c, 2, 3, &out) == LTC_MODEL_REQUIRES_PERIOD);
    CHECK(std::string(ltc_last_error()).find("ModelRequiresPeriod") != std::string::npos);
}

TEST_CASE("Koszul self-duality") {
    char* out = nullptr;
    REQUIRE(ltc_koszul_selfdual(2, &out) == LTC_OK);
    std::string js = take(out);
    CHECK(js.find("\"all_commute\": true") != std::string::npos);
    CHECK(ltc_koszul_selfdual(0, &out) == LTC_CONFIG_ERROR);
}

TEST_CASE("verification reports") {
    ltc_report* rep = nullptr;
    REQUIRE(ltc_verify(R"({"p": 3, "model": "special", "suites": ["psi-omega"]})", &rep) == LTC_OK);
    CHECK(ltc_report_all_pass(rep) == 1);
    CHECK(ltc_report_failures(rep) == 0);
    CHECK(ltc_report_size(rep) == 5);
    char* out = nullptr;
    REQUIRE(ltc_report_render(rep, "json", &out) == LTC_OK);
    std::string a = take(out);
    CHECK(a.find("\"schema\": 1") != std::string::npos);
    REQUIRE(ltc_report_render(rep, "text", &out) == LTC_OK);
    CHECK(take(out).find("5 passed, 0 failed") != std::string::npos);
    CHECK(ltc_report_render(rep, "xml", &out) == LTC_INVALID_ARGUMENT);
    ltc_report_destroy(rep);

    CHECK(ltc_verify(R"({"p": 3, "model": "special", "suites": ["residue-identity"]})", &rep) == LTC_CONFIG_ERROR);
    CHECK(rep == nullptr);
}

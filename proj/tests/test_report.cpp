#include "doctest.h"
#include "error.hpp"
#include "suites.hpp"

using namespace ltc;

namespace {

Err code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Err::ParseError;
}

}  // namespace

TEST_CASE("configuration parsing") {
    RunConfig c = parse_config(R"({"p": 5, "model": "multiplicative", "prec": [12, 32], "seed": 7, "suites": ["mellin"]})");
    CHECK(c.field.p == 5);
    CHECK(c.model == ModelKind::Multiplicative);
    CHECK(c.M == 12);
    CHECK(c.N == 32);
    CHECK(c.seed == 7);
    CHECK(c.selected() == std::vector<std::string>{"mellin"});

    RunConfig d = parse_config(R"({"p": 3, "model": "special"})");
    CHECK(d.selected() == std::vector<std::string>{"core-ops", "psi-omega", "formal-group", "koszul"});
    RunConfig u = parse_config(R"({"p": 5, "field": "unramified", "degree": 2})");
    CHECK(u.field.kind == FieldKind::Unramified);

    CHECK(code_of([] { parse_config(R"({"p": 3, "model": "special", "suites": ["residue-identity"]})"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"p": 5, "field": "unramified", "degree": 2, "model": "multiplicative", "suites": ["mellin"]})"); }) ==
          Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"p": 9})"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"p": 2})"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"p": "three"})"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"colour": 1})"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"suites": ["nope"]})"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"prec": [20]})"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config("{not json"); }) == Err::ConfigError);
    CHECK(code_of([] { parse_config(R"({"format": "xml"})"); }) == Err::ConfigError);
}

TEST_CASE("recorder keeps going after a failing check") {
    Recorder r("demo", false);
    r.check("a", "anchor-a", "x=1", [] { return outcome_bool(true); });
    r.check("b", "anchor-b", "x=2", []() -> Outcome { throw Error(Err::IdentityViolation, "boom"); });
    r.check("c", "anchor-c", "x=3", [] { return outcome_bool(false, "why"); });
    r.check("d", "anchor-d", "x=4", [] { return outcome_bool(true); });
    REQUIRE(r.records().size() == 4);
    CHECK(r.records()[0].pass);
    CHECK_FALSE(r.records()[1].pass);
    CHECK(r.records()[1].lhs.find("IdentityViolation") != std::string::npos);
    CHECK_FALSE(r.records()[2].pass);
    CHECK(r.records()[3].pass);
    CHECK(r.records()[0].elapsed_ms == 0);
}

TEST_CASE("reports are sorted and deterministic") {
    RunConfig c = parse_config(R"({"p": 3, "model": "special", "suites": ["koszul", "psi-omega"], "seed": 7})");
    IdentityReport a = run_suites(c), b = run_suites(c);
    CHECK(a.all_pass());
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_json().find("\"schema\": 1") != std::string::npos);
    CHECK(a.to_json().find("elapsed_ms") == std::string::npos);
    for (size_t i = 1; i < a.records.size(); ++i) {
        const auto& x = a.records[i - 1];
        const auto& y = a.records[i];
        CHECK(std::tie(x.suite, x.identity, x.parameters) <= std::tie(y.suite, y.identity, y.parameters));
    }
    CHECK(a.records.front().suite == "koszul");
    CHECK(a.to_text().find("0 failed") != std::string::npos);

    RunConfig d = c;
    d.seed = 8;
    CHECK(run_suites(d).to_json() != a.to_json());

    c.timing = true;
    CHECK(run_suites(c).to_json().find("elapsed_ms") != std::string::npos);
}

TEST_CASE("failures carry witnesses") {
    IdentityReport rep;
    rep.config = parse_config("{}");
    Recorder r("demo", false);
    FieldPtr F = LocalField::make({3, FieldKind::Qp, 1, {}});
    Scalar one = Scalar::from_int(F.get(), 1, 20);
    r.check("x", "anchor", "", [&] { return outcome_equal(one, one + one); });
    rep.records = r.records();
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.failures() == 1);
    std::string js = rep.to_json();
    CHECK(js.find("\"witness\"") != std::string::npos);
    CHECK(js.find("\"status\": \"fail\"") != std::string::npos);
    CHECK(rep.to_text().find("FAIL demo x") != std::string::npos);
}

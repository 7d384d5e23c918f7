#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "formal_group.hpp"
#include "padic.hpp"

namespace ltc {

// All suite names in execution order.
const std::vector<std::string>& suite_names();
// suites that need the multiplicative model over Q_p
bool suite_needs_period(const std::string& suite);

struct RunConfig {
    LocalFieldSpec field;
    ModelKind model = ModelKind::Special;
    long M = 20;
    long N = 64;
    std::vector<std::string> suites;  // empty: every suite the model supports
    std::uint64_t seed = 1;
    long count = 50;  // randomized cases per identity
    std::string format = "json";
    bool timing = false;  // elapsed times make reports nondeterministic, so they are opt-in

    std::vector<std::string> selected() const;
};

// Keys: p, field ("qp" | "unramified" | "eisenstein"), degree, eisenstein, model, prec [M, N],
// M, N, suites, seed, count, format, timing. ConfigError on unknown or invalid values.
RunConfig parse_config(const std::string& json_text);
std::string config_to_json(const RunConfig& cfg);

struct CheckRecord {
    std::string suite;
    std::string identity;
    std::string anchor;
    std::string parameters;
    bool pass = false;
    std::string lhs;  // witness, filled on failure
    std::string rhs;
    std::string detail;
    double elapsed_ms = 0;
};

struct IdentityReport {
    RunConfig config;
    std::vector<CheckRecord> records;

    bool all_pass() const;
    long failures() const;
    void sort();  // by (suite, identity, parameters)
    std::string to_json() const;
    std::string to_text() const;
};

struct Outcome {
    bool pass = false;
    std::string lhs, rhs, detail;
};

Outcome outcome_equal(const Scalar& lhs, const Scalar& rhs, long min_prec = -kInf);
Outcome outcome_series(const Series& lhs, const Series& rhs, long upto, long min_count = 1, long min_prec = -kInf);
Outcome outcome_bool(bool pass, const std::string& detail = "");

// Collects records for one suite. A check that throws is recorded as a failure with the
// error as its witness and never aborts the remaining checks.
class Recorder {
public:
    Recorder(std::string suite, bool timing) : suite_(std::move(suite)), timing_(timing) {}
    void check(const std::string& identity, const std::string& anchor, const std::string& parameters,
               const std::function<Outcome()>& fn);
    std::vector<CheckRecord>& records() { return records_; }

private:
    std::string suite_;
    bool timing_;
    std::vector<CheckRecord> records_;
};

}  // namespace ltc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qlab {

enum class Status { pass, fail, skip };
std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct Witness {
    std::int64_t n;
    // Index of the left-hand coefficient, when the check reads one.
    std::int64_t index;
    std::int64_t lhs;
    std::int64_t rhs;
    bool operator==(const Witness&) const = default;
};

struct HypothesisResult {
    std::string text;
    bool holds;
    bool operator==(const HypothesisResult&) const = default;
};

struct VerificationReport {
    std::string family;
    nlohmann::json params = nlohmann::json::object();
    std::string relation;
    std::int64_t n_min = 0;
    // Largest n actually checked (after any table cap).
    std::int64_t n_max = -1;
    std::int64_t requested_n_max = -1;
    std::int64_t checked = 0;
    // n excluded by a per-n hypothesis.
    std::int64_t excluded = 0;
    Status status = Status::pass;
    std::vector<Witness> witnesses;
    std::vector<HypothesisResult> hypotheses;
    std::vector<std::string> notes;
    // Informational results that do not affect status.
    nlohmann::json annotations = nlohmann::json::object();
    double elapsed_ms = 0;

    // Equality ignoring elapsed_ms.
    bool same_outcome(const VerificationReport& o) const;
};

inline constexpr std::size_t max_witnesses = 10;

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

struct AggregateReport {
    nlohmann::json config = nlohmann::json::object();
    std::vector<VerificationReport> reports;

    std::int64_t count(Status s) const;
    bool any_fail() const { return count(Status::fail) > 0; }
    bool same_outcome(const AggregateReport& o) const;
};

// {"schema": 1, "config": ..., "summary": {...}, "reports": [...]}
nlohmann::json to_json(const AggregateReport& r);
AggregateReport aggregate_from_json(const nlohmann::json& j);

}  // namespace qlab

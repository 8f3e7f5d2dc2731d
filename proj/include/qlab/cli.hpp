#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qlab/congruences.hpp"
#include "qlab/report.hpp"

namespace qlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_error = 3;

struct VerifyConfig {
    std::vector<std::string> families;
    RunOptions options;
    unsigned jobs = 1;

    nlohmann::json to_json() const;
    static VerifyConfig from_json(const nlohmann::json& j);
};

// Families run concurrently in groups that share a coefficient table; report
// order follows the family list.
AggregateReport run_verify(const VerifyConfig& config);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlab::cli

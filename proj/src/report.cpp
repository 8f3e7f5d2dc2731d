#include "qlab/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace qlab {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
    }
    return "?";
}

Status status_from_string(const std::string& s)
{
    if (s == "PASS") return Status::pass;
    if (s == "FAIL") return Status::fail;
    if (s == "SKIP") return Status::skip;
    throw std::invalid_argument("unknown status '" + s + "'");
}

bool VerificationReport::same_outcome(const VerificationReport& o) const
{
    return family == o.family && params == o.params && relation == o.relation && n_min == o.n_min &&
           n_max == o.n_max && requested_n_max == o.requested_n_max && checked == o.checked &&
           excluded == o.excluded && status == o.status && witnesses == o.witnesses &&
           hypotheses == o.hypotheses && notes == o.notes && annotations == o.annotations;
}

nlohmann::json to_json(const VerificationReport& r)
{
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : r.witnesses)
        w.push_back({{"n", x.n}, {"index", x.index}, {"lhs", x.lhs}, {"rhs", x.rhs}});
    nlohmann::json h = nlohmann::json::array();
    for (const auto& x : r.hypotheses) h.push_back({{"text", x.text}, {"holds", x.holds}});
    return {{"family", r.family},
            {"params", r.params},
            {"relation", r.relation},
            {"n_min", r.n_min},
            {"n_max", r.n_max},
            {"requested_n_max", r.requested_n_max},
            {"checked", r.checked},
            {"excluded", r.excluded},
            {"status", to_string(r.status)},
            {"witnesses", w},
            {"hypotheses", h},
            {"notes", r.notes},
            {"annotations", r.annotations},
            {"elapsed_ms", r.elapsed_ms}};
}

VerificationReport report_from_json(const nlohmann::json& j)
{
    VerificationReport r;
    r.family = j.at("family").get<std::string>();
    r.params = j.at("params");
    r.relation = j.at("relation").get<std::string>();
    r.n_min = j.at("n_min").get<std::int64_t>();
    r.n_max = j.at("n_max").get<std::int64_t>();
    r.requested_n_max = j.at("requested_n_max").get<std::int64_t>();
    r.checked = j.at("checked").get<std::int64_t>();
    r.excluded = j.at("excluded").get<std::int64_t>();
    r.status = status_from_string(j.at("status").get<std::string>());
    for (const auto& x : j.at("witnesses"))
        r.witnesses.push_back({x.at("n").get<std::int64_t>(), x.at("index").get<std::int64_t>(),
                               x.at("lhs").get<std::int64_t>(), x.at("rhs").get<std::int64_t>()});
    for (const auto& x : j.at("hypotheses"))
        r.hypotheses.push_back({x.at("text").get<std::string>(), x.at("holds").get<bool>()});
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.annotations = j.at("annotations");
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

std::int64_t AggregateReport::count(Status s) const
{
    return std::count_if(reports.begin(), reports.end(), [s](const auto& r) { return r.status == s; });
}

bool AggregateReport::same_outcome(const AggregateReport& o) const
{
    if (config != o.config || reports.size() != o.reports.size()) return false;
    for (std::size_t i = 0; i < reports.size(); ++i)
        if (!reports[i].same_outcome(o.reports[i])) return false;
    return true;
}

nlohmann::json to_json(const AggregateReport& r)
{
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& x : r.reports) reps.push_back(to_json(x));
    return {{"schema", 1},
            {"config", r.config},
            {"summary",
             {{"pass", r.count(Status::pass)},
              {"fail", r.count(Status::fail)},
              {"skip", r.count(Status::skip)}}},
            {"reports", reps}};
}

AggregateReport aggregate_from_json(const nlohmann::json& j)
{
    if (j.value("schema", 0) != 1) throw std::invalid_argument("unsupported report schema");
    AggregateReport r;
    r.config = j.at("config");
    for (const auto& x : j.at("reports")) r.reports.push_back(report_from_json(x));
    return r;
}

}  // namespace qlab

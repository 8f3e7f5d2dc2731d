#include "doctest.h"
#include "qlab/report.hpp"

using namespace qlab;

TEST_CASE("report JSON round trip")
{
    VerificationReport r;
    r.family = "eq006";
    r.params = {{"M", 4}, {"R", 1}};
    r.relation = "B(4n+1) = -B(n) (mod 3)";
    r.n_max = 100;
    r.requested_n_max = 200;
    r.checked = 101;
    r.status = Status::fail;
    r.witnesses.push_back({3, 13, 1, 2});
    r.hypotheses.push_back({"p = 2 (mod 3)", true});
    r.notes.push_back("capped");
    r.annotations["alternate"] = "PASS";
    r.elapsed_ms = 12.5;
    auto back = report_from_json(to_json(r));
    CHECK(back.same_outcome(r));
    CHECK(back.elapsed_ms == 12.5);

    AggregateReport agg;
    agg.config = {{"family", "all"}};
    agg.reports = {r, r};
    agg.reports[1].status = Status::skip;
    auto j = to_json(agg);
    CHECK(j["schema"] == 1);
    CHECK(j["summary"]["fail"] == 1);
    CHECK(j["summary"]["skip"] == 1);
    auto agg2 = aggregate_from_json(nlohmann::json::parse(j.dump()));
    CHECK(agg2.same_outcome(agg));
    CHECK(agg2.any_fail());
    agg2.reports[0].elapsed_ms = 99;
    CHECK(agg2.same_outcome(agg));
    agg2.reports[0].checked = 1;
    CHECK_FALSE(agg2.same_outcome(agg));
    j["schema"] = 2;
    CHECK_THROWS(aggregate_from_json(j));
    CHECK_THROWS(status_from_string("MAYBE"));
}

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "qlab/bipartitions.hpp"
#include "qlab/congruences.hpp"
#include "qlab/eta_modularity.hpp"
#include "qlab/hecke.hpp"
#include "qlab/newman.hpp"
#include "qlab/number_theory.hpp"

using namespace qlab;
using i64 = std::int64_t;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (ok) return;
        pass = false;
        detail << "\n    " << what;
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0) o.require(s < limit_s, "runtime " + std::to_string(s) + " s over " + std::to_string(limit_s) + " s");
    failures += !o.pass;
    std::printf("criterion %d: %s  %s (%.2f s)%s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), s,
                o.detail.str().c_str());
    std::fflush(stdout);
}

std::string describe(const VerificationReport& r)
{
    std::string s = r.family + " " + r.params.dump();
    if (!r.witnesses.empty()) {
        const auto& w = r.witnesses[0];
        s += " first witness n=" + std::to_string(w.n) + " index=" + std::to_string(w.index) +
             " lhs=" + std::to_string(w.lhs) + " rhs=" + std::to_string(w.rhs);
    }
    return s;
}

bool unmet_logged(const VerificationReport& r)
{
    for (const auto& h : r.hypotheses)
        if (!h.holds) return true;
    return false;
}

}  // namespace

int main()
{
    criterion(1, "bipartition series equals the direct count for n <= 30", 10, [](Outcome& o) {
        for (auto [u, v] : std::vector<std::pair<i64, i64>>{
                 {3, 7}, {3, 5}, {3, 2}, {7, 2}, {11, 2}, {13, 2}, {4, 3}, {8, 3}, {4, 5}}) {
            const QSeries s = bipartition_series({u, v}, Ring::integers(), 30);
            for (i64 n = 0; n <= 30; ++n)
                o.require(s[n] == bipartition_oracle({u, v}, n),
                          "B_{" + std::to_string(u) + "," + std::to_string(v) + "}(" + std::to_string(n) + ")");
        }
    });

    criterion(2, "leading coefficients of the three weight one eta products", 0, [](Outcome& o) {
        const std::vector<std::pair<std::string, std::vector<i64>>> want{
            {"eta3_21", {0, 1, 0, 0, -1, 0, 0, -1}},
            {"eta4_20", {0, 1, 0, 0, 0, -1, 0, 0, 0, -1}},
            {"eta8_16", {0, 1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, -2}}};
        for (const auto& [id, coeffs] : want) {
            const QSeries a = weight_one_form(id).expansion(Ring::integers(), static_cast<i64>(coeffs.size()) - 1);
            for (std::size_t n = 0; n < coeffs.size(); ++n)
                o.require(a[static_cast<i64>(n)] == coeffs[n], id + " a(" + std::to_string(n) + ")");
        }
    });

    criterion(3, "coefficients vanish off n = 1 (mod 3, 4, 8) up to 10^4", 0, [](Outcome& o) {
        for (const auto& f : weight_one_forms()) {
            const QSeries a = f.expansion(Ring::integers(), 10000);
            i64 bad = 0;
            for (i64 n = 0; n <= 10000; ++n)
                if (n % f.support_modulus != 1 && a[n] != 0) ++bad;
            o.require(bad == 0, f.id + ": " + std::to_string(bad) + " exceptions");
        }
    });

    criterion(4, "Hecke eigenforms at primes below 50, bound 2000", 30, [](Outcome& o) {
        for (const auto& f : weight_one_forms()) {
            const QSeries a = f.expansion(Ring::integers(), 47 * 2000);
            for (i64 p : primes_up_to(49)) {
                if (f.quotient.level % p == 0) continue;
                const EigenResult r = eigen_check(a, f.context(p), 2000);
                o.require(r.eigen, f.id + " p=" + std::to_string(p) + " not an eigenvector");
                if (p % f.support_modulus != 1)
                    o.require(r.lambda == 0, f.id + " lambda(" + std::to_string(p) + ") = " + std::to_string(r.lambda));
            }
        }
    });

    criterion(5, "unconditional congruence families", 0, [](Outcome& o) {
        TableCache cache;
        i64 pass = 0, skip = 0, capped = 0, min_n = std::numeric_limits<i64>::max();
        for (const char* id : {"eq006", "eq006a", "eq005", "eq007", "thm1.2i", "thm1.2ii", "thm1.2iii", "cor1.3i",
                               "cor1.3ii", "cor1.3iii", "thm1.5i", "thm1.5ii", "thm1.5iii", "cor1.6i", "cor1.6ii",
                               "cor1.6iii", "thm1.8i", "thm1.8ii", "thm1.8iii", "thm1.8-remark", "thm1.9i",
                               "thm1.9ii", "thm1.9iii", "thm1.10i", "thm1.10ii", "thm1.10iii"}) {
            for (const auto& r : run_family(find_family(id), RunOptions{}, cache)) {
                o.require(r.status != Status::fail, "FAIL " + describe(r));
                if (r.status == Status::skip) {
                    ++skip;
                    o.require(unmet_logged(r), "SKIP without an unmet hypothesis: " + describe(r));
                } else {
                    ++pass;
                }
                if (r.status == Status::pass && r.n_max < r.requested_n_max) {
                    ++capped;
                    min_n = std::min(min_n, r.n_max);
                }
            }
        }
        o.detail << "\n    " << pass << " instances pass, " << skip << " skip; " << capped
                 << " checked below the default n_max because of the table cap (smallest n_max " << min_n << ")";
    });

    criterion(6, "Newman identities", 120, [](Outcome& o) {
        const std::vector<std::pair<NewmanSeries, std::vector<i64>>> grid{
            {NewmanSeries::f1f7, {7, 13, 19}},  {NewmanSeries::f1f5, {5, 13, 17}}, {NewmanSeries::f1f2, {17, 41}},
            {NewmanSeries::f1_5f2, {73, 97}}, {NewmanSeries::f1_9f2, {73, 97}}, {NewmanSeries::f1_11f2, {73, 97}}};
        for (const auto& [s, primes] : grid)
            for (i64 p : primes) {
                auto r = newman1_verify({s, p}, std::max<i64>(100 * p, 1500));
                o.require(r.status == Status::pass, "FAIL " + describe(r));
            }
        for (auto [q, r, s] : std::vector<std::tuple<i64, i64, i64>>{{3, 2, 1}, {3, 6, 1}, {5, 2, 1}})
            for (i64 p : {5, 7, 11, 13}) {
                NewmanIIParams np{q, r, s, p};
                auto rep = newman2_verify(np, 60 * p * p + np.delta());
                o.require(rep.status == Status::pass, "FAIL " + describe(rep));
            }
        const QSeries a1 = eta_product(EtaProductSpec{{{1, 2}, {3, 1}}, 0}, Ring::integers(), 10);
        o.require(a1[10] == 0, "a_1(10) = " + std::to_string(a1[10]));
        const i64 w = newman2_gamma0_constant(NewmanIIParams{3, 2, 1, 7}, 10);
        o.require(w == 1, "w_1(7) = " + std::to_string(w));
    });

    criterion(7, "modularity and cusp orders of F_{p,m,j}", 60, [](Outcome& o) {
        i64 cusps = 0;
        for (i64 p : {5, 7, 11})
            for (i64 m : {1, 5, 7, 25, 35}) {
                if (std::gcd(p, m) != 1) continue;
                for (i64 j : {1, 2}) {
                    const FpmjSpec spec{p, m, j};
                    const EtaQuotient f = build_fpmj(spec);
                    const std::string tag = "p=" + std::to_string(p) + " m=" + std::to_string(m) + " j=" + std::to_string(j);
                    o.require(weight(f) == Rational((p - 1) * (ipow(p, j) + 1), 2), tag + " weight");
                    o.require(check_level_conditions(f) == LevelCondition::ok, tag + " level conditions");
                    for (i64 d : divisors(spec.level())) {
                        const Rational ord = cusp_order(f, 1, d);
                        const Lemma31Value l = lemma31_inequality(spec, d);
                        ++cusps;
                        o.require(ord >= 0, tag + " d=" + std::to_string(d) + " order " + to_string(ord));
                        o.require(l.nonneg, tag + " d=" + std::to_string(d) + " inequality");
                        o.require((ord > 0) == (l.L > 0) && (ord == 0) == (l.L == 0),
                                  tag + " d=" + std::to_string(d) + " sign disagreement");
                    }
                }
            }
        o.detail << "\n    " << cusps << " cusps checked";
    });

    for (auto [p, m] : std::vector<std::pair<i64, i64>>{{5, 1}, {5, 7}, {7, 1}, {7, 5}}) {
        criterion(8, "density of B_{" + std::to_string(p) + "," + std::to_string(m) + "} mod " + std::to_string(p),
                  180, [p = p, m = m](Outcome& o) {
                      const DensityCurve c = density_experiment(p, m, {1000, 10000, 100000});
                      for (const auto& pt : c.points) o.detail << "\n    X=" << pt.x << " ratio " << pt.ratio;
                      o.require(c.points[0].ratio > c.points[1].ratio && c.points[1].ratio > c.points[2].ratio,
                                "ratios not strictly decreasing");
                  });
    }

    criterion(9, "scope limits and conditional families", 0, [](Outcome& o) {
        o.detail << "\n    not reproduced: density exactly 1 (only the decrease of criterion 8 is checked)"
                 << "\n    not reproduced: the O(X/(log X)^a) rate (no fit)"
                 << "\n    not reproduced: infinitude of each family (finite grids only)";
        TableCache cache;
        for (const char* id : {"thm1.4i", "thm1.4ii", "thm1.4iii", "thm1.7i", "thm1.7ii", "thm1.7iii"}) {
            std::vector<i64> seeded;
            i64 pass = 0, skip = 0;
            for (const auto& r : run_family(find_family(id), RunOptions{}, cache)) {
                o.require(r.status != Status::fail, "FAIL " + describe(r));
                o.require(!r.hypotheses.empty(), "no hypotheses logged: " + describe(r));
                if (r.status == Status::skip) {
                    ++skip;
                    o.require(unmet_logged(r) || !r.notes.empty(), "SKIP without reason: " + describe(r));
                } else {
                    ++pass;
                }
                if (r.hypotheses.size() == 2 && r.hypotheses[1].holds && r.params["alpha"] == 0)
                    seeded.push_back(r.params["p"]);
            }
            o.detail << "\n    " << id << ": " << pass << " pass, " << skip << " skip, seed holds at p in {";
            for (std::size_t i = 0; i < seeded.size(); ++i) o.detail << (i ? "," : "") << seeded[i];
            o.detail << "}";
        }
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

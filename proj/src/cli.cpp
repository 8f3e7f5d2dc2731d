#include "qlab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "qlab/bipartitions.hpp"
#include "qlab/eta_modularity.hpp"
#include "qlab/hecke.hpp"
#include "qlab/newman.hpp"
#include "qlab/number_theory.hpp"
#include "qlab/series_io.hpp"

namespace qlab::cli {
namespace {

using i64 = std::int64_t;
using nlohmann::json;

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<i64> parse_list(const std::string& text, const std::string& flag)
{
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw usage_error(flag + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw usage_error(flag + ": empty list");
    return out;
}

Ring ring_for(i64 mod)
{
    if (mod == 0) return Ring::integers();
    if (mod < 2) throw usage_error("--mod: expected 0 or m >= 2, got " + std::to_string(mod));
    return Ring::mod(mod);
}

// Writes through `body` to `path`, or to `out` when path is empty or "-".
template <class F>
void emit(const std::string& path, std::ostream& out, F body)
{
    if (path.empty() || path == "-") {
        body(out);
        return;
    }
    std::ofstream f(path);
    if (!f) throw usage_error("cannot write '" + path + "'");
    body(f);
}

void print_report(std::ostream& os, const VerificationReport& r)
{
    os << to_string(r.status) << ' ' << r.family << ' ' << r.params.dump();
    if (r.status != Status::skip)
        os << " n=" << r.n_min << ".." << r.n_max << " checked=" << r.checked << " excluded=" << r.excluded;
    os << '\n';
    for (const auto& h : r.hypotheses)
        if (!h.holds) os << "    unmet: " << h.text << '\n';
    for (const auto& w : r.witnesses)
        os << "    witness n=" << w.n << " index=" << w.index << " lhs=" << w.lhs << " rhs=" << w.rhs << '\n';
    for (const auto& n : r.notes) os << "    note: " << n << '\n';
}

void print_summary(std::ostream& os, const AggregateReport& a)
{
    os << "summary: " << a.count(Status::pass) << " pass, " << a.count(Status::fail) << " fail, "
       << a.count(Status::skip) << " skip\n";
}

int status_exit(const AggregateReport& a) { return a.any_fail() ? exit_fail : exit_ok; }

}  // namespace

json VerifyConfig::to_json() const
{
    json j{{"command", "verify"},
           {"families", families},
           {"deep", options.deep},
           {"table_cap", options.table_cap},
           {"n_max", nullptr},
           {"primes", nullptr}};
    if (options.n_max) j["n_max"] = *options.n_max;
    if (options.primes) j["primes"] = *options.primes;
    return j;
}

VerifyConfig VerifyConfig::from_json(const json& j)
{
    if (j.value("command", "") != "verify") throw std::invalid_argument("config is not a verify run");
    VerifyConfig c;
    c.families = j.at("families").get<std::vector<std::string>>();
    c.options.deep = j.at("deep").get<bool>();
    c.options.table_cap = j.at("table_cap").get<i64>();
    if (!j.at("n_max").is_null()) c.options.n_max = j["n_max"].get<i64>();
    if (!j.at("primes").is_null()) c.options.primes = j["primes"].get<std::vector<i64>>();
    return c;
}

AggregateReport run_verify(const VerifyConfig& config)
{
    std::vector<const CongruenceFamily*> fams;
    for (const auto& id : config.families) fams.push_back(&find_family(id));

    std::map<std::tuple<i64, i64, i64>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < fams.size(); ++i)
        groups[{fams[i]->series.u, fams[i]->series.v, fams[i]->modulus}].push_back(i);
    std::vector<std::vector<std::size_t>> work;
    for (auto& [key, members] : groups) work.push_back(members);

    std::vector<std::vector<VerificationReport>> results(fams.size());
    std::vector<std::exception_ptr> errors(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t g; (g = next++) < work.size();) {
            try {
                TableCache cache;
                for (std::size_t i : work[g]) results[i] = run_family(*fams[i], config.options, cache);
            } catch (...) {
                errors[g] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(work.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    AggregateReport agg;
    agg.config = config.to_json();
    for (auto& r : results) agg.reports.insert(agg.reports.end(), r.begin(), r.end());
    return agg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"q-series and bipartition congruence toolkit", "qlab"};
    app.require_subcommand(1);
    std::function<int()> action;

    // series
    std::string s_factors, s_out;
    i64 s_trunc = 0, s_mod = 0, s_shift = 0;
    bool s_json = false;
    auto* series = app.add_subcommand("series", "Expand q^shift prod (q^d;q^d)^r");
    series->add_option("--factors", s_factors, "delta:exponent list, e.g. 1:-1,2:1")->required();
    series->add_option("--trunc", s_trunc, "Truncation order")->required()->check(CLI::NonNegativeNumber);
    series->add_option("--mod", s_mod, "0 for integers, m >= 2 for Z/m");
    series->add_option("--shift", s_shift, "Power of q in front")->check(CLI::NonNegativeNumber);
    series->add_option("--out", s_out, "Output file (default stdout)");
    series->add_flag("--json", s_json, "JSON instead of CSV");
    series->callback([&] {
        action = [&] {
            EtaProductSpec spec;
            for (auto [d, r] : parse_factors(s_factors)) spec.factors.push_back({d, r});
            spec.prefactor_exponent = s_shift;
            spec.validate();
            QSeries q = eta_product(spec, ring_for(s_mod), s_trunc);
            emit(s_out, out, [&](std::ostream& os) {
                if (s_json)
                    os << to_json(q).dump() << '\n';
                else
                    write_csv(os, q);
            });
            return exit_ok;
        };
    });

    // bipartition
    i64 b_u = 0, b_v = 0, b_trunc = 0, b_mod = 0;
    std::string b_out;
    bool b_json = false;
    auto* bip = app.add_subcommand("bipartition", "Coefficients of f_u f_v / f_1^2");
    bip->add_option("--u", b_u)->required();
    bip->add_option("--v", b_v)->required();
    bip->add_option("--trunc", b_trunc)->required()->check(CLI::NonNegativeNumber);
    bip->add_option("--mod", b_mod, "0 for integers, m >= 2 for Z/m");
    bip->add_option("--out", b_out, "Output file (default stdout)");
    bip->add_flag("--json", b_json, "JSON instead of CSV");
    bip->callback([&] {
        action = [&] {
            BipartitionParams bp{b_u, b_v};
            bp.validate();
            QSeries q = bipartition_series(bp, ring_for(b_mod), b_trunc);
            emit(b_out, out, [&](std::ostream& os) {
                if (b_json)
                    os << to_json(q).dump() << '\n';
                else
                    write_csv(os, q);
            });
            return exit_ok;
        };
    });

    // verify
    std::string v_family, v_json, v_replay, v_primes;
    i64 v_nmax = -1, v_cap = default_table_cap;
    bool v_deep = false;
    unsigned v_jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* verify = app.add_subcommand("verify", "Sweep congruence families");
    auto* fam_opt = verify->add_option("--family", v_family, "Family id or 'all'");
    verify->add_option("--p", v_primes, "Prime grid override, comma separated");
    verify->add_option("--nmax", v_nmax, "Largest n to check")->check(CLI::NonNegativeNumber);
    verify->add_flag("--deep", v_deep, "Scale n_max by 10 and the table cap by 4");
    verify->add_option("--table-cap", v_cap, "Largest coefficient index computed")->check(CLI::PositiveNumber);
    verify->add_option("--json", v_json, "Write the JSON report here ('-' for stdout)");
    auto* replay_opt = verify->add_option("--replay", v_replay, "Re-run the config of a saved report and compare");
    verify->add_option("--jobs", v_jobs, "Worker threads")->check(CLI::PositiveNumber);
    fam_opt->excludes(replay_opt);
    verify->callback([&] {
        action = [&] {
            if (!v_replay.empty()) {
                std::ifstream f(v_replay);
                if (!f) throw usage_error("--replay: cannot read '" + v_replay + "'");
                AggregateReport saved;
                try {
                    saved = aggregate_from_json(json::parse(f));
                } catch (const json::exception& e) {
                    throw usage_error("--replay: " + std::string(e.what()));
                }
                VerifyConfig c = VerifyConfig::from_json(saved.config);
                c.jobs = v_jobs;
                AggregateReport again = run_verify(c);
                for (const auto& r : again.reports) print_report(out, r);
                print_summary(out, again);
                const bool same = again.same_outcome(saved);
                out << "replay: " << (same ? "identical" : "differs") << '\n';
                return same ? status_exit(again) : exit_fail;
            }
            if (v_family.empty()) throw usage_error("--family is required");
            VerifyConfig c;
            if (v_family == "all") {
                for (const auto& f : builtin_families()) c.families.push_back(f.id);
            } else {
                try {
                    find_family(v_family);
                } catch (const std::invalid_argument& e) {
                    throw usage_error("--family: " + std::string(e.what()));
                }
                c.families.push_back(v_family);
            }
            if (v_nmax >= 0) c.options.n_max = v_nmax;
            if (!v_primes.empty()) c.options.primes = parse_list(v_primes, "--p");
            c.options.deep = v_deep;
            c.options.table_cap = v_cap;
            c.jobs = v_jobs;
            AggregateReport agg = run_verify(c);
            if (v_json.empty() || v_json == "-") {
                out << to_json(agg).dump(2) << '\n';
            } else {
                emit(v_json, out, [&](std::ostream& os) { os << to_json(agg).dump(2) << '\n'; });
                for (const auto& r : agg.reports) print_report(out, r);
                print_summary(out, agg);
            }
            return status_exit(agg);
        };
    });

    // density
    i64 d_p = 0, d_m = 1;
    std::string d_checkpoints = "1000,10000,100000", d_csv;
    auto* density = app.add_subcommand("density", "Share of n <= X with B_{p,m}(n) not divisible by p");
    density->add_option("--p", d_p)->required();
    density->add_option("--m", d_m, "1 for f_p / f_1");
    density->add_option("--checkpoints", d_checkpoints, "Increasing X values, comma separated");
    density->add_option("--csv", d_csv, "Write x,count,ratio rows here ('-' for stdout)");
    density->callback([&] {
        action = [&] {
            DensityCurve c = density_experiment(d_p, d_m, parse_list(d_checkpoints, "--checkpoints"));
            if (d_csv.empty()) {
                out << to_json(c).dump(2) << '\n';
                return exit_ok;
            }
            emit(d_csv, out, [&](std::ostream& os) {
                os << "x,count,ratio\n";
                for (const auto& pt : c.points) os << pt.x << ',' << pt.count << ',' << pt.ratio << '\n';
            });
            return exit_ok;
        };
    });

    // eta-analyze
    std::string e_factors;
    i64 e_level = 0;
    bool e_json = false;
    auto* eta = app.add_subcommand("eta-analyze", "Weight, level conditions, character and cusp orders");
    eta->add_option("--factors", e_factors, "delta:exponent list, e.g. 24:128,120:-5")->required();
    eta->add_option("--level", e_level)->required();
    eta->add_flag("--json", e_json);
    eta->callback([&] {
        action = [&] {
            EtaQuotient q{e_level, parse_factors(e_factors)};
            q.validate();
            const Rational k = weight(q);
            const LevelCondition cond = check_level_conditions(q);
            json character = nullptr;
            if (k.denominator() == 1) character = character_descriptor(q).to_string();
            const HolomorphyVerdict v = holomorphy_verdict(q);
            json cusps = json::array();
            for (const auto& c : v.cusps) cusps.push_back({{"d", c.d}, {"order", to_string(c.order)}});
            const bool modular = cond == LevelCondition::ok && k.denominator() == 1;
            std::string verdict = !modular ? "not a modular form on this level"
                                  : !v.holomorphic ? "meromorphic"
                                  : v.cusp_form() ? "cusp form"
                                                  : "holomorphic";
            json j{{"quotient", q.to_string()}, {"level", e_level},          {"weight", to_string(k)},
                   {"conditions", to_string(cond)}, {"character", character}, {"cusps", cusps},
                   {"negative_at", v.negative_at}, {"verdict", verdict}};
            if (e_json) {
                out << j.dump(2) << '\n';
            } else {
                out << q.to_string() << " level " << e_level << " weight " << to_string(k) << '\n'
                    << "conditions: " << to_string(cond) << '\n'
                    << "character: " << (character.is_null() ? "-" : character.get<std::string>()) << '\n';
                for (const auto& c : v.cusps) out << "  cusp 1/" << c.d << ": " << to_string(c.order) << '\n';
                out << "verdict: " << verdict << '\n';
            }
            return exit_ok;
        };
    });

    // hecke
    std::string h_form;
    i64 h_p = 0, h_bound = 2000;
    bool h_json = false;
    auto* hecke = app.add_subcommand("hecke", "Check T_p f = a(p) f for a weight one eta product");
    hecke->add_option("--form", h_form, "eta3_21, eta4_20 or eta8_16")->required();
    hecke->add_option("--p", h_p)->required();
    hecke->add_option("--bound", h_bound)->check(CLI::PositiveNumber);
    hecke->add_flag("--json", h_json);
    hecke->callback([&] {
        action = [&] {
            const WeightOneForm* form = nullptr;
            try {
                form = &weight_one_form(h_form);
            } catch (const std::invalid_argument& e) {
                throw usage_error("--form: " + std::string(e.what()));
            }
            if (!is_prime(h_p) || form->quotient.level % h_p == 0)
                throw usage_error("--p: need a prime not dividing the level " + std::to_string(form->quotient.level));
            const QSeries a = form->expansion(Ring::integers(), h_p * h_bound);
            const EigenResult r = eigen_check(a, form->context(h_p), h_bound);
            json j{{"form", form->id}, {"p", h_p},           {"bound", h_bound}, {"weight", 1},
                   {"chi", form->chi(h_p)}, {"lambda", r.lambda}, {"eigen", r.eigen}, {"witness", nullptr}};
            if (r.witness) j["witness"] = *r.witness;
            if (h_json)
                out << j.dump(2) << '\n';
            else
                out << (r.eigen ? "PASS" : "FAIL") << ' ' << form->id << " p=" << h_p << " lambda=" << r.lambda
                    << " chi=" << form->chi(h_p) << " bound=" << h_bound
                    << (r.witness ? " witness n=" + std::to_string(*r.witness) : "") << '\n';
            return r.eigen ? exit_ok : exit_fail;
        };
    });

    // newman
    std::string n_identity, n_series, n_mode = "full";
    i64 n_p = 0, n_trunc = -1, n_q = 0, n_r = 0, n_s = 0;
    bool n_json = false;
    auto* newman = app.add_subcommand("newman", "Check a Newman coefficient recurrence over Z");
    newman->add_option("--identity", n_identity, "I or II")->required()->check(CLI::IsMember({"I", "II"}));
    newman->add_option("--series", n_series, "Identity I: f1f7, f1f5, f1f2, f1^5f2, f1^9f2, f1^11f2");
    newman->add_option("--mode", n_mode, "Identity I: full or reduced")->check(CLI::IsMember({"full", "reduced"}));
    newman->add_option("--q", n_q, "Identity II: prime q");
    newman->add_option("--r", n_r, "Identity II: exponent of (q;q)");
    newman->add_option("--s", n_s, "Identity II: exponent of (q^q;q^q)");
    newman->add_option("--p", n_p)->required();
    newman->add_option("--trunc", n_trunc);
    newman->add_flag("--json", n_json);
    newman->callback([&] {
        action = [&] {
            VerificationReport rep;
            if (n_identity == "I") {
                if (n_series.empty()) throw usage_error("--series is required for identity I");
                NewmanIParams np{parse_newman_series(n_series), n_p};
                np.validate();
                rep = newman1_verify(np, n_trunc < 0 ? std::max<i64>(100 * n_p, 1500) : n_trunc,
                                     n_mode == "full" ? NewmanIMode::full : NewmanIMode::reduced);
            } else {
                NewmanIIParams np{n_q, n_r, n_s, n_p};
                np.validate();
                rep = newman2_verify(np, n_trunc < 0 ? 60 * n_p * n_p + np.delta() : n_trunc);
            }
            if (n_json)
                out << to_json(rep).dump(2) << '\n';
            else
                print_report(out, rep);
            return rep.status == Status::fail ? exit_fail : exit_ok;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }
    try {
        return action();
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

}  // namespace qlab::cli

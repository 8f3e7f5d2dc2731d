#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "qlab/bipartitions.hpp"
#include "qlab/report.hpp"
#include "qlab/series.hpp"

namespace qlab {

// A hypothesis either decided when the instance is generated (residue class
// of p, parity of a Newman constant) or a seed condition B(seed_index) = 0
// (mod m) read from the family's table.
struct Hypothesis {
    std::string text;
    std::optional<bool> holds;
    std::int64_t seed_index = -1;
};

enum class RelationKind { vanishing, proportional };

// One concrete member of a family: B(Mn + R) = 0, or
// B(Mn + R) = multiplier * B(M2 n + R2), modulo the family modulus, for
// n_min <= n <= n_max with admissible(n).
struct FamilyInstance {
    std::string label;
    // Set when the instance reads a different series than the family default.
    std::optional<BipartitionParams> series;
    nlohmann::json params = nlohmann::json::object();
    std::int64_t M = 1;
    std::int64_t R = 0;
    RelationKind kind = RelationKind::vanishing;
    std::int64_t M2 = 1;
    std::int64_t R2 = 0;
    std::int64_t multiplier = 0;
    std::vector<Hypothesis> hypotheses;
    std::function<bool(std::int64_t)> admissible;
    std::string admissible_text;
    std::int64_t n_min = 0;
    // Checked alongside and recorded as annotations only.
    std::vector<FamilyInstance> alternates;

    std::int64_t max_index(std::int64_t n_max) const;
    // Largest n <= n_max whose indices stay within trunc (n_min - 1 if none).
    std::int64_t n_within(std::int64_t trunc, std::int64_t n_max) const;
};

struct FamilyGrid {
    std::vector<std::int64_t> primes;
    std::vector<std::int64_t> exponents;
};

struct CongruenceFamily {
    std::string id;
    std::string description;
    BipartitionParams series;
    std::int64_t modulus;
    std::int64_t default_n_max;
    FamilyGrid grid;
    std::function<std::vector<FamilyInstance>(const FamilyGrid&)> generate;

    std::vector<FamilyInstance> instances() const { return generate(grid); }
    const BipartitionParams& series_of(const FamilyInstance& inst) const
    {
        return inst.series ? *inst.series : series;
    }
};

const std::vector<CongruenceFamily>& builtin_families();
// Throws std::invalid_argument for an unknown id.
const CongruenceFamily& find_family(const std::string& id);

std::string relation_text(const CongruenceFamily& family, const FamilyInstance& inst);

// Checks one instance against a table of B_{u,v} mod m. Unmet hypotheses give
// SKIP without reading the relation. Throws ring_mismatch when the table is
// over another ring and truncation_error when it is too short for n_max.
VerificationReport sweep(const CongruenceFamily& family, const FamilyInstance& inst, const QSeries& table,
                         std::int64_t n_max);
// Every default instance of the family.
std::vector<VerificationReport> sweep(const CongruenceFamily& family, const QSeries& table, std::int64_t n_max);

// B_{u,v} mod m tables shared across families, recomputed only when a longer
// one is requested.
class TableCache {
public:
    const QSeries& get(const BipartitionParams& series, std::int64_t m, std::int64_t trunc);

private:
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, QSeries> tables_;
};

inline constexpr std::int64_t default_table_cap = 1'000'000;

struct RunOptions {
    std::optional<std::int64_t> n_max;
    // Replaces the family's prime grid.
    std::optional<std::vector<std::int64_t>> primes;
    // n_max x10 and table cap x4.
    bool deep = false;
    std::int64_t table_cap = default_table_cap;
};

// Sweeps every instance, lowering n_max where the table cap would be exceeded
// and recording the reduction in the report notes.
std::vector<VerificationReport> run_family(const CongruenceFamily& family, const RunOptions& options,
                                           TableCache& cache);

struct DensityPoint {
    std::int64_t x;
    std::int64_t count;
    double ratio;
};

struct DensityCurve {
    std::int64_t p;
    std::int64_t m;
    std::vector<DensityPoint> points;
};

// Counts 1 <= n <= X with B_{p,m}(n) != 0 (mod p), where B_{p,1} = f_p / f_1.
// Throws std::invalid_argument unless p >= 5 is prime, m >= 1 has only prime
// factors >= 5 coprime to p, and the checkpoints are positive and increasing.
DensityCurve density_experiment(std::int64_t p, std::int64_t m, const std::vector<std::int64_t>& checkpoints);

nlohmann::json to_json(const DensityCurve& c);

}  // namespace qlab

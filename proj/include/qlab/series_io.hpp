#pragma once

#include <iosfwd>

#include "json.hpp"
#include "qlab/series.hpp"

namespace qlab {

// {"ring": {"kind": "Z"} | {"kind": "ModM", "m": 7}, "trunc": N, "coeffs": ["1", "-2", ...]}
nlohmann::json to_json(const QSeries& s);
QSeries series_from_json(const nlohmann::json& j);
nlohmann::json ring_to_json(const Ring& r);
Ring ring_from_json(const nlohmann::json& j);

// Header line "n,a(n)" then one row per coefficient.
void write_csv(std::ostream& os, const QSeries& s);

}  // namespace qlab

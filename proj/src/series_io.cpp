#include "qlab/series_io.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace qlab {

nlohmann::json ring_to_json(const Ring& r)
{
    if (r.is_integers()) return {{"kind", "Z"}};
    return {{"kind", "ModM"}, {"m", r.modulus()}};
}

Ring ring_from_json(const nlohmann::json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Z") return Ring::integers();
    if (kind == "ModM") return Ring::mod(j.at("m").get<std::int64_t>());
    throw std::invalid_argument("unknown ring kind '" + kind + "'");
}

nlohmann::json to_json(const QSeries& s)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (auto c : s.coeffs()) coeffs.push_back(std::to_string(c));
    return {{"ring", ring_to_json(s.ring())}, {"trunc", s.trunc()}, {"coeffs", coeffs}};
}

QSeries series_from_json(const nlohmann::json& j)
{
    Ring ring = ring_from_json(j.at("ring"));
    const auto& arr = j.at("coeffs");
    std::vector<std::int64_t> c;
    c.reserve(arr.size());
    for (const auto& x : arr) c.push_back(std::stoll(x.get<std::string>()));
    if (static_cast<std::int64_t>(c.size()) != j.at("trunc").get<std::int64_t>() + 1)
        throw std::invalid_argument("series JSON: trunc does not match coefficient count");
    return QSeries(ring, std::move(c));
}

void write_csv(std::ostream& os, const QSeries& s)
{
    os << "n,a(n)\n";
    for (std::int64_t n = 0; n <= s.trunc(); ++n) os << n << ',' << s.coeffs()[n] << '\n';
}

}  // namespace qlab

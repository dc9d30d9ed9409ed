#pragma once

#include "selfcontract/certificate.hpp"
#include "selfcontract/gauge.hpp"
#include "selfcontract/partition.hpp"
#include "selfcontract/polyline.hpp"

#include <json.hpp>

#include <string>

namespace sc {

using json = nlohmann::json;

// CSV: a "dim=n" line, then one comma-separated point per line ('#' comments).
// JSON: {"dim": n, "points": [[...], ...]}.  Format picked by content.
Polyline parse_polyline(const std::string& text);
Polyline read_polyline(const std::string& path);
std::string polyline_csv(const Polyline& p, const std::string& comment = "");
json polyline_json(const Polyline& p);
Polyline polyline_from_json(const json& j);

// {"kind": "euclidean"|"pnorm"|"max"|"polytope"|"random_polytope"|"cylinder", ...}
Gauge gauge_from_json(const json& j);
json gauge_json(const Gauge& g);
Gauge read_gauge(const std::string& path);

json constants_json(const Constants& c);
Constants constants_from_json(const json& j);

json partition_json(const Partition& p);

json certificate_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

// n = 2 only: the polyline plus the unit sphere of g centred at the last point
std::string polyline_svg(const Polyline& p, const Gauge& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sc

#pragma once

#include "cantorquant/distortion.hpp"
#include "cantorquant/quantizer.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cq {

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

// {"n": int, "points": [{"x": "p/q", "y": "p/q"}, ...]}
nlohmann::json codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const nlohmann::json& j);

// {"lower": "p/q", "upper": "p/q", "exact": bool}
nlohmann::json interval_to_json(const CertifiedInterval& iv);

// Accepts one codebook object, an array of them, or one object per line.
// Errors carry line and column.
std::vector<Codebook> parse_codebooks(const std::string& text);

// "x,y" header then one exact row per point.
std::string codebook_to_csv(const Codebook& cb);

// Cell rectangles of the given depth plus the codebook as dots.
std::string render_svg(const Codebook& cb, unsigned depth);

}  // namespace cq

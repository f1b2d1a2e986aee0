#include "cantorquant/io.hpp"

#include "cantorquant/measure.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cq {

using nlohmann::json;

json point_to_json(const Point& p) { return {{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }

namespace {

Rational coordinate_value(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return parse_rational(v.dump());
    throw ParseError("coordinate must be a \"p/q\" string or an integer");
}

Rational coordinate(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("point is missing \"") + key + "\"");
    return coordinate_value(j.at(key));
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Point point_from_json(const json& j) {
    if (j.is_array() && j.size() == 2) return {coordinate_value(j[0]), coordinate_value(j[1])};
    if (!j.is_object()) throw ParseError("point must be an object with \"x\" and \"y\" or a pair [x, y]");
    return {coordinate(j, "x"), coordinate(j, "y")};
}

json codebook_to_json(const Codebook& cb) {
    json pts = json::array();
    for (const auto& p : cb.points()) pts.push_back(point_to_json(p));
    return {{"n", cb.size()}, {"points", pts}};
}

Codebook codebook_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j.at("points").is_array())
        throw ParseError("codebook must be an object with a \"points\" array");
    const json& arr = j.at("points");
    if (arr.empty()) throw ParseError("codebook has no points");
    std::vector<Point> pts;
    for (const auto& p : arr) pts.push_back(point_from_json(p));
    if (j.contains("n")) {
        if (!j.at("n").is_number_integer() || j.at("n").get<long long>() != static_cast<long long>(pts.size()))
            throw ParseError("\"n\" does not match the number of points");
    }
    try {
        return Codebook(std::move(pts));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

json interval_to_json(const CertifiedInterval& iv) {
    return {{"lower", to_string(iv.lower)}, {"upper", to_string(iv.upper)}, {"exact", iv.exact}};
}

std::vector<Codebook> parse_codebooks(const std::string& text) {
    std::vector<Codebook> out;
    auto parse_one = [&](const std::string& chunk, std::size_t base_line) {
        json j;
        try {
            j = json::parse(chunk);
        } catch (const json::parse_error& e) {
            auto [line, col] = line_col(chunk, e.byte == 0 ? 0 : e.byte - 1);
            throw ParseError("line " + std::to_string(base_line + line - 1) + ", column " + std::to_string(col) +
                             ": malformed JSON");
        }
        try {
            if (j.is_array()) {
                if (j.empty()) throw ParseError("no codebooks in input");
                for (const auto& item : j) out.push_back(codebook_from_json(item));
            } else {
                out.push_back(codebook_from_json(j));
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(base_line) + ": " + e.what());
        }
    };

    // A document that parses as a whole is one value; otherwise try one value per line.
    if (json::accept(text)) {
        parse_one(text, 1);
        return out;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0, values = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        parse_one(line, lineno);
        ++values;
    }
    if (values == 0) {
        if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("line 1: empty input");
        parse_one(text, 1);  // reports the position of the first syntax error
    }
    return out;
}

std::string codebook_to_csv(const Codebook& cb) {
    std::string s = "x,y\n";
    for (const auto& p : cb.points()) s += to_string(p.x) + "," + to_string(p.y) + "\n";
    return s;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Codebook& cb, unsigned depth) {
    if (depth < 1) throw DomainError("plot depth must be >= 1");
    if (depth > 8) throw DomainError("plot depth is limited to 8 (65536 cells)");
    const double size = 540, margin = 20;
    const double total = size + 2 * margin;

    std::vector<double> lefts;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << depth); ++k) {
        BinaryWord w;
        for (unsigned b = depth; b-- > 0;) w.symbols.push_back(((k >> b) & 1) ? 2 : 1);
        lefts.push_back(cell_interval(w).first.get_d());
    }
    double side = size * std::pow(3.0, -static_cast<double>(depth));

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(total) + "\" height=\"" +
         fmt(total) + "\" viewBox=\"0 0 " + fmt(total) + " " + fmt(total) + "\">\n";
    s += "<g id=\"cells\" fill=\"#d9e3f0\" stroke=\"#4a6fa5\" stroke-width=\"0.4\">\n";
    for (double x0 : lefts) {
        for (double y0 : lefts) {
            double px = margin + x0 * size;
            double py = margin + (1.0 - y0) * size - side;
            s += "<rect x=\"" + fmt(px) + "\" y=\"" + fmt(py) + "\" width=\"" + fmt(side) + "\" height=\"" +
                 fmt(side) + "\"/>\n";
        }
    }
    s += "</g>\n";
    s += "<g id=\"codebook\" fill=\"#c0392b\">\n";
    for (const auto& p : cb.points()) {
        double px = margin + p.x.get_d() * size;
        double py = margin + (1.0 - p.y.get_d()) * size;
        s += "<circle cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) + "\" r=\"4.000\"/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace cq

#include "cantorquant/distortion.hpp"
#include "cantorquant/measure.hpp"
#include "cantorquant/moments.hpp"
#include "cantorquant/quantizer.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cq;

// Rationals cross the boundary as "p/q" strings; the Python package turns
// them into fractions.Fraction.
namespace {

using PyPoint = std::pair<std::string, std::string>;

std::vector<PyPoint> export_points(const Codebook& cb) {
    std::vector<PyPoint> out;
    for (const auto& p : cb.points()) out.emplace_back(to_string(p.x), to_string(p.y));
    return out;
}

Codebook import_points(const std::vector<PyPoint>& pts) {
    std::vector<Point> v;
    for (const auto& [x, y] : pts) v.push_back({parse_rational(x), parse_rational(y)});
    return Codebook(std::move(v));
}

py::dict export_interval(const CertifiedInterval& iv) {
    py::dict d;
    d["lower"] = to_string(iv.lower);
    d["upper"] = to_string(iv.upper);
    d["exact"] = iv.exact;
    d["depth"] = iv.depth_reached;
    return d;
}

Region import_region(const std::string& address) {
    auto [w, tail] = parse_pair_address(address);
    return Region::rect(w, tail);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact optimal quantizers of the product Cantor measure";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
    py::register_exception<EmptyRegionError>(m, "EmptyRegionError", PyExc_RuntimeError);

    m.def("quantization_error", [](std::uint64_t n) { return to_string(quantization_error(n)); }, py::arg("n"));
    m.def("level", [](std::uint64_t n) {
        Level l = level(n);
        return std::make_pair(l.ell, std::string(regime_name(l.regime)));
    }, py::arg("n"));
    m.def("count_variants", [](std::uint64_t n) { return count_variants(n).get_str(); }, py::arg("n"));
    m.def("optimal_codebook", [](std::uint64_t n, const std::string& variant) {
        if (n == 1) return export_points(optimal_codebook(1));
        return export_points(optimal_codebook(variant_at(n, BigInt(variant, 10))));
    }, py::arg("n"), py::arg("variant") = "0");
    m.def("variant_spec", [](std::uint64_t n, const std::string& variant) {
        VariantSpec s = variant_at(n, BigInt(variant, 10));
        py::dict d;
        d["level"] = s.lvl.ell;
        d["regime"] = std::string(regime_name(s.lvl.regime));
        std::vector<std::pair<std::string, std::string>> cells;
        for (const auto& [a, b] : s.split_addresses()) cells.emplace_back(to_string(a), to_string(b));
        d["split_cells"] = cells;
        d["choices"] = std::vector<int>(s.choices.begin(), s.choices.end());
        return d;
    }, py::arg("n"), py::arg("variant") = "0");

    m.def("exact_distortion", [](const std::vector<PyPoint>& pts, const std::string& tol, unsigned depth) {
        Codebook cb = import_points(pts);
        CertifiedInterval iv;
        {
            py::gil_scoped_release release;
            iv = exact_distortion(cb, parse_rational(tol), depth);
        }
        return export_interval(iv);
    }, py::arg("points"), py::arg("tolerance") = "1e-12", py::arg("max_depth") = kDefaultMaxDepth);
    m.def("lloyd_step", [](const std::vector<PyPoint>& pts, unsigned depth) {
        return export_points(lloyd_step(import_points(pts), depth));
    }, py::arg("points"), py::arg("depth"));
    m.def("multistart_search", [](std::uint64_t n, unsigned seeds, std::uint64_t rng_seed, unsigned depth) {
        MultistartResult r;
        {
            py::gil_scoped_release release;
            r = multistart_search(n, seeds, rng_seed, depth);
        }
        py::dict d;
        d["completed"] = r.completed;
        d["aborted"] = r.aborted;
        if (r.best) {
            d["best"] = export_points(*r.best);
            d["distortion"] = export_interval(r.best_distortion);
        } else {
            d["best"] = py::none();
            d["distortion"] = py::none();
        }
        return d;
    }, py::arg("n"), py::arg("seeds"), py::arg("rng_seed") = 1, py::arg("depth") = 20);

    m.def("cantor_point", [](const std::string& w) { return to_string(cantor_point(parse_binary_word(w))); },
          py::arg("word"));
    m.def("F_map", [](const std::string& w, bool infinite) { return to_string(F_map(parse_nat_word(w), infinite)); },
          py::arg("word"), py::arg("infinite") = false);
    m.def("F_inverse", [](const std::string& w) {
        NatAddress a = F_inverse(parse_binary_word(w));
        return std::make_pair(to_string(a.word), a.infinite);
    }, py::arg("word"));
    m.def("centroid", [](const std::string& address) {
        Point c = centroid(import_region(address));
        return PyPoint(to_string(c.x), to_string(c.y));
    }, py::arg("address"));
    m.def("region_distortion", [](const std::string& address, const PyPoint& center) {
        Point c{parse_rational(center.first), parse_rational(center.second)};
        return to_string(single_center_distortion(import_region(address), c));
    }, py::arg("address"), py::arg("center"));
}

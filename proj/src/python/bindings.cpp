#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dynheight/enumeration.hpp"
#include "dynheight/parse.hpp"

namespace py = pybind11;
using namespace dynheight;

namespace {

HeightBudget make_budget(long precision, int max_iterations) {
    HeightBudget b;
    b.precision = precision;
    b.max_iterations = max_iterations;
    return b;
}

py::dict interval_dict(const DyadicInterval& x) {
    py::dict d;
    d["lo"] = x.lo_d();
    d["hi"] = x.hi_d();
    d["decimal"] = x.to_decimal();
    d["exact"] = x.to_exact();
    return d;
}

py::dict height_dict(const HeightResult& h) {
    py::dict d = interval_dict(h.value);
    d["decided"] = h.decided;
    d["iterations"] = h.iterations;
    return d;
}

py::dict verdict_dict(const PcfVerdict& v) {
    py::dict d;
    d["verdict"] = to_string(v.kind);
    d["iterations"] = v.iterations;
    if (v.kind == VerdictKind::Pcf) {
        py::list orbits;
        for (const auto& o : v.orbits) {
            py::list pts;
            for (const auto& z : o.points) pts.append(z.to_string());
            py::dict od;
            od["critical_point"] = o.critical_point.to_string();
            od["multiplicity"] = o.multiplicity;
            od["points"] = pts;
            od["tail_length"] = o.tail_length;
            od["cycle_length"] = o.cycle_length;
            orbits.append(od);
        }
        d["orbits"] = orbits;
    }
    if (v.witness) {
        py::dict w;
        w["critical_point"] = v.witness->critical_point.to_string();
        w["place"] = v.witness->place.label();
        w["iterate"] = v.witness->iterate;
        w["threshold"] = v.witness->threshold;
        d["witness"] = w;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_dynheight, m) {
    m.doc() = "Exact canonical/critical heights and PCF certification for "
              "polynomials over Q";

    m.def(
        "canonical_height",
        [](const std::string& poly, const std::string& point, long precision,
           int max_iterations) {
            return height_dict(canonical_height(parse_polynomial(poly), parse_point(point),
                                                make_budget(precision, max_iterations)));
        },
        py::arg("poly"), py::arg("point"), py::arg("precision") = 128,
        py::arg("max_iterations") = 64);

    m.def(
        "critical_height",
        [](const std::string& poly, long precision, int max_iterations) {
            return height_dict(critical_height(parse_polynomial(poly),
                                               make_budget(precision, max_iterations)));
        },
        py::arg("poly"), py::arg("precision") = 128, py::arg("max_iterations") = 64);

    m.def(
        "certify",
        [](const std::string& poly, long precision) {
            return verdict_dict(certify_pcf(parse_polynomial(poly), make_budget(precision, 64)));
        },
        py::arg("poly"), py::arg("precision") = 128);

    m.def(
        "certify_cubic",
        [](const std::string& A, const std::string& B, long precision) {
            mpq_class a = parse_rational(A), b = parse_rational(B);
            PolySpec F({b, a, mpq_class(0), mpq_class(1)});
            return verdict_dict(certify_pcf(F, make_budget(precision, 64)));
        },
        py::arg("A"), py::arg("B"), py::arg("precision") = 128);

    m.def(
        "critical_monic_ratio",
        [](const std::string& poly, long precision) {
            RatioReport r = theorem1_ratio(parse_polynomial(poly), make_budget(precision, 64));
            py::dict d;
            d["h_crit"] = interval_dict(r.h_crit);
            d["h_mc"] = interval_dict(r.h_mc);
            d["ratio"] = interval_dict(r.ratio);
            d["decided"] = r.decided;
            d["pcf_point"] = r.pcf_point;
            return d;
        },
        py::arg("poly"), py::arg("precision") = 128);

    m.def("enumerate_pcf_quadratics", [] {
        std::vector<std::string> out;
        for (const auto& c : enumerate_pcf_quadratics()) out.push_back(c.get_str());
        return out;
    });

    m.def(
        "monic_centred",
        [](const std::string& poly) {
            auto [G, psi] = to_monic_centred(parse_polynomial(poly));
            py::dict d;
            d["poly"] = G.to_string();
            d["alpha"] = psi.alpha.to_string();
            d["gamma"] = psi.gamma.to_string();
            return d;
        },
        py::arg("poly"));

    m.def(
        "poly_roundtrip",
        [](const std::string& poly) { return parse_polynomial(poly).to_string(); },
        py::arg("poly"));
}

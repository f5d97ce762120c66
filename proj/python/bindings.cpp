#include <weylbound/oracles.hpp>
#include <weylbound/pipeline.hpp>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace weylbound;

namespace {

py::object to_fraction(const Rational& x) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(py::int_(py::str(to_string(x.get_num()))), py::int_(py::str(to_string(x.get_den()))));
}

Rational from_python(const py::handle& obj) {
    if (py::isinstance<py::str>(obj)) return parse_rational(obj.cast<std::string>());
    if (py::isinstance<py::int_>(obj)) return Rational(Integer(py::str(obj).cast<std::string>()));
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator"))
        return make_rational(Integer(py::str(obj.attr("numerator")).cast<std::string>()),
                             Integer(py::str(obj.attr("denominator")).cast<std::string>()));
    throw py::type_error("expected int, str or fractions.Fraction");
}

EngineConfig engine_config(int r_max, unsigned grid_bits, int max_passes, bool quasi_diagonal) {
    EngineConfig c;
    c.r_max = r_max;
    c.grid_bits = grid_bits;
    c.max_passes = max_passes;
    c.quasi_diagonal = quasi_diagonal;
    return c;
}

py::dict sigma_dict(const SigmaResult& s) {
    py::dict d;
    d["k"] = s.k;
    d["sigma"] = to_fraction(s.sigma);
    d["rho"] = to_fraction(s.rho);
    d["rho_display"] = render_rho(s.rho);
    d["argmax_s"] = s.argmax_s;
    d["sigma_classical"] = to_fraction(s.sigma_classical);
    d["sigma_weyl"] = to_fraction(s.sigma_weyl);
    d["tau_heath_brown"] = s.tau_hb ? to_fraction(*s.tau_hb) : py::none();
    d["maximizer_interior"] = s.maximizer_interior;
    return d;
}

py::object parse_json(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exponent tables, minor-arc exponents and brute-force oracles";
    m.attr("ENGINE_VERSION") = kEngineVersion;

    py::class_<ExponentTable>(m, "ExponentTable")
        .def_property_readonly("k", &ExponentTable::k)
        .def_property_readonly("s_max", &ExponentTable::s_max)
        .def_property_readonly("passes", &ExponentTable::passes)
        .def_property_readonly("converged", &ExponentTable::converged)
        .def("delta", [](const ExponentTable& t, int s) { return to_fraction(t.delta(s)); }, py::arg("s"))
        .def("source", [](const ExponentTable& t, int s) { return std::string(source_name(t.entry(s).source)); },
             py::arg("s"))
        .def("deltas", [](const ExponentTable& t) {
            py::list out;
            for (const auto& e : t.entries()) out.append(to_fraction(e.delta));
            return out;
        })
        .def("to_json", [](const ExponentTable& t) { return table_to_json(t, EngineConfig{}).dump(1); })
        .def("to_csv", &table_to_csv)
        .def_static("from_json", [](const std::string& text) { return table_from_json(nlohmann::json::parse(text)); })
        .def_static("from_csv", &table_from_csv, py::arg("csv"), py::arg("k"))
        .def("__eq__", [](const ExponentTable& a, const ExponentTable& b) { return a == b; })
        .def("__len__", &ExponentTable::s_max)
        .def("__repr__", [](const ExponentTable& t) {
            return "<ExponentTable k=" + std::to_string(t.k()) + " s_max=" + std::to_string(t.s_max()) +
                   " passes=" + std::to_string(t.passes()) + (t.converged() ? " converged>" : ">");
        });

    m.def("init_table", &init_table, py::arg("k"), py::arg("s_max"));
    m.def(
        "converge",
        [](int k, std::optional<int> s_max, int r_max, unsigned grid_bits, int max_passes, bool quasi_diagonal) {
            py::gil_scoped_release release;
            return converge(k, s_max.value_or(default_s_max(k)), engine_config(r_max, grid_bits, max_passes, quasi_diagonal));
        },
        py::arg("k"), py::arg("s_max") = py::none(), py::arg("r_max") = 0, py::arg("grid_bits") = 64u,
        py::arg("max_passes") = 100, py::arg("quasi_diagonal") = true);
    m.def(
        "refine_pass", [](ExponentTable& t) { return refine_pass(t); }, py::arg("table"));
    m.def(
        "phi_theta",
        [](int k, const py::object& delta) {
            const ThetaResult r = phi_theta(k, from_python(delta));
            return py::make_tuple(to_fraction(r.theta), r.j_min);
        },
        py::arg("k"), py::arg("delta"));
    m.def(
        "differencing_candidate", [](int k, const py::object& d) { return to_fraction(differencing_candidate(k, from_python(d))); },
        py::arg("k"), py::arg("delta"));
    m.def("check_table_invariants", &check_table_invariants, py::arg("table"));

    m.def(
        "sigma", [](const ExponentTable& lower, int k) { return sigma_dict(sigma_of_k(lower, k)); },
        py::arg("table_km1"), py::arg("k"));
    m.def(
        "gtilde_bound",
        [](const ExponentTable& t, const py::object& sigma) {
            const GtildeResult g = gtilde_bound(t, from_python(sigma));
            py::dict d;
            d["k"] = g.k;
            d["bound"] = py::int_(py::str(to_string(g.bound)));
            d["m"] = g.best_m;
            d["s"] = g.best_s;
            return d;
        },
        py::arg("table"), py::arg("sigma"));
    m.def(
        "reproduce",
        [](std::optional<std::string> cache_dir, bool use_cache, std::string policy) {
            RunConfig cfg;
            cfg.cache_dir = cache_dir;
            cfg.use_cache = use_cache;
            auto p = parse_policy(policy);
            if (!p) throw py::value_error("policy must be 'theorem' or 'best-known'");
            cfg.policy = *p;
            nlohmann::json j;
            {
                py::gil_scoped_release release;
                TableProvider tables(cfg);
                j = to_json(reproduce(tables));
            }
            return parse_json(j);
        },
        py::arg("cache_dir") = py::none(), py::arg("use_cache") = true, py::arg("policy") = "best-known");
    m.def(
        "verify",
        [](std::uint64_t seed, std::vector<std::string> only) { return parse_json(to_json(run_verify(seed, only), seed)); },
        py::arg("seed") = 1, py::arg("only") = std::vector<std::string>{});

    auto o = m.def_submodule("oracles", "Brute-force counting and exponential sums");
    o.def(
        "weyl_sum", [](int k, double alpha, std::int64_t P) { return oracles::weyl_sum(k, alpha, P); }, py::arg("k"),
        py::arg("alpha"), py::arg("P"));
    o.def(
        "multi_weyl_sum", [](std::vector<double> a, std::int64_t P) { return oracles::multi_weyl_sum(a, P); },
        py::arg("alphas"), py::arg("P"));
    o.def(
        "mean_value_count", [](int s, int k, std::int64_t P) { return oracles::mean_value_count(s, k, P); },
        py::arg("s"), py::arg("k"), py::arg("P"));
    o.def(
        "upsilon_direct",
        [](int b, int r, std::int64_t P) {
            const auto u = oracles::upsilon_direct(b, r, P);
            return py::make_tuple(u.max_count, u.argmax);
        },
        py::arg("b"), py::arg("r"), py::arg("P"));
    o.def("upsilon32_reduced", &oracles::upsilon32_reduced, py::arg("P"), py::arg("n1"), py::arg("n2"));
    o.def(
        "minor_arc_membership",
        [](double alpha, std::int64_t P, double theta, int k) {
            const auto w = oracles::minor_arc_membership(alpha, P, theta, k);
            return py::make_tuple(w.in_minor, py::int_(py::str(to_string(w.a))), py::int_(py::str(to_string(w.q))));
        },
        py::arg("alpha"), py::arg("P"), py::arg("theta"), py::arg("k"));
    o.def("omega_r", &oracles::omega_r, py::arg("q"), py::arg("P"), py::arg("r"), py::arg("k"));

    py::register_exception<TableFormatError>(m, "TableFormatError", PyExc_ValueError);
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lorenz/laps.hpp"
#include "lorenz/spectral.hpp"
#include "lorenz/sweep.hpp"

namespace py = pybind11;
using namespace lorenz;

namespace {

// Accepts str ("3/5", "1.1"), int, float or fractions.Fraction; floats go
// through their shortest repr, so 0.6 means 3/5.
Rational to_rational(const py::handle& value) {
    if (py::isinstance<py::float_>(value)) {
        return parse_rational(py::repr(value).cast<std::string>());
    }
    return parse_rational(py::str(value).cast<std::string>());
}

py::object to_fraction(const Rational& value) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(value.get_str());
}

py::object to_pyint(const BigInt& value) { return py::module_::import("builtins").attr("int")(value.get_str()); }

NumericMode to_mode(const std::string& mode) {
    if (mode == "exact") return NumericMode::Exact;
    if (mode == "float") return NumericMode::Float;
    throw InvalidArgument("mode must be 'exact' or 'float'");
}

Side to_side(const std::string& side) {
    if (side == "upper") return Side::Upper;
    if (side == "lower") return Side::Lower;
    throw InvalidArgument("side must be 'upper' or 'lower'");
}

py::object optional_size(const std::optional<std::size_t>& v) { return v ? py::cast(*v) : py::none(); }

template <class Error>
py::object bind_error(py::module_& m, const char* name, py::handle base) {
    return py::register_exception<Error>(m, name, base);
}

}  // namespace

PYBIND11_MODULE(lorenz_entropy, m) {
    m.doc() = "Topological entropy of Lorenz maps from kneading sequences and lap growth";

    py::object lorenz_error = bind_error<LorenzError>(m, "LorenzError", PyExc_RuntimeError);
    py::object invalid = bind_error<InvalidArgument>(m, "InvalidArgument", lorenz_error);
    py::object invalid_branch = bind_error<InvalidBranch>(m, "InvalidBranch", invalid);
    bind_error<InvalidSlopes>(m, "InvalidSlopes", invalid_branch);
    bind_error<DomainError>(m, "DomainError", invalid);
    bind_error<ModeError>(m, "ModeError", invalid);
    bind_error<LengthMismatch>(m, "LengthMismatch", invalid);
    bind_error<MissingPeriodicForm>(m, "MissingPeriodicForm", invalid);
    bind_error<RangeError>(m, "RangeError", invalid);
    bind_error<GridMismatch>(m, "GridMismatch", invalid);
    bind_error<InsufficientData>(m, "InsufficientData", invalid);
    bind_error<ParseError>(m, "ParseError", invalid);
    bind_error<NoRootFound>(m, "NoRootFound", lorenz_error);
    bind_error<ResourceLimit>(m, "ResourceLimit", lorenz_error);

    py::class_<BranchPair>(m, "BranchPair")
        .def_static("affine", [](const py::object& b0, const py::object& b1) {
            return make_affine_pair(to_rational(b0), to_rational(b1));
        }, py::arg("b0"), py::arg("b1"))
        .def_static("uniform", [](const py::object& b) { return make_uniform_pair(to_rational(b)); }, py::arg("b"))
        .def_static("from_json", [](const std::string& text) { return branch_pair_from_json(text); })
        .def("to_json", &branch_pair_to_json)
        .def_property_readonly("a", [](const BranchPair& bp) { return to_fraction(bp.a()); })
        .def_property_readonly("b", [](const BranchPair& bp) { return to_fraction(bp.b()); })
        .def_property_readonly("c_min", [](const BranchPair& bp) { return to_fraction(bp.c_min()); })
        .def_property_readonly("c_max", [](const BranchPair& bp) { return to_fraction(bp.c_max()); })
        .def("eval", [](const BranchPair& bp, int i, const py::object& x) {
            if (i != 0 && i != 1) throw InvalidArgument("branch index must be 0 or 1");
            return to_fraction(eval_branch(bp, i, to_rational(x)));
        }, py::arg("i"), py::arg("x"))
        .def("inverse", [](const BranchPair& bp, int i, const py::object& y) {
            if (i != 0 && i != 1) throw InvalidArgument("branch index must be 0 or 1");
            return to_fraction(inverse_branch(bp, i, to_rational(y)));
        }, py::arg("i"), py::arg("y"))
        .def("__repr__", [](const BranchPair& bp) {
            return "BranchPair(a=" + to_string(bp.a()) + ", b=" + to_string(bp.b()) + ")";
        });

    py::class_<EntropyEstimate>(m, "EntropyEstimate")
        .def_readonly("entropy", &EntropyEstimate::entropy)
        .def_readonly("gamma", &EntropyEstimate::gamma)
        .def_property_readonly("method", [](const EntropyEstimate& e) { return std::string(to_string(e.method)); })
        .def_readonly("order", &EntropyEstimate::order)
        .def_readonly("error_bound", &EntropyEstimate::error_bound)
        .def_readonly("certified", &EntropyEstimate::certified)
        .def("__repr__", [](const EntropyEstimate& e) {
            std::ostringstream os;
            os.precision(12);
            os << "EntropyEstimate(entropy=" << e.entropy << ", method=" << to_string(e.method)
               << ", order=" << e.order << ", error_bound=" << e.error_bound << ")";
            return os.str();
        });

    m.def("orbit", [](const BranchPair& bp, const py::object& p, const py::object& x, std::size_t n,
                      const std::string& side) {
        const LorenzMap lm(bp, to_rational(p), to_side(side));
        py::list out;
        for (const Rational& v : orbit(lm, to_rational(x), n)) out.append(to_fraction(v));
        return out;
    }, py::arg("bp"), py::arg("p"), py::arg("x"), py::arg("n"), py::arg("side") = "upper",
       "Exact orbit [x, T(x), ..., T^n(x)] as Fractions.");

    m.def("kneading", [](const BranchPair& bp, const py::object& p, std::size_t n, const std::string& mode) {
        const KneadingPair kp = kneading_prefixes(bp, to_rational(p), n, to_mode(mode));
        py::dict out;
        out["alpha"] = kp.alpha.to_string();
        out["beta"] = kp.beta.to_string();
        out["alpha_period"] = optional_size(kp.alpha_period);
        out["beta_period"] = optional_size(kp.beta_period);
        out["exact"] = kp.exact;
        return out;
    }, py::arg("bp"), py::arg("p"), py::arg("n") = 64, py::arg("mode") = "exact",
       "Kneading prefixes alpha|n and beta|n with any detected periods.");

    m.def("tail_bound", &tail_bound, py::arg("x"), py::arg("n"));

    m.def("xi_eval", [](const std::vector<int>& coeffs, double x) { return xi_eval(XiPolynomial(coeffs), x); },
          py::arg("coeffs"), py::arg("x"));

    m.def("max_root", [](const std::vector<int>& coeffs, double lo, double hi, double tol) {
        const RootResult r = max_root(XiPolynomial(coeffs), lo, hi, tol);
        py::dict out;
        out["gamma"] = r.gamma;
        out["residual"] = r.residual;
        out["bracket"] = py::make_tuple(r.bracket_lo, r.bracket_hi);
        out["kind"] = r.kind == RootKind::OddCrossing ? "odd-crossing" : "tangential";
        return out;
    }, py::arg("coeffs"), py::arg("lo"), py::arg("hi") = 2.0, py::arg("tol") = 1e-10);

    m.def("entropy_spectral", [](const BranchPair& bp, const py::object& p, std::size_t n, double tol,
                                 const std::string& mode) {
        const Rational pr = to_rational(p);
        const NumericMode nm = to_mode(mode);
        py::gil_scoped_release release;
        return entropy_spectral(bp, pr, n, tol, nm);
    }, py::arg("bp"), py::arg("p"), py::arg("n") = 500, py::arg("tol") = 1e-7, py::arg("mode") = "exact");

    m.def("entropy_laps", [](const BranchPair& bp, const py::object& p, std::size_t n, std::size_t window,
                             const std::string& mode, std::size_t class_cap) {
        const LorenzMap lm(bp, to_rational(p), Side::Upper);
        const NumericMode nm = to_mode(mode);
        py::gil_scoped_release release;
        return entropy_laps(lm, n, window, nm, class_cap).estimate;
    }, py::arg("bp"), py::arg("p"), py::arg("n") = 50, py::arg("window") = 10, py::arg("mode") = "exact",
       py::arg("class_cap") = kDefaultClassCap);

    m.def("lap_count", [](const BranchPair& bp, const py::object& p, std::size_t n, const std::string& mode,
                          std::size_t class_cap) {
        const LorenzMap lm(bp, to_rational(p), Side::Upper);
        const LapCount lc = lap_count(lm, n, to_mode(mode), class_cap);
        py::dict out;
        out["step"] = lc.step;
        out["laps"] = to_pyint(lc.laps);
        out["variation"] = lc.variation;
        out["log_variation"] = lc.log_variation;
        out["variation_exact"] = lc.variation_exact ? to_fraction(*lc.variation_exact) : py::none();
        out["classes"] = lc.classes;
        return out;
    }, py::arg("bp"), py::arg("p"), py::arg("n"), py::arg("mode") = "exact", py::arg("class_cap") = kDefaultClassCap,
       "Number of laps and total variation of T^n.");

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("p", &SweepRecord::p)
        .def_property_readonly("p_exact", [](const SweepRecord& r) { return to_fraction(r.p_exact); })
        .def_readonly("estimate", &SweepRecord::estimate)
        .def_property_readonly("entropy", [](const SweepRecord& r) { return r.estimate.entropy; })
        .def_property_readonly("status", [](const SweepRecord& r) { return std::string(to_string(r.status)); })
        .def_property_readonly("ok", &SweepRecord::ok);

    py::class_<NonMonotoneFeature>(m, "Feature")
        .def_readonly("p_low", &NonMonotoneFeature::p_low)
        .def_readonly("p_high", &NonMonotoneFeature::p_high)
        .def_readonly("p_extremum", &NonMonotoneFeature::p_extremum)
        .def_readonly("prominence", &NonMonotoneFeature::prominence)
        .def_property_readonly("direction", [](const NonMonotoneFeature& f) {
            return f.direction == FeatureDirection::Dip ? "dip" : "bump";
        })
        .def_readonly("confirmed", &NonMonotoneFeature::confirmed)
        .def_readonly("cross_prominence", &NonMonotoneFeature::cross_prominence)
        .def_readonly("combined_error", &NonMonotoneFeature::combined_error);

    m.def("sweep", [](const BranchPair& bp, const py::object& p_min, const py::object& p_max, std::size_t points,
                      const std::string& method, std::size_t n, double tol, std::size_t window,
                      const std::string& mode, std::size_t workers) {
        SweepParams params;
        params.method = parse_method(method);
        if (params.method == Method::Spectral) {
            params.spectral_order = n;
        } else {
            params.laps_order = n;
        }
        params.tol = tol;
        params.window = window;
        params.mode = to_mode(mode);
        params.workers = workers;
        const Rational lo = to_rational(p_min);
        const Rational hi = to_rational(p_max);
        py::gil_scoped_release release;
        return sweep(bp, lo, hi, points, params);
    }, py::arg("bp"), py::arg("p_min"), py::arg("p_max"), py::arg("points"), py::arg("method") = "spectral",
       py::arg("n") = 500, py::arg("tol") = 1e-7, py::arg("window") = 10, py::arg("mode") = "exact",
       py::arg("workers") = 0, "Entropy over an equally spaced grid of p; failures are recorded per point.");

    m.def("detect_nonmonotonic", &detect_nonmonotonic, py::arg("records"), py::arg("prominence_tol"));

    m.def("continuity_modulus", [](const std::vector<SweepRecord>& records) {
        const ContinuityModulus c = continuity_modulus(records);
        return py::make_tuple(c.max_jump, c.argmax_p);
    }, py::arg("records"), "(max |h_{i+1} - h_i|, p where it occurs).");

    m.def("compare_methods", [](const std::vector<SweepRecord>& s1, const std::vector<SweepRecord>& s2,
                                double p_tol) {
        const MethodComparison c = compare_methods(s1, s2, p_tol);
        py::dict out;
        out["max_abs_diff"] = c.max_abs_diff;
        out["mean_abs_diff"] = c.mean_abs_diff;
        out["worst_p"] = c.worst_p;
        out["compared"] = c.compared;
        return out;
    }, py::arg("s1"), py::arg("s2"), py::arg("p_tol") = 0.0);

    m.def("records_to_json", &records_to_json, py::arg("records"));
}

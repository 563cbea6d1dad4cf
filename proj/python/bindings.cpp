#include "mscz/encodings.hpp"
#include "mscz/gate_analysis.hpp"
#include "mscz/metasurface.hpp"
#include "mscz/serialization.hpp"
#include "mscz/sweep.hpp"
#include "mscz/version.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace mscz;

namespace {

using NumpyMatrix = py::array_t<std::complex<double>>;

NumpyMatrix to_numpy(const ComplexMatrix& m) {
    NumpyMatrix arr({m.rows(), m.cols()});
    auto buf = arr.mutable_unchecked<2>();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) buf(r, c) = m(r, c);
    return arr;
}

NumpyMatrix vector_to_numpy(const std::vector<cdouble>& v) {
    NumpyMatrix arr(v.size());
    auto buf = arr.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) buf(i) = v[i];
    return arr;
}

ComplexMatrix from_numpy(const py::array& input) {
    auto arr = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>::ensure(
        input);
    if (!arr || arr.ndim() != 2) throw std::invalid_argument("expected a 2-d complex array");
    ComplexMatrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    auto buf = arr.unchecked<2>();
    for (py::ssize_t r = 0; r < arr.shape(0); ++r)
        for (py::ssize_t c = 0; c < arr.shape(1); ++c)
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = buf(r, c);
    return m;
}

std::vector<cdouble> vector_from_numpy(const py::array& input) {
    auto arr = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>::ensure(
        input);
    if (!arr || arr.ndim() != 1) throw std::invalid_argument("expected a 1-d complex array");
    std::vector<cdouble> v(static_cast<std::size_t>(arr.shape(0)));
    auto buf = arr.unchecked<1>();
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) v[static_cast<std::size_t>(i)] = buf(i);
    return v;
}

std::vector<QubitKet> kets_from_string(const std::string& kets) {
    std::vector<QubitKet> out;
    out.reserve(kets.size());
    for (char c : kets) out.push_back(QubitKet::parse(c));
    return out;
}

TruthBasis basis_from_string(const std::string& name) {
    if (name == "standard") return TruthBasis::standard;
    if (name == "hadamard_st") return TruthBasis::hadamard_st;
    throw std::invalid_argument("unknown basis '" + name + "'");
}

py::dict truth_table_row_dict(const TruthTableRow& row) {
    py::dict d;
    d["input"] = row.input_label;
    d["output"] = row.dominant_label;
    d["phase"] = row.phase;
    d["success_probability"] = row.success_probability;
    d["amplitudes"] = vector_to_numpy(row.output.amplitudes);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fock-state simulator for metasurface parallel-beam-splitter CZ gates";
    m.attr("__version__") = kVersion;

    py::class_<PhotonicState>(m, "PhotonicState")
        .def_static(
            "single_term",
            [](const std::vector<int>& occupations, std::complex<double> amplitude) {
                return PhotonicState::single_term(FockState(occupations), amplitude);
            },
            py::arg("occupations"), py::arg("amplitude") = std::complex<double>(1.0, 0.0))
        .def_property_readonly("n_modes", &PhotonicState::n_modes)
        .def_property_readonly("photon_number", &PhotonicState::photon_number)
        .def("squared_norm", &PhotonicState::squared_norm)
        .def("terms",
             [](const PhotonicState& s) {
                 py::dict d;
                 for (const auto& [f, c] : s.terms()) d[py::tuple(py::cast(f.occupations()))] = c;
                 return d;
             })
        .def("__len__", &PhotonicState::term_count)
        .def("__repr__", [](const PhotonicState& s) {
            return "<PhotonicState " + std::to_string(s.photon_number()) + " photons over " +
                   std::to_string(s.n_modes()) + " modes, " + std::to_string(s.term_count()) +
                   " terms>";
        });

    py::class_<SplitterSpec>(m, "SplitterSpec")
        .def_static("from_ratio", &SplitterSpec::from_ratio, py::arg("pair_order"),
                    py::arg("ratio"), py::arg("efficiency") = 1.0)
        .def_readonly("pair_order", &SplitterSpec::pair_order)
        .def_readonly("t", &SplitterSpec::t)
        .def_readonly("r", &SplitterSpec::r)
        .def_readonly("efficiency", &SplitterSpec::efficiency)
        .def_property_readonly("ratio", &SplitterSpec::ratio);

    py::class_<MetasurfaceConfig>(m, "MetasurfaceConfig")
        .def(py::init([](int order_min, int order_max, double ratio, double efficiency,
                         double conversion_efficiency) {
                 MetasurfaceConfig cfg;
                 cfg.order_min = order_min;
                 cfg.order_max = order_max;
                 cfg.default_ratio = ratio;
                 cfg.global_efficiency = efficiency;
                 cfg.conversion_efficiency = conversion_efficiency;
                 cfg.validate();
                 return cfg;
             }),
             py::arg("order_min") = -1, py::arg("order_max") = 2,
             py::arg("ratio") = 1.0 / 3.0, py::arg("efficiency") = 1.0,
             py::arg("conversion_efficiency") = 1.0)
        .def_static("ideal", &MetasurfaceConfig::ideal, py::arg("order_min"), py::arg("order_max"))
        .def_readwrite("order_min", &MetasurfaceConfig::order_min)
        .def_readwrite("order_max", &MetasurfaceConfig::order_max)
        .def_readwrite("ratio", &MetasurfaceConfig::default_ratio)
        .def_readwrite("efficiency", &MetasurfaceConfig::global_efficiency)
        .def_readwrite("conversion_efficiency", &MetasurfaceConfig::conversion_efficiency)
        .def("add_override",
             [](MetasurfaceConfig& cfg, int pair_order, double ratio, double efficiency) {
                 cfg.overrides.push_back(SplitterSpec::from_ratio(pair_order, ratio, efficiency));
             },
             py::arg("pair_order"), py::arg("ratio"), py::arg("efficiency") = 1.0)
        .def("to_json", [](const MetasurfaceConfig& cfg) { return config_to_json(cfg).dump(2); })
        .def_static(
            "from_json",
            [](const std::string& text, const MetasurfaceConfig& defaults) {
                return config_from_json(ordered_json::parse(text), defaults);
            },
            py::arg("text"), py::arg("defaults") = MetasurfaceConfig{})
        .def("__eq__", [](const MetasurfaceConfig& a, const MetasurfaceConfig& b) { return a == b; });

    py::class_<ModeUnitary>(m, "ModeUnitary")
        .def_property_readonly("matrix", [](const ModeUnitary& u) { return to_numpy(u.matrix()); })
        .def_property_readonly("lossless", &ModeUnitary::lossless)
        .def_property_readonly("dim", &ModeUnitary::dim)
        .def_property_readonly("mode_labels",
                               [](const ModeUnitary& u) { return u.basis().labels(); })
        .def("__repr__", [](const ModeUnitary& u) {
            return "<ModeUnitary dim=" + std::to_string(u.dim()) +
                   (u.lossless() ? " lossless>" : " lossy>");
        });

    py::class_<QubitEncoding>(m, "QubitEncoding")
        .def_property_readonly("n_qubits", &QubitEncoding::n_qubits)
        .def_property_readonly("qubit_labels", &QubitEncoding::qubit_labels)
        .def_property_readonly("mode_labels",
                               [](const QubitEncoding& e) { return e.basis().labels(); })
        .def("qubit_modes",
             [](const QubitEncoding& e) {
                 py::dict d;
                 for (const auto& q : e.qubits())
                     d[py::str(q.label)] =
                         py::make_tuple(to_string(q.zero_mode), to_string(q.one_mode));
                 return d;
             })
        .def_property_readonly("auxiliary_modes", [](const QubitEncoding& e) {
            std::vector<std::string> out;
            for (const auto& m_ : e.auxiliary()) out.push_back(to_string(m_));
            return out;
        });

    py::class_<FidelityReport>(m, "FidelityReport")
        .def_readonly("process_fidelity", &FidelityReport::process_fidelity)
        .def_readonly("mean_success_probability", &FidelityReport::mean_success_probability)
        .def_readonly("per_input_success", &FidelityReport::per_input_success);

    py::class_<GhzReport>(m, "GhzReport")
        .def_readonly("success_probability", &GhzReport::success_probability)
        .def_readonly("fidelity_vs_ghz", &GhzReport::fidelity_vs_ghz)
        .def_property_readonly(
            "amplitudes", [](const GhzReport& r) { return vector_to_numpy(r.state.amplitudes); });

    py::class_<FactorizationReport>(m, "FactorizationReport")
        .def_readonly("max_deviation", &FactorizationReport::max_deviation)
        .def_readonly("joint_success_probability",
                      &FactorizationReport::joint_success_probability)
        .def_property_readonly(
            "joint_matrix", [](const FactorizationReport& r) { return to_numpy(r.joint.matrix); })
        .def_property_readonly(
            "gate_a_matrix",
            [](const FactorizationReport& r) { return to_numpy(r.gate_a.matrix); })
        .def_property_readonly("gate_b_matrix", [](const FactorizationReport& r) {
            return to_numpy(r.gate_b.matrix);
        });

    m.def(
        "permanent", [](const py::array& m_) { return permanent(from_numpy(m_)); },
        "Matrix permanent via Ryser's formula (n <= 16)", py::arg("matrix"));

    m.def(
        "enumerate_fock_basis",
        [](int n_modes, int n_photons) {
            py::list out;
            for (const auto& f : enumerate_fock_basis(n_modes, n_photons))
                out.append(py::tuple(py::cast(f.occupations())));
            return out;
        },
        py::arg("n_modes"), py::arg("n_photons"));

    m.def(
        "evolve",
        [](const PhotonicState& s, const py::object& u) {
            if (py::isinstance<ModeUnitary>(u)) return evolve(s, u.cast<const ModeUnitary&>());
            return evolve(s, from_numpy(u.cast<py::array>()));
        },
        py::arg("state"), py::arg("unitary"));

    m.def(
        "evolve_bruteforce",
        [](const PhotonicState& s, const py::object& u) {
            if (py::isinstance<ModeUnitary>(u))
                return evolve_bruteforce(s, u.cast<const ModeUnitary&>());
            return evolve_bruteforce(s, from_numpy(u.cast<py::array>()));
        },
        py::arg("state"), py::arg("unitary"));

    m.def("build_parallel_bs", &build_parallel_bs, py::arg("config"));
    m.def("perturb_ratio", &perturb_ratio, py::arg("config"), py::arg("delta"));
    m.def("apply_conversion_deficit", &apply_conversion_deficit, py::arg("config"),
          py::arg("eta_conv"));

    m.def("polarization_cz_encoding", &polarization_cz_encoding);
    m.def("cascaded_encoding", &cascaded_encoding);
    m.def("path_cz_encoding", &path_cz_encoding);
    m.def(
        "cz_encoding_on_paths",
        [](int control_order, const ModeUnitary& u, const std::string& suffix) {
            return cz_encoding_on_paths(control_order, u.basis(), suffix);
        },
        py::arg("control_order"), py::arg("unitary"), py::arg("label_suffix") = "");

    m.def(
        "inject",
        [](const std::string& kets, const QubitEncoding& enc) {
            return inject(kets_from_string(kets), enc);
        },
        "Inject a product state given per-qubit characters from '01+-'", py::arg("kets"),
        py::arg("encoding"));

    m.def(
        "post_select",
        [](const PhotonicState& s, const QubitEncoding& enc) {
            PostSelection sel = post_select(s, enc);
            return py::make_tuple(vector_to_numpy(sel.logical.amplitudes),
                                  sel.success_probability);
        },
        "Returns (unnormalized logical amplitudes, success probability)", py::arg("state"),
        py::arg("encoding"));

    m.def(
        "truth_table",
        [](const ModeUnitary& u, const QubitEncoding& enc, const std::string& basis) {
            const TruthTable table = truth_table(u, enc, basis_from_string(basis));
            py::list rows;
            for (const auto& row : table.rows) rows.append(truth_table_row_dict(row));
            return rows;
        },
        py::arg("unitary"), py::arg("encoding"), py::arg("basis") = "standard");

    m.def(
        "extract_operator",
        [](const ModeUnitary& u, const QubitEncoding& enc) {
            return to_numpy(extract_operator(u, enc).matrix);
        },
        py::arg("unitary"), py::arg("encoding"));

    m.def(
        "process_fidelity",
        [](const py::array& a, const py::array& ideal) {
            ComplexMatrix am = from_numpy(a);
            const std::size_t dim = am.rows();
            return process_fidelity(PostSelectedOperator{dim, std::move(am)}, from_numpy(ideal));
        },
        py::arg("operator"), py::arg("ideal"));

    m.def("ideal_cz", [] { return to_numpy(ideal_cz()); });
    m.def("ideal_cascaded_unitary", [] { return to_numpy(ideal_cascaded_unitary()); });

    m.def("ghz_prepare", &ghz_prepare, py::arg("unitary"), py::arg("encoding"));
    m.def(
        "reduced_purity",
        [](const py::array& amplitudes, int qubit) {
            std::vector<cdouble> v = vector_from_numpy(amplitudes);
            int nq = 0;
            while ((std::size_t{1} << nq) < v.size()) ++nq;
            return reduced_purity(LogicalState(nq, std::move(v)), qubit);
        },
        py::arg("amplitudes"), py::arg("qubit"));

    m.def("independent_gates_check", &independent_gates_check, py::arg("unitary"),
          py::arg("encoding_a"), py::arg("encoding_b"));

    m.def(
        "run_sweep",
        [](const std::string& parameter, double min, double max, int steps,
           const std::string& scenario, const py::object& base) {
            SweepSpec spec;
            spec.parameter = parse_sweep_parameter(parameter);
            spec.scenario = parse_scenario(scenario);
            spec.min = min;
            spec.max = max;
            spec.steps = steps;
            const MetasurfaceConfig cfg = base.is_none() ? default_config(spec.scenario)
                                                         : base.cast<MetasurfaceConfig>();
            py::list out;
            for (const auto& row : run_sweep(spec, cfg)) {
                py::dict d;
                d["value"] = row.value;
                d["process_fidelity"] = row.process_fidelity;
                d["mean_success_probability"] = row.mean_success_probability;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("parameter"), py::arg("min"), py::arg("max"), py::arg("steps"),
        py::arg("scenario") = "single_cz", py::arg("config") = py::none());

    m.def("default_config",
          [](const std::string& scenario) { return default_config(parse_scenario(scenario)); },
          py::arg("scenario") = "single_cz");
}

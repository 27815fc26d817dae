// Python bindings for the main operations: load/build/save universes,
// analyze, verify, sweep, and sample. JSON-shaped results cross the boundary
// as native dicts/lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "icl/builder.hpp"
#include "icl/measures.hpp"
#include "icl/report.hpp"
#include "icl/sampler.hpp"
#include "icl/universe.hpp"
#include "icl/verifier.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(json_to_py(v));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

json py_to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        json out = json::object();
        for (const auto& item : obj.cast<py::dict>())
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        return out;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        json out = json::array();
        for (const auto& item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw py::type_error("unsupported value in spec/universe document");
}

icl::Universe build_from_py(const py::dict& spec) {
    const icl::BuildSpec s = icl::BuildSpec::from_json(py_to_json(spec));
    return s.require_perfect_control ? icl::build_perfect_control_universe(s)
                                     : icl::build_universe(s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "interaction-closed Markov universes: exact construction and analysis";

    py::register_exception<icl::Error>(m, "IclError");

    py::class_<icl::Universe>(m, "Universe")
        .def_property_readonly("n", [](const icl::Universe& u) { return u.P.size(); })
        .def_property_readonly("stationary",
                               [](const icl::Universe& u) {
                                   std::vector<double> pi;
                                   for (int x = 0; x < u.stationary.size(); ++x)
                                       pi.push_back(u.stationary[x]);
                                   return pi;
                               })
        .def_property_readonly("channel_names",
                               [](const icl::Universe& u) {
                                   std::vector<std::string> names;
                                   for (const auto& [name, ch] : u.channels) names.push_back(name);
                                   return names;
                               })
        .def("kernel",
             [](const icl::Universe& u) {
                 std::vector<std::vector<double>> rows(static_cast<size_t>(u.P.size()));
                 for (int xp = 0; xp < u.P.size(); ++xp)
                     for (int x = 0; x < u.P.size(); ++x) rows[static_cast<size_t>(xp)].push_back(u.P(xp, x));
                 return rows;
             },
             "transition kernel as rows indexed by the next state")
        .def("digest", [](const icl::Universe& u) { return icl::universe_digest(u); })
        .def("to_dict", [](const icl::Universe& u) { return json_to_py(icl::universe_to_json(u)); })
        .def("__repr__", [](const icl::Universe& u) {
            return "<Universe n=" + std::to_string(u.P.size()) + " digest=" + icl::universe_digest(u) + ">";
        });

    m.def("example_universe", &icl::example_universe, "the 6-state worked instance");
    m.def("load_universe", &icl::load_universe, py::arg("path"));
    m.def("save_universe", &icl::save_universe, py::arg("universe"), py::arg("path"));
    m.def("universe_from_dict",
          [](const py::dict& doc) { return icl::universe_from_json(py_to_json(doc)); },
          py::arg("doc"));
    m.def("build_universe", &build_from_py, py::arg("spec"),
          "construct a universe from a build-spec dict");
    m.def("coinciding_universe",
          [](int n, const std::vector<std::vector<int>>& blocks1, double alpha, std::uint64_t seed) {
              std::vector<std::vector<int>> blocks0;
              for (const auto& blk : blocks1) {
                  std::vector<int> b;
                  for (const int s : blk) b.push_back(s - 1);
                  blocks0.push_back(std::move(b));
              }
              return icl::coinciding_universe(n, blocks0, icl::FillSpec::dirichlet(alpha), seed);
          },
          py::arg("n"), py::arg("blocks"), py::arg("alpha") = 1.0, py::arg("seed") = 0,
          "blocks use 1-based states");

    m.def("analyze",
          [](const icl::Universe& u, double tol) { return json_to_py(icl::analysis_report(u, tol)); },
          py::arg("universe"), py::arg("tol") = icl::kClosureTol);
    m.def("transfer_entropy",
          [](const icl::Universe& u) { return icl::transfer_entropy(u.joint(), "S", "M"); },
          py::arg("universe"), "one-step transfer entropy S -> M in bits");
    m.def("verify",
          [](const icl::Universe& u) {
              json reports = json::array();
              bool pass = true;
              for (const auto& rep : icl::run_all_verifiers(u)) {
                  pass = pass && rep.pass;
                  reports.push_back(rep.to_json());
              }
              return py::make_tuple(pass, json_to_py(reports));
          },
          py::arg("universe"), "run all theorem verifiers; returns (pass, reports)");
    m.def("sweep",
          [](int count, int n_min, int n_max, int k_min, int k_max, std::uint64_t seed) {
              icl::SweepOptions opts;
              opts.count = count;
              opts.n_min = n_min;
              opts.n_max = n_max;
              opts.k_min = k_min;
              opts.k_max = k_max;
              opts.seed = seed;
              return json_to_py(icl::sweep(opts).to_json());
          },
          py::arg("count"), py::arg("n_min") = 4, py::arg("n_max") = 12, py::arg("k_min") = 2,
          py::arg("k_max") = 3, py::arg("seed") = 0);
    m.def("sample",
          [](const icl::Universe& u, long T, std::uint64_t seed) {
              const icl::Trajectory traj = icl::sample_trajectory(u, T, seed);
              py::dict out;
              std::vector<int> x1, s1, m1;
              for (long t = 0; t < traj.length(); ++t) {
                  x1.push_back(traj.x[static_cast<size_t>(t)] + 1);
                  s1.push_back(traj.s[static_cast<size_t>(t)] + 1);
                  m1.push_back(traj.m[static_cast<size_t>(t)] + 1);
              }
              out["x"] = x1;
              out["s"] = s1;
              out["m"] = m1;
              out["rng"] = traj.rng_name;
              if (T >= 2) {
                  py::list measures;
                  for (const auto& cmp : icl::empirical_measures(traj, u)) {
                      py::dict d;
                      d["name"] = cmp.name;
                      d["empirical"] = cmp.empirical;
                      d["exact"] = cmp.exact;
                      d["gap"] = cmp.gap();
                      measures.append(d);
                  }
                  out["measures"] = measures;
              }
              return out;
          },
          py::arg("universe"), py::arg("T"), py::arg("seed") = 0,
          "seeded trajectory (1-based states) with empirical-vs-exact measures");
}

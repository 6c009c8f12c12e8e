#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pointing/corpus.hpp"
#include "pointing/error.hpp"
#include "pointing/geometry.hpp"
#include "pointing/harness.hpp"
#include "pointing/plot.hpp"
#include "pointing/resolver.hpp"
#include "pointing/sampler.hpp"
#include "pointing/stats.hpp"

namespace py = pybind11;
using namespace pointing;

namespace {

ContingencyTable to_table(const std::vector<std::vector<std::int64_t>>& counts) {
  ContingencyTable t;
  t.counts = counts;
  return t;
}

py::dict result_dict(const TestResult& r) {
  py::dict d;
  d["statistic"] = r.statistic;
  d["dof"] = r.dof ? py::object(py::int_(*r.dof)) : py::object(py::none());
  d["p_value"] = r.p_value;
  return d;
}

Condition make_condition(const std::string& kind, double cone, const std::string& intent,
                         const std::string& robot, bool speech, bool reverse, bool gravity,
                         const std::string& verb) {
  RefVsLoc base{robot_from_string(robot), speech, reverse, cone, intent_from_string(intent)};
  if (kind == "ref-vs-loc") return base;
  if (kind == "cluttered") return Cluttered{cone};
  if (kind == "natural") return NaturalVsUnnatural{gravity};
  if (kind == "verb") return VerbVariant{verb_from_string(verb), base};
  throw Error(ErrorCode::InvalidArgument, "unknown condition '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pointing gesture interpretation: geometry, resolution, trials and statistics";

  static py::exception<Error> error(m, "PointingError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<Vec3>(m, "Vec3")
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("x", &Vec3::x)
      .def_readwrite("y", &Vec3::y)
      .def_readwrite("z", &Vec3::z)
      .def("__repr__", [](const Vec3& v) {
        return "Vec3(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
      });

  py::class_<SurfacePoint>(m, "SurfacePoint")
      .def(py::init<double, double>(), py::arg("u"), py::arg("v"))
      .def_readwrite("u", &SurfacePoint::u)
      .def_readwrite("v", &SurfacePoint::v)
      .def("__iter__", [](const SurfacePoint& p) { return py::iter(py::make_tuple(p.u, p.v)); })
      .def("__eq__", [](const SurfacePoint& a, const SurfacePoint& b) { return a == b; })
      .def("__repr__", [](const SurfacePoint& p) {
        return "SurfacePoint(" + std::to_string(p.u) + ", " + std::to_string(p.v) + ")";
      });

  py::class_<Ray>(m, "Ray")
      .def(py::init<const Point3&, const Vec3&>(), py::arg("origin"), py::arg("direction"))
      .def_static("through", &Ray::through)
      .def_property_readonly("origin", &Ray::origin)
      .def_property_readonly("direction", &Ray::direction)
      .def("at", &Ray::at);

  py::class_<Plane>(m, "Plane")
      .def(py::init<const Point3&, const Vec3&, const Vec3&, double, double>(), py::arg("anchor"),
           py::arg("axis_u"), py::arg("axis_v"), py::arg("width"), py::arg("depth"))
      .def_static("horizontal", &Plane::horizontal, py::arg("anchor"), py::arg("width"), py::arg("depth"))
      .def_property_readonly("normal", &Plane::normal)
      .def_property_readonly("width", &Plane::width)
      .def_property_readonly("depth", &Plane::depth)
      .def("signed_distance", &Plane::signed_distance);

  py::class_<Ellipse>(m, "Ellipse")
      .def(py::init<>())
      .def_readwrite("center", &Ellipse::center)
      .def_readwrite("semi_major", &Ellipse::semi_major)
      .def_readwrite("semi_minor", &Ellipse::semi_minor)
      .def_readwrite("orientation", &Ellipse::orientation)
      .def("level", &Ellipse::level)
      .def_property_readonly("diameter", &Ellipse::diameter);

  m.def("ray_plane_intersect", &ray_plane_intersect, py::arg("ray"), py::arg("plane"));
  m.def("cone_plane_section", &cone_plane_section, py::arg("axis"), py::arg("vertex_angle"), py::arg("plane"),
        "Ellipse cut by a cone with the given full vertex angle (radians).");
  m.def("to_surface_frame", &to_surface_frame);
  m.def("from_surface_frame", &from_surface_frame);
  m.def("deg_to_rad", &deg_to_rad);

  m.def(
      "sample_positions",
      [](const Ellipse& e, std::size_t n, std::uint64_t seed) {
        SampleConfig cfg;
        cfg.n = n;
        cfg.seed = seed;
        return sample_positions(e, cfg);
      },
      py::arg("ellipse"), py::arg("n") = 8, py::arg("seed") = 0);

  m.def(
      "resolve_discrete",
      [](const std::vector<std::pair<std::string, SurfacePoint>>& cands, const SurfacePoint& x_star,
         double epsilon) {
        std::vector<DiscreteCandidate> list;
        for (const auto& [id, p] : cands) list.push_back({id, p});
        ResolverConfig cfg;
        cfg.epsilon = epsilon;
        const auto res = resolve(CandidateSet{list}, x_star, cfg);
        return py::make_tuple(res.theta, res.selected_ids());
      },
      py::arg("candidates"), py::arg("x_star"), py::arg("epsilon") = 0.10,
      "Returns (theta, selected ids) for named candidate positions.");

  m.def(
      "predict_cluttered",
      [](const SurfacePoint& x_star, const SurfacePoint& a, const SurfacePoint& b, double epsilon) {
        ResolverConfig cfg;
        cfg.epsilon = epsilon;
        const auto p = predict_cluttered(x_star, a, b, cfg);
        return py::make_tuple(std::string(to_string(p.choice)), p.nearer_index);
      },
      py::arg("x_star"), py::arg("a"), py::arg("b"), py::arg("epsilon") = 0.10);

  m.def("chi_squared_test", [](const std::vector<std::vector<std::int64_t>>& c) {
    return result_dict(chi_squared_test(to_table(c)));
  });
  m.def("chi_squared_sf", &chi_squared_sf, py::arg("x"), py::arg("dof"));
  m.def("fisher_exact", [](const std::vector<std::vector<std::int64_t>>& c) {
    return result_dict(fisher_exact_2x2(to_table(c)));
  });
  m.def(
      "tost_equivalence",
      [](std::int64_t x1, std::int64_t n1, std::int64_t x2, std::int64_t n2, double margin, double alpha) {
        const auto r = tost_equivalence(x1, n1, x2, n2, margin, alpha);
        py::dict d;
        d["z_lower"] = r.z_lower;
        d["z_upper"] = r.z_upper;
        d["p_lower"] = r.p_lower;
        d["p_upper"] = r.p_upper;
        d["equivalent"] = r.equivalent;
        return d;
      },
      py::arg("x1"), py::arg("n1"), py::arg("x2"), py::arg("n2"), py::arg("margin") = 0.05,
      py::arg("alpha") = 0.05);
  m.def("table1_row", &table1_row, py::arg("name"));

  py::class_<Trial>(m, "Trial")
      .def_readonly("id", &Trial::id)
      .def_property_readonly("x_star", [](const Trial& t) { return t.point_act.target; })
      .def_property_readonly("condition", [](const Trial& t) { return condition_tag(t.condition); })
      .def("__eq__", [](const Trial& a, const Trial& b) { return a == b; });

  py::class_<ResponseRecord>(m, "ResponseRecord")
      .def_readonly("trial_id", &ResponseRecord::trial_id)
      .def_readonly("condition", &ResponseRecord::condition)
      .def_property_readonly("predicted", [](const ResponseRecord& r) { return std::string(to_string(r.predicted)); })
      .def_readonly("position", &ResponseRecord::position)
      .def_readonly("x_star", &ResponseRecord::x_star)
      .def_readonly("config", &ResponseRecord::config)
      .def_readonly("theta", &ResponseRecord::theta)
      .def_readonly("shown_distance", &ResponseRecord::shown_distance)
      .def_readonly("selected", &ResponseRecord::selected)
      .def_readonly("delta", &ResponseRecord::delta)
      .def_readonly("separation", &ResponseRecord::separation);

  m.def(
      "generate_trials",
      [](const std::string& condition, double cone_deg, const std::string& intent, const std::string& robot,
         bool speech, bool reverse, bool gravity, const std::string& verb, std::size_t n, std::uint64_t seed) {
        return generate_trials(make_condition(condition, cone_deg, intent, robot, speech, reverse, gravity, verb),
                               n, seed);
      },
      py::arg("condition"), py::arg("cone_deg") = 45.0, py::arg("intent") = "referential",
      py::arg("robot") = "baxter", py::arg("speech") = true, py::arg("reverse") = false,
      py::arg("gravity") = true, py::arg("verb") = "put", py::arg("n") = 8, py::arg("seed") = 0);

  m.def(
      "run",
      [](const std::vector<Trial>& trials, double epsilon, std::optional<double> band, unsigned threads) {
        ResolverConfig cfg;
        cfg.epsilon = epsilon;
        cfg.ambiguity_band = band.value_or(epsilon);
        py::gil_scoped_release release;
        return run(trials, cfg, threads);
      },
      py::arg("trials"), py::arg("epsilon") = 0.10, py::arg("band") = py::none(), py::arg("threads") = 1);

  m.def(
      "label_counts",
      [](const std::vector<ResponseRecord>& records, const std::string& group_by) {
        const auto table = aggregate(records, group_by_from_string(group_by));
        py::dict out;
        for (const auto& g : table.groups) {
          py::dict counts;
          for (std::size_t l = 0; l < kLabelCount; ++l) counts[py::str(std::string(to_string(static_cast<Label>(l))))] = g.counts[l];
          out[py::str(g.key)] = counts;
        }
        return out;
      },
      py::arg("records"), py::arg("group_by") = "condition");

  m.def(
      "render_svg",
      [](const std::vector<ResponseRecord>& records, const std::string& kind, const std::string& group_by,
         int width, int height, bool legend) {
        PlotSpec spec{plot_kind_from_string(kind), width, height, legend};
        return render_svg(aggregate(records, group_by_from_string(group_by)), spec);
      },
      py::arg("records"), py::arg("kind") = "scatter-pies", py::arg("group_by") = "position",
      py::arg("width") = 640, py::arg("height") = 480, py::arg("legend") = true);

  m.def(
      "save_trials",
      [](const std::filesystem::path& path, const std::vector<Trial>& trials, std::uint64_t seed) {
        std::optional<Condition> cond;
        if (!trials.empty()) cond = trials.front().condition;
        save_trials(path, CorpusHeader{"trials", seed, cond, trials.size()}, trials);
      },
      py::arg("path"), py::arg("trials"), py::arg("seed") = 0);
  m.def("load_trials", [](const std::filesystem::path& path) { return load_trials(path).trials; });
  m.def("load_responses", [](const std::filesystem::path& path) { return load_responses(path).records; });
}

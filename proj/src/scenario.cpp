#include "topophase/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"
#include "topophase/plot.hpp"

namespace topophase {

using nlohmann::json;

std::string_view to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::Fig2: return "fig2";
    case ScenarioName::Fig3: return "fig3";
    case ScenarioName::Fig4: return "fig4";
    case ScenarioName::Fig5: return "fig5";
    case ScenarioName::Custom: return "custom";
  }
  return "unknown";
}

ScenarioName scenario_by_name(std::string_view name) {
  for (ScenarioName s : {ScenarioName::Fig2, ScenarioName::Fig3, ScenarioName::Fig4,
                         ScenarioName::Fig5, ScenarioName::Custom}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown scenario '" + std::string(name) + "'");
}

PhaseSchedule ScheduleSpec::build() const {
  if (kind == "custom") return custom_schedule(knots, signal, idler, su_constrained);
  return schedule_by_name(kind);
}

namespace {

struct NamedSetting {
  int dim;
  ScheduleKind schedule;
};

std::optional<NamedSetting> named_setting(ScenarioName s) {
  switch (s) {
    case ScenarioName::Fig2: return NamedSetting{3, ScheduleKind::HeavisideSu3};
    case ScenarioName::Fig3: return NamedSetting{3, ScheduleKind::IndependentSu3};
    case ScenarioName::Fig4: return NamedSetting{3, ScheduleKind::TwoComponentSu3};
    case ScenarioName::Fig5: return NamedSetting{2, ScheduleKind::QubitPair};
    case ScenarioName::Custom: return std::nullopt;
  }
  return std::nullopt;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

template <class T>
T get_as(const json& node, const char* key) {
  try {
    return node.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<InputSpec> inputs_from_name(const std::string& name) {
  if (name == "maximally_entangled" || name == "entangled") {
    return {{InputKind::MaximallyEntangled, {}, "entangled"}};
  }
  if (name == "uniform_product" || name == "product") {
    return {{InputKind::UniformProduct, {}, "product"}};
  }
  if (name == "both") {
    return {{InputKind::MaximallyEntangled, {}, "entangled"},
            {InputKind::UniformProduct, {}, "product"}};
  }
  config_error("unknown input state '" + name + "'");
}

CMatrix matrix_from_json(const json& node) {
  const auto re = get_as<std::vector<std::vector<double>>>(node, "re");
  std::vector<std::vector<double>> im;
  if (node.contains("im")) im = get_as<std::vector<std::vector<double>>>(node, "im");
  const auto d = static_cast<Eigen::Index>(re.size());
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    if (static_cast<Eigen::Index>(re[static_cast<std::size_t>(r)].size()) != d) {
      config_error("explicit matrix must be square");
    }
    for (Eigen::Index c = 0; c < d; ++c) {
      const double imag = im.empty() ? 0.0 : im.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
      m(r, c) = Complex(re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], imag);
    }
  }
  return m;
}

std::vector<InputSpec> inputs_from_json(const json& node) {
  if (node.is_string()) return inputs_from_name(node.get<std::string>());
  if (node.is_object()) {
    InputSpec spec{InputKind::Explicit, matrix_from_json(node.contains("matrix") ? node.at("matrix") : node),
                   node.value("label", std::string("explicit"))};
    return {spec};
  }
  if (node.is_array()) {
    std::vector<InputSpec> out;
    for (const json& item : node) {
      for (auto& spec : inputs_from_json(item)) out.push_back(std::move(spec));
    }
    return out;
  }
  config_error("input_state must be a name, a matrix object or a list");
}

ScheduleSpec schedule_from_json(const json& node) {
  ScheduleSpec spec;
  if (node.is_string()) {
    spec.kind = node.get<std::string>();
    return spec;
  }
  if (!node.is_object()) config_error("schedule must be a name or an object");
  spec.kind = get_as<std::string>(node, "kind");
  if (spec.kind == "custom") {
    spec.knots = get_as<std::vector<double>>(node, "knots");
    spec.signal = get_as<std::vector<std::vector<double>>>(node, "signal");
    spec.idler = node.contains("idler") ? get_as<std::vector<std::vector<double>>>(node, "idler")
                                        : spec.signal;
    spec.su_constrained = node.value("su_constrained", true);
  }
  return spec;
}

std::string t_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

CoeffMatrix build_input(const InputSpec& spec, int d) {
  switch (spec.kind) {
    case InputKind::MaximallyEntangled: return maximally_entangled(d);
    case InputKind::UniformProduct: return uniform_product(d);
    case InputKind::Explicit:
      if (spec.matrix.rows() != d) {
        throw Error(ErrorCode::InvalidConfig, "explicit matrix dimension does not match d");
      }
      return make_state(spec.matrix, true);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown input kind");
}

bool expects_cyclic(ScenarioName s, const InputSpec& input, double t, double tau) {
  const bool fig = s == ScenarioName::Fig2 || s == ScenarioName::Fig3 || s == ScenarioName::Fig5;
  return fig && input.kind == InputKind::MaximallyEntangled && t == 1.0 && tau == 0.0;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
  out << text;
}

}  // namespace

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    config_error("config file " + path.string() + ": " + e.what());
  }
}

ScenarioConfig resolve_config(const json& file, const ScenarioOverrides& flags) {
  if (!file.is_null() && !file.is_object()) config_error("config document must be an object");
  const json doc = file.is_null() ? json::object() : file;

  ScenarioConfig cfg;
  std::string scenario = doc.value("scenario", std::string("fig2"));
  if (flags.scenario) scenario = *flags.scenario;
  cfg.scenario = scenario_by_name(scenario);

  std::optional<int> dim;
  if (doc.contains("dimension")) dim = get_as<int>(doc, "dimension");
  if (flags.dim) dim = flags.dim;

  std::optional<ScheduleSpec> schedule;
  if (doc.contains("schedule")) schedule = schedule_from_json(doc.at("schedule"));

  if (auto named = named_setting(cfg.scenario)) {
    if (dim && *dim != named->dim) {
      config_error(std::string(to_string(cfg.scenario)) + " is fixed to d = " +
                   std::to_string(named->dim));
    }
    if (schedule && schedule->kind != to_string(named->schedule)) {
      config_error(std::string(to_string(cfg.scenario)) + " uses the " +
                   std::string(to_string(named->schedule)) + " schedule");
    }
    cfg.dim = named->dim;
    cfg.schedule.kind = std::string(to_string(named->schedule));
  } else {
    if (!schedule) config_error("custom scenario needs a schedule");
    cfg.schedule = *schedule;
    const int schedule_dim = cfg.schedule.build().dim;
    if (dim && *dim != schedule_dim) config_error("dimension does not match the schedule");
    cfg.dim = schedule_dim;
  }
  if (cfg.dim < kMinDim || cfg.dim > kMaxDim) config_error("dimension must be in 2..8");

  cfg.inputs = inputs_from_name("both");
  if (doc.contains("input_state")) cfg.inputs = inputs_from_json(doc.at("input_state"));
  if (flags.state) cfg.inputs = inputs_from_name(*flags.state);
  for (const auto& in : cfg.inputs) {
    if (in.kind == InputKind::Explicit && in.matrix.rows() != cfg.dim) {
      config_error("explicit input matrix is " + std::to_string(in.matrix.rows()) + "x" +
                   std::to_string(in.matrix.rows()) + ", expected d = " + std::to_string(cfg.dim));
    }
  }

  if (doc.contains("t_values")) cfg.t_values = get_as<std::vector<double>>(doc, "t_values");
  if (flags.t_values) cfg.t_values = *flags.t_values;
  if (cfg.t_values.empty()) config_error("t_values must not be empty");
  for (double t : cfg.t_values) {
    if (!std::isfinite(t)) config_error("t_values must be finite");
  }

  if (doc.contains("tau")) cfg.tau = get_as<double>(doc, "tau");
  if (flags.tau) cfg.tau = *flags.tau;
  if (cfg.scenario == ScenarioName::Fig2 && cfg.tau != 0.0) {
    config_error("fig2 drives both qudits with one parameter; tau must be 0");
  }

  if (doc.contains("n_theta")) cfg.n_theta = get_as<int>(doc, "n_theta");
  if (flags.n_theta) cfg.n_theta = *flags.n_theta;
  if (cfg.n_theta < 8) config_error("n_theta must be >= 8");

  if (doc.contains("n_steps")) cfg.n_steps = get_as<int>(doc, "n_steps");
  if (flags.n_steps) cfg.n_steps = *flags.n_steps;
  if (cfg.n_steps < kMinSteps) config_error("n_steps must be >= 16");

  if (doc.contains("outputs")) {
    cfg.write_csv = cfg.write_svg = cfg.write_report = false;
    for (const auto& o : get_as<std::vector<std::string>>(doc, "outputs")) {
      if (o == "csv") cfg.write_csv = true;
      else if (o == "svg") cfg.write_svg = true;
      else if (o == "report") cfg.write_report = true;
      else config_error("unknown output '" + o + "'");
    }
  }
  if (doc.contains("out")) cfg.out_dir = get_as<std::string>(doc, "out");
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc, "seed");
  if (flags.seed) cfg.seed = *flags.seed;
  return cfg;
}

std::string fringe_csv(const FringePattern& pattern) {
  std::string out = "theta,coincidence\n";
  char buf[64];
  for (std::size_t k = 0; k < pattern.theta.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", pattern.theta[k], pattern.counts[k]);
    out += buf;
  }
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  const PhaseSchedule schedule = config.schedule.build();
  const GeneratorBasis basis = gell_mann_basis(config.dim);
  const std::string tag(to_string(config.scenario));

  ScenarioResult result;
  json report = {{"scenario", tag},
                 {"dimension", config.dim},
                 {"schedule", config.schedule.kind},
                 {"schedule_formula", schedule.formula},
                 {"tau", config.tau},
                 {"n_theta", config.n_theta},
                 {"n_steps", config.n_steps},
                 {"inputs", json::array()}};

  std::filesystem::create_directories(config.out_dir);

  for (const InputSpec& input : config.inputs) {
    const CoeffMatrix state0 = build_input(input, config.dim);
    const InvariantSet inv = invariants(state0);
    json input_report = {{"input", input.label},
                         {"concurrence", inv.concurrence},
                         {"max_concurrence", inv.max_concurrence},
                         {"results", json::array()}};
    std::vector<PlotCurve> curves;

    for (double t : config.t_values) {
      const SchedulePhases phases = schedule_phases(schedule, t + config.tau, t - config.tau);
      const LocalUnitary gate =
          diagonal_local_unitary(phases.signal, phases.idler, schedule.su_constrained);
      const CoeffMatrix evolved = apply_local(state0, gate);
      const FringePattern pattern = fringe_pattern(state0, evolved, config.n_theta);

      json entry = {{"t", t},
                    {"t_signal", t + config.tau},
                    {"t_idler", t - config.tau},
                    {"out_of_range", phases.out_of_range},
                    {"visibility", pattern.visibility},
                    {"fringe_phase", optional_number(pattern.fringe_phase)}};
      if (pattern.fringe_phase) {
        entry["fringe_phase_over_pi"] = *pattern.fringe_phase / kPi;
        if (config.dim == 3) entry["fringe_phase_over_pi_3"] = *pattern.fringe_phase / (kPi / 3.0);
      }

      if (t > 0.0) {
        const EvolutionTrace trace = evolve_path(
            state0, schedule, {Coupling::Proportional, config.tau, t}, config.n_steps);
        const PhaseReport pr = phase_report(trace, basis);
        const bool dark = !pattern.fringe_phase.has_value();
        entry["total_phase"] = dark ? json(nullptr) : json(pr.total_phase);
        entry["dynamical_phase"] = pr.dynamical_phase;
        entry["geometric_phase"] = dark ? json(nullptr) : json(pr.geometric_phase);
        entry["cyclic"] = pr.cyclic;
        entry["sectors_available"] = trace.sectors_available;
        if (config.dim == 3 && !dark) {
          entry["geometric_phase_over_pi_3"] = pr.geometric_phase / (kPi / 3.0);
        }
        if (pr.fractional) {
          entry["fractional_index"] = pr.fractional->index;
          entry["sector_phase"] = pr.fractional->sector_phase;
          entry["sector_residual"] = pr.fractional->sector_residual;
          entry["delta_phi"] = pr.fractional->delta_phi;
          entry["anholonomy_term"] = pr.fractional->anholonomy_term;
        } else {
          entry["fractional_index"] = nullptr;
        }
        if (expects_cyclic(config.scenario, input, t, config.tau) && !pr.cyclic) {
          result.failures.push_back(input.label + " at t=" + t_tag(t) + " is not cyclic");
        }
      }
      input_report["results"].push_back(entry);

      if (config.write_csv) {
        const auto path = config.out_dir / (tag + "_" + input.label + "_t" + t_tag(t) + ".csv");
        write_file(path, fringe_csv(pattern));
        result.files.push_back(path);
      }
      curves.push_back({"t = " + t_tag(t), pattern.theta, pattern.counts});
    }

    if (config.write_svg) {
      const auto path = config.out_dir / (tag + "_" + input.label + ".svg");
      write_file(path, render_fringe_svg(tag + ": " + input.label + " input, d = " +
                                             std::to_string(config.dim),
                                         curves));
      result.files.push_back(path);
    }
    report["inputs"].push_back(input_report);
  }

  if (config.write_report) {
    const auto path = config.out_dir / (tag + "_report.json");
    write_file(path, report.dump(2) + "\n");
    result.files.push_back(path);
  }
  result.report = std::move(report);
  result.exit_code = result.failures.empty() ? 0 : 3;
  return result;
}

}  // namespace topophase

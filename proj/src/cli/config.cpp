#include "feedplan/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace feedplan::cli {

ftrt::SensorModel CalibConfig::sensor() const {
  ftrt::SensorModel m;
  m.ee_to_sensor = Pose::from_rotation_vector(Eigen::Vector3d::Zero(), ee_to_sensor_rotation).rotation().toRotationMatrix();
  m.torque_radius = torque_radius;
  m.gravity = gravity;
  return m;
}

namespace {

// Raised by a reader; the caller adds the source and line.
struct BadValue {
  std::string message;
};

struct Field {
  std::string path;
  std::function<void(const TomlValue&)> read;
  std::function<std::string()> write;
};

double number_of(const TomlValue& v) {
  if (!v.is_number()) throw BadValue{"expected a number, got " + v.type_name()};
  return v.as_number();
}

std::int64_t integer_of(const TomlValue& v) {
  const auto* i = std::get_if<std::int64_t>(&v.data);
  if (!i) throw BadValue{"expected an integer, got " + v.type_name()};
  return *i;
}

const TomlArray& array_of(const TomlValue& v) {
  const auto* a = std::get_if<TomlArray>(&v.data);
  if (!a) throw BadValue{"expected an array, got " + v.type_name()};
  return *a;
}

std::string join_numbers(const double* x, std::size_t n) {
  std::string out = "[";
  for (std::size_t i = 0; i < n; ++i) out += (i ? ", " : "") + format_double(x[i]);
  return out + "]";
}

class Binder {
 public:
  explicit Binder(std::vector<Field>& out) : out_(out) {}

  void number(const std::string& path, double& x) {
    out_.push_back({path, [&x](const TomlValue& v) { x = number_of(v); }, [&x] { return format_double(x); }});
  }

  void integer(const std::string& path, int& x) {
    out_.push_back({path,
                    [&x](const TomlValue& v) {
                      const std::int64_t i = integer_of(v);
                      if (i < INT32_MIN || i > INT32_MAX) throw BadValue{"integer out of range"};
                      x = static_cast<int>(i);
                    },
                    [&x] { return std::to_string(x); }});
  }

  void seed(const std::string& path, std::uint64_t& x) {
    out_.push_back({path,
                    [&x](const TomlValue& v) {
                      const std::int64_t i = integer_of(v);
                      if (i < 0) throw BadValue{"seed must be >= 0"};
                      x = static_cast<std::uint64_t>(i);
                    },
                    [&x] { return std::to_string(x); }});
  }

  void flag(const std::string& path, bool& x) {
    out_.push_back({path,
                    [&x](const TomlValue& v) {
                      const auto* b = std::get_if<bool>(&v.data);
                      if (!b) throw BadValue{"expected a boolean, got " + v.type_name()};
                      x = *b;
                    },
                    [&x] { return std::string(x ? "true" : "false"); }});
  }

  void text(const std::string& path, std::string& x) {
    out_.push_back({path,
                    [&x](const TomlValue& v) {
                      const auto* s = std::get_if<std::string>(&v.data);
                      if (!s) throw BadValue{"expected a string, got " + v.type_name()};
                      x = *s;
                    },
                    [&x] { return quote_toml(x); }});
  }

  void vec3(const std::string& path, Eigen::Vector3d& x) {
    out_.push_back({path,
                    [&x](const TomlValue& v) {
                      const TomlArray& a = array_of(v);
                      if (a.size() != 3) throw BadValue{"expected 3 numbers, got " + std::to_string(a.size())};
                      for (int i = 0; i < 3; ++i) x[i] = number_of(a[i]);
                    },
                    [&x] { return join_numbers(x.data(), 3); }});
  }

  void list(const std::string& path, std::vector<double>& x) {
    out_.push_back({path,
                    [&x](const TomlValue& v) {
                      std::vector<double> out;
                      for (const TomlValue& e : array_of(v)) out.push_back(number_of(e));
                      x = std::move(out);
                    },
                    [&x] { return join_numbers(x.data(), x.size()); }});
  }

  void pose(const std::string& path, PoseConfig& p) {
    vec3(path + ".translation", p.translation);
    vec3(path + ".rotation_vector", p.rotation_vector);
  }

  void mode(const std::string& path, costs::CostMode& m) {
    out_.push_back({path,
                    [&m](const TomlValue& v) {
                      const auto* s = std::get_if<std::string>(&v.data);
                      if (!s) throw BadValue{"expected a string, got " + v.type_name()};
                      try {
                        m = costs::cost_mode_from_string(*s);
                      } catch (const InvalidSpecError& e) {
                        throw BadValue{e.what()};
                      }
                    },
                    [&m] { return quote_toml(std::string(costs::to_string(m))); }});
  }

 private:
  std::vector<Field>& out_;
};

void bind_food_dims(Binder& b, geom::FoodSpec& food) {
  std::visit(
      [&b](auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, geom::CarrotDims> || std::is_same_v<D, geom::StrawberryDims>) {
          b.number("food.radius", d.radius);
          b.number("food.length", d.length);
        } else if constexpr (std::is_same_v<D, geom::CantaloupeDims>) {
          b.number("food.bottom_width", d.bottom_width);
          b.number("food.top_width", d.top_width);
          b.number("food.height", d.height);
          b.number("food.length", d.length);
        } else {
          b.number("food.outer_radius", d.outer_radius);
          b.number("food.wall_thickness", d.wall_thickness);
          b.number("food.length", d.length);
        }
      },
      food.dims);
}

// Every key except food.kind, in serialization order. Sections stay contiguous.
std::vector<Field> fields(ScenarioConfig& c) {
  std::vector<Field> out;
  Binder b(out);
  b.seed("seed", c.seed);

  b.number("food.scale", c.food_scale);
  b.integer("food.segments", c.food.segments);
  bind_food_dims(b, c.food);
  b.pose("food.pose_on_fork", c.pose_on_fork);

  b.pose("start", c.start);

  b.number("mouth.semi_axis_x", c.mouth.semi_axis_x);
  b.number("mouth.semi_axis_y", c.mouth.semi_axis_y);
  b.number("mouth.depth_in", c.mouth.depth_in);
  b.pose("mouth.pose", c.mouth_pose);

  b.vec3("proxy.tines_size", c.proxy.tines_size);
  b.number("proxy.handle_radius", c.proxy.handle_radius);
  b.number("proxy.handle_length", c.proxy.handle_length);
  b.vec3("proxy.end_effector_size", c.proxy.end_effector_size);
  b.integer("proxy.segments", c.proxy.segments);

  b.number("goals.cone_half_angle", c.goals.cone_half_angle);
  b.vec3("goals.offset_min", c.goals.offset_min);
  b.vec3("goals.offset_max", c.goals.offset_max);
  b.number("goals.spin_min", c.goals.spin_min);
  b.number("goals.spin_max", c.goals.spin_max);

  b.mode("costs.mode", c.weights.mode);
  b.number("costs.alpha", c.weights.alpha);
  b.number("costs.r_up", c.weights.r_up);
  b.number("costs.r_down", c.weights.r_down);
  b.number("costs.r_side", c.weights.r_side);
  b.number("costs.beta_E", c.weights.beta_E);
  b.number("costs.beta_C", c.weights.beta_C);
  b.number("costs.gamma_C", c.weights.gamma_C);
  b.number("costs.w_rot", c.weights.w_rot);

  b.integer("rays.grid_n", c.rays.grid_n);
  b.integer("rays.grid_m", c.rays.grid_m);
  b.number("rays.extent", c.rays.extent);
  b.number("rays.z_max", c.rays.z_max);
  b.number("rays.z_floor", c.rays.z_floor);

  b.integer("sampling.target_n", c.budget.target_n);
  b.integer("sampling.batch_size", c.budget.batch_size);
  b.number("sampling.timeout_s", c.budget.timeout_s);
  b.integer("sampling.max_batches", c.budget.max_batches);
  b.integer("sampling.k", c.k);

  b.number("planner.step_eps", c.planner.step_eps);
  b.integer("planner.knn_k", c.planner.knn_k);
  b.integer("planner.max_iters", c.planner.max_iters);
  b.number("planner.edge_check_resolution", c.planner.edge_check_resolution);
  b.number("planner.clearance", c.planner.clearance);
  b.number("planner.goal_connect_radius", c.planner.goal_connect_radius);
  b.integer("planner.smoothing_iters", c.planner.smoothing_iters);
  b.number("planner.m_floor", c.planner.m_floor);
  b.number("planner.goal_bias", c.planner.goal_bias);
  b.number("planner.sample_margin", c.planner.sample_margin);
  b.number("planner.rotation_jitter", c.planner.rotation_jitter);
  b.flag("planner.straight_line_first", c.planner.straight_line_first);

  b.number("multibite.stop_fraction", c.stop_fraction);
  b.integer("multibite.max_bites", c.max_bites);
  b.number("multibite.min_progress", c.min_progress);

  b.number("calib.noise_sigma", c.calib.noise_sigma);
  b.number("calib.mass", c.calib.truth.mass);
  b.vec3("calib.force_bias", c.calib.truth.force_bias);
  b.vec3("calib.torque_bias", c.calib.truth.torque_bias);
  b.vec3("calib.ee_to_sensor_rotation", c.calib.ee_to_sensor_rotation);
  b.number("calib.torque_radius", c.calib.torque_radius);
  b.number("calib.gravity", c.calib.gravity);

  b.list("sweep.beta_E", c.sweep.beta_E);
  b.list("sweep.beta_C", c.sweep.beta_C);
  b.list("sweep.gamma_C", c.sweep.gamma_C);
  b.integer("sweep.scenarios_per_cell", c.sweep.scenarios_per_cell);
  b.seed("sweep.base_seed", c.sweep.base_seed);
  b.text("sweep.food", c.sweep.food);
  b.number("sweep.scale_min", c.sweep.scale_min);
  b.number("sweep.scale_max", c.sweep.scale_max);
  b.vec3("sweep.start_min", c.sweep.start_min);
  b.vec3("sweep.start_max", c.sweep.start_max);
  b.number("sweep.start_tilt_max", c.sweep.start_tilt_max);
  b.number("sweep.skewer_angle", c.sweep.skewer_angle);
  return out;
}

std::string section_of(const std::string& path) {
  const auto dot = path.rfind('.');
  return dot == std::string::npos ? std::string() : path.substr(0, dot);
}

struct Problem {
  std::string section;
  std::string message;
};

template <class F>
std::optional<Problem> check(const std::string& section, F&& f) {
  try {
    f();
  } catch (const InvalidSpecError& e) {
    return Problem{section, e.what()};
  }
  return std::nullopt;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidSpecError(message);
}

std::optional<Problem> first_problem(const ScenarioConfig& c) {
  using Check = std::pair<std::string, std::function<void()>>;
  const std::vector<Check> checks = {
      {"food",
       [&] {
         require(c.food_scale > 0.0, "scale must be > 0");
         c.food.scaled(c.food_scale).validate();
       }},
      {"mouth",
       [&] {
         geom::MouthModel m = c.mouth;
         m.pose = c.mouth_pose.pose();
         m.validate();
       }},
      {"proxy",
       [&] {
         require(c.proxy.tines_size.minCoeff() > 0.0 && c.proxy.end_effector_size.minCoeff() > 0.0 &&
                     c.proxy.handle_radius > 0.0 && c.proxy.handle_length > 0.0,
                 "tines_size, end_effector_size, handle_radius and handle_length must be > 0");
         require(c.proxy.segments >= 3, "segments must be >= 3");
       }},
      {"goals", [&] { c.goals.validate(); }},
      {"costs", [&] { c.weights.validate(); }},
      {"rays", [&] { c.rays.validate(); }},
      {"sampling",
       [&] {
         c.budget.validate();
         require(c.k >= 1, "k must be >= 1");
       }},
      {"planner", [&] { c.planner.validate(); }},
      {"multibite", [&] { c.multibite().validate(); }},
      {"calib",
       [&] {
         require(c.calib.noise_sigma >= 0.0, "noise_sigma must be >= 0");
         c.calib.sensor().validate();
       }},
      {"sweep",
       [&] {
         const SweepConfig& s = c.sweep;
         require(!s.beta_E.empty() && !s.beta_C.empty(), "beta_E and beta_C grids must be non-empty");
         for (const auto* grid : {&s.beta_E, &s.beta_C, &s.gamma_C})
           for (double w : *grid) require(w >= 0.0 && std::isfinite(w), "grid weights must be finite and >= 0");
         require(s.scenarios_per_cell >= 1, "scenarios_per_cell must be >= 1");
         require(s.scale_min > 0.0 && s.scale_min <= s.scale_max, "need 0 < scale_min <= scale_max");
         require((s.start_min.array() <= s.start_max.array()).all(), "start_min must be <= start_max");
         require(s.start_tilt_max >= 0.0, "start_tilt_max must be >= 0");
         if (s.food != "random") geom::food_kind_from_string(s.food);
       }},
  };
  for (const auto& [section, f] : checks)
    if (auto p = check(section, f)) return p;
  return std::nullopt;
}

// Line of the key in `section` named in the message, else any key in the
// section, else the section header.
int anchor_line(const TomlDocument& doc, const Problem& p) {
  int fallback = 0;
  for (const auto& [path, value] : doc.values) {
    if (section_of(path) != p.section && path.rfind(p.section + ".", 0) != 0) continue;
    const std::string key = path.substr(path.rfind('.') + 1);
    if (p.message.find(key) != std::string::npos) return value.line;
    if (fallback == 0 || (value.line > 0 && value.line < fallback)) fallback = value.line;
  }
  if (fallback > 0) return fallback;
  const auto t = doc.tables.find(p.section);
  return t == doc.tables.end() ? 0 : t->second;
}

void flatten_json(const nlohmann::json& j, const std::string& path, TomlDocument& doc);

TomlValue json_value(const nlohmann::json& j, const std::string& path) {
  TomlValue v;
  if (j.is_boolean()) {
    v.data = j.get<bool>();
  } else if (j.is_number_integer()) {
    v.data = j.get<std::int64_t>();
  } else if (j.is_number()) {
    v.data = j.get<double>();
  } else if (j.is_string()) {
    v.data = j.get<std::string>();
  } else if (j.is_array()) {
    TomlArray a;
    for (const auto& e : j) a.push_back(json_value(e, path));
    v.data = std::move(a);
  } else {
    throw ConfigError("", 0, path + ": unsupported JSON value");
  }
  return v;
}

void flatten_json(const nlohmann::json& j, const std::string& path, TomlDocument& doc) {
  for (const auto& [key, value] : j.items()) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (value.is_object()) {
      doc.tables[full] = 0;
      flatten_json(value, full, doc);
    } else {
      doc.values[full] = json_value(value, full);
    }
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  if (auto p = first_problem(*this)) throw ConfigError("config", 0, "[" + p->section + "] " + p->message);
}

sample::Scenario ScenarioConfig::scenario() const {
  geom::MouthModel m = mouth;
  m.pose = mouth_pose.pose();
  geom::Scene scene(geom::make_food_mesh(food.scaled(food_scale)), pose_on_fork.pose(), m, proxy);
  return sample::Scenario{std::move(scene), mouth_pose.pose() * start.pose(), goals};
}

plan::PipelineConfig ScenarioConfig::pipeline() const {
  plan::PipelineConfig p;
  p.weights = weights;
  p.rays = rays;
  p.budget = budget;
  p.planner = planner;
  p.k = k;
  p.seed = seed;
  return p;
}

bite::MultibiteConfig ScenarioConfig::multibite() const {
  bite::MultibiteConfig m;
  m.pipeline = pipeline();
  m.stop_fraction = stop_fraction;
  m.max_bites = max_bites;
  m.min_progress = min_progress;
  return m;
}

sample::RandomScenarioSpec ScenarioConfig::random_spec() const {
  sample::RandomScenarioSpec s;
  if (sweep.food != "random") s.kind = geom::food_kind_from_string(sweep.food);
  s.scale_min = sweep.scale_min;
  s.scale_max = sweep.scale_max;
  s.start_min = sweep.start_min;
  s.start_max = sweep.start_max;
  s.start_tilt_max = sweep.start_tilt_max;
  s.mouth = mouth;
  s.mouth.pose = mouth_pose.pose();
  s.goals = goals;
  s.proxy = proxy;
  s.skewer_y = pose_on_fork.translation.y();
  s.skewer_angle = sweep.skewer_angle;
  return s;
}

TomlDocument read_config_text(const std::string& text, const std::string& source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = (source.size() >= 5 && source.compare(source.size() - 5, 5, ".json") == 0) ||
                    (first != std::string::npos && text[first] == '{');
  if (!json) return parse_toml(text, source);

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source, 0, e.what());
  }
  if (!j.is_object()) throw ConfigError(source, 0, "top-level JSON value must be an object");
  TomlDocument doc;
  doc.source = source;
  try {
    flatten_json(j, "", doc);
  } catch (const ConfigError& e) {
    throw ConfigError(source, 0, std::string(e.what()).substr(2));
  }
  return doc;
}

TomlDocument read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_config_text(ss.str(), path);
}

ScenarioConfig load_config(const TomlDocument& doc) {
  ScenarioConfig c;
  if (auto it = doc.values.find("food.kind"); it != doc.values.end()) {
    const auto* s = std::get_if<std::string>(&it->second.data);
    if (!s) throw ConfigError(doc.source, it->second.line, "food.kind: expected a string, got " + it->second.type_name());
    try {
      const int segments = c.food.segments;
      c.food = geom::FoodSpec::default_for(geom::food_kind_from_string(*s));
      c.food.segments = segments;
    } catch (const InvalidSpecError& e) {
      throw ConfigError(doc.source, it->second.line, std::string("food.kind: ") + e.what());
    }
  }

  std::vector<Field> table = fields(c);
  for (const auto& [path, value] : doc.values) {
    if (path == "food.kind") continue;
    const auto f = std::find_if(table.begin(), table.end(), [&](const Field& x) { return x.path == path; });
    if (f == table.end()) throw ConfigError(doc.source, value.line, "unknown key '" + path + "'");
    try {
      f->read(value);
    } catch (const BadValue& e) {
      throw ConfigError(doc.source, value.line, path + ": " + e.message);
    }
  }

  if (auto p = first_problem(c)) throw ConfigError(doc.source, anchor_line(doc, *p), "[" + p->section + "] " + p->message);
  return c;
}

std::string to_toml(const ScenarioConfig& c) {
  ScenarioConfig copy = c;
  std::ostringstream out;
  std::string current;
  bool kind_written = false;
  for (const Field& f : fields(copy)) {
    const std::string section = section_of(f.path);
    if (section != current) {
      out << (out.tellp() > 0 ? "\n" : "") << "[" << section << "]\n";
      current = section;
    }
    if (section == "food" && !kind_written) {
      out << "kind = " << quote_toml(std::string(geom::to_string(c.food.kind()))) << "\n";
      kind_written = true;
    }
    out << f.path.substr(section.empty() ? 0 : section.size() + 1) << " = " << f.write() << "\n";
  }
  return out.str();
}

}  // namespace feedplan::cli

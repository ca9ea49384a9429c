#include "fsopoint/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

using Check = std::function<std::optional<std::string>(const RunConfig&)>;

struct Field {
  std::string key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
  Check check;
};

// --- value codecs -----------------------------------------------------------

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size())
    throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::string s(text);
  for (auto& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_real(tok));
  return out;
}

Vector3 parse_vec3(std::string_view text, bool allow_scalar) {
  const auto v = parse_list(text);
  if (v.size() == 3) return {v[0], v[1], v[2]};
  if (allow_scalar && v.size() == 1) return Vector3::Constant(v[0]);
  throw std::invalid_argument(allow_scalar ? "expected 1 or 3 numbers"
                                           : "expected 3 numbers");
}

std::string fmt_vec3(const Vector3& v) {
  return fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]);
}

bool parse_bool(std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("expected true or false, got '" + s + "'");
}

std::uint64_t parse_u64(std::string_view text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    if (!s.empty() && s.front() == '-') throw std::invalid_argument("");
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size())
    throw std::invalid_argument("expected a non-negative integer, got '" + s +
                                "'");
  return v;
}

int parse_int(std::string_view text) {
  const double v = parse_real(text);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw std::invalid_argument("expected an integer");
  return static_cast<int>(v);
}

// --- field builders ---------------------------------------------------------

Check positive(std::function<double(const RunConfig&)> get) {
  return [get](const RunConfig& c) -> std::optional<std::string> {
    const double v = get(c);
    if (!(v > 0.0) || !std::isfinite(v)) return "must be > 0";
    return std::nullopt;
  };
}

Check non_negative(std::function<double(const RunConfig&)> get) {
  return [get](const RunConfig& c) -> std::optional<std::string> {
    const double v = get(c);
    if (!(v >= 0.0) || !std::isfinite(v)) return "must be >= 0";
    return std::nullopt;
  };
}

Check finite(std::function<double(const RunConfig&)> get) {
  return [get](const RunConfig& c) -> std::optional<std::string> {
    if (!std::isfinite(get(c))) return "must be finite";
    return std::nullopt;
  };
}

template <class Access>
Field real(std::string key, Access acc,
           Check (*rule)(std::function<double(const RunConfig&)>) = finite) {
  return {std::move(key),
          [acc](RunConfig& c, std::string_view v) { acc(c) = parse_real(v); },
          [acc](const RunConfig& c) { return fmt(acc(c)); },
          rule([acc](const RunConfig& c) { return acc(c); })};
}

template <class Access>
Field vec3(std::string key, Access acc, bool allow_scalar, Check check) {
  return {std::move(key),
          [acc, allow_scalar](RunConfig& c, std::string_view v) {
            acc(c) = parse_vec3(v, allow_scalar);
          },
          [acc](const RunConfig& c) { return fmt_vec3(acc(c)); },
          std::move(check)};
}

template <class Access>
Field flag(std::string key, Access acc) {
  return {std::move(key),
          [acc](RunConfig& c, std::string_view v) { acc(c) = parse_bool(v); },
          [acc](const RunConfig& c) {
            return std::string(acc(c) ? "true" : "false");
          },
          nullptr};
}

template <class Enum, class Access>
Field choice(std::string key, Access acc,
             std::optional<Enum> (*parse)(std::string_view),
             std::string options) {
  return {std::move(key),
          [acc, parse, options](RunConfig& c, std::string_view v) {
            const auto e = parse(trim(v));
            if (!e)
              throw std::invalid_argument("expected one of " + options +
                                          ", got '" + trim(v) + "'");
            acc(c) = *e;
          },
          [acc](const RunConfig& c) { return std::string(to_string(acc(c))); },
          nullptr};
}

std::optional<ProjectionMode> parse_projection(std::string_view s) {
  if (s == "angular-only") return ProjectionMode::AngularOnly;
  if (s == "angular-plus-linear") return ProjectionMode::AngularPlusLinear;
  return std::nullopt;
}

std::optional<InitialState> parse_initial(std::string_view s) {
  if (s == "zero") return InitialState::Zero;
  if (s == "equilibrium") return InitialState::Equilibrium;
  return std::nullopt;
}

Check vec_positive(std::function<Vector3(const RunConfig&)> get) {
  return [get](const RunConfig& c) -> std::optional<std::string> {
    const Vector3 v = get(c);
    if (!v.allFinite() || !(v.minCoeff() > 0.0)) return "all entries must be > 0";
    return std::nullopt;
  };
}

Check vec_non_negative(std::function<Vector3(const RunConfig&)> get) {
  return [get](const RunConfig& c) -> std::optional<std::string> {
    const Vector3 v = get(c);
    if (!v.allFinite() || !(v.minCoeff() >= 0.0)) return "all entries must be >= 0";
    return std::nullopt;
  };
}

Check vec_finite(std::function<Vector3(const RunConfig&)> get) {
  return [get](const RunConfig& c) -> std::optional<std::string> {
    if (!get(c).allFinite()) return "must be finite";
    return std::nullopt;
  };
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;

    // platform
    f.push_back(real("platform.mass_kg",
                     [](auto& c) -> auto& { return c.platform.mass_kg; },
                     positive));
    f.push_back(vec3("platform.inertia_kgm2",
                     [](auto& c) -> auto& { return c.platform.inertia_kgm2; },
                     false,
                     vec_positive([](const RunConfig& c) {
                       return c.platform.inertia_kgm2;
                     })));
    f.push_back(real("platform.k_trans",
                     [](auto& c) -> auto& { return c.platform.k_trans; },
                     positive));
    f.push_back(real("platform.k_rot",
                     [](auto& c) -> auto& { return c.platform.k_rot; },
                     positive));
    f.push_back(real("platform.damping_alpha",
                     [](auto& c) -> auto& { return c.platform.damping_alpha; },
                     non_negative));
    f.push_back(Field{
        "platform.input_matrix",
        [](RunConfig& c, std::string_view v) {
          const std::string s = trim(v);
          if (s == "identity") {
            c.platform.input_matrix.reset();
            return;
          }
          const auto vals = parse_list(s);
          if (vals.size() != 36)
            throw std::invalid_argument(
                "expected 'identity' or 36 numbers (row-major 6x6)");
          Matrix6 m;
          for (int i = 0; i < 36; ++i) m(i / 6, i % 6) = vals[i];
          c.platform.input_matrix = m;
        },
        [](const RunConfig& c) {
          if (!c.platform.input_matrix) return std::string("identity");
          std::string out;
          for (int i = 0; i < 36; ++i) {
            if (i) out += ' ';
            out += fmt((*c.platform.input_matrix)(i / 6, i % 6));
          }
          return out;
        },
        [](const RunConfig& c) -> std::optional<std::string> {
          if (c.platform.input_matrix && !c.platform.input_matrix->allFinite())
            return "must be finite";
          return std::nullopt;
        }});

    // propeller
    f.push_back(flag("forcing.propeller.enabled",
                     [](auto& c) -> auto& { return c.propeller_enabled; }));
    f.push_back(real("forcing.propeller.m_hap_kg",
                     [](auto& c) -> auto& { return c.propeller.m_hap_kg; },
                     positive));
    f.push_back(real("forcing.propeller.b_drag",
                     [](auto& c) -> auto& { return c.propeller.b_drag; }));
    f.push_back(real("forcing.propeller.v_hap_mps",
                     [](auto& c) -> auto& { return c.propeller.v_hap_mps; }));
    f.push_back(vec3("forcing.propeller.a_hap_mps2",
                     [](auto& c) -> auto& { return c.propeller.a_hap_mps2; },
                     false, vec_finite([](const RunConfig& c) {
                       return c.propeller.a_hap_mps2;
                     })));
    f.push_back(Field{
        "forcing.propeller.ripple_fraction",
        [](RunConfig& c, std::string_view v) {
          c.propeller.ripple_fraction = parse_real(v);
        },
        [](const RunConfig& c) { return fmt(c.propeller.ripple_fraction); },
        [](const RunConfig& c) -> std::optional<std::string> {
          const double r = c.propeller.ripple_fraction;
          if (!(r >= 0.0 && r <= 1.0)) return "must be in [0, 1]";
          return std::nullopt;
        }});
    f.push_back(real("forcing.propeller.blade_pass_hz",
                     [](auto& c) -> auto& { return c.propeller.blade_pass_hz; },
                     positive));
    f.push_back(real("forcing.propeller.torque_arm_m",
                     [](auto& c) -> auto& { return c.propeller.torque_arm_m; }));
    f.push_back(flag("forcing.propeller.hover",
                     [](auto& c) -> auto& { return c.propeller.hover; }));

    // wind
    f.push_back(flag("forcing.wind.enabled",
                     [](auto& c) -> auto& { return c.wind_enabled; }));
    f.push_back(choice<WindScenario>(
        "forcing.wind.scenario",
        [](auto& c) -> auto& { return c.wind.scenario; }, parse_wind_scenario,
        "calm|typical|turbulent|unidirectional-x|unidirectional-y|"
        "unidirectional-z"));
    f.push_back(vec3("forcing.wind.area_m2",
                     [](auto& c) -> auto& { return c.wind.area_m2; }, true,
                     vec_non_negative(
                         [](const RunConfig& c) { return c.wind.area_m2; })));
    f.push_back(Field{
        "forcing.wind.rho_kgm3",
        [](RunConfig& c, std::string_view v) {
          c.wind.rho_kgm3 = parse_real(v);
        },
        [](const RunConfig& c) { return fmt(c.wind.rho_kgm3); },
        [](const RunConfig& c) -> std::optional<std::string> {
          if (!(c.wind.rho_kgm3 > 0.0 && c.wind.rho_kgm3 <= 0.2))
            return "stratospheric density must be in (0, 0.2]";
          return std::nullopt;
        }});
    f.push_back(Field{
        "forcing.wind.mean_speed_mps",
        [](RunConfig& c, std::string_view v) {
          if (trim(v) == "scenario")
            c.wind.mean_speed_mps.reset();
          else
            c.wind.mean_speed_mps = parse_real(v);
        },
        [](const RunConfig& c) {
          return c.wind.mean_speed_mps ? fmt(*c.wind.mean_speed_mps)
                                       : std::string("scenario");
        },
        [](const RunConfig& c) -> std::optional<std::string> {
          const double v = c.wind.mean_speed();
          if (!(v >= 0.0) || !std::isfinite(v)) return "must be >= 0";
          return std::nullopt;
        }});
    f.push_back(real("forcing.wind.gust_corner_hz",
                     [](auto& c) -> auto& { return c.wind.gust_corner_hz; },
                     positive));
    f.push_back(real(
        "forcing.wind.turbulence_intensity",
        [](auto& c) -> auto& { return c.wind.turbulence_intensity; },
        non_negative));
    f.push_back(vec3("forcing.wind.pressure_offset_m",
                     [](auto& c) -> auto& { return c.wind.pressure_offset_m; },
                     false, vec_finite([](const RunConfig& c) {
                       return c.wind.pressure_offset_m;
                     })));
    f.push_back(choice<DragMode>(
        "forcing.wind.mode", [](auto& c) -> auto& { return c.wind.mode; },
        parse_drag_mode, "as-given|quadratic"));
    f.push_back(real("forcing.wind.gust_step_s",
                     [](auto& c) -> auto& { return c.wind.gust_step_s; },
                     positive));

    // link
    f.push_back(real("link.range_m",
                     [](auto& c) -> auto& { return c.link.range_m; }, positive));
    f.push_back(real("link.divergence_rad",
                     [](auto& c) -> auto& { return c.link.divergence_rad; },
                     positive));
    f.push_back(real("link.aperture_m",
                     [](auto& c) -> auto& { return c.link.aperture_m; },
                     positive));
    f.push_back(choice<ProjectionMode>(
        "link.projection", [](auto& c) -> auto& { return c.projection; },
        parse_projection, "angular-only|angular-plus-linear"));

    // sim
    f.push_back(real("sim.duration_s",
                     [](auto& c) -> auto& { return c.sim.duration_s; },
                     positive));
    f.push_back(real("sim.dt_s", [](auto& c) -> auto& { return c.sim.dt_s; },
                     positive));
    f.push_back(Field{
        "sim.seed",
        [](RunConfig& c, std::string_view v) { c.sim.seed = parse_u64(v); },
        [](const RunConfig& c) { return std::to_string(c.sim.seed); },
        nullptr});
    f.push_back(real("sim.settle_s",
                     [](auto& c) -> auto& { return c.sim.settle_s; },
                     non_negative));
    f.push_back(choice<InitialState>(
        "sim.initial", [](auto& c) -> auto& { return c.sim.initial; },
        parse_initial, "zero|equilibrium"));
    f.push_back(real("sim.divergence_bound",
                     [](auto& c) -> auto& { return c.sim.divergence_bound; },
                     positive));

    // output
    f.push_back(Field{
        "output.directory",
        [](RunConfig& c, std::string_view v) { c.output.directory = trim(v); },
        [](const RunConfig& c) { return c.output.directory; },
        [](const RunConfig& c) -> std::optional<std::string> {
          if (c.output.directory.empty()) return "must not be empty";
          return std::nullopt;
        }});
    f.push_back(Field{
        "output.precision",
        [](RunConfig& c, std::string_view v) {
          c.output.precision = parse_int(v);
        },
        [](const RunConfig& c) { return std::to_string(c.output.precision); },
        [](const RunConfig& c) -> std::optional<std::string> {
          if (c.output.precision < 1 || c.output.precision > 17)
            return "must be in [1, 17]";
          return std::nullopt;
        }});
    f.push_back(Field{
        "output.stride",
        [](RunConfig& c, std::string_view v) { c.output.stride = parse_int(v); },
        [](const RunConfig& c) { return std::to_string(c.output.stride); },
        [](const RunConfig& c) -> std::optional<std::string> {
          if (c.output.stride < 1) return "must be >= 1";
          return std::nullopt;
        }});
    return f;
  }();
  return table;
}

void apply_line(RunConfig& config, std::string_view raw,
                const std::string& where, std::vector<std::string>& errors) {
  std::string line(raw);
  if (const auto hash = line.find('#'); hash != std::string::npos)
    line.erase(hash);
  if (trim(line).empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    errors.push_back(where + ": expected 'key = value'");
    return;
  }
  const std::string key = trim(std::string_view(line).substr(0, eq));
  const std::string value = trim(std::string_view(line).substr(eq + 1));
  for (const auto& f : fields()) {
    if (f.key != key) continue;
    try {
      f.set(config, value);
    } catch (const std::invalid_argument& e) {
      errors.push_back(key + ": " + e.what() + " (" + where + ")");
    }
    return;
  }
  errors.push_back(key + ": unknown key (" + where + ")");
}

}  // namespace

std::string_view to_string(ProjectionMode m) {
  return m == ProjectionMode::AngularOnly ? "angular-only"
                                          : "angular-plus-linear";
}

std::string_view to_string(InitialState s) {
  return s == InitialState::Zero ? "zero" : "equilibrium";
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

RunConfig parse_config(std::string_view text,
                       const std::vector<std::string>& overrides) {
  RunConfig config;
  std::vector<std::string> errors;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    apply_line(config, line, "line " + std::to_string(line_no), errors);
  }
  for (const auto& o : overrides) apply_line(config, o, "override", errors);

  std::set<std::string> reported;
  for (const auto& e : errors) reported.insert(e.substr(0, e.find(':')));
  for (const auto& f : fields()) {
    if (!f.check || reported.count(f.key)) continue;
    if (auto why = f.check(config)) errors.push_back(f.key + ": " + *why);
  }
  if (errors.empty() && config.sim.duration_s < config.sim.dt_s)
    errors.push_back("sim.duration_s: must be >= sim.dt_s");

  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(ErrorKind::InvalidParameter, msg);
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, path.string() + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    const std::string s = f.key.substr(0, f.key.rfind('.'));
    if (s != section) {
      if (!section.empty()) out += '\n';
      section = s;
    }
    out += f.key + " = " + f.get(config) + '\n';
  }
  return out;
}

}  // namespace fsopoint

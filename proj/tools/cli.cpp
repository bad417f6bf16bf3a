#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include "wgquant/constants.hpp"
#include "wgquant/gauge.hpp"
#include "wgquant/quanta.hpp"

namespace wgquant::cli {

namespace {

using constants::hbar;
using constants::pi;

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  return out + "\"";
}

// Insertion-ordered JSON object with values already serialized.
class JsonObject {
 public:
  JsonObject& raw(const std::string& key, std::string value) {
    fields_.emplace_back(key, std::move(value));
    return *this;
  }
  JsonObject& add(const std::string& key, double v) { return raw(key, num(v)); }
  JsonObject& add(const std::string& key, int v) { return raw(key, std::to_string(v)); }
  JsonObject& add(const std::string& key, long v) { return raw(key, std::to_string(v)); }
  JsonObject& add(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
  JsonObject& add(const std::string& key, const std::string& v) { return raw(key, quoted(v)); }
  JsonObject& add(const std::string& key, const char* v) { return raw(key, quoted(v)); }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) out += ", ";
      out += quoted(fields_[i].first) + ": " + fields_[i].second;
    }
    return out + "}";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_array(const std::vector<std::string>& items) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < items.size(); ++i) out += "    " + items[i] + (i + 1 < items.size() ? ",\n" : "\n");
  return out + "  ]";
}

// Flat JSON object whose keys are long option names.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (auto it = j.begin(); it != j.end(); ++it) {
      CLI::ConfigItem item;
      item.name = it.key();
      const auto& v = it.value();
      if (v.is_string()) {
        item.inputs = {v.get<std::string>()};
      } else if (v.is_boolean()) {
        item.inputs = {v.get<bool>() ? "true" : "false"};
      } else if (v.is_number()) {
        item.inputs = {v.dump()};
      } else {
        throw CLI::ConfigError("config key '" + it.key() + "' must be a string, number or boolean");
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

struct RunConfig {
  std::string kind;  // empty: plates for TEM/TMplates/TEplates, rect otherwise
  double w = 0.0;    // 0: 2d for rect, 20d for plates
  double d = 0.01;
  double L = 0.1;
  std::string family = "TErect";
  int n = 1;
  int m = 1;
  long l = 1;
  double X = 1.0;
  double Y = 0.0;
  double theta0 = 0.0;
  double Em = 1.0;
  double t = 0.0;
  std::string frame = "tb";
  std::string format = "text";
  double fmax = 0.0;
  int cap = 50;
  int nx = 5;
  int ny = 5;
  int nz = 4;
  bool potentials = false;
  long l_min = 1;
  long l_max = 10000;
  int points = 0;
  std::string fault;
  std::string out;
};

Geometry build_geometry(const RunConfig& cfg, Family family) {
  std::string kind = cfg.kind;
  if (kind.empty()) {
    const bool plate_family = family == Family::TEM || family == Family::TMplates || family == Family::TEplates;
    kind = plate_family ? "plates" : "rect";
  }
  if (kind == "plates") return Geometry::plates(cfg.w > 0.0 ? cfg.w : 20.0 * cfg.d, cfg.d, cfg.L);
  if (kind == "rect") return Geometry::rectangular(cfg.w > 0.0 ? cfg.w : 2.0 * cfg.d, cfg.d, cfg.L);
  throw Error(ErrorCode::InvalidGeometry, "kind must be 'plates' or 'rect', got '" + kind + "'");
}

ModeId build_id(const RunConfig& cfg) {
  const Family family = parse_family(cfg.family);
  switch (family) {
    case Family::TEM: return ModeId::tem(cfg.l);
    case Family::TMplates: return ModeId::tm_plates(cfg.n, cfg.l);
    case Family::TEplates: return ModeId::te_plates(cfg.n, cfg.l);
    case Family::TMrect: return ModeId::tm_rect(cfg.n, cfg.m, cfg.l);
    case Family::TErect: return ModeId::te_rect(cfg.n, cfg.m, cfg.l);
  }
  return ModeId::tem(cfg.l);
}

Mode build_mode(const RunConfig& cfg) {
  const ModeId id = build_id(cfg);
  return make_mode(build_geometry(cfg, id.family), id);
}

Frame parse_frame(const std::string& s) {
  if (s == "tb") return Frame::TopBottom;
  if (s == "lr") return Frame::LeftRight;
  throw Error(ErrorCode::InvalidFrame, "frame must be 'tb' or 'lr', got '" + s + "'");
}

Quadratures quadratures(const RunConfig& cfg) { return {cfg.X, cfg.Y, cfg.theta0}; }

void warn_geometry(const Geometry& g, std::ostream& err) {
  const std::string w = validity_warning(g);
  if (!w.empty()) err << "warning: " << w << "\n";
}

std::string geometry_json(const Geometry& g) {
  return JsonObject()
      .add("kind", g.kind == GuideKind::ParallelPlates ? "plates" : "rect")
      .add("w", g.w)
      .add("d", g.d)
      .add("L", g.L)
      .str();
}

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// ---- modes ----------------------------------------------------------------

void cmd_modes(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.fmax > 0.0)) throw Error(ErrorCode::InvalidMode, "--fmax must be positive");
  const std::string kind = cfg.kind.empty() ? "rect" : cfg.kind;
  RunConfig c = cfg;
  c.kind = kind;
  const Geometry g = build_geometry(c, Family::TEM);
  validate(g);
  warn_geometry(g, err);
  const auto branches = enumerate_modes(g, 2.0 * pi * cfg.fmax, cfg.cap);
  if (cfg.format == "json") {
    std::vector<std::string> rows;
    for (const Branch& b : branches) {
      rows.push_back(JsonObject()
                         .add("family", to_string(b.family))
                         .add("n", b.n)
                         .add("m", b.m)
                         .add("k_c", b.k_c)
                         .add("omega_c", b.omega_c)
                         .add("f_c", b.omega_c / (2.0 * pi))
                         .str());
    }
    out << "{\n  \"geometry\": " << geometry_json(g) << ",\n  \"f_max\": " << num(cfg.fmax)
        << ",\n  \"branches\": " << json_array(rows) << "\n}\n";
    return;
  }
  if (cfg.format != "text") throw Error(ErrorCode::InvalidMode, "--format must be 'text' or 'json'");
  char line[160];
  std::snprintf(line, sizeof line, "%-9s %3s %3s %24s %24s %24s\n", "family", "n", "m", "k_c[1/m]", "omega_c[rad/s]",
                "f_c[Hz]");
  out << line;
  for (const Branch& b : branches) {
    std::snprintf(line, sizeof line, "%-9s %3d %3d %24s %24s %24s\n", to_string(b.family).c_str(), b.n, b.m,
                  num(b.k_c).c_str(), num(b.omega_c).c_str(), num(b.omega_c / (2.0 * pi)).c_str());
    out << line;
  }
}

// ---- field ----------------------------------------------------------------

std::vector<double> axis(double lo, double hi, int count) {
  if (count == 1) return {0.5 * (lo + hi)};
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

void cmd_field(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Mode mode = build_mode(cfg);
  warn_geometry(mode.guide, err);
  const Frame frame = parse_frame(cfg.frame);
  require_frame(mode, frame);
  if (cfg.nx < 1 || cfg.ny < 1 || cfg.nz < 1) throw Error(ErrorCode::GridTooCoarse, "grid sizes must be positive");
  const Quadratures q = quadratures(cfg);
  const double E_ref = frame == Frame::TopBottom ? cfg.Em : convert_frame(mode, cfg.Em, frame, Frame::TopBottom);
  const double hw = 0.5 * mode.guide.w;
  const double hd = 0.5 * mode.guide.d;
  const auto xs = axis(-hw, hw, cfg.nx);
  const auto ys = axis(-hd, hd, cfg.ny);
  std::vector<double> zs(cfg.nz);
  for (int k = 0; k < cfg.nz; ++k) zs[k] = mode.wavelength() * k / cfg.nz;

  out << "x,y,z,t,Ex,Ey,Ez,Bx,By,Bz";
  if (cfg.potentials) out << ",Ax,Ay,Az,V";
  out << "\n";
  for (double z : zs) {
    for (double y : ys) {
      for (double x : xs) {
        const Vec3 r(x, y, z);
        const FieldSample fs = eval_fields(mode, frame, q, cfg.Em, r, cfg.t);
        out << num(x) << ',' << num(y) << ',' << num(z) << ',' << num(cfg.t);
        for (int i = 0; i < 3; ++i) out << ',' << num(fs.E[i]);
        for (int i = 0; i < 3; ++i) out << ',' << num(fs.B[i]);
        if (cfg.potentials) {
          const PotentialSample p = eval_potentials(mode, q, E_ref, r, cfg.t);
          for (int i = 0; i < 3; ++i) out << ',' << num(p.A[i]);
          out << ',' << num(p.V);
        }
        out << "\n";
      }
    }
  }
}

// ---- verify ---------------------------------------------------------------

struct Check {
  Check(std::string n, double r, double tol) : name(std::move(n)), residual(r), tolerance(tol) {}

  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool applicable = true;
  std::string law;
  bool extra_ok = true;

  bool pass() const { return residual <= tolerance && extra_ok; }
};

Check check_maxwell(const Mode& mode, const Quadratures& q, double E_m, double t) {
  const Frame frame = frame_valid(mode, Frame::TopBottom) ? Frame::TopBottom : Frame::LeftRight;
  const Residual r = maxwell_residual(mode, frame, q, E_m, VolumeGrid{}, t, default_stencil(mode));
  return {"maxwell", r.relative, 1e-6};
}

Check check_conservation(const Mode& mode, const Quadratures& q, double E_m, double t) {
  const Stencil<double> st = default_stencil(mode);
  double worst = 0.0;
  for (ElectrodeId id : {ElectrodeId::Top, ElectrodeId::Bottom, ElectrodeId::Left, ElectrodeId::Right}) {
    if (!pair_defined(mode, pair_of(id))) continue;
    worst = std::max(worst, charge_conservation_residual(mode, id, q, E_m, SurfaceGrid{17, 17}, t, st).relative);
  }
  return {"conservation", worst, 1e-6};
}

Check check_propagation(const Mode& mode, const Quadratures& q, double E_m, double t, bool drop_kc) {
  const PropagationLaw law = propagation_law(mode);
  const PropagationLaw used = drop_kc ? PropagationLaw::Wave : law;
  double worst = 0.0;
  for (Pair pair : {Pair::TopBottom, Pair::LeftRight}) {
    if (!pair_canonical(mode, pair)) continue;
    worst = std::max(worst, flux_propagation_residual(mode, pair, used, q, E_m, SurfaceGrid{9, 17}, t).relative);
  }
  Check c{"propagation", worst, 1e-8};
  c.law = to_string(law);
  return c;
}

Check check_motion(const Mode& mode, const Quadratures& q, double E_m, double t) {
  const MotionConstants mc = motion_by_quadrature(mode, q, E_m, t);
  const FluxFormEnergy cf = closed_form_energy(mode, q, E_m);
  Check c{"motion_equality", std::max(rel(mc.H, cf.H()), rel(mc.P.z(), cf.P_z)), 1e-8};
  c.extra_ok = mc.J.norm() <= 1e-10 * mc.H / mode.omega();
  return c;
}

Check check_pairs(const Mode& mode, const Quadratures& q, double E_m, double t) {
  Check c{"pair_equivalence", 0.0, 1e-8};
  if (!(pair_canonical(mode, Pair::TopBottom) && pair_canonical(mode, Pair::LeftRight))) {
    c.applicable = false;
    return c;
  }
  const double E_lr = convert_frame(mode, E_m, Frame::TopBottom, Frame::LeftRight);
  double peak = 0.0;
  double mismatch = 0.0;
  for (const Vec3& r : interior_points(mode, VolumeGrid{9, 9, 9})) {
    const FieldSample a = eval_fields(mode, Frame::TopBottom, q, E_m, r, t);
    const FieldSample b = eval_fields(mode, Frame::LeftRight, q, E_lr, r, t);
    peak = std::max({peak, a.E.norm(), constants::c * a.B.norm()});
    mismatch = std::max({mismatch, (a.E - b.E).norm(), constants::c * (a.B - b.B).norm()});
  }
  double worst = peak > 0.0 ? mismatch / peak : 0.0;
  const FluxFormEnergy tb = energy_by_modal_line(mode, Pair::TopBottom, q, E_m, t);
  const FluxFormEnergy lr = energy_by_modal_line(mode, Pair::LeftRight, q, E_m, t);
  worst = std::max({worst, rel(tb.H(), lr.H()), rel(tb.P_z, lr.P_z)});
  const QuantumAmplitudes qtb = quantize(mode, Pair::TopBottom);
  const QuantumAmplitudes qlr = quantize(mode, Pair::LeftRight);
  worst = std::max({worst, rel(std::abs(qtb.E_m_reference), std::abs(qlr.E_m_reference)),
                    rel(qtb.action(mode.omega()), qlr.action(mode.omega()))});
  c.residual = worst;
  return c;
}

Check check_quantization(const Mode& mode, const Quadratures& q, double t) {
  const QuantumAmplitudes qa = quantize(mode);
  double worst = rel(qa.action(mode.omega()), hbar);
  for (int n : {0, 1, 2}) {
    const Quadratures qn{2.0 * std::sqrt(n + 0.5), 0.0, q.theta0};
    const MotionConstants mc = motion_by_quadrature(mode, qn, qa.E_m_reference, t);
    const ClassicalConstants cf = closed_form_constants(mode, n);
    worst = std::max({worst, rel(mc.H, cf.H), rel(mc.P.z(), cf.P_z)});
  }
  return {"quantization_closure", worst, 1e-8};
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool drop_kc = false;
  if (!cfg.fault.empty()) {
    if (cfg.fault != "drop-kc-term") throw Error(ErrorCode::InvalidMode, "unknown fault '" + cfg.fault + "'");
    drop_kc = true;
  }
  const Mode mode = build_mode(cfg);
  warn_geometry(mode.guide, err);
  const Quadratures q = quadratures(cfg);
  const double E_m = cfg.Em;
  const double t = cfg.t;

  std::vector<Check> checks;
  checks.push_back(check_maxwell(mode, q, E_m, t));
  checks.emplace_back("boundary", wall_residual(mode, q, E_m, t).relative, 1e-12);
  checks.push_back(check_conservation(mode, q, E_m, t));
  checks.emplace_back("lorenz", lorenz_residual(mode, VolumeGrid{}, q, E_m, t).relative, 1e-6);
  checks.emplace_back("reconstruction",
                      reconstruction_residual(mode, VolumeGrid{}, q, E_m, t, default_stencil(mode)).relative, 1e-6);
  checks.emplace_back("flux_link", flux_link_residual(mode, q, E_m).relative, 1e-10);
  checks.push_back(check_propagation(mode, q, E_m, t, drop_kc));
  checks.push_back(check_motion(mode, q, E_m, t));
  checks.push_back(check_pairs(mode, q, E_m, t));
  checks.push_back(check_quantization(mode, q, t));

  bool all = true;
  std::vector<std::string> rows;
  for (const Check& c : checks) {
    JsonObject o;
    o.add("name", c.name);
    if (!c.law.empty()) o.add("law", c.law);
    o.add("applicable", c.applicable).add("residual", c.residual).add("tolerance", c.tolerance).add("pass", c.pass());
    rows.push_back(o.str());
    all = all && c.pass();
    if (!c.pass()) err << "check failed: " << c.name << " residual " << num(c.residual) << "\n";
  }
  out << "{\n  \"mode\": " << quoted(to_string(mode.id)) << ",\n  \"geometry\": " << geometry_json(mode.guide)
      << ",\n  \"checks\": " << json_array(rows) << ",\n  \"pass\": " << (all ? "true" : "false") << "\n}\n";
  return all ? 0 : 1;
}

// ---- zpf ------------------------------------------------------------------

std::vector<long> sweep_indices(long lo, long hi, int points) {
  if (lo < 1 || hi < lo) throw Error(ErrorCode::InvalidMode, "need 1 <= l-min <= l-max");
  std::vector<long> ls;
  if (points <= 0 || hi - lo + 1 <= points) {
    for (long l = lo; l <= hi; ++l) ls.push_back(l);
    return ls;
  }
  if (points < 2) throw Error(ErrorCode::InvalidMode, "--points must be at least 2");
  // Logarithmic spacing, rounded to distinct integers.
  std::set<long> picked;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (int i = 0; i < points; ++i) picked.insert(std::lround(std::exp(a + (b - a) * i / (points - 1))));
  picked.insert(lo);
  picked.insert(hi);
  return {picked.begin(), picked.end()};
}

void cmd_zpf(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModeId id = build_id(cfg);
  const Geometry g = build_geometry(cfg, id.family);
  validate(g, id);
  warn_geometry(g, err);
  const auto ls = sweep_indices(cfg.l_min, cfg.l_max, cfg.points);
  const auto sweep = zpf_ratio_sweep(g, id, ls);
  out << "l,ratio\n";
  for (const ZpfPoint& p : sweep) out << static_cast<long>(p.l) << ',' << num(p.ratio) << "\n";
  // Far beyond any integer index in the sweep; stands in for l -> infinity.
  const double beta_far = 1e9 * std::max(make_mode(g, id).kc(), 2.0 * pi / g.L);
  const double limit = zpf_ratio_sweep_beta(g, id, {beta_far}).front().ratio;
  err << to_string(id.family) << " zpf ratio: l=" << ls.front() << " -> " << num(sweep.front().ratio)
      << ", l=" << ls.back() << " -> " << num(sweep.back().ratio) << ", l->inf -> " << num(limit) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Guided-mode fields, flux variables and their quantization", "wgquant"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  app.add_option("--kind", cfg.kind, "plates or rect (default: from the family)")->group("Geometry");
  app.add_option("--w", cfg.w, "width [m] (default 2d for rect, 20d for plates)")->group("Geometry");
  app.add_option("--d", cfg.d, "gap or height [m]")->group("Geometry")->capture_default_str();
  app.add_option("--L", cfg.L, "guide length [m]")->group("Geometry")->capture_default_str();
  app.add_option("--family", cfg.family, "TEM, TMplates, TEplates, TMrect or TErect")->group("Mode")
      ->capture_default_str();
  app.add_option("--n", cfg.n, "index along the gap d")->group("Mode")->capture_default_str();
  app.add_option("--m", cfg.m, "index along the width w")->group("Mode")->capture_default_str();
  app.add_option("--l", cfg.l, "longitudinal index")->group("Mode")->capture_default_str();
  app.add_option("--X", cfg.X, "quadrature X")->group("State")->capture_default_str();
  app.add_option("--Y", cfg.Y, "quadrature Y")->group("State")->capture_default_str();
  app.add_option("--theta0", cfg.theta0, "phase offset [rad]")->group("State")->capture_default_str();
  app.add_option("--Em", cfg.Em, "field amplitude [V/m]")->group("State")->capture_default_str();
  app.add_option("--t", cfg.t, "time [s]")->group("State")->capture_default_str();
  app.add_option("--out", cfg.out, "write data here instead of stdout");

  app.add_option("--fmax", cfg.fmax, "highest frequency [Hz]")->group("modes");
  app.add_option("--cap", cfg.cap, "largest transverse index searched")->group("modes")->capture_default_str();
  app.add_option("--format", cfg.format, "text or json")->group("modes")->capture_default_str();
  app.add_option("--nx", cfg.nx, "points across w")->group("field")->capture_default_str();
  app.add_option("--ny", cfg.ny, "points across d")->group("field")->capture_default_str();
  app.add_option("--nz", cfg.nz, "points along one wavelength")->group("field")->capture_default_str();
  app.add_option("--frame", cfg.frame, "tb or lr amplitude reference")->group("field")->capture_default_str();
  app.add_flag("--with-potentials", cfg.potentials, "append Ax,Ay,Az,V")->group("field");
  app.add_option("--l-min", cfg.l_min, "first l")->group("zpf")->capture_default_str();
  app.add_option("--l-max", cfg.l_max, "last l")->group("zpf")->capture_default_str();
  app.add_option("--points", cfg.points, "log-spaced sample count (0: every l)")->group("zpf")->capture_default_str();
  app.add_option("--fault", cfg.fault)->group("");

  // Options live on the top level so one flat config file serves every subcommand.
  auto* modes = app.add_subcommand("modes", "list propagating branches below --fmax");
  auto* field = app.add_subcommand("field", "sample E and B on a grid as CSV");
  auto* verify = app.add_subcommand("verify", "run every consistency check and report JSON");
  auto* zpf = app.add_subcommand("zpf", "zero-point amplitude over E_zpf against l as CSV");
  for (auto* sub : {modes, field, verify, zpf}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    std::string msg = e.what();
    const std::string extras = "INI was not able to parse ";
    if (msg.rfind(extras, 0) == 0) msg = "unknown config key '" + msg.substr(extras.size()) + "'";
    err << "error: " << msg << "\n";
    return 2;
  }

  std::ostringstream data;
  int code = 0;
  try {
    if (*modes) cmd_modes(cfg, data, err);
    if (*field) cmd_field(cfg, data, err);
    if (*verify) code = cmd_verify(cfg, data, err);
    if (*zpf) cmd_zpf(cfg, data, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (cfg.out.empty()) {
    out << data.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << data.str();
  }
  return code;
}

}  // namespace wgquant::cli

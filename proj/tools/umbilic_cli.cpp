// Command-line front end.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 parse error in a spec or
// experiment file, 3 analysis error.
#include "umbilic/experiment.hpp"
#include "umbilic/umbilic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#ifndef UMBILIC_DEFAULT_MODEL_DIR
#define UMBILIC_DEFAULT_MODEL_DIR "models"
#endif

using namespace umbilic;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kAnalysis = 3 };

struct Failure {
  int code;
  std::string message;
};

std::string model_dir() {
  if (const char* env = std::getenv("UMBILIC_MODEL_DIR"); env && *env) return env;
  return UMBILIC_DEFAULT_MODEL_DIR;
}

void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw Failure{kUsage, "cannot open " + path};
}

MongePatch read_patch(const std::string& path, int order) {
  require_file(path);
  MongePatch p;
  try {
    p = load_surface_spec(path);
  } catch (const ParseError& e) {
    throw Failure{kParse, path + ": " + e.what()};
  }
  if (order > 0) p.order = std::max(order, 2);
  return p;
}

std::string opt_string(const std::optional<MultiplicityResult>& m) { return m ? m->to_string() : "n/a"; }

std::string opt_string(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; }

ordered_json opt_json(const std::optional<MultiplicityResult>& m) {
  if (!m) return nullptr;
  if (m->infinite) return "infinite";
  return m->value;
}

ordered_json opt_json(const std::optional<bool>& b) { return b ? ordered_json(*b) : ordered_json(nullptr); }

struct Output {
  std::string path;
  std::ostringstream buf;
  void flush() {
    if (path.empty()) {
      std::cout << buf.str();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kUsage, "cannot write " + path};
    out << buf.str();
  }
};

// --- analyze --------------------------------------------------------------

struct AnalyzeResult {
  std::string text;
  ordered_json record;
};

AnalyzeResult analyze_one(const std::string& path, int order, const std::optional<Scalar>& radius) {
  MongePatch p = read_patch(path, order);
  UmbilicReport r = analyze_umbilic(p);
  if (r.causal_type == CausalType::NotUmbilic)
    throw Error(ErrorCode::NotUmbilic, "the origin of " + path + " is not an umbilic");
  EquivalencePanel panel = equivalence_panel(p, r);
  std::optional<bool> inequality;
  if (r.m_u && r.m_omega && r.m_u->finite() && r.m_omega->finite())
    inequality = r.m_omega->value >= 3 * r.m_u->value;

  std::ostringstream t;
  t << "patch: " << (p.name.empty() ? path : p.name) << "\n";
  t << "causal type: " << causal_name(r.causal_type) << "\n";
  t << "m_u: " << opt_string(r.m_u) << "\n";
  t << "m(omega): " << opt_string(r.m_omega) << "\n";
  t << "m(omega) >= 3 m_u: " << opt_string(inequality) << "\n";
  if (r.discriminant_class) t << "discriminant class: " << r.discriminant_class->to_string() << "\n";
  if (r.ld_class) t << "LD class: " << r.ld_class->to_string() << "\n";
  if (r.ld_milnor) t << "LD Milnor number: " << r.ld_milnor->to_string() << "\n";
  t << "configuration: " << r.config.to_string();
  if (!r.config.reason.empty()) t << " (" << r.config.reason << ")";
  t << "\n";
  t << "equivalence panel: m_u = 1 " << (panel.mu_one ? "yes" : "no") << ", Morse " << (panel.morse ? "yes" : "no")
    << ", versal " << opt_string(panel.versal) << ", transverse " << opt_string(panel.transverse)
    << (panel.agree() ? "" : "  [DISAGREE]") << "\n";
  for (const auto& e : r.errors) t << "note: " << e << "\n";

  ordered_json j;
  j["patch"] = p.name.empty() ? path : p.name;
  j["causal_type"] = causal_name(r.causal_type);
  j["m_u"] = opt_json(r.m_u);
  j["m_omega"] = opt_json(r.m_omega);
  j["inequality_holds"] = opt_json(inequality);
  j["discriminant_class"] = r.discriminant_class ? ordered_json(r.discriminant_class->to_string()) : nullptr;
  j["ld_class"] = r.ld_class ? ordered_json(r.ld_class->to_string()) : nullptr;
  j["ld_milnor"] = opt_json(r.ld_milnor);
  j["config"] = r.config.to_string();
  j["panel"] = {{"mu_one", panel.mu_one},
                {"morse", panel.morse},
                {"versal", opt_json(panel.versal)},
                {"transverse", opt_json(panel.transverse)},
                {"agree", panel.agree()}};
  j["notes"] = r.errors;

  if (radius) {
    auto us = find_umbilics(p, *radius);
    t << "real umbilics in |x|, |y| < " << to_string(*radius) << ":\n";
    ordered_json list = ordered_json::array();
    for (const auto& u : us) {
      char line[160];
      std::snprintf(line, sizeof line, "  (%.12g, %.12g) multiplicity %d%s\n", u.x, u.y, u.multiplicity,
                    u.morse ? " morse" : "");
      t << line;
      list.push_back({{"x", u.x}, {"y", u.y}, {"multiplicity", u.multiplicity}, {"morse", u.morse}});
    }
    auto cc = complex_count(p, *radius);
    t << "complex count: " << (cc ? std::to_string(*cc) : "n/a") << "\n";
    j["umbilics"] = list;
    j["complex_count"] = cc ? ordered_json(*cc) : nullptr;
  }
  return {t.str(), j};
}

int cmd_analyze(const std::vector<std::string>& files, int order, const std::string& radius_text,
                const std::string& format, Output& out) {
  std::optional<Scalar> radius;
  if (!radius_text.empty()) {
    radius = parse_rational(radius_text);
    if (!radius || *radius <= 0) throw Failure{kUsage, "--radius expects a positive rational such as 1/8"};
  }
  // patches fan out across threads; output keeps the command-line order
  std::vector<std::optional<AnalyzeResult>> results(files.size());
  std::vector<std::optional<Failure>> failures(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < files.size();) {
      try {
        results[k] = analyze_one(files[k], order, radius);
      } catch (const Failure& f) {
        failures[k] = f;
      } catch (const Error& e) {
        failures[k] = Failure{kAnalysis, files[k] + ": " + e.what()};
      }
    }
  };
  std::size_t n = std::min<std::size_t>(files.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kOk;
  ordered_json records = ordered_json::array();
  for (std::size_t k = 0; k < files.size(); ++k) {
    if (failures[k]) {
      std::cerr << "error: " << failures[k]->message << "\n";
      code = std::max(code, failures[k]->code);
      continue;
    }
    if (format == "records") {
      records.push_back(results[k]->record);
    } else {
      if (k) out.buf << "\n";
      out.buf << results[k]->text;
    }
  }
  if (format == "records") out.buf << (records.size() == 1 ? records[0] : records).dump(2) << "\n";
  out.flush();
  return code;
}

// --- stratify -------------------------------------------------------------

struct Grid {
  Scalar lo, hi;
  int n;
};

Grid parse_grid(const std::string& s) {
  auto a = s.find(':'), b = s.rfind(':');
  if (a == std::string::npos || a == b) throw Failure{kUsage, "--grid expects lo:hi:n, e.g. -4:4:9"};
  auto lo = parse_rational(s.substr(0, a)), hi = parse_rational(s.substr(a + 1, b - a - 1));
  int n = 0;
  try {
    n = std::stoi(s.substr(b + 1));
  } catch (...) {
  }
  if (!lo || !hi || !(*lo < *hi) || n < 2) throw Failure{kUsage, "--grid expects lo:hi:n with lo < hi and n >= 2"};
  return {*lo, *hi, n};
}

std::string strata_svg(StrataPlane plane, const Grid& g) {
  PhasePortrait pp;
  pp.box = {to_double(g.lo), to_double(g.hi), to_double(g.lo), to_double(g.hi)};
  for (const auto& c : strata_curves(plane)) {
    Overlay o{curve_name(c.kind), detail::contour([&](double s, double t) { return c.poly.eval(s, t); }, pp.box, 400)};
    pp.overlays.push_back(std::move(o));
  }
  return emit_svg(pp);
}

int cmd_stratify(const std::string& plane_text, const std::string& grid_text, const std::string& svg_path,
                 const std::string& format, Output& out) {
  StrataPlane plane = parse_plane(plane_text);
  Grid g = parse_grid(grid_text);
  const RegionCatalog& cat = default_catalog(plane);
  ordered_json records = ordered_json::array();
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      Scalar s = g.lo + (g.hi - g.lo) * Scalar(i, g.n - 1), t = g.lo + (g.hi - g.lo) * Scalar(j, g.n - 1);
      StratumLabel lab = stratify(cat, s, t);
      std::vector<std::string> curves;
      for (auto c : lab.on_curves) curves.push_back(curve_name(c));
      if (format == "records") {
        records.push_back({{"s", to_string(s)},
                           {"t", to_string(t)},
                           {"region", lab.region_id},
                           {"config", lab.predicted},
                           {"curves", curves},
                           {"mult_one", lab.mult_one}});
      } else {
        out.buf << to_string(s) << "\t" << to_string(t) << "\t";
        out.buf << (lab.region_id >= 0 ? "region " + std::to_string(lab.region_id) : std::string("curve")) << "\t"
                << lab.predicted;
        for (const auto& c : curves) out.buf << "\t" << c;
        if (!lab.mult_one) out.buf << "\tm_u>1";
        out.buf << "\n";
      }
    }
  if (format == "records") out.buf << records.dump(2) << "\n";
  out.flush();
  if (!svg_path.empty()) {
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw Failure{kUsage, "cannot write " + svg_path};
    svg << strata_svg(plane, g);
  }
  return kOk;
}

// --- portrait -------------------------------------------------------------

PortraitStyle load_style(const std::string& path) {
  PortraitStyle st;
  if (path.empty()) return st;
  std::ifstream in(path);
  if (!in) throw Failure{kUsage, "cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
    st.size = j.value("size", st.size);
    st.margin = j.value("margin", st.margin);
    st.line_width = j.value("line_width", st.line_width);
    st.separatrix_width = j.value("separatrix_width", st.separatrix_width);
    st.overlay_width = j.value("overlay_width", st.overlay_width);
    st.family1 = j.value("family1", st.family1);
    st.family2 = j.value("family2", st.family2);
    st.discriminant = j.value("discriminant", st.discriminant);
    st.ld = j.value("ld", st.ld);
    st.lpl = j.value("lpl", st.lpl);
  } catch (const nlohmann::json::exception& e) {
    throw Failure{kParse, path + ": " + e.what()};
  }
  return st;
}

std::vector<double> parse_numbers(const std::string& s, std::size_t count, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (...) {
      throw Failure{kUsage, std::string(flag) + ": bad number '" + item + "'"};
    }
  }
  if (v.size() != count) throw Failure{kUsage, std::string(flag) + " expects " + std::to_string(count) + " values"};
  return v;
}

int cmd_portrait(const std::string& file, int order, const std::string& box, double step, double max_len, int grid,
                 const std::vector<std::string>& seeds, const std::string& style, Output& out) {
  MongePatch p = read_patch(file, order);
  PortraitOptions o;
  if (!box.empty()) {
    auto b = parse_numbers(box, 4, "--box");
    o.box = {b[0], b[1], b[2], b[3]};
  }
  o.step = step;
  o.max_len = max_len;
  o.seed_grid = grid;
  for (const auto& s : seeds) {
    auto xy = parse_numbers(s, 2, "--seed");
    o.seeds.push_back({xy[0], xy[1]});
  }
  out.buf << emit_svg(integrate_lines(p, o), load_style(style));
  out.flush();
  return kOk;
}

// --- deform ---------------------------------------------------------------

int cmd_deform(const std::string& file, const std::string& radius_text, const std::string& format, Output& out) {
  require_file(file);
  ExperimentSpec ex;
  try {
    ex = load_experiment(file);
  } catch (const ParseError& e) {
    throw Failure{kParse, file + ": " + e.what()};
  }
  if (!radius_text.empty()) {
    auto r = parse_rational(radius_text);
    if (!r || *r <= 0) throw Failure{kUsage, "--radius expects a positive rational such as 1/8"};
    ex.radius = *r;
  }
  SplitExperiment res = split_experiment(ex.patch, ex.family, ex.radius, ex.tolerance);
  if (format == "records") {
    ordered_json j;
    j["m_u"] = res.mu.to_string();
    j["radius"] = to_string(ex.radius);
    j["max_real_observed"] = res.max_real_observed;
    j["conserved"] = res.conserved;
    j["all_morse"] = res.all_morse;
    j["bounded"] = res.bounded;
    ordered_json members = ordered_json::array();
    for (const auto& m : res.members) {
      ordered_json mj;
      std::vector<std::string> d;
      for (const auto& x : m.deltas) d.push_back(to_string(x));
      mj["deltas"] = d;
      mj["radius"] = to_string(m.radius);
      mj["complex_count"] = m.complex_count ? ordered_json(*m.complex_count) : nullptr;
      ordered_json us = ordered_json::array();
      for (const auto& u : m.real_umbilics)
        us.push_back({{"x", u.x}, {"y", u.y}, {"multiplicity", u.multiplicity}, {"morse", u.morse}});
      mj["real_umbilics"] = us;
      if (!m.error.empty()) mj["error"] = m.error;
      members.push_back(mj);
    }
    j["members"] = members;
    out.buf << j.dump(2) << "\n";
  } else {
    out.buf << "m_u: " << res.mu.to_string() << "\n";
    out.buf << "members: " << res.members.size() << "\n";
    for (const auto& m : res.members) {
      out.buf << "delta (";
      for (std::size_t k = 0; k < m.deltas.size(); ++k) out.buf << (k ? ", " : "") << to_string(m.deltas[k]);
      out.buf << ") radius " << to_string(m.radius) << ": ";
      if (!m.error.empty()) {
        out.buf << "error " << m.error << "\n";
        continue;
      }
      out.buf << "complex " << (m.complex_count ? std::to_string(*m.complex_count) : "n/a") << ", real "
              << m.real_umbilics.size();
      for (const auto& u : m.real_umbilics) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " (%.6g, %.6g)%s", u.x, u.y, u.morse ? "" : " non-morse");
        out.buf << buf;
      }
      out.buf << "\n";
    }
    out.buf << "max real observed: " << res.max_real_observed << "\n";
    out.buf << "conserved: " << (res.conserved ? "yes" : "no") << ", all morse: " << (res.all_morse ? "yes" : "no")
            << ", bounded: " << (res.bounded ? "yes" : "no") << "\n";
  }
  out.flush();
  return kOk;
}

// --- models list ----------------------------------------------------------

int cmd_models_list(const std::string& format, Output& out) {
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(model_dir(), ec))
    if (e.path().extension() == ".surf") files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());
  if (format == "records") {
    ordered_json j;
    j["library"] = model_names();
    j["directory"] = model_dir();
    j["files"] = files;
    out.buf << j.dump(2) << "\n";
  } else {
    out.buf << "library models:\n";
    for (const auto& n : model_names()) out.buf << "  " << n << "\n";
    out.buf << "spec files in " << model_dir() << ":\n";
    for (const auto& f : files) out.buf << "  " << f << "\n";
  }
  out.flush();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Umbilic multiplicities, configurations and curvature-line portraits"};
  app.require_subcommand(1);
  Output out;
  int order = 0;
  std::string format = "text";
  auto common = [&](CLI::App* c) {
    c->add_option("--out", out.path, "Write the result to FILE instead of stdout");
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "records"}));
  };

  std::vector<std::string> files;
  std::string radius;
  auto* analyze = app.add_subcommand("analyze", "Analyse the umbilic at the origin of one or more spec files");
  analyze->add_option("spec", files, "Surface spec files")->required();
  analyze->add_option("--order", order, "Starting truncation order");
  analyze->add_option("--radius", radius, "Also locate umbilics in the disk of this rational radius");
  common(analyze);

  std::string plane, grid = "-4:4:9", svg;
  auto* strat = app.add_subcommand("stratify", "Label a grid of a parameter plane");
  strat->add_option("plane", plane, "beta, timelike_i, timelike_iii_plus or timelike_iii_minus")->required();
  strat->add_option("--grid", grid, "lo:hi:n in both coordinates (rationals)");
  strat->add_option("--svg", svg, "Also draw the strata curves to this SVG file");
  common(strat);

  std::string spec, box, style;
  double step = 0.01, max_len = 1.0;
  int seed_grid = 5;
  std::vector<std::string> seeds;
  auto* portrait = app.add_subcommand("portrait", "Draw the curvature lines near the origin as SVG");
  portrait->add_option("spec", spec, "Surface spec file")->required();
  portrait->add_option("--order", order, "Starting truncation order");
  portrait->add_option("--box", box, "xmin:xmax:ymin:ymax");
  portrait->add_option("--step", step, "Integration step");
  portrait->add_option("--max-len", max_len, "Maximum length of one polyline");
  portrait->add_option("--seeds", seed_grid, "Seed lattice size");
  portrait->add_option("--seed", seeds, "Explicit seed x:y (repeatable)");
  portrait->add_option("--style", style, "JSON file with stroke widths and colours");
  portrait->add_option("--out", out.path, "Write the SVG to FILE instead of stdout");

  std::string experiment;
  auto* deform = app.add_subcommand("deform", "Run a deformation experiment");
  deform->add_option("experiment", experiment, "Experiment JSON file")->required();
  deform->add_option("--radius", radius, "Override the disk radius (rational)");
  common(deform);

  auto* models = app.add_subcommand("models", "Bundled models");
  auto* models_list = models->add_subcommand("list", "List the model library and bundled spec files");
  models->require_subcommand(1);
  common(models_list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(files, order, radius, format, out);
    if (*strat) return cmd_stratify(plane, grid, svg, format, out);
    if (*portrait) return cmd_portrait(spec, order, box, step, max_len, seed_grid, seeds, style, out);
    if (*deform) return cmd_deform(experiment, radius, format, out);
    if (*models_list) return cmd_models_list(format, out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAnalysis;
  }
  return kUsage;
}

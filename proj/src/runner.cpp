#include "heisgeo/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "heisgeo/appendix.hpp"
#include "heisgeo/quadrature.hpp"
#include "heisgeo/sampling.hpp"
#include "heisgeo/surface.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heisgeo {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

const std::vector<std::string>& default_gallery() {
  static const std::vector<std::string> g = {
      "vertical", "horizontal", "paraboloid", "catenoid", "helicoid"};
  return g;
}

struct Task {
  GalleryEntry entry;
  std::string surface;
  std::string point_label;
  Point p;
  int pivot_variant = 0;
  std::string example_kind;
  double example_E = 1.0;
};

CheckResult exception_row(const std::string& surface, const std::string& point,
                          const std::string& what) {
  CheckResult r;
  r.id = "pointwise_exception";
  r.surface = surface;
  r.point = point;
  r.lhs = 1.0;
  r.rhs = 0.0;
  r.residual = 1.0;
  r.tol = 0.0;
  r.pass = false;
  r.anchor = "check execution must not throw";
  r.notes = what;
  return r;
}

void sort_rows(std::vector<CheckResult>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     if (a.surface != b.surface) return a.surface < b.surface;
                     if (a.point != b.point) return a.point < b.point;
                     return a.id < b.id;
                   });
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  RunConfig cfg;
  const std::set<std::string> known = {
      "seed",        "points_per_surface", "pivot_variants", "tol_scale",
      "jobs",        "suites",             "checks",         "gallery",
      "catenoid_E",  "user_surfaces"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown config key '" + it.key() + "'");
  try {
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("points_per_surface"))
      cfg.points_per_surface = j["points_per_surface"].get<int>();
    if (j.contains("pivot_variants"))
      cfg.pivot_variants = j["pivot_variants"].get<int>();
    if (j.contains("tol_scale")) cfg.tol_scale = j["tol_scale"].get<double>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    if (j.contains("suites")) {
      const json& s = j["suites"];
      const std::set<std::string> ks = {"structure", "pointwise", "appendix",
                                        "integral"};
      for (auto it = s.begin(); it != s.end(); ++it)
        if (!ks.count(it.key()))
          throw ConfigError("unknown suite '" + it.key() + "'");
      if (s.contains("structure"))
        cfg.suite_structure = s["structure"].get<bool>();
      if (s.contains("pointwise"))
        cfg.suite_pointwise = s["pointwise"].get<bool>();
      if (s.contains("appendix"))
        cfg.suite_appendix = s["appendix"].get<bool>();
      if (s.contains("integral"))
        cfg.suite_integral = s["integral"].get<bool>();
    }
    if (j.contains("checks"))
      cfg.only_checks = j["checks"].get<std::vector<std::string>>();
    if (j.contains("gallery"))
      cfg.gallery = j["gallery"].get<std::vector<std::string>>();
    if (j.contains("catenoid_E")) cfg.catenoid_E = j["catenoid_E"].get<double>();
    if (j.contains("user_surfaces")) {
      for (const json& u : j["user_surfaces"]) {
        UserSurface us;
        us.id = u.at("id").get<std::string>();
        us.n = u.at("n").get<int>();
        if (u.contains("orientation"))
          us.orientation = u["orientation"].get<int>();
        us.u = u.at("u").get<std::string>();
        us.lo = u.at("lo").get<std::vector<double>>();
        us.hi = u.at("hi").get<std::vector<double>>();
        if (u.contains("zmin")) us.zmin = u["zmin"].get<double>();
        if (u.contains("zmax")) us.zmax = u["zmax"].get<double>();
        cfg.user_surfaces.push_back(std::move(us));
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  if (cfg.points_per_surface < 1 || cfg.points_per_surface > 2000)
    throw ConfigError("points_per_surface out of range");
  if (cfg.pivot_variants < 1 || cfg.pivot_variants > 8)
    throw ConfigError("pivot_variants out of range");
  if (!(cfg.tol_scale > 0.0)) throw ConfigError("tol_scale must be positive");
  if (cfg.jobs < 0) throw ConfigError("jobs must be >= 0");
  validate_check_ids(cfg.only_checks);
  for (const std::string& g : cfg.gallery) {
    const auto& dg = default_gallery();
    if (std::find(dg.begin(), dg.end(), g) == dg.end())
      throw ConfigError("unknown gallery surface '" + g + "'");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

std::vector<CheckInfo> full_catalog() {
  std::vector<CheckInfo> v = pointwise_check_infos();
  for (const CheckInfo& i : appendix_check_infos()) v.push_back(i);
  for (const CheckInfo& i : integral_check_infos()) v.push_back(i);
  v.push_back({"structure_suite_n1", "structure", "",
               "frame brackets, torsion, metricity, J-parallelism, flatness "
               "on random jets (n = 1)"});
  v.push_back({"structure_suite_n2", "structure", "",
               "frame brackets, torsion, metricity, J-parallelism, flatness "
               "on random jets (n = 2)"});
  return v;
}

void validate_check_ids(const std::vector<std::string>& ids) {
  if (ids.empty()) return;
  std::set<std::string> known;
  for (const CheckInfo& i : full_catalog()) known.insert(i.id);
  for (const std::string& id : ids)
    if (!known.count(id)) throw ConfigError("unknown check id '" + id + "'");
}

RunReport run_all(const RunConfig& cfg) {
  validate_check_ids(cfg.only_checks);
#ifdef _OPENMP
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
#endif
  const bool parallel = cfg.jobs != 1;
  const std::set<std::string> only(cfg.only_checks.begin(),
                                   cfg.only_checks.end());
  auto kept = [&](const std::string& id) {
    return only.empty() || only.count(id) > 0;
  };

  RunReport rep;
  std::vector<CheckResult> rows;

  // ambient structure rows -------------------------------------------------
  if (cfg.suite_structure) {
    for (int n : {1, 2}) {
      const std::string id = "structure_suite_n" + std::to_string(n);
      if (!kept(id)) continue;
      CheckResult r;
      r.id = id;
      r.surface = "ambient";
      r.point = "random";
      r.lhs = structure_suite_max_residual(n, 60, cfg.seed ^ fnv1a(id));
      r.rhs = 0.0;
      r.residual = r.lhs;
      r.tol = 1e-10 * cfg.tol_scale;
      r.pass = r.residual <= r.tol;
      r.anchor =
          "[X_j, Y_j] = -2T, flat pseudohermitian connection with torsion "
          "2<J(X_H), Y_H>T, parallel metric, J, and T";
      r.notes = "60 random base points, fresh random polynomial fields";
      rows.push_back(std::move(r));
    }
  }

  // pointwise rows over gallery and user surfaces ---------------------------
  std::vector<Task> tasks;
  if (cfg.suite_pointwise) {
    std::vector<GalleryEntry> entries;
    std::vector<std::string> example_kinds;
    const std::vector<std::string>& ids =
        cfg.gallery.empty() ? default_gallery() : cfg.gallery;
    for (const std::string& id : ids) {
      entries.push_back(gallery_entry(id, 2, cfg.catenoid_E));
      example_kinds.push_back(id);
    }
    for (const UserSurface& us : cfg.user_surfaces) {
      std::ostringstream txt;
      txt << "surface " << us.id << "\nn " << us.n << "\norientation "
          << us.orientation << "\nu " << us.u << "\n";
      SurfaceDef def;
      try {
        def = parse_surface(txt.str());
      } catch (const std::exception& e) {
        throw ConfigError("user surface '" + us.id + "': " + e.what());
      }
      const int dim = 2 * us.n + 1;
      if (static_cast<int>(us.lo.size()) != dim ||
          static_cast<int>(us.hi.size()) != dim)
        throw ConfigError("user surface '" + us.id +
                          "': lo/hi must have 2n+1 entries");
      GalleryEntry ge;
      ge.def = def;
      ge.region.lo = Eigen::Map<const Vec>(us.lo.data(), dim);
      ge.region.hi = Eigen::Map<const Vec>(us.hi.data(), dim);
      ge.region.zmin = us.zmin;
      ge.region.zmax = us.zmax;
      entries.push_back(std::move(ge));
      example_kinds.push_back("");
    }
    for (std::size_t s = 0; s < entries.size(); ++s) {
      const GalleryEntry& ge = entries[s];
      std::vector<Point> pts;
      try {
        pts = sample_points(ge, cfg.points_per_surface,
                            cfg.seed ^ fnv1a(ge.def.id));
      } catch (const std::exception& e) {
        rows.push_back(exception_row(ge.def.id, "-", e.what()));
        continue;
      }
      rep.n_points += static_cast<int>(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (int v = 0; v < cfg.pivot_variants; ++v) {
          Task t;
          t.entry = ge;
          t.surface = ge.def.id;
          char lbl[32];
          std::snprintf(lbl, sizeof(lbl), "p%02d.v%d", static_cast<int>(i), v);
          t.point_label = lbl;
          t.p = pts[i];
          t.pivot_variant = v;
          t.example_kind = example_kinds[s];
          t.example_E = cfg.catenoid_E;
          tasks.push_back(std::move(t));
        }
    }
    rep.n_surfaces = static_cast<int>(entries.size());
  }

  std::vector<std::vector<CheckResult>> task_rows(tasks.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long ti = 0; ti < static_cast<long>(tasks.size()); ++ti) {
    const Task& t = tasks[ti];
    CheckCtx ctx;
    ctx.def = &t.entry.def;
    ctx.surface = t.surface;
    ctx.point = t.point_label;
    ctx.p = t.p;
    ctx.tol_scale = cfg.tol_scale;
    ctx.fopts.pivot_variant = t.pivot_variant;
    ctx.field_seed = cfg.seed ^ fnv1a(t.surface + t.point_label);
    ctx.example_kind = t.example_kind;
    ctx.example_E = t.example_E;
    try {
      run_pointwise_checks(ctx, task_rows[ti]);
    } catch (const std::exception& e) {
      task_rows[ti].push_back(
          exception_row(t.surface, t.point_label, e.what()));
    }
  }
  for (std::vector<CheckResult>& tr : task_rows)
    for (CheckResult& r : tr) rows.push_back(std::move(r));

  // global suites ------------------------------------------------------------
  if (cfg.suite_appendix) run_appendix_checks(cfg.tol_scale, rows);
  if (cfg.suite_integral)
    run_integral_checks(cfg.tol_scale, parallel, rows);

  // filter + canonical order -------------------------------------------------
  if (!only.empty()) {
    std::vector<CheckResult> f;
    for (CheckResult& r : rows)
      if (only.count(r.id)) f.push_back(std::move(r));
    rows = std::move(f);
  }
  sort_rows(rows);
  for (const CheckResult& r : rows) (r.pass ? rep.n_pass : rep.n_fail)++;
  rep.rows = std::move(rows);
  return rep;
}

std::string csv_report(const std::vector<CheckResult>& rows) {
  std::string out =
      "surface,point,check_id,lhs,rhs,residual,margin,tol,pass,anchor\n";
  for (const CheckResult& r : rows) {
    out += csv_escape(r.surface) + "," + csv_escape(r.point) + "," +
           csv_escape(r.id) + "," + fmt17(r.lhs) + "," + fmt17(r.rhs) + "," +
           fmt17(r.residual) + "," + fmt17(r.margin) + "," + fmt17(r.tol) +
           "," + (r.pass ? "1" : "0") + "," + csv_escape(r.anchor) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string report_json(const RunConfig& cfg, const RunReport& rep) {
  ordered_json j;
  j["schema_version"] = 1;
  j["generator"] = "heisgeo";
  ordered_json cj;
  cj["seed"] = cfg.seed;
  cj["points_per_surface"] = cfg.points_per_surface;
  cj["pivot_variants"] = cfg.pivot_variants;
  cj["tol_scale"] = cfg.tol_scale;
  cj["jobs"] = cfg.jobs;
  cj["suites"] = {{"structure", cfg.suite_structure},
                  {"pointwise", cfg.suite_pointwise},
                  {"appendix", cfg.suite_appendix},
                  {"integral", cfg.suite_integral}};
  cj["checks"] = cfg.only_checks;
  cj["gallery"] = cfg.gallery.empty() ? default_gallery() : cfg.gallery;
  cj["catenoid_E"] = cfg.catenoid_E;
  cj["user_surfaces"] = ordered_json::array();
  for (const UserSurface& us : cfg.user_surfaces)
    cj["user_surfaces"].push_back({{"id", us.id}, {"n", us.n}, {"u", us.u}});
  j["config"] = cj;
  j["totals"] = {{"rows", rep.rows.size()},
                 {"pass", rep.n_pass},
                 {"fail", rep.n_fail},
                 {"surfaces", rep.n_surfaces},
                 {"points", rep.n_points}};

  struct Agg {
    int rows = 0, fail = 0;
    double worst_residual = 0.0;
    double worst_margin = std::numeric_limits<double>::infinity();
  };
  std::map<std::string, Agg> per_check;
  for (const CheckResult& r : rep.rows) {
    Agg& a = per_check[r.id];
    a.rows++;
    if (!r.pass) a.fail++;
    a.worst_residual = std::max(a.worst_residual, r.residual);
    if (is_inequality(r)) a.worst_margin = std::min(a.worst_margin, r.margin);
  }
  j["per_check"] = ordered_json::array();
  for (const auto& [id, a] : per_check) {
    ordered_json e;
    e["id"] = id;
    e["rows"] = a.rows;
    e["fail"] = a.fail;
    e["worst_residual"] = a.worst_residual;
    if (std::isfinite(a.worst_margin)) e["worst_margin"] = a.worst_margin;
    j["per_check"].push_back(std::move(e));
  }
  j["failures"] = ordered_json::array();
  int listed = 0;
  for (const CheckResult& r : rep.rows) {
    if (r.pass || listed >= 100) continue;
    ordered_json e;
    e["surface"] = r.surface;
    e["point"] = r.point;
    e["id"] = r.id;
    e["lhs"] = r.lhs;
    e["rhs"] = r.rhs;
    e["residual"] = r.residual;
    if (is_inequality(r)) e["margin"] = r.margin;
    e["tol"] = r.tol;
    e["notes"] = r.notes;
    j["failures"].push_back(std::move(e));
    ++listed;
  }
  return j.dump(2) + "\n";
}

std::string run_meta_json(const std::string& started_utc,
                          const std::string& finished_utc, double seconds,
                          int rows) {
  ordered_json j;
  j["started_utc"] = started_utc;
  j["finished_utc"] = finished_utc;
  j["elapsed_seconds"] = seconds;
  j["rows"] = rows;
#ifdef _OPENMP
  j["max_threads"] = omp_get_max_threads();
#else
  j["max_threads"] = 1;
#endif
  return j.dump(2) + "\n";
}

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace heisgeo

// Command-line driver: run the verification suites, list the check catalog,
// or describe the surface gallery.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "heisgeo/checks.hpp"
#include "heisgeo/gallery.hpp"
#include "heisgeo/runner.hpp"
#include "heisgeo/sampling.hpp"
#include "heisgeo/surface.hpp"

using namespace heisgeo;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            bool seed_set, uint64_t seed, bool jobs_set, int jobs,
            bool tol_set, double tol_scale) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (seed_set) cfg.seed = seed;
  if (jobs_set) cfg.jobs = jobs;
  if (tol_set) cfg.tol_scale = tol_scale;

  const std::string started = iso_utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const RunReport rep = run_all(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  const std::string finished = iso_utc_now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();

  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/report.csv", csv_report(rep.rows));
  write_text_file(out_dir + "/report.json", report_json(cfg, rep));
  write_text_file(out_dir + "/run_meta.json",
                  run_meta_json(started, finished, secs,
                                static_cast<int>(rep.rows.size())));

  std::printf("rows %zu  pass %d  fail %d  (%.1fs)\n", rep.rows.size(),
              rep.n_pass, rep.n_fail, secs);
  for (const CheckResult& r : rep.rows) {
    if (r.pass) continue;
    std::printf("FAIL %s %s %s residual=%.3e tol=%.3e\n", r.surface.c_str(),
                r.point.c_str(), r.id.c_str(), r.residual, r.tol);
  }
  std::printf("report: %s/report.csv\n", out_dir.c_str());
  return rep.n_fail == 0 ? 0 : 1;
}

int cmd_list_checks() {
  const std::vector<CheckInfo> cat = full_catalog();
  for (const CheckInfo& c : cat) {
    std::printf("%-36s %-10s %s\n", c.id.c_str(), c.kind.c_str(),
                c.anchor.c_str());
    if (!c.gates.empty()) std::printf("%36s gates: %s\n", "", c.gates.c_str());
  }
  std::printf("%zu checks\n", cat.size());
  return 0;
}

int cmd_gallery(uint64_t seed) {
  for (const std::string& id :
       {std::string("vertical"), std::string("horizontal"),
        std::string("paraboloid"), std::string("catenoid"),
        std::string("helicoid")}) {
    const GalleryEntry ge = gallery_entry(id, 2);
    std::printf("== %s (n = %d)\n", ge.def.id.c_str(), ge.def.n);
    std::printf("%s", print_surface(ge.def).c_str());
    if (!ge.notes.empty()) std::printf("notes: %s\n", ge.notes.c_str());
    const std::vector<Point> pts = sample_points(ge, 1, seed);
    const Gates g = measure_gates(ge.def, pts[0]);
    std::printf(
        "gates at a sample point: minimal=%d P1=%d P2=%d P3=%d  |H|=%.2e "
        "p1_res=%.2e p2_res=%.2e p3_val=%.2e\n\n",
        g.minimal, g.p1, g.p2, g.p3, std::abs(g.H), g.p1_res, g.p2_res,
        g.p3_val);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extrinsic sub-Riemannian geometry verifier for hypersurfaces "
               "in the Heisenberg group"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  uint64_t seed = 20260815;
  int jobs = 0;
  double tol_scale = 1.0;

  CLI::App* run = app.add_subcommand("run", "run the verification suites");
  run->add_option("--config", config_path, "JSON configuration file");
  run->add_option("--out", out_dir, "output directory (default: out)");
  CLI::Option* oseed = run->add_option("--seed", seed, "override RNG seed");
  CLI::Option* ojobs =
      run->add_option("--jobs", jobs, "thread count (1 = serial, 0 = auto)");
  CLI::Option* otol =
      run->add_option("--tol-scale", tol_scale, "tolerance multiplier");

  CLI::App* lc = app.add_subcommand("list-checks", "print the check catalog");
  CLI::App* gal =
      app.add_subcommand("gallery", "describe the built-in surface gallery");
  gal->add_option("--seed", seed, "RNG seed for the sample point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return cmd_run(config_path, out_dir, oseed->count() > 0, seed,
                     ojobs->count() > 0, jobs, otol->count() > 0, tol_scale);
    if (lc->parsed()) return cmd_list_checks();
    if (gal->parsed()) return cmd_gallery(seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

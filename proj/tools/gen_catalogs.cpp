// Regenerates fixtures/regions_<plane>.txt by flood-filling a grid.
#include "umbilic/strata.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace umbilic;

int main(int argc, char** argv) {
  CLI::App app{"Generate region catalogs for the strata planes"};
  std::string out_dir = "fixtures";
  std::vector<std::string> planes{"beta", "timelike_i", "timelike_iii_plus", "timelike_iii_minus"};
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--plane", planes, "Planes to generate");
  CLI11_PARSE(app, argc, argv);

  for (const auto& name : planes) {
    StrataPlane plane = parse_plane(name);
    // Box half-width per plane.
    Scalar half = plane == StrataPlane::Beta ? 12 : 6;
    int n = 48;
    CatalogBuildStats stats;
    RegionCatalog cat = build_catalog(plane, -half, half, n, &stats);
    std::ofstream out(catalog_path(plane, out_dir));
    out << "# grid [" << to_string(-half) << ", " << to_string(half) << "]^2, " << n << " steps\n";
    write_catalog(out, cat);
    std::cerr << name << ": " << cat.regions.size() << " regions, " << stats.on_curve << " grid points on curves, "
              << stats.inconsistent << " inconsistent\n";
  }
}

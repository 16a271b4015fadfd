// Writes the bundled models/*.surf files from the model library.
#include "umbilic/models.hpp"
#include "umbilic/strata.hpp"
#include "umbilic/surface_spec.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace umbilic;

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled surface spec files"};
  std::string out_dir = "models";
  app.add_option("--out", out_dir, "Output directory");
  CLI11_PARSE(app, argc, argv);
  std::filesystem::create_directories(out_dir);

  std::vector<std::pair<std::string, MongePatch>> patches;
  auto add = [&](std::string file, MongePatch p) {
    p.name = file;
    patches.emplace_back(std::move(file), std::move(p));
  };
  for (const char* n : {"D1_2", "D1_23", "D2_1", "D2_2p", "D2_3", "E7"}) add(n, *model_library(n).patch);
  add("D2_h_plus", *model_library("D2_h", 2, 1).patch);
  add("D2_h_minus", *model_library("D2_h", 2, -1).patch);
  for (int k = 1; k <= 4; ++k) {
    add("spacelike_A" + std::to_string(k), *model_library("spacelike_Ak", k).patch);
    add("timelike_A" + std::to_string(k), *model_library("timelike_Ak", k).patch);
  }
  for (int k = 1; k <= 3; ++k) add("lightlike_A" + std::to_string(k), *model_library("lightlike_Ak", k).patch);
  add("D4_plus", *model_library("Dk_pm", 4, 1).patch);
  add("D4_minus", *model_library("Dk_pm", 4, -1).patch);
  add("D5_plus", *model_library("Dk_pm", 5, 1).patch);
  add("D6_minus", *model_library("Dk_pm", 6, -1).patch);

  add("star", strata_patch(StrataPlane::Beta, 0, 0));
  add("lemon", strata_patch(StrataPlane::Beta, 0, 5));
  add("monstar", strata_patch(StrataPlane::Beta, -4, 0));
  add("timelike_3S", strata_patch(StrataPlane::TimelikeI, 0, rational(-1, 4)));
  add("timelike_1S2N", strata_patch(StrataPlane::TimelikeI, 2, 5));

  for (const auto& [file, p] : patches) {
    std::ofstream out(std::filesystem::path(out_dir) / (file + ".surf"));
    out << serialize_surface_spec(p);
  }
  std::cerr << patches.size() << " spec files written to " << out_dir << "\n";
}

#include "fusioncat/fusion_ring.hpp"
#include "fusioncat/nimrep.hpp"
#include "fusioncat/bimodule.hpp"
#include <chrono>
#include <iostream>
using namespace fusioncat;
int main(int argc, char** argv) {
  std::string left = argc > 1 ? argv[1] : "Z2";
  std::string right = argc > 2 ? argv[2] : left;
  int jobs = argc > 3 ? std::stoi(argv[3]) : 4;
  const FusionRing& RL = builtin_ring(left);
  const FusionRing& RR = builtin_ring(right);
  auto t0 = std::chrono::steady_clock::now();
  auto lm = enumerate_fusion_modules(RL, Side::Left, jobs);
  auto rm = enumerate_fusion_modules(RR, Side::Right, jobs);
  auto t1 = std::chrono::steady_clock::now();
  std::cerr << left << " left modules: " << lm.mods.size() << ", " << right
            << " right modules: " << rm.mods.size() << " ("
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1-t0).count() << " ms)\n";
  auto bi = enumerate_fusion_bimodules(RL, RR, lm, rm, jobs);
  auto t2 = std::chrono::steady_clock::now();
  std::cerr << "(" << left << "," << right << ") bimodules: " << bi.size() << " ("
            << std::chrono::duration_cast<std::chrono::milliseconds>(t2-t1).count() << " ms)\n";
  int bad = 0;
  for (auto& B : bi) {
    auto rep = validate_bimodule(B);
    if (!rep.ok) { ++bad; std::cerr << "INVALID: " << rep.message << "\n"; }
  }
  std::cerr << (bad ? "VALIDATION FAILURES\n" : "all validated\n");
  // dual closure sanity
  for (auto& B : bi) {
    FusionBimodule D = dual_bimodule(dual_bimodule(B));
    if (D.lact != B.lact || D.ract != B.ract) { std::cerr << "dual not involutive!\n"; return 1; }
  }
  return bad ? 1 : 0;
}

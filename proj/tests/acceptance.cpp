// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <iostream>
#include <string>
#include <vector>

#include "gpchow/verify.hpp"

using namespace gpchow;

int main() {
  VerifyOptions opt;
  opt.cache_dir = default_cache_dir();
  std::vector<std::pair<int, std::function<CriterionResult()>>> suites = {
      {1, criterion_g2_restrictions},
      {2, criterion_g2_multiplication},
      {3, criterion_g2_steenrod},
      {4, criterion_g2_chern},
      {5, criterion_oracle},
      {6, criterion_e6_poincare},
      {7, criterion_decompositions},
      {8, [&] { return criterion_e7(opt); }},
      {9, [&] { return criterion_cm(opt); }},
      {10, criterion_properties},
  };
  bool all = true;
  for (const auto& [id, run] : suites) {
    CriterionResult r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " [" << r.seconds << " s] " << r.detail
              << std::endl;
  }
  return all ? 0 : 1;
}

// Property suites on their own: GKM divisibility, Schubert positivity,
// Cartan formula, Rost dimension test.

#include <iostream>

#include "gpchow/verify.hpp"

int main() {
  auto r = gpchow::criterion_properties();
  std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " [" << r.seconds << " s] " << r.detail << std::endl;
  return r.pass ? 0 : 1;
}

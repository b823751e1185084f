// one PASS/FAIL line per acceptance criterion, details indented below
#include <cstdio>

#include "tmm/suites.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= 11; ++id) {
    tmm::Criterion c;
    try {
      c = tmm::run_criterion(id);
    } catch (const std::exception& e) {
      c = {id, tmm::criterion_title(id), {{std::string("exception: ") + e.what(), 0, 0, false}}};
    }
    bool ok = c.pass();
    failed += !ok;
    std::printf("%s %2d %s\n", ok ? "PASS" : "FAIL", id, c.title.c_str());
    for (auto& k : c.checks)
      std::printf("       %-4s %-52s %.6g (tol %.3g)\n", k.pass ? "ok" : "NO", k.name.c_str(), k.value, k.tolerance);
  }
  std::printf("%d of 11 criteria pass\n", 11 - failed);
  return failed ? 1 : 0;
}

// One line per acceptance criterion; exit status 0 iff all pass.
//   acceptance [--quick] [--cache DIR] [--only 3,5] [--tol-scale X]
#include <CLI11.hpp>

#include <iostream>

#include "fplap/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  bool quick = false;
  std::string cache_dir;
  fplap::AcceptanceOptions opt;
  app.add_flag("--quick", quick);
  app.add_option("--cache", cache_dir);
  app.add_option("--only", opt.only)->delimiter(',');
  app.add_option("--tol-scale", opt.tol_scale);
  app.add_option("--out", opt.out_dir);
  CLI11_PARSE(app, argc, argv);

  opt.scale = quick ? fplap::Scale::quick : fplap::Scale::full;
  fplap::ProfileCache cache(cache_dir);
  opt.cache = &cache;
  opt.log = &std::cout;
  const auto results = fplap::run_acceptance(opt);
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << (failed ? "FAILED " : "PASSED ") << results.size() - failed << "/" << results.size()
            << " criteria\n";
  return failed ? 1 : 0;
}

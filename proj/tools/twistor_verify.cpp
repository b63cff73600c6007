#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <twistor/suites.hpp>

namespace {

int run(const twistor::SuiteConfig& cfg) {
  const std::vector<twistor::ClaimReport> claims = twistor::run_suite(cfg);
  const std::string rendered = twistor::render_report(cfg, claims);
  if (cfg.out.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw twistor::ConfigError("cannot open output file: " + cfg.out);
    f << rendered;
  }
  return twistor::any_failed(claims) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  twistor::SuiteConfig cfg;
  CLI::App app{"Numerical verification suites for twistor spaces of pseudo-spheres"};
  app.add_option("--suite", cfg.suite,
                 "Suite name or 'all' (see --list for choices)")
      ->default_val("all");
  app.add_option("--p", cfg.p, "Complex signature parameter p of the fibre F_{p,q}")
      ->default_val(2);
  app.add_option("--q", cfg.q, "Complex signature parameter q of the fibre F_{p,q}")
      ->default_val(1);
  app.add_option("--trials", cfg.trials, "Random trials per claim")->default_val(100);
  app.add_option("--seed", cfg.seed, "Base RNG seed; trial i uses seed XOR i")->default_val(42);
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step h")->default_val(1e-3);
  app.add_option("--tol", cfg.tol, "Tolerance for exact algebraic identities")->default_val(1e-8);
  app.add_option("--tol-fd", cfg.tol_fd, "Tolerance for finite-difference residuals")
      ->default_val(5e-4);
  app.add_option("--format", cfg.format, "Output format: text or json")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", cfg.out, "Write the report to this file instead of stdout");
  bool list = false;
  app.add_flag("--list", list, "List available suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message; its return code is CLI11's, not ours
    return 2;     // exit-code contract: 2 = configuration error
  }

  if (list) {
    for (const std::string& name : twistor::suite_names()) std::cout << name << "\n";
    std::cout << "all\n";
    return 0;
  }

  try {
    return run(cfg);
  } catch (const twistor::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// logcoh — dimensions and explicit bases of logarithmic de Rham cohomology
// for a reduced plane curve f over Q.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "logcoh/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"logarithmic de Rham cohomology of a reduced plane curve"};
  app.require_subcommand(1);

  logcoh::ComputeRequest req;
  std::string corpus;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--f", req.f, "curve polynomial in x, y over Q");
    sub->add_option("--basis-file", req.basis_file,
                    "JSON file with a logarithmic basis (fields f, s, t)");
    sub->add_option("--format", req.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--check-level", req.check_level,
                    "0 = none, 1 = certify results, 2 = stability recompute")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    sub->add_option("--degree-cap", req.degree_cap,
                    "degree cap for preimage searches (-1 = unlimited)");
    sub->add_option("--corpus", corpus,
                    "directory of request JSON files to run in batch");
  };

  add_common(app.add_subcommand("full", "H0, H1, H2 with explicit bases"));
  add_common(app.add_subcommand("saito", "certified logarithmic basis only"));
  add_common(app.add_subcommand("h2", "H2 by the syzygy quotient route"));
  add_common(app.add_subcommand("bfun", "integration b-function only"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 5;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "full")
    req.command = logcoh::Command::Full;
  else if (sub == "saito")
    req.command = logcoh::Command::Saito;
  else if (sub == "h2")
    req.command = logcoh::Command::H2;
  else
    req.command = logcoh::Command::Bfun;

  if (!corpus.empty()) return logcoh::run_corpus(corpus, req.format, std::cout);

  if (req.f.empty()) {
    std::cerr << "error: --f is required (or use --corpus DIR)\n";
    return 5;
  }

  logcoh::RunOutcome out = logcoh::run(req);
  if (req.format == "json")
    std::cout << out.report.dump(2) << "\n";
  else
    std::cout << logcoh::render_text(out.report);
  return out.exit_code;
}

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lglab/cli.hpp"

int main(int argc, char** argv) {
  using namespace lglab;
  cli::JobSpec job;
  std::string ladder, samples, hyper;
  std::uint64_t seed = 0;

  CLI::App app{"Twisted de Rham cohomology, Brieskorn lattices and residue pairings over Q"};
  app.add_option("command", job.command, "one of: " + cli::join(cli::commands()))->required();
  app.add_option("--poly", job.poly, "polynomial, e.g. 'x^3 - y^2'");
  app.add_option("--vars", job.vars, "comma separated variables, e.g. x,y");
  app.add_option("--trunc-u", job.trunc_u, "u-truncation order N")->capture_default_str();
  app.add_option("--deg-ladder", ladder, "degree bounds a,b,c");
  app.add_option("--samples", samples, "u_o sample points r1,r2,...");
  app.add_flag("--assume-tame", job.assume_tame, "skip the tameness proxy");
  app.add_option("--json", job.json_path, "write the JSON report here");
  auto* seed_opt = app.add_option("--seed", seed, "seed for the pseudorandom sample (default LGLAB_SEED or 0)");
  app.add_option("--hypersurface", hyper, "n,d for the hypersurface rank prediction");
  app.add_option("--corpus", job.corpus_path, "corpus file for the corpus command");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!ladder.empty()) job.deg_ladder = cli::parse_int_list(ladder);
    if (!samples.empty()) job.samples = cli::parse_rational_list(samples);
    if (*seed_opt) job.seed = seed;
    if (!hyper.empty()) {
      auto nd = cli::parse_int_list(hyper);
      if (nd.size() != 2) throw ParseError("--hypersurface expects n,d", 0);
      job.hypersurface = std::make_pair(nd[0], nd[1]);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return cli::execute(job, std::cout);
}

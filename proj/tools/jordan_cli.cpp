#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "jordan/cli.hpp"
#include "jordan/io.hpp"

int main(int argc, char** argv) {
  using jordan::cli::RunConfig;
  CLI::App app{"Jordan-Stinespring factorization toolkit"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::vector<std::string> dims;
  for (const auto& name : jordan::cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", config.input, "JSON input file");
    sub->add_option("--seed", config.seed, "RNG seed (default 0)");
    sub->add_option("--restarts", config.restarts, "norm-estimation restarts (default 32)");
    sub->add_option("--tol", config.tol, "override of the primary tolerance");
    sub->add_option("--output", config.output, "report path (default stdout)");
    sub->add_option("--n", config.n, "size or count parameter");
    sub->add_option("--dims", dims, "algebra block sizes, e.g. 2 or 1,2; repeatable");
    sub->add_option("--iters", config.iters, "witness-search iterations (default 500)");
    sub->add_option("--csv", config.csv, "CSV export path (ratio-scan)");
    sub->callback([&config, name] { config.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    for (const auto& d : dims) config.dims.push_back(jordan::cli::parse_dims(d));
  } catch (const jordan::SchemaError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return jordan::cli::run(config, std::cout, std::cerr);
}

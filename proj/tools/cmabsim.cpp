#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmabsim/cli.hpp"
#include "cmabsim/config.hpp"

namespace {

struct GlobalFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 0;
  std::string out_dir;
};

cmabsim::ExperimentConfig assemble_config(const GlobalFlags& g,
                                          const std::vector<std::string>& sets) {
  cmabsim::ExperimentConfig cfg;
  if (!g.config_path.empty()) cfg = cmabsim::load_config(g.config_path);
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--set expects key=value, got: " + kv);
    }
    cmabsim::apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (g.seed_given) {
    cfg.seed = g.seed;
    cfg.seed_provided = true;
  }
  if (g.jobs > 0) cfg.jobs = g.jobs;
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation lab for combinatorial bandits with probabilistically triggered arms"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--config", g.config_path, "Experiment config file (key = value lines)");
  auto* seed_opt = app.add_option("--seed", g.seed, "Master seed (required for randomized commands)");
  app.add_option("--jobs", g.jobs, "Worker threads for independent runs");
  app.add_option("--out", g.out_dir, "Output directory");

  std::vector<std::string> sets;

  auto* simulate = app.add_subcommand("simulate", "Run one policy-environment experiment");
  simulate->fallthrough();
  simulate->add_option("--set", sets, "Override any config key (key=value, repeatable)");

  auto* sweep = app.add_subcommand("sweep", "Repeat the experiment along one parameter axis");
  sweep->fallthrough();
  std::string axis;
  std::vector<double> values;
  sweep->add_option("--axis", axis, "kappa | p_star | k")->required();
  sweep->add_option("--values", values, "Axis values")->required()->delimiter(',');
  sweep->add_option("--set", sets, "Override any config key (key=value, repeatable)");

  auto* ingest = app.add_subcommand("ingest", "Build an influence graph from a ratings corpus");
  ingest->fallthrough();
  cmabsim::IngestOptions ing;
  ingest->add_option("--ratings", ing.ratings_path, "Ratings CSV (userId,movieId,rating,timestamp)")
      ->required();
  ingest->add_option("--movies", ing.movies_path, "Movies CSV (movieId,title,genres)")->required();
  ingest->add_option("--out-graph", ing.out_graph, "Output edge-list path")->required();
  ingest->add_option("--min-ratings", ing.min_ratings, "Eligibility threshold (strictly more ratings)");
  ingest->add_option("--n-low", ing.n_low, "Lowest-rated movies to select");
  ingest->add_option("--n-high", ing.n_high, "Highest-rated movies to select");
  ingest->add_option("--n-random", ing.n_random, "Random eligible movies to select");
  ingest->add_option("--sc", ing.sc, "Influence probability scale factor");
  ingest->add_option("--sigma", ing.sigma, "Half-normal preference noise scale");
  ingest->add_option("--min-ts", ing.min_timestamp, "Keep ratings with timestamp >= this");
  ingest->add_option("--max-ts", ing.max_timestamp, "Keep ratings with timestamp <= this");
  ingest->add_option("--max-users", ing.max_users, "Subsample this many users (0 = all)");

  auto* bounds = app.add_subcommand("bounds", "Evaluate the regret-bound constants");
  bounds->fallthrough();
  cmabsim::BoundsOptions bnd;
  bounds->add_option("--m", bnd.inputs.m, "Number of arms");
  bounds->add_option("--p-star", bnd.inputs.p_star, "Minimum arm-triggering probability");
  bounds->add_option("--eta", bnd.eta, "Fixed eta for the *_at_eta rows");
  bounds->add_option("--kappa", bnd.inputs.kappa, "Exploration rate");
  bounds->add_option("--gamma", bnd.inputs.gamma, "Smoothness scale (|E| for coverage)");
  bounds->add_option("--omega", bnd.inputs.omega, "Smoothness exponent in (0,1]");
  bounds->add_option("--nabla-min", bnd.inputs.nabla_min, "Smallest gap");
  bounds->add_option("--nabla-max", bnd.inputs.nabla_max, "Largest gap");
  bounds->add_option("--horizon", bnd.inputs.horizon, "Horizon for gap-independent bounds");

  CLI11_PARSE(app, argc, argv);
  g.seed_given = seed_opt->count() > 0;

  try {
    if (simulate->parsed()) {
      return cmabsim::cmd_simulate(assemble_config(g, sets), std::cout, std::cerr);
    }
    if (sweep->parsed()) {
      return cmabsim::cmd_sweep(assemble_config(g, sets), axis, values, std::cout,
                                std::cerr);
    }
    if (ingest->parsed()) {
      ing.seed = g.seed;
      ing.seed_provided = g.seed_given;
      return cmabsim::cmd_ingest(ing, std::cout, std::cerr);
    }
    if (bounds->parsed()) {
      return cmabsim::cmd_bounds(bnd, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

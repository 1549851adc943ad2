#include "cmabsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "cmabsim/ingest.hpp"

namespace cmabsim {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void require_seed(bool provided) {
  if (!provided) {
    throw std::invalid_argument(
        "no seed given; pass --seed (or seed= in the config) — wall-clock "
        "seeding is not supported");
  }
}

}  // namespace

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  try {
    require_seed(cfg.seed_provided);
    cfg.validate();
    const BipartiteInfluenceGraph graph = build_graph(cfg);
    const TriggeringModel trig(cfg.p_star);
    const RunSpec spec = cfg.to_run_spec();
    const ExperimentResult result =
        run_experiment(graph, trig, spec, cfg.runs, cfg.seed, cfg.jobs);

    const auto dir = prepare_out_dir(cfg.out_dir);
    write_runs_csv((dir / "runs.csv").string(), result.runs);
    write_aggregate_csv((dir / "aggregate.csv").string(), result.agg);

    out << "movies=" << graph.num_movies() << " users=" << graph.num_users()
        << " arms=" << graph.num_edges() << '\n';
    out << "r_star=" << fmt(result.baselines.r_star)
        << " oracle_reward=" << fmt(result.baselines.oracle_reward) << '\n';
    out << "final_mean_scaled_regret=" << fmt(result.agg.mean_scaled.back())
        << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << '\n';
    return 1;
  }
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::ostream& out,
              std::ostream& err) {
  try {
    require_seed(cfg.seed_provided);
    if (axis != "kappa" && axis != "p_star" && axis != "k") {
      throw std::invalid_argument("sweep axis must be kappa, p_star or k");
    }
    if (values.empty()) {
      throw std::invalid_argument("sweep needs a non-empty value list");
    }
    cfg.validate();
    const BipartiteInfluenceGraph graph = build_graph(cfg);
    const auto dir = prepare_out_dir(cfg.out_dir);

    std::ofstream combined(dir / ("sweep_" + axis + ".csv"));
    if (!combined) throw std::runtime_error("cannot write combined sweep CSV");
    combined << "axis,value,epoch,mean_scaled,std_scaled\n";

    for (double value : values) {
      ExperimentConfig point = cfg;
      if (axis == "kappa") {
        point.kappa = value;
      } else if (axis == "p_star") {
        point.p_star = value;
      } else {
        if (value < 1.0 || value != std::floor(value)) {
          throw std::invalid_argument("k sweep values must be positive integers");
        }
        point.k = static_cast<int>(value);
      }
      point.validate();
      const TriggeringModel trig(point.p_star);
      const ExperimentResult result = run_experiment(
          graph, trig, point.to_run_spec(), point.runs, point.seed, point.jobs);

      char name[96];
      std::snprintf(name, sizeof(name), "aggregate_%s_%g.csv", axis.c_str(), value);
      write_aggregate_csv((dir / name).string(), result.agg);

      for (std::size_t t = 0; t < result.agg.mean_scaled.size(); ++t) {
        combined << axis << ',' << fmt(value) << ',' << (t + 1) << ','
                 << fmt(result.agg.mean_scaled[t]) << ','
                 << fmt(result.agg.std_scaled[t]) << '\n';
      }
      out << axis << '=' << fmt(value)
          << " final_mean_scaled_regret=" << fmt(result.agg.mean_scaled.back())
          << '\n';
    }
    if (!combined) throw std::runtime_error("failed writing combined sweep CSV");
    return 0;
  } catch (const std::exception& e) {
    err << "sweep: " << e.what() << '\n';
    return 1;
  }
}

int cmd_ingest(const IngestOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    require_seed(opt.seed_provided);
    if (opt.out_graph.empty()) {
      throw std::invalid_argument("--out-graph is required");
    }
    RatingsCorpus corpus = parse_corpus(opt.ratings_path, opt.movies_path);
    corpus = filter_ratings(std::move(corpus), opt.min_timestamp, opt.max_timestamp);

    Rng select_rng = make_stream(opt.seed, 0);
    SelectionParams sel{opt.min_ratings, opt.n_low, opt.n_high, opt.n_random};
    const std::vector<int> selected = select_movies(corpus, sel, select_rng);

    Rng noise_rng = make_stream(opt.seed, 1);
    PreferenceVectors prefs = preference_vectors(corpus, selected, opt.sigma, noise_rng);

    if (opt.max_users > 0 &&
        opt.max_users < static_cast<int>(prefs.user_ids.size())) {
      Rng user_rng = make_stream(opt.seed, 2);
      std::vector<std::size_t> order(prefs.user_ids.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      for (int i = 0; i < opt.max_users; ++i) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                        order.size() - 1);
        std::swap(order[static_cast<std::size_t>(i)], order[pick(user_rng)]);
      }
      order.resize(static_cast<std::size_t>(opt.max_users));
      std::sort(order.begin(), order.end());
      PreferenceVectors kept = prefs;
      kept.user_ids.clear();
      kept.user_prefs.clear();
      for (std::size_t i : order) {
        kept.user_ids.push_back(prefs.user_ids[i]);
        kept.user_prefs.push_back(prefs.user_prefs[i]);
      }
      prefs = std::move(kept);
    }

    const BipartiteInfluenceGraph graph = influence_probabilities(prefs, opt.sc);
    save_graph(graph, opt.out_graph);

    const auto [lo, hi] = std::minmax_element(graph.influence_probs().begin(),
                                              graph.influence_probs().end());
    out << "movies=" << graph.num_movies() << " users=" << graph.num_users()
        << " edges=" << graph.num_edges() << " p_min=" << fmt(*lo)
        << " p_max=" << fmt(*hi) << '\n';
    out << "graph written to " << opt.out_graph << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "ingest: " << e.what() << '\n';
    return 1;
  }
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const BoundInputs& in = opt.inputs;
    in.validate();
    const double eta = opt.eta;

    out << "parameter,value\n";
    out << "m," << in.m << '\n';
    out << "p_star," << fmt(in.p_star) << '\n';
    out << "eta," << fmt(eta) << '\n';
    out << "kappa," << fmt(in.kappa) << '\n';
    out << "gamma," << fmt(in.gamma) << '\n';
    out << "omega," << fmt(in.omega) << '\n';
    out << "nabla_min," << fmt(in.nabla_min) << '\n';
    out << "nabla_max," << fmt(in.nabla_max) << '\n';
    out << "horizon," << in.horizon << '\n';

    const double c = 1.0 / std::pow(in.p_star * (1.0 - eta), 2.0);
    out << "c," << fmt(c) << '\n';
    out << "t_prime," << fmt(threshold_t_prime(in.p_star, eta)) << '\n';

    const bool gaps_ok = in.nabla_min > 0.0;
    if (gaps_ok) {
      out << "delta," << fmt(in.delta()) << '\n';
    } else {
      out << "delta,error(nabla_min must be > 0)\n";
    }
    if (in.kappa > 0.0) {
      if (gaps_ok) {
        const double d = in.delta();
        const double c0 = 6.0 * in.kappa * in.kappa / (d * d * in.p_star * eta);
        out << "c0," << fmt(c0) << '\n';
        out << "t1," << fmt(threshold_t1(in.p_star, eta, in.kappa, d)) << '\n';
      } else {
        out << "c0,error(nabla_min must be > 0)\n";
        out << "t1,error(nabla_min must be > 0)\n";
      }
    }
    if (gaps_ok) {
      out << "cucb_regret_bound_at_eta," << fmt(cucb_regret_bound_at_eta(in, eta)) << '\n';
      out << "cucb_regret_bound," << fmt(cucb_regret_bound(in)) << '\n';
      out << "cts_regret_bound_at_eta," << fmt(cts_regret_bound_at_eta(in, eta)) << '\n';
      out << "cts_regret_bound," << fmt(cts_regret_bound(in)) << '\n';
    } else {
      out << "cucb_regret_bound_at_eta,error(nabla_min must be > 0)\n";
      out << "cucb_regret_bound,error(nabla_min must be > 0)\n";
      out << "cts_regret_bound_at_eta,error(nabla_min must be > 0)\n";
      out << "cts_regret_bound,error(nabla_min must be > 0)\n";
    }

    const GapIndependentBounds gib = gap_independent_bounds(in);
    const double T = static_cast<double>(in.horizon);
    out << "cucb0_gap_independent_bound," << fmt(gib.cucb0(T)) << '\n';
    out << "cts_gap_independent_bound," << fmt(gib.cts(T)) << '\n';

    const RootBoundCheck root = verify_root_bound(in.p_star, eta);
    out << "t_plus," << fmt(root.t_plus) << '\n';
    out << "t_plus_cap," << fmt(root.cap) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "bounds: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cmabsim

#include "cmabsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cmabsim/rng.hpp"

namespace cmabsim {

namespace {

// Stream index reserved for instance generation; run streams use 0..runs-1.
constexpr std::uint64_t kInstanceStream = 0x67726170686eULL;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric value for " + key + ": " + value);
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer value for " + key + ": " + value);
  }
}

}  // namespace

double ExperimentConfig::effective_alpha() const {
  if (alpha >= 0.0) return alpha;
  return oracle == "greedy" ? 1.0 - std::exp(-1.0) : 1.0;
}

RunSpec ExperimentConfig::to_run_spec() const {
  RunSpec spec;
  spec.policy = policy == "cts" ? PolicyKind::cts : PolicyKind::cucb;
  spec.kappa = kappa;
  spec.oracle = oracle == "exact" ? OracleKind::exact : OracleKind::greedy;
  spec.alpha = effective_alpha();
  spec.beta = beta;
  spec.k = k;
  spec.horizon = horizon;
  return spec;
}

void ExperimentConfig::validate() const {
  if (env != "synthetic" && env != "file") {
    throw std::invalid_argument("env must be 'synthetic' or 'file'");
  }
  if (env == "file") {
    if (graph.empty()) throw std::invalid_argument("env=file requires graph=PATH");
    if (!std::filesystem::exists(graph)) {
      throw std::runtime_error("graph file does not exist: " + graph);
    }
  } else {
    if (movies < 1 || users < 1) {
      throw std::invalid_argument("movies and users must be >= 1");
    }
    if (!(density > 0.0 && density <= 1.0)) {
      throw std::invalid_argument("density must lie in (0,1]");
    }
    if (!(prob_lo >= 0.0 && prob_lo <= prob_hi && prob_hi <= 1.0)) {
      throw std::invalid_argument("need 0 <= prob_lo <= prob_hi <= 1");
    }
  }
  if (policy != "cucb" && policy != "cts") {
    throw std::invalid_argument("policy must be 'cucb' or 'cts'");
  }
  if (oracle != "greedy" && oracle != "exact") {
    throw std::invalid_argument("oracle must be 'greedy' or 'exact'");
  }
  if (!(p_star > 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("p_star must lie in (0,1]");
  }
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  to_run_spec().validate();
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "env") {
    cfg.env = value;
  } else if (key == "graph") {
    cfg.graph = value;
  } else if (key == "movies") {
    cfg.movies = static_cast<int>(to_long(key, value));
  } else if (key == "users") {
    cfg.users = static_cast<int>(to_long(key, value));
  } else if (key == "density") {
    cfg.density = to_double(key, value);
  } else if (key == "prob_lo") {
    cfg.prob_lo = to_double(key, value);
  } else if (key == "prob_hi") {
    cfg.prob_hi = to_double(key, value);
  } else if (key == "policy") {
    cfg.policy = value;
  } else if (key == "kappa") {
    cfg.kappa = to_double(key, value);
  } else if (key == "oracle") {
    cfg.oracle = value;
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, value);
  } else if (key == "beta") {
    cfg.beta = to_double(key, value);
  } else if (key == "p_star") {
    cfg.p_star = to_double(key, value);
  } else if (key == "k") {
    cfg.k = static_cast<int>(to_long(key, value));
  } else if (key == "horizon") {
    cfg.horizon = to_long(key, value);
  } else if (key == "runs") {
    cfg.runs = static_cast<int>(to_long(key, value));
  } else if (key == "seed") {
    try {
      std::size_t pos = 0;
      cfg.seed = std::stoull(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad seed value: " + value);
    }
    cfg.seed_provided = true;
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "jobs") {
    cfg.jobs = static_cast<int>(to_long(key, value));
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key = value");
    }
    apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string emit_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  char buf[40];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "alpha = " << num(cfg.effective_alpha()) << '\n';
  out << "beta = " << num(cfg.beta) << '\n';
  if (cfg.env == "synthetic") {
    out << "density = " << num(cfg.density) << '\n';
  }
  out << "env = " << cfg.env << '\n';
  if (cfg.env == "file") {
    out << "graph = " << cfg.graph << '\n';
  }
  out << "horizon = " << cfg.horizon << '\n';
  out << "jobs = " << cfg.jobs << '\n';
  out << "k = " << cfg.k << '\n';
  out << "kappa = " << num(cfg.kappa) << '\n';
  if (cfg.env == "synthetic") {
    out << "movies = " << cfg.movies << '\n';
  }
  out << "oracle = " << cfg.oracle << '\n';
  out << "out = " << cfg.out_dir << '\n';
  out << "p_star = " << num(cfg.p_star) << '\n';
  out << "policy = " << cfg.policy << '\n';
  if (cfg.env == "synthetic") {
    out << "prob_hi = " << num(cfg.prob_hi) << '\n';
    out << "prob_lo = " << num(cfg.prob_lo) << '\n';
  }
  out << "runs = " << cfg.runs << '\n';
  if (cfg.seed_provided) {
    out << "seed = " << cfg.seed << '\n';
  }
  if (cfg.env == "synthetic") {
    out << "users = " << cfg.users << '\n';
  }
  return out.str();
}

BipartiteInfluenceGraph build_graph(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.env == "file") {
    return load_graph(cfg.graph);
  }
  if (!cfg.seed_provided) {
    throw std::invalid_argument("synthetic environments require a seed");
  }
  Rng rng = make_stream(cfg.seed, kInstanceStream);
  return generate_synthetic(cfg.movies, cfg.users, cfg.density, cfg.prob_lo,
                            cfg.prob_hi, rng);
}

}  // namespace cmabsim

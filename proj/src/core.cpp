#include "cmabsim/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cmabsim {

ExpectationVector::ExpectationVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("expectation vector must not be empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {  // also rejects NaN
      throw std::out_of_range("expectation vector entry " + std::to_string(i) +
                              " = " + std::to_string(v) + " outside [0,1]");
    }
  }
}

std::string format_expectation_vector(const ExpectationVector& v) {
  std::string out;
  char buf[40];
  for (int i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    if (i > 0) out += ' ';
    out += buf;
  }
  return out;
}

ExpectationVector parse_expectation_vector(const std::string& line) {
  std::istringstream in(line);
  std::vector<double> values;
  double x = 0.0;
  while (in >> x) values.push_back(x);
  if (!in.eof()) {
    throw std::invalid_argument("malformed expectation vector text: " + line);
  }
  return ExpectationVector(std::move(values));
}

Action::Action(std::vector<int> movies) : movies_(std::move(movies)) {
  std::sort(movies_.begin(), movies_.end());
  if (std::adjacent_find(movies_.begin(), movies_.end()) != movies_.end()) {
    throw std::invalid_argument("action contains a duplicate movie id");
  }
}

bool Action::contains(int movie) const {
  return std::binary_search(movies_.begin(), movies_.end(), movie);
}

std::string Action::to_string() const {
  if (movies_.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < movies_.size(); ++i) {
    if (i > 0) out += '|';
    out += std::to_string(movies_[i]);
  }
  return out;
}

void ProblemParams::validate() const {
  if (!(p_star > 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("p_star must lie in (0,1]");
  }
  if (k < 1) throw std::invalid_argument("budget k must be >= 1");
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1]");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in (0,1]");
  }
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

}  // namespace cmabsim

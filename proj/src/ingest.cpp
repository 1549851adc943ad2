#include "cmabsim/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cmabsim {

const std::array<std::string_view, kNumGenres>& genre_vocabulary() {
  static const std::array<std::string_view, kNumGenres> vocab = {
      "Action",      "Adventure", "Animation", "Children",  "Comedy",
      "Crime",       "Documentary", "Drama",   "Fantasy",   "Film-Noir",
      "Horror",      "IMAX",      "Musical",   "Mystery",   "Romance",
      "Sci-Fi",      "Thriller",  "War",       "Western",
      "(no genres listed)"};
  return vocab;
}

int genre_index(std::string_view name) {
  const auto& vocab = genre_vocabulary();
  for (int i = 0; i < kNumGenres; ++i) {
    if (vocab[static_cast<std::size_t>(i)] == name) return i;
  }
  throw std::invalid_argument("unknown genre token: " + std::string(name));
}

namespace {

constexpr int kNoGenresToken = kNumGenres - 1;

[[noreturn]] void malformed(const std::string& file, int line_no,
                            const std::string& what) {
  throw std::runtime_error(file + ":" + std::to_string(line_no) +
                           ": malformed row (" + what + ")");
}

// RFC-4180-style field splitting: quoted fields may contain commas and
// doubled quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

int parse_int(const std::string& s, bool& ok) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    ok = pos == s.size() && !s.empty();
    return v;
  } catch (const std::exception&) {
    ok = false;
    return 0;
  }
}

double parse_double(const std::string& s, bool& ok) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    ok = pos == s.size() && !s.empty();
    return v;
  } catch (const std::exception&) {
    ok = false;
    return 0.0;
  }
}

}  // namespace

RatingsCorpus parse_corpus(const std::string& ratings_path,
                           const std::string& movies_path) {
  RatingsCorpus corpus;

  std::ifstream movies_in(movies_path);
  if (!movies_in) throw std::runtime_error("cannot open movies file: " + movies_path);
  std::string line;
  int line_no = 0;
  while (std::getline(movies_in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;  // header
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 3) malformed(movies_path, line_no, "expected 3 fields");
    bool ok = false;
    const int movie_id = parse_int(fields[0], ok);
    if (!ok) malformed(movies_path, line_no, "bad movie id");
    MovieInfo info;
    info.title = fields[1];
    std::stringstream genres(fields[2]);
    std::string token;
    while (std::getline(genres, token, '|')) {
      const int g = genre_index(token);  // throws on unknown genre
      if (g != kNoGenresToken) info.genres.push_back(g);
    }
    std::sort(info.genres.begin(), info.genres.end());
    info.genres.erase(std::unique(info.genres.begin(), info.genres.end()),
                      info.genres.end());
    if (!corpus.movies.emplace(movie_id, std::move(info)).second) {
      malformed(movies_path, line_no, "duplicate movie id");
    }
  }

  std::ifstream ratings_in(ratings_path);
  if (!ratings_in) throw std::runtime_error("cannot open ratings file: " + ratings_path);
  line_no = 0;
  while (std::getline(ratings_in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 4) malformed(ratings_path, line_no, "expected 4 fields");
    Rating r;
    bool ok1 = false, ok2 = false, ok3 = false, ok4 = false;
    r.user_id = parse_int(fields[0], ok1);
    r.movie_id = parse_int(fields[1], ok2);
    r.rating = parse_double(fields[2], ok3);
    try {
      std::size_t pos = 0;
      r.timestamp = std::stoll(fields[3], &pos);
      ok4 = pos == fields[3].size() && !fields[3].empty();
    } catch (const std::exception&) {
      ok4 = false;
    }
    if (!ok1 || !ok2 || !ok3 || !ok4) malformed(ratings_path, line_no, "bad field");
    if (!(r.rating >= 0.5 && r.rating <= 5.0)) {
      malformed(ratings_path, line_no, "rating outside [0.5,5]");
    }
    if (corpus.movies.find(r.movie_id) == corpus.movies.end()) {
      throw std::runtime_error(ratings_path + ":" + std::to_string(line_no) +
                               ": rating references unknown movie " +
                               std::to_string(r.movie_id));
    }
    corpus.ratings.push_back(r);
  }
  return corpus;
}

RatingsCorpus filter_ratings(RatingsCorpus corpus, long long min_ts,
                             long long max_ts) {
  std::erase_if(corpus.ratings, [&](const Rating& r) {
    return r.timestamp < min_ts || r.timestamp > max_ts;
  });
  return corpus;
}

std::vector<int> select_movies(const RatingsCorpus& corpus,
                               const SelectionParams& params, Rng& rng) {
  if (params.n_low < 0 || params.n_high < 0 || params.n_random < 0) {
    throw std::invalid_argument("selection sizes must be non-negative");
  }
  std::unordered_map<int, std::pair<long, double>> stats;  // count, rating sum
  for (const Rating& r : corpus.ratings) {
    auto& s = stats[r.movie_id];
    s.first += 1;
    s.second += r.rating;
  }
  struct Entry {
    int movie_id;
    double avg;
  };
  std::vector<Entry> eligible;
  for (const auto& [movie_id, s] : stats) {
    if (s.first > params.min_ratings) {
      eligible.push_back(Entry{movie_id, s.second / static_cast<double>(s.first)});
    }
  }
  const int want = params.n_low + params.n_high + params.n_random;
  if (static_cast<int>(eligible.size()) < want) {
    throw std::runtime_error(
        "insufficient eligible movies: need " + std::to_string(want) + ", have " +
        std::to_string(eligible.size()));
  }
  std::sort(eligible.begin(), eligible.end(), [](const Entry& a, const Entry& b) {
    if (a.avg != b.avg) return a.avg < b.avg;
    return a.movie_id < b.movie_id;
  });

  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(want));
  for (int i = 0; i < params.n_low; ++i) {
    picked.push_back(eligible[static_cast<std::size_t>(i)].movie_id);
  }
  for (int i = 0; i < params.n_high; ++i) {
    picked.push_back(eligible[eligible.size() - 1 - static_cast<std::size_t>(i)].movie_id);
  }
  // Uniform sample without replacement from the middle band.
  std::vector<int> pool;
  for (std::size_t i = static_cast<std::size_t>(params.n_low);
       i < eligible.size() - static_cast<std::size_t>(params.n_high); ++i) {
    pool.push_back(eligible[i].movie_id);
  }
  for (int i = 0; i < params.n_random; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                    pool.size() - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
    picked.push_back(pool[static_cast<std::size_t>(i)]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

PreferenceVectors preference_vectors(const RatingsCorpus& corpus,
                                     const std::vector<int>& selected,
                                     double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (selected.empty()) throw std::invalid_argument("no movies selected");

  PreferenceVectors prefs;
  prefs.movie_ids = selected;
  std::sort(prefs.movie_ids.begin(), prefs.movie_ids.end());

  // Per-movie rating statistics over the whole corpus.
  std::unordered_map<int, std::pair<long, double>> stats;
  for (const Rating& r : corpus.ratings) {
    auto& s = stats[r.movie_id];
    s.first += 1;
    s.second += r.rating;
  }

  prefs.max_rating = 0.0;
  for (int movie_id : prefs.movie_ids) {
    auto movie_it = corpus.movies.find(movie_id);
    if (movie_it == corpus.movies.end()) {
      throw std::invalid_argument("selected movie " + std::to_string(movie_id) +
                                  " is not in the corpus");
    }
    const MovieInfo& info = movie_it->second;
    if (info.genres.empty()) {
      throw std::runtime_error("movie " + std::to_string(movie_id) +
                               " (" + info.title + ") has no genre");
    }
    std::array<double, kNumGenres> m{};
    const double norm = std::sqrt(static_cast<double>(info.genres.size()));
    for (int g : info.genres) m[static_cast<std::size_t>(g)] = 1.0 / norm;
    prefs.movie_genres.push_back(m);

    auto stat_it = stats.find(movie_id);
    if (stat_it == stats.end() || stat_it->second.first == 0) {
      throw std::runtime_error("movie " + std::to_string(movie_id) +
                               " has no ratings");
    }
    const double avg =
        stat_it->second.second / static_cast<double>(stat_it->second.first);
    prefs.avg_ratings.push_back(avg);
    prefs.max_rating = std::max(prefs.max_rating, avg);
  }

  // Movies each user rated (deduplicated), iterated in ascending id order so
  // the noise stream is reproducible.
  std::map<int, std::set<int>> rated_by;
  for (const Rating& r : corpus.ratings) rated_by[r.user_id].insert(r.movie_id);

  for (const auto& [user_id, movies] : rated_by) {
    std::array<double, kNumGenres> sum{};
    for (int movie_id : movies) {
      const MovieInfo& info = corpus.movies.at(movie_id);
      std::array<double, kNumGenres> g{};
      for (int genre : info.genres) g[static_cast<std::size_t>(genre)] = 1.0;
      for (int c = 0; c < kNumGenres; ++c) {
        sum[static_cast<std::size_t>(c)] +=
            g[static_cast<std::size_t>(c)] + half_normal_sample(rng, sigma);
      }
    }
    double norm = 0.0;
    for (double v : sum) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      throw std::runtime_error("user " + std::to_string(user_id) +
                               " has a zero preference vector (only genreless "
                               "movies and sigma = 0)");
    }
    for (double& v : sum) v /= norm;
    prefs.user_ids.push_back(user_id);
    prefs.user_prefs.push_back(sum);
  }
  if (prefs.user_ids.empty()) {
    throw std::invalid_argument("corpus has no ratings, so no users");
  }
  return prefs;
}

BipartiteInfluenceGraph influence_probabilities(const PreferenceVectors& prefs,
                                                double sc) {
  if (!(sc > 0.0 && sc <= 1.0)) {
    throw std::invalid_argument("scale factor sc must lie in (0,1]");
  }
  std::vector<Edge> edges;
  std::vector<double> probs;
  edges.reserve(prefs.movie_ids.size() * prefs.user_ids.size());
  for (std::size_t i = 0; i < prefs.movie_ids.size(); ++i) {
    for (std::size_t j = 0; j < prefs.user_ids.size(); ++j) {
      double dot = 0.0;
      for (int c = 0; c < kNumGenres; ++c) {
        dot += prefs.movie_genres[i][static_cast<std::size_t>(c)] *
               prefs.user_prefs[j][static_cast<std::size_t>(c)];
      }
      double p = sc * dot * prefs.avg_ratings[i] / prefs.max_rating;
      p = std::clamp(p, 0.0, 1.0);
      edges.push_back(Edge{prefs.movie_ids[i], prefs.user_ids[j]});
      probs.push_back(p);
    }
  }
  return BipartiteInfluenceGraph(prefs.movie_ids, prefs.user_ids,
                                 std::move(edges), std::move(probs));
}

}  // namespace cmabsim

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cmabsim/env.hpp"
#include "cmabsim/rng.hpp"

namespace cmabsim {

inline constexpr int kNumGenres = 20;

/// The 20-token genre vocabulary of the ratings corpus. The final token,
/// "(no genres listed)", is accepted by the parser but carries no genre mass:
/// a movie tagged only with it counts as genreless.
const std::array<std::string_view, kNumGenres>& genre_vocabulary();

/// Index of a genre token in the vocabulary; throws on unknown tokens.
int genre_index(std::string_view name);

struct Rating {
  int user_id = 0;
  int movie_id = 0;
  double rating = 0.0;  // in [0.5, 5]
  long long timestamp = 0;
};

struct MovieInfo {
  std::string title;
  std::vector<int> genres;  // vocabulary indices, "(no genres listed)" excluded
};

struct RatingsCorpus {
  std::vector<Rating> ratings;
  std::map<int, MovieInfo> movies;
};

/// Parses the two corpus files. Ratings: header "userId,movieId,rating,
/// timestamp". Movies: header "movieId,title,genres" with pipe-separated
/// genres; titles may be quoted and contain commas. Errors name the file and
/// line number; a rating of an unlisted movie and an unknown genre token are
/// rejected.
RatingsCorpus parse_corpus(const std::string& ratings_path,
                           const std::string& movies_path);

/// Keeps only ratings with timestamp in [min_ts, max_ts].
RatingsCorpus filter_ratings(RatingsCorpus corpus, long long min_ts,
                             long long max_ts);

struct SelectionParams {
  int min_ratings = 200;  // eligibility: strictly more ratings than this
  int n_low = 50;         // lowest average ratings
  int n_high = 50;        // highest average ratings
  int n_random = 100;     // uniform from remaining eligible movies
};

/// Movie selection protocol over the eligible movies; the three groups are
/// disjoint and the result is sorted ascending.
std::vector<int> select_movies(const RatingsCorpus& corpus,
                               const SelectionParams& params, Rng& rng);

struct PreferenceVectors {
  std::vector<int> movie_ids;  // selected movies, ascending
  std::vector<int> user_ids;   // every user of the corpus, ascending
  std::vector<std::array<double, kNumGenres>> movie_genres;  // unit m_i
  std::vector<std::array<double, kNumGenres>> user_prefs;    // unit u_j
  std::vector<double> avg_ratings;  // r_i per selected movie
  double max_rating = 0.0;          // max r_i over the selected movies
};

/// Unit genre vectors m_i = g_i/|g_i| for the selected movies and noisy unit
/// preference vectors u_j: the normalized sum, over the movies user j rated,
/// of g_i plus componentwise Half-Normal(sigma) noise.
PreferenceVectors preference_vectors(const RatingsCorpus& corpus,
                                     const std::vector<int>& selected,
                                     double sigma, Rng& rng);

/// Complete bipartite influence graph with
///   p_{i,j} = sc * <m_i, u_j> * r_i / max_rating, clamped into [0,1].
BipartiteInfluenceGraph influence_probabilities(const PreferenceVectors& prefs,
                                                double sc);

}  // namespace cmabsim

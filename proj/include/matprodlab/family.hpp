#pragma once

#include "matrix.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mpl {

using Family = std::vector<ExactMatrix>;

// The three 7x7 digit matrices of the Bernoulli-convolution family.
inline const Family& beta_generators() {
  static const Family gens = [] {
    Family g;
    g.push_back(exact_from_ints({{1, 0, 0, 0, 0, 0, 0},
                                 {0, 0, 1, 0, 0, 0, 0},
                                 {0, 0, 0, 1, 1, 0, 0},
                                 {0, 0, 0, 0, 0, 0, 0},
                                 {1, 0, 0, 0, 0, 0, 1},
                                 {0, 0, 0, 0, 1, 0, 0},
                                 {0, 1, 0, 0, 0, 0, 0}}));
    g.push_back(exact_from_ints({{0, 0, 1, 1, 0, 0, 0},
                                 {0, 0, 0, 0, 0, 1, 0},
                                 {0, 0, 0, 1, 1, 0, 0},
                                 {1, 0, 0, 0, 0, 0, 0},
                                 {0, 0, 1, 0, 0, 0, 0},
                                 {0, 0, 0, 0, 0, 0, 0},
                                 {0, 0, 0, 0, 0, 0, 0}}));
    g.push_back(exact_from_ints({{1, 0, 0, 0, 1, 0, 1},
                                 {0, 0, 0, 0, 0, 0, 0},
                                 {1, 0, 0, 0, 0, 0, 1},
                                 {0, 0, 0, 1, 1, 0, 0},
                                 {0, 0, 0, 0, 1, 0, 0},
                                 {0, 0, 0, 0, 0, 0, 0},
                                 {0, 0, 0, 0, 0, 0, 0}}));
    return g;
  }();
  return gens;
}

inline std::size_t digit_of(char c, std::size_t alphabet) {
  if (c < '0' || static_cast<std::size_t>(c - '0') >= alphabet)
    throw std::invalid_argument(std::string("digit out of range: ") + c);
  return static_cast<std::size_t>(c - '0');
}

// A(w) = A(w_1) ... A(w_n); the empty word gives the identity.
inline ExactMatrix word_product(const Family& fam, std::string_view w) {
  if (fam.empty()) throw std::invalid_argument("empty family");
  ExactMatrix m = ExactMatrix::identity(fam.front().rows());
  for (char c : w) m = product(m, fam[digit_of(c, fam.size())]);
  return m;
}

inline std::vector<ExactMatrix> word_sequence(const Family& fam, std::string_view w) {
  std::vector<ExactMatrix> seq;
  seq.reserve(w.size());
  for (char c : w) seq.push_back(fam[digit_of(c, fam.size())]);
  return seq;
}

// All words of length n over {0..a-1} in lexicographic order.
inline std::vector<std::string> all_words(std::size_t alphabet, std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::string> next;
    next.reserve(out.size() * alphabet);
    for (const auto& w : out)
      for (std::size_t c = 0; c < alphabet; ++c) next.push_back(w + static_cast<char>('0' + c));
    out.swap(next);
  }
  return out;
}

}  // namespace mpl

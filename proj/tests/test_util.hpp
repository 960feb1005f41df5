#pragma once

#include <random>

#include "exact/gaussian.hpp"
#include "exact/laurent.hpp"
#include "exact/torus_laurent.hpp"

namespace strata::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline std::int64_t rand_int(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

inline exact::GQ rand_gq() {
  mpq_class re(static_cast<long>(rand_int(-5, 5)), static_cast<unsigned long>(rand_int(1, 4)));
  mpq_class im(static_cast<long>(rand_int(-5, 5)), static_cast<unsigned long>(rand_int(1, 4)));
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

inline exact::LaurentQ rand_laurent(int terms = 3) {
  exact::LaurentQ f;
  for (int k = 0; k < terms; ++k) f.add_term(rand_int(-3, 3), rand_gq());
  return f;
}

inline exact::TorusLaurent rand_torus(const exact::LatticeSpec& lat, int terms = 3) {
  exact::TorusLaurent f(lat);
  for (int k = 0; k < terms; ++k) {
    exact::IntVec e(static_cast<std::size_t>(lat.rank));
    for (auto& x : e) x = rand_int(-2, 2);
    f.add_term(e, rand_gq());
  }
  return f;
}

}  // namespace strata::testing

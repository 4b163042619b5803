#pragma once

#include <random>
#include <vector>

#include "symlat/matrix.hpp"

namespace testing_support {

inline symlat::Int big(long long v) { return symlat::Int(static_cast<long>(v)); }

inline std::vector<long long> to_ll(const symlat::Vec<symlat::Int>& v) {
  std::vector<long long> r;
  for (const auto& x : v) r.push_back(x.get_si());
  return r;
}

inline symlat::Vec<symlat::Int> to_int_vec(const std::vector<long long>& v) {
  symlat::Vec<symlat::Int> r;
  for (long long x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

inline symlat::Vec<double> random_vec(std::size_t d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  symlat::Vec<double> v(d);
  for (auto& x : v) x = N(rng);
  return v;
}

inline double max_abs_diff(const symlat::Matrix<double>& a, const symlat::Matrix<double>& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace testing_support

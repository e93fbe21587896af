#pragma once

#include <cstdint>
#include <vector>

#include "pclab/arith/matrix.hpp"
#include "pclab/arith/poly.hpp"
#include "pclab/arith/ratfun.hpp"
#include "pclab/arith/series.hpp"
#include "pclab/solve/series_solver.hpp"

namespace pclab::pcurv {

// f' = A f with A over Q(z).
using ConnectionSystem = Matrix<QRatFun>;

struct PCurvatureResult {
  std::uint64_t p = 2;
  Matrix<FpRatFun> Ap;
  bool vanishes = false;
  bool nilpotent = false;
};

// A_[1] = reduction of A, A_[k+1] = A_[k]' + A_[k] A_[1]; Ap = A_[p].
PCurvatureResult linear_pcurvature(const ConnectionSystem& sys, std::uint64_t p);

struct SweepResult {
  std::vector<PCurvatureResult> results;  // good primes, ascending
  std::vector<std::uint64_t> bad;
  std::size_t vanishing = 0;
  std::size_t nilpotent = 0;  // nilpotent but not vanishing
  std::size_t neither = 0;
};

SweepResult pcurvature_sweep(const ConnectionSystem& sys, const std::vector<std::uint64_t>& primes);
SweepResult pcurvature_sweep_serial(const ConnectionSystem& sys, const std::vector<std::uint64_t>& primes);

constexpr std::size_t kDefaultTermBudget = 5000;

// v^p(y_i) for i = 0..n-1 over F_p(z, y), as fractions num/den.
std::vector<PolyFraction<PrimeField>> foliation_pcurvature(const solve::FoliationField& field, std::uint64_t p,
                                                           std::size_t term_budget = kDefaultTermBudget);

// v^k(y_i) over Q, for use along leaves.
std::vector<PolyFraction<RationalField>> foliation_power(const solve::FoliationField& field, std::size_t k,
                                                         std::size_t term_budget = kDefaultTermBudget);

// Composes each v^p(y_i) with the leaf z -> (z, f, f', ..) expanded at 0 and
// checks that the result is divisible by p below z^{T-p}.
bool p_power_leaf_check(const solve::FoliationField& field, const QSeries& leaf, std::uint64_t p,
                        std::size_t term_budget = kDefaultTermBudget);

}  // namespace pclab::pcurv

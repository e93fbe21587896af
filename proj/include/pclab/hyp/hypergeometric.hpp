#pragma once

#include <cstdint>
#include <vector>

#include "pclab/hyp/params.hpp"

namespace pclab::hyp {

// Representative of r mod Z in (0, 1].
Rat frac01(const Rat& r);

// Per-twist evidence: the sorted frac01(D a_i) and frac01(D b_full_i).
struct DeltaEvidence {
  std::uint64_t delta = 1;
  std::vector<Rat> a;
  std::vector<Rat> b;
  bool pass = true;
};

struct Verdict {
  bool value = true;
  std::vector<DeltaEvidence> evidence;
};

// Christol's crossing-count criterion for global boundedness.
Verdict christol_bounded(const HypParams& params);

// a_j - b_i not in Z for every a_j and every entry of b_full.
bool is_irreducible(const HypParams& params);

// Beukers-Heckman interlacing; ReducibleParameters unless is_irreducible.
Verdict bh_algebraic(const HypParams& params);

// Local monodromy at 0 (betas) and infinity (alphas) as exponents in [0, 1).
struct MonodromyData {
  std::vector<Rat> alphas;
  std::vector<Rat> betas;
  Rat det_g1_exponent;
  bool finite = false;
  Int order = 0;  // 0 when infinite
};

MonodromyData monodromy0(const HypParams& params);

struct ClassificationReport {
  bool globally_bounded = false;
  bool algebraic = false;
  bool monodromy0_finite = false;
  MonodromyData monodromy;
  std::vector<DeltaEvidence> christol_evidence;
  std::vector<DeltaEvidence> bh_evidence;

  bool forbidden() const { return globally_bounded && !algebraic && monodromy0_finite; }
};

// The three verdicts without the consistency assertion.
ClassificationReport evaluate(const HypParams& params);

// As evaluate, but raises ConsistencyViolation on bounded, non-algebraic,
// finite local monodromy.
ClassificationReport classify(const HypParams& params);

// Integer form of a parameter tuple: every entry is num/N with num in [1, N].
struct IntTuple {
  std::uint32_t N = 1;
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b_full;
};

struct Flags {
  bool bounded = false;
  bool algebraic = false;
  bool finite = false;
};

// Fast kernel on irreducible integer tuples.
Flags evaluate_fast(const IntTuple& t);

// Every irreducible tuple with k <= max_k and lcm of denominators exactly
// N <= max_n, parameters in (0, 1].
std::vector<IntTuple> enumerate_tuples(std::uint32_t max_n, std::size_t max_k);

struct SweepSummary {
  std::size_t tuples = 0;
  std::size_t bounded = 0;
  std::size_t algebraic = 0;
  std::size_t finite = 0;
  std::vector<std::size_t> violations;  // indices into the tuple list
};

SweepSummary classification_sweep_serial(const std::vector<IntTuple>& tuples);
SweepSummary classification_sweep(const std::vector<IntTuple>& tuples);

HypParams to_params(const IntTuple& t);

}  // namespace pclab::hyp

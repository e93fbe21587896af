#include "pclab/hyp/hypergeometric.hpp"

#include <algorithm>
#include <numeric>

#include "pclab/error.hpp"
#include "pclab/parallel.hpp"

namespace pclab::hyp {

HypParams HypParams::make(std::vector<Rat> a, std::vector<Rat> b) {
  if (a.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one numerator parameter");
  if (b.size() + 1 != a.size())
    throw Error(ErrorKind::InvalidArgument, "need k numerator and k-1 denominator parameters");
  for (const auto& x : b)
    if (x.is_integer() && x.sign() <= 0) throw Error(ErrorKind::BadParams, "b = " + x.str() + " is a non-positive integer");
  HypParams h;
  h.a = std::move(a);
  h.b = std::move(b);
  h.b_full = h.b;
  h.b_full.push_back(Rat(1));
  h.N = 1;
  for (const auto& x : h.a) h.N = lcm(h.N, x.den_ref());
  for (const auto& x : h.b) h.N = lcm(h.N, x.den_ref());
  return h;
}

Rat frac01(const Rat& r) {
  Rat f = r - Rat(r.floor());
  return f.is_zero() ? Rat(1) : f;
}

namespace {

using U = std::uint64_t;

constexpr U kMaxN = 10'000'000;

U twist(U x, U delta, U n) {
  U r = static_cast<U>(static_cast<unsigned __int128>(x) * delta % n);
  return r == 0 ? n : r;
}

// #a <= l >= #b <= l at every l in the merged set; both inputs sorted.
bool christol_counts(const std::vector<U>& a, const std::vector<U>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    U v = std::min(i < a.size() ? a[i] : ~U{0}, j < b.size() ? b[j] : ~U{0});
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    if (i < j) return false;
  }
  return true;
}

// 0 < a_1 < b_1 < ... < a_k < b_k = n, both inputs sorted and of equal length.
bool interlaces(const std::vector<U>& a, const std::vector<U>& b, U n) {
  if (a.size() != b.size() || b.empty() || b.back() != n) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] < b[i])) return false;
    if (i + 1 < a.size() && !(b[i] < a[i + 1])) return false;
  }
  return true;
}

struct Scaled {
  U n;
  std::vector<U> a, b;
};

Scaled scale(const HypParams& p) {
  if (p.N > kMaxN) throw Error(ErrorKind::InvalidArgument, "parameter denominators too large (lcm " + p.N.get_str() + ")");
  Scaled s;
  s.n = p.N.get_ui();
  auto conv = [&](const Rat& x) {
    Rat f = frac01(x) * Rat(p.N);
    return static_cast<U>(f.num().get_ui());
  };
  for (const auto& x : p.a) s.a.push_back(conv(x));
  for (const auto& x : p.b_full) s.b.push_back(conv(x));
  return s;
}

template <class Check>
Verdict delta_sweep(const HypParams& p, Check&& check) {
  Scaled s = scale(p);
  Verdict v;
  std::vector<U> ta(s.a.size()), tb(s.b.size());
  for (U d = 1; d <= s.n; ++d) {
    if (std::gcd(d, s.n) != 1) continue;
    for (std::size_t i = 0; i < ta.size(); ++i) ta[i] = twist(s.a[i], d, s.n);
    for (std::size_t i = 0; i < tb.size(); ++i) tb[i] = twist(s.b[i], d, s.n);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    DeltaEvidence e;
    e.delta = d;
    e.pass = check(ta, tb, s.n);
    for (auto x : ta) e.a.push_back(Rat(Int(static_cast<unsigned long>(x)), Int(static_cast<unsigned long>(s.n))));
    for (auto x : tb) e.b.push_back(Rat(Int(static_cast<unsigned long>(x)), Int(static_cast<unsigned long>(s.n))));
    v.value = v.value && e.pass;
    v.evidence.push_back(std::move(e));
  }
  return v;
}

}  // namespace

Verdict christol_bounded(const HypParams& params) {
  return delta_sweep(params, [](const auto& a, const auto& b, U) { return christol_counts(a, b); });
}

bool is_irreducible(const HypParams& params) {
  for (const auto& x : params.a)
    for (const auto& y : params.b_full)
      if ((x - y).is_integer()) return false;
  return true;
}

Verdict bh_algebraic(const HypParams& params) {
  if (!is_irreducible(params))
    throw Error(ErrorKind::ReducibleParameters, "some a_j - b_i is an integer; interlacing criterion does not apply");
  return delta_sweep(params, [](const auto& a, const auto& b, U n) { return interlaces(a, b, n); });
}

MonodromyData monodromy0(const HypParams& params) {
  MonodromyData m;
  auto mod1 = [](const Rat& x) { return x - Rat(x.floor()); };
  for (const auto& x : params.a) m.alphas.push_back(mod1(x));
  for (const auto& x : params.b_full) m.betas.push_back(mod1(x));
  Rat det;
  for (std::size_t i = 0; i < params.a.size(); ++i) det += params.b_full[i] - params.a[i];
  m.det_g1_exponent = mod1(det);
  std::vector<Rat> sorted = m.betas;
  std::sort(sorted.begin(), sorted.end());
  m.finite = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  if (m.finite) {
    m.order = 1;
    for (const auto& b : m.betas) m.order = lcm(m.order, b.den_ref());
  }
  return m;
}

ClassificationReport evaluate(const HypParams& params) {
  ClassificationReport r;
  auto c = christol_bounded(params);
  auto bh = bh_algebraic(params);
  r.globally_bounded = c.value;
  r.christol_evidence = std::move(c.evidence);
  r.algebraic = bh.value;
  r.bh_evidence = std::move(bh.evidence);
  r.monodromy = monodromy0(params);
  r.monodromy0_finite = r.monodromy.finite;
  return r;
}

ClassificationReport classify(const HypParams& params) {
  auto r = evaluate(params);
  if (r.forbidden())
    throw Error(ErrorKind::ConsistencyViolation,
                "globally bounded, not algebraic, and finite local monodromy at 0");
  return r;
}

Flags evaluate_fast(const IntTuple& t) {
  const U n = t.N;
  Flags f{true, true, false};
  std::vector<U> ta(t.a.size()), tb(t.b_full.size());
  for (U d = 1; d <= n && (f.bounded || f.algebraic); ++d) {
    if (std::gcd(d, n) != 1) continue;
    for (std::size_t i = 0; i < ta.size(); ++i) ta[i] = twist(t.a[i], d, n);
    for (std::size_t i = 0; i < tb.size(); ++i) tb[i] = twist(t.b_full[i], d, n);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    if (f.bounded && !christol_counts(ta, tb)) f.bounded = false;
    if (f.algebraic && !interlaces(ta, tb, n)) f.algebraic = false;
  }
  std::vector<std::uint32_t> b = t.b_full;
  for (auto& x : b) x %= t.N;
  std::sort(b.begin(), b.end());
  f.finite = std::adjacent_find(b.begin(), b.end()) == b.end();
  return f;
}

namespace {

// Non-decreasing sequences of length len over [1, n].
void multisets(std::uint32_t n, std::size_t len, std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur(len, 1);
  if (len == 0) {
    out.push_back({});
    return;
  }
  for (;;) {
    out.push_back(cur);
    std::size_t i = len;
    while (i > 0 && cur[i - 1] == n) --i;
    if (i == 0) return;
    std::uint32_t v = cur[i - 1] + 1;
    for (std::size_t j = i - 1; j < len; ++j) cur[j] = v;
  }
}

std::uint32_t tuple_lcm(std::uint32_t n, const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::uint32_t l = 1;
  auto add = [&](std::uint32_t x) { l = std::lcm(l, n / std::gcd(x, n)); };
  for (auto x : a) add(x);
  for (auto x : b) add(x);
  return l;
}

}  // namespace

std::vector<IntTuple> enumerate_tuples(std::uint32_t max_n, std::size_t max_k) {
  std::vector<IntTuple> out;
  for (std::uint32_t n = 1; n <= max_n; ++n)
    for (std::size_t k = 1; k <= max_k; ++k) {
      std::vector<std::vector<std::uint32_t>> as, bs;
      multisets(n, k, as);
      multisets(n, k - 1, bs);
      for (const auto& a : as)
        for (const auto& b : bs) {
          if (tuple_lcm(n, a, b) != n) continue;
          IntTuple t{n, a, b};
          t.b_full.push_back(n);
          bool irreducible = true;
          for (auto x : t.a)
            for (auto y : t.b_full)
              if (x == y) irreducible = false;
          if (irreducible) out.push_back(std::move(t));
        }
    }
  return out;
}

HypParams to_params(const IntTuple& t) {
  std::vector<Rat> a, b;
  Int n(static_cast<unsigned long>(t.N));
  for (auto x : t.a) a.emplace_back(Int(static_cast<unsigned long>(x)), n);
  for (std::size_t i = 0; i + 1 < t.b_full.size(); ++i) b.emplace_back(Int(static_cast<unsigned long>(t.b_full[i])), n);
  return HypParams::make(std::move(a), std::move(b));
}

namespace {

void tally(SweepSummary& s, const Flags& f, std::size_t i) {
  s.bounded += f.bounded;
  s.algebraic += f.algebraic;
  s.finite += f.finite;
  if (f.bounded && !f.algebraic && f.finite) s.violations.push_back(i);
}

}  // namespace

SweepSummary classification_sweep_serial(const std::vector<IntTuple>& tuples) {
  SweepSummary s;
  s.tuples = tuples.size();
  for (std::size_t i = 0; i < tuples.size(); ++i) tally(s, evaluate_fast(tuples[i]), i);
  return s;
}

SweepSummary classification_sweep(const std::vector<IntTuple>& tuples) {
  std::vector<Flags> flags(tuples.size());
  parallel_for(tuples.size(), [&](std::size_t i) { flags[i] = evaluate_fast(tuples[i]); });
  SweepSummary s;
  s.tuples = tuples.size();
  for (std::size_t i = 0; i < tuples.size(); ++i) tally(s, flags[i], i);
  return s;
}

}  // namespace pclab::hyp

#include "pclab/denoms/profile.hpp"

#include <algorithm>
#include <sstream>

#include "pclab/arith/primes.hpp"
#include "pclab/parallel.hpp"

namespace pclab::denoms {

long IntegralityProfile::g(std::uint64_t p) const {
  auto it = std::lower_bound(table.begin(), table.end(), p, [](const ProfileRow& r, std::uint64_t q) { return r.p < q; });
  if (it == table.end() || it->p != p)
    throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not a profiled prime");
  return it->g;
}

namespace {

void check_inputs(std::size_t count, std::uint64_t bound) {
  if (count == 0) throw Error(ErrorKind::EmptyInput, "no coefficients to profile");
  if (bound < 2) throw Error(ErrorKind::InvalidArgument, "prime bound must be at least 2");
}

long first_clean_run(const std::vector<Rat>& coeffs, std::uint64_t p) {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (mpz_divisible_ui_p(coeffs[i].den_ref().get_mpz_t(), p)) return static_cast<long>(i) - 1;
  return static_cast<long>(coeffs.size()) - 1;
}

IntegralityProfile assemble(std::size_t m, std::uint64_t bound, const std::vector<std::uint64_t>& primes,
                            const std::vector<long>& g) {
  IntegralityProfile prof;
  prof.M = m;
  prof.P = bound;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    prof.table.push_back({primes[i], g[i]});
    if (g[i] < static_cast<long>(m) - 1) prof.support.push_back(primes[i]);
  }
  return prof;
}

// For each degree d, the lcm of the denominators of the degree-d coefficients.
std::vector<Int> graded_denominators(const std::vector<QMSeries>& series) {
  std::size_t order = 0;
  for (const auto& s : series) order = std::max(order, s.order());
  std::vector<Int> dens(order, Int(1));
  for (const auto& s : series)
    for (std::size_t d = 0; d < s.order(); ++d)
      for (const auto& [m, c] : s.part(d)) dens[d] = lcm(dens[d], c.den_ref());
  return dens;
}

}  // namespace

IntegralityProfile profile_serial(const std::vector<Rat>& coeffs, std::uint64_t prime_bound) {
  check_inputs(coeffs.size(), prime_bound);
  auto primes = primes_up_to(prime_bound);
  std::vector<long> g(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) g[i] = first_clean_run(coeffs, primes[i]);
  return assemble(coeffs.size(), prime_bound, primes, g);
}

IntegralityProfile profile(const std::vector<Rat>& coeffs, std::uint64_t prime_bound) {
  check_inputs(coeffs.size(), prime_bound);
  auto primes = primes_up_to(prime_bound);
  std::vector<long> g(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) { g[i] = first_clean_run(coeffs, primes[i]); });
  return assemble(coeffs.size(), prime_bound, primes, g);
}

IntegralityProfile multivariate_profile(const std::vector<QMSeries>& series, std::uint64_t prime_bound) {
  if (series.empty()) throw Error(ErrorKind::EmptyInput, "no series to profile");
  std::size_t order = series.front().order();
  for (const auto& s : series) order = std::min(order, s.order());
  // lcm per degree turns the graded test into a univariate one
  auto dens = graded_denominators(series);
  dens.resize(order);
  std::vector<Rat> proxy;
  for (auto& d : dens) proxy.emplace_back(Int(1), d);
  return profile(proxy, prime_bound);
}

IntegralityProfile multivariate_profile(const QMSeries& series, std::uint64_t prime_bound) {
  return multivariate_profile(std::vector<QMSeries>{series}, prime_bound);
}

Verdicts verdicts(const IntegralityProfile& prof) {
  Verdicts v;
  const std::uint64_t horizon = std::min<std::uint64_t>(prof.P, prof.M);
  v.finite_support = prof.support.empty() || prof.support.back() * 2 <= horizon;
  const long top = static_cast<long>(prof.M) - 1;
  std::vector<std::uint64_t> saturated;
  for (const auto& row : prof.table) {
    if (row.p * 2 < prof.P) continue;
    Rat slope(Int(row.g), Int(static_cast<unsigned long>(row.p)));
    if (!v.omega_linear_floor || slope < *v.omega_linear_floor) v.omega_linear_floor = slope;
    if (row.g == top) saturated.push_back(row.p);
  }
  v.saturated = !saturated.empty();
  if (prof.support.empty()) v.notes.push_back("no prime <= " + std::to_string(prof.P) + " divides a denominator");
  else
    v.notes.push_back(std::to_string(prof.support.size()) + " primes in the denominator support, largest " +
                      std::to_string(prof.support.back()));
  if (v.saturated)
    v.notes.push_back(std::to_string(saturated.size()) +
                      " primes in [P/2, P] are clean to the horizon; slope is a lower bound only");
  if (!v.omega_linear_floor) v.notes.push_back("no primes in [P/2, P]");
  return v;
}

std::string to_csv(const IntegralityProfile& prof) {
  std::ostringstream os;
  os << "p,g_emp\n";
  for (const auto& row : prof.table) os << row.p << ',' << row.g << '\n';
  return os.str();
}

}  // namespace pclab::denoms

#include "pclab/iso/schlesinger.hpp"

#include <algorithm>
#include <set>

namespace pclab::iso {

namespace {

const RationalField kQ{};

RatMatrix zero_matrix(std::size_t r) { return RatMatrix(r, r, Rat()); }

SeriesMatrix constant_series_matrix(const RatMatrix& m, const std::vector<std::string>& vars, std::size_t order) {
  return m.map([&](const Rat& c) { return QMSeries::constant(kQ, vars, order, c); });
}

SeriesMatrix zero_series_matrix(std::size_t r, const std::vector<std::string>& vars, std::size_t order) {
  return SeriesMatrix(r, r, QMSeries(kQ, vars, order));
}

// 1 / (c + e_i - e_j) as a geometric series.
QMSeries inverse_difference(const Rat& c, std::size_t i, std::size_t j, const std::vector<std::string>& vars,
                            std::size_t order) {
  QMSeries u = QMSeries::variable(kQ, vars, order, i) - QMSeries::variable(kQ, vars, order, j);
  u = u.scaled(-c.inverse());
  QMSeries term = QMSeries::constant(kQ, vars, order, c.inverse());
  QMSeries acc = term;
  for (std::size_t k = 1; k < order; ++k) {
    term = term * u;
    acc += term;
  }
  return acc;
}

// Degree-d part of x*y for matrices of series.
Matrix<QMSeries::Part> product_part(const SeriesMatrix& x, const SeriesMatrix& y, std::size_t d) {
  const std::size_t r = x.rows();
  Matrix<QMSeries::Part> out(r, r, QMSeries::Part{});
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      QMSeries acc(kQ, x(0, 0).vars(), d + 1);
      for (std::size_t k = 0; k < r; ++k)
        for (const auto& [m, c] : QMSeries::product_part(x(a, k), y(k, b), d)) acc.add_term(m, c);
      out(a, b) = acc.part(d);
    }
  return out;
}

void add_part(QMSeries& s, const QMSeries::Part& part, const Rat& scale, std::size_t shift_var = SIZE_MAX) {
  for (const auto& [m, c] : part) {
    if (shift_var == SIZE_MAX) s.add_term(m, c * scale);
    else {
      Monomial n = m;
      n[shift_var] += 1;
      s.add_term(n, c * scale);
    }
  }
}

}  // namespace

SchlesingerState SchlesingerState::make(std::vector<Rat> poles, std::vector<RatMatrix> residues) {
  if (poles.size() != residues.size())
    throw Error(ErrorKind::InvalidArgument, std::to_string(poles.size()) + " poles but " +
                                                std::to_string(residues.size()) + " residue matrices");
  if (poles.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two poles");
  std::set<Rat> seen;
  for (const auto& p : poles)
    if (!seen.insert(p).second) throw Error(ErrorKind::PoleCollision, "pole " + p.str() + " repeated");
  const std::size_t r = residues.front().rows();
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "empty residue matrix");
  RatMatrix sum = zero_matrix(r);
  for (const auto& m : residues) {
    if (m.rows() != r || m.cols() != r) throw Error(ErrorKind::InvalidArgument, "residues must be square of equal size");
    sum += m;
  }
  if (!sum.is_zero()) throw Error(ErrorKind::NotFuchsian, "residues do not sum to zero");
  return {std::move(poles), std::move(residues)};
}

std::vector<std::string> deformation_vars(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("e" + std::to_string(i + 1));
  return v;
}

SchlesingerSeries schlesinger_expand(const SchlesingerState& state, std::size_t nmax) {
  const std::size_t n = state.n(), r = state.rank();
  const std::size_t order = nmax + 1;
  SchlesingerSeries s;
  s.poles = state.poles;
  s.vars = deformation_vars(n);
  s.nmax = nmax;
  for (const auto& m : state.residues) s.A.push_back(constant_series_matrix(m, s.vars, order));

  // geometric series for 1/(a_i - a_j), i < j; the j, i entry is its negative
  std::vector<std::vector<QMSeries>> g(n, std::vector<QMSeries>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      g[i][j] = inverse_difference(state.poles[i] - state.poles[j], i, j, s.vars, order);
      g[j][i] = -g[i][j];
    }
  // commutators [A_i, A_j] accumulated degree by degree, i < j
  std::vector<std::vector<SeriesMatrix>> comm(n, std::vector<SeriesMatrix>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) comm[i][j] = zero_series_matrix(r, s.vars, order);

  for (std::size_t d = 0; d < nmax; ++d) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto xy = product_part(s.A[i], s.A[j], d);
        auto yx = product_part(s.A[j], s.A[i], d);
        for (std::size_t k = 0; k < r * r; ++k) {
          add_part(comm[i][j](k / r, k % r), xy(k / r, k % r), Rat(1));
          add_part(comm[i][j](k / r, k % r), yx(k / r, k % r), Rat(-1));
        }
      }
    // F_ij for i != j, degree d
    std::vector<std::vector<Matrix<QMSeries::Part>>> f(n, std::vector<Matrix<QMSeries::Part>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const SeriesMatrix& c = i < j ? comm[i][j] : comm[j][i];
        const Rat sign = i < j ? Rat(1) : Rat(-1);
        Matrix<QMSeries::Part> part(r, r, QMSeries::Part{});
        for (std::size_t k = 0; k < r * r; ++k) {
          QMSeries acc(kQ, s.vars, d + 1);
          add_part(acc, QMSeries::product_part(c(k / r, k % r), g[i][j], d), sign);
          part(k / r, k % r) = acc.part(d);
        }
        f[i][j] = std::move(part);
      }
    // (d+1) A_i^{(d+1)} = sum_j e_j [F_ij]_d with F_jj = -sum_{i != j} F_ij
    const Rat inv = Rat(1) / Rat(static_cast<long>(d + 1));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < r * r; ++k) {
          auto& entry = s.A[i](k / r, k % r);
          if (i != j) add_part(entry, f[i][j](k / r, k % r), inv, j);
          else
            for (std::size_t l = 0; l < n; ++l)
              if (l != j) add_part(entry, f[l][j](k / r, k % r), -inv, j);
        }
  }
  return s;
}

SeriesMatrix schlesinger_rhs(const SchlesingerSeries& s, std::size_t i, std::size_t j) {
  const std::size_t n = s.A.size();
  const std::size_t order = s.nmax + 1;
  auto off = [&](std::size_t a, std::size_t b) {
    QMSeries g = inverse_difference(s.poles[a] - s.poles[b], a, b, s.vars, order);
    return commutator(s.A[a], s.A[b]).map([&](const QMSeries& e) { return e * g; });
  };
  if (i != j) return off(i, j);
  SeriesMatrix acc = zero_series_matrix(s.A[0].rows(), s.vars, order);
  for (std::size_t l = 0; l < n; ++l)
    if (l != j) acc -= off(l, j);
  return acc;
}

FlatnessReport verify_flatness(const SchlesingerSeries& s) {
  FlatnessReport rep;
  const std::size_t n = s.A.size();
  long first_bad = static_cast<long>(s.nmax);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SeriesMatrix lhs = s.A[i].map([j](const QMSeries& e) { return e.derivative(j); });
      SeriesMatrix res = lhs - schlesinger_rhs(s, i, j);
      for (const auto& e : res.data()) {
        long low = static_cast<long>(e.lowest_degree());
        if (low < static_cast<long>(e.order()) && low < first_bad) {
          first_bad = low;
          rep.first_failure = "dA_" + std::to_string(i + 1) + "/da_" + std::to_string(j + 1) + " at degree " +
                              std::to_string(low);
        }
      }
    }
  rep.clean_through = first_bad - 1;
  rep.ok = rep.clean_through == static_cast<long>(s.nmax) - 1;
  return rep;
}

std::vector<QMSeries> charpoly_coefficients(const SeriesMatrix& a) {
  const std::size_t r = a.rows();
  const auto& vars = a(0, 0).vars();
  const std::size_t order = a(0, 0).order();
  const QMSeries zero(kQ, vars, order), one = QMSeries::constant(kQ, vars, order, Rat(1));
  std::vector<QMSeries> c(r + 1, zero);
  c[r] = one;
  SeriesMatrix m(r, r, zero);
  SeriesMatrix id = SeriesMatrix::identity(r, zero, one);
  for (std::size_t k = 1; k <= r; ++k) {
    m = a * m + id.map([&](const QMSeries& e) { return e * c[r - k + 1]; });
    c[r - k] = (a * m).trace().scaled(Rat(-1) / Rat(static_cast<long>(k)));
  }
  c.pop_back();
  return c;
}

std::vector<Rat> charpoly_coefficients(const RatMatrix& a) {
  const std::size_t r = a.rows();
  std::vector<Rat> c(r + 1);
  c[r] = Rat(1);
  RatMatrix m = zero_matrix(r), id = RatMatrix::identity(r, Rat(), Rat(1));
  for (std::size_t k = 1; k <= r; ++k) {
    m = a * m + id.map([&](const Rat& e) { return e * c[r - k + 1]; });
    c[r - k] = (a * m).trace() * (Rat(-1) / Rat(static_cast<long>(k)));
  }
  c.pop_back();
  return c;
}

InvariantsReport invariants_check(const SchlesingerSeries& s) {
  InvariantsReport rep;
  auto fail = [&](std::string what, long degree) {
    if (rep.ok || degree < rep.failing_degree) {
      rep.ok = false;
      rep.failing_invariant = std::move(what);
      rep.failing_degree = degree;
    }
  };
  SeriesMatrix sum = s.A.front();
  for (std::size_t i = 1; i < s.A.size(); ++i) sum += s.A[i];
  for (const auto& e : sum.data())
    if (!e.is_zero()) fail("sum of residues", static_cast<long>(e.lowest_degree()));
  for (std::size_t i = 0; i < s.A.size(); ++i) {
    auto c = charpoly_coefficients(s.A[i]);
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t d = 1; d < c[k].order(); ++d)
        if (!c[k].part(d).empty()) {
          fail("characteristic polynomial coefficient " + std::to_string(k) + " of A_" + std::to_string(i + 1),
               static_cast<long>(d));
          break;
        }
  }
  return rep;
}

Matrix<QRatFun> theta_system(const parse::ScalarLinearOde& ode) {
  if (ode.order() != 2) throw Error(ErrorKind::InvalidArgument, "theta_system needs a second-order operator");
  const QRatFun z(QPoly::x(kQ));
  const QRatFun c0(ode.coeffs[0]), c1(ode.coeffs[1]), c2(ode.coeffs[2]);
  const QRatFun one = QRatFun::constant(kQ, Rat(1));
  const QRatFun invz = one / z;
  Matrix<QRatFun> a(2, 2, QRatFun(kQ));
  a(0, 1) = invz;
  a(1, 0) = -(z * c0 / c2);
  a(1, 1) = invz - c1 / c2;
  return a;
}

std::vector<Rat> rational_roots(const QPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "roots of the zero polynomial");
  std::vector<Rat> roots;
  QPoly g = f;
  // strip z^k
  while (!g.is_zero() && g.coeff(0).is_zero()) {
    if (roots.empty() || roots.back() != Rat()) roots.push_back(Rat());
    g = g.divmod(QPoly::x(kQ)).first;
  }
  if (g.degree() <= 0) {
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  Int l = common_denominator(g.coeffs());
  Int a0 = (g.coeff(0) * Rat(l)).num(), an = (g.lead() * Rat(l)).num();
  a0 = abs(a0);
  an = abs(an);
  auto divisors = [](const Int& n) {
    std::vector<Int> out;
    if (n > Int(1000000000000L)) throw Error(ErrorKind::InvalidArgument, "coefficient too large for root search");
    for (Int d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
      }
    return out;
  };
  std::set<Rat> found;
  for (const auto& p : divisors(a0))
    for (const auto& q : divisors(an))
      for (int sgn : {1, -1}) {
        Rat cand(Int(sgn * p), q);
        if (g.eval(cand).is_zero()) found.insert(cand);
      }
  for (const auto& x : found) roots.push_back(x);
  std::sort(roots.begin(), roots.end());
  return roots;
}

PoleData simple_pole_decomposition(const Matrix<QRatFun>& a) {
  const std::size_t r = a.rows();
  std::set<Rat> pole_set;
  for (const auto& e : a.data()) {
    if (e.is_zero()) continue;
    if (e.num().degree() >= e.den().degree())
      throw Error(ErrorKind::NotFuchsian, "entry " + e.str() + " is not a sum of simple poles");
    const QPoly& d = e.den();
    if (gcd(d, d.derivative()).degree() > 0) throw Error(ErrorKind::NotFuchsian, "entry " + e.str() + " has a repeated pole");
    auto roots = rational_roots(d);
    if (static_cast<long>(roots.size()) != d.degree())
      throw Error(ErrorKind::NotFuchsian, "entry " + e.str() + " has a pole outside Q");
    pole_set.insert(roots.begin(), roots.end());
  }
  PoleData out;
  out.poles.assign(pole_set.begin(), pole_set.end());
  out.residue_at_infinity = zero_matrix(r);
  for (const auto& x : out.poles) {
    RatMatrix res = zero_matrix(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const auto& e = a(i, j);
        if (e.is_zero() || !e.den().eval(x).is_zero()) continue;
        res(i, j) = e.num().eval(x) / e.den().derivative().eval(x);
      }
    out.residue_at_infinity -= res;
    out.residues.push_back(std::move(res));
  }
  return out;
}

Rat mobius_image(const Rat& z) {
  if (z == Rat(-1)) throw Error(ErrorKind::PoleCollision, "z = -1 is sent to infinity");
  return Rat(2) * z / (z + Rat(1));
}

parse::ScalarLinearOde legendre_operator() {
  parse::ScalarLinearOde ode;
  ode.coeffs = {QPoly::constant(kQ, Rat(Int(-1), Int(4))), QPoly(kQ, {Rat(1), Rat(-2)}),
                QPoly(kQ, {Rat(), Rat(1), Rat(-1)})};
  return ode;
}

SchlesingerState legendre_pf_preset() {
  auto pd = simple_pole_decomposition(theta_system(legendre_operator()));
  std::vector<Rat> poles;
  std::vector<RatMatrix> residues = pd.residues;
  for (const auto& x : pd.poles) poles.push_back(mobius_image(x));
  poles.push_back(mobius_image_of_infinity());
  residues.push_back(pd.residue_at_infinity);
  return SchlesingerState::make(std::move(poles), std::move(residues));
}

PainleveReport painleve_vi_check(const SchlesingerState& state) {
  if (state.rank() != 2 || state.n() != 4)
    throw Error(ErrorKind::InvalidArgument, "Painleve VI needs four rank-2 residues");
  PainleveReport rep;
  for (const auto& m : state.residues) {
    if (!m.trace().is_zero()) throw Error(ErrorKind::InvalidArgument, "residues must be trace-free");
    Rat det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Rat t2 = Rat(-4) * det;
    rep.theta_squared.push_back(t2);
    std::optional<Rat> theta;
    if (t2.sign() >= 0) {
      Int n = sqrt(t2.num()), d = sqrt(t2.den());
      if (n * n == t2.num() && d * d == t2.den()) theta = Rat(n, d);
    }
    rep.theta.push_back(theta);
  }
  rep.constant_solution = true;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (!commutator(state.residues[i], state.residues[j]).is_zero()) rep.constant_solution = false;
  return rep;
}

}  // namespace pclab::iso

#include "pclab/solve/series_solver.hpp"

#include <map>

namespace pclab::solve {

namespace {

const RationalField kQ{};

// Rising product (k+1)(k+2)...(k+i).
Rat rising_from(std::size_t k, std::size_t i) {
  Int r = 1;
  for (std::size_t j = 1; j <= i; ++j) r *= static_cast<unsigned long>(k + j);
  return Rat(r);
}

}  // namespace

QSeries expand_scalar_linear(const parse::ScalarLinearOde& ode, const Rat& point, const std::vector<Rat>& inits,
                             std::size_t order) {
  const std::size_t n = ode.order();
  if (inits.size() != n)
    throw Error(ErrorKind::InvalidArgument,
                "expected " + std::to_string(n) + " initial values, got " + std::to_string(inits.size()));
  if (order <= n) throw Error(ErrorKind::OrderTooSmall, "order must exceed the ODE order " + std::to_string(n));
  std::vector<QPoly> c;
  for (const auto& ci : ode.coeffs) c.push_back(ci.shifted(point));
  const Rat lead = c[n].coeff(0);
  if (lead.is_zero()) throw Error(ErrorKind::SingularPoint, "leading coefficient vanishes at " + point.str());

  std::vector<Rat> a(order);
  for (std::size_t i = 0; i < n; ++i) a[i] = inits[i] / Rat(factorial(i));
  // [z^m] sum_i c_i f^{(i)} = sum_{i,j} c_{i,j} (m-j+1)..(m-j+i) a_{m-j+i}
  for (std::size_t m = 0; m + n < order; ++m) {
    Rat acc;
    for (std::size_t i = 0; i <= n; ++i) {
      const auto& ci = c[i].coeffs();
      for (std::size_t j = 0; j < ci.size() && j <= m; ++j) {
        if (i == n && j == 0) continue;
        if (ci[j].is_zero()) continue;
        std::size_t k = m - j;
        if (k + i >= m + n) continue;
        acc += ci[j] * rising_from(k, i) * a[k + i];
      }
    }
    a[m + n] = -acc / (lead * rising_from(m, n));
  }
  return QSeries(kQ, std::move(a));
}

QSeries expand_foliation_leaf(const FoliationField& field, const InitialCondition& init, std::size_t order) {
  const std::size_t n = field.n;
  if (init.values.size() != n)
    throw Error(ErrorKind::InvalidArgument,
                "expected " + std::to_string(n) + " initial values, got " + std::to_string(init.values.size()));
  if (order <= n) throw Error(ErrorKind::OrderTooSmall, "order must exceed the ODE order " + std::to_string(n));
  const QMPoly num = field.g.num.shifted(0, init.point);
  const QMPoly den = field.g.den.shifted(0, init.point);

  std::vector<Rat> a(order);
  for (std::size_t i = 0; i < n; ++i) a[i] = init.values[i] / Rat(factorial(i));

  std::vector<Rat> dens;  // D_k = [z^k] D(z, F)
  std::vector<Rat> h;     // h = f^{(n)}
  for (std::size_t k = 0; k + n < order; ++k) {
    // the k-th coefficients of z, f, .., f^{(n-1)} only need a_0 .. a_{k+n-1}
    std::vector<QSeries> args;
    args.push_back(QSeries::from_poly(QPoly::x(kQ), k + 1));
    for (std::size_t i = 0; i < n; ++i) {
      QSeries d(kQ, k + 1);
      for (std::size_t j = 0; j <= k; ++j) d[j] = a[j + i] * rising_from(j, i);
      args.push_back(std::move(d));
    }
    Rat gk = eval_at_series(num, args, k + 1).coeff(k);
    Rat dk = den.is_constant() ? (k == 0 ? den.constant_term() : Rat()) : eval_at_series(den, args, k + 1).coeff(k);
    dens.push_back(dk);
    if (dens[0].is_zero()) throw Error(ErrorKind::PoleOnLeaf, "denominator of g vanishes at the initial point");
    for (std::size_t j = 1; j <= k; ++j) gk -= dens[j] * h[k - j];
    h.push_back(gk / dens[0]);
    a[k + n] = h[k] / rising_from(k, n);
  }
  return QSeries(kQ, std::move(a));
}

std::vector<QSeries> expand_system(const Matrix<QRatFun>& a, const std::vector<Rat>& init, std::size_t order) {
  const std::size_t r = a.rows();
  if (!a.is_square() || init.size() != r)
    throw Error(ErrorKind::InvalidArgument, "system matrix and initial vector have mismatched sizes");
  // A = N / d with a common polynomial denominator d
  QPoly d = QPoly::constant(kQ, Rat(1));
  for (const auto& e : a.data()) {
    QPoly g = gcd(d, e.den());
    d = d * e.den().divmod(g).first;
  }
  if (d.coeff(0).is_zero()) throw Error(ErrorKind::SingularPoint, "system is singular at 0");
  std::vector<QPoly> nmat;
  for (const auto& e : a.data()) nmat.push_back(e.num() * d.divmod(e.den()).first);

  std::vector<std::vector<Rat>> f(r, std::vector<Rat>(order));
  for (std::size_t i = 0; i < r; ++i)
    if (order > 0) f[i][0] = init[i];
  // sum_j d_j (m-j+1) f_{m-j+1} = sum_j N_j f_{m-j}
  for (std::size_t m = 0; m + 1 < order; ++m) {
    for (std::size_t i = 0; i < r; ++i) {
      Rat acc;
      for (std::size_t k = 0; k < r; ++k) {
        const auto& nc = nmat[i * r + k].coeffs();
        for (std::size_t j = 0; j < nc.size() && j <= m; ++j)
          if (!nc[j].is_zero()) acc += nc[j] * f[k][m - j];
      }
      const auto& dc = d.coeffs();
      for (std::size_t j = 1; j < dc.size() && j <= m; ++j)
        acc -= dc[j] * Rat(static_cast<long>(m - j + 1)) * f[i][m - j + 1];
      f[i][m + 1] = acc / (dc[0] * Rat(static_cast<long>(m + 1)));
    }
  }
  std::vector<QSeries> out;
  for (auto& v : f) out.emplace_back(kQ, std::move(v));
  return out;
}

namespace {

std::vector<Rat> root_point(const Rat& w0) { return {Rat(), w0}; }

void check_eisenstein_poly(const QMPoly& p) {
  if (p.nvars() != 2) throw Error(ErrorKind::InvalidArgument, "Eisenstein polynomial must be in (z, w)");
}

}  // namespace

QSeries eisenstein_expand(const QMPoly& p, const Rat& w0, std::size_t order) {
  check_eisenstein_poly(p);
  if (order == 0) throw Error(ErrorKind::OrderTooSmall, "order must be positive");
  if (!p.eval(root_point(w0)).is_zero()) throw Error(ErrorKind::NotARoot, "P(0, w0) != 0");
  const QMPoly pw = p.partial(1);
  if (pw.eval(root_point(w0)).is_zero()) throw Error(ErrorKind::SingularBranch, "dP/dw vanishes at (0, w0)");

  QSeries w = QSeries::constant(kQ, w0, 1);
  std::size_t prec = 1;
  while (prec < order) {
    prec = std::min(2 * prec, order);
    QSeries z = QSeries::from_poly(QPoly::x(kQ), prec);
    QSeries ww = w.extended(prec);
    QSeries val = eval_at_series(p, {z, ww}, prec);
    QSeries der = eval_at_series(pw, {z, ww}, prec);
    w = ww - val * der.inverse();
  }
  QSeries z = QSeries::from_poly(QPoly::x(kQ), order);
  if (!eval_at_series(p, {z, w}, order).is_zero())
    throw Error(ErrorKind::ConsistencyViolation, "Newton iteration did not produce a root");
  return w;
}

Int eisenstein_support_bound(const QMPoly& p, const Rat& w0) {
  check_eisenstein_poly(p);
  std::vector<Rat> cs;
  for (const auto& [m, c] : p.terms()) cs.push_back(c);
  QMPoly pi = p.scaled(Rat(common_denominator(cs)));
  Rat delta = pi.partial(1).eval(root_point(w0));
  if (delta.is_zero()) throw Error(ErrorKind::SingularBranch, "dP/dw vanishes at (0, w0)");
  Int b = w0.den() * delta.num() * delta.den();
  return b < 0 ? Int(-b) : b;
}

QSeries hyp_series(const hyp::HypParams& params, std::size_t order) {
  std::vector<Rat> c;
  c.reserve(order);
  if (order > 0) c.push_back(Rat(1));
  for (std::size_t n = 0; n + 1 < order; ++n) {
    Rat num(1), den(static_cast<long>(n + 1));
    Rat nn(static_cast<long>(n));
    for (const auto& a : params.a) num *= nn + a;
    for (const auto& b : params.b) den *= nn + b;
    c.push_back(c.back() * num / den);
  }
  // c_{n+1} (n+1) prod (n+b_i) = c_n prod (n+a_j)
  for (std::size_t n = 0; n + 1 < c.size(); ++n) {
    Rat nn(static_cast<long>(n));
    Rat lhs = c[n + 1] * Rat(static_cast<long>(n + 1)), rhs = c[n];
    for (const auto& b : params.b) lhs *= nn + b;
    for (const auto& a : params.a) rhs *= nn + a;
    if (lhs != rhs)
      throw Error(ErrorKind::ConsistencyViolation, "hypergeometric recurrence fails at n = " + std::to_string(n));
  }
  return QSeries(kQ, std::move(c));
}

std::vector<Rat> apery_sequence(const Rat& a, const Rat& b0, const Rat& b1, std::size_t order) {
  const Rat lead = a * (a * a - Rat(11) * a - Rat(1));
  if (lead.is_zero()) throw Error(ErrorKind::SingularParameter, "a(a^2 - 11a - 1) = 0 at a = " + a.str());
  const Rat c1 = Rat(3) * a * a - Rat(22) * a - Rat(1);
  const Rat c2 = Rat(3) * a - Rat(11);
  std::vector<Rat> b;
  if (order > 0) b.push_back(b0);
  if (order > 1) b.push_back(b1);
  for (std::size_t n = 0; n + 2 < order; ++n) {
    const Rat r(static_cast<long>(n));
    const Rat r1 = r + Rat(1);
    Rat acc = c1 * r1 * r1 * b[n + 1] + (c2 * r1 * r + a - Rat(3)) * b[n];
    if (n > 0) acc += r * r * b[n - 1];
    b.push_back(-acc / (lead * (r + Rat(2)) * r1));
  }
  return b;
}

std::vector<Rat> singular_apery_closed_form(std::size_t order) {
  std::vector<Rat> u;
  for (std::size_t n = 0; n < order; ++n) {
    Int s = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      Int c = binomial(n, k);
      s += c * c * binomial(n + k, k);
    }
    u.emplace_back(n % 2 ? Int(-s) : s);
  }
  return u;
}

std::vector<Rat> singular_apery_recurrence(std::size_t order) {
  // (n+1)^2 u_{n+1} = -(11n^2 + 11n + 3) u_n + n^2 u_{n-1}
  std::vector<Int> u;
  if (order > 0) u.push_back(1);
  for (std::size_t n = 0; n + 1 < order; ++n) {
    Int nn = static_cast<unsigned long>(n);
    Int rhs = -(11 * nn * nn + 11 * nn + 3) * u[n];
    if (n > 0) rhs += nn * nn * u[n - 1];
    Int d = (nn + 1) * (nn + 1);
    if (!mpz_divisible_p(rhs.get_mpz_t(), d.get_mpz_t()))
      throw Error(ErrorKind::ConsistencyViolation, "non-integral term at n = " + std::to_string(n + 1));
    u.push_back(rhs / d);
  }
  std::vector<Rat> out;
  for (auto& v : u) out.emplace_back(v);
  return out;
}

std::vector<Rat> singular_apery(std::size_t order) {
  if (order == 0) throw Error(ErrorKind::OrderTooSmall, "order must be positive");
  auto closed = singular_apery_closed_form(order);
  auto rec = singular_apery_recurrence(order);
  for (std::size_t n = 0; n < order; ++n)
    if (closed[n] != rec[n])
      throw Error(ErrorKind::ConsistencyViolation, "closed form and recurrence differ at n = " + std::to_string(n));
  return closed;
}

SeriesVector apply_connection(const SeriesMatrix& b, std::size_t var, const SeriesVector& s) {
  const std::size_t r = s.size();
  if (b.rows() != r || b.cols() != r) throw Error(ErrorKind::InvalidArgument, "connection rank mismatch");
  SeriesVector out;
  for (std::size_t i = 0; i < r; ++i) {
    QMSeries acc = s[i].derivative(var);
    for (std::size_t k = 0; k < r; ++k) acc += b(i, k) * s[k];
    out.push_back(std::move(acc));
  }
  return out;
}

void check_flat(const std::vector<SeriesMatrix>& ops, std::size_t order) {
  const std::size_t bound = order > 0 ? order - 1 : 0;
  auto d = [](const SeriesMatrix& m, std::size_t var) {
    return m.map([var](const QMSeries& s) { return s.derivative(var); });
  };
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      SeriesMatrix curv = d(ops[j], i) - d(ops[i], j) + commutator(ops[i], ops[j]);
      for (const auto& e : curv.data())
        if (!e.truncated(bound).is_zero())
          throw Error(ErrorKind::NotFlat, "connection components " + std::to_string(i) + " and " + std::to_string(j) +
                                              " do not commute");
    }
}

SeriesVector flat_section_extend(const std::vector<SeriesMatrix>& ops, const SeriesVector& u, std::size_t order) {
  if (u.empty()) throw Error(ErrorKind::InvalidArgument, "empty section");
  const std::size_t nv = u.front().nvars();
  if (ops.size() != nv) throw Error(ErrorKind::InvalidArgument, "need one connection component per variable");
  for (const auto& s : u)
    if (s.order() < order) throw Error(ErrorKind::OrderTooSmall, "section known to lower order than requested");
  for (const auto& b : ops)
    for (const auto& e : b.data())
      if (e.order() < order) throw Error(ErrorKind::OrderTooSmall, "connection known to lower order than requested");
  check_flat(ops, order);

  const auto& vars = u.front().vars();
  SeriesVector out(u.size(), QMSeries(kQ, vars, order));
  std::map<Monomial, SeriesVector> layer{{Monomial(nv, 0), u}};
  for (std::size_t deg = 0; deg < order; ++deg) {
    for (const auto& [idx, val] : layer) {
      Rat coef = Rat(1);
      for (auto e : idx) coef /= Rat(factorial(e));
      if (deg % 2) coef = -coef;
      for (std::size_t i = 0; i < u.size(); ++i)
        val[i].for_each([&](const Monomial& m, const Rat& c) {
          Monomial shifted = m;
          for (std::size_t k = 0; k < nv; ++k) shifted[k] += idx[k];
          out[i].add_term(shifted, coef * c);
        });
    }
    if (deg + 1 == order) break;
    // nabla^{I + e_j} from nabla^I with j >= the last variable used in I
    std::map<Monomial, SeriesVector> next;
    for (const auto& [idx, val] : layer) {
      std::size_t last = 0;
      for (std::size_t k = 0; k < nv; ++k)
        if (idx[k] > 0) last = k;
      for (std::size_t j = last; j < nv; ++j) {
        Monomial m = idx;
        m[j] += 1;
        next.emplace(std::move(m), apply_connection(ops[j], j, val));
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace pclab::solve

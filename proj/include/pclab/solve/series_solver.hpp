#pragma once

#include <cstddef>
#include <vector>

#include "pclab/arith/matrix.hpp"
#include "pclab/arith/mseries.hpp"
#include "pclab/arith/poly.hpp"
#include "pclab/arith/ratfun.hpp"
#include "pclab/arith/series.hpp"
#include "pclab/hyp/params.hpp"
#include "pclab/parse/expr.hpp"

namespace pclab::solve {

// v = d/dz + sum_{i<n-1} y_{i+1} d/dy_i + g d/dy_{n-1}, with g over (z, y0..y{n-1}).
using FoliationField = parse::NonlinearSpec;

// Base point a and derivative values f^{(i)}(a) = t_i.
struct InitialCondition {
  Rat point;
  std::vector<Rat> values;
};

// Taylor expansion in z - a of the solution of sum c_i f^{(i)} = 0 with the
// given derivative values at a. Coefficients of z^0..z^{M-1}.
QSeries expand_scalar_linear(const parse::ScalarLinearOde& ode, const Rat& point, const std::vector<Rat>& inits,
                             std::size_t order);

// Formal solution of f^{(n)} = g(z, f, .., f^{(n-1)}) around the initial point.
QSeries expand_foliation_leaf(const FoliationField& field, const InitialCondition& init, std::size_t order);

// Taylor solution of f' = A f at z = 0 with f(0) = init, one series per component.
std::vector<QSeries> expand_system(const Matrix<QRatFun>& a, const std::vector<Rat>& init, std::size_t order);

// Root w(z) of P(z, w) = 0 with w(0) = w0, by Newton iteration. P is over the
// variables (z, w) in that order.
QSeries eisenstein_expand(const QMPoly& p, const Rat& w0, std::size_t order);

// Integer B such that every coefficient of the Eisenstein series lies in
// Z[1/B]: den(w0) * num(d) * den(d) with d = dP/dw(0, w0) for P scaled to
// integer coefficients.
Int eisenstein_support_bound(const QMPoly& p, const Rat& w0);

// c_n = prod (a_j)_n / (n! prod (b_i)_n); the operator recurrence is checked
// term by term (ConsistencyViolation on mismatch).
QSeries hyp_series(const hyp::HypParams& params, std::size_t order);

// b_0 .. b_{M-1} from the order-3 recurrence at t = a with b_{-1} = 0.
std::vector<Rat> apery_sequence(const Rat& a, const Rat& b0, const Rat& b1, std::size_t order);

// u_n = (-1)^n sum_k C(n,k)^2 C(n+k,k), computed both from the closed form
// and from the degenerate recurrence; the two are compared.
std::vector<Rat> singular_apery(std::size_t order);
std::vector<Rat> singular_apery_closed_form(std::size_t order);
std::vector<Rat> singular_apery_recurrence(std::size_t order);

// Connection nabla_j = d/dt_j + B_j on a trivial bundle over Q[[t_1..t_n]].
using SeriesMatrix = Matrix<QMSeries>;
using SeriesVector = std::vector<QMSeries>;

SeriesVector apply_connection(const SeriesMatrix& b, std::size_t var, const SeriesVector& s);

// Curvature d_i B_j - d_j B_i + [B_i, B_j]; NotFlat unless zero below total
// degree `order` - 1 for every pair.
void check_flat(const std::vector<SeriesMatrix>& ops, std::size_t order);

// s = sum_{|I| < M} (-1)^{|I|} t^I / I! nabla^I(u). Inputs must be known to
// total degree order M.
SeriesVector flat_section_extend(const std::vector<SeriesMatrix>& ops, const SeriesVector& u, std::size_t order);

}  // namespace pclab::solve

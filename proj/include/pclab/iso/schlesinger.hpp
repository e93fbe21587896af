#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pclab/arith/matrix.hpp"
#include "pclab/arith/mseries.hpp"
#include "pclab/arith/ratfun.hpp"
#include "pclab/parse/expr.hpp"

namespace pclab::iso {

using RatMatrix = Matrix<Rat>;
using SeriesMatrix = Matrix<QMSeries>;

// Fuchsian system dY/dz = sum_i A_i / (z - a_i) Y with sum_i A_i = 0.
struct SchlesingerState {
  std::vector<Rat> poles;
  std::vector<RatMatrix> residues;

  // PoleCollision for repeated poles, NotFuchsian if the residues do not sum
  // to zero, InvalidArgument for shape problems.
  static SchlesingerState make(std::vector<Rat> poles, std::vector<RatMatrix> residues);

  std::size_t n() const { return poles.size(); }
  std::size_t rank() const { return residues.empty() ? 0 : residues.front().rows(); }
};

// A_i as series in e_j = a_j - a_j^0, all total degrees <= nmax.
struct SchlesingerSeries {
  std::vector<Rat> poles;
  std::vector<std::string> vars;
  std::size_t nmax = 0;
  std::vector<SeriesMatrix> A;
};

std::vector<std::string> deformation_vars(std::size_t n);

// Order-by-order solution of dA_i/da_j = [A_i, A_j] / (a_i - a_j) (i != j),
// sum_i dA_i/da_j = 0.
SchlesingerSeries schlesinger_expand(const SchlesingerState& state, std::size_t nmax);

// Right-hand side F_ij of dA_i/da_j, to the series' own precision.
SeriesMatrix schlesinger_rhs(const SchlesingerSeries& s, std::size_t i, std::size_t j);

struct FlatnessReport {
  long clean_through = -1;  // highest d with all residuals zero in degrees <= d
  bool ok = false;          // clean_through == nmax - 1
  std::string first_failure;
};

FlatnessReport verify_flatness(const SchlesingerSeries& s);

struct InvariantsReport {
  bool ok = true;
  std::string failing_invariant;  // empty when ok
  long failing_degree = -1;
};

// sum_i A_i == 0 and constant characteristic polynomial coefficients of each
// A_i, through total degree nmax.
InvariantsReport invariants_check(const SchlesingerSeries& s);

// Characteristic polynomial coefficients c_0..c_{r-1} (monic, Faddeev-LeVerrier).
std::vector<QMSeries> charpoly_coefficients(const SeriesMatrix& a);
std::vector<Rat> charpoly_coefficients(const RatMatrix& a);

// c2 f'' + c1 f' + c0 f = 0 rewritten for the basis (f, z f').
Matrix<QRatFun> theta_system(const parse::ScalarLinearOde& ode);

// Simple-pole decomposition A(z) = sum_i R_i / (z - a_i); NotFuchsian if an
// entry has a polynomial part, a repeated pole, or a pole outside Q.
struct PoleData {
  std::vector<Rat> poles;
  std::vector<RatMatrix> residues;
  RatMatrix residue_at_infinity;
};
PoleData simple_pole_decomposition(const Matrix<QRatFun>& a);

// Rational roots of a nonzero polynomial, ascending.
std::vector<Rat> rational_roots(const QPoly& f);

// x = 2z / (z + 1): 0, 1, infinity go to 0, 1, 2.
Rat mobius_image(const Rat& z);
inline Rat mobius_image_of_infinity() { return Rat(2); }

// Legendre family Picard-Fuchs operator z(1-z) f'' + (1-2z) f' - f/4.
parse::ScalarLinearOde legendre_operator();

// Residues of the Legendre system at 0, 1, infinity, placed at 0, 1, 2.
SchlesingerState legendre_pf_preset();

struct PainleveReport {
  std::vector<Rat> theta_squared;          // theta_i^2 = -4 det A_i
  std::vector<std::optional<Rat>> theta;  // when theta_i^2 is a rational square
  bool constant_solution = false;         // residues pairwise commute
};

PainleveReport painleve_vi_check(const SchlesingerState& state);

}  // namespace pclab::iso

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "mchain/form.hpp"
#include "mchain/intmat.hpp"
#include "mchain/minkowski.hpp"

namespace mchain {

enum class NormKind { sup, gm };

/// A lattice with one of two norms.
///
/// sup: Lambda_t(alpha) with the sup norm. The vector with integer
///      coefficients c = (q, p) is (q / t, t^n xi(c)), so its norm is
///      max(|q|_inf / t, t^n |xi(c)|).
/// gm:  Z^ell with G_m(c) = max(|c|_inf, (m / |beta_ell|) |xi(c)|).
///
/// Norm values are kept exactly as SpanValues in "scaled" units: the norm
/// itself for sup, rho * G_m for gm where rho = |beta_ell|.
class NormedLattice {
 public:
  NormedLattice(ContextPtr ctx, NormKind kind, Rational t, long m, std::vector<Integer> beta_row);

  const FormContext& context() const { return *ctx_; }
  const ContextPtr& context_ptr() const { return ctx_; }
  NormKind kind() const { return kind_; }
  std::size_t ell() const { return ctx_->ell(); }
  const Rational& t() const { return t_; }
  long m() const { return m_; }
  /// rho = |beta_ell| as a span value (gm only).
  const SpanValue& rho() const { return rho_; }

  /// Norm of the lattice vector with coefficients c, in scaled units.
  SpanValue scaled_norm(std::span<const std::int64_t> c) const;
  SpanValue scaled_norm(std::span<const Integer> c) const;
  /// A real bound B in scaled units.
  SpanValue scaled_bound(const Rational& B) const;
  /// Certified enclosure of the real norm value.
  Interval real_interval(const SpanValue& scaled, long bits) const;
  RealScalar real_value(const SpanValue& scaled) const;
  /// Coordinates of the lattice vector in R^ell.
  std::vector<RealScalar> point(std::span<const Integer> c) const;
  /// Generator matrix (rows) of the lattice.
  std::vector<std::vector<RealScalar>> generators() const;
  /// Exact determinant of the generator matrix.
  Rational determinant() const;
  /// Volume of the open unit ball of the norm.
  Interval unit_ball_volume(long bits) const;

 private:
  ContextPtr ctx_;
  NormKind kind_;
  Rational t_;
  Rational tn_;  // t^n
  long m_ = 0;
  std::vector<Integer> beta_row_;
  SpanValue rho_;
};

/// Lambda_t(alpha) with the sup norm.
NormedLattice lambda_lattice(const ContextPtr& ctx, const Rational& t);

/// Z^ell with G_m, where beta_ell = xi(beta_row). Throws ZeroBetaEll.
NormedLattice gm_norm(const ContextPtr& ctx, long m, std::vector<Integer> beta_row);
NormedLattice gm_norm(const ContextPtr& ctx, const GreedyMatrix& g);

struct LatticeVector {
  std::vector<Integer> coeffs;
  SpanValue norm;  // scaled units
  /// |norm - approx| <= approx_err; an infinite error means no estimate.
  double approx = 0;
  double approx_err = std::numeric_limits<double>::infinity();
};

/// All sign-normalised nonzero lattice vectors of norm <= B, sorted by
/// exact norm (ties broken by l1 norm of the coefficients, then lexicographically).
std::vector<LatticeVector> enumerate_ball(const NormedLattice& lat, const Rational& B);

/// Same ordering as enumerate_ball.
bool precedes(const NormedLattice& lat, const LatticeVector& a, const LatticeVector& b);

struct MinimaReport {
  std::vector<LatticeVector> vectors;
  /// Every vector of norm <= radius was examined.
  Rational radius;
};

struct ReducedBasisReport {
  std::vector<LatticeVector> basis;
  IntMatrix coeffs;
  Integer det;
  Rational radius;
};

constexpr std::size_t kMaxLatticeEll = 5;

/// Successive minima with minimising vectors. Throws DimensionTooLarge.
MinimaReport successive_minima(const NormedLattice& lat);

/// Greedy reduced basis: v_k is the first vector in norm order whose
/// coefficients extend v_1..v_{k-1} to a basis.
ReducedBasisReport reduced_basis(const NormedLattice& lat);

/// gcd of the trailing coordinates (k..ell) of each basis vector written in a
/// unimodular completion of the previous basis vectors; all ones for a
/// correctly built report.
std::vector<Integer> reduced_basis_certificate(const ReducedBasisReport& r);

/// Shortest nonzero vector.
LatticeVector first_minimum(const NormedLattice& lat);

struct BoundCheck {
  Interval value;
  Rational lower, upper;
};

/// vol(B) lambda_1 ... lambda_ell against [2^ell / ell!, 2^ell (3/2)^((ell-1)(ell-2)/2)].
/// Throws BoundViolated if the value is outside the range.
BoundCheck first_finiteness_check(const NormedLattice& lat, const ReducedBasisReport& r);

/// vol(B) mu_1 ... mu_ell <= 2^ell. Throws BoundViolated otherwise.
BoundCheck minkowski_second_check(const NormedLattice& lat, const MinimaReport& r);

struct TrajectoryPoint {
  Rational t;
  LatticeVector shortest;
  Interval mu1;
};

/// mu_1(Lambda_t) under the sup norm for each t. For n = 1 the shortest vector
/// is found among the continued-fraction convergents, so large t is cheap.
std::vector<TrajectoryPoint> lambda1_trajectory(const ContextPtr& ctx, const std::vector<Rational>& t_grid);

/// Volume of {x in [-1,1]^ell : |a . x| < h} for a = (alpha_1, ..., alpha_n, 1).
Interval cube_slab_volume(const FormContext& ctx, const Interval& h, long bits);

}  // namespace mchain

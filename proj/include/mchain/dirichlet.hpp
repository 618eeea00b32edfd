#pragma once

#include <optional>
#include <vector>

#include "mchain/lattice.hpp"

namespace mchain {

/// Scale factors t / Q tried per Q: 2^-j and (3/2)^j for j = 0..J, plus
/// k / refine for k = 1..2 refine. The geometric grid alone can miss the
/// scales where the reduced basis is near optimal.
struct DirichletPolicy {
  int J = 6;
  int refine = 32;
  /// Replaces the factors above when non-empty.
  std::vector<Rational> custom;
  std::vector<Rational> factors() const;
};

/// One scale of the scan: the reduced basis of Lambda_t read as a matrix A,
/// rows ordered by increasing |xi(row)|.
struct DirichletCandidate {
  Rational t;
  IntMatrix A;
  Integer det;
  Integer norm;  // |A|_inf
  /// max_i |xi(row_i)| as an exact span value and its enclosure.
  SpanValue value_exact;
  Interval value;
  bool admissible = false;  // |det| = 1 and |A|_inf < Q
};

/// A in GL(ell, Z) with |A|_inf < Q and small |A (alpha, 1)^T|_inf.
struct DirichletCertificate {
  long Q = 0;
  Rational t;
  IntMatrix A;
  Integer det;
  Interval value;
  /// value * Q^n.
  Interval c_achieved;
};

/// Every scale of the policy in scan order.
std::vector<DirichletCandidate> dirichlet_scan(const ContextPtr& ctx, long Q, const DirichletPolicy& policy = {});

/// The admissible candidate with the smallest value (first in scan order on
/// ties). Throws BoundExceeded, naming the best near miss, if none is admissible.
DirichletCertificate dirichlet_basis(const ContextPtr& ctx, long Q, const DirichletPolicy& policy = {});

struct CPoint {
  long Q = 0;
  std::optional<DirichletCertificate> cert;
  /// Reason when no certificate exists for this Q.
  std::string failure;
  /// Running maximum of c_achieved over certified points so far.
  std::optional<Interval> running_max_c;
};

std::vector<CPoint> c_trajectory(const ContextPtr& ctx, const std::vector<long>& Q_grid,
                                 const DirichletPolicy& policy = {});

}  // namespace mchain

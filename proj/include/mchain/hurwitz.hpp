#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mchain/intmat.hpp"
#include "mchain/real_scalar.hpp"

namespace mchain {

/// Neighbouring fractions p/q < alpha < pp/qp with pp*q - p*qp = 1.
struct FareyPair {
  Integer p, q, pp, qp;

  /// Smallest Farey order in which the two fractions are neighbours.
  Integer order() const { return q > qp ? q : qp; }
  Integer mediant_num() const { return p + pp; }
  Integer mediant_den() const { return q + qp; }
  friend bool operator==(const FareyPair&, const FareyPair&) = default;
};

struct FareyState {
  FareyPair pair;
  char letter = 'L';
  /// (pp p; qp q), the product of L and R matrices for the word so far.
  IntMatrix word_matrix;
  Integer m;
};

struct HurwitzChain {
  /// Integer part removed from alpha before the chain was built.
  Integer a0;
  std::vector<FareyState> states;
  std::string word;
  /// Set when alpha turned out to be a mediant (rational input).
  bool terminated = false;
};

struct PartialQuotients {
  Integer a0;
  std::vector<Integer> a;
  /// The expansion ended because alpha is rational.
  bool terminated = false;
};

/// The Farey neighbours of order m around alpha in (0,1).
/// Throws InconsistencyError if alpha is outside (0,1) or equals a fraction
/// of denominator <= m.
FareyPair farey_neighbors(const RealScalar& alpha, const Integer& m);

/// The first k_max distinct Farey pairs around alpha - floor(alpha).
HurwitzChain hurwitz_chain(const RealScalar& alpha, std::size_t k_max);

/// Regular continued fraction by the exact Gauss map (rational and algebraic
/// input) or by interval expansion (oracles).
PartialQuotients continued_fraction(const RealScalar& alpha, std::size_t j_max);

/// Lengths of the complete blocks of equal letters; the trailing block is
/// dropped because it may still grow.
std::vector<Integer> block_lengths(std::string_view word);

/// Product of L = (1 0; 1 1) and R = (1 1; 0 1) over the word.
IntMatrix word_to_matrix(std::string_view word);

}  // namespace mchain

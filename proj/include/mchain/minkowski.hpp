#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mchain/form.hpp"
#include "mchain/intmat.hpp"

namespace mchain {

/// A_m together with the values beta_i = xi(row_i), |beta_1| < ... < |beta_ell|.
struct GreedyMatrix {
  long m = 0;
  IntMatrix A;
  std::vector<RealScalar> beta;
};

struct ChainEntry {
  std::size_t k = 0;
  long m_k = 0;
  IntMatrix B;
  std::vector<RealScalar> beta;
  /// (beta_1 / beta_ell, ..., beta_n / beta_ell).
  std::vector<RealScalar> alpha_k;
};

/// Incremental computation of A_m for m = 1, 2, ...
///
/// The engine keeps every sign-normalised vector of the current box whose
/// |xi| does not exceed |beta_ell(m)|. Stepping to m + 1 scans only the
/// vectors with a coordinate equal to +-(m+1); |beta_ell| never increases
/// with m, so nothing outside that pool and the new shell can enter A_{m+1}.
class ChainEngine {
 public:
  explicit ChainEngine(ContextPtr ctx);
  ~ChainEngine();
  ChainEngine(ChainEngine&&) noexcept;
  ChainEngine& operator=(ChainEngine&&) noexcept;

  /// Advances from A_m to A_{m+1}; returns true if the matrix changed.
  bool step();
  long order() const;
  /// Rows of A_m as int64 vectors (valid once order() >= 1).
  const std::vector<std::vector<std::int64_t>>& rows() const;
  IntMatrix matrix() const;
  std::size_t pool_size() const;
  const FormContext& context() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// A_m by running the engine up to order m.
GreedyMatrix greedy_matrix(const ContextPtr& ctx, long m);

struct ChainLimits {
  long m_max = 0;
  std::optional<std::size_t> k_max;
};

/// Distinct matrices B_k = A_{m_k} in order of first appearance, for
/// m <= m_max and at most k_max entries.
std::vector<ChainEntry> chain(const ContextPtr& ctx, const ChainLimits& limits);

/// Makes a chain entry (beta and alpha_k values) from a matrix.
ChainEntry make_entry(const FormContext& ctx, std::size_t k, long m_k, const IntMatrix& B);

/// Linear fractional action of an ell x ell matrix on an n-tuple.
/// Throws ZeroDenominator when the last row vanishes on x.
std::vector<RealScalar> projective_action(const IntMatrix& B, const std::vector<RealScalar>& x);

enum class TupleMode { exact, up_to_sign };

struct TupleClass {
  /// A representative tuple; coordinates are absolute values in up_to_sign mode.
  std::vector<RealScalar> tuple;
  std::vector<std::size_t> ks;
};

/// Groups chain entries by alpha_k tuple. Exact equality needs an algebraic
/// target; oracle targets throw PrecisionExhausted unless all tuples separate.
std::vector<TupleClass> distinct_tuples(const std::vector<ChainEntry>& entries, TupleMode mode);

/// First pair k < k' with alpha_k == alpha_k' exactly; nullopt if none.
std::optional<std::pair<std::size_t, std::size_t>> find_repetition(const std::vector<ChainEntry>& entries);

/// Integer polynomial (coefficients high degree first, primitive, positive
/// leading coefficient) annihilating alpha, from a repetition
/// B_k(alpha^n, ..., alpha) == B_k'(alpha^n, ..., alpha) in a powers target.
std::vector<Integer> recover_minimal_polynomial(const FormContext& ctx, const IntMatrix& Bk, const IntMatrix& Bk2);

/// Searches the chain for a repetition and recovers the polynomial.
/// Throws NoRepetition if none occurs.
std::vector<Integer> recover_minimal_polynomial(const FormContext& ctx, const std::vector<ChainEntry>& entries);

struct DiagnosticRow {
  std::size_t k = 0;
  long m_k = 0;
  Interval abs_alpha_k1;
  /// m_k^n |beta_1| and m_k^n |beta_ell|.
  Interval scaled_beta1;
  Interval scaled_beta_ell;
  Interval running_min_alpha_k1;
  Interval running_min_scaled_beta1;
  Interval running_max_scaled_beta_ell;
  Integer det;
};

/// Certified trajectory of the chain quantities up to m_max.
std::vector<DiagnosticRow> diagnose(const ContextPtr& ctx, const ChainLimits& limits, long bits = 64);
std::vector<DiagnosticRow> diagnose(const FormContext& ctx, const std::vector<ChainEntry>& entries, long bits = 64);

}  // namespace mchain

#include "mchain/intmat.hpp"

#include <algorithm>
#include <sstream>

#include "mchain/errors.hpp"

namespace mchain {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  IntMatrix m;
  for (const auto& r : rows) m.push_row(r);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMatrix m;
  for (const auto& r : rows) {
    std::vector<Integer> big;
    for (auto v : r) big.emplace_back(static_cast<long>(v));
    m.push_row(big);
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void IntMatrix::set_row(std::size_t i, std::span<const Integer> values) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
}

void IntMatrix::set_row(std::size_t i, std::span<const std::int64_t> values) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = static_cast<long>(values[j]);
}

void IntMatrix::push_row(std::span<const Integer> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw Error("row width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Integer IntMatrix::max_abs() const {
  Integer m(0);
  for (const auto& x : data_) m = std::max(m, Integer(abs(x)));
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Integer det(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  IntMatrix m = a;
  Integer prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return Integer(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) {
  IntMatrix m = a;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t p = r;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      Integer f = m(i, col), g = m(r, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * g - m(r, j) * f;
    }
    ++r;
  }
  return r;
}

IntMatrix adjugate(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      Integer cof = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  return adj;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  Integer d = det(a);
  if (d != 1 && d != -1) throw InconsistencyError("matrix is not unimodular");
  IntMatrix adj = adjugate(a);
  if (d == -1) {
    for (std::size_t i = 0; i < adj.rows(); ++i)
      for (std::size_t j = 0; j < adj.cols(); ++j) adj(i, j) = -adj(i, j);
  }
  return adj;
}

std::vector<Integer> smith_invariants(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<Integer> out;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // Pivot: smallest nonzero entry in the remaining block.
    for (;;) {
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (m(i, j) != 0 && (pi == R || abs(m(i, j)) < abs(m(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == R) {
        std::sort(out.begin(), out.end());
        return out;
      }
      for (std::size_t j = 0; j < C; ++j) std::swap(m(t, j), m(pi, j));
      for (std::size_t i = 0; i < R; ++i) std::swap(m(i, t), m(i, pj));
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        if (q != 0)
          for (std::size_t j = t; j < C; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        if (q != 0)
          for (std::size_t i = t; i < R; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      std::size_t bad_row = R;
      for (std::size_t i = t + 1; i < R && bad_row == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == R) break;
      for (std::size_t j = t; j < C; ++j) m(t, j) += m(bad_row, j);
    }
    out.push_back(abs(m(t, t)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix column_hermite(const IntMatrix& a, IntMatrix& v, IntMatrix& v_inv) {
  IntMatrix h = a;
  const std::size_t R = h.rows(), C = h.cols();
  v = IntMatrix::identity(C);
  v_inv = IntMatrix::identity(C);
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < R; ++i) std::swap(h(i, x), h(i, y));
    for (std::size_t i = 0; i < C; ++i) std::swap(v(i, x), v(i, y));
    for (std::size_t j = 0; j < C; ++j) std::swap(v_inv(x, j), v_inv(y, j));
  };
  // col x += c * col y
  auto add_col = [&](std::size_t x, std::size_t y, const Integer& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < R; ++i) h(i, x) += c * h(i, y);
    for (std::size_t i = 0; i < C; ++i) v(i, x) += c * v(i, y);
    for (std::size_t j = 0; j < C; ++j) v_inv(y, j) -= c * v_inv(x, j);
  };
  auto negate_col = [&](std::size_t x) {
    for (std::size_t i = 0; i < R; ++i) h(i, x) = -h(i, x);
    for (std::size_t i = 0; i < C; ++i) v(i, x) = -v(i, x);
    for (std::size_t j = 0; j < C; ++j) v_inv(x, j) = -v_inv(x, j);
  };
  std::size_t pc = 0;
  for (std::size_t r = 0; r < R && pc < C; ++r) {
    for (;;) {
      std::size_t best = C;
      for (std::size_t j = pc; j < C; ++j)
        if (h(r, j) != 0 && (best == C || abs(h(r, j)) < abs(h(r, best)))) best = j;
      if (best == C) break;
      swap_cols(pc, best);
      bool done = true;
      for (std::size_t j = pc + 1; j < C; ++j) {
        if (h(r, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, pc).get_mpz_t());
        add_col(j, pc, -q);
        if (h(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, pc) == 0) continue;
    if (h(r, pc) < 0) negate_col(pc);
    // Reduce entries left of the pivot into [0, pivot).
    for (std::size_t j = 0; j < pc; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, pc).get_mpz_t());
      add_col(j, pc, -q);
    }
    ++pc;
  }
  return h;
}

bool is_extendable(const IntMatrix& a) {
  if (a.rows() > a.cols()) return false;
  auto inv = smith_invariants(a);
  if (inv.size() != a.rows()) return false;
  return std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; });
}

IntMatrix complete_to_unimodular(const IntMatrix& a) {
  IntMatrix v, v_inv;
  IntMatrix h = column_hermite(a, v, v_inv);
  const std::size_t k = a.rows(), l = a.cols();
  for (std::size_t i = 0; i < k; ++i) {
    if (i >= l || h(i, i) != 1) throw InconsistencyError("rows cannot be extended to a basis");
  }
  IntMatrix out(l, l);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j) out(i, j) = a(i, j);
  for (std::size_t i = k; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) out(i, j) = v_inv(i, j);
  return out;
}

std::string to_string(const IntMatrix& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j).get_str();
  }
  os << ')';
  return os.str();
}

}  // namespace mchain

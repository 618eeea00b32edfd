#include "mchain/hurwitz.hpp"

#include "mchain/errors.hpp"

namespace mchain {

namespace {

// Sign of alpha - a/b for b > 0.
int side(const RealScalar& alpha, const Integer& a, const Integer& b) {
  if (alpha.kind() != RealScalar::Kind::oracle) return sign_of(alpha - RealScalar(Rational(a, b)));
  Rational ra(a), rb(b);
  return refine_sign([&](long bits) { return Rational(-ra) + rb * alpha.interval(bits + ilog2(rb) + 1); },
                     "alpha - " + to_string(a) + "/" + to_string(b));
}

const IntMatrix kL{{1, 0}, {1, 1}};
const IntMatrix kR{{1, 1}, {0, 1}};

// Largest t in [1, limit] with pred(t), given pred(1) and pred monotone.
Integer gallop(const Integer& limit, const auto& pred) {
  Integer good = 1, step = 1;
  while (true) {
    Integer next = good + step;
    if (next > limit || !pred(next)) break;
    good = next;
    step *= 2;
  }
  // good satisfies pred; good + step does not (or is out of range)
  Integer bad = good + step;
  if (bad > limit + 1) bad = limit + 1;
  while (bad - good > 1) {
    Integer mid = (good + bad) / 2;
    if (pred(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace

FareyPair farey_neighbors(const RealScalar& alpha, const Integer& m) {
  if (m < 1) throw InconsistencyError("Farey order must be positive");
  if (side(alpha, 0, 1) <= 0 || side(alpha, 1, 1) >= 0) throw InconsistencyError("alpha must lie in (0,1)");
  FareyPair f{0, 1, 1, 1};
  while (f.q + f.qp <= m) {
    int s = side(alpha, f.mediant_num(), f.mediant_den());
    if (s == 0) throw InconsistencyError("alpha is a Farey fraction of order " + to_string(m));
    if (s < 0) {
      // Move the right end toward p/q as far as the order allows.
      Integer limit = (m - f.qp) / f.q;
      Integer t = gallop(limit, [&](const Integer& t) {
        int st = side(alpha, f.pp + t * f.p, f.qp + t * f.q);
        if (st == 0) throw InconsistencyError("alpha is a Farey fraction");
        return st < 0;
      });
      f.pp += t * f.p;
      f.qp += t * f.q;
    } else {
      Integer limit = (m - f.q) / f.qp;
      Integer t = gallop(limit, [&](const Integer& t) {
        int st = side(alpha, f.p + t * f.pp, f.q + t * f.qp);
        if (st == 0) throw InconsistencyError("alpha is a Farey fraction");
        return st > 0;
      });
      f.p += t * f.pp;
      f.q += t * f.qp;
    }
  }
  return f;
}

HurwitzChain hurwitz_chain(const RealScalar& alpha, std::size_t k_max) {
  HurwitzChain out;
  out.a0 = floor_of(alpha);
  RealScalar x = alpha - RealScalar(Rational(out.a0));
  if (sign_of(x) == 0) {
    out.terminated = true;
    return out;
  }
  FareyState st{FareyPair{0, 1, 1, 1}, 'L', kL, 1};
  while (out.states.size() < k_max) {
    out.states.push_back(st);
    out.word.push_back(st.letter);
    if (out.states.size() == k_max) break;
    const FareyPair& f = st.pair;
    Integer a = f.mediant_num(), b = f.mediant_den();
    int s = side(x, a, b);
    if (s == 0) {
      out.terminated = true;
      break;
    }
    FareyState next;
    if (s < 0) {
      next.pair = FareyPair{f.p, f.q, a, b};
      next.letter = 'L';
      next.word_matrix = st.word_matrix * kL;
    } else {
      next.pair = FareyPair{a, b, f.pp, f.qp};
      next.letter = 'R';
      next.word_matrix = st.word_matrix * kR;
    }
    next.m = next.pair.order();
    st = std::move(next);
  }
  return out;
}

namespace {

PartialQuotients gauss_map(const RealScalar& alpha, std::size_t j_max) {
  PartialQuotients out;
  out.a0 = floor_of(alpha);
  RealScalar x = alpha - RealScalar(Rational(out.a0));
  while (out.a.size() < j_max) {
    if (sign_of(x) == 0) {
      out.terminated = true;
      break;
    }
    x = RealScalar(1L) / x;
    Integer a = floor_of(x);
    out.a.push_back(a);
    x = x - RealScalar(Rational(a));
  }
  return out;
}

// Quotients shared by every number in [lo, hi]; the first is the integer part.
std::vector<Integer> common_quotients(Rational lo, Rational hi, std::size_t want) {
  std::vector<Integer> q;
  while (q.size() < want) {
    Integer fl = floor(lo), fh = floor(hi);
    if (fl != fh) break;
    q.push_back(fl);
    lo -= Rational(fl);
    hi -= Rational(fl);
    if (sgn(lo) == 0) break;
    Rational nlo = 1 / hi, nhi = 1 / lo;
    lo = nlo;
    hi = nhi;
  }
  return q;
}

}  // namespace

PartialQuotients continued_fraction(const RealScalar& alpha, std::size_t j_max) {
  if (alpha.kind() != RealScalar::Kind::oracle) return gauss_map(alpha, j_max);
  const long cap = max_precision_bits();
  for (long bits = 64;; bits *= 2) {
    long b = std::min(bits, cap);
    Interval iv = alpha.interval(b);
    std::vector<Integer> q = common_quotients(iv.lo, iv.hi, j_max + 1);
    if (q.size() == j_max + 1) {
      PartialQuotients out;
      out.a0 = q.front();
      out.a.assign(q.begin() + 1, q.end());
      return out;
    }
    if (b >= cap) {
      throw PrecisionExhausted("only " + std::to_string(q.empty() ? 0 : q.size() - 1) +
                               " partial quotients of " + alpha.describe() + " are certified at 2^-" +
                               std::to_string(cap));
    }
  }
}

std::vector<Integer> block_lengths(std::string_view word) {
  std::vector<Integer> out;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    if (j == word.size()) break;
    out.emplace_back(static_cast<unsigned long>(j - i));
    i = j;
  }
  return out;
}

IntMatrix word_to_matrix(std::string_view word) {
  IntMatrix m = IntMatrix::identity(2);
  for (char c : word) {
    if (c == 'L') {
      m = m * kL;
    } else if (c == 'R') {
      m = m * kR;
    } else {
      throw ParseError(std::string("word letters must be L or R, got '") + c + "'");
    }
  }
  return m;
}

}  // namespace mchain

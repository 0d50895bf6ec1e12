#include "kernelsmith/lattice.hpp"

#include <algorithm>
#include <utility>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

namespace {

void check_shape(const Basis& basis) {
  if (basis.empty()) return;
  const std::size_t dim = basis.front().size();
  for (const auto& row : basis) {
    if (row.size() != dim) throw DimensionMismatch(row.size(), dim);
  }
}

void check_delta(const Rational& delta) {
  if (delta <= Rational(1, 4) || delta >= 1) {
    throw InputError("LLL parameter delta must lie in (1/4, 1), got " +
                     to_string(delta));
  }
}

// Cohen, integral variant. Indices are 1-based to match the usual
// presentation; lambda[k][j] for j < k, d[0] = 1.
class IntegralLll {
 public:
  IntegralLll(Basis& b, const Rational& delta)
      : b_(b),
        n_(b.size()),
        a_(delta.get_num()),
        c_(delta.get_den()),
        d_(n_ + 1),
        lambda_(n_ + 1, IntVec(n_ + 1)) {}

  void run() {
    if (n_ == 0) return;
    d_[0] = 1;
    d_[1] = dot(row(1), row(1));
    if (d_[1] == 0) throw InputError("LLL input rows are linearly dependent");
    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt_row(k);
      }
      red(k, k - 1);
      if (lovasz_fails(k)) {
        swap(k, kmax);
        k = std::max<std::size_t>(2, k - 1);
        continue;
      }
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }

 private:
  IntVec& row(std::size_t i) { return b_[i - 1]; }

  void gram_schmidt_row(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      BigInt u = dot(row(k), row(j));
      for (std::size_t i = 1; i < j; ++i) {
        u = d_[i] * u - lambda_[k][i] * lambda_[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d_[i - 1].get_mpz_t());
      }
      if (j < k) {
        lambda_[k][j] = u;
      } else {
        if (u == 0) throw InputError("LLL input rows are linearly dependent");
        d_[k] = u;
      }
    }
  }

  void red(std::size_t k, std::size_t l) {
    BigInt twice = 2 * lambda_[k][l];
    if (mpz_cmpabs(twice.get_mpz_t(), d_[l].get_mpz_t()) <= 0) return;
    BigInt q = twice + d_[l];
    BigInt den = 2 * d_[l];
    mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), den.get_mpz_t());
    auto& bk = row(k);
    const auto& bl = row(l);
    for (std::size_t t = 0; t < bk.size(); ++t) {
      mpz_submul(bk[t].get_mpz_t(), q.get_mpz_t(), bl[t].get_mpz_t());
    }
    lambda_[k][l] -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lambda_[k][i] -= q * lambda_[l][i];
  }

  // delta = a/c; the condition fails when
  // c*d_k*d_{k-2} < a*d_{k-1}^2 - c*lambda^2.
  bool lovasz_fails(std::size_t k) const {
    const BigInt& lam = lambda_[k][k - 1];
    BigInt lhs = c_ * d_[k] * d_[k - 2];
    BigInt rhs = a_ * d_[k - 1] * d_[k - 1] - c_ * lam * lam;
    return lhs < rhs;
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(row(k), row(k - 1));
    for (std::size_t j = 1; j + 1 < k; ++j) {
      std::swap(lambda_[k][j], lambda_[k - 1][j]);
    }
    const BigInt lam = lambda_[k][k - 1];
    BigInt big_b = d_[k - 2] * d_[k] + lam * lam;
    mpz_divexact(big_b.get_mpz_t(), big_b.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const BigInt t = lambda_[i][k];
      BigInt next = d_[k] * lambda_[i][k - 1] - lam * t;
      mpz_divexact(next.get_mpz_t(), next.get_mpz_t(), d_[k - 1].get_mpz_t());
      lambda_[i][k] = next;
      BigInt prev = big_b * t + lam * lambda_[i][k];
      mpz_divexact(prev.get_mpz_t(), prev.get_mpz_t(), d_[k].get_mpz_t());
      lambda_[i][k - 1] = prev;
    }
    d_[k - 1] = big_b;
  }

  Basis& b_;
  std::size_t n_;
  BigInt a_;
  BigInt c_;
  IntVec d_;
  std::vector<IntVec> lambda_;
};

// Reduced row echelon form over Q of the augmented system sum_i x_i row_i = v.
// Returns false when inconsistent; otherwise fills x (unique: rows independent).
bool solve_combination(const Basis& basis, const IntVec& v, RatVec& x) {
  const std::size_t n = basis.size();
  const std::size_t dim = v.size();
  // Equation t: sum_i basis[i][t] x_i = v[t]. Matrix is dim x (n+1).
  std::vector<RatVec> m(dim, RatVec(n + 1));
  for (std::size_t t = 0; t < dim; ++t) {
    for (std::size_t i = 0; i < n; ++i) m[t][i] = basis[i][t];
    m[t][n] = v[t];
  }
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < n && pivot_row < dim; ++col) {
    std::size_t sel = pivot_row;
    while (sel < dim && sgn(m[sel][col]) == 0) ++sel;
    if (sel == dim) continue;
    std::swap(m[sel], m[pivot_row]);
    const Rational inv = 1 / m[pivot_row][col];
    for (auto& e : m[pivot_row]) e *= inv;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == pivot_row || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[pivot_row][c];
    }
    pivot_col.push_back(col);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < dim; ++r) {
    if (sgn(m[r][n]) != 0) return false;
  }
  if (pivot_row != n) throw InputError("basis rows are linearly dependent");
  x.assign(n, Rational(0));
  for (std::size_t r = 0; r < pivot_row; ++r) x[pivot_col[r]] = m[r][n];
  return true;
}

}  // namespace

Basis lll_reduce(Basis basis, const Rational& delta) {
  check_delta(delta);
  check_shape(basis);
  IntegralLll(basis, delta).run();
  return basis;
}

bool is_lll_reduced(const Basis& basis, const Rational& delta) {
  check_shape(basis);
  const std::size_t n = basis.size();
  std::vector<RatVec> star(n);
  RatVec norms(n);
  std::vector<RatVec> mu(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    star[i] = to_rational(basis[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (sgn(norms[j]) == 0) return false;
      mu[i][j] = dot(to_rational(basis[i]), star[j]) / norms[j];
      for (std::size_t t = 0; t < star[i].size(); ++t) {
        star[i][t] -= mu[i][j] * star[j][t];
      }
    }
    norms[i] = dot(star[i], star[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(mu[i][j]) > Rational(1, 2)) return false;
    }
    if (i > 0) {
      const Rational& m = mu[i][i - 1];
      if (norms[i] < (delta - m * m) * norms[i - 1]) return false;
    }
  }
  return true;
}

bool in_lattice(const Basis& basis, const IntVec& v) {
  RatVec x;
  if (!solve_combination(basis, v, x)) return false;
  return std::all_of(x.begin(), x.end(),
                     [](const Rational& e) { return e.get_den() == 1; });
}

bool same_lattice(const Basis& a, const Basis& b) {
  if (a.size() != b.size()) return false;
  check_shape(a);
  check_shape(b);
  for (const auto& row : b) {
    if (!in_lattice(a, row)) return false;
  }
  for (const auto& row : a) {
    if (!in_lattice(b, row)) return false;
  }
  return true;
}

bool within_sda_bound(const BigInt& q, std::size_t n, const Rational& eps) {
  // q^4 * num^{4n} <= 2^{n(n+3)} * den^{4n}
  const unsigned long e = 4 * n;
  const std::size_t num_bits = bit_length(BigInt(eps.get_num()));
  const std::size_t den_bits = bit_length(BigInt(eps.get_den()));
  if (4 * bit_length(q) + e * num_bits <= n * (n + 3) + e * (den_bits - 1)) {
    return true;
  }
  BigInt lhs = pow(q, 4) * pow(BigInt(eps.get_num()), e);
  BigInt rhs = pow(BigInt(eps.get_den()), e);
  rhs <<= n * (n + 3);
  return lhs <= rhs;
}

Approximation simultaneous_approx(const RatVec& a, const Rational& eps) {
  if (sgn(eps) <= 0 || eps >= 1) {
    throw InputError("approximation accuracy must lie in (0, 1), got " +
                     to_string(eps));
  }
  for (const auto& x : a) {
    if (abs(x) > 1) throw InputError("approximation target exceeds 1 in size");
  }
  const std::size_t n = a.size();
  if (n == 0) return {BigInt(1), {}};

  const BigInt den = common_denominator(a);
  IntVec scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = a[i].get_num() * (den / a[i].get_den());
  }
  if (within_sda_bound(den, n, eps)) return {den, scaled};

  // Lattice rows r_0 = (U*D, T*A_1, ..., T*A_n), r_i = T*D*e_i. A vector
  // q*r_0 - sum p_i r_i scaled by 1/(T*D) is (q*U/T, q*a_i - p_i). U/T is a
  // rational just below eps^{n+1} * 2^{-n(n+1)/4}, so the first reduced row
  // has every error coordinate <= eps.
  const BigInt e1 = eps.get_num();
  const BigInt e2 = eps.get_den();
  const unsigned long two_shift = (n * (n + 1) + 3) / 4 + 16;
  BigInt big_t = pow(e2, n + 1) << two_shift;
  // U = floor((e1^{4(n+1)} T^4 / (e2^{4(n+1)} 2^{n(n+1)}))^{1/4})
  BigInt u4 = pow(e1, 4 * (n + 1)) * pow(BigInt(1) << two_shift, 4);
  u4 >>= n * (n + 1);
  BigInt big_u;
  mpz_root(big_u.get_mpz_t(), u4.get_mpz_t(), 4);
  if (big_u == 0) big_u = 1;

  Basis basis(n + 1, IntVec(n + 1, BigInt(0)));
  basis[0][0] = big_u * den;
  for (std::size_t i = 0; i < n; ++i) basis[0][i + 1] = big_t * scaled[i];
  for (std::size_t i = 0; i < n; ++i) basis[i + 1][i + 1] = big_t * den;
  basis = lll_reduce(std::move(basis));

  const BigInt td = big_t * den;
  const BigInt ud = big_u * den;
  bool found = false;
  Approximation best;
  for (const auto& row : basis) {
    if (row[0] == 0) continue;
    BigInt q = row[0] / ud;
    IntVec p(n);
    bool ok = true;
    const int flip = sgn(q) < 0 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) {
      BigInt num = q * big_t * scaled[i] - row[i + 1];
      p[i] = num / td;
      // error = (q*a_i - p_i) = row_i / (T*D)
      if (Rational(row[i + 1], td) > eps || Rational(-row[i + 1], td) > eps) {
        ok = false;
      }
    }
    if (!ok) continue;
    if (flip < 0) {
      q = -q;
      for (auto& x : p) x = -x;
    }
    if (!found || q < best.q) {
      best = {q, std::move(p)};
      found = true;
    }
  }
  if (!found) throw InternalError("simultaneous approximation found no row");
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(best.q * a[i] - best.p[i]) > eps) {
      throw InternalError("simultaneous approximation error exceeds eps");
    }
  }
  if (!within_sda_bound(best.q, n, eps)) {
    throw InternalError("simultaneous approximation denominator out of bound");
  }
  return best;
}

}  // namespace kernelsmith

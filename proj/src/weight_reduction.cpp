#include "kernelsmith/weight_reduction.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "kernelsmith/errors.hpp"
#include "kernelsmith/lattice.hpp"

namespace kernelsmith {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BigInt to_big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

void check_n(const BigInt& n, const char* what, long minimum) {
  if (n < minimum) {
    throw InputError(std::string(what) + " must be at least " +
                     std::to_string(minimum) + ", got " + to_string(n));
  }
}

IntVec divide_content(IntVec v) {
  BigInt g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return v;
}

// Peels w into rounds p_1, p_2, ... with sign(w.b) equal to the sign of the
// first nonzero p_i.b whenever ||b||_1 <= n.
std::vector<IntVec> peel(const RatVec& w, const BigInt& n) {
  const std::size_t d = w.size();
  const Rational eps(BigInt(1), n + 1);
  RatVec residual = w;
  std::vector<IntVec> rounds;
  while (!is_zero(residual)) {
    if (rounds.size() == d) throw InternalError("weight reduction did not terminate");
    const Rational norm = linf_norm(residual);
    RatVec a(d);
    for (std::size_t i = 0; i < d; ++i) a[i] = residual[i] / norm;
    std::size_t pivot = d;
    std::vector<std::size_t> others;
    RatVec sub;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(a[i]) == 0) continue;
      if (pivot == d && abs(a[i]) == 1) {
        pivot = i;
      } else {
        others.push_back(i);
        sub.push_back(a[i]);
      }
    }
    const Approximation approx = simultaneous_approx(sub, eps);
    IntVec p(d, BigInt(0));
    p[pivot] = sgn(a[pivot]) > 0 ? approx.q : BigInt(-approx.q);
    for (std::size_t t = 0; t < others.size(); ++t) p[others[t]] = approx.p[t];
    for (std::size_t i = 0; i < d; ++i) residual[i] = approx.q * a[i] - p[i];
    rounds.push_back(std::move(p));
  }
  return rounds;
}

IntVec combine(const std::vector<IntVec>& rounds, std::size_t d,
               const BigInt& n) {
  if (rounds.empty()) return IntVec(d, BigInt(0));
  if (rounds.size() == 1) return rounds.front();
  BigInt p_max = 0;
  for (const auto& p : rounds) {
    const BigInt m = linf_norm(std::span<const BigInt>(p));
    if (m > p_max) p_max = m;
  }
  const BigInt base = p_max * n + 1;
  IntVec out(d, BigInt(0));
  for (const auto& p : rounds) {
    for (std::size_t i = 0; i < d; ++i) out[i] = out[i] * base + p[i];
  }
  return out;
}

void post_check(const RatVec& w, const IntVec& out, const ClassSpec& spec,
                const BigInt& order_r, std::uint64_t cap,
                ReductionReport& report) {
  const RatVec out_q = to_rational(out);
  const SignOrderReport sign = check_sign_order(w, out_q, order_r);
  if (!sign.passed) {
    throw InternalError("reduced weights change " + sign.failures.front());
  }
  report.verified = VerificationLevel::SignOrder;
  if (cap == 0) return;
  try {
    count_test_vectors(spec, cap);
  } catch (const CapExceeded&) {
    return;
  }
  if (!same_class(w, out_q, spec, cap)) {
    throw InternalError("reduced weights left the equivalence class");
  }
  report.verified = VerificationLevel::Exhaustive;
}

}  // namespace

BigInt BoundExpr::approx_bits() const {
  return pow2 + exponent * to_big(bit_length(base));
}

bool BoundExpr::admits(const BigInt& value) const {
  const BigInt bits = to_big(bit_length(value));
  const BigInt base_bits = to_big(bit_length(base));
  if (bits <= pow2 + exponent * (base_bits - 1)) return true;
  if (bits - 1 >= pow2 + exponent * base_bits) return false;
  const auto exact = materialize(std::numeric_limits<std::uint64_t>::max());
  return abs(value) <= *exact;
}

std::optional<BigInt> BoundExpr::materialize(std::uint64_t max_bits) const {
  if (approx_bits() > BigInt(static_cast<unsigned long>(max_bits))) {
    return std::nullopt;
  }
  BigInt out = pow(base, to_ulong(exponent, "bound exponent"));
  out <<= to_ulong(pow2, "bound exponent");
  return out;
}

std::string BoundExpr::symbolic() const {
  return "2^" + to_string(pow2) + " * " + to_string(base) + "^" +
         to_string(exponent);
}

BoundExpr reduce_bound(std::size_t d, const BigInt& n) {
  const BigInt dd = to_big(d);
  return {4 * dd * dd * dd, n + 1, dd * (dd + 2)};
}

BoundExpr threshold_bound(std::size_t d, const BigInt& n) {
  return reduce_bound(d + 1, n);
}

BoundExpr rational_bound(std::size_t d, const BigInt& r) {
  const BigInt dd = to_big(d);
  return {4 * dd * dd * dd, r * r + 1, r * dd * (dd + 2)};
}

std::string to_string(VerificationLevel level) {
  switch (level) {
    case VerificationLevel::None: return "none";
    case VerificationLevel::SignOrder: return "sign-order";
    case VerificationLevel::Exhaustive: return "exhaustive";
  }
  return "none";
}

Reduction reduce(const RatVec& w, const BigInt& n,
                 const ReduceOptions& options) {
  const auto start = Clock::now();
  if (w.empty()) throw InputError("cannot reduce an empty weight vector");
  check_n(n, "N", 1);
  const std::size_t d = w.size();

  Reduction result;
  result.w = divide_content(combine(peel(w, n), d, n));
  auto& report = result.report;
  report.problem = "raw-vector";
  report.d = d;
  report.n = n;
  report.bound = reduce_bound(d, n);
  report.bits_in = max_bit_length(std::span<const Rational>(w));
  report.bits_out = max_bit_length(std::span<const BigInt>(result.w));
  if (!report.bound.admits(linf_norm(std::span<const BigInt>(result.w)))) {
    throw InternalError("reduced weights exceed the norm bound");
  }
  post_check(w, result.w, ClassSpec{n, Domain::Integer, d}, n,
             options.exhaustive_cap, report);
  report.elapsed_seconds = seconds_since(start);
  return result;
}

ThresholdReduction reduce_with_threshold(const RatVec& w, const Rational& k,
                                         const BigInt& n,
                                         const ReduceOptions& options) {
  const auto start = Clock::now();
  check_n(n, "N", 2);
  RatVec joined = w;
  joined.push_back(k);
  Reduction inner = reduce(joined, n, options);
  ThresholdReduction result;
  result.k = inner.w.back();
  inner.w.pop_back();
  result.w = std::move(inner.w);
  result.report = std::move(inner.report);
  result.report.d = w.size();
  result.report.bound = threshold_bound(w.size(), n);
  result.report.elapsed_seconds = seconds_since(start);
  return result;
}

Reduction reduce_rational(const RatVec& w, const BigInt& r,
                          const ReduceOptions& options) {
  const auto start = Clock::now();
  check_n(r, "r", 1);
  const BigInt n = factorial(to_ulong(r, "r")) * r;
  Reduction result = reduce(w, n, ReduceOptions{0});
  auto& report = result.report;
  report.n.reset();
  report.r = r;
  report.bound = rational_bound(w.size(), r);
  report.verified = VerificationLevel::None;
  post_check(w, result.w, ClassSpec{r, Domain::Rational, w.size()}, r,
             options.exhaustive_cap, report);
  report.elapsed_seconds = seconds_since(start);
  return result;
}

IntVec reduce_bruteforce(const RatVec& w, const BigInt& n, std::uint64_t cap) {
  const std::size_t d = w.size();
  if (d == 0 || d > 4) throw InputError("brute-force reduction needs 1 <= d <= 4");
  if (n < 1 || n > 6) throw InputError("brute-force reduction needs 1 <= N <= 6");
  const ClassSpec spec{n, Domain::Integer, d};
  std::uint64_t tried = 0;
  for (long radius = 0;; ++radius) {
    IntVec v(d, BigInt(-radius));
    while (true) {
      const bool on_shell =
          radius == 0 || std::any_of(v.begin(), v.end(), [&](const BigInt& x) {
            return abs(x) == radius;
          });
      if (on_shell) {
        if (++tried > cap) {
          throw CapExceeded("brute-force reduction tried more than " +
                            std::to_string(cap) + " candidates");
        }
        if (same_class(w, to_rational(v), spec)) return v;
      }
      std::size_t i = d;
      while (i > 0 && v[i - 1] == radius) {
        v[i - 1] = -radius;
        --i;
      }
      if (i == 0) break;
      v[i - 1] += 1;
    }
  }
}

}  // namespace kernelsmith

#include "kernelsmith/equivalence.hpp"

#include <algorithm>
#include <set>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

namespace {

// Largest r for which rational test vectors are enumerated at all.
constexpr unsigned long kMaxRationalR = 40;

std::string cap_message(const ClassSpec& spec, std::uint64_t cap) {
  return "test-vector enumeration for r=" + to_string(spec.r) + ", K=" +
         to_string(spec.domain) + ", d=" + std::to_string(spec.d) +
         " exceeds the cap of " + std::to_string(cap) + " vectors";
}

void check_spec(const ClassSpec& spec) {
  if (spec.r < 1) throw InputError("class parameter r must be at least 1");
  if (spec.d < 1) throw InputError("class dimension d must be at least 1");
}

// Test-vector entries as integers over a common scale L: magnitudes
// `values` (ascending, 0 first) and an l1 budget of r*L.
struct Alphabet {
  BigInt scale;
  std::vector<unsigned long> values;
  unsigned long budget = 0;
};

Alphabet make_alphabet(const ClassSpec& spec, std::uint64_t cap) {
  Alphabet out;
  if (spec.domain == Domain::Integer) {
    if (spec.r > BigInt(static_cast<unsigned long>(cap))) {
      throw CapExceeded(cap_message(spec, cap));
    }
    const unsigned long r = spec.r.get_ui();
    out.scale = 1;
    out.budget = r;
    for (unsigned long v = 0; v <= r; ++v) out.values.push_back(v);
    return out;
  }
  if (spec.r > BigInt(kMaxRationalR)) throw CapExceeded(cap_message(spec, cap));
  const unsigned long r = spec.r.get_ui();
  BigInt lcm = 1;
  for (unsigned long q = 2; q <= r; ++q) {
    mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), q);
  }
  const BigInt budget = lcm * r;
  if (budget > BigInt(static_cast<unsigned long>(cap))) {
    throw CapExceeded(cap_message(spec, cap));
  }
  const unsigned long scale = lcm.get_ui();
  std::set<unsigned long> values;
  for (unsigned long p = 0; p <= r; ++p) {
    for (unsigned long q = 1; q <= r; ++q) values.insert(scale * p / q);
  }
  out.scale = lcm;
  out.budget = budget.get_ui();
  out.values.assign(values.begin(), values.end());
  return out;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b,
                             std::uint64_t limit) {
  return (a > limit || b > limit - a) ? limit + 1 : a + b;
}

// Positive rescaling to integers; preserves every sign test.
IntVec integerize(const RatVec& w) {
  const BigInt den = common_denominator(w);
  IntVec out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = w[i].get_num() * (den / w[i].get_den());
  }
  return out;
}

class Walker {
 public:
  Walker(const Alphabet& alphabet, std::size_t d,
         const std::function<bool(const std::vector<long>&)>& leaf)
      : alphabet_(alphabet), beta_(d, 0), leaf_(leaf) {}

  void run() { dfs(0, alphabet_.budget, false); }

 private:
  bool dfs(std::size_t i, unsigned long remaining, bool started) {
    if (i == beta_.size()) return started ? leaf_(beta_) : true;
    for (unsigned long v : alphabet_.values) {
      if (v > remaining) break;
      if (v == 0) {
        beta_[i] = 0;
        if (!dfs(i + 1, remaining, started)) return false;
        continue;
      }
      beta_[i] = static_cast<long>(v);
      if (!dfs(i + 1, remaining - v, true)) return false;
      if (started) {
        beta_[i] = -static_cast<long>(v);
        if (!dfs(i + 1, remaining - v, true)) return false;
      }
    }
    beta_[i] = 0;
    return true;
  }

  const Alphabet& alphabet_;
  std::vector<long> beta_;
  const std::function<bool(const std::vector<long>&)>& leaf_;
};

RatVec to_beta(const std::vector<long>& beta, const BigInt& scale) {
  RatVec out(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    out[i] = make_rational(BigInt(beta[i]), scale);
  }
  return out;
}

Rational evaluate_test(const RatVec& w, const SignTest& test) {
  Rational acc = 0;
  for (const auto& [index, coef] : test.terms) {
    if (index >= w.size()) {
      throw InputError("sign test index " + std::to_string(index) +
                       " outside dimension " + std::to_string(w.size()));
    }
    acc += coef * w[index];
  }
  return acc;
}

}  // namespace

std::string to_string(Domain domain) {
  return domain == Domain::Integer ? "Z" : "Q";
}

std::uint64_t count_test_vectors(const ClassSpec& spec, std::uint64_t cap) {
  check_spec(spec);
  if (spec.domain == Domain::Integer) {
    // sum_k 2^k C(d,k) C(r,k) vectors in the l1 ball, zero included.
    BigInt total = 0;
    for (std::size_t k = 0; k <= spec.d; ++k) {
      BigInt cd, cr;
      mpz_bin_uiui(cd.get_mpz_t(), spec.d, k);
      mpz_bin_ui(cr.get_mpz_t(), spec.r.get_mpz_t(), k);
      total += (BigInt(1) << k) * cd * cr;
    }
    const BigInt canonical = (total - 1) / 2;
    if (canonical > BigInt(static_cast<unsigned long>(cap))) {
      throw CapExceeded(cap_message(spec, cap));
    }
    return canonical.get_ui();
  }
  const Alphabet alphabet = make_alphabet(spec, cap);
  // ways[b]: vectors over the processed coordinates with l1 mass b.
  std::vector<std::uint64_t> ways(alphabet.budget + 1, 0);
  ways[0] = 1;
  const std::uint64_t limit = 2 * cap + 1;
  for (std::size_t i = 0; i < spec.d; ++i) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (std::size_t b = 0; b < ways.size(); ++b) {
      if (ways[b] == 0) continue;
      for (unsigned long v : alphabet.values) {
        if (b + v > alphabet.budget) break;
        const std::uint64_t mult = v == 0 ? 1 : 2;
        for (std::uint64_t t = 0; t < mult; ++t) {
          next[b + v] = saturating_add(next[b + v], ways[b], limit);
        }
      }
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto x : ways) total = saturating_add(total, x, limit);
  if (total > limit) throw CapExceeded(cap_message(spec, cap));
  const std::uint64_t canonical = (total - 1) / 2;
  if (canonical > cap) throw CapExceeded(cap_message(spec, cap));
  return canonical;
}

void for_each_test_vector(const ClassSpec& spec,
                          const std::function<bool(const RatVec&)>& visit,
                          std::uint64_t cap) {
  count_test_vectors(spec, cap);
  const Alphabet alphabet = make_alphabet(spec, cap);
  const std::function<bool(const std::vector<long>&)> leaf =
      [&](const std::vector<long>& beta) {
        return visit(to_beta(beta, alphabet.scale));
      };
  Walker(alphabet, spec.d, leaf).run();
}

std::vector<RatVec> test_vectors(const ClassSpec& spec, std::uint64_t cap) {
  std::vector<RatVec> out;
  for_each_test_vector(
      spec,
      [&](const RatVec& beta) {
        out.push_back(beta);
        return true;
      },
      cap);
  return out;
}

std::optional<RatVec> separating_vector(const RatVec& w, const RatVec& w2,
                                        const ClassSpec& spec,
                                        std::uint64_t cap) {
  if (w.size() != spec.d) throw DimensionMismatch(w.size(), spec.d);
  if (w2.size() != spec.d) throw DimensionMismatch(w2.size(), spec.d);
  count_test_vectors(spec, cap);
  const Alphabet alphabet = make_alphabet(spec, cap);
  const IntVec a = integerize(w);
  const IntVec b = integerize(w2);
  std::optional<RatVec> witness;
  BigInt sa, sb;
  const std::function<bool(const std::vector<long>&)> leaf =
      [&](const std::vector<long>& beta) {
        sa = 0;
        sb = 0;
        for (std::size_t i = 0; i < beta.size(); ++i) {
          if (beta[i] == 0) continue;
          if (beta[i] > 0) {
            mpz_addmul_ui(sa.get_mpz_t(), a[i].get_mpz_t(), beta[i]);
            mpz_addmul_ui(sb.get_mpz_t(), b[i].get_mpz_t(), beta[i]);
          } else {
            mpz_submul_ui(sa.get_mpz_t(), a[i].get_mpz_t(), -beta[i]);
            mpz_submul_ui(sb.get_mpz_t(), b[i].get_mpz_t(), -beta[i]);
          }
        }
        if (sgn(sa) != sgn(sb)) {
          witness = to_beta(beta, alphabet.scale);
          return false;
        }
        return true;
      };
  Walker(alphabet, spec.d, leaf).run();
  return witness;
}

bool same_class(const RatVec& w, const RatVec& w2, const ClassSpec& spec,
                std::uint64_t cap) {
  return !separating_vector(w, w2, spec, cap).has_value();
}

SignOrderReport check_sign_order(const RatVec& w, const RatVec& w2,
                                 const BigInt& r) {
  if (w.size() != w2.size()) throw DimensionMismatch(w.size(), w2.size());
  SignOrderReport report;
  if (r < 1) return report;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) != sgn(w2[i])) {
      report.passed = false;
      report.failures.push_back("sign of entry " + std::to_string(i + 1));
    }
  }
  if (r < 2) return report;
  report.pairs_checked = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (sgn(Rational(w[i] - w[j])) != sgn(Rational(w2[i] - w2[j]))) {
        report.passed = false;
        report.failures.push_back("order of pair (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + ")");
      }
    }
  }
  return report;
}

std::vector<SignTest> triangle_tests(const PointIndexMap& map, std::size_t d) {
  const std::size_t n = map.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (map[x].size() != n) throw InputError("point index map is not square");
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) {
        if (map[x][y].has_value()) {
          throw InputError("point index map has a diagonal entry");
        }
        continue;
      }
      if (!map[x][y].has_value() || map[x][y] != map[y][x]) {
        throw InputError("point index map is not symmetric");
      }
      if (*map[x][y] >= d) throw InputError("point index map out of range");
    }
  }
  std::vector<SignTest> tests;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = x + 1; z < n; ++z) {
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        tests.push_back(
            {{{*map[x][y], 1}, {*map[y][z], 1}, {*map[x][z], -1}}});
      }
    }
  }
  return tests;
}

std::vector<SignTest> bipartite_metric_tests(const BipartiteIndexMap& map,
                                             std::size_t d) {
  const std::size_t m = map.size();
  const std::size_t n = m == 0 ? 0 : map.front().size();
  for (const auto& row : map) {
    if (row.size() != n) throw InputError("cost index map is ragged");
    for (auto idx : row) {
      if (idx >= d) throw InputError("cost index map out of range");
    }
  }
  std::vector<SignTest> tests;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t i2 = 0; i2 < m; ++i2) {
      if (i2 == i) continue;
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          if (j2 == j) continue;
          tests.push_back({{{map[i][j2], 1},
                            {map[i2][j2], 1},
                            {map[i2][j], 1},
                            {map[i][j], -1}}});
        }
      }
    }
  }
  return tests;
}

std::optional<std::size_t> first_sign_mismatch(
    const RatVec& w, const RatVec& w2, const std::vector<SignTest>& tests) {
  if (w.size() != w2.size()) throw DimensionMismatch(w.size(), w2.size());
  for (std::size_t t = 0; t < tests.size(); ++t) {
    if (sgn(evaluate_test(w, tests[t])) != sgn(evaluate_test(w2, tests[t]))) {
      return t;
    }
  }
  return std::nullopt;
}

bool check_metric_preserved(const RatVec& w, const RatVec& w2,
                            const PointIndexMap& map) {
  return !first_sign_mismatch(w, w2, triangle_tests(map, w.size()));
}

bool check_metric_preserved(const RatVec& w, const RatVec& w2,
                            const BipartiteIndexMap& map) {
  return !first_sign_mismatch(w, w2, bipartite_metric_tests(map, w.size()));
}

bool satisfies_all(const RatVec& w, const std::vector<SignTest>& tests) {
  return std::all_of(tests.begin(), tests.end(), [&](const SignTest& t) {
    return sgn(evaluate_test(w, t)) >= 0;
  });
}

}  // namespace kernelsmith

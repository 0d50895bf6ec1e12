#include "kernelsmith/linearizable.hpp"

#include <algorithm>
#include <chrono>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

namespace {

constexpr unsigned long kMaxFactorialArgument = 100000;

Domain join(Domain a, Domain b) {
  return (a == Domain::Rational || b == Domain::Rational) ? Domain::Rational
                                                          : Domain::Integer;
}

void require_children(const std::vector<LinExpr>& children) {
  if (children.empty()) throw InputError("expression node needs children");
  for (const auto& c : children) {
    if (!c) throw InputError("null child expression");
  }
}

BigInt max_alpha(const std::vector<LinExpr>& children) {
  BigInt best = 0;
  for (const auto& c : children) best = std::max(best, c->alpha);
  return best;
}

Domain children_domain(const std::vector<LinExpr>& children) {
  Domain d = Domain::Integer;
  for (const auto& c : children) d = join(d, c->domain);
  return d;
}

LinExpr make_family(NodeKind kind, const BigInt& n, std::vector<LinExpr> children,
                    MemberFn members) {
  if (n < 1) throw InputError("index-set bound must be at least 1");
  require_children(children);
  if (!members) throw InputError("member generator missing");
  auto node = std::make_shared<LinNode>();
  node->kind = kind;
  node->bound = n;
  node->domain = children_domain(children);
  const BigInt a = max_alpha(children);
  if (node->domain == Domain::Integer) {
    node->alpha = kind == NodeKind::Sum ? BigInt(n * a) : BigInt(2 * a);
  } else if (kind == NodeKind::Sum) {
    if (a > BigInt(kMaxFactorialArgument)) {
      throw InputError("alpha too large for the rational sum rule");
    }
    node->alpha = factorial(a.get_ui()) * n * a;
  } else {
    node->alpha = 2 * a * a;
  }
  node->children = std::move(children);
  node->members = std::move(members);
  return node;
}

void check_coefficient(const LinNode& node, const Rational& c) {
  const BigInt num = abs(c.get_num());
  const bool ok = node.domain == Domain::Integer
                      ? c.get_den() == 1 && num >= 1 && num <= node.bound
                      : num >= 1 && num <= node.bound && c.get_den() <= node.bound;
  if (!ok) {
    throw InputError("scale coefficient " + to_string(c) + " is not a nonzero element of " +
                     to_string(node.domain) + "_" + to_string(node.bound));
  }
}

// Value of the node at w; when b is given, also adds mult * b_node into it.
Rational eval(const LinNode& node, const Solution& x, Env& env, const RatVec& w,
              RatVec* b, const Rational& mult) {
  switch (node.kind) {
    case NodeKind::Zero:
      return 0;
    case NodeKind::Coord: {
      const std::size_t i = node.index(x, env);
      if (i >= w.size()) {
        throw InputError("coordinate " + std::to_string(i) + " outside dimension " +
                         std::to_string(w.size()));
      }
      if (b) (*b)[i] += mult;
      return w[i];
    }
    case NodeKind::Scale: {
      const Rational c = node.coef(x, env);
      check_coefficient(node, c);
      return c * eval(*node.children[0], x, env, w, b, mult * c);
    }
    case NodeKind::Lift:
      return eval(*node.children[0], x, env, w, b, mult);
    case NodeKind::Piecewise: {
      const Rational g = eval(*node.children[0], x, env, w, nullptr, mult);
      const auto& chosen = sgn(g) <= 0 ? node.children[1] : node.children[2];
      return eval(*chosen, x, env, w, b, mult);
    }
    case NodeKind::Sum:
    case NodeKind::Max:
    case NodeKind::Min: {
      const std::vector<Member> members = node.members(x, env);
      if (BigInt(static_cast<unsigned long>(members.size())) > node.bound) {
        throw InputError("index set has " + std::to_string(members.size()) +
                         " members, bound is " + to_string(node.bound));
      }
      for (const auto& m : members) {
        if (m.child >= node.children.size()) throw InputError("member names a missing child");
      }
      if (node.kind == NodeKind::Sum) {
        Rational acc = 0;
        for (const auto& m : members) {
          env.push_back(m.binding);
          acc += eval(*node.children[m.child], x, env, w, b, mult);
          env.pop_back();
        }
        return acc;
      }
      if (members.empty()) throw InputError("max/min over an empty index set");
      std::size_t best = 0;
      Rational best_value;
      for (std::size_t t = 0; t < members.size(); ++t) {
        env.push_back(members[t].binding);
        const Rational v = eval(*node.children[members[t].child], x, env, w, nullptr, mult);
        env.pop_back();
        const bool better = node.kind == NodeKind::Max ? v > best_value : v < best_value;
        if (t == 0 || better) {
          best = t;
          best_value = v;
        }
      }
      if (b) {
        env.push_back(members[best].binding);
        eval(*node.children[members[best].child], x, env, w, b, mult);
        env.pop_back();
      }
      return best_value;
    }
  }
  throw InternalError("unknown expression node");
}

}  // namespace

LinExpr coord(IndexFn index) {
  if (!index) throw InputError("coordinate index function missing");
  auto node = std::make_shared<LinNode>();
  node->kind = NodeKind::Coord;
  node->alpha = 1;
  node->index = std::move(index);
  return node;
}

LinExpr coord(std::size_t index) {
  return coord([index](const Solution&, const Env&) { return index; });
}

LinExpr zero() {
  auto node = std::make_shared<LinNode>();
  node->kind = NodeKind::Zero;
  node->alpha = 0;
  return node;
}

LinExpr scale(Domain domain, const BigInt& n, CoefFn coef, LinExpr child) {
  if (n < 1) throw InputError("scale bound must be at least 1");
  if (!coef) throw InputError("scale coefficient function missing");
  require_children({child});
  auto node = std::make_shared<LinNode>();
  node->kind = NodeKind::Scale;
  node->domain = join(domain, child->domain);
  node->bound = n;
  node->alpha = n * child->alpha;
  node->coef = std::move(coef);
  node->children = {std::move(child)};
  return node;
}

LinExpr sum_over(const BigInt& n, std::vector<LinExpr> children, MemberFn members) {
  return make_family(NodeKind::Sum, n, std::move(children), std::move(members));
}

LinExpr max_over(const BigInt& n, std::vector<LinExpr> children, MemberFn members) {
  return make_family(NodeKind::Max, n, std::move(children), std::move(members));
}

LinExpr min_over(const BigInt& n, std::vector<LinExpr> children, MemberFn members) {
  return make_family(NodeKind::Min, n, std::move(children), std::move(members));
}

LinExpr piecewise(LinExpr guard, LinExpr f_nonpos, LinExpr f_pos) {
  std::vector<LinExpr> children = {std::move(guard), std::move(f_nonpos), std::move(f_pos)};
  require_children(children);
  auto node = std::make_shared<LinNode>();
  node->kind = NodeKind::Piecewise;
  node->domain = children_domain(children);
  node->alpha = max_alpha(children);
  node->children = std::move(children);
  return node;
}

LinExpr lift(const BigInt& target, LinExpr child) {
  require_children({child});
  if (target < child->alpha) {
    throw InputError("cannot lift alpha " + to_string(child->alpha) + " down to " +
                     to_string(target));
  }
  auto node = std::make_shared<LinNode>();
  node->kind = NodeKind::Lift;
  node->domain = child->domain;
  node->alpha = target;
  node->bound = target;
  node->children = {std::move(child)};
  return node;
}

const BigInt& alpha(const LinExpr& expr) { return expr->alpha; }
Domain domain(const LinExpr& expr) { return expr->domain; }

Rational evaluate(const LinExpr& expr, const Solution& x, const RatVec& w) {
  Env env;
  return eval(*expr, x, env, w, nullptr, Rational(1));
}

RatVec representation_vector(const LinExpr& expr, const Solution& x, const RatVec& w) {
  Env env;
  RatVec b(w.size(), Rational(0));
  eval(*expr, x, env, w, &b, Rational(1));
  return b;
}

ShrinkResult shrink_z(const LinExpr& expr, const RatVec& w, const std::optional<Rational>& k,
                      const ReduceOptions& options) {
  if (expr->domain != Domain::Integer) {
    throw InputError("integer shrinking needs an integer-domain expression");
  }
  const auto start = std::chrono::steady_clock::now();
  ShrinkResult out;
  BigInt n = 2 * expr->alpha;
  if (k) {
    n = std::max(n, BigInt(2));
    auto red = reduce_with_threshold(w, *k, n, options);
    out.w = std::move(red.w);
    out.k = std::move(red.k);
    out.report = std::move(red.report);
  } else {
    n = std::max(n, BigInt(1));
    auto red = reduce(w, n, options);
    out.w = std::move(red.w);
    out.report = std::move(red.report);
  }
  out.report.alpha = expr->alpha;
  out.report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ShrinkResult shrink_q(const LinExpr& expr, const RatVec& w, const std::optional<Rational>& k,
                      const ReduceOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const BigInt r = std::max(BigInt(2 * expr->alpha * expr->alpha), BigInt(1));
  ShrinkResult out;
  if (k) {
    RatVec joined = w;
    joined.push_back(*k);
    auto red = reduce_rational(joined, r, options);
    out.k = red.w.back();
    red.w.pop_back();
    out.w = std::move(red.w);
    out.report = std::move(red.report);
    out.report.d = w.size();
    out.report.bound = rational_bound(w.size() + 1, r);
  } else {
    auto red = reduce_rational(w, r, options);
    out.w = std::move(red.w);
    out.report = std::move(red.report);
  }
  out.report.alpha = expr->alpha;
  out.report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace kernelsmith

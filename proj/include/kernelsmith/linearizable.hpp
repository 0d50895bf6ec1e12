#pragma once

// Goal-function expression trees carrying a linearizability constant alpha:
// every solution x has a vector b with entries in K_alpha and
// ||b||_1 <= alpha such that f(x, w') = b.w' on the whole class of w.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "kernelsmith/equivalence.hpp"
#include "kernelsmith/numeric.hpp"
#include "kernelsmith/weight_reduction.hpp"

namespace kernelsmith {

// Solutions are integer encodings chosen by each problem; Env is the stack
// of indices bound by enclosing Sum/Max/Min nodes.
using Solution = std::vector<long>;
using Env = std::vector<long>;

struct Member {
  std::size_t child = 0;  // which child expression
  long binding = 0;       // value pushed onto the environment
};

using IndexFn = std::function<std::size_t(const Solution&, const Env&)>;
using CoefFn = std::function<Rational(const Solution&, const Env&)>;
using MemberFn = std::function<std::vector<Member>(const Solution&, const Env&)>;

enum class NodeKind { Coord, Zero, Scale, Sum, Max, Min, Piecewise, Lift };

struct LinNode;
using LinExpr = std::shared_ptr<const LinNode>;

struct LinNode {
  NodeKind kind = NodeKind::Zero;
  Domain domain = Domain::Integer;
  BigInt alpha = 0;
  BigInt bound = 0;  // n of Scale/Sum/Max/Min, target alpha of Lift
  IndexFn index;
  CoefFn coef;
  MemberFn members;
  std::vector<LinExpr> children;  // Piecewise: guard, if-nonpositive, else
};

LinExpr coord(IndexFn index);
LinExpr coord(std::size_t index);
LinExpr zero();
// coef(x) must be a nonzero element of K_n for the given domain.
LinExpr scale(Domain domain, const BigInt& n, CoefFn coef, LinExpr child);
// At most n members per evaluation.
LinExpr sum_over(const BigInt& n, std::vector<LinExpr> children, MemberFn members);
LinExpr max_over(const BigInt& n, std::vector<LinExpr> children, MemberFn members);
LinExpr min_over(const BigInt& n, std::vector<LinExpr> children, MemberFn members);
// f_nonpos if guard(x, w) <= 0, otherwise f_pos.
LinExpr piecewise(LinExpr guard, LinExpr f_nonpos, LinExpr f_pos);
// Same function, certified at a larger alpha.
LinExpr lift(const BigInt& alpha, LinExpr child);

const BigInt& alpha(const LinExpr& expr);
Domain domain(const LinExpr& expr);

Rational evaluate(const LinExpr& expr, const Solution& x, const RatVec& w);
// b with b.w = evaluate(expr, x, w); max/min pick the lowest-index optimum.
RatVec representation_vector(const LinExpr& expr, const Solution& x,
                             const RatVec& w);

struct ShrinkResult {
  IntVec w;
  std::optional<BigInt> k;
  ReductionReport report;
};

// Integer weights preserving every comparison f(x,.) vs f(y,.) and, with k,
// f(x,.) vs k. Uses N = 2*alpha.
ShrinkResult shrink_z(const LinExpr& expr, const RatVec& w,
                      const std::optional<Rational>& k = std::nullopt,
                      const ReduceOptions& options = {});

// Rational-domain counterpart with r = 2*alpha^2.
ShrinkResult shrink_q(const LinExpr& expr, const RatVec& w,
                      const std::optional<Rational>& k = std::nullopt,
                      const ReduceOptions& options = {});

}  // namespace kernelsmith

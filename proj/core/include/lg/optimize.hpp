#pragma once

#include <string>
#include <vector>

#include "lg/analysis.hpp"
#include "lg/instance.hpp"
#include "lg/rational.hpp"

namespace lg {

/// One additive term n^a r^b s^c of a stage-complexity bound.
struct MonomialTerm {
  Rational n_exp;
  Rational r_exp;
  Rational s_exp;
  std::string label;
};

/// Minimax optimum over r = n^alpha, s = n^-beta.
struct BalanceSolution {
  Rational alpha;
  Rational beta;
  Rational value;
  std::vector<int> tight;  // term indices achieving the value
  bool two_variables = false;
  bool beta_positive = false;      // finite shadow of s = o(1)
  bool sr2_exponent_positive = false;  // finite shadow of s r^2 = omega(1)
};

/// g(H) = (2k - l - 3) / (k (l+1) (m+2)); always positive for k >= 3.
Rational g_of_h(const SubgraphPattern& h);

/// 2 - 2/k - g(H).
Rational containment_exponent(const SubgraphPattern& h);

struct Table6Row {
  std::string family;
  int k = 0;  // vertices (cliques, paths, cycles) or leaves (stars)
  Rational g;
  Rational exponent;
};

/// Clique/path/cycle/star rows for parameters 3..max_k, each computed both
/// from an explicit pattern and from the closed form; the two must agree.
std::vector<Table6Row> table6(int max_k);

/// 2 - min over H of (2/k(H) + g(H)).
Rational monotone_exponent(const std::vector<SubgraphPattern>& certificates);

/// The simplified total-complexity term list of the given family.
std::vector<MonomialTerm> stage_exponent_terms(Family family, int k, int l = 0,
                                               int m = 0);

/// Exact minimax over alpha in [0,1] (and beta >= 0 when two variables):
/// candidate vertices are intersections of term equalities and bound
/// constraints; the feasible minimum wins.  Ties pick the smallest (alpha,
/// beta).  Errors when no term grows with beta (value unbounded below).
BalanceSolution balance(const std::vector<MonomialTerm>& terms, bool two_variables);

/// Value of max term exponent at a given point (for argmax checks).
Rational term_system_value(const std::vector<MonomialTerm>& terms, const Rational& alpha,
                           const Rational& beta);

}  // namespace lg

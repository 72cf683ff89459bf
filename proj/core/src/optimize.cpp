#include "lg/optimize.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace lg {

Rational g_of_h(const SubgraphPattern& h) {
  if (h.k < 3) throw std::invalid_argument("g(H) needs at least 3 vertices");
  int k = h.k, l = h.min_degree, m = h.m_edges;
  Rational g = Rational(2 * k - l - 3) / Rational(k * (l + 1) * (m + 2));
  if (g <= 0) throw std::logic_error("g(H) must be positive");
  return g;
}

Rational containment_exponent(const SubgraphPattern& h) {
  return 2 - Rational(2, h.k) - g_of_h(h);
}

std::vector<Table6Row> table6(int max_k) {
  if (max_k < 3) throw std::invalid_argument("table needs max parameter >= 3");
  std::vector<Table6Row> rows;
  auto push = [&](const std::string& family, int k, const SubgraphPattern& h,
                  const Rational& closed_form) {
    Rational g = g_of_h(h);
    if (g != closed_form)
      throw std::logic_error("closed form disagrees with the pattern computation");
    rows.push_back({family, k, g, containment_exponent(h)});
  };
  for (int k = 3; k <= max_k; ++k)
    push("clique", k, clique_pattern(k),
         Rational(2 * (k - 2)) / Rational(k * k * (k * k - 3 * k + 6)));
  for (int k = 3; k <= max_k; ++k)
    push("path", k, path_pattern(k), Rational(k - 2) / Rational(k * k));
  for (int k = 3; k <= max_k; ++k)
    push("cycle", k, cycle_pattern(k), Rational(2 * k - 5) / Rational(3 * k * k));
  for (int k = 3; k <= max_k; ++k)
    push("star", k, star_pattern(k), Rational(k - 1) / Rational((k + 1) * (k + 1)));
  return rows;
}

Rational monotone_exponent(const std::vector<SubgraphPattern>& certificates) {
  if (certificates.empty())
    throw std::invalid_argument("at least one certificate pattern is required");
  std::optional<Rational> best;
  for (const SubgraphPattern& h : certificates) {
    Rational v = Rational(2, h.k) + g_of_h(h);
    if (!best || v < *best) best = v;
  }
  return 2 - *best;
}

std::vector<MonomialTerm> stage_exponent_terms(Family family, int k, int l, int m) {
  std::vector<MonomialTerm> terms;
  switch (family) {
    case Family::KDistinctness:
      if (k < 1) throw std::invalid_argument("k must be positive");
      terms.push_back({0, 1, 0, "r"});
      for (int j = 1; j <= k; ++j)
        terms.push_back({Rational(j, 2), Rational(-(j - 1), 2), 0,
                         "sqrt(n^" + std::to_string(j) + "/r^" +
                             std::to_string(j - 1) + ")"});
      return terms;
    case Family::KClique:
      if (k < 3) throw std::invalid_argument("clique terms need k >= 3");
      terms.push_back({0, 2, 0, "r^2"});
      terms.push_back({Rational(k - 1, 2), Rational(4 - k, 2), 0,
                       "r sqrt(n^(k-1)/r^(k-2))"});
      terms.push_back({Rational(k, 2),
                       Rational(k - 1, k) - Rational(k - 1, 2), 0,
                       "r^((k-1)/k) sqrt(n^k/r^(k-1))"});
      return terms;
    case Family::Subgraph:
      if (k < 3) throw std::invalid_argument("subgraph terms need k >= 3");
      if (l < 1 || m < 0) throw std::invalid_argument("bad (l, m) decomposition");
      terms.push_back({0, 2, 1, "s r^2"});
      terms.push_back({Rational(k - 1, 2), Rational(4 - k, 2), 1,
                       "s r sqrt(n^(k-1)/r^(k-2))"});
      terms.push_back({Rational(k - 1, 2), Rational(-(k - 3), 2),
                       Rational(-(m - 1), 2), "sqrt(n^(k-1)/(r^(k-3) s^(m-1)))"});
      terms.push_back({Rational(k, 2),
                       Rational(l, l + 1) - Rational(k - 1, 2), Rational(-m, 2),
                       "r^(l/(l+1)) sqrt(n^k/(r^(k-1) s^m))"});
      return terms;
  }
  throw std::invalid_argument("unknown family");
}

Rational term_system_value(const std::vector<MonomialTerm>& terms, const Rational& alpha,
                           const Rational& beta) {
  if (terms.empty()) throw std::invalid_argument("empty term system");
  Rational best = 0;
  bool first = true;
  for (const MonomialTerm& t : terms) {
    Rational v = t.n_exp + t.r_exp * alpha - t.s_exp * beta;
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

namespace {

struct Candidate {
  Rational alpha;
  Rational beta;
};

// Affine exponent of term t at (alpha, beta): n_exp + r_exp a - s_exp b.
// Solve the 2x2 system given by two linear conditions c1 . (a, b) = d.
std::optional<Candidate> solve2(const Rational& a1, const Rational& b1,
                                const Rational& d1, const Rational& a2,
                                const Rational& b2, const Rational& d2) {
  Rational det = a1 * b2 - a2 * b1;
  if (det == 0) return std::nullopt;
  return Candidate{(d1 * b2 - d2 * b1) / det, (a1 * d2 - a2 * d1) / det};
}

}  // namespace

BalanceSolution balance(const std::vector<MonomialTerm>& terms, bool two_variables) {
  if (terms.empty()) throw std::invalid_argument("empty term system");
  int n = static_cast<int>(terms.size());

  std::vector<Candidate> candidates;
  auto term_line = [&](int i, Rational& a, Rational& b, Rational& d) {
    // E_i(alpha, beta) = n + r a - s b; equality E_i = E_j becomes a linear
    // condition on (alpha, beta).
    a = terms[i].r_exp;
    b = -terms[i].s_exp;
    d = -terms[i].n_exp;
  };

  if (!two_variables) {
    candidates.push_back({0, 0});
    candidates.push_back({1, 0});
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Rational diff = terms[i].r_exp - terms[j].r_exp;
        if (diff == 0) continue;
        Rational alpha = (terms[j].n_exp - terms[i].n_exp) / diff;
        if (alpha >= 0 && alpha <= 1) candidates.push_back({alpha, 0});
      }
  } else {
    bool grows_with_beta = false;
    for (const MonomialTerm& t : terms)
      if (t.s_exp < 0) grows_with_beta = true;
    if (!grows_with_beta) throw std::invalid_argument("unbalanced term system");

    // Bound constraints as lines: alpha = 0, alpha = 1, beta = 0.
    struct Line {
      Rational a, b, d;
    };
    std::vector<Line> lines;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Rational ai, bi, di, aj, bj, dj;
        term_line(i, ai, bi, di);
        term_line(j, aj, bj, dj);
        lines.push_back({ai - aj, bi - bj, di - dj});
      }
    std::vector<Line> bounds = {{1, 0, 0}, {1, 0, 1}, {0, 1, 0}};
    auto consider = [&](const Line& u, const Line& v) {
      auto c = solve2(u.a, u.b, u.d, v.a, v.b, v.d);
      if (c && c->alpha >= 0 && c->alpha <= 1 && c->beta >= 0)
        candidates.push_back(*c);
    };
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) consider(lines[i], lines[j]);
      for (const Line& b : bounds) consider(lines[i], b);
    }
    consider(bounds[0], bounds[2]);
    consider(bounds[1], bounds[2]);
  }

  std::optional<Candidate> best;
  std::optional<Rational> best_value;
  for (const Candidate& c : candidates) {
    Rational v = term_system_value(terms, c.alpha, c.beta);
    if (!best || v < *best_value ||
        (v == *best_value &&
         std::tie(c.alpha, c.beta) < std::tie(best->alpha, best->beta))) {
      best = c;
      best_value = v;
    }
  }

  BalanceSolution out;
  out.alpha = best->alpha;
  out.beta = best->beta;
  out.value = *best_value;
  out.two_variables = two_variables;
  for (int i = 0; i < n; ++i) {
    Rational v = terms[i].n_exp + terms[i].r_exp * out.alpha - terms[i].s_exp * out.beta;
    if (v == out.value) out.tight.push_back(i);
  }
  out.beta_positive = out.beta > 0;
  out.sr2_exponent_positive = 2 * out.alpha - out.beta > 0;
  return out;
}

}  // namespace lg

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lg/builders.hpp"
#include "lg/flow.hpp"
#include "lg/graph.hpp"
#include "lg/group.hpp"
#include "lg/rational.hpp"

namespace lg {

struct StageComplexity {
  std::string stage;       // "1", "2", ...
  Rational length;         // L_i, max over instances when not symmetric
  Rational speciality;     // T_i
  double complexity = 0;   // L_i * sqrt(T_i)
  bool symmetric = true;
  bool symmetry_checked = false;
  bool degenerate = false;  // contains length-0 transitions
};

struct SubroutineComplexity {
  double average_complexity = 0;  // L = sum p_v * l(v)
  Rational speciality;            // T = max vertex speciality
  double complexity = 0;          // L * sqrt(T)
  bool symmetric = true;
  bool symmetry_checked = false;
};

struct ComplexityReport {
  std::vector<StageComplexity> stages;
  std::optional<SubroutineComplexity> subroutine;
  double total = 0;
  std::optional<Rational> conditioning_k;
};

/// L * sqrt(T); requires T >= 1 (speciality is never below 1).
double stage_complexity(const Rational& length, const Rational& speciality);

/// Per-stage L_i, T_i, C_i plus the subroutine stage, with the total their
/// sum.  Flows are one per positive instance; with two or more, symmetry is
/// checked per stage and non-symmetric stages report max-over-instances.
ComplexityReport total_complexity(const LearningGraph& lg,
                                  const std::vector<FlowAssignment>& flows,
                                  const SymmetryGroup& g);

/// Subroutine-stage value alone: sum p_v * l(v) times sqrt of the maximal
/// final-layer vertex speciality, with l(v) the attached graph's total
/// complexity computed recursively.
double subroutine_stage_complexity(const LearningGraph& lg,
                                   const std::vector<FlowAssignment>& flows,
                                   const SymmetryGroup& g);

struct ConditionResult {
  FlowAssignment flow;
  Rational one_over_p;    // observed 1/p(x)
  bool warning = false;   // 1/p(x) >= K
};

/// Removes all flow reaching unselected final vertices and rescales the rest
/// by 1/p(x), restoring unit stage sums.  p(x) = 0 is an error; 1/p(x) >= K
/// only warns.
ConditionResult condition_flow(const LearningGraph& lg, const FlowAssignment& flow,
                               const std::function<bool(const LVertex&)>& selector,
                               const Rational& k_bound);

enum class Family { KDistinctness, KClique, Subgraph };

struct ScalingStageFit {
  std::string stage;
  double fitted = 0;     // log-log least-squares exponent of exact T_i
  double predicted = 0;  // same fit applied to the model formula
};

struct ScalingReport {
  Family family = Family::KDistinctness;
  int k = 0;
  std::vector<int> n_list;
  std::vector<int> r_list;
  std::vector<std::vector<Rational>> specialities;  // [size][stage]
  std::vector<std::vector<Rational>> lengths;       // [size][stage]
  std::vector<ScalingStageFit> fits;
};

/// Exact per-stage specialities and lengths across a size list, with fitted
/// log-log exponents next to the model's predicted ones.  At least 3 sizes.
/// r defaults to ceil(n^(k/(k+1))) (k-distinctness) or ceil(n^(1-1/k))
/// (clique) when no rule is given.
ScalingReport scaling_report(Family family, int k, const std::vector<int>& n_list,
                             const std::function<int(int)>& r_rule = {});

std::string complexity_table(const ComplexityReport& report);
std::string scaling_table(const ScalingReport& report);

}  // namespace lg

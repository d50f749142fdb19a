#include "f2reg/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"

namespace f2reg {

double energy(const FunctionTable& f, const Subspace& h) {
  if (f.n() != h.ambient()) throw DimensionMismatch("energy: table and subspace dimensions differ");
  require_dense(h.codim(), "energy");
  const CosetGeometry geom(h);
  // Sum f over each coset by folding the table onto coset numbers.
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(geom.coset_count()));
  for (std::uint64_t x = 0; x < f.size(); ++x) sums[static_cast<Eigen::Index>(geom.coset_of(x))] += f(x);
  const Eigen::VectorXd means = sums / static_cast<double>(geom.coset_size());
  return means.squaredNorm() / static_cast<double>(geom.coset_count());
}

std::uint64_t iteration_cap(double epsilon) {
  return static_cast<std::uint64_t>(std::ceil(1.0 / (epsilon * epsilon * epsilon) - 1e-9));
}

RefineStep refine_step(const FunctionTable& f, const Subspace& h, double epsilon, Schedule schedule) {
  const RegularityReport report = check_subspace_regularity(f, h, epsilon);
  if (report.is_regular()) throw PreconditionError("refine_step called on an epsilon-regular subspace");
  std::vector<F2Vector> added;
  if (schedule == Schedule::kBatched) {
    for (const auto& w : report.witnesses) added.push_back(w.character);
  } else {
    const CosetWitness* best = &report.witnesses.front();
    for (const auto& w : report.witnesses) {
      const double a = std::abs(w.value), b = std::abs(best->value);
      if (a > b || (a == b && w.character < best->character)) best = &w;
    }
    added.push_back(best->character);
  }
  std::sort(added.begin(), added.end());
  added.erase(std::unique(added.begin(), added.end()), added.end());
  const Subspace annihilator = orthogonal_complement(echelonize(h.ambient(), added));
  return {intersect(h, annihilator), std::move(added)};
}

DecompositionTrace find_regular_subspace(const FunctionTable& f, double epsilon, const DecomposeGuards& guards) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw PreconditionError("epsilon must lie in (0, 1/2)");
  require_dense(f.n(), "find_regular_subspace");
  DecompositionTrace trace;
  trace.epsilon = epsilon;
  trace.schedule = guards.schedule;
  trace.iteration_cap = guards.max_iterations ? guards.max_iterations : iteration_cap(epsilon);

  Subspace h = Subspace::full(f.n());
  double e = energy(f, h);
  while (true) {
    RegularityReport report = check_subspace_regularity(f, h, epsilon);
    IterationRecord rec{h.dim(), h.codim(), e, report.total_cosets - report.regular_cosets, {}};
    if (report.is_regular()) {
      trace.iterations.push_back(std::move(rec));
      trace.final_report = std::move(report);
      trace.status = DecomposeStatus::kRegular;
      break;
    }
    if (trace.iterations.size() >= trace.iteration_cap) {
      trace.iterations.push_back(std::move(rec));
      trace.final_report = std::move(report);
      trace.status = DecomposeStatus::kIterationGuard;
      break;
    }
    RefineStep step = refine_step(f, h, epsilon, guards.schedule);
    if (step.refined.codim() > guards.max_codim) {
      rec.added = std::move(step.added);
      trace.iterations.push_back(std::move(rec));
      trace.final_report = std::move(report);
      trace.status = DecomposeStatus::kIndexGuard;
      break;
    }
    const double next = energy(f, step.refined);
    if (guards.schedule == Schedule::kBatched && !(next - e > epsilon * epsilon * epsilon)) {
      std::ostringstream os;
      os << "energy increment " << (next - e) << " does not exceed epsilon^3 = " << epsilon * epsilon * epsilon
         << " at codim " << h.codim();
      throw ClaimViolation(os.str());
    }
    rec.added = std::move(step.added);
    trace.iterations.push_back(std::move(rec));
    h = std::move(step.refined);
    e = next;
  }
  trace.final_subspace = h;
  return trace;
}

}  // namespace f2reg

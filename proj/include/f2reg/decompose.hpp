#pragma once

// Energy-increment search for an epsilon-regular subspace.

#include <cstdint>
#include <string>
#include <vector>

#include "f2reg/fourier.hpp"
#include "f2reg/gf2.hpp"

namespace f2reg {

/// Mean over x of (mean of f on the coset of H containing x)^2.
double energy(const FunctionTable& f, const Subspace& h);

enum class Schedule { kBatched, kSingleWitness };

struct RefineStep {
  Subspace refined;
  /// Canonical class representatives, ascending and deduplicated.
  std::vector<F2Vector> added;
};

/// H' = H intersected with the annihilator of the worst witness of every
/// irregular coset (or of the single overall worst one). Throws
/// PreconditionError when H is already epsilon-regular.
RefineStep refine_step(const FunctionTable& f, const Subspace& h, double epsilon,
                       Schedule schedule = Schedule::kBatched);

struct IterationRecord {
  int dim = 0;
  int codim = 0;  // log2 of the index
  double energy = 0.0;
  std::uint64_t irregular_cosets = 0;
  std::vector<F2Vector> added;
};

enum class DecomposeStatus { kRegular, kIndexGuard, kIterationGuard };

struct DecompositionTrace {
  double epsilon = 0.0;
  Schedule schedule = Schedule::kBatched;
  /// One record per examined subspace; the last is the final subspace.
  std::vector<IterationRecord> iterations;
  Subspace final_subspace;
  RegularityReport final_report;
  DecomposeStatus status = DecomposeStatus::kRegular;
  std::uint64_t iteration_cap = 0;

  /// Refinement rounds performed.
  std::size_t rounds() const { return iterations.empty() ? 0 : iterations.size() - 1; }
};

struct DecomposeGuards {
  /// Largest allowed log2 index.
  int max_codim = 26;
  /// 0 means ceil(1 / epsilon^3).
  std::uint64_t max_iterations = 0;
  Schedule schedule = Schedule::kBatched;
};

std::uint64_t iteration_cap(double epsilon);

/// Refines from H = F_2^n until the subspace is epsilon-regular or a guard
/// trips. In batched mode every round must raise the energy by more than
/// epsilon^3; a smaller gain throws ClaimViolation.
DecompositionTrace find_regular_subspace(const FunctionTable& f, double epsilon, const DecomposeGuards& guards = {});

}  // namespace f2reg

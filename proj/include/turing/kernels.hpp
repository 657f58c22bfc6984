#pragma once

#include "turing/grid.hpp"
#include "turing/model.hpp"

namespace turing::kernels {

/// Entries below this after a step abort the run.
inline constexpr double kAbortThreshold = -1e-6;

struct StepStats {
  double min_value;  // smallest entry over all four updated fields
  bool bad;          // NaN, Inf or an entry below kAbortThreshold
};

/// One forward-Euler step of the full system with the 5-point Laplacian and
/// mirror ghost cells (homogeneous Neumann). `out` must be sized for g and must
/// not alias `in`. out.time is set to in.time + dt.
///
/// step_reference is the plain per-cell loop kept for testing; step_parallel
/// splits the grid into row strips across OpenMP threads. Both produce
/// bitwise-identical output for any thread count.
StepStats step_reference(const ModelParams& p, const GridSpec& g, double dt, const FieldSet& in,
                         FieldSet& out);
StepStats step_parallel(const ModelParams& p, const GridSpec& g, double dt, const FieldSet& in,
                        FieldSet& out);

/// Worker count: the OpenMP default, capped by TURING_LAB_THREADS when set and positive.
int default_threads();

/// Sets the OpenMP thread count for subsequent parallel kernels (n <= 0 restores the default).
void set_threads(int n);

}  // namespace turing::kernels

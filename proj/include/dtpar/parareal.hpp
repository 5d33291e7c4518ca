#pragma once

#include <string>
#include <vector>

#include "dtpar/coarse.hpp"
#include "dtpar/errors.hpp"
#include "dtpar/ode.hpp"

namespace dtpar {

class TimeGrid;

enum class GuessKind { None, Local, Global };

struct PararealConfig {
    InitKind init = InitKind::BE;
    CoarseKind coarse = CoarseKind::BE;
    double epsilon = 5e-3;
    int max_iterations = -1;  // -1: the finite-termination cap M-1
    int worker_count = 1;
    GuessKind newton_guess = GuessKind::None;
    NewtonConfig newton;
};

/// Snapshot of one parareal iteration. Counter fields are cumulative over the
/// whole run up to and including this iteration.
struct IterationRecord {
    int k = 0;
    std::vector<Vector> iterates;       // x_0^k .. x_M^k
    std::vector<Vector> fine_values;    // f_1^k .. f_M^k
    std::vector<Vector> coarse_values;  // q_1^k .. q_M^k (entries may be empty when never formed)
    double error = 0.0;                 // e(k)
    long fine_steps_cum = 0;            // fine-propagator steps actually computed
    long coarse_steps_cum = 0;          // coarse-propagator applications
    long newton_iters_cum = 0;
    long wall_fine_equiv_cum = 0;  // wall-clock cost model, units of one fine step
    double wall_seconds_cum = 0.0;
};

struct PararealTrace {
    std::vector<IterationRecord> iterations;  // k = 0..K
    std::vector<Vector> final_states;         // x_0..x_M after the converged-tail overwrite
    int converged_iterations = 0;             // K
    // Newton accounting of the initial parallel fine propagation (Steps 3-5).
    PropagationStats initial_fine_stats;
};

struct NonConvergenceAtCap : Error {
    NonConvergenceAtCap(const std::string& msg, PararealTrace partial)
        : Error(msg), trace(std::move(partial)) {}
    PararealTrace trace;
};

/// The parareal engine with pluggable initializer and coarse propagator.
/// `assets` is required when init or coarse uses forecasting.
PararealTrace run_parareal(const PararealConfig& cfg, const DynamicalSystem& sys,
                           const TimeGrid& grid, const Vector& x0,
                           const ForecastAssets* assets = nullptr);

/// e(k) recomputed from a stored iteration record.
double error_metric(const IterationRecord& record);

/// Serial fine propagation over the whole grid; the ground truth.
std::vector<Vector> serial_reference(const DynamicalSystem& sys, const TimeGrid& grid,
                                     const Vector& x0, const NewtonConfig& cfg = {});

/// CSV serialization (schema: k,e_k,fine_steps_cum,coarse_steps_cum,
/// newton_iters_cum,wall_seconds).
std::string trace_csv(const PararealTrace& trace);

const char* to_string(InitKind kind);
const char* to_string(CoarseKind kind);
InitKind init_kind_from_string(const std::string& s);
CoarseKind coarse_kind_from_string(const std::string& s);

}  // namespace dtpar

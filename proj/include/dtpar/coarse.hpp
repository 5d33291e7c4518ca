#pragma once

#include <vector>

#include "dtpar/forecast.hpp"
#include "dtpar/ode.hpp"

namespace dtpar {

class TimeGrid;

/// Linear restriction R onto the forecastable components and prolongation P
/// back into the full state space, with optional orthogonal complements
/// satisfying P*R*xi + P_perp*R_perp*xi = xi.
struct RestrictionPair {
    Matrix R;  // n_y x N
    Matrix P;  // N x n_y
    Matrix R_perp;
    Matrix P_perp;
    bool has_complement = false;

    int full_dim() const { return static_cast<int>(R.cols()); }
    int restricted_dim() const { return static_cast<int>(R.rows()); }

    static RestrictionPair identity(int n);
    /// First-n_y coordinate selector/injector with complements.
    static RestrictionPair leading_selector(int n, int n_y);
};

/// Everything the forecast propagator and initializers consume: memory,
/// restriction, global time-evolution bases, and per-(component, interval)
/// local bases.
struct ForecastAssets {
    int memory = 1;
    RestrictionPair restriction;
    std::vector<TimeEvolutionBasis> global_bases;       // one per restricted component
    std::vector<std::vector<LocalBasis>> local_bases;   // [component][interval]
};

/// Result of one local-forecast coarse propagation: the propagated state and
/// the memory-many fine states computed on the way, kept for reuse.
struct LfStepResult {
    Vector state;
    std::vector<Vector> sampled_states;  // fine states at offsets 1..alpha
};

/// Local-forecast coarse propagator over interval n: runs the fine propagator
/// `memory` steps on the full state, forecasts each restricted component to
/// the interval end, and prolongates. Components in the complement of
/// range(P) come back as zero.
LfStepResult lf_coarse_propagate(const ForecastAssets& assets, const DynamicalSystem& sys,
                                 const TimeGrid& grid, const Vector& xi, int n,
                                 const NewtonConfig& cfg = {},
                                 PropagationStats* stats = nullptr);

enum class InitKind { BE, CN, LF, GF, FineAsCoarse };
enum class CoarseKind { BE, CN, LF, FineAsCoarse };

struct InitResult {
    std::vector<Vector> seeds;  // x_1^0 .. x_M^0
    // Fine states already computed per interval (offsets 1..size), reusable
    // by the subsequent fine propagation.
    std::vector<std::vector<Vector>> interval_prefix;
};

/// Sequential initialization x_{n+1}^0 = G(x_n^0; T_n, T_{n+1}).
InitResult initialize_sequential(InitKind kind, const ForecastAssets* assets,
                                 const DynamicalSystem& sys, const TimeGrid& grid,
                                 const Vector& x0, const NewtonConfig& cfg = {},
                                 PropagationStats* stats = nullptr);

/// One gappy fit per restricted component, shared by every coarse instance;
/// also the source of global-forecast Newton guesses.
struct GlobalForecastCache {
    Vector anchors;         // n_y
    Matrix reconstruction;  // n_y x n_fine, row j holds the centered forecast of component j
    const RestrictionPair* restriction = nullptr;

    /// Full-state forecast at a fine index (0 returns P*anchors).
    Vector state_at(int fine_index) const;
};

GlobalForecastCache make_global_forecast_cache(const ForecastAssets& assets,
                                               const Vector& x0,
                                               const std::vector<Vector>& sampled_states);

/// Initialization via global forecasting: runs `memory` fine steps from t_0
/// once and forecasts every coarse instance from that single fit.
InitResult initialize_global_forecast(const ForecastAssets& assets, const DynamicalSystem& sys,
                                      const TimeGrid& grid, const Vector& x0,
                                      const NewtonConfig& cfg = {},
                                      PropagationStats* stats = nullptr,
                                      GlobalForecastCache* cache = nullptr);

/// Per-interval analogue anchored at the interval-start state.
struct LocalForecastCache {
    Vector anchors;
    Matrix reconstruction;  // n_y x m_bar
    int interval = 0;
    const RestrictionPair* restriction = nullptr;

    /// Full-state forecast at a local offset (0 returns P*anchors).
    Vector state_at_offset(int offset) const;
};

LocalForecastCache make_local_forecast_cache(const ForecastAssets& assets, const Vector& anchor_state,
                                             const std::vector<Vector>& sampled_states, int n);

}  // namespace dtpar

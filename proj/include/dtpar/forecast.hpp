#pragma once

#include <Eigen/Dense>

#include "dtpar/ode.hpp"

namespace dtpar {

class TimeGrid;

/// Orthonormal basis for the centered time history of one state component,
/// defined over the whole fine grid (rows = fine instances 1..n_fine).
struct TimeEvolutionBasis {
    Matrix matrix;  // n_fine x a
    int dim() const { return static_cast<int>(matrix.cols()); }
    int rows() const { return static_cast<int>(matrix.rows()); }
};

/// Basis restricted to one coarse interval (rows = local offsets 1..m_bar),
/// centered at the interval start and truncated by the energy criterion.
struct LocalBasis {
    Matrix matrix;  // m_bar x b
    int interval = 0;
    bool zero_block = false;
    int dim() const { return static_cast<int>(matrix.cols()); }
    int rows() const { return static_cast<int>(matrix.rows()); }
};

/// Consecutive sample window: entries start+1 .. start+memory of an unrolled
/// vector (1-based entry numbering; entry k corresponds to fine instance k).
struct SampleWindow {
    int start = 0;
    int memory = 1;
};

/// Pseudoinverse of the sampled basis block P_{start,alpha} * Theta.
///
/// Thin QR when the block has full column rank; SVD with singular-value
/// cutoff 1e-12*sigma_max otherwise.
struct SampledBasisPinv {
    Matrix pinv;  // cols(Theta) x alpha
    bool rank_deficient = false;
};

SampledBasisPinv sampled_basis_pinv(const Matrix& basis, int start, int alpha);

/// Gappy POD reconstruction over all rows of `basis` from `samples` observed
/// through the window, centered by `anchor`. Returns Theta*d with
/// d = argmin || P Theta d - (samples - anchor*1) ||_2.
Vector gappy_fit(const Matrix& basis, const SampleWindow& window, const Vector& samples,
                 double anchor, bool* rank_deficient = nullptr);

/// Forecast of a scalar time history to fine index k from its values at fine
/// indices i+1..i+alpha, anchored at the initial value y0. k = 0 returns y0.
double global_forecast(const TimeEvolutionBasis& basis, double y0, const Vector& samples,
                       int i, int k);

/// Extracts the interval-n block of a global basis, centers it at the
/// interval start, and truncates by the singular-value-sum energy criterion.
LocalBasis local_basis(const TimeEvolutionBasis& basis, int n, double upsilon,
                       const TimeGrid& grid);

/// Forecast within coarse interval n to fine index k from samples at local
/// offsets 1..alpha, anchored at the interval-start value. k = m_bar*n
/// returns the anchor.
double local_forecast(const LocalBasis& basis, double y_at_Tn, const Vector& samples,
                      int k, const TimeGrid& grid);

/// Weights gamma_i = e_target^T Theta [P_{0,alpha} Theta]^+ e_i, i = 1..alpha,
/// satisfying forecast = anchor + sum_i gamma_i (sample_i - anchor).
Vector forecast_weights(const LocalBasis& basis, int alpha, int target_offset);

/// Same weights for a global basis with target a fine index.
Vector forecast_weights_global(const TimeEvolutionBasis& basis, int alpha, int target_index);

}  // namespace dtpar

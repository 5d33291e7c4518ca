#include "dtpar/coarse.hpp"

#include "dtpar/errors.hpp"
#include "dtpar/time_grid.hpp"

namespace dtpar {

RestrictionPair RestrictionPair::identity(int n) {
    RestrictionPair rp;
    rp.R = Matrix::Identity(n, n);
    rp.P = Matrix::Identity(n, n);
    rp.R_perp = Matrix::Zero(0, n);
    rp.P_perp = Matrix::Zero(n, 0);
    rp.has_complement = true;
    return rp;
}

RestrictionPair RestrictionPair::leading_selector(int n, int n_y) {
    if (n_y < 1 || n_y > n) throw DomainError("RestrictionPair: invalid restricted dimension");
    RestrictionPair rp;
    rp.R = Matrix::Identity(n, n).topRows(n_y);
    rp.P = Matrix::Identity(n, n).leftCols(n_y);
    rp.R_perp = Matrix::Identity(n, n).bottomRows(n - n_y);
    rp.P_perp = Matrix::Identity(n, n).rightCols(n - n_y);
    rp.has_complement = true;
    return rp;
}

namespace {

// Restricted samples of a fine-state sequence: column i holds R * states[i].
Matrix restricted_samples(const RestrictionPair& rp, const std::vector<Vector>& states) {
    Matrix samples(rp.restricted_dim(), states.size());
    for (std::size_t i = 0; i < states.size(); ++i) samples.col(i) = rp.R * states[i];
    return samples;
}

}  // namespace

LfStepResult lf_coarse_propagate(const ForecastAssets& assets, const DynamicalSystem& sys,
                                 const TimeGrid& grid, const Vector& xi, int n,
                                 const NewtonConfig& cfg, PropagationStats* stats) {
    const int alpha = assets.memory;
    const int m_bar = grid.fine_per_coarse();
    if (alpha > m_bar) throw DomainError("lf_coarse_propagate: memory exceeds interval length");
    const int first = grid.fine_index_of_coarse(n);

    std::vector<Vector> traj =
        fine_propagate(sys, grid, xi, first, first + alpha, cfg, nullptr, stats);
    std::vector<Vector> sampled(traj.begin() + 1, traj.end());

    LocalForecastCache cache = make_local_forecast_cache(assets, xi, sampled, n);
    LfStepResult out;
    out.state = cache.state_at_offset(m_bar);
    out.sampled_states = std::move(sampled);
    return out;
}

LocalForecastCache make_local_forecast_cache(const ForecastAssets& assets, const Vector& anchor_state,
                                             const std::vector<Vector>& sampled_states, int n) {
    const RestrictionPair& rp = assets.restriction;
    const int n_y = rp.restricted_dim();
    const int alpha = static_cast<int>(sampled_states.size());

    LocalForecastCache cache;
    cache.interval = n;
    cache.restriction = &rp;
    cache.anchors = rp.R * anchor_state;
    const Matrix samples = restricted_samples(rp, sampled_states);
    const int m_bar = assets.local_bases.at(0).at(n).rows();
    cache.reconstruction.resize(n_y, m_bar);
    for (int j = 0; j < n_y; ++j) {
        const LocalBasis& basis = assets.local_bases.at(j).at(n);
        if (basis.dim() == 0) {
            cache.reconstruction.row(j).setZero();
            continue;
        }
        const Vector recon = gappy_fit(basis.matrix, {0, alpha},
                                       samples.row(j).transpose(), cache.anchors(j));
        cache.reconstruction.row(j) = recon.transpose();
    }
    return cache;
}

Vector LocalForecastCache::state_at_offset(int offset) const {
    Vector y = anchors;
    if (offset > 0) y += reconstruction.col(offset - 1);
    return restriction->P * y;
}

GlobalForecastCache make_global_forecast_cache(const ForecastAssets& assets, const Vector& x0,
                                               const std::vector<Vector>& sampled_states) {
    const RestrictionPair& rp = assets.restriction;
    const int n_y = rp.restricted_dim();

    GlobalForecastCache cache;
    cache.restriction = &rp;
    cache.anchors = rp.R * x0;
    const Matrix samples = restricted_samples(rp, sampled_states);
    const int alpha = static_cast<int>(sampled_states.size());
    const int n_fine = assets.global_bases.at(0).rows();
    cache.reconstruction.resize(n_y, n_fine);
    for (int j = 0; j < n_y; ++j) {
        const Vector recon = gappy_fit(assets.global_bases.at(j).matrix, {0, alpha},
                                       samples.row(j).transpose(), cache.anchors(j));
        cache.reconstruction.row(j) = recon.transpose();
    }
    return cache;
}

Vector GlobalForecastCache::state_at(int fine_index) const {
    Vector y = anchors;
    if (fine_index > 0) y += reconstruction.col(fine_index - 1);
    return restriction->P * y;
}

InitResult initialize_sequential(InitKind kind, const ForecastAssets* assets,
                                 const DynamicalSystem& sys, const TimeGrid& grid,
                                 const Vector& x0, const NewtonConfig& cfg,
                                 PropagationStats* stats) {
    const int m = grid.coarse_intervals();
    InitResult out;
    out.seeds.reserve(m);
    out.interval_prefix.assign(m, {});
    Vector current = x0;
    for (int n = 0; n < m; ++n) {
        switch (kind) {
            case InitKind::BE:
                current = coarse_integrator_step(IntegratorKind::BackwardEuler, sys, current,
                                                 grid.coarse_time(n), grid.coarse_step(), cfg,
                                                 stats);
                break;
            case InitKind::CN:
                current = coarse_integrator_step(IntegratorKind::CrankNicolson, sys, current,
                                                 grid.coarse_time(n), grid.coarse_step(), cfg,
                                                 stats);
                break;
            case InitKind::LF: {
                if (!assets) throw DomainError("initialize_sequential: LF needs forecast assets");
                LfStepResult step = lf_coarse_propagate(*assets, sys, grid, current, n, cfg, stats);
                out.interval_prefix[n] = std::move(step.sampled_states);
                current = std::move(step.state);
                break;
            }
            case InitKind::FineAsCoarse: {
                const int first = grid.fine_index_of_coarse(n);
                std::vector<Vector> traj = fine_propagate(sys, grid, current, first,
                                                          first + grid.fine_per_coarse(), cfg,
                                                          nullptr, stats);
                out.interval_prefix[n].assign(traj.begin() + 1, traj.end());
                current = traj.back();
                break;
            }
            case InitKind::GF:
                throw DomainError("initialize_sequential: GF is not a sequential initializer");
        }
        out.seeds.push_back(current);
    }
    return out;
}

InitResult initialize_global_forecast(const ForecastAssets& assets, const DynamicalSystem& sys,
                                      const TimeGrid& grid, const Vector& x0,
                                      const NewtonConfig& cfg, PropagationStats* stats,
                                      GlobalForecastCache* cache_out) {
    const int alpha = assets.memory;
    if (alpha > grid.n_fine()) throw DomainError("initialize_global_forecast: memory too large");

    std::vector<Vector> traj = fine_propagate(sys, grid, x0, 0, alpha, cfg, nullptr, stats);
    std::vector<Vector> sampled(traj.begin() + 1, traj.end());

    GlobalForecastCache cache = make_global_forecast_cache(assets, x0, sampled);

    InitResult out;
    const int m = grid.coarse_intervals();
    out.seeds.reserve(m);
    out.interval_prefix.assign(m, {});
    for (int n = 0; n < m; ++n)
        out.seeds.push_back(cache.state_at(grid.fine_index_of_coarse(n + 1)));
    out.interval_prefix[0] = std::move(sampled);
    if (cache_out) *cache_out = std::move(cache);
    return out;
}

}  // namespace dtpar

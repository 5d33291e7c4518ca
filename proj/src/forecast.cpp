#include "dtpar/forecast.hpp"

#include <cstdio>

#include "dtpar/errors.hpp"
#include "dtpar/time_grid.hpp"

namespace dtpar {

namespace {

Matrix svd_pinv(const Matrix& block) {
    Eigen::JacobiSVD<Matrix> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? 1e-12 * sv(0) : 0.0;
    Vector inv_sv = Vector::Zero(sv.size());
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

Vector weights_from_pinv(const Matrix& basis, const SampledBasisPinv& fit, int target_offset) {
    const int alpha = static_cast<int>(fit.pinv.cols());
    if (target_offset == 0) return Vector::Zero(alpha);
    Vector theta_target = basis.row(target_offset - 1).transpose();
    return fit.pinv.transpose() * theta_target;
}

}  // namespace

SampledBasisPinv sampled_basis_pinv(const Matrix& basis, int start, int alpha) {
    if (alpha < 1) throw DomainError("sampled_basis_pinv: memory must be positive");
    if (start < 0 || start + alpha > basis.rows())
        throw DomainError("sampled_basis_pinv: sample window exceeds basis rows");
    const Matrix block = basis.middleRows(start, alpha);
    SampledBasisPinv out;
    if (basis.cols() == 0) {
        out.pinv = Matrix::Zero(0, alpha);
        return out;
    }
    if (alpha < basis.cols())
        std::fprintf(stderr,
                     "dtpar: warning: memory %d below basis dimension %ld (underdetermined fit)\n",
                     alpha, static_cast<long>(basis.cols()));
    Eigen::ColPivHouseholderQR<Matrix> qr(block);
    qr.setThreshold(1e-12);
    if (alpha >= basis.cols() && qr.rank() == basis.cols()) {
        const int b = static_cast<int>(basis.cols());
        Matrix r = qr.matrixR().topLeftCorner(b, b).triangularView<Eigen::Upper>();
        Matrix q_thin = qr.householderQ() * Matrix::Identity(alpha, b);
        Matrix rinv_qt = r.triangularView<Eigen::Upper>().solve(q_thin.transpose());
        out.pinv = qr.colsPermutation() * rinv_qt;
    } else {
        out.pinv = svd_pinv(block);
        out.rank_deficient = true;
    }
    return out;
}

Vector gappy_fit(const Matrix& basis, const SampleWindow& window, const Vector& samples,
                 double anchor, bool* rank_deficient) {
    if (samples.size() != window.memory)
        throw DomainError("gappy_fit: sample count does not match window memory");
    const SampledBasisPinv fit = sampled_basis_pinv(basis, window.start, window.memory);
    if (rank_deficient) *rank_deficient = fit.rank_deficient;
    const Vector centered = samples.array() - anchor;
    return basis * (fit.pinv * centered);
}

double global_forecast(const TimeEvolutionBasis& basis, double y0, const Vector& samples,
                       int i, int k) {
    const int n = basis.rows();
    const int alpha = static_cast<int>(samples.size());
    if (i < 0 || i + alpha > n) throw DomainError("global_forecast: sample window out of range");
    if (k < 0 || k > n) throw DomainError("global_forecast: forecast index out of range");
    if (k == 0) return y0;
    const Vector recon = gappy_fit(basis.matrix, {i, alpha}, samples, y0);
    return y0 + recon(k - 1);
}

LocalBasis local_basis(const TimeEvolutionBasis& basis, int n, double upsilon,
                       const TimeGrid& grid) {
    if (n < 0 || n >= grid.coarse_intervals())
        throw DomainError("local_basis: interval index out of range");
    if (upsilon < 0.0 || upsilon > 1.0)
        throw DomainError("local_basis: energy criterion must lie in [0,1]");
    const int m_bar = grid.fine_per_coarse();
    const int first = grid.fine_index_of_coarse(n);  // entry m_bar*n of the unrolled vector

    // Rows m_bar*n+1 .. m_bar*(n+1), each minus row m_bar*n. For n = 0 the
    // subtracted row would be entry 0, which the unrolled vector does not
    // have; the global unroll already centers at t_0, so it is zero.
    Matrix block = basis.matrix.middleRows(first, m_bar);
    if (n > 0) block.rowwise() -= basis.matrix.row(first - 1);

    LocalBasis out;
    out.interval = n;
    Eigen::JacobiSVD<Matrix> svd(block, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double total = sv.sum();
    if (!(total > 0.0) || sv(0) <= 1e-15) {
        out.zero_block = true;
        out.matrix = Matrix::Zero(m_bar, 0);
        return out;
    }
    int b = static_cast<int>(sv.size());
    double cumulative = 0.0;
    for (int i = 0; i < sv.size(); ++i) {
        cumulative += sv(i);
        if (cumulative / total >= upsilon) {
            b = i + 1;
            break;
        }
    }
    out.matrix = svd.matrixU().leftCols(b);
    return out;
}

double local_forecast(const LocalBasis& basis, double y_at_Tn, const Vector& samples,
                      int k, const TimeGrid& grid) {
    const int m_bar = grid.fine_per_coarse();
    const int alpha = static_cast<int>(samples.size());
    if (alpha > m_bar) throw DomainError("local_forecast: memory exceeds interval length");
    const int first = grid.fine_index_of_coarse(basis.interval);
    if (k < first || k > first + m_bar)
        throw DomainError("local_forecast: forecast index outside interval");
    if (k == first) return y_at_Tn;
    if (basis.dim() == 0) return y_at_Tn;  // zero block forecasts the anchor
    const Vector recon = gappy_fit(basis.matrix, {0, alpha}, samples, y_at_Tn);
    return y_at_Tn + recon(k - first - 1);
}

Vector forecast_weights(const LocalBasis& basis, int alpha, int target_offset) {
    if (basis.dim() == 0) return Vector::Zero(alpha);
    if (target_offset < 0 || target_offset > basis.rows())
        throw DomainError("forecast_weights: target offset out of range");
    return weights_from_pinv(basis.matrix, sampled_basis_pinv(basis.matrix, 0, alpha),
                             target_offset);
}

Vector forecast_weights_global(const TimeEvolutionBasis& basis, int alpha, int target_index) {
    if (target_index < 0 || target_index > basis.rows())
        throw DomainError("forecast_weights_global: target index out of range");
    return weights_from_pinv(basis.matrix, sampled_basis_pinv(basis.matrix, 0, alpha),
                             target_index);
}

}  // namespace dtpar

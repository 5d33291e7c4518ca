#pragma once

#include <utility>

namespace dtpar {

/// Nested uniform fine/coarse time discretizations.
///
/// The coarse step is an integral multiple of the fine step by construction:
/// the grid is parameterized by the number of coarse intervals and the number
/// of fine steps per coarse interval, so the nesting is exact.
class TimeGrid {
public:
    TimeGrid(double t_final, int coarse_intervals, int fine_per_coarse);

    double t_final() const { return t_final_; }
    int n_fine() const { return n_fine_; }
    int coarse_intervals() const { return coarse_intervals_; }
    int fine_per_coarse() const { return fine_per_coarse_; }
    double fine_step() const { return h_; }
    double coarse_step() const { return H_; }

    /// Fine index of coarse instance n (n in 0..M).
    int fine_index_of_coarse(int n) const;

    /// Time of fine instance m (m in 0..n_fine).
    double fine_time(int m) const;

    /// Time of coarse instance n.
    double coarse_time(int n) const { return fine_time(fine_index_of_coarse(n)); }

    /// Inclusive fine-index range [m_bar*n, m_bar*(n+1)] of coarse interval n
    /// (n in 0..M-1).
    std::pair<int, int> interval_fine_range(int n) const;

private:
    double t_final_;
    int coarse_intervals_;
    int fine_per_coarse_;
    int n_fine_;
    double h_;
    double H_;
};

}  // namespace dtpar

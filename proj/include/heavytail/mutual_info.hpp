#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "heavytail/rng.hpp"
#include "heavytail/set_function.hpp"

namespace heavytail {

inline constexpr double kDefaultJitter = 1e-8;

/// n series of T synchronous observations, values(i, j) = series i at step j.
struct TimeSeriesPanel {
  Eigen::MatrixXd values;  // n x T
  std::vector<std::string> names;

  int series_count() const { return static_cast<int>(values.rows()); }
  int length() const { return static_cast<int>(values.cols()); }
};

/// First differences along time; length shrinks by one. Rejects T < 2.
TimeSeriesPanel temporal_diff(const TimeSeriesPanel& panel);

/// Symmetric covariance matrix; construction rejects asymmetry beyond 1e-12.
/// Positive semidefiniteness is enforced where the matrix is factorized.
class CovarianceMatrix {
public:
  explicit CovarianceMatrix(Eigen::MatrixXd m);

  int dimension() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

private:
  Eigen::MatrixXd m_;
};

/// Sample covariance with 1/(T-1) normalization, series mean-centered.
CovarianceMatrix covariance(const TimeSeriesPanel& panel);
CovarianceMatrix covariance_serial(const TimeSeriesPanel& panel);

enum class MIVariant {
  log_form,  // -1/2 sum ln(1 - rho_i^2), the Gaussian mutual information; default
  literal,   // -1/2 sum (1 - rho_i^2), the affine surrogate
};

/// Canonical correlations between the variables indexed by S and the rest,
/// descending in [0,1]; there are min(|S|, n-|S|) of them. `jitter` is added
/// to the diagonal blocks before factorization. Rejects S empty or full;
/// throws if the matrix is not positive semidefinite beyond tolerance.
std::vector<double> canonical_correlations(const CovarianceMatrix& sigma, const BitString& S,
                                           double jitter = kDefaultJitter);

/// Mutual information between the S block and its complement under a joint
/// Gaussian model. Defined as 0 for S empty or full.
double mutual_information(const CovarianceMatrix& sigma, const BitString& S,
                          MIVariant variant = MIVariant::log_form,
                          double jitter = kDefaultJitter);

/// Cardinality-penalized mutual information fitness: MI(S) when |S| <= k,
/// k - |S| otherwise; negative exactly on infeasible sets.
class MIFitness final : public SetFunction {
public:
  MIFitness(CovarianceMatrix sigma, int k, MIVariant variant = MIVariant::log_form,
            double jitter = kDefaultJitter);

  int ground_size() const override { return sigma_.dimension(); }
  double value(const BitString& s) const override;

  const CovarianceMatrix& sigma() const { return sigma_; }
  int cardinality_bound() const { return k_; }
  MIVariant variant() const { return variant_; }

private:
  CovarianceMatrix sigma_;
  int k_;
  MIVariant variant_;
  double jitter_;
};

/// Block of equally correlated series in a synthetic panel.
struct BlockSpec {
  int size;
  double rho;
};

struct SyntheticPanel {
  TimeSeriesPanel panel;
  Eigen::MatrixXd true_covariance;  // the generator's exact covariance
};

/// Gaussian panel with planted correlated blocks. Block sizes must sum to n;
/// |rho| >= 1 is rejected, as is any rho making a block non-PSD.
SyntheticPanel synthetic_panel(int n, int T, const std::vector<BlockSpec>& blocks,
                               SplitMix64& rng);

/// CSV with a header of series names, one row per time step, one column per
/// series. Throws with the offending line number on malformed input.
TimeSeriesPanel read_panel_csv(std::istream& input);
TimeSeriesPanel load_panel_csv(const std::string& path);

}  // namespace heavytail

#include "heavytail/mutual_info.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heavytail {

TimeSeriesPanel temporal_diff(const TimeSeriesPanel& panel) {
  const int T = panel.length();
  if (T < 2) throw std::invalid_argument("temporal_diff: need at least two observations");
  TimeSeriesPanel out;
  out.values = panel.values.rightCols(T - 1) - panel.values.leftCols(T - 1);
  out.names = panel.names;
  return out;
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("CovarianceMatrix: not square");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("CovarianceMatrix: not symmetric");
}

CovarianceMatrix covariance_serial(const TimeSeriesPanel& panel) {
  const int n = panel.series_count();
  const int T = panel.length();
  if (T < 2) throw std::invalid_argument("covariance: need at least two observations");
  Eigen::MatrixXd centered = panel.values;
  for (int i = 0; i < n; ++i) centered.row(i).array() -= centered.row(i).mean();
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int t = 0; t < T; ++t) acc += centered(i, t) * centered(j, t);
      cov(i, j) = cov(j, i) = acc / (T - 1);
    }
  }
  return CovarianceMatrix(std::move(cov));
}

CovarianceMatrix covariance(const TimeSeriesPanel& panel) {
  const int n = panel.series_count();
  const int T = panel.length();
  if (T < 2) throw std::invalid_argument("covariance: need at least two observations");
  Eigen::MatrixXd centered = panel.values;
  for (int i = 0; i < n; ++i) centered.row(i).array() -= centered.row(i).mean();
  Eigen::MatrixXd cov(n, n);
  // Each (i, j) entry is accumulated by exactly one thread, so the result is
  // identical to the serial kernel.
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int t = 0; t < T; ++t) acc += centered(i, t) * centered(j, t);
      cov(i, j) = cov(j, i) = acc / (T - 1);
    }
  }
  return CovarianceMatrix(std::move(cov));
}

namespace {

Eigen::LLT<Eigen::MatrixXd> factorize_block(const Eigen::MatrixXd& block, double jitter,
                                            const char* what) {
  const auto n = block.rows();
  Eigen::MatrixXd jittered = block + jitter * Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(jittered);
  if (llt.info() == Eigen::Success) return llt;
  // One escalation for matrices that are semidefinite up to roundoff; beyond
  // that the input is genuinely indefinite and must be reported.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
  if (min_eig < -1e-9 * scale)
    throw std::domain_error(std::string(what) + ": covariance block not positive semidefinite");
  jittered = block + (std::abs(min_eig) + 100.0 * jitter) * Eigen::MatrixXd::Identity(n, n);
  llt.compute(jittered);
  if (llt.info() != Eigen::Success)
    throw std::domain_error(std::string(what) + ": Cholesky factorization failed");
  return llt;
}

}  // namespace

std::vector<double> canonical_correlations(const CovarianceMatrix& sigma, const BitString& S,
                                           double jitter) {
  const int n = sigma.dimension();
  if (S.size() != n) throw std::invalid_argument("canonical_correlations: size mismatch");
  const int a = S.popcount();
  if (a == 0 || a == n)
    throw std::invalid_argument("canonical_correlations: S must be a proper nonempty subset");

  std::vector<int> in, out;
  in.reserve(static_cast<size_t>(a));
  out.reserve(static_cast<size_t>(n - a));
  for (int v = 0; v < n; ++v) (S.test(v) ? in : out).push_back(v);

  const auto& full = sigma.matrix();
  Eigen::MatrixXd saa(a, a), sbb(n - a, n - a), sab(a, n - a);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) saa(i, j) = full(in[static_cast<size_t>(i)], in[static_cast<size_t>(j)]);
  for (int i = 0; i < n - a; ++i)
    for (int j = 0; j < n - a; ++j)
      sbb(i, j) = full(out[static_cast<size_t>(i)], out[static_cast<size_t>(j)]);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < n - a; ++j)
      sab(i, j) = full(in[static_cast<size_t>(i)], out[static_cast<size_t>(j)]);

  const auto llt_a = factorize_block(saa, jitter, "canonical_correlations");
  const auto llt_b = factorize_block(sbb, jitter, "canonical_correlations");

  // K = La^-1 Sab Lb^-T; the eigenvalues of K K^T are the squared canonical
  // correlations.
  Eigen::MatrixXd u = llt_a.matrixL().solve(sab);
  Eigen::MatrixXd k = llt_b.matrixL().solve(u.transpose()).transpose();
  Eigen::MatrixXd m = k * k.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::domain_error("canonical_correlations: eigensolver failed");

  const int count = std::min(a, n - a);
  std::vector<double> rho;
  rho.reserve(static_cast<size_t>(count));
  const auto& eig = es.eigenvalues();  // ascending
  // Squared correlations above 1 beyond roundoff mean the full matrix is
  // indefinite even though its diagonal blocks factorized.
  if (eig(a - 1) > 1.0 + 1e-6)
    throw std::domain_error("canonical_correlations: covariance not positive semidefinite");
  for (int i = 0; i < count; ++i) {
    const double lambda = std::clamp(eig(a - 1 - i), 0.0, 1.0);
    rho.push_back(std::sqrt(lambda));
  }
  return rho;
}

double mutual_information(const CovarianceMatrix& sigma, const BitString& S, MIVariant variant,
                          double jitter) {
  const int pop = S.popcount();
  if (pop == 0 || pop == S.size()) return 0.0;
  const auto rho = canonical_correlations(sigma, S, jitter);
  double acc = 0.0;
  for (double r : rho) {
    const double one_minus = 1.0 - r * r;
    if (variant == MIVariant::literal) {
      acc += one_minus;
    } else {
      // The argument is clamped to <= 1 so the jitter guard against rho = 1
      // cannot push the sum negative at rho = 0.
      acc += std::log(std::min(1.0, one_minus + jitter));
    }
  }
  return -0.5 * acc;
}

MIFitness::MIFitness(CovarianceMatrix sigma, int k, MIVariant variant, double jitter)
    : sigma_(std::move(sigma)), k_(k), variant_(variant), jitter_(jitter) {
  if (k < 1) throw std::invalid_argument("MIFitness: k must be >= 1");
}

double MIFitness::value(const BitString& s) const {
  const int pop = s.popcount();
  if (pop > k_) return static_cast<double>(k_ - pop);
  return mutual_information(sigma_, s, variant_, jitter_);
}

SyntheticPanel synthetic_panel(int n, int T, const std::vector<BlockSpec>& blocks,
                               SplitMix64& rng) {
  if (n < 2) throw std::invalid_argument("synthetic_panel: n must be >= 2");
  if (T < n + 2) throw std::invalid_argument("synthetic_panel: need T >= n + 2");
  int total = 0;
  for (const auto& b : blocks) {
    if (b.size < 1) throw std::invalid_argument("synthetic_panel: empty block");
    if (!(std::abs(b.rho) < 1.0)) throw std::invalid_argument("synthetic_panel: |rho| must be < 1");
    total += b.size;
  }
  if (total != n) throw std::invalid_argument("synthetic_panel: block sizes must sum to n");

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  int offset = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.size; ++i)
      for (int j = 0; j < b.size; ++j) cov(offset + i, offset + j) = i == j ? 1.0 : b.rho;
    offset += b.size;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("synthetic_panel: block correlation is not positive definite");

  Eigen::MatrixXd noise(n, T);
  for (int j = 0; j < T; ++j)
    for (int i = 0; i < n; ++i) noise(i, j) = rng.normal();

  SyntheticPanel out;
  out.panel.values = llt.matrixL() * noise;
  out.panel.names.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.panel.names.push_back("s" + std::to_string(i));
  out.true_covariance = std::move(cov);
  return out;
}

TimeSeriesPanel read_panel_csv(std::istream& input) {
  std::string line;
  int64_t line_no = 0;
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("panel csv line " + std::to_string(line_no) + ": " + why);
  };

  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (names.empty()) {
      if (cells.empty()) fail("empty header");
      names = cells;
      continue;
    }
    if (cells.size() != names.size()) fail("expected " + std::to_string(names.size()) + " columns");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument("");
      } catch (...) {
        fail("malformed number '" + c + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (names.empty()) throw std::invalid_argument("panel csv: missing header");
  if (rows.size() < 2) throw std::invalid_argument("panel csv: need at least two observation rows");

  TimeSeriesPanel panel;
  panel.names = std::move(names);
  panel.values.resize(static_cast<int>(panel.names.size()), static_cast<int>(rows.size()));
  for (size_t t = 0; t < rows.size(); ++t)
    for (size_t i = 0; i < rows[t].size(); ++i)
      panel.values(static_cast<int>(i), static_cast<int>(t)) = rows[t][i];
  return panel;
}

TimeSeriesPanel load_panel_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open panel csv '" + path + "'");
  return read_panel_csv(in);
}

}  // namespace heavytail

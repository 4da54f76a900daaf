#include "szoht/problems.hpp"

#include <Eigen/Eigenvalues>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string_view>

#include "szoht/thresholding.hpp"

namespace szoht {

Problem<double> sparse_quadric(Index dimension, Index sparsity, Index target_sparsity,
                               Index zero_band) {
  if (target_sparsity < 1 || sparsity < target_sparsity) {
    throw std::invalid_argument("sparse_quadric: need 1 <= k* <= k");
  }
  if (zero_band < 0 || dimension < zero_band) {
    throw std::invalid_argument("sparse_quadric: need 0 <= zero_band <= d");
  }
  const Index s = 2 * sparsity + target_sparsity;
  if (s > dimension) throw std::invalid_argument("sparse_quadric: need s = 2k + k* <= d");

  const Index d = dimension;
  VectorXd a = VectorXd::Zero(d);
  a.tail(s).setOnes();
  VectorXd b = VectorXd::Zero(d);
  for (Index i = 0; i < d - zero_band; ++i) {
    b[i] = static_cast<double>(i) / (100.0 * static_cast<double>(d));
  }

  Problem<double> p;
  p.name = "sparse_quadric";
  p.dimension = d;
  // Only the active band contributes, so evaluation is O(s).
  p.value = [b, s](const VectorXd& x, Noise) {
    return 0.5 * (x.tail(s) - b.tail(s)).squaredNorm();
  };
  p.gradient = [a, b](const VectorXd& x) -> VectorXd { return a.cwiseProduct(x - b); };

  const VectorXd ab = a.cwiseProduct(b);
  VectorXd optimum = hard_threshold(ab, target_sparsity).vector;
  const double sigma = a.cwiseProduct(optimum - b).cwiseAbs().maxCoeff();
  p.optimum = optimum;
  p.constants = ProblemConstants{1.0, 1.0, sigma, l0_norm(optimum)};
  p.suggested_start = VectorXd::Zero(d);
  return p;
}

Problem<double> sparse_recovery(Index dimension, Index target_sparsity) {
  if (target_sparsity < 1 || dimension <= target_sparsity) {
    throw std::invalid_argument("sparse_recovery: need d > k* >= 1");
  }
  const Index d = dimension;
  const Index ks = target_sparsity;
  VectorXd y = VectorXd::Zero(d);
  for (Index j = 1; j <= ks; ++j) {
    y[d - ks + j - 1] = static_cast<double>(j) / static_cast<double>(ks);
  }

  Problem<double> p;
  p.name = "sparse_recovery";
  p.dimension = d;
  p.value = [y](const VectorXd& x, Noise) { return 0.5 * (x - y).squaredNorm(); };
  p.gradient = [y](const VectorXd& x) -> VectorXd { return x - y; };
  p.optimum = y;
  p.constants = ProblemConstants{1.0, 1.0, 0.0, ks};
  VectorXd start = VectorXd::Zero(d);
  start.head(d - ks).setConstant(1.0 / static_cast<double>(d));
  p.suggested_start = std::move(start);
  return p;
}

void PortfolioData::validate() const {
  const Index d = dimension();
  if (d < 1) throw std::invalid_argument("PortfolioData: need at least one asset");
  if (covariance.rows() != d || covariance.cols() != d) {
    throw std::invalid_argument("PortfolioData: covariance must be d x d");
  }
  if (!mean_return.allFinite() || !covariance.allFinite() || !std::isfinite(min_return) ||
      !std::isfinite(penalty)) {
    throw std::invalid_argument("PortfolioData: non-finite entry");
  }
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("PortfolioData: covariance is not symmetric");
  }
  if (d <= 1000) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(covariance, Eigen::EigenvaluesOnly);
    const double smallest = eig.eigenvalues().minCoeff();
    if (smallest < -1e-8) {
      throw std::invalid_argument("PortfolioData: covariance is not PSD (smallest eigenvalue " +
                                  std::to_string(smallest) + ")");
    }
  }
}

Problem<double> portfolio_objective(PortfolioData data) {
  data.validate();
  const Index d = data.dimension();
  const VectorXd m = data.mean_return;
  const MatrixXd C = data.covariance;
  const double r = data.min_return;
  const double lambda = data.penalty;

  Problem<double> p;
  p.name = "portfolio";
  p.dimension = d;
  p.value = [m, C, r, lambda](const VectorXd& x, Noise) {
    const double total = x.sum();
    if (total == 0.0) return kPortfolioFallback;
    const double risk = x.dot(C * x) / (2.0 * total * total);
    const double shortfall = std::min(m.dot(x) / total - r, 0.0);
    const double f = risk + lambda * shortfall * shortfall;
    return std::isfinite(f) ? f : kPortfolioFallback;
  };
  p.gradient = [m, C, r, lambda](const VectorXd& x) -> VectorXd {
    const Index n = x.size();
    const double total = x.sum();
    if (total == 0.0) return VectorXd::Zero(n);
    const VectorXd cx = C * x;
    const double quad = x.dot(cx);
    VectorXd g = cx / (total * total) - VectorXd::Constant(n, quad / (total * total * total));
    const double ret = m.dot(x) / total;
    const double shortfall = std::min(ret - r, 0.0);
    if (shortfall < 0.0) {
      g += (2.0 * lambda * shortfall / total) * (m - VectorXd::Constant(n, ret));
    }
    return g;
  };
  return p;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": cannot parse " + what + " from '" +
                         std::string(token) + "'",
                     line);
  }
  return value;
}

}  // namespace

PortfolioData load_port_file(const std::filesystem::path& path, double min_return,
                             double penalty, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open port file '" + path.string() + "'");

  std::string raw;
  std::size_t line_no = 0;
  auto next_tokens = [&](std::vector<std::string_view>& tokens) {
    while (std::getline(in, raw)) {
      ++line_no;
      tokens = tokenize(raw);
      if (!tokens.empty()) return true;
    }
    return false;
  };

  std::vector<std::string_view> tokens;
  if (!next_tokens(tokens)) throw ParseError("empty port file", line_no);
  if (tokens.size() != 1) {
    throw ParseError("line " + std::to_string(line_no) + ": expected the asset count alone",
                     line_no);
  }
  const long long count = parse_number<long long>(tokens[0], line_no, "asset count");
  if (count < 1) {
    throw ParseError("line " + std::to_string(line_no) + ": asset count must be >= 1", line_no);
  }
  const Index d = static_cast<Index>(count);

  VectorXd mean(d), sd(d);
  for (Index i = 0; i < d; ++i) {
    if (!next_tokens(tokens)) {
      throw ParseError("unexpected end of file: read " + std::to_string(i) + " of " +
                           std::to_string(d) + " asset lines",
                       line_no);
    }
    if (tokens.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'mean stddev'", line_no);
    }
    mean[i] = parse_number<double>(tokens[0], line_no, "mean return");
    sd[i] = parse_number<double>(tokens[1], line_no, "standard deviation");
    if (!(sd[i] >= 0.0)) {
      throw ParseError("line " + std::to_string(line_no) + ": negative standard deviation",
                       line_no);
    }
  }

  const double unset = std::numeric_limits<double>::quiet_NaN();
  MatrixXd corr = MatrixXd::Constant(d, d, unset);
  while (next_tokens(tokens)) {
    if (tokens.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'i j correlation'",
                       line_no);
    }
    const long long i = parse_number<long long>(tokens[0], line_no, "asset index");
    const long long j = parse_number<long long>(tokens[1], line_no, "asset index");
    if (i < 1 || i > count || j < 1 || j > count) {
      throw ParseError("line " + std::to_string(line_no) + ": asset index out of range [1, " +
                           std::to_string(count) + "]",
                       line_no);
    }
    const double c = parse_number<double>(tokens[2], line_no, "correlation");
    corr(i - 1, j - 1) = c;
    corr(j - 1, i - 1) = c;
  }

  Index missing = 0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      if (std::isnan(corr(i, j))) {
        ++missing;
        corr(i, j) = corr(j, i) = (i == j) ? 1.0 : 0.0;
      }
    }
  }
  if (missing > 0) {
    std::string msg = path.string() + ": " + std::to_string(missing) +
                      " correlation pair(s) missing; filled with 0 off the diagonal, 1 on it";
    if (warnings) {
      warnings->push_back(std::move(msg));
    } else {
      std::cerr << "warning: " << msg << '\n';
    }
  }

  PortfolioData data;
  data.mean_return = std::move(mean);
  data.covariance = sd.asDiagonal() * corr * sd.asDiagonal();
  data.covariance = 0.5 * (data.covariance + data.covariance.transpose()).eval();
  data.min_return = min_return;
  data.penalty = penalty;
  return data;
}

}  // namespace szoht

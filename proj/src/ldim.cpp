#include "gemd/ldim.hpp"

#include <cmath>
#include <sstream>

#include "gemd/rng.hpp"

namespace gemd {

LdimModel::LdimModel(int processes) : n(processes) {
  if (processes < 1) throw structure_error("LdimModel: process count must be positive");
  noise_shaping.assign(static_cast<std::size_t>(processes), TransferFunctionD::gain(1.0));
  noise_variances = Eigen::VectorXd::Ones(processes);
}

void LdimModel::set_dynamics(int from, int to, TransferFunctionD tf) {
  if (from < 1 || from > n || to < 1 || to > n)
    throw structure_error("LdimModel: dynamics index out of range");
  if (tf.is_zero())
    dynamics.erase({from, to});
  else
    dynamics[{from, to}] = std::move(tf);
}

const TransferFunctionD* LdimModel::entry(int from, int to) const {
  const auto it = dynamics.find({from, to});
  if (it == dynamics.end() || it->second.is_zero()) return nullptr;
  return &it->second;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& f : failures) os << f.check << ": " << f.detail << "\n";
  return os.str();
}

ValidationReport validate(const LdimModel& m) {
  ValidationReport report;
  auto fail = [&](std::string check, std::string detail) {
    report.failures.push_back({std::move(check), std::move(detail)});
  };

  if (m.n < 1) {
    fail("structure", "process count must be positive");
    return report;
  }
  if (static_cast<int>(m.noise_shaping.size()) != m.n)
    fail("structure", "noise_shaping must have one entry per process");
  if (m.noise_variances.size() != m.n)
    fail("structure", "noise_variances must have one entry per process");

  for (const auto& [key, tf] : m.dynamics) {
    const auto [from, to] = key;
    if (from < 1 || from > m.n || to < 1 || to > m.n) {
      fail("structure", "dynamics index out of range");
      continue;
    }
    if (from == to && feedthrough_gain(tf) != 0.0)
      fail("self_loop", "H_" + std::to_string(to) + std::to_string(from) +
                            " has a direct feedthrough (algebraic self-loop)");
  }

  // Feedthrough gains must form an acyclic pattern; this is what makes the
  // closed loop (I - D_H) invertible.
  {
    std::set<std::pair<int, int>> gain_edges;
    for (const auto& [key, tf] : m.dynamics)
      if (key.first != key.second && feedthrough_gain(tf) != 0.0) gain_edges.insert(key);
    MultiArrowGraph gains(m.n);
    gains.single_headed = gain_edges;
    if (!check_recursive(gains)) fail("algebraic_loop", "feedthrough gains contain a cycle");
  }

  for (int j = 1; j <= m.n && j <= static_cast<int>(m.noise_shaping.size()); ++j) {
    const auto& f = m.noise_shaping[static_cast<std::size_t>(j - 1)];
    if (f.is_zero()) {
      fail("noise_shaping", "F_" + std::to_string(j) + " is zero");
      continue;
    }
    if (f.num.coeff(0) == 0.0)
      fail("noise_shaping", "F_" + std::to_string(j) + " is not biproper");
    for (const auto& z : zeros(f))
      if (std::abs(z) >= 1.0 - 1e-9) {
        fail("noise_shaping", "F_" + std::to_string(j) + " is not minimum phase");
        break;
      }
    if (!is_stable(f)) fail("noise_shaping", "F_" + std::to_string(j) + " is unstable");
  }
  for (int j = 1; j <= m.n && j <= static_cast<int>(m.noise_variances.size()); ++j)
    if (m.noise_variances(j - 1) <= 0.0)
      fail("noise_psd", "variance of u_" + std::to_string(j) + " must be positive");

  return report;
}

MultiArrowGraph perfect_representation(const LdimModel& m) {
  MultiArrowGraph g(m.n);
  for (const auto& [key, tf] : m.dynamics) {
    const auto [from, to] = key;
    if (from == to || tf.is_zero()) continue;
    if (feedthrough_gain(tf) != 0.0)
      g.add_single(from, to);
    else
      g.add_double(from, to);
  }
  g.validate();
  return g;
}

namespace {

struct EntryRealization {
  Eigen::MatrixXd A;     // r x r
  Eigen::VectorXd B;     // r
  Eigen::RowVectorXd C;  // r
  double d = 0.0;
  int order = 0;
};

// Controllable canonical form of the strictly proper part; d carries the
// feedthrough term.
EntryRealization realize(const TransferFunctionD& tf) {
  EntryRealization e;
  const int r = std::max(tf.num.degree(), tf.den.degree());
  e.order = r;
  e.d = tf.num.coeff(0);
  e.A = Eigen::MatrixXd::Zero(r, r);
  e.B = Eigen::VectorXd::Zero(r);
  e.C = Eigen::RowVectorXd::Zero(r);
  if (r == 0) return e;
  for (int k = 1; k <= r; ++k) {
    e.A(0, k - 1) = -tf.den.coeff(k);
    e.C(k - 1) = tf.num.coeff(k) - e.d * tf.den.coeff(k);
  }
  for (int k = 1; k < r; ++k) e.A(k, k - 1) = 1.0;
  e.B(0) = 1.0;
  return e;
}

double spectral_radius_of(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

StateSpaceRealization to_state_space(const LdimModel& m) {
  const ValidationReport report = validate(m);
  if (!report.ok()) throw structure_error("to_state_space: invalid model\n" + report.to_string());

  const int n = m.n;
  struct Piece {
    EntryRealization real;
    int input;    // process index driving the entry, 1-based
    int output;   // process receiving the contribution
    bool from_u;  // input is a noise channel rather than an output process
    int offset = 0;
  };
  std::vector<Piece> pieces;
  for (const auto& [key, tf] : m.dynamics) {
    if (tf.is_zero()) continue;
    pieces.push_back({realize(tf), key.first, key.second, false});
  }
  for (int j = 1; j <= n; ++j)
    pieces.push_back({realize(m.noise_shaping[static_cast<std::size_t>(j - 1)]), j, j, true});

  int nx = 0;
  for (auto& p : pieces) {
    p.offset = nx;
    nx += p.real.order;
  }

  Eigen::MatrixXd a_blk = Eigen::MatrixXd::Zero(nx, nx);
  Eigen::MatrixXd b_y = Eigen::MatrixXd::Zero(nx, n);  // state input from outputs y
  Eigen::MatrixXd b_u = Eigen::MatrixXd::Zero(nx, n);  // state input from sources u
  Eigen::MatrixXd c_x = Eigen::MatrixXd::Zero(n, nx);
  Eigen::MatrixXd d_h = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd d_f = Eigen::MatrixXd::Zero(n, n);

  for (const auto& p : pieces) {
    const int r = p.real.order;
    if (r > 0) {
      a_blk.block(p.offset, p.offset, r, r) = p.real.A;
      c_x.block(p.output - 1, p.offset, 1, r) = p.real.C;
      (p.from_u ? b_u : b_y).block(p.offset, p.input - 1, r, 1) = p.real.B;
    }
    if (p.from_u)
      d_f(p.output - 1, p.input - 1) += p.real.d;
    else
      d_h(p.output - 1, p.input - 1) += p.real.d;
  }

  // Close the loop through the feedthrough gains: y = M^{-1}(C_x x + D_F u).
  const Eigen::MatrixXd m_loop = Eigen::MatrixXd::Identity(n, n) - d_h;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m_loop);
  const Eigen::MatrixXd c_cl = lu.solve(c_x);
  const Eigen::MatrixXd d_cl = lu.solve(d_f);

  StateSpaceRealization ss;
  ss.A = a_blk + b_y * c_cl;
  ss.B = b_y * d_cl + b_u;
  ss.C = c_cl;
  ss.D = d_cl;
  ss.Q = m.noise_variances.asDiagonal();
  ss.spectral_radius = spectral_radius_of(ss.A);
  if (ss.spectral_radius >= 1.0 - 1e-9) {
    std::ostringstream os;
    os << "to_state_space: closed loop is not stable (spectral radius " << ss.spectral_radius << ")";
    throw stability_error(os.str());
  }
  return ss;
}

namespace {

// P = A P A^T + B Q B^T by doubling; quadratic convergence for rho(A) < 1.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& rhs) {
  Eigen::MatrixXd p = rhs;
  Eigen::MatrixXd ak = a;
  for (int iter = 0; iter < 128; ++iter) {
    if (ak.cwiseAbs().maxCoeff() < 1e-160) break;
    p = p + ak * p * ak.transpose();
    ak = ak * ak;
  }
  return 0.5 * (p + p.transpose());
}

}  // namespace

CovarianceSequence population_autocovariance(const LdimModel& m, int max_lag) {
  if (max_lag < 0) throw data_error("population_autocovariance: negative max_lag");
  const StateSpaceRealization ss = to_state_space(m);
  const int nx = ss.state_dim();

  Eigen::MatrixXd p(nx, nx);
  if (nx > 0) p = solve_lyapunov(ss.A, ss.B * ss.Q * ss.B.transpose());

  std::vector<Eigen::MatrixXd> lags;
  lags.reserve(static_cast<std::size_t>(max_lag) + 1);
  Eigen::MatrixXd r0 = ss.D * ss.Q * ss.D.transpose();
  if (nx > 0) r0 += ss.C * p * ss.C.transpose();
  lags.push_back(0.5 * (r0 + r0.transpose()));

  if (max_lag >= 1) {
    if (nx == 0) {
      for (int k = 1; k <= max_lag; ++k) lags.push_back(Eigen::MatrixXd::Zero(m.n, m.n));
    } else {
      // R(k) = C A^{k-1} (A P C^T + B Q D^T)
      Eigen::MatrixXd cur = ss.A * p * ss.C.transpose() + ss.B * ss.Q * ss.D.transpose();
      for (int k = 1; k <= max_lag; ++k) {
        lags.push_back(ss.C * cur);
        cur = ss.A * cur;
      }
    }
  }
  return CovarianceSequence(std::move(lags));
}

Eigen::MatrixXcd psd(const LdimModel& m, double omega) {
  const int n = m.n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [key, tf] : m.dynamics)
    h(key.second - 1, key.first - 1) = evaluate(tf, omega);
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    f(j, j) = evaluate(m.noise_shaping[static_cast<std::size_t>(j)], omega);

  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n) - h;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.isInvertible()) throw singularity_error("psd: I - H(e^{i omega}) is singular");
  const Eigen::MatrixXcd g = lu.solve(f);
  return g * m.noise_variances.asDiagonal() * g.adjoint();
}

Eigen::MatrixXd simulate(const LdimModel& m, int horizon, std::uint64_t seed) {
  if (horizon < 1) throw data_error("simulate: horizon must be positive");
  const StateSpaceRealization ss = to_state_space(m);
  const int n = m.n;
  const int nx = ss.state_dim();

  int burn = 500;
  if (ss.spectral_radius > 1e-8) {
    const double tau = -1.0 / std::log(ss.spectral_radius);
    burn = std::max(burn, static_cast<int>(std::ceil(20.0 * tau)));
  }

  GaussianRng rng(seed);
  const Eigen::VectorXd sigma = m.noise_variances.cwiseSqrt();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nx);
  Eigen::VectorXd u(n);
  Eigen::MatrixXd out(n, horizon);
  for (int t = -burn; t < horizon; ++t) {
    for (int j = 0; j < n; ++j) u(j) = sigma(j) * rng.gaussian();
    if (t >= 0) out.col(t) = (nx > 0 ? Eigen::VectorXd(ss.C * x + ss.D * u) : Eigen::VectorXd(ss.D * u));
    if (nx > 0) x = ss.A * x + ss.B * u;
  }
  return out;
}

}  // namespace gemd

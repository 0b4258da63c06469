// spin_boson.cpp - doubled-operator reports and the permutation identity
#include "fockspec/spin_boson.hpp"

#include <algorithm>
#include <cmath>

#include "fockspec/birman_schwinger.hpp"
#include "fockspec/direct_oracle.hpp"
#include "fockspec/eig.hpp"
#include "fockspec/errors.hpp"
#include "fockspec/grid.hpp"

namespace fockspec {

namespace {

void validate(const SpinBosonParams& p) {
  if (!(p.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(p.alpha > 0.0)) throw DomainError("alpha must be positive");
  Fn1 w = named_fn(p.w_name);
  if (std::abs(w(0.0)) > 1e-12) throw DomainError("dispersion must vanish at 0");
  TorusGrid g = make_grid(512);
  for (double t : g.nodes)
    if (w(t) <= 0.0) throw DomainError("dispersion must be positive away from 0");
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// doubled matrix with the two-level index explicit: component diagonals keep
// their own sign index while both couplings cross to the opposite one
Eigen::MatrixXd assemble_doubled(const ModelSpec& mp, const ModelSpec& mm,
                                 const TorusGrid& g) {
  const FockGridBasis b(g.n);
  const int n = g.n;
  const double sh = std::sqrt(g.h);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const ModelSpec* blocks[2] = {&mp, &mm};  // index 0: sigma = +, 1: sigma = -

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * b.dim, 2 * b.dim);
  auto at = [&](int s, int idx) { return s * b.dim + idx; };
  for (int s = 0; s < 2; ++s) {
    int o = 1 - s;
    D(at(s, b.vac()), at(s, b.vac())) = blocks[s]->w0;
    for (int j = 0; j < n; ++j) {
      // the one-particle diagonal carries +sigma eps + w, which is the w1 of
      // the opposite block; the permuted block structure undoes the swap
      D(at(s, b.one(j)), at(s, b.one(j))) = blocks[o]->w1(g.nodes[j]);
      const double c = sh * blocks[0]->v0(g.nodes[j]);
      D(at(s, b.vac()), at(o, b.one(j))) = c;
      D(at(o, b.one(j)), at(s, b.vac())) = c;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const int pidx = b.pair(i, j);
        D(at(s, pidx), at(s, pidx)) = blocks[s]->w2(g.nodes[i], g.nodes[j]);
        if (i == j) {
          const double c = sh * blocks[0]->v1(g.nodes[i]);
          D(at(o, b.one(i)), at(s, pidx)) = c;
          D(at(s, pidx), at(o, b.one(i))) = c;
        } else {
          const double ci = sh * blocks[0]->v1(g.nodes[j]) * inv_sqrt2;
          D(at(o, b.one(i)), at(s, pidx)) = ci;
          D(at(s, pidx), at(o, b.one(i))) = ci;
          const double cj = sh * blocks[0]->v1(g.nodes[i]) * inv_sqrt2;
          D(at(o, b.one(j)), at(s, pidx)) = cj;
          D(at(s, pidx), at(o, b.one(j))) = cj;
        }
      }
    }
  }
  return D;
}

// permutation sending the doubled index set to (block +, block -) order,
// where block sigma owns (vac^sigma, one^{-sigma}, pair^sigma)
std::vector<int> phi_permutation(const FockGridBasis& b) {
  std::vector<int> perm;
  perm.reserve(2 * b.dim);
  for (int s = 0; s < 2; ++s) {
    int o = 1 - s;
    perm.push_back(s * b.dim + b.vac());
    for (int j = 0; j < b.n; ++j) perm.push_back(o * b.dim + b.one(j));
    for (int i = 0; i < b.n; ++i)
      for (int j = i; j < b.n; ++j) perm.push_back(s * b.dim + b.pair(i, j));
  }
  return perm;
}

std::vector<std::array<double, 2>> merge_intervals(
    std::vector<std::array<double, 2>> iv, double slack) {
  std::sort(iv.begin(), iv.end());
  std::vector<std::array<double, 2>> out;
  for (const auto& ab : iv) {
    if (!out.empty() && ab[0] <= out.back()[1] + slack)
      out.back()[1] = std::max(out.back()[1], ab[1]);
    else
      out.push_back(ab);
  }
  return out;
}

bool inside_any(const std::vector<std::array<double, 2>>& iv, double v, double tol) {
  for (const auto& ab : iv)
    if (v >= ab[0] - tol && v <= ab[1] + tol) return true;
  return false;
}

}  // namespace

ModelSpec to_model(const SpinBosonParams& p, int sigma) {
  validate(p);
  return model_spinboson(sigma, p.epsilon, p.alpha, p.w_name, p.v_name);
}

std::optional<double> alpha0(const SpinBosonParams& p) {
  validate(p);
  Fn1 w = named_fn(p.w_name), v = named_fn(p.v_name);
  int pv = vanishing_order(v), qw = vanishing_order(w);
  if (2 * pv < qw) return std::nullopt;  // v^2 / w behaves like t^{2p-q}, nonintegrable
  TorusGrid g = make_grid(512);
  double I = quad_refined(g, [&](double t) { return v(t) * v(t) / w(t); });
  if (!(I > 0.0)) throw NumericError("coupling integral must be positive");
  return 2.0 * std::sqrt(p.epsilon) / std::sqrt(I);
}

A2Report a2_spectrum_report(const SpinBosonParams& p, const TorusGrid& g) {
  ModelSpec mp = to_model(p, +1), mm = to_model(p, -1);
  DeltaEvaluator evp(mp, g), evm(mm, g);
  EssentialSpectrumReport rp = essential_spectrum(evp);
  EssentialSpectrumReport rm = essential_spectrum(evm);

  A2Report rep;
  rep.alpha = p.alpha;
  rep.alpha0_value = alpha0(p);
  rep.e_min_plus = rp.e_min;
  rep.e_min_minus = rm.e_min;
  rep.e_min = std::min(rp.e_min, rm.e_min);
  rep.class_plus = rp.classification;
  rep.class_minus = rm.classification;
  rep.grid_n = g.n;

  std::vector<std::array<double, 2>> iv = rp.sigma_intervals;
  iv.push_back({rp.m, rp.M});
  iv.insert(iv.end(), rm.sigma_intervals.begin(), rm.sigma_intervals.end());
  iv.push_back({rm.m, rm.M});
  double scale = 1.0 + std::abs(rep.e_min) + std::abs(rp.M) + std::abs(rm.M);
  rep.ess_intervals = merge_intervals(std::move(iv), 1e-12 * scale);

  for (double d : {0.05, 0.1, 0.2}) {
    double z = rep.e_min - d;
    rep.counts_plus.emplace_back(z, bs_count(mp, g, z).count);
    rep.counts_minus.emplace_back(z, bs_count(mm, g, z).count);
  }

  rep.flags.push_back(std::string("classification_plus=") + to_string(rep.class_plus));
  rep.flags.push_back(std::string("classification_minus=") + to_string(rep.class_minus));
  if (!rep.alpha0_value) rep.flags.push_back("alpha0_divergent");

  if (g.n <= 48) {
    Eigen::MatrixXd Hp = assemble_H(mp, g), Hm = assemble_H(mm, g);
    Eigen::MatrixXd D = assemble_doubled(mp, mm, g);
    Eigen::VectorXd ed = symmetric_eigenvalues(D);
    Eigen::VectorXd ep = symmetric_eigenvalues(Hp), em = symmetric_eigenvalues(Hm);
    std::vector<double> un(ep.data(), ep.data() + ep.size());
    un.insert(un.end(), em.data(), em.data() + em.size());
    std::sort(un.begin(), un.end());
    double dev = 0.0;
    for (int i = 0; i < ed.size(); ++i) dev = std::max(dev, std::abs(ed[i] - un[i]));
    rep.flags.push_back(dev <= 1e-10 * scale
                            ? std::string("doubled_oracle_match")
                            : std::string("doubled_oracle_mismatch=") + fmt_short(dev));

    // discrete eigenvalues of one block can sit inside the other block's
    // essential spectrum; attribute without filtering, but flag them
    for (int s = 0; s < 2; ++s) {
      const Eigen::MatrixXd& H = s == 0 ? Hp : Hm;
      double own = s == 0 ? rp.e_min : rm.e_min;
      for (double val : eigs_below(H, own - 1e-6)) {
        if (inside_any(rep.ess_intervals, val, 1e-9 * scale))
          rep.flags.push_back(std::string("sigma=") + (s == 0 ? "+" : "-") +
                              " eigenvalue " + fmt_short(val) +
                              " inside essential spectrum union");
      }
    }
  } else {
    rep.flags.push_back("doubled_oracle_skipped");
  }
  return rep;
}

double phi_decomposition_check(const SpinBosonParams& p, const TorusGrid& small_grid) {
  if (small_grid.n > 32)
    throw ResourceError("phi_decomposition_check: grid capped at n = 32");
  ModelSpec mp = to_model(p, +1), mm = to_model(p, -1);
  const FockGridBasis b(small_grid.n);
  Eigen::MatrixXd D = assemble_doubled(mp, mm, small_grid);
  std::vector<int> perm = phi_permutation(b);

  const int d = b.dim;
  Eigen::MatrixXd P(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i)
    for (int j = 0; j < 2 * d; ++j) P(i, j) = D(perm[i], perm[j]);

  double dev = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      dev = std::max(dev, std::abs(P(i, d + j)));
      dev = std::max(dev, std::abs(P(d + i, j)));
    }
  Eigen::MatrixXd Hp = assemble_H(mp, small_grid), Hm = assemble_H(mm, small_grid);
  dev = std::max(dev, (P.topLeftCorner(d, d) - Hp).cwiseAbs().maxCoeff());
  dev = std::max(dev, (P.bottomRightCorner(d, d) - Hm).cwiseAbs().maxCoeff());
  return dev;
}

}  // namespace fockspec

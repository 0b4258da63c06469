// spin_boson.hpp - two-level atom coupled to at most two lattice bosons
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fockspec/friedrichs.hpp"
#include "fockspec/model.hpp"

namespace fockspec {

struct SpinBosonParams {
  double epsilon = 1.0;   // atom levels at +-epsilon
  double alpha = 1.0;     // coupling strength
  std::string w_name = "one_minus_cos";  // dispersion, unique zero minimum at 0
  std::string v_name = "sin";            // coupling function
};

// sigma block of the doubled operator as a plain model:
// w0 = sigma eps, w1 = -sigma eps + w, v0 = v1 = alpha v, w2 = sigma eps + w + w
ModelSpec to_model(const SpinBosonParams& p, int sigma);

// critical coupling 2 sqrt(eps) (int v^2 / w)^{-1/2}; absent when the integral
// diverges, detected through vanishing orders: 2 order(v) < order(w) at 0
std::optional<double> alpha0(const SpinBosonParams& p);

struct A2Report {
  double alpha = 0.0;
  std::optional<double> alpha0_value;
  double e_min_plus = 0.0;
  double e_min_minus = 0.0;
  double e_min = 0.0;
  Classification class_plus = Classification::CaseIII_nonneg_min;
  Classification class_minus = Classification::CaseIII_nonneg_min;
  std::vector<std::array<double, 2>> ess_intervals;     // union over both blocks
  std::vector<std::pair<double, int>> counts_plus;      // (z, eigenvalues below z)
  std::vector<std::pair<double, int>> counts_minus;
  std::vector<std::string> flags;
  int grid_n = 0;
};

// full spectral picture of the doubled operator: per-block essential spectra
// and classifications, their union, and eigenvalue counts on a z ladder below
// the global bottom.  On small grids (n <= 48) the doubled discretization is
// assembled directly and its eigenvalue multiset checked against the union of
// the per-block spectra; the outcome lands in flags.
A2Report a2_spectrum_report(const SpinBosonParams& p, const TorusGrid& g);

// assembles the doubled discretization with the two-level index explicit,
// conjugates by the index permutation, and returns the worst deviation from
// exact block-diagonality (0 when the permutation identity holds).  n <= 32.
double phi_decomposition_check(const SpinBosonParams& p, const TorusGrid& small_grid);

}  // namespace fockspec

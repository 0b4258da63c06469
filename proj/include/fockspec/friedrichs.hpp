// friedrichs.hpp - fiber determinant Delta(x;z), branch roots, essential spectrum
#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "fockspec/model.hpp"

namespace fockspec {

// numeric knobs shared across the analyses; override per run, never mutate mid-run
struct Tolerances {
  double root_tol = 1e-10;      // residual target for Delta roots
  double sign_tol = 1e-9;       // sign-classification margin
  double v_tol = 1e-9;          // "v1 vanishes here" threshold
  double adaptive_tol = 0.5;    // band-edge distance that switches on cell refinement
  double quad_rel_tol = 5e-13;  // relative tolerance of the refined quadrature
  double refine_tol = 1e-12;    // extremum refinement in the angle variable
  double eig_tol = 1e-10;       // borderline band around the counting threshold
  double count_margin = 1e-6;   // growth-scan threshold below the band bottom
};

// Evaluates Delta(x;z) = w1(x) - z - 1/2 int v1(t)^2 / (w2(x,t) - z) dt.
// Quadrature switches to dyadically refined cells when z approaches a band
// edge of the fiber; z strictly inside (m_x, M_x) is rejected, z at the edge
// requires v1 to vanish at the extremizer (else the integral diverges).
class DeltaEvaluator {
 public:
  DeltaEvaluator(ModelSpec model, TorusGrid grid, Tolerances tol = {});

  double operator()(double x, double z) const;

  FiberBand fiber(double x) const;  // cached on grid nodes

  const ModelSpec& model() const { return model_; }
  const TorusGrid& grid() const { return grid_; }
  const Tolerances& tol() const { return tol_; }
  const BandExtrema& extrema() const { return extrema_; }

 private:
  ModelSpec model_;
  TorusGrid grid_;
  Tolerances tol_;
  BandExtrema extrema_;
};

// discrete spectrum of the fiber h(x): at most one Delta root on each side of
// [m_x, M_x] (Delta is strictly decreasing there), plus the edge limits
struct FiberRoots {
  std::optional<double> below, above;
  double bottom_limit = 0.0;  // lim Delta(x; z), z -> m_x-; -inf when it plunges
  double top_limit = 0.0;     // lim Delta(x; z), z -> M_x+; +inf when it plunges
  double mx = 0.0, Mx = 0.0;
};

FiberRoots h_disc_spectrum(const DeltaEvaluator& ev, double x);

// root of Delta(x, .) below m_x / above M_x at arbitrary x (absent if none)
std::optional<double> root_below(const DeltaEvaluator& ev, double x);
std::optional<double> root_above(const DeltaEvaluator& ev, double x);

enum class Classification {
  CaseI_v1_nonzero,    // v1(0) != 0: ground energy strictly below the band
  CaseII_negative_min, // min_x Delta(x;m) < 0: ditto
  CaseIII_nonneg_min,  // min_x Delta(x;m) > 0: ground energy equals m
  Boundary_zero_min,   // min_x Delta(x;m) = 0 within tolerance
};

const char* to_string(Classification c);

struct BranchSample {
  double x = 0.0;
  std::optional<double> below, above;
};

struct EssentialSpectrumReport {
  std::vector<BranchSample> samples;                 // one per grid node
  std::vector<std::array<double, 2>> sigma_intervals;  // closed, sorted, disjoint
  double m = 0.0, M = 0.0;                           // two-particle band
  double e_min = 0.0, e_max = 0.0;                   // edges of sigma union band
  Classification classification = Classification::CaseIII_nonneg_min;
  std::optional<double> min_delta_at_m;              // present when v1(0) ~ 0
  int grid_n = 0;
};

EssentialSpectrumReport essential_spectrum(const DeltaEvaluator& ev);

// grid points with Delta(x; m) < 0 and the witness values; requires v1(0) ~ 0
std::vector<std::pair<double, double>> set_G(const DeltaEvaluator& ev);

// (1/4) det of the 2x2 block from the rank-two resolvent factorization, all
// integrals by quadrature with v1 normalized in L2; equals -Delta(x;z)/z for
// the unit-normalized model (tested, not assumed)
double perturbation_determinant(const DeltaEvaluator& ev, double x, double z);

struct DeltaZero {
  double x = 0.0;
  int multiplicity = 1;
  bool capped = false;  // order estimate hit the cap (reported as >= 8)
};

struct DeltaZeroScan {
  bool all_of_torus = false;  // Delta(.; e_min) vanishes on the whole grid
  std::vector<DeltaZero> zeros;
};

DeltaZeroScan delta_zeros_at_emin(const DeltaEvaluator& ev,
                                  const EssentialSpectrumReport& rep);

}  // namespace fockspec

#pragma once

#include "imexdc/baselines.hpp"
#include "imexdc/data_io.hpp"
#include "imexdc/graph_gl.hpp"
#include "imexdc/types.hpp"

namespace imexdc {

struct SegmentParams {
  double eps = 10.0;
  double eta = 10.0;
  double sigma = 0.0;        // <= 0: sigma_scale * median kNN feature distance
  double sigma_scale = 4.0;
  int k_nn = 10;
  int patch_radius = 0;
  double box_c = 1.1;
};

struct SegmentSetup {
  GraphGL model;
  Problem problem;
  Vec x0;  // y on labeled nodes, -1 elsewhere
  double sigma_used = 0.0;
};

// labels: per-pixel prior in {+1, 0, -1} (0 = unlabeled). Throws when no
// pixel is labeled.
SegmentSetup build_segment_setup(const Image& image, const BinVec& labels,
                                 const SegmentParams& params);

// Runs the chosen algorithm; when iterates leave the Lipschitz box [-c, c]
// the bound is re-estimated from the observed range and the run repeats
// (config.delta_t <= 0 keeps the step size feasible for the new bound).
RunRecord run_segment(SegmentSetup& setup, Algorithm algorithm, SolverConfig config,
                      int max_box_retries = 3);

}  // namespace imexdc

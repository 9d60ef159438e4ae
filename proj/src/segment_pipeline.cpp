#include "imexdc/segment_pipeline.hpp"

#include <iostream>
#include <stdexcept>

namespace imexdc {

SegmentSetup build_segment_setup(const Image& image, const BinVec& labels,
                                 const SegmentParams& params) {
  const int n = image.size();
  if (labels.size() != n) throw std::invalid_argument("segment: label mask size mismatch");
  if ((labels.array() != 0).count() == 0) throw std::invalid_argument("segment: empty label mask");

  const Mat features = extract_patch_features(image, params.patch_radius);

  double sigma = params.sigma;
  if (sigma <= 0.0) {
    const double med = median_knn_distance(features, params.k_nn);
    sigma = med > 0.0 ? params.sigma_scale * med : 1.0;
  }

  SegmentSetup setup;
  setup.sigma_used = sigma;
  setup.model.W = build_graph_weights(features, sigma, params.k_nn);
  setup.model.eps = params.eps;
  setup.model.eta = params.eta;
  setup.model.box_c = params.box_c;
  setup.model.Lambda = Vec::Zero(n);
  setup.model.y_prior = Vec::Zero(n);
  setup.x0 = Vec::Constant(n, -1.0);
  for (int i = 0; i < n; ++i) {
    if (labels[i] != 0) {
      setup.model.Lambda[i] = 1.0;
      setup.model.y_prior[i] = labels[i] > 0 ? 1.0 : -1.0;
      setup.x0[i] = setup.model.y_prior[i];
    }
  }
  setup.problem = build_graph_gl(setup.model);
  return setup;
}

RunRecord run_segment(SegmentSetup& setup, Algorithm algorithm, SolverConfig config,
                      int max_box_retries) {
  for (int attempt = 0;; ++attempt) {
    RunRecord rec = run_algorithm(algorithm, setup.problem, config, setup.x0);
    if (rec.max_abs_iterate <= setup.model.box_c || attempt >= max_box_retries) return rec;
    setup.model.box_c = 1.05 * rec.max_abs_iterate;
    std::cerr << "segment: iterates left the Lipschitz box, re-estimating with c = "
              << setup.model.box_c << "\n";
    setup.problem = build_graph_gl(setup.model);
  }
}

}  // namespace imexdc

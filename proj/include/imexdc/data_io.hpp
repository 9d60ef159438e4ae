#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "imexdc/types.hpp"

namespace imexdc {

struct InstanceSpec {
  int m = 0, k = 0, s = 0;
  double noise_sigma = 0.01;
  std::uint64_t seed = 1;
};

struct Instance {
  InstanceSpec spec;
  Mat A;                     // columns normalized to unit norm
  Vec b;                     // A y_true + noise_sigma * xi
  Vec y_true;                // standard normal on the support, zero elsewhere
  std::vector<int> support;  // sorted, size s
};

// Deterministic per seed; independent RNG streams for A, support, y_true, xi.
Instance gen_random_instance(const InstanceSpec& spec);

// LIBSVM text format: `<label> <idx>:<val> ...`, 1-based strictly increasing
// indices, `#` starts a comment. Labels are mapped to {-1,+1} (<= 0 -> -1).
struct SparseRow {
  double label = 0.0;
  std::vector<std::pair<int, double>> features;
};

struct SparseDataset {
  std::vector<SparseRow> rows;
  int dimension = 0;  // max feature index
};

// Throws std::runtime_error with the offending line number on malformed
// input; an input with no data rows is an error.
SparseDataset parse_libsvm(std::istream& in);
void write_libsvm(const SparseDataset& ds, std::ostream& out);
std::pair<Mat, Vec> dataset_to_dense(const SparseDataset& ds);

struct Image {
  int width = 0, height = 0;
  std::vector<double> pixels;  // row-major

  double& at(int r, int c) { return pixels[static_cast<size_t>(r) * width + c]; }
  double at(int r, int c) const { return pixels[static_cast<size_t>(r) * width + c]; }
  int size() const { return width * height; }
};

enum class ShapeKind { disk, stripes };

// Two-intensity image (0 background, 1 foreground) with additive Gaussian
// noise, plus the noiseless truth mask. Deterministic per seed.
std::pair<Image, BinVec> gen_synthetic_image(int width, int height, ShapeKind shape, double noise,
                                             std::uint64_t seed);

// P_i = row-major flattened (2r+1)^2 neighborhood, mirrored at the borders.
Mat extract_patch_features(const Image& img, int patch_radius);

Image read_pgm(std::istream& in);  // P2 or P5, maxval <= 255
void write_pgm(const Image& img, std::ostream& out);  // P2, values clamped to [0,255]

struct ResultRow {
  int m = 0, k = 0, s = 0;
  std::string algorithm;
  int iterations = 0;
  double time_s = 0.0;
  int sparsity = 0;
  double final_E = 0.0;
  std::string terminated_by;
};

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_results_csv(std::istream& in);

// Text container: <prefix>.A.csv, <prefix>.b.csv, <prefix>.y_true.csv,
// <prefix>.support.csv, each with `# key=value` header lines.
void write_instance(const Instance& inst, const std::string& prefix);
Instance read_instance(const std::string& prefix);

std::string format_full(double v);  // shortest round-trip decimal

}  // namespace imexdc

#include <doctest.h>

#include <sstream>

#include "imexdc/data_io.hpp"
#include "imexdc/rng.hpp"

using namespace imexdc;

TEST_CASE("random instance generation is deterministic per seed") {
  const InstanceSpec spec{24, 64, 6, 0.01, 42};
  const Instance a = gen_random_instance(spec);
  const Instance b = gen_random_instance(spec);
  CHECK(a.A == b.A);
  CHECK(a.b == b.b);
  CHECK(a.y_true == b.y_true);
  CHECK(a.support == b.support);

  const Instance c = gen_random_instance({24, 64, 6, 0.01, 43});
  CHECK(a.A != c.A);
}

TEST_CASE("instance columns are unit norm and support has size s") {
  const Instance inst = gen_random_instance({30, 50, 7, 0.01, 3});
  for (int j = 0; j < inst.A.cols(); ++j)
    CHECK(std::abs(inst.A.col(j).norm() - 1.0) <= 1e-12);
  CHECK(inst.support.size() == 7);
  CHECK(std::is_sorted(inst.support.begin(), inst.support.end()));
  for (size_t i = 1; i < inst.support.size(); ++i)
    CHECK(inst.support[i] != inst.support[i - 1]);
  int nnz = 0;
  for (int i = 0; i < inst.y_true.size(); ++i)
    if (inst.y_true[i] != 0.0) ++nnz;
  CHECK(nnz == 7);
}

TEST_CASE("noiseless instance satisfies b = A y exactly") {
  const Instance inst = gen_random_instance({20, 40, 5, 0.0, 9});
  CHECK((inst.A * inst.y_true - inst.b).norm() == 0.0);
}

TEST_CASE("instance generation rejects s > k") {
  CHECK_THROWS_AS(gen_random_instance({10, 8, 9, 0.01, 1}), std::invalid_argument);
}

TEST_CASE("libsvm parses labels and sorted features") {
  std::istringstream in("+1 3:0.5 7:1.0\n-1\n0 2:1.5  # trailing comment\n");
  const SparseDataset ds = parse_libsvm(in);
  REQUIRE(ds.rows.size() == 3);
  CHECK(ds.rows[0].label == 1.0);
  REQUIRE(ds.rows[0].features.size() == 2);
  CHECK(ds.rows[0].features[0] == std::pair<int, double>{3, 0.5});
  CHECK(ds.rows[0].features[1] == std::pair<int, double>{7, 1.0});
  CHECK(ds.rows[1].label == -1.0);
  CHECK(ds.rows[1].features.empty());  // all-zero row
  CHECK(ds.rows[2].label == -1.0);     // 0 maps to -1
  CHECK(ds.dimension == 7);
}

TEST_CASE("libsvm rejects malformed input with line numbers") {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return parse_libsvm(in);
  };
  CHECK_THROWS_WITH_AS(parse("1 5:2 3:1\n"),
                       doctest::Contains("line 1: indices not increasing"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("+1 1:0.5\nbad 2:1\n"), doctest::Contains("line 2"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("+1 1:x\n"), doctest::Contains("non-numeric"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("+1 0:1\n"), doctest::Contains("bad feature index"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("+1 1\n"), doctest::Contains("expected idx:value"),
                       std::runtime_error);
  CHECK_THROWS_AS(parse(""), std::runtime_error);
  CHECK_THROWS_AS(parse("# only a comment\n\n"), std::runtime_error);
}

TEST_CASE("libsvm round-trips through the sparse representation") {
  std::istringstream in("+1 3:0.5 7:-1.25e-3\n-1 1:2\n+1\n");
  const SparseDataset ds = parse_libsvm(in);
  std::ostringstream out;
  write_libsvm(ds, out);
  std::istringstream back(out.str());
  const SparseDataset ds2 = parse_libsvm(back);
  REQUIRE(ds2.rows.size() == ds.rows.size());
  CHECK(ds2.dimension == ds.dimension);
  for (size_t i = 0; i < ds.rows.size(); ++i) {
    CHECK(ds2.rows[i].label == ds.rows[i].label);
    CHECK(ds2.rows[i].features == ds.rows[i].features);
  }
}

TEST_CASE("dataset_to_dense places entries at 1-based indices") {
  std::istringstream in("+1 2:5\n-1 1:1 3:2\n");
  const auto [A, b] = dataset_to_dense(parse_libsvm(in));
  CHECK(A.rows() == 2);
  CHECK(A.cols() == 3);
  CHECK(A(0, 1) == 5.0);
  CHECK(A(1, 0) == 1.0);
  CHECK(A(1, 2) == 2.0);
  CHECK(A(0, 0) == 0.0);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == -1.0);
}

TEST_CASE("synthetic disk image matches its mask when noiseless") {
  const auto [img, truth] = gen_synthetic_image(16, 16, ShapeKind::disk, 0.0, 1);
  for (int i = 0; i < img.size(); ++i)
    CHECK((img.pixels[i] > 0.5 ? 1 : 0) == truth[i]);
  CHECK(truth.sum() > 0);
  CHECK(truth.sum() < truth.size());

  const auto [img2, truth2] = gen_synthetic_image(16, 16, ShapeKind::disk, 0.1, 7);
  const auto [img3, truth3] = gen_synthetic_image(16, 16, ShapeKind::disk, 0.1, 7);
  CHECK(img2.pixels == img3.pixels);  // determinism
  CHECK(truth2 == truth3);
}

TEST_CASE("stripes shape produces alternating bands") {
  const auto [img, truth] = gen_synthetic_image(8, 16, ShapeKind::stripes, 0.0, 1);
  CHECK(truth[0] == 1);          // first band is foreground
  CHECK(truth[2 * 8] == 0);      // second band starts at row 2 (band height 2)
  CHECK(img.at(0, 0) == 1.0);
}

TEST_CASE("patch features: radius zero is the pixel intensity") {
  const auto [img, truth] = gen_synthetic_image(8, 8, ShapeKind::disk, 0.05, 2);
  const Mat feats = extract_patch_features(img, 0);
  REQUIRE(feats.rows() == 64);
  REQUIRE(feats.cols() == 1);
  for (int i = 0; i < 64; ++i) CHECK(feats(i, 0) == img.pixels[i]);
}

TEST_CASE("patch features: interior pixel lists its 3x3 neighborhood row-major") {
  Image img;
  img.width = img.height = 3;
  img.pixels = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  const Mat feats = extract_patch_features(img, 1);
  REQUIRE(feats.cols() == 9);
  const Vec center = feats.row(4).transpose();
  for (int i = 0; i < 9; ++i) CHECK(center[i] == img.pixels[i]);
  // corner pixel: mirrored padding
  const Vec corner = feats.row(0).transpose();
  CHECK(corner[4] == 1.0);  // itself at the patch center
  CHECK(corner[0] == 1.0);  // mirrored corner
  CHECK(corner[5] == 2.0);
  CHECK(corner[7] == 4.0);
}

TEST_CASE("patch features of a constant image are identical") {
  Image img;
  img.width = img.height = 8;
  img.pixels.assign(64, 0.25);
  const Mat feats = extract_patch_features(img, 1);
  for (int i = 1; i < feats.rows(); ++i) CHECK((feats.row(i) - feats.row(0)).norm() == 0.0);
}

TEST_CASE("pgm round trip") {
  const auto [img, truth] = gen_synthetic_image(9, 11, ShapeKind::disk, 0.0, 1);
  std::ostringstream out;
  write_pgm(img, out);
  std::istringstream back(out.str());
  const Image img2 = read_pgm(back);
  CHECK(img2.width == img.width);
  CHECK(img2.height == img.height);
  for (int i = 0; i < img.size(); ++i)
    CHECK(std::abs(img2.pixels[i] - img.pixels[i]) <= 0.5 / 255.0);
}

TEST_CASE("pgm reads the binary variant") {
  std::string data = "P5\n# comment\n2 2\n255\n";
  data.push_back('\0');
  data.push_back(static_cast<char>(255));
  data.push_back(static_cast<char>(128));
  data.push_back('\0');
  std::istringstream in(data);
  const Image img = read_pgm(in);
  CHECK(img.width == 2);
  CHECK(img.pixels[0] == 0.0);
  CHECK(img.pixels[1] == 1.0);
  CHECK(img.pixels[2] == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("results csv: header-only for empty input, lossless round trip") {
  std::ostringstream empty_out;
  write_results_csv({}, empty_out);
  CHECK(empty_out.str() == "m,k,s,algorithm,iterations,time_s,sparsity,final_E,terminated_by\n");

  std::vector<ResultRow> rows(2);
  rows[0] = {72, 256, 8, "3bapdca_e", 173, 0.41231, 79, 0.03319874256, "relative_step"};
  rows[1] = {72, 256, 8, "dca", 557, 0.8, 80, 0.0332, "max_iter"};
  std::ostringstream out;
  write_results_csv(rows, out);
  std::istringstream back(out.str());
  const auto rows2 = read_results_csv(back);
  REQUIRE(rows2.size() == 2);
  CHECK(rows2[0].algorithm == "3bapdca_e");
  CHECK(rows2[0].iterations == 173);
  CHECK(rows2[0].time_s == rows[0].time_s);
  CHECK(rows2[0].final_E == rows[0].final_E);
  CHECK(rows2[1].terminated_by == "max_iter");
}

TEST_CASE("instance container round trip") {
  const Instance inst = gen_random_instance({12, 20, 4, 0.01, 11});
  const std::string prefix = "io_test_instance";
  write_instance(inst, prefix);
  const Instance back = read_instance(prefix);
  CHECK(back.spec.m == inst.spec.m);
  CHECK(back.spec.k == inst.spec.k);
  CHECK(back.spec.s == inst.spec.s);
  CHECK(back.spec.seed == inst.spec.seed);
  CHECK(back.A == inst.A);
  CHECK(back.b == inst.b);
  CHECK(back.y_true == inst.y_true);
  CHECK(back.support == inst.support);
}

TEST_CASE("rng streams are independent and reproducible") {
  rng::StreamRng a(5, rng::Stream::matrix);
  rng::StreamRng b(5, rng::Stream::matrix);
  rng::StreamRng c(5, rng::Stream::noise);
  CHECK(a.normal() == b.normal());
  CHECK(a.uniform() == b.uniform());
  CHECK(a.bits() != c.bits());
  for (int i = 0; i < 100; ++i) {
    const auto v = a.integer(37);
    CHECK(v < 37);
  }
}

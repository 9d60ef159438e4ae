#include "imexdc/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "imexdc/rng.hpp"

namespace imexdc {

std::string format_full(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& tok, int lineno, const char* what) {
  double v = 0.0;
  // from_chars does not take an explicit '+' sign, but libsvm labels carry one
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  if (tok.size() > 1 && tok[0] == '+') ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    std::ostringstream msg;
    msg << "libsvm line " << lineno << ": non-numeric " << what << " '" << tok << "'";
    throw std::runtime_error(msg.str());
  }
  return v;
}

int parse_index(const std::string& tok, int lineno) {
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || v <= 0) {
    std::ostringstream msg;
    msg << "libsvm line " << lineno << ": bad feature index '" << tok << "'";
    throw std::runtime_error(msg.str());
  }
  return v;
}

}  // namespace

Instance gen_random_instance(const InstanceSpec& spec) {
  if (spec.m <= 0 || spec.k <= 0 || spec.s <= 0)
    throw std::invalid_argument("gen_random_instance: dimensions must be positive");
  if (spec.s > spec.k) throw std::invalid_argument("gen_random_instance: s > k");
  if (spec.noise_sigma < 0.0)
    throw std::invalid_argument("gen_random_instance: negative noise_sigma");

  Instance inst;
  inst.spec = spec;

  // Matrix entries in column-major order, then per-column normalization.
  rng::StreamRng matrix_rng(spec.seed, rng::Stream::matrix);
  inst.A.resize(spec.m, spec.k);
  for (int j = 0; j < spec.k; ++j) {
    for (int i = 0; i < spec.m; ++i) inst.A(i, j) = matrix_rng.normal();
    inst.A.col(j).normalize();
  }

  // Support by partial Fisher-Yates over 0..k-1.
  rng::StreamRng support_rng(spec.seed, rng::Stream::support);
  std::vector<int> perm(spec.k);
  std::iota(perm.begin(), perm.end(), 0);
  for (int t = 0; t < spec.s; ++t) {
    const auto pick = t + static_cast<int>(support_rng.integer(spec.k - t));
    std::swap(perm[t], perm[pick]);
  }
  inst.support.assign(perm.begin(), perm.begin() + spec.s);
  std::sort(inst.support.begin(), inst.support.end());

  // Signal values assigned in sorted-support order.
  rng::StreamRng signal_rng(spec.seed, rng::Stream::signal);
  inst.y_true = Vec::Zero(spec.k);
  for (int idx : inst.support) inst.y_true[idx] = signal_rng.normal();

  rng::StreamRng noise_rng(spec.seed, rng::Stream::noise);
  inst.b = inst.A * inst.y_true;
  for (int i = 0; i < spec.m; ++i) inst.b[i] += spec.noise_sigma * noise_rng.normal();
  return inst;
}

SparseDataset parse_libsvm(std::istream& in) {
  SparseDataset ds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;  // blank or comment-only line

    SparseRow row;
    const double raw = parse_double(tok, lineno, "label");
    row.label = raw > 0.0 ? 1.0 : -1.0;  // 0/1 labels map 0 -> -1

    int last_idx = 0;
    while (ss >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
        std::ostringstream msg;
        msg << "libsvm line " << lineno << ": expected idx:value, got '" << tok << "'";
        throw std::runtime_error(msg.str());
      }
      const int idx = parse_index(tok.substr(0, colon), lineno);
      const double val = parse_double(tok.substr(colon + 1), lineno, "feature value");
      if (idx <= last_idx) {
        std::ostringstream msg;
        msg << "libsvm line " << lineno << ": indices not increasing (" << idx << " after "
            << last_idx << ")";
        throw std::runtime_error(msg.str());
      }
      row.features.emplace_back(idx, val);
      last_idx = idx;
      ds.dimension = std::max(ds.dimension, idx);
    }
    ds.rows.push_back(std::move(row));
  }
  if (ds.rows.empty()) throw std::runtime_error("libsvm: no data rows");
  return ds;
}

void write_libsvm(const SparseDataset& ds, std::ostream& out) {
  for (const auto& row : ds.rows) {
    out << (row.label > 0 ? "+1" : "-1");
    for (const auto& [idx, val] : row.features) out << ' ' << idx << ':' << format_full(val);
    out << '\n';
  }
}

std::pair<Mat, Vec> dataset_to_dense(const SparseDataset& ds) {
  const int m = static_cast<int>(ds.rows.size());
  Mat A = Mat::Zero(m, ds.dimension);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    b[i] = ds.rows[i].label;
    for (const auto& [idx, val] : ds.rows[i].features) A(i, idx - 1) = val;
  }
  return {std::move(A), std::move(b)};
}

std::pair<Image, BinVec> gen_synthetic_image(int width, int height, ShapeKind shape, double noise,
                                             std::uint64_t seed) {
  if (width < 8 || height < 8)
    throw std::invalid_argument("gen_synthetic_image: dimensions must be at least 8");

  Image img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<size_t>(width) * height, 0.0);
  BinVec truth(width * height);

  const double cy = (height - 1) / 2.0;
  const double cx = (width - 1) / 2.0;
  const double rad = 0.3 * std::min(width, height);
  const int band = std::max(1, height / 8);

  rng::StreamRng image_rng(seed, rng::Stream::image);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      bool fg = false;
      if (shape == ShapeKind::disk) {
        fg = (r - cy) * (r - cy) + (c - cx) * (c - cx) <= rad * rad;
      } else {
        fg = (r / band) % 2 == 0;
      }
      truth[r * width + c] = fg ? 1 : 0;
      img.at(r, c) = (fg ? 1.0 : 0.0) + noise * image_rng.normal();
    }
  }
  return {std::move(img), std::move(truth)};
}

Mat extract_patch_features(const Image& img, int patch_radius) {
  if (patch_radius < 0) throw std::invalid_argument("extract_patch_features: negative radius");
  const int side = 2 * patch_radius + 1;
  Mat feats(img.size(), side * side);
  auto mirror = [](int p, int n) {
    while (p < 0 || p >= n) {
      if (p < 0) p = -p - 1;
      if (p >= n) p = 2 * n - 1 - p;
    }
    return p;
  };
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      int col = 0;
      for (int dr = -patch_radius; dr <= patch_radius; ++dr)
        for (int dc = -patch_radius; dc <= patch_radius; ++dc)
          feats(r * img.width + c, col++) =
              img.at(mirror(r + dr, img.height), mirror(c + dc, img.width));
    }
  }
  return feats;
}

Image read_pgm(std::istream& in) {
  auto next_token = [&in]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw std::runtime_error("pgm: truncated header");
  };

  const std::string magic = next_token();
  if (magic != "P2" && magic != "P5") throw std::runtime_error("pgm: expected P2 or P5");
  const int width = std::stoi(next_token());
  const int height = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255)
    throw std::runtime_error("pgm: unsupported header values");

  Image img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<size_t>(width) * height);
  if (magic == "P2") {
    for (auto& p : img.pixels) {
      int v = 0;
      if (!(in >> v)) throw std::runtime_error("pgm: truncated pixel data");
      p = static_cast<double>(v) / maxval;
    }
  } else {
    in.get();  // single whitespace after maxval
    for (auto& p : img.pixels) {
      const int v = in.get();
      if (v == EOF) throw std::runtime_error("pgm: truncated pixel data");
      p = static_cast<double>(v) / maxval;
    }
  }
  return img;
}

void write_pgm(const Image& img, std::ostream& out) {
  out << "P2\n" << img.width << ' ' << img.height << "\n255\n";
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const int v = std::clamp(static_cast<int>(std::lround(img.at(r, c) * 255.0)), 0, 255);
      out << v << (c + 1 == img.width ? '\n' : ' ');
    }
  }
}

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "m,k,s,algorithm,iterations,time_s,sparsity,final_E,terminated_by\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.k << ',' << r.s << ',' << r.algorithm << ',' << r.iterations << ','
        << format_full(r.time_s) << ',' << r.sparsity << ',' << format_full(r.final_E) << ','
        << r.terminated_by << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("results csv: missing header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) throw std::runtime_error("results csv: bad row '" + line + "'");
    ResultRow r;
    r.m = std::stoi(cells[0]);
    r.k = std::stoi(cells[1]);
    r.s = std::stoi(cells[2]);
    r.algorithm = cells[3];
    r.iterations = std::stoi(cells[4]);
    r.time_s = std::stod(cells[5]);
    r.sparsity = std::stoi(cells[6]);
    r.final_E = std::stod(cells[7]);
    r.terminated_by = cells[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::map<std::string, std::string> read_header(std::istream& in) {
  std::map<std::string, std::string> meta;
  while (in.peek() == '#') {
    std::string line;
    std::getline(in, line);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto key = line.substr(1, eq - 1);
    key.erase(0, key.find_first_not_of(' '));
    key.erase(key.find_last_not_of(' ') + 1);
    meta[key] = line.substr(eq + 1);
  }
  return meta;
}

}  // namespace

void write_instance(const Instance& inst, const std::string& prefix) {
  {
    auto out = open_out(prefix + ".A.csv");
    out << "# m=" << inst.spec.m << "\n# k=" << inst.spec.k << "\n# s=" << inst.spec.s
        << "\n# noise_sigma=" << format_full(inst.spec.noise_sigma)
        << "\n# seed=" << inst.spec.seed << "\n";
    for (int i = 0; i < inst.A.rows(); ++i) {
      for (int j = 0; j < inst.A.cols(); ++j)
        out << format_full(inst.A(i, j)) << (j + 1 == inst.A.cols() ? '\n' : ',');
    }
  }
  {
    auto out = open_out(prefix + ".b.csv");
    out << "# m=" << inst.spec.m << "\n";
    for (int i = 0; i < inst.b.size(); ++i) out << format_full(inst.b[i]) << '\n';
  }
  {
    auto out = open_out(prefix + ".y_true.csv");
    out << "# k=" << inst.spec.k << "\n";
    for (int i = 0; i < inst.y_true.size(); ++i) out << format_full(inst.y_true[i]) << '\n';
  }
  {
    auto out = open_out(prefix + ".support.csv");
    out << "# s=" << inst.spec.s << "\n";
    for (int idx : inst.support) out << idx << '\n';
  }
}

Instance read_instance(const std::string& prefix) {
  Instance inst;
  {
    auto in = open_in(prefix + ".A.csv");
    const auto meta = read_header(in);
    inst.spec.m = std::stoi(meta.at("m"));
    inst.spec.k = std::stoi(meta.at("k"));
    inst.spec.s = std::stoi(meta.at("s"));
    inst.spec.noise_sigma = std::stod(meta.at("noise_sigma"));
    inst.spec.seed = std::stoull(meta.at("seed"));
    inst.A.resize(inst.spec.m, inst.spec.k);
    std::string line;
    for (int i = 0; i < inst.spec.m; ++i) {
      if (!std::getline(in, line)) throw std::runtime_error("instance: truncated A matrix");
      std::stringstream ss(line);
      std::string cell;
      for (int j = 0; j < inst.spec.k; ++j) {
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("instance: short A row");
        inst.A(i, j) = std::stod(cell);
      }
    }
  }
  {
    auto in = open_in(prefix + ".b.csv");
    read_header(in);
    inst.b.resize(inst.spec.m);
    for (int i = 0; i < inst.spec.m; ++i)
      if (!(in >> inst.b[i])) throw std::runtime_error("instance: truncated b");
  }
  {
    auto in = open_in(prefix + ".y_true.csv");
    read_header(in);
    inst.y_true.resize(inst.spec.k);
    for (int i = 0; i < inst.spec.k; ++i)
      if (!(in >> inst.y_true[i])) throw std::runtime_error("instance: truncated y_true");
  }
  {
    auto in = open_in(prefix + ".support.csv");
    read_header(in);
    inst.support.resize(inst.spec.s);
    for (int i = 0; i < inst.spec.s; ++i)
      if (!(in >> inst.support[i])) throw std::runtime_error("instance: truncated support");
  }
  return inst;
}

}  // namespace imexdc

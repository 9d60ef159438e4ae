// Command-line front end: instance generation, single solves, benchmark
// sweeps, and the graph Ginzburg-Landau segmentation pipeline.
//
// Exit codes: 0 converged, 2 iteration cap reached, 1 usage/config error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "imexdc/baselines.hpp"
#include "imexdc/data_io.hpp"
#include "imexdc/diagnostics.hpp"
#include "imexdc/rng.hpp"
#include "imexdc/scad.hpp"
#include "imexdc/segment_pipeline.hpp"
#include "imexdc/solver.hpp"

namespace {

using namespace imexdc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIterationCap = 2;

struct SolveOptions {
  std::string instance_prefix;
  std::string preset = "scad";
  int m = 72, k = 256, s = 8;
  double noise = 0.01;
  std::uint64_t seed = 1;
  double mu = 0.033;
  double theta = 10.0;
  double gamma = 0.0;  // <= 0 picks 0.5 * mu
  std::string algorithm = "3bapdca_e";
  double dt = 0.0;
  double alpha = 2.0;
  double tol = 1e-12;
  std::string criterion = "relstep";
  int max_iter = 100000;
  std::string precond = "exact";
  int inner_iters = 1;
  bool no_extrapolation = false;
  std::string restart = "poststep";
  bool redo_step_on_restart = false;
  std::string out;
};

TerminationKind criterion_from_name(const std::string& name) {
  if (name == "relstep") return TerminationKind::relative_step;
  if (name == "step") return TerminationKind::step_norm;
  if (name == "grad") return TerminationKind::grad_norm;
  if (name == "dice") return TerminationKind::dice_bound;
  throw CLI::ValidationError("--criterion", "unknown criterion: " + name);
}

PrecondKind precond_from_name(const std::string& name) {
  if (name == "exact") return PrecondKind::exact;
  if (name == "richardson") return PrecondKind::richardson;
  if (name == "jacobi") return PrecondKind::jacobi_perturbed;
  if (name == "sgs") return PrecondKind::sgs;
  throw CLI::ValidationError("--precond", "unknown preconditioner: " + name);
}

void write_trace_csv(const RunRecord& rec, std::ostream& out,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << "=" << value << "\n";
  out << "iter,E,A,step_norm,restarted\n";
  for (size_t i = 0; i < rec.trace.size(); ++i) {
    const auto& row = rec.trace[i];
    out << (i + 1) << ',' << format_full(row.energy) << ',' << format_full(row.aux_energy) << ','
        << format_full(row.step_norm) << ',' << (row.restarted ? 1 : 0) << '\n';
  }
}

int finish_run(const RunRecord& rec) {
  return rec.status == RunStatus::converged ? kExitOk : kExitIterationCap;
}

int cmd_solve(const SolveOptions& opt) {
  Instance inst;
  if (!opt.instance_prefix.empty()) {
    inst = read_instance(opt.instance_prefix);
  } else {
    inst = gen_random_instance({opt.m, opt.k, opt.s, opt.noise, opt.seed});
  }

  ScadParams params;
  params.mu = opt.mu;
  params.theta = opt.theta;
  params.gamma = opt.gamma > 0.0 ? opt.gamma : 0.5 * opt.mu;
  const PenaltyKind variant = opt.preset == "huber_scad" ? PenaltyKind::huber : PenaltyKind::l1;

  const auto data = make_lsq_data(inst.A, inst.b);
  const Problem problem = build_scad_ls(data, params, variant);

  SolverConfig config;
  config.delta_t = opt.dt;
  config.alpha = opt.alpha;
  config.max_iter = opt.max_iter;
  config.termination.kind = criterion_from_name(opt.criterion);
  config.termination.tolerance = opt.tol;
  config.inner_iters = opt.inner_iters;
  config.precond = precond_from_name(opt.precond);
  config.extrapolation =
      opt.no_extrapolation ? Extrapolation::none : Extrapolation::nesterov_restart;
  config.restart_rule =
      opt.restart == "literal" ? RestartRule::paper_literal : RestartRule::post_step;
  config.redo_step_on_restart = opt.redo_step_on_restart;

  const Algorithm algorithm = algorithm_from_name(opt.algorithm);
  const Vec x0 = Vec::Zero(problem.dim);
  const RunRecord rec = run_algorithm(algorithm, problem, config, x0);

  const double sparsity_tol = variant == PenaltyKind::l1 ? 0.0 : 1e-6;
  const int sparsity = sparsity_count(rec.final_x, sparsity_tol);
  std::cout << "algorithm=" << opt.algorithm << " iterations=" << rec.iterations
            << " time_s=" << rec.wall_time << " sparsity=" << sparsity
            << " final_E=" << format_full(problem.energy(rec.final_x))
            << " terminated_by=" << rec.terminated_by << "\n";

  if (!opt.out.empty()) {
    std::ofstream trace(opt.out + ".trace.csv");
    write_trace_csv(rec, trace,
                    {{"algorithm", opt.algorithm},
                     {"m", std::to_string(inst.spec.m)},
                     {"k", std::to_string(inst.spec.k)},
                     {"s", std::to_string(inst.spec.s)},
                     {"seed", std::to_string(inst.spec.seed)},
                     {"tol", format_full(opt.tol)}});
    std::ofstream xfile(opt.out + ".x.txt");
    for (Eigen::Index i = 0; i < rec.final_x.size(); ++i)
      xfile << format_full(rec.final_x[i]) << '\n';
  }
  return finish_run(rec);
}

struct BenchPlan {
  std::vector<std::array<int, 3>> sizes;
  int seeds_per_size = 5;
  std::uint64_t seed0 = 1;
  std::vector<std::string> algorithms;
  std::string problem = "scad";
  std::vector<double> tolerances{1e-12};
  double mu = 0.033, theta = 10.0, gamma = 0.0, noise = 0.01;
  int max_iter = 200000;
};

BenchPlan parse_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file: " + path);
  BenchPlan plan;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto split = [&trim](const std::string& v) {
      std::vector<std::string> parts;
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(trim(item));
      return parts;
    };
    if (key == "sizes") {
      for (const auto& item : split(value)) {
        std::array<int, 3> size{};
        if (std::sscanf(item.c_str(), "%dx%dx%d", &size[0], &size[1], &size[2]) != 3)
          throw std::runtime_error("plan: bad size entry '" + item + "' (want MxKxS)");
        plan.sizes.push_back(size);
      }
    } else if (key == "seeds_per_size") {
      plan.seeds_per_size = std::stoi(value);
    } else if (key == "seed0") {
      plan.seed0 = std::stoull(value);
    } else if (key == "algorithms") {
      plan.algorithms = split(value);
    } else if (key == "problem") {
      plan.problem = value;
    } else if (key == "tolerances") {
      plan.tolerances.clear();
      for (const auto& item : split(value)) plan.tolerances.push_back(std::stod(item));
    } else if (key == "mu") {
      plan.mu = std::stod(value);
    } else if (key == "theta") {
      plan.theta = std::stod(value);
    } else if (key == "gamma") {
      plan.gamma = std::stod(value);
    } else if (key == "noise") {
      plan.noise = std::stod(value);
    } else if (key == "max_iter") {
      plan.max_iter = std::stoi(value);
    } else {
      throw std::runtime_error("plan: unknown key '" + key + "'");
    }
  }
  if (plan.sizes.empty()) throw std::runtime_error("plan: no sizes given");
  if (plan.algorithms.empty()) throw std::runtime_error("plan: no algorithms given");
  if (plan.seeds_per_size < 1) throw std::runtime_error("plan: seeds_per_size must be positive");
  return plan;
}

int cmd_bench(const std::string& plan_path, const std::string& out_prefix) {
  const BenchPlan plan = parse_plan(plan_path);
  const PenaltyKind variant =
      plan.problem == "huber_scad" ? PenaltyKind::huber : PenaltyKind::l1;
  ScadParams params;
  params.mu = plan.mu;
  params.theta = plan.theta;
  params.gamma = plan.gamma > 0.0 ? plan.gamma : 0.5 * plan.mu;
  const double sparsity_tol = variant == PenaltyKind::l1 ? 0.0 : 1e-6;

  for (double tol : plan.tolerances) {
    std::vector<ResultRow> rows;
    std::vector<ResultRow> averaged;
    for (const auto& size : plan.sizes) {
      std::map<std::string, std::vector<ResultRow>> per_alg;
      for (int sidx = 0; sidx < plan.seeds_per_size; ++sidx) {
        const std::uint64_t seed = plan.seed0 + static_cast<std::uint64_t>(sidx);
        const Instance inst =
            gen_random_instance({size[0], size[1], size[2], plan.noise, seed});
        const auto data = make_lsq_data(inst.A, inst.b);
        const Problem problem = build_scad_ls(data, params, variant);
        for (const auto& alg_name : plan.algorithms) {
          ResultRow row;
          row.m = size[0];
          row.k = size[1];
          row.s = size[2];
          row.algorithm = alg_name;
          try {
            SolverConfig config;
            config.max_iter = plan.max_iter;
            config.termination.tolerance = tol;
            config.record_energy = false;
            const RunRecord rec =
                run_algorithm(algorithm_from_name(alg_name), problem, config,
                              Vec::Zero(problem.dim));
            row.iterations = rec.iterations;
            row.time_s = rec.wall_time;
            row.sparsity = sparsity_count(rec.final_x, sparsity_tol);
            row.final_E = problem.energy(rec.final_x);
            row.terminated_by = rec.terminated_by;
          } catch (const std::exception& e) {
            row.terminated_by = std::string("error: ") + e.what();
          }
          rows.push_back(row);
          per_alg[alg_name].push_back(row);
        }
      }
      for (const auto& alg_name : plan.algorithms) {
        const auto& runs = per_alg[alg_name];
        ResultRow avg;
        avg.m = size[0];
        avg.k = size[1];
        avg.s = size[2];
        avg.algorithm = alg_name;
        long iters = 0, sparsity = 0;
        double time_s = 0.0, final_e = 0.0;
        int good = 0;
        for (const auto& r : runs) {
          if (r.terminated_by.rfind("error", 0) == 0) continue;
          ++good;
          iters += r.iterations;
          sparsity += r.sparsity;
          time_s += r.time_s;
          final_e += r.final_E;
        }
        if (good > 0) {
          avg.iterations = static_cast<int>(std::llround(double(iters) / good));
          avg.sparsity = static_cast<int>(std::llround(double(sparsity) / good));
          avg.time_s = time_s / good;
          avg.final_E = final_e / good;
          avg.terminated_by = "average_of_" + std::to_string(good);
        } else {
          avg.terminated_by = "error: all seeds failed";
        }
        averaged.push_back(avg);
      }
    }
    std::string tag;
    if (plan.tolerances.size() > 1) {
      std::ostringstream t;
      t << ".eps" << tol;
      tag = t.str();
    }
    std::ofstream runs_out(out_prefix + tag + ".runs.csv");
    write_results_csv(rows, runs_out);
    std::ofstream avg_out(out_prefix + tag + ".avg.csv");
    write_results_csv(averaged, avg_out);
  }
  return kExitOk;
}

struct SegmentOptions {
  std::string image_path;
  std::string truth_path;
  std::string labels_path;
  std::string synthetic = "disk";
  bool use_synthetic = false;
  int width = 32, height = 32;
  double noise = 0.05;
  int num_labels = 5;
  std::uint64_t seed = 1;
  SegmentParams params;
  std::string algorithm = "3bapdca_e";
  double dt = 0.0;
  int inner_iters = 10;
  std::string precond = "jacobi";
  std::string criterion = "dice";
  double tol = 0.98;
  int max_iter = 2000;
  std::string restart = "poststep";
  std::string out;
};

int cmd_segment(const SegmentOptions& opt) {
  Image image;
  BinVec truth;
  if (opt.use_synthetic) {
    const ShapeKind shape = opt.synthetic == "stripes" ? ShapeKind::stripes : ShapeKind::disk;
    std::tie(image, truth) = gen_synthetic_image(opt.width, opt.height, shape, opt.noise, opt.seed);
  } else {
    std::ifstream in(opt.image_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image: " + opt.image_path);
    image = read_pgm(in);
    if (!opt.truth_path.empty()) {
      std::ifstream tin(opt.truth_path, std::ios::binary);
      if (!tin) throw std::runtime_error("cannot open truth image: " + opt.truth_path);
      const Image timg = read_pgm(tin);
      truth.resize(timg.size());
      for (int i = 0; i < timg.size(); ++i) truth[i] = timg.pixels[i] >= 0.5 ? 1 : 0;
    }
  }

  BinVec labels = BinVec::Zero(image.size());
  if (!opt.labels_path.empty()) {
    std::ifstream lin(opt.labels_path, std::ios::binary);
    if (!lin) throw std::runtime_error("cannot open labels image: " + opt.labels_path);
    const Image limg = read_pgm(lin);
    if (limg.size() != image.size()) throw std::runtime_error("labels image size mismatch");
    // white = +1 prior, mid gray = -1 prior, black = unlabeled
    for (int i = 0; i < limg.size(); ++i) {
      if (limg.pixels[i] >= 0.75) labels[i] = 1;
      else if (limg.pixels[i] >= 0.25) labels[i] = -1;
    }
  } else {
    if (truth.size() == 0) throw std::runtime_error("--num-labels needs a truth mask");
    std::vector<int> fg;
    for (int i = 0; i < truth.size(); ++i)
      if (truth[i]) fg.push_back(i);
    if (static_cast<int>(fg.size()) < opt.num_labels)
      throw std::runtime_error("not enough foreground pixels to label");
    rng::StreamRng label_rng(opt.seed, rng::Stream::labels);
    for (int t = 0; t < opt.num_labels; ++t) {
      const auto pick = t + static_cast<int>(label_rng.integer(fg.size() - t));
      std::swap(fg[t], fg[pick]);
      labels[fg[t]] = 1;
    }
  }

  SegmentSetup setup = build_segment_setup(image, labels, opt.params);

  SolverConfig config;
  config.delta_t = opt.dt;
  config.max_iter = opt.max_iter;
  config.inner_iters = opt.inner_iters;
  config.precond = precond_from_name(opt.precond);
  config.restart_rule =
      opt.restart == "literal" ? RestartRule::paper_literal : RestartRule::post_step;
  config.termination.kind = criterion_from_name(opt.criterion);
  config.termination.tolerance = opt.tol;
  config.record_iterates = true;
  if (config.termination.kind == TerminationKind::dice_bound) {
    if (truth.size() == 0)
      throw std::runtime_error("dice criterion needs a synthetic truth or --truth-image");
    config.termination.truth = truth;
  }

  const RunRecord rec = run_segment(setup, algorithm_from_name(opt.algorithm), config);
  const BinVec seg = binarize(rec.final_x);

  double final_dice = -1.0;
  if (truth.size() != 0) final_dice = dice(seg, truth);
  std::cout << "algorithm=" << opt.algorithm << " eps=" << setup.model.eps
            << " eta=" << setup.model.eta << " sigma=" << setup.sigma_used
            << " inner_iters=" << config.inner_iters << " iterations=" << rec.iterations
            << " time_s=" << rec.wall_time << " dice=" << final_dice
            << " terminated_by=" << rec.terminated_by << "\n";

  if (!opt.out.empty()) {
    Image seg_img;
    seg_img.width = image.width;
    seg_img.height = image.height;
    seg_img.pixels.resize(image.pixels.size());
    for (int i = 0; i < seg.size(); ++i) seg_img.pixels[i] = seg[i] ? 1.0 : 0.0;
    std::ofstream seg_out(opt.out + ".seg.pgm");
    write_pgm(seg_img, seg_out);

    std::ofstream trace(opt.out + ".dice.csv");
    trace << "# eps=" << setup.model.eps << "\n# eta=" << setup.model.eta
          << "\n# sigma=" << format_full(setup.sigma_used)
          << "\n# algorithm=" << opt.algorithm << "\n# inner_iters=" << config.inner_iters
          << "\n";
    trace << "iter,dice,E,step_norm,restarted\n";
    for (size_t i = 0; i < rec.trace.size(); ++i) {
      double d = -1.0;
      if (truth.size() != 0 && i + 1 < rec.iterates.size())
        d = dice(binarize(rec.iterates[i + 1]), truth);
      trace << (i + 1) << ',' << format_full(d) << ',' << format_full(rec.trace[i].energy) << ','
            << format_full(rec.trace[i].step_norm) << ',' << (rec.trace[i].restarted ? 1 : 0)
            << '\n';
    }
  }
  return finish_run(rec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preconditioned third-order IMEX difference-of-convex solver bench"};
  app.require_subcommand(1);
  app.fallthrough();
  // key=value config files; subcommand options live in a [solve] / [segment] / ... section
  app.set_config("--config", "", "Read options from a key=value file");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random sparse regression instance");
  InstanceSpec gspec;
  std::string gen_out = "instance";
  gen->add_option("--m", gspec.m, "Rows of A")->required();
  gen->add_option("--k", gspec.k, "Columns of A")->required();
  gen->add_option("--s", gspec.s, "Support size of the planted vector")->required();
  gen->add_option("--noise", gspec.noise_sigma, "Noise level in b = A y + noise * xi")
      ->capture_default_str();
  gen->add_option("--seed", gspec.seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output file prefix")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "Run one algorithm on a SCAD least-squares instance");
  SolveOptions sopt;
  solve->add_option("--instance", sopt.instance_prefix, "Instance file prefix (from gen)");
  solve->add_option("--preset", sopt.preset, "Problem preset: scad | huber_scad")
      ->check(CLI::IsMember({"scad", "huber_scad"}))
      ->capture_default_str();
  solve->add_option("--m", sopt.m, "Rows (generated instance)")->capture_default_str();
  solve->add_option("--k", sopt.k, "Columns (generated instance)")->capture_default_str();
  solve->add_option("--s", sopt.s, "Support size (generated instance)")->capture_default_str();
  solve->add_option("--noise", sopt.noise, "Noise level (generated instance)")
      ->capture_default_str();
  solve->add_option("--seed", sopt.seed, "Instance seed")->capture_default_str();
  solve->add_option("--mu", sopt.mu, "SCAD weight mu")->capture_default_str();
  solve->add_option("--theta", sopt.theta, "SCAD clipping theta")->capture_default_str();
  solve->add_option("--gamma", sopt.gamma, "Huber knee (<= 0 picks 0.5 mu)")
      ->capture_default_str();
  solve->add_option("--algorithm", sopt.algorithm,
                    "dca | bdca | bapdca | 3bapdca | 3bapdca_e")
      ->capture_default_str();
  solve->add_option("--dt", sopt.dt, "Step size (<= 0 picks the feasibility bound)")
      ->capture_default_str();
  solve->add_option("--alpha", sopt.alpha, "Theory parameter alpha > 4/77")
      ->capture_default_str();
  solve->add_option("--tol", sopt.tol, "Termination tolerance")->capture_default_str();
  solve->add_option("--criterion", sopt.criterion, "relstep | step | grad | dice")
      ->capture_default_str();
  solve->add_option("--max-iter", sopt.max_iter, "Iteration cap")->capture_default_str();
  solve->add_option("--precond", sopt.precond, "exact | richardson | jacobi | sgs")
      ->capture_default_str();
  solve->add_option("--inner-iters", sopt.inner_iters, "Preconditioned sweeps per subproblem")
      ->capture_default_str();
  solve->add_flag("--no-extrapolation", sopt.no_extrapolation, "Disable momentum (3bapdca path)");
  solve->add_option("--restart", sopt.restart, "literal | poststep")->capture_default_str();
  solve->add_flag("--redo-step-on-restart", sopt.redo_step_on_restart,
                  "Recompute the step with reset momentum on restart");
  solve->add_option("--out", sopt.out, "Output prefix for trace csv and final vector");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark plan and emit CSV tables");
  std::string plan_path, bench_out = "bench";
  bench->add_option("--plan", plan_path, "Plan file (key=value)")->required();
  bench->add_option("--out", bench_out, "Output prefix")->capture_default_str();

  // segment
  auto* segment = app.add_subcommand("segment", "Graph Ginzburg-Landau segmentation");
  SegmentOptions eopt;
  segment->add_option("--image", eopt.image_path, "Input PGM image");
  segment->add_option("--truth-image", eopt.truth_path, "Ground-truth PGM (white = foreground)");
  segment->add_option("--labels-image", eopt.labels_path,
                      "Label PGM: white = +1 prior, mid gray = -1 prior");
  std::string synthetic;
  segment->add_option("--synthetic", synthetic, "Synthetic image: disk | stripes")
      ->check(CLI::IsMember({"disk", "stripes"}));
  segment->add_option("--width", eopt.width, "Synthetic width")->capture_default_str();
  segment->add_option("--height", eopt.height, "Synthetic height")->capture_default_str();
  segment->add_option("--noise", eopt.noise, "Synthetic noise level")->capture_default_str();
  segment->add_option("--num-labels", eopt.num_labels, "Labeled foreground pixels to sample")
      ->capture_default_str();
  segment->add_option("--seed", eopt.seed, "Seed for image and labels")->capture_default_str();
  segment->add_option("--eps", eopt.params.eps, "Interface weight eps")->capture_default_str();
  segment->add_option("--eta", eopt.params.eta, "Prior weight eta")->capture_default_str();
  segment->add_option("--sigma", eopt.params.sigma, "Kernel width (<= 0: auto)")
      ->capture_default_str();
  segment->add_option("--sigma-scale", eopt.params.sigma_scale,
                      "Auto sigma = scale * median kNN distance")
      ->capture_default_str();
  segment->add_option("--knn", eopt.params.k_nn, "Neighbors per node")->capture_default_str();
  segment->add_option("--patch-radius", eopt.params.patch_radius, "Feature patch radius")
      ->capture_default_str();
  segment->add_option("--box-c", eopt.params.box_c, "Lipschitz box bound on |x_i|")
      ->capture_default_str();
  segment->add_option("--algorithm", eopt.algorithm, "dca | bdca | bapdca | 3bapdca | 3bapdca_e")
      ->capture_default_str();
  segment->add_option("--dt", eopt.dt, "Step size (<= 0 picks the feasibility bound)")
      ->capture_default_str();
  segment->add_option("--inner-iters", eopt.inner_iters, "Preconditioned sweeps per subproblem")
      ->capture_default_str();
  segment->add_option("--precond", eopt.precond, "exact | richardson | jacobi | sgs")
      ->capture_default_str();
  segment->add_option("--criterion", eopt.criterion, "dice | relstep | step | grad")
      ->capture_default_str();
  segment->add_option("--tol", eopt.tol, "Tolerance (dice: required DICE value)")
      ->capture_default_str();
  segment->add_option("--max-iter", eopt.max_iter, "Iteration cap")->capture_default_str();
  segment->add_option("--restart", eopt.restart, "literal | poststep")->capture_default_str();
  segment->add_option("--out", eopt.out, "Output prefix for segmentation and DICE trace");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      write_instance(gen_random_instance(gspec), gen_out);
      return kExitOk;
    }
    if (solve->parsed()) return cmd_solve(sopt);
    if (bench->parsed()) return cmd_bench(plan_path, bench_out);
    if (segment->parsed()) {
      eopt.use_synthetic = !synthetic.empty() || eopt.image_path.empty();
      if (!synthetic.empty()) eopt.synthetic = synthetic;
      return cmd_segment(eopt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

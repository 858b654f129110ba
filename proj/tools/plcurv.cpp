#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plcurv/complex.hpp"
#include "plcurv/curvature.hpp"
#include "plcurv/homology.hpp"
#include "plcurv/kinematic.hpp"
#include "plcurv/slicing.hpp"

using namespace plcurv;

namespace {

int env_threads() {
  const char* e = std::getenv("PLCURV_THREADS");
  if (!e) return 1;
  int v = std::atoi(e);
  return v >= 1 ? v : 1;
}

EmbeddedComplex load(const std::string& path) {
  if (path == "-") return read_plc(std::cin);
  return read_plc_file(path);
}

Face parse_face(const std::string& text) {
  Face f;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ','))
    f.indices.push_back(std::stoi(part));
  if (f.indices.empty()) throw std::invalid_argument("empty face spec: " + text);
  std::sort(f.indices.begin(), f.indices.end());
  return f;
}

std::string face_label(const Face& f) {
  std::string s = "face";
  for (int i : f.indices) s += "_" + std::to_string(i);
  return s;
}

void require_face_of(const EmbeddedComplex& x, const Face& f, const std::string& what) {
  if (!x.has_simplex(f.indices))
    throw std::invalid_argument(what + " is not a simplex of the complex");
}

ResultRow exact_row(const std::string& name, double value) {
  return {name, value, 0.0, 0, std::nullopt, std::nullopt};
}

ResultRow estimate_row(const std::string& name, const MeasureEstimate& e) {
  return {name, e.mean, e.std_error, e.samples, std::nullopt, std::nullopt};
}

void add_verification_rows(RunReport& rep, const VerificationReport& v) {
  rep.results.push_back(
      {v.name + "_lhs", v.lhs.mean, v.lhs.std_error, v.lhs.samples, v.rhs.mean, v.pass});
  rep.results.push_back({v.name + "_rhs", v.rhs.mean, v.rhs.std_error,
                         v.rhs.samples, std::nullopt, std::nullopt});
  rep.rejections += v.lhs.rejections + v.rhs.rejections;
}

struct Emit {
  std::string format = "json";
  std::string output = "-";

  int finish(RunReport& rep, std::chrono::steady_clock::time_point t0) const {
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    std::string text;
    if (format == "json")
      text = rep.to_json();
    else if (format == "csv")
      text = rep.to_csv();
    else
      throw std::invalid_argument("unknown format: " + format);
    if (output == "-") {
      std::cout << text;
    } else {
      std::ofstream out(output);
      if (!out) throw std::runtime_error("cannot open output file: " + output);
      out << text;
    }
    return rep.all_pass() ? 0 : 1;
  }
};

void add_emit_options(CLI::App* cmd, Emit& emit) {
  cmd->add_option("--format", emit.format, "report format: json or csv")
      ->capture_default_str();
  cmd->add_option("-o,--output", emit.output, "report destination, - for stdout")
      ->capture_default_str();
}

std::string fmt_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Direction sweep with resampling of grazing directions. Returns one census
// value per accepted direction for each requested map, aligned by sample.
std::vector<std::vector<long>> census_sweep(const EmbeddedComplex& x,
                                            const std::vector<CurvatureMap>& maps,
                                            long directions, RngStream rng,
                                            long& rejections) {
  if (directions < 1) throw std::invalid_argument("directions must be positive");
  std::vector<std::vector<long>> out(maps.size());
  int n = x.ambient_dim();
  for (long i = 0; i < directions; ++i) {
    RngStream s = rng.substream(static_cast<std::uint64_t>(i));
    for (int attempt = 0;; ++attempt) {
      if (attempt > tol().max_rejections)
        throw NearDegeneracyError("direction sweep exhausted its rejection budget");
      Vector a = random_direction(n, s);
      try {
        std::vector<long> vals;
        for (auto m : maps) vals.push_back(direction_census(x, a, m));
        for (size_t j = 0; j < maps.size(); ++j) out[j].push_back(vals[j]);
        break;
      } catch (const DegeneracyError&) {
        ++rejections;
      }
    }
  }
  return out;
}

MeasureEstimate long_summary(const std::vector<long>& values) {
  std::vector<double> d(values.begin(), values.end());
  return summarize(d);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature measures and kinematic verification for embedded PL complexes"};
  app.require_subcommand(1);
  int exit_code = 0;
  auto t0 = std::chrono::steady_clock::now();

  // shared option storage; exactly one subcommand runs per invocation
  std::string in1, in2, shape = "square";
  std::string map_name = "sigma";
  std::string face1_text, face2_text, mode = "orthogonal";
  std::uint64_t seed = 0;
  long samples = 10000;
  long sweep_dirs = 200, linear_dirs = 64, inner_dirs = 256, fact_dirs = 1024;
  long motions = 10000, rotations = 64;
  int threads = env_threads();
  int wk_k = -1, lin_k = 1, cnk_n = 2, cnk_k = 1, vertex = -1;
  int gen_segments = 12, gen_dim = 2;
  double window_scale = 1.0, abs_tol = 0.0, rel_tol = 0.05, trans_rel_tol = 0.02;
  bool exact = false;
  std::string curv_face_text;
  Emit emit;

  auto add_seed = [&](CLI::App* c) {
    c->add_option("--seed", seed, "master random seed")->capture_default_str();
  };
  auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", threads,
                  "worker threads (default from PLCURV_THREADS, else 1)")
        ->capture_default_str();
  };
  auto add_map = [&](CLI::App* c) {
    c->add_option("--map", map_name, "curvature map: sigma, tau, or b0")
        ->capture_default_str();
  };
  auto add_tols = [&](CLI::App* c) {
    c->add_option("--abs-tol", abs_tol, "absolute tolerance")->capture_default_str();
    c->add_option("--rel-tol", rel_tol, "relative tolerance")->capture_default_str();
  };

  // ---- validate ----
  auto* cmd_validate = app.add_subcommand("validate", "check structural invariants of a complex");
  cmd_validate->add_option("input", in1, "PLC file, - for stdin")->required();
  add_emit_options(cmd_validate, emit);
  cmd_validate->callback([&] {
    EmbeddedComplex x = load(in1);
    std::vector<std::string> issues = validate(x);
    for (const auto& s : issues) std::cerr << "issue: " << s << "\n";
    RunReport rep;
    rep.command = "validate";
    rep.inputs = {in1};
    rep.results.push_back(exact_row("ambient_dim", x.ambient_dim()));
    rep.results.push_back(exact_row("dim", x.dim()));
    rep.results.push_back(exact_row("vertices", x.vertex_count()));
    rep.results.push_back(exact_row("maximal_simplices",
                                    static_cast<double>(x.maximal_simplices().size())));
    rep.results.push_back({"issues", static_cast<double>(issues.size()), 0.0, 0,
                           0.0, issues.empty()});
    exit_code = emit.finish(rep, t0);
  });

  // ---- info ----
  auto* cmd_info = app.add_subcommand("info", "topological and metric summary");
  cmd_info->add_option("input", in1, "PLC file, - for stdin")->required();
  add_emit_options(cmd_info, emit);
  cmd_info->callback([&] {
    EmbeddedComplex x = load(in1);
    RunReport rep;
    rep.command = "info";
    rep.inputs = {in1};
    rep.results.push_back(exact_row("ambient_dim", x.ambient_dim()));
    rep.results.push_back(exact_row("dim", x.dim()));
    rep.results.push_back(exact_row("vertices", x.vertex_count()));
    rep.results.push_back(exact_row("maximal_simplices",
                                    static_cast<double>(x.maximal_simplices().size())));
    rep.results.push_back(exact_row("euler_characteristic",
                                    static_cast<double>(euler_characteristic(x))));
    BettiVector b = betti(x);
    for (int k = 0; k <= std::max(x.dim(), 0); ++k)
      rep.results.push_back(exact_row("betti_" + std::to_string(k),
                                      static_cast<double>(b.betti(k))));
    for (int k = 0; k <= x.dim(); ++k)
      rep.results.push_back(exact_row("volume_" + std::to_string(k), total_volume(x, k)));
    exit_code = emit.finish(rep, t0);
  });

  // ---- gen ----
  auto* cmd_gen = app.add_subcommand("gen", "write a named test shape as PLC");
  cmd_gen->add_option("shape", shape, "one of the built-in generator names")->required();
  cmd_gen->add_option("--segments", gen_segments, "circle / disk resolution")
      ->capture_default_str();
  cmd_gen->add_option("--dim", gen_dim, "ambient dimension for point / segment / simplex")
      ->capture_default_str();
  cmd_gen->add_option("-o,--output", emit.output, "PLC destination, - for stdout")
      ->capture_default_str();
  cmd_gen->callback([&] {
    GenParams p;
    p.segments = gen_segments;
    p.dim = gen_dim;
    EmbeddedComplex x = generate(shape, p);
    if (emit.output == "-")
      write_plc(std::cout, x);
    else
      write_plc_file(emit.output, x);
    exit_code = 0;
  });

  // ---- curvature ----
  auto* cmd_curv = app.add_subcommand(
      "curvature", "curvature measure of the whole complex, a vertex, or a face");
  cmd_curv->add_option("input", in1, "PLC file, - for stdin")->required();
  cmd_curv->add_option("--vertex", vertex, "measure this vertex only");
  cmd_curv->add_option("--face", curv_face_text, "measure this face (comma separated indices)");
  cmd_curv->add_flag("--exact", exact, "use the exact engine instead of Monte Carlo");
  cmd_curv->add_option("--samples", samples, "directions per measure")->capture_default_str();
  add_map(cmd_curv);
  add_seed(cmd_curv);
  add_threads(cmd_curv);
  add_emit_options(cmd_curv, emit);
  cmd_curv->callback([&] {
    EmbeddedComplex x = load(in1);
    CurvatureMap map = curvature_map_from_string(map_name);
    RngStream rng(seed);
    RunReport rep;
    rep.command = "curvature";
    rep.inputs = {in1};
    rep.seed = seed;
    rep.params = {{"map", map_name}, {"samples", std::to_string(samples)},
                  {"exact", exact ? "true" : "false"}};
    if (vertex >= 0 && !curv_face_text.empty())
      throw std::invalid_argument("--vertex and --face are mutually exclusive");
    if (vertex >= 0) {
      std::string name = "vertex_" + std::to_string(vertex);
      if (exact) {
        rep.results.push_back(exact_row(name, vertex_measure_exact(x, vertex, map)));
      } else {
        MeasureEstimate e = vertex_measure(x, vertex, map, samples, rng);
        ResultRow row = estimate_row(name, e);
        rep.rejections += e.rejections;
        if (x.ambient_dim() <= 2) row.exact = vertex_measure_exact(x, vertex, map);
        rep.results.push_back(row);
      }
    } else if (!curv_face_text.empty()) {
      Face f = parse_face(curv_face_text);
      require_face_of(x, f, "--face");
      std::string name = face_label(f);
      if (exact) {
        rep.results.push_back(exact_row(name, face_measure_exact(x, f, map)));
      } else {
        MeasureEstimate e = face_measure(x, f, map, samples, rng);
        ResultRow row = estimate_row(name, e);
        rep.rejections += e.rejections;
        if (x.ambient_dim() - f.dim() <= 2) row.exact = face_measure_exact(x, f, map);
        rep.results.push_back(row);
      }
    } else if (exact) {
      rep.results.push_back(exact_row("total_curvature", wk_exact(x, 0, map)));
    } else {
      MeasureEstimate e = total_curvature(x, map, samples, rng, threads);
      ResultRow row = estimate_row("total_curvature", e);
      rep.rejections += e.rejections;
      if (x.ambient_dim() <= 2) row.exact = wk_exact(x, 0, map);
      rep.results.push_back(row);
    }
    exit_code = emit.finish(rep, t0);
  });

  // ---- wk ----
  auto* cmd_wk = app.add_subcommand("wk", "intrinsic invariants of a complex");
  cmd_wk->add_option("input", in1, "PLC file, - for stdin")->required();
  cmd_wk->add_option("--k", wk_k, "single degree (default: all of 0..ambient)");
  cmd_wk->add_flag("--exact", exact, "use the exact engine instead of Monte Carlo");
  cmd_wk->add_option("--samples", samples, "directions per face measure")
      ->capture_default_str();
  add_map(cmd_wk);
  add_seed(cmd_wk);
  add_threads(cmd_wk);
  add_emit_options(cmd_wk, emit);
  cmd_wk->callback([&] {
    EmbeddedComplex x = load(in1);
    CurvatureMap map = curvature_map_from_string(map_name);
    RngStream rng(seed);
    RunReport rep;
    rep.command = "wk";
    rep.inputs = {in1};
    rep.seed = seed;
    rep.params = {{"map", map_name}, {"samples", std::to_string(samples)},
                  {"exact", exact ? "true" : "false"}};
    int lo = wk_k >= 0 ? wk_k : 0;
    int hi = wk_k >= 0 ? wk_k : x.ambient_dim();
    for (int k = lo; k <= hi; ++k) {
      std::string name = "wk_" + std::to_string(k);
      if (exact) {
        rep.results.push_back(exact_row(name, wk_exact(x, k, map)));
      } else {
        MeasureEstimate e = wk(x, k, map, samples, rng.substream(k), threads);
        ResultRow row = estimate_row(name, e);
        rep.rejections += e.rejections;
        if (x.ambient_dim() <= 2) row.exact = wk_exact(x, k, map);
        rep.results.push_back(row);
      }
    }
    exit_code = emit.finish(rep, t0);
  });

  // ---- estimate cnk ----
  auto* cmd_est = app.add_subcommand("estimate", "Monte Carlo estimates of built-in constants");
  cmd_est->require_subcommand(1);
  auto* cmd_cnk = cmd_est->add_subcommand(
      "cnk", "normalizing constant c(n,k) as a mean rotation pairing");
  cmd_cnk->add_option("--n", cnk_n, "ambient dimension")->capture_default_str();
  cmd_cnk->add_option("--k", cnk_k, "degree")->capture_default_str();
  cmd_cnk->add_option("--samples", samples, "rotation samples")->capture_default_str();
  add_seed(cmd_cnk);
  add_threads(cmd_cnk);
  add_emit_options(cmd_cnk, emit);
  cmd_cnk->callback([&] {
    MeasureEstimate e = estimate_cnk(cnk_n, cnk_k, samples, RngStream(seed), threads);
    MeasureEstimate closed{kinematic_constant(cnk_n, cnk_k), 0.0, 0, 0};
    VerificationReport v = make_verification(
        "c_" + std::to_string(cnk_n) + "_" + std::to_string(cnk_k), e, closed, 0.0, 0.01);
    RunReport rep;
    rep.command = "estimate cnk";
    rep.seed = seed;
    rep.params = {{"n", std::to_string(cnk_n)}, {"k", std::to_string(cnk_k)},
                  {"samples", std::to_string(samples)}};
    rep.results.push_back({v.name, e.mean, e.std_error, e.samples, closed.mean, v.pass});
    exit_code = emit.finish(rep, t0);
  });

  // ---- check ----
  auto* cmd_check = app.add_subcommand("check", "verification experiments");
  cmd_check->require_subcommand(1);

  auto* chk_gb = cmd_check->add_subcommand(
      "gauss-bonnet", "euler census equals the euler characteristic in every direction");
  chk_gb->add_option("input", in1, "PLC file, - for stdin")->required();
  chk_gb->add_option("--directions", sweep_dirs, "sampled directions")->capture_default_str();
  add_seed(chk_gb);
  add_emit_options(chk_gb, emit);
  chk_gb->callback([&] {
    EmbeddedComplex x = load(in1);
    long chi = euler_characteristic(x);
    long rej = 0;
    auto sweep = census_sweep(x, {CurvatureMap::Euler}, sweep_dirs, RngStream(seed), rej);
    bool all_match = std::all_of(sweep[0].begin(), sweep[0].end(),
                                 [&](long v) { return v == chi; });
    MeasureEstimate e = long_summary(sweep[0]);
    RunReport rep;
    rep.command = "check gauss-bonnet";
    rep.inputs = {in1};
    rep.seed = seed;
    rep.params = {{"directions", std::to_string(sweep_dirs)}};
    rep.results.push_back(exact_row("euler_characteristic", static_cast<double>(chi)));
    rep.results.push_back({"sigma_census", e.mean, e.std_error, e.samples,
                           static_cast<double>(chi), all_match});
    rep.rejections = rej;
    exit_code = emit.finish(rep, t0);
  });

  auto* chk_cl = cmd_check->add_subcommand(
      "chern-lashof", "absolute census dominates the total Betti number");
  chk_cl->add_option("input", in1, "PLC file, - for stdin")->required();
  chk_cl->add_option("--directions", sweep_dirs, "sampled directions")->capture_default_str();
  add_seed(chk_cl);
  add_emit_options(chk_cl, emit);
  chk_cl->callback([&] {
    EmbeddedComplex x = load(in1);
    long btotal = betti(x).total();
    long rej = 0;
    auto sweep = census_sweep(x, {CurvatureMap::Absolute}, sweep_dirs, RngStream(seed), rej);
    long lowest = *std::min_element(sweep[0].begin(), sweep[0].end());
    MeasureEstimate e = long_summary(sweep[0]);
    RunReport rep;
    rep.command = "check chern-lashof";
    rep.inputs = {in1};
    rep.seed = seed;
    rep.params = {{"directions", std::to_string(sweep_dirs)}};
    rep.results.push_back(exact_row("betti_total", static_cast<double>(btotal)));
    rep.results.push_back(estimate_row("tau_census", e));
    rep.results.push_back({"tau_census_min", static_cast<double>(lowest), 0.0,
                           e.samples, static_cast<double>(btotal), lowest >= btotal});
    rep.rejections = rej;
    exit_code = emit.finish(rep, t0);
  });

  auto* chk_ms = cmd_check->add_subcommand(
      "morse-sum", "per direction: euler census is exact, absolute census dominates");
  chk_ms->add_option("input", in1, "PLC file, - for stdin")->required();
  chk_ms->add_option("--directions", sweep_dirs, "sampled directions")->capture_default_str();
  add_seed(chk_ms);
  add_emit_options(chk_ms, emit);
  chk_ms->callback([&] {
    EmbeddedComplex x = load(in1);
    long chi = euler_characteristic(x);
    long btotal = betti(x).total();
    long rej = 0;
    auto sweep = census_sweep(x, {CurvatureMap::Euler, CurvatureMap::Absolute},
                              sweep_dirs, RngStream(seed), rej);
    bool chi_ok = true;
    long min_abs_margin = LONG_MAX, min_betti_margin = LONG_MAX;
    for (size_t i = 0; i < sweep[0].size(); ++i) {
      long sg = sweep[0][i], tu = sweep[1][i];
      chi_ok = chi_ok && sg == chi;
      min_abs_margin = std::min(min_abs_margin, tu - std::abs(sg));
      min_betti_margin = std::min(min_betti_margin, tu - btotal);
    }
    MeasureEstimate es = long_summary(sweep[0]);
    RunReport rep;
    rep.command = "check morse-sum";
    rep.inputs = {in1};
    rep.seed = seed;
    rep.params = {{"directions", std::to_string(sweep_dirs)}};
    rep.results.push_back({"sigma_census", es.mean, es.std_error, es.samples,
                           static_cast<double>(chi), chi_ok});
    rep.results.push_back({"tau_minus_abs_sigma_min", static_cast<double>(min_abs_margin),
                           0.0, es.samples, 0.0, min_abs_margin >= 0});
    rep.results.push_back({"tau_minus_betti_min", static_cast<double>(min_betti_margin),
                           0.0, es.samples, 0.0, min_betti_margin >= 0});
    rep.rejections = rej;
    exit_code = emit.finish(rep, t0);
  });

  auto* chk_sub = cmd_check->add_subcommand(
      "subdivision", "intrinsic invariants survive barycentric subdivision");
  chk_sub->add_option("input", in1, "PLC file, - for stdin")->required();
  chk_sub->add_option("--samples", samples, "directions per face measure")
      ->capture_default_str();
  add_map(chk_sub);
  add_seed(chk_sub);
  add_threads(chk_sub);
  add_tols(chk_sub);
  add_emit_options(chk_sub, emit);
  chk_sub->callback([&] {
    EmbeddedComplex x = load(in1);
    EmbeddedComplex y = subdivide_barycentric(x);
    CurvatureMap map = curvature_map_from_string(map_name);
    RngStream rng(seed);
    RunReport rep;
    rep.command = "check subdivision";
    rep.inputs = {in1};
    rep.seed = seed;
    rep.params = {{"map", map_name}, {"samples", std::to_string(samples)}};
    int n = x.ambient_dim();
    for (int k = 0; k <= n; ++k) {
      MeasureEstimate a, b;
      double at = abs_tol, rt = rel_tol;
      if (n <= 2) {
        a = {wk_exact(x, k, map), 0.0, 0, 0};
        b = {wk_exact(y, k, map), 0.0, 0, 0};
        at = std::max(at, 1e-9);
      } else {
        a = wk(x, k, map, samples, rng.substream(2 * k), threads);
        b = wk(y, k, map, samples, rng.substream(2 * k + 1), threads);
      }
      VerificationReport v =
          make_verification("wk_" + std::to_string(k), a, b, at, rt);
      add_verification_rows(rep, v);
    }
    exit_code = emit.finish(rep, t0);
  });

  auto* chk_lin = cmd_check->add_subcommand(
      "linear", "random flats recover the intrinsic invariant of one degree");
  chk_lin->add_option("input", in1, "PLC file, - for stdin")->required();
  chk_lin->add_option("--k", lin_k, "degree")->capture_default_str();
  chk_lin->add_option("--samples", samples, "flat samples")->capture_default_str();
  chk_lin->add_option("--directions", linear_dirs,
                      "inner directions for non-euler section measures")
      ->capture_default_str();
  add_map(chk_lin);
  add_seed(chk_lin);
  add_threads(chk_lin);
  add_tols(chk_lin);
  add_emit_options(chk_lin, emit);
  chk_lin->callback([&] {
    EmbeddedComplex x = load(in1);
    CurvatureMap map = curvature_map_from_string(map_name);
    RngStream rng(seed);
    int n = x.ambient_dim();
    MeasureEstimate est =
        linear_kinematic(x, lin_k, map, samples, rng.substream(0), linear_dirs, threads);
    MeasureEstimate target;
    if (n <= 2)
      target = {wk_exact(x, lin_k, map), 0.0, 0, 0};
    else
      target = wk(x, lin_k, map, samples, rng.substream(1), threads);
    RunReport rep;
    rep.command = "check linear";
    rep.inputs = {in1};
    rep.seed = seed;
    rep.params = {{"map", map_name}, {"k", std::to_string(lin_k)},
                  {"samples", std::to_string(samples)},
                  {"directions", std::to_string(linear_dirs)}};
    std::string base = "wk_" + std::to_string(lin_k);
    add_verification_rows(rep, make_verification(base + "_flats", est, target,
                                                 abs_tol, rel_tol));
    double c = kinematic_constant(n, lin_k);
    add_verification_rows(rep, make_verification("graff_raw", scale_estimate(est, c),
                                                 scale_estimate(target, c), abs_tol,
                                                 rel_tol));
    exit_code = emit.finish(rep, t0);
  });

  auto* chk_kin = cmd_check->add_subcommand(
      "kinematic", "motion average of intersections against the bilinear side");
  chk_kin->add_option("input1", in1, "fixed complex")->required();
  chk_kin->add_option("input2", in2, "moving complex")->required();
  chk_kin->add_option("--motions", motions, "sampled rigid motions")->capture_default_str();
  chk_kin->add_option("--directions", inner_dirs,
                      "inner directions for non-euler intersection measures")
      ->capture_default_str();
  chk_kin->add_option("--samples", samples,
                      "bilinear-side face samples when the exact path is unavailable")
      ->capture_default_str();
  chk_kin->add_option("--window-scale", window_scale, "translation window inflation")
      ->capture_default_str();
  add_map(chk_kin);
  add_seed(chk_kin);
  add_threads(chk_kin);
  add_tols(chk_kin);
  add_emit_options(chk_kin, emit);
  chk_kin->callback([&] {
    EmbeddedComplex x1 = load(in1);
    EmbeddedComplex x2 = in2 == in1 ? x1 : load(in2);
    CurvatureMap map = curvature_map_from_string(map_name);
    KinematicConfig cfg;
    cfg.motions = motions;
    cfg.directions = inner_dirs;
    cfg.window_scale = window_scale;
    cfg.rhs_samples = samples;
    cfg.threads = threads;
    VerificationReport v =
        verify_kinematic(x1, x2, map, cfg, RngStream(seed), abs_tol, rel_tol);
    RunReport rep;
    rep.command = "check kinematic";
    rep.inputs = {in1, in2};
    rep.seed = seed;
    rep.params = {{"map", map_name}, {"motions", std::to_string(motions)},
                  {"directions", std::to_string(inner_dirs)},
                  {"window_scale", fmt_double(window_scale)}};
    add_verification_rows(rep, v);
    double rate = v.lhs.samples > 0
                      ? static_cast<double>(v.lhs.rejections) / v.lhs.samples
                      : 0.0;
    rep.results.push_back({"rejection_rate", rate, 0.0, v.lhs.samples, std::nullopt,
                           rate < 0.01});
    exit_code = emit.finish(rep, t0);
  });

  auto* chk_fact = cmd_check->add_subcommand(
      "factorization", "meeting-point measure against the product of cross-sections");
  chk_fact->add_option("input1", in1, "first complex")->required();
  chk_fact->add_option("input2", in2, "second complex")->required();
  chk_fact->add_option("--face1", face1_text, "face of the first complex (comma separated)")
      ->required();
  chk_fact->add_option("--face2", face2_text, "face of the second complex")->required();
  chk_fact->add_option("--mode", mode, "orthogonal or averaged")->capture_default_str();
  chk_fact->add_option("--directions", fact_dirs, "directions per measure")
      ->capture_default_str();
  chk_fact->add_option("--rotations", rotations, "rotation pairs (averaged mode)")
      ->capture_default_str();
  add_map(chk_fact);
  add_seed(chk_fact);
  add_tols(chk_fact);
  add_emit_options(chk_fact, emit);
  chk_fact->callback([&] {
    EmbeddedComplex x1 = load(in1);
    EmbeddedComplex x2 = in2 == in1 ? x1 : load(in2);
    CurvatureMap map = curvature_map_from_string(map_name);
    Face f1 = parse_face(face1_text), f2 = parse_face(face2_text);
    VerificationReport v;
    if (mode == "orthogonal")
      v = check_factorization_orthogonal(x1, f1, x2, f2, map, fact_dirs,
                                         RngStream(seed), abs_tol, rel_tol);
    else if (mode == "averaged")
      v = check_factorization_averaged(x1, f1, x2, f2, map, rotations, fact_dirs,
                                       RngStream(seed), abs_tol, rel_tol);
    else
      throw std::invalid_argument("unknown factorization mode: " + mode);
    RunReport rep;
    rep.command = "check factorization";
    rep.inputs = {in1, in2};
    rep.seed = seed;
    rep.params = {{"map", map_name}, {"mode", mode},
                  {"face1", face1_text}, {"face2", face2_text},
                  {"directions", std::to_string(fact_dirs)},
                  {"rotations", std::to_string(rotations)}};
    add_verification_rows(rep, v);
    exit_code = emit.finish(rep, t0);
  });

  auto* chk_trans = cmd_check->add_subcommand(
      "translation-measure",
      "coincidence volume of two complementary faces against the closed form");
  chk_trans->add_option("input1", in1, "first complex")->required();
  chk_trans->add_option("input2", in2, "second complex")->required();
  chk_trans->add_option("--face1", face1_text, "face of the first complex")->required();
  chk_trans->add_option("--face2", face2_text, "face of the second complex")->required();
  chk_trans->add_option("--samples", samples, "translation samples")->capture_default_str();
  chk_trans->add_option("--abs-tol", abs_tol, "absolute tolerance")->capture_default_str();
  chk_trans->add_option("--rel-tol", trans_rel_tol, "relative tolerance")
      ->capture_default_str();
  add_seed(chk_trans);
  add_emit_options(chk_trans, emit);
  chk_trans->callback([&] {
    EmbeddedComplex x1 = load(in1);
    EmbeddedComplex x2 = in2 == in1 ? x1 : load(in2);
    Face f1 = parse_face(face1_text), f2 = parse_face(face2_text);
    require_face_of(x1, f1, "--face1");
    require_face_of(x2, f2, "--face2");
    std::vector<Vector> p1, p2;
    for (int i : f1.indices) p1.push_back(x1.vertex(i));
    for (int i : f2.indices) p2.push_back(x2.vertex(i));
    VerificationReport v = translation_coincidence_measure(p1, p2, samples,
                                                           RngStream(seed), abs_tol,
                                                           trans_rel_tol);
    RunReport rep;
    rep.command = "check translation-measure";
    rep.inputs = {in1, in2};
    rep.seed = seed;
    rep.params = {{"face1", face1_text}, {"face2", face2_text},
                  {"samples", std::to_string(samples)}};
    add_verification_rows(rep, v);
    exit_code = emit.finish(rep, t0);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "plcurv: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

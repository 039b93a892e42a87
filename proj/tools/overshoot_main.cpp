// Command-line front end: bound evaluation, the rate sweep, operator norms,
// randomized/LP verification, L1 norms, and layered-filter design reports.
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "overshoot/bounds.hpp"
#include "overshoot/common.hpp"
#include "overshoot/kernels.hpp"
#include "overshoot/l1norm.hpp"
#include "overshoot/opnorm.hpp"
#include "overshoot/rational.hpp"
#include "overshoot/verify.hpp"

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

void print_json(const ojson& j) { std::fputs((j.dump(2) + "\n").c_str(), stdout); }

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ojson witness_json(const overshoot::TrigPoly& f) {
  ojson w;
  w["N"] = f.degree;
  w["a"] = f.a;
  w["b"] = std::vector<double>(f.b.begin() + 1, f.b.end());
  return w;
}

overshoot::LayeredFilter load_filter(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open filter spec: " + path);
  ojson j = ojson::parse(in);
  overshoot::LayeredFilter f;
  f.breakpoints = j.at("breakpoints_rad").get<std::vector<double>>();
  f.amplitudes = j.at("amplitudes").get<std::vector<double>>();
  f.extension_factors = j.at("extension_factors").get<std::vector<double>>();
  f.validate();
  return f;
}

// Shared kernel selection for the opnorm and l1 commands.
struct KernelArgs {
  std::string kind = "trapezoid";
  double bandwidth = kPi;
  double leps = 2.0;
  int order = 1;
  std::string spec_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kernel", kind, "Kernel family: trapezoid, sinc, triangle, layered")
        ->check(CLI::IsMember({"trapezoid", "sinc", "triangle", "layered"}));
    cmd->add_option("--B", bandwidth, "Flat band edge in rad/s (default pi)");
    cmd->add_option("--leps", leps, "Trapezoid support extension factor");
    cmd->add_option("--order", order, "Triangle kernel order n");
    cmd->add_option("--spec", spec_path, "Layered filter JSON path");
  }

  overshoot::KernelSpec build() const {
    if (kind == "trapezoid") return overshoot::KernelSpec::trapezoid(bandwidth, leps);
    if (kind == "sinc") return overshoot::KernelSpec::sinc(bandwidth);
    if (kind == "triangle") return overshoot::KernelSpec::triangle(order);
    if (spec_path.empty())
      throw std::invalid_argument("layered kernel needs --spec FILE");
    return overshoot::KernelSpec::layered(load_filter(spec_path));
  }
};

ojson bound_json(const overshoot::BoundResult& r) {
  ojson j;
  j["method"] = std::string(overshoot::method_name(r.method));
  j["value"] = r.value;
  j["t_star"] = r.t_star ? ojson(*r.t_star) : ojson(nullptr);
  j["cert_error"] = r.cert_error;
  return j;
}

int cmd_bound(const std::string& kind, std::optional<double> L,
              std::optional<int> n, std::optional<double> m,
              std::optional<double> leps, double step) {
  auto need = [](const auto& opt, const char* what) {
    if (!opt) throw std::invalid_argument(std::string("this bound kind needs ") + what);
    return *opt;
  };
  overshoot::BoundResult r;
  if (kind == "c1-cos") {
    r = overshoot::c1_cos_bound(need(L, "--L"));
  } else if (kind == "c1-sqrt") {
    r = overshoot::c1_sqrt_bound(need(L, "--L"));
  } else if (kind == "c2-sota") {
    r = overshoot::c2_sota_bound(need(leps, "--leps"));
  } else if (kind == "asymptotic") {
    r = overshoot::c2_asymptotic(need(leps, "--leps"));
  } else if (kind == "c2-new") {
    if (n || m) {
      r = overshoot::c2_new_bound(
          overshoot::RationalRate::from_m(need(n, "--n"), need(m, "--m")), step);
    } else {
      auto rate = overshoot::RationalRate::detect(need(L, "--L"));
      if (!rate)
        throw std::invalid_argument(
            "no rational rate (n <= 64, m in {1/2, 1, 2, ...}) matches this L");
      r = overshoot::c2_new_bound(*rate, step);
    }
  } else if (kind == "c1-corollary") {
    r = overshoot::c1_corollary_bound(need(n, "--n"), step);
  } else {  // nyquist
    r = overshoot::nyquist_overshoot_bound(
        overshoot::RationalRate::from_m(need(n, "--n"), need(m, "--m")), step);
  }
  print_json(bound_json(r));
  return 0;
}

int cmd_sweep(double l_min, double l_max, double step, const std::string& out_path,
              bool with_opnorm, int threads) {
  if (!(1.0 < l_min && l_min < l_max) || !(step > 0))
    throw std::invalid_argument("sweep needs 1 < l-min < l-max and a positive step");
  std::vector<double> ls;
  for (int i = 0;; ++i) {
    double L = l_min + step * i;
    if (L > l_max + step * 1e-9) break;
    ls.push_back(L);
  }

  std::vector<std::string> rows(ls.size());
  overshoot::parallel_chunks(
      static_cast<std::int64_t>(ls.size()), threads,
      [&](std::int64_t b, std::int64_t e, int) {
        for (std::int64_t i = b; i < e; ++i) {
          double L = ls[static_cast<std::size_t>(i)];
          double cert = 0;
          std::string c2_new_field, opnorm_field;
          auto rate = overshoot::RationalRate::detect(L);
          if (rate) {
            overshoot::BoundResult r = overshoot::c2_new_bound(*rate);
            c2_new_field = fmt12(r.value);
            cert += r.cert_error;
            if (with_opnorm) {
              overshoot::OperatorNormResult on = overshoot::operator_norm(
                  overshoot::KernelSpec::trapezoid(kPi, rate->extension()), L);
              opnorm_field = fmt12(on.value);
              cert += on.cert_error;
            }
          }
          rows[static_cast<std::size_t>(i)] =
              fmt12(L) + "," + fmt12(overshoot::c1_cos_bound(L).value) + "," +
              fmt12(overshoot::c1_sqrt_bound(L).value) + "," +
              fmt12(overshoot::c2_sota_bound(2.0 * L - 1.0).value) + "," +
              c2_new_field + "," + opnorm_field + "," + fmt12(cert) + "\n";
        }
      });

  std::string csv = "L,c1_cos,c1_sqrt,c2_sota_pushed,c2_new,opnorm_numeric,cert_error\n";
  for (const std::string& r : rows) csv += r;
  std::FILE* f = std::fopen(out_path.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
    return 2;
  }
  std::fwrite(csv.data(), 1, csv.size(), f);
  std::fclose(f);
  return 0;
}

int cmd_opnorm(const KernelArgs& ka, double L, overshoot::GridSpec grid) {
  overshoot::OperatorNormResult r = overshoot::operator_norm(ka.build(), L, grid);
  ojson j;
  if (r.diverges) {
    j["value"] = nullptr;
    j["t_star"] = nullptr;
    j["cert_error"] = nullptr;
    j["tail_bound"] = nullptr;
  } else {
    j["value"] = r.value;
    j["t_star"] = r.t_star;
    j["cert_error"] = r.cert_error;
    j["tail_bound"] = r.tail_bound;
  }
  j["terms"] = r.terms;
  j["exact_fold"] = r.exact_fold;
  j["diverges"] = r.diverges;
  j["growth_rate"] = r.growth_rate;
  print_json(j);
  return 0;
}

int cmd_verify(const std::string& mode, int N, int N1, int trials,
               std::uint64_t seed, double sup_step, int threads, int L,
               const std::string& witness_out) {
  ojson j;
  std::optional<ojson> witness;
  if (mode == "mc") {
    overshoot::McResult r =
        overshoot::monte_carlo_lower_bound(N, N1, trials, seed, sup_step, threads);
    j["mode"] = "mc";
    j["ratio"] = r.ratio;
    j["witness_sup"] = r.witness_sup;
    j["witness_sampled"] = r.witness_sampled;
    j["discarded"] = r.discarded;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    witness = witness_json(r.witness);
    j["witness"] = *witness;
  } else if (mode == "lp") {
    overshoot::LpResult r = overshoot::lp_c1_trig(N, N1);
    j["mode"] = "lp";
    j["value"] = r.value;
    j["t_star"] = r.t_star;
    j["grid_slack"] = r.grid_slack;
    j["unbounded"] = r.unbounded;
    j["solves"] = r.solves;
    if (r.unbounded) {
      j["witness"] = nullptr;
    } else {
      witness = witness_json(r.witness);
      j["witness"] = *witness;
    }
  } else {  // extremal
    overshoot::ExtremalReport r = overshoot::extremal_check(L);
    j["mode"] = "extremal";
    j["sampled"] = r.sampled;
    j["sup"] = r.sup;
    j["ratio"] = r.ratio;
  }
  print_json(j);
  if (!witness_out.empty() && witness) {
    std::ofstream out(witness_out);
    if (!out) {
      std::fprintf(stderr, "cannot write %s\n", witness_out.c_str());
      return 2;
    }
    out << witness->dump(2) << "\n";
  }
  return 0;
}

int cmd_l1(const KernelArgs& ka, overshoot::QuadratureSpec spec) {
  overshoot::KernelSpec kernel = ka.build();
  ojson j;
  if (kernel.family() == overshoot::KernelFamily::sinc) {
    overshoot::SincL1Divergence d = overshoot::sinc_l1_divergence(kernel.bandwidth());
    j["diverges"] = d.diverges;
    j["last_partial"] = d.last_partial;
    j["growth_rate"] = d.growth_rate;
  } else {
    overshoot::L1Result r = overshoot::kernel_l1(kernel, spec);
    j["value"] = r.value;
    j["cert_error"] = r.cert_error;
    j["evaluations"] = r.evaluations;
    j["core_halfwidth"] = r.core_halfwidth;
    j["tail_bracketed"] = r.tail_bracketed;
  }
  print_json(j);
  return 0;
}

int cmd_design(const std::string& spec_path, double L, double step) {
  overshoot::LayeredFilter filter = load_filter(spec_path);
  overshoot::LayeredBoundReport rep = overshoot::layered_overshoot_report(filter, L, step);
  overshoot::KernelSpec kernel = overshoot::KernelSpec::layered(filter);

  ojson j;
  j["bound"] = bound_json(rep.total);
  ojson layers = ojson::array();
  for (const overshoot::LayerContribution& lc : rep.layers) {
    ojson lj;
    lj["weight"] = lc.weight;
    lj["method"] = std::string(overshoot::method_name(lc.bound.method));
    lj["branch"] = lc.bound.branch;
    lj["value"] = lc.bound.value;
    lj["cert_error"] = lc.bound.cert_error;
    layers.push_back(lj);
  }
  j["layers"] = layers;

  double symbol_rate = L * filter.breakpoints.front();
  double lo = (kernel.bandwidth() + kernel.support_edge()) / 2.0;
  if (lo <= symbol_rate && symbol_rate <= kernel.support_edge()) {
    overshoot::NyquistReport isi = overshoot::nyquist_isi_defect(kernel, symbol_rate);
    j["isi"] = {{"symbol_rate", symbol_rate}, {"C_N", isi.C_N}, {"defect", isi.defect}};
  } else {
    j["isi"] = nullptr;
  }

  overshoot::QuadratureSpec qspec;
  qspec.abs_tol = 1e-3;  // design report only needs plotting accuracy
  overshoot::L1Result l1 = overshoot::kernel_l1(kernel, qspec);
  j["l1"] = {{"value", l1.value},
             {"cert_error", l1.cert_error},
             {"tail_bracketed", l1.tail_bracketed}};
  print_json(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peak-regrowth bounds for oversampled band-limited signals"};
  app.require_subcommand(1);

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate one overshoot bound");
  std::string kind;
  bound->add_option("--kind", kind, "c1-cos, c1-sqrt, c2-sota, asymptotic, c2-new, c1-corollary, nyquist")
      ->required()
      ->check(CLI::IsMember({"c1-cos", "c1-sqrt", "c2-sota", "asymptotic", "c2-new",
                             "c1-corollary", "nyquist"}));
  std::optional<double> bL, bm, bleps;
  std::optional<int> bn;
  double bstep = 0;
  bound->add_option("--L", bL, "Oversampling factor");
  bound->add_option("--n", bn, "Rate parameter n");
  bound->add_option("--m", bm, "Rate parameter m (1/2 or a positive integer)");
  bound->add_option("--leps", bleps, "Support extension factor");
  bound->add_option("--step", bstep, "Scan step for the optimized bounds (0 = auto)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Write the bound-comparison CSV over a range of L");
  double l_min = 1.05, l_max = 3.0, l_step = 0.05;
  std::string out_path = "sweep.csv";
  bool with_opnorm = false;
  int sweep_threads = 1;
  sweep->add_option("--l-min", l_min, "Lowest L (default 1.05)");
  sweep->add_option("--l-max", l_max, "Highest L (default 3.0)");
  sweep->add_option("--step", l_step, "L increment (default 0.05)");
  sweep->add_option("--out", out_path, "Output CSV path")->required();
  sweep->add_flag("--with-opnorm", with_opnorm, "Add the numeric operator-norm column");
  sweep->add_option("--threads", sweep_threads, "Worker threads (output is identical)");

  // opnorm
  auto* opn = app.add_subcommand("opnorm", "Certified interpolation operator norm");
  KernelArgs opn_kernel;
  opn_kernel.attach(opn);
  double opn_L = 2.0;
  overshoot::GridSpec grid;
  opn->add_option("--L", opn_L, "Sampling rate factor")->required();
  opn->add_option("--points", grid.points, "t-grid points on the truncated route");
  opn->add_option("--truncation", grid.truncation, "Shifts per side (0 = from tail target)");
  opn->add_option("--target-tail", grid.target_tail, "Admissible truncation tail");
  opn->add_option("--refine-cert", grid.refine_cert, "Grid certificate target");
  opn->add_option("--threads", grid.threads, "Worker threads");

  // verify
  auto* ver = app.add_subcommand("verify", "Lower-bound verification (mc, lp, extremal)");
  std::string mode = "mc";
  int vN = 1, vN1 = 4, trials = 1000, vL = 2, ver_threads = 1;
  std::uint64_t seed = 1;
  double sup_step = 0;
  std::string witness_out;
  ver->add_option("--mode", mode, "mc (random trials), lp (exact), extremal (cosine witness)")
      ->check(CLI::IsMember({"mc", "lp", "extremal"}));
  ver->add_option("--N", vN, "Polynomial degree");
  ver->add_option("--N1", vN1, "Lattice points per period");
  ver->add_option("--trials", trials, "Random trials (mc)");
  ver->add_option("--seed", seed, "Stream seed (mc)");
  ver->add_option("--sup-step", sup_step, "Sup-norm grid step (mc, 0 = auto)");
  ver->add_option("--threads", ver_threads, "Worker threads (mc)");
  ver->add_option("--L", vL, "Integer oversampling factor (extremal)");
  ver->add_option("--witness-out", witness_out, "Write the witness polynomial JSON here");

  // l1
  auto* l1 = app.add_subcommand("l1", "Kernel L1 norm with bracketed tail");
  KernelArgs l1_kernel;
  l1_kernel.attach(l1);
  overshoot::QuadratureSpec qspec;
  l1->add_option("--abs-tol", qspec.abs_tol, "Absolute error budget");
  l1->add_option("--core-halfwidth", qspec.core_halfwidth, "Quadrature core half-width (0 = auto)");

  // design
  auto* design = app.add_subcommand("design", "Layered-filter overshoot report");
  std::string design_spec;
  double design_L = 2.0, design_step = 0;
  design->add_option("--spec", design_spec, "LayeredFilter JSON path")->required();
  design->add_option("--L", design_L, "Common oversampling factor")->required();
  design->add_option("--step", design_step, "Scan step for optimized branches (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }

  try {
    if (*bound) return cmd_bound(kind, bL, bn, bm, bleps, bstep);
    if (*sweep) return cmd_sweep(l_min, l_max, l_step, out_path, with_opnorm, sweep_threads);
    if (*opn) return cmd_opnorm(opn_kernel, opn_L, grid);
    if (*ver) return cmd_verify(mode, vN, vN1, trials, seed, sup_step, ver_threads, vL, witness_out);
    if (*l1) return cmd_l1(l1_kernel, qspec);
    if (*design) return cmd_design(design_spec, design_L, design_step);
  } catch (const overshoot::ToleranceFailure& e) {
    std::fprintf(stderr, "tolerance failure: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "json error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

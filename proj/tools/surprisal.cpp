#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surprisal/approx.hpp"
#include "surprisal/errors.hpp"
#include "surprisal/io.hpp"
#include "surprisal/lorenz.hpp"
#include "surprisal/measures.hpp"
#include "surprisal/spectral.hpp"
#include "surprisal/suites.hpp"
#include "surprisal/transitions.hpp"

namespace {

using namespace surprisal;

void kv(const std::string& key, double value) { std::cout << key << ": " << g17(value) << "\n"; }

void kv(const std::string& key, const std::string& value) {
  std::cout << key << ": " << value << "\n";
}

void print_spectrum(const Spectrum& s, const std::string& format) {
  if (format == "csv") {
    std::cout << "index,value\n";
    for (int i = 0; i < s.dim(); ++i) std::cout << i << "," << g17(s[i]) << "\n";
    return;
  }
  for (int i = 0; i < s.dim(); ++i) kv("p[" + std::to_string(i) + "]", s[i]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic calculus over classical dichotomies"};
  app.require_subcommand(1);
  int rc = 0;

  // measures
  std::string m_file;
  auto* c_measures = app.add_subcommand("measures", "relative entropy, variance and extremes");
  c_measures->add_option("file", m_file, "dichotomy file")->required();
  c_measures->callback([&] {
    const MeasureSet ms = measures(read_dichotomy_file(m_file));
    kv("S", ms.S);
    kv("V", ms.V);
    kv("L", ms.L);
    kv("smin", ms.smin);
    kv("smax", ms.smax);
  });

  // lorenz
  std::string l_file;
  std::string l_out;
  auto* c_lorenz = app.add_subcommand("lorenz", "export the Lorenz curve as CSV");
  c_lorenz->add_option("file", l_file, "dichotomy file")->required();
  c_lorenz->add_option("--out", l_out, "output CSV path")->required();
  c_lorenz->callback([&] {
    const LorenzCurve curve = lorenz_curve(read_dichotomy_file(l_file));
    std::ofstream os(l_out);
    if (!os) fail(errc::bad_input_file, "cannot open '" + l_out + "' for writing");
    write_curve_csv(curve, os);
    kv("points", static_cast<double>(curve.points.size()));
    kv("out", l_out);
  });

  // check
  std::string k_from;
  std::string k_to;
  double k_eps = -1.0;
  auto* c_check = app.add_subcommand("check", "decide the (eps-)transition from -> to");
  c_check->add_option("from", k_from, "source dichotomy file")->required();
  c_check->add_option("to", k_to, "target dichotomy file")->required();
  auto* k_eps_opt = c_check->add_option("--eps", k_eps, "smoothing parameter");
  c_check->callback([&] {
    const Dichotomy from = read_dichotomy_file(k_from);
    const Dichotomy to = read_dichotomy_file(k_to);
    const TransitionVerdict v =
        k_eps_opt->count() ? approx_transition(from, to, k_eps) : exact_transition(from, to);
    kv("decision", v.decision ? "feasible" : "infeasible");
    kv("worst_gap", v.worst_gap);
    kv("witness_x", v.witness_x);
    rc = v.decision ? 0 : 1;
  });

  // approx
  std::string a_file;
  std::string a_mode;
  std::string a_format = "plain";
  double a_eps = 0.0;
  auto* c_approx = app.add_subcommand("approx", "eps-flat or eps-steep approximation");
  c_approx->add_option("file", a_file, "dichotomy file")->required();
  c_approx->add_option("--mode", a_mode, "flat or steep")
      ->required()
      ->check(CLI::IsMember({"flat", "steep"}));
  c_approx->add_option("--eps", a_eps, "ball radius")->required();
  c_approx->add_option("--format", a_format, "plain or csv")
      ->check(CLI::IsMember({"plain", "csv"}));
  c_approx->callback([&] {
    const Dichotomy d = read_dichotomy_file(a_file);
    const ApproxState st =
        a_mode == "flat" ? flat_approximation(d, a_eps) : steep_approximation(d, a_eps);
    if (a_format != "csv") {
      kv("kind", a_mode);
      kv("eps", st.eps);
      if (st.kind == ApproxKind::flat) {
        kv("m", static_cast<double>(st.m));
        kv("n", static_cast<double>(st.n));
      } else {
        kv("r_index", static_cast<double>(st.r_index));
        kv("zeroed_mass", st.zeroed_mass);
      }
    }
    print_spectrum(st.spectrum, a_format);
  });

  // smooth
  std::string s_file;
  double s_eps = 0.0;
  bool s_exact = false;
  auto* c_smooth = app.add_subcommand("smooth", "smoothed min/max relative entropies");
  c_smooth->add_option("file", s_file, "dichotomy file")->required();
  c_smooth->add_option("--eps", s_eps, "smoothing parameter")->required();
  c_smooth->add_flag("--exact", s_exact, "require the subset-exact smoothed min entropy");
  c_smooth->callback([&] {
    const Dichotomy d = read_dichotomy_file(s_file);
    const SmoothedBounds sb = smoothed_divergences(d, s_eps, s_exact);
    const MeasureSet ms = measures(d);
    kv("S", ms.S);
    kv("V", ms.V);
    kv("f_sigma", sb.f_sigma);
    kv("smax_eps", sb.smax_eps);
    kv("smin_eps_lower", sb.smin_eps_lower);
    if (sb.smin_eps_exact) kv("smin_eps_exact", *sb.smin_eps_exact);
  });

  // suffice
  std::string u_from;
  std::string u_to;
  double u_eps = 0.0;
  auto* c_suffice = app.add_subcommand("suffice", "variance-based sufficiency certificate");
  c_suffice->add_option("from", u_from, "source dichotomy file")->required();
  c_suffice->add_option("to", u_to, "target dichotomy file")->required();
  c_suffice->add_option("--eps", u_eps, "smoothing parameter")->required();
  c_suffice->callback([&] {
    const SufficiencyVerdict sv =
        sufficient_condition(read_dichotomy_file(u_from), read_dichotomy_file(u_to), u_eps);
    kv("sufficient", sv.sufficient ? "yes" : "no");
    kv("lhs", sv.lhs);
    kv("rhs", sv.rhs);
    kv("certified_eps", sv.certified_eps);
    rc = sv.sufficient ? 0 : 1;
  });

  // bounds
  auto* c_bounds = app.add_subcommand("bounds", "transition bounds");
  c_bounds->require_subcommand(1);

  std::string bl_file;
  int bl_nmax = 12;
  auto* c_landauer = c_bounds->add_subcommand("landauer", "minimal battery size for erasure");
  c_landauer->add_option("file", bl_file, "spectrum file")->required();
  c_landauer->add_option("--n-max", bl_nmax, "largest battery size searched");
  c_landauer->callback([&] {
    const LandauerReport r = landauer(read_spectrum_file(bl_file), bl_nmax);
    kv("n_bound", r.n_bound);
    if (r.n_exact)
      kv("n_exact", static_cast<double>(*r.n_exact));
    else
      kv("n_exact", "none");
  });

  std::string bc_file;
  double bc_delta = 0.0;
  int bc_ds = 0;
  int bc_de = 0;
  auto* c_catalyst = c_bounds->add_subcommand("catalyst", "catalytic entropy budget");
  c_catalyst->add_option("file", bc_file, "initial joint dichotomy file")->required();
  c_catalyst->add_option("--delta", bc_delta, "allowed system entropy rise")->required();
  c_catalyst->add_option("--dim-s", bc_ds, "system dimension")->required();
  c_catalyst->add_option("--dim-e", bc_de, "catalyst dimension")->required();
  c_catalyst->callback([&] {
    const double m_from = monotone_m(read_dichotomy_file(bc_file));
    kv("m_from", m_from);
    kv("bound", catalyst_bound(bc_delta, bc_ds, bc_de, m_from));
  });

  std::string bp_from;
  std::string bp_to;
  auto* c_production = c_bounds->add_subcommand("production", "entropy-production lower bound");
  c_production->add_option("from", bp_from, "source dichotomy file")->required();
  c_production->add_option("to", bp_to, "target dichotomy file")->required();
  c_production->callback([&] {
    const ProductionBound pb =
        entropy_production_bound(read_dichotomy_file(bp_from), read_dichotomy_file(bp_to));
    kv("delta_s", pb.delta_s);
    kv("delta_v", pb.delta_v);
    kv("bound", pb.bound);
    kv("satisfied", pb.satisfied ? "yes" : "no");
    rc = pb.satisfied ? 0 : 1;
  });

  std::string bm_joint;
  std::string bm_from_s;
  std::string bm_from_e;
  int bm_ds = 0;
  int bm_de = 0;
  auto* c_marginal = c_bounds->add_subcommand("marginal", "bipartite marginal budget");
  c_marginal->add_option("joint_final", bm_joint, "final joint spectrum file")->required();
  c_marginal->add_option("from_s", bm_from_s, "initial system dichotomy file")->required();
  c_marginal->add_option("from_e", bm_from_e, "initial environment dichotomy file")->required();
  c_marginal->add_option("--dim-s", bm_ds, "system dimension")->required();
  c_marginal->add_option("--dim-e", bm_de, "environment dimension")->required();
  c_marginal->callback([&] {
    const Dichotomy fs = read_dichotomy_file(bm_from_s);
    const Dichotomy fe = read_dichotomy_file(bm_from_e);
    const MarginalBudget mb =
        marginal_budget(read_spectrum_file(bm_joint), bm_ds, bm_de, fs, fe, fs.s, fe.s);
    kv("lhs", mb.lhs);
    kv("rhs", mb.rhs);
    kv("mutual_info", mb.mutual_info);
    kv("k_const", mb.k_const);
    kv("m_from", mb.m_from);
    kv("satisfied", mb.lhs >= mb.rhs ? "yes" : "no");
    rc = mb.lhs >= mb.rhs ? 0 : 1;
  });

  // iid-rate
  std::string r_from;
  std::string r_to;
  double r_n = 0.0;
  double r_eps = 0.0;
  auto* c_rate = app.add_subcommand("iid-rate", "certified i.i.d. conversion rate");
  c_rate->add_option("from", r_from, "source dichotomy file")->required();
  c_rate->add_option("to", r_to, "target dichotomy file")->required();
  c_rate->add_option("--n", r_n, "number of copies")->required();
  c_rate->add_option("--eps", r_eps, "smoothing parameter")->required();
  c_rate->callback([&] {
    const RateReport rr =
        iid_rate_bound(read_dichotomy_file(r_from), read_dichotomy_file(r_to), r_n, r_eps);
    kv("n", rr.n);
    kv("eps_n", rr.eps_n);
    kv("feasible", rr.feasible ? "yes" : "no");
    kv("rate_lower", rr.rate_lower);
    kv("resonance_gap", rr.resonance_gap);
    kv("k", rr.k);
    kv("k_prime", rr.k_prime);
    rc = rr.feasible ? 0 : 1;
  });

  // spectrum-from-renyi
  std::string y_file;
  std::string y_format = "plain";
  int y_dim = 0;
  auto* c_renyi = app.add_subcommand("spectrum-from-renyi", "recover a spectrum from Renyi entropies");
  c_renyi->add_option("file", y_file, "one Renyi value per line, orders 2..d")->required();
  c_renyi->add_option("--dim", y_dim, "spectrum dimension")->required();
  c_renyi->add_option("--format", y_format, "plain or csv")->check(CLI::IsMember({"plain", "csv"}));
  c_renyi->callback([&] {
    print_spectrum(spectrum_from_renyi(read_renyi_file(y_file), y_dim), y_format);
  });

  // proptest
  std::string p_suite;
  SamplerConfig p_cfg;
  bool p_mutate = false;
  bool p_serial = false;
  auto* c_prop = app.add_subcommand("proptest", "run property suites");
  c_prop->add_option("--suite", p_suite, "suite name (default: all)");
  c_prop->add_option("--trials", p_cfg.trials, "trials per suite")->required();
  c_prop->add_option("--seed", p_cfg.seed, "base seed")->required();
  c_prop->add_option("--dim-min", p_cfg.dim_min, "smallest sampled dimension");
  c_prop->add_option("--dim-max", p_cfg.dim_max, "largest sampled dimension");
  c_prop->add_option("--concentration", p_cfg.concentration, "Dirichlet concentration");
  c_prop->add_flag("--mutate", p_mutate, "debug weakening, must produce violations");
  c_prop->add_flag("--serial", p_serial, "force the serial reference runner");
  c_prop->callback([&] {
    std::vector<std::string> names =
        p_suite.empty() ? suite_names() : std::vector<std::string>{p_suite};
    std::size_t total = 0;
    for (const auto& name : names) {
      const PropertyReport rep = p_serial ? run_suite_serial(name, p_cfg, p_mutate)
                                          : run_suite(name, p_cfg, p_mutate);
      write_report(std::cout, rep);
      std::cerr << "runtime " << name << " " << g17(rep.runtime_seconds) << "s\n";
      total += rep.violations.size();
    }
    rc = total == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const surprisal::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

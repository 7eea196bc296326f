#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pinch/selftest.hpp"
#include "pinch/verdicts.hpp"
#include "pinch/warped.hpp"

namespace {

struct GlobalOpts {
  std::string format = "md";
  double tol = 1e-8;
  std::uint64_t seed = 42;
  int max_n = pinch::kDefaultMaxDim;
};

void print_report(const pinch::PinchReport& r, const std::string& format, bool header) {
  if (format == "json") {
    std::cout << pinch::to_json(r) << "\n";
  } else if (format == "csv") {
    if (header) std::cout << pinch::csv_header() << "\n";
    std::cout << pinch::to_csv_row(r) << "\n";
  } else {
    if (header)
      std::cout << "| theorem | model | lhs | rhs | ratio | verdict | yamabe | betti |\n"
                << "|---|---|---|---|---|---|---|---|\n";
    std::cout << pinch::to_markdown(r) << "\n";
  }
}

pinch::ModelSpace parse_or_exit(const std::string& dsl, int max_n) {
  try {
    pinch::ModelSpace m = pinch::parse_model(dsl);
    if (m.dimension() > max_n) {
      std::cerr << "model dimension " << m.dimension() << " exceeds --max-n " << max_n << "\n";
      std::exit(2);
    }
    return m;
  } catch (const pinch::ModelParseError& e) {
    std::cerr << "model parse error at position " << e.position << ": " << e.message << "\n";
    std::cerr << "  " << dsl << "\n  " << std::string(e.position, ' ') << "^\n";
    std::exit(2);
  }
}

std::string rational_hint(double x) {
  // small-denominator rational representation, when one matches exactly
  for (long den = 1; den <= 5040; ++den) {
    double num = x * den;
    double rounded = std::round(num);
    if (std::abs(num - rounded) < 1e-11 * std::max(1.0, std::abs(num))) {
      char buf[64];
      if (den == 1)
        std::snprintf(buf, sizeof(buf), "%ld", static_cast<long>(rounded));
      else
        std::snprintf(buf, sizeof(buf), "%ld/%ld", static_cast<long>(rounded), den);
      return buf;
    }
  }
  return "-";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature pinching constants, spectra and equality-case verdicts on model spaces"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--format", g.format, "report format: md, json or csv")
      ->check(CLI::IsMember({"md", "json", "csv"}));
  app.add_option("--tol", g.tol, "relative tolerance for verdicts (default 1e-8)");
  app.add_option("--seed", g.seed, "random seed (default 42)");
  app.add_option("--max-n", g.max_n, "dimension cap (default 12)");

  auto* constants = app.add_subcommand("constants", "print the degree-k pinching coefficients");
  constants->fallthrough();
  int cn = 6, ck = 2;
  constants->add_option("--n", cn, "dimension")->required();
  constants->add_option("--k", ck, "degree")->required();

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the degree-k curvature term");
  spectrum->fallthrough();
  std::string spectrum_model;
  int sk = 1;
  spectrum->add_option("--model", spectrum_model, "model DSL")->required();
  spectrum->add_option("--k", sk, "degree")->required();

  auto* verify = app.add_subcommand("verify", "evaluate one pinching theorem on a model");
  verify->fallthrough();
  std::string v_theorem, v_model;
  int vk = 0;
  verify->add_option("--theorem", v_theorem, "theorem id")->required();
  verify->add_option("--model", v_model, "model DSL")->required();
  verify->add_option("--k", vk, "degree (NormPinch, Gallot)");

  auto* sweep = app.add_subcommand("sweep", "equality family of Einstein product models");
  sweep->fallthrough();
  int swn = 6, swk = 3;
  sweep->add_option("--n", swn, "dimension")->required();
  sweep->add_option("--k", swk, "degree")->required();

  auto* yamabe = app.add_subcommand("yamabe", "Yamabe data for a model");
  yamabe->fallthrough();
  std::string y_model;
  double y_beta = -1.0;
  yamabe->add_option("--model", y_model, "model DSL")->required();
  yamabe->add_option("--beta", y_beta, "also probe the modified invariant at this beta");

  auto* selftest = app.add_subcommand("selftest", "run the full verification battery");
  selftest->fallthrough();
  int st_trials = 0;
  selftest->add_option("--trials", st_trials, "override per-batch trial counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*constants) {
      pinch::PinchConstants pc = pinch::pinch_constants(cn, ck);
      std::printf("n = %d, k = %d\n", cn, ck);
      if (pc.middle) {
        std::printf("a_{n,n/2} = %.17g  (%s)\n", pc.a_middle, rational_hint(pc.a_middle).c_str());
      } else {
        std::printf("a_{n,k} = %.17g  (%s)\n", pc.a, rational_hint(pc.a).c_str());
        std::printf("b_{n,k} = %.17g  (%s)\n", pc.b, rational_hint(pc.b).c_str());
      }
      double theorem_const = ck * (cn - ck) / (cn * (cn - 1.0));
      std::printf("k(n-k)/(n(n-1)) = %.17g  (%s)\n", theorem_const,
                  rational_hint(theorem_const).c_str());
      if (pc.theorem_excluded)
        std::printf("note: k = (n-1)/2 is excluded from the norm pinching theorem\n");
      return 0;
    }
    if (*spectrum) {
      pinch::ModelSpace m = parse_or_exit(spectrum_model, g.max_n);
      pinch::AlgCurvature rm =
          m.closed() ? pinch::curvature_of_model(m) : pinch::curvature_of_model(m, 0.0);
      pinch::RicciDecomposition dec = pinch::ricci_decompose(rm);
      pinch::BWOperator op = pinch::build_bw(dec, sk);
      pinch::RkData rk = pinch::r_k_of(op);
      std::printf("model %s, n = %d, k = %d, dim = %d%s\n", m.describe().c_str(), op.n, sk,
                  op.dim(), m.closed() ? "" : " (cylinder evaluated at t = 0)");
      std::printf("%-22s %s\n", "eigenvalue", "multiplicity");
      for (const auto& c : rk.clusters) std::printf("%-22.12g %d\n", c.value, c.multiplicity);
      std::printf("trace mean = %.12g, r_k = %.12g\n", rk.trace_mean, rk.r_k);
      return 0;
    }
    if (*verify) {
      pinch::ModelSpace m = parse_or_exit(v_model, g.max_n);
      pinch::TheoremId id = pinch::theorem_from_string(v_theorem);
      pinch::PinchReport rep = pinch::evaluate_theorem(id, m, vk, g.tol);
      print_report(rep, g.format, true);
      return rep.verdict == pinch::Verdict::violated || !rep.betti_consistent ? 1 : 0;
    }
    if (*sweep) {
      auto reports = pinch::sweep_equality_family(swn, swk, g.tol);
      bool first = true;
      int bad = 0;
      for (const auto& rep : reports) {
        print_report(rep, g.format, first);
        first = false;
        if (rep.verdict != pinch::Verdict::equality || !rep.betti_consistent) ++bad;
      }
      std::printf("%zu models, %d not at equality\n", reports.size(), bad);
      return bad ? 1 : 0;
    }
    if (*yamabe) {
      pinch::ModelSpace m = parse_or_exit(y_model, g.max_n);
      if (!m.closed()) {
        pinch::CylinderYamabe cy = pinch::cylinder_yamabe_quadrature(m.base());
        std::printf("cylinder over %s: quadrature %.12g, closed form %.12g, rel err %.3g, "
                    "lambda* %.6g\n",
                    m.base().describe().c_str(), cy.quadrature, cy.closed_form, cy.rel_err,
                    cy.lambda_min);
        return 0;
      }
      auto y = pinch::yamabe_certified(m);
      if (!y) {
        std::printf("no Yamabe minimizer certificate for %s\n", m.describe().c_str());
        return 1;
      }
      std::printf("Y(%s) = %.12g  [%s]\n", m.describe().c_str(), y->value,
                  pinch::to_string(y->provenance));
      if (y_beta >= 0.0) {
        pinch::ModifiedYamabeProbe probe = pinch::modified_yamabe_probe(m, y_beta, 200, g.seed);
        std::printf("modified invariant at beta = %g: sampled min %.12g >= beta*Y = %.12g "
                    "[test_function_upper_bound]\n",
                    y_beta, probe.sampled_min, probe.beta_y);
        return probe.sampled_min >= probe.beta_y - 1e-8 * std::max(1.0, probe.beta_y) ? 0 : 1;
      }
      return 0;
    }
    if (*selftest) {
      pinch::SelftestOptions opts;
      opts.seed = g.seed;
      opts.trials = st_trials;
      auto results = pinch::run_acceptance(opts);
      for (const auto& r : results) std::cout << pinch::format_result_line(r) << "\n";
      return pinch::exit_code(results);
    }
  } catch (const pinch::ModelParseError& e) {
    std::cerr << "model parse error at position " << e.position << ": " << e.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

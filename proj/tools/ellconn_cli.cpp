// Command-line front end: every verification and computation of the library
// with machine-readable JSON output.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 invalid input.

#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ellconn/instances.hpp"
#include "ellconn/io.hpp"
#include "ellconn/sampling.hpp"
#include "ellconn/selftest.hpp"
#include "ellconn/symplectic.hpp"

namespace {

using namespace ellconn;

constexpr const char* kSchemaVersion = "1";

struct GlobalOptions {
  std::string lambda, t, r, nu1, nu2;
  std::string config_path;
  std::string output_path;
};

CurveInstance<Rational> build_instance(const GlobalOptions& opts) {
  std::map<std::string, std::string> config{
      {"lambda", "-3"}, {"t", "3"}, {"r", "6"}, {"nu1", "1/3"}, {"nu2", "1/5"}};
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw DomainError("config: cannot open " + opts.config_path);
    for (const auto& [k, v] : load_config(in)) config[k] = v;
  }
  std::map<std::string, std::string> overrides;
  if (!opts.lambda.empty()) overrides["lambda"] = opts.lambda;
  if (!opts.t.empty()) overrides["t"] = opts.t;
  if (!opts.r.empty()) overrides["r"] = opts.r;
  if (!opts.nu1.empty()) overrides["nu1"] = opts.nu1;
  if (!opts.nu2.empty()) overrides["nu2"] = opts.nu2;
  return instance_from_options(config, overrides);
}

Json instance_json(const CurveInstance<Rational>& inst) {
  return Json{{"lambda", inst.lambda().str()},
              {"t", inst.t().str()},
              {"r", inst.r().str()},
              {"nu1", inst.nu1().str()},
              {"nu2", inst.nu2().str()}};
}

int emit(const GlobalOptions& opts, Json report, int status) {
  report["status"] = status == 0 ? "ok" : status == 1 ? "check-failed" : "invalid-input";
  std::string text = report.dump(2) + "\n";
  if (!opts.output_path.empty()) {
    std::ofstream out(opts.output_path);
    out << text;
  } else {
    std::cout << text;
  }
  return status;
}

Json envelope(const std::string& command, const CurveInstance<Rational>& inst) {
  return Json{{"tool", "ellconn"},
              {"schema_version", kSchemaVersion},
              {"command", command},
              {"instance", instance_json(inst)}};
}

ProjDir<Rational> minus_direction_from_flag(const std::string& zeta) {
  if (zeta == "inf") return ProjDir<Rational>(Rational(0), Rational(1));
  return ProjDir<Rational>(Rational(1), Rational::parse(zeta));
}

std::string verdict_name(FlatVerdict v) {
  switch (v) {
    case FlatVerdict::Flat: return "flat";
    case FlatVerdict::NotFlat: return "not-flat";
    case FlatVerdict::GenericallyFlat: return "generically-flat";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of the universal family of logarithmic rank-2 "
               "connections on an elliptic curve with two poles"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--lambda", opts.lambda, "curve parameter lambda (rational, not 0 or 1)");
  app.add_option("--t", opts.t, "x-coordinate of the marked pair (rational)");
  app.add_option("--r", opts.r, "y-coordinate of t1, with r^2 = t(t-1)(t-lambda)");
  app.add_option("--nu1", opts.nu1, "first exponent parameter");
  app.add_option("--nu2", opts.nu2, "second exponent parameter");
  app.add_option("--config", opts.config_path, "key=value file with instance parameters");
  app.add_option("--output", opts.output_path, "write the JSON report to this file");

  std::string z1_text = "1", z2_text = "2", c0_text = "1", c1_text = "0", c2_text = "0";
  std::string zeta1_text, zeta2_text, point_text, sign_text = "+", dir_text, desc_path;
  std::string suite = "par";
  int samples = 20;

  auto* cmd_family = app.add_subcommand("family-verify", "run the family conditions at (z, c)");
  cmd_family->add_option("--z1", z1_text);
  cmd_family->add_option("--z2", z2_text);
  cmd_family->add_option("--c1", c1_text);
  cmd_family->add_option("--c2", c2_text);

  auto* cmd_par = app.add_subcommand("par", "eigendirections of the member at (z, c)");
  cmd_par->add_option("--z1", z1_text);
  cmd_par->add_option("--z2", z2_text);
  cmd_par->add_option("--c1", c1_text);
  cmd_par->add_option("--c2", c2_text);

  auto* cmd_parinv = app.add_subcommand("par-inv", "coefficients from minus-directions");
  cmd_parinv->add_option("--z1", z1_text);
  cmd_parinv->add_option("--z2", z2_text);
  cmd_parinv->add_option("--zeta1", zeta1_text, "slope of p1^- or 'inf'")->required();
  cmd_parinv->add_option("--zeta2", zeta2_text, "slope of p2^- or 'inf'")->required();

  auto* cmd_app = app.add_subcommand("app", "apparent coordinates of the member");
  cmd_app->add_option("--z1", z1_text);
  cmd_app->add_option("--z2", z2_text);
  cmd_app->add_option("--c0", c0_text);
  cmd_app->add_option("--c1", c1_text);
  cmd_app->add_option("--c2", c2_text);

  auto* cmd_analyze = app.add_subcommand("app-analyze", "degeneration analysis over (z1, z2)");
  cmd_analyze->add_option("--z1", z1_text, "rational or 'inf'");
  cmd_analyze->add_option("--z2", z2_text, "rational or 'inf'");

  auto* cmd_bun = app.add_subcommand("bunprime", "dual base coordinates of (z1, z2)");
  cmd_bun->add_option("--z1", z1_text);
  cmd_bun->add_option("--z2", z2_text);

  auto* cmd_sympl = app.add_subcommand("symplectic", "verify a symplectic identity suite");
  cmd_sympl->add_option("--suite", suite, "par | eta | torelli");
  cmd_sympl->add_option("--samples", samples, "sample count (default 20)");

  auto* cmd_elm = app.add_subcommand("elm", "elementary transformation of the member");
  cmd_elm->add_option("--z1", z1_text);
  cmd_elm->add_option("--z2", z2_text);
  cmd_elm->add_option("--c1", c1_text);
  cmd_elm->add_option("--c2", c2_text);
  cmd_elm->add_option("--point", point_text, "w0 | w1 | wl | t1 | t2 | x,y")->required();
  cmd_elm->add_option("--sign", sign_text, "+ or -");
  cmd_elm->add_option("--dir", dir_text, "center direction u:v (defaults to the marked one)");

  auto* cmd_flat = app.add_subcommand("flat", "flatness decision for a bundle description");
  cmd_flat->add_option("--desc", desc_path, "JSON description file")->required();

  app.add_subcommand("selftest", "run the full acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    CurveInstance<Rational> inst = build_instance(opts);
    auto rational_flag = [](const std::string& text) { return Rational::parse(text); };

    if (cmd_family->parsed()) {
      Rational z1 = rational_flag(z1_text), z2 = rational_flag(z2_text);
      Rational c1 = rational_flag(c1_text), c2 = rational_flag(c2_text);
      Report rep = verify_family(inst, z1, z2, c1, c2);
      Json out = envelope("family-verify", inst);
      out["report"] = to_json(rep);
      return emit(opts, out, rep.all_pass() ? 0 : 1);
    }

    if (cmd_par->parsed()) {
      Rational z1 = rational_flag(z1_text), z2 = rational_flag(z2_text);
      Rational c1 = rational_flag(c1_text), c2 = rational_flag(c2_text);
      ParData<Rational> pd = par(inst, z1, z2, c1, c2);
      Json out = envelope("par", inst);
      out["result"] = to_json(pd);
      return emit(opts, out, 0);
    }

    if (cmd_parinv->parsed()) {
      Rational z1 = rational_flag(z1_text), z2 = rational_flag(z2_text);
      auto [c1, c2] = par_inverse(inst, z1, z2, minus_direction_from_flag(zeta1_text),
                                  minus_direction_from_flag(zeta2_text));
      Json out = envelope("par-inv", inst);
      out["result"] = Json{{"c1", c1.str()}, {"c2", c2.str()}};
      return emit(opts, out, 0);
    }

    if (cmd_app->parsed()) {
      Rational z1 = rational_flag(z1_text), z2 = rational_flag(z2_text);
      Rational c0 = rational_flag(c0_text), c1 = rational_flag(c1_text),
               c2 = rational_flag(c2_text);
      Json out = envelope("app", inst);
      Vec3<Rational> a;
      if (c0.is_zero()) {
        if (c1.is_zero() && c2.is_zero())
          throw DomainError("app: the zero member has no apparent divisor");
        auto h1 = theta1(inst, z1, z2);
        auto h2 = theta2(inst, z1, z2);
        a = app_of_matrix(inst, mat_comb(Mat2<CurveElement<Rational>>{{}, {}, {}, {}}, c1,
                                         h1.mat, c2, h2.mat),
                          /*with_d=*/false);
      } else {
        // rescale to the affine slice c0 = 1
        a = ellconn::app(inst, nabla_c(inst, z1, z2, c1 / c0, c2 / c0));
      }
      out["result"] = Json{{"a", projective_json(a)}};
      Vec3<Rational> via_matrix = app_matrix(inst, z1, z2) * Vec3<Rational>{c0, c1, c2};
      out["result"]["matrix_route_agrees"] = proportional(a, via_matrix);
      return emit(opts, out, proportional(a, via_matrix) ? 0 : 1);
    }

    if (cmd_analyze->parsed()) {
      Json out = envelope("app-analyze", inst);
      bool inf1 = z1_text == "inf", inf2 = z2_text == "inf";
      if (inf1 || inf2) {
        // Work in the infinite chart when possible; the two excluded corner
        // points of the chart atlas are reported as unsupported.
        bool zero1 = !inf1 && rational_flag(z1_text).is_zero();
        bool zero2 = !inf2 && rational_flag(z2_text).is_zero();
        if ((inf1 && zero2) || (inf2 && zero1)) {
          out["result"] = Json{{"classification", "unsupported"},
                               {"reason", "base point outside both charts"}};
          return emit(opts, out, 0);
        }
        Rational Z1 = inf1 ? Rational(0) : Rational(1) / rational_flag(z1_text);
        Rational Z2 = inf2 ? Rational(0) : Rational(1) / rational_flag(z2_text);
        auto m = app_matrix_infinity(inst, Z1, Z2);
        out["result"] = Json{{"classification", "generic-iso"},
                             {"chart", "infinity"},
                             {"det", m.det().str()}};
        bool d1 = (inst.t() * Z1 - Rational(1)).is_zero();
        bool d2 = (inst.t() * Z2 - Rational(1)).is_zero();
        if (d1 || d2) out["result"]["classification"] = d1 && d2 ? "corner" : "line-image";
        return emit(opts, out, 0);
      }
      Rational z1 = rational_flag(z1_text), z2 = rational_flag(z2_text);
      auto cls = app_degenerate(inst, z1, z2);
      Json res;
      switch (cls.kind) {
        case AppKind::GenericIso:
          res["classification"] = "generic-iso";
          break;
        case AppKind::LineImage:
          res["classification"] = "line-image";
          if (cls.line_axis == 0)
            res["reason"] = "exponent resonance nu1 + nu2 + 1 = 0";
          else
            res["independent_of"] = cls.line_axis == 1 ? "c1" : "c2";
          break;
        case AppKind::ConstantImage:
          res["classification"] = "constant-image";
          res["image_point"] = projective_json(cls.image_point);
          break;
        case AppKind::Indeterminate:
          res["classification"] = "indeterminate";
          break;
        case AppKind::Unsupported:
          res["classification"] = "unsupported";
          break;
      }
      res["det"] = app_det(inst, z1, z2).str();
      res["det_closed_form"] = app_det_closed_form(inst, z1, z2).str();
      out["result"] = res;
      return emit(opts, out, 0);
    }

    if (cmd_bun->parsed()) {
      Rational z1 = rational_flag(z1_text), z2 = rational_flag(z2_text);
      Json out = envelope("bunprime", inst);
      out["result"] = Json{{"b", projective_json(bun_prime(inst, z1, z2))}};
      return emit(opts, out, 0);
    }

    if (cmd_sympl->parsed()) {
      Json out = envelope("symplectic", inst);
      Report rep;
      SampleRng rng(kSeedSymplectic);
      if (suite == "par") {
        for (int i = 0; i < samples; ++i) {
          Rational z1 = rng.rational(), z2 = rng.rational();
          Rational zeta1 = rng.rational_avoiding(std::array{z1});
          Rational zeta2 = rng.rational_avoiding(std::array{z2});
          rep.add("pullback-sample-" + std::to_string(i),
                  par_pullback_check(inst, z1, z2, zeta1, zeta2),
                  "(" + z1.str() + "," + z2.str() + "," + zeta1.str() + "," + zeta2.str() + ")");
        }
      } else if (suite == "eta") {
        int done = 0;
        while (done < samples) {
          Rational z1 = rng.rational_avoiding(std::array{inst.t()});
          Rational z2 = rng.rational_avoiding(std::array{inst.t(), z1});
          Rational c1 = rng.rational(), c2 = rng.rational();
          try {
            bool ok = eta_and_domega_check(inst, z1, z2, c1, c2);
            rep.add("eta-sample-" + std::to_string(done), ok,
                    "(" + z1.str() + "," + z2.str() + "," + c1.str() + "," + c2.str() + ")");
            ++done;
          } catch (const DomainError&) {
            continue;  // incidence pole; resample
          }
        }
      } else if (suite == "torelli") {
        rep = torelli_invariance_checks(inst);
      } else {
        throw DomainError("symplectic: unknown suite \"" + suite + "\"");
      }
      out["report"] = to_json(rep);
      return emit(opts, out, rep.all_pass() ? 0 : 1);
    }

    if (cmd_elm->parsed()) {
      Rational z1 = rational_flag(z1_text), z2 = rational_flag(z2_text);
      Rational c1 = rational_flag(c1_text), c2 = rational_flag(c2_text);
      CurvePoint<Rational> at = resolve_point(inst, point_text);
      ProjDir<Rational> dir;
      if (!dir_text.empty()) {
        size_t colon = dir_text.find(':');
        if (colon == std::string::npos) throw DomainError("elm: --dir expects u:v");
        dir = ProjDir<Rational>(Rational::parse(dir_text.substr(0, colon)),
                                Rational::parse(dir_text.substr(colon + 1)));
      } else if (at == inst.w0()) {
        dir = ProjDir<Rational>(Rational(1), Rational(0));
      } else if (at == inst.w1()) {
        dir = ProjDir<Rational>(Rational(1), Rational(1));
      } else if (at == inst.w_lambda()) {
        dir = ProjDir<Rational>(Rational(1), inst.lambda());
      } else if (at == inst.t1()) {
        dir = ProjDir<Rational>(Rational(1), z1);
      } else if (at == inst.t2()) {
        dir = ProjDir<Rational>(Rational(1), z2);
      } else {
        throw DomainError("elm: --dir is required at an unmarked point");
      }
      ElmSign sign = sign_text == "-" ? ElmSign::Minus : ElmSign::Plus;
      auto conn = nabla_c(inst, z1, z2, c1, c2);
      auto res = elm(inst, conn, at, dir, sign);
      Json out = envelope("elm", inst);
      out["result"] = Json{{"connection", to_json(res.conn)},
                           {"new_direction",
                            "(" + res.new_direction.u().str() + ":" + res.new_direction.v().str() + ")"}};
      auto rd = residue_data(inst, res.conn, at);
      out["result"]["residue_at_center"] =
          Json::array({Json::array({rd.principal.a.str(), rd.principal.b.str()}),
                       Json::array({rd.principal.c.str(), rd.principal.d.str()})});
      return emit(opts, out, 0);
    }

    if (cmd_flat->parsed()) {
      std::ifstream in(desc_path);
      if (!in) throw DomainError("flat: cannot open " + desc_path);
      Json jdesc = Json::parse(in, nullptr, /*allow_exceptions=*/false);
      if (jdesc.is_discarded()) throw DomainError("flat: malformed JSON in " + desc_path);
      FlatInput fi = flat_input_from_json(inst, jdesc);
      FlatVerdict verdict = nu_flat_n2(inst, fi.desc, fi.nu, fi.det_class);
      Json out = envelope("flat", inst);
      out["result"] = Json{{"verdict", verdict_name(verdict)},
                           {"fuchs", fi.nu.fuchs()},
                           {"genericity",
                            Json{{"oddness_ok", genericity(fi.nu).oddness_ok},
                                 {"sums_nonintegral", genericity(fi.nu).sums_nonintegral},
                                 {"eigenvalues_distinct", genericity(fi.nu).eigenvalues_distinct}}}};
      return emit(opts, out, 0);
    }

    // selftest
    Report rep = run_selftest();
    Json out = envelope("selftest", inst);
    out["report"] = to_json(rep);
    return emit(opts, out, rep.all_pass() ? 0 : 1);
  } catch (const DomainError& e) {
    Json out{{"tool", "ellconn"},
             {"schema_version", kSchemaVersion},
             {"error", e.what()}};
    std::cerr << out.dump(2) << "\n";
    return 2;
  } catch (const CheckError& e) {
    Json out{{"tool", "ellconn"},
             {"schema_version", kSchemaVersion},
             {"error", e.what()}};
    std::cerr << out.dump(2) << "\n";
    return 1;
  }
}

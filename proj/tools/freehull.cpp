#include "freehull/gns.hpp"
#include "freehull/json_io.hpp"
#include "freehull/relax.hpp"
#include "freehull/scenarios.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace freehull;

// exit codes: 0 success/feasible, 1 infeasible (member), 2 usage, 3 numerical
constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

MatrixPoly load_poly(const std::string& spec, int g) {
  // a path to a file holding the polynomial text, or the text itself
  std::ifstream in(spec);
  if (in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_poly(text, g);
  }
  return parse_poly(spec, g);
}

void emit(const Json& j, const std::string& path) {
  if (path.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(path, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment relaxations of free semialgebraic sets"};
  app.require_subcommand(1);

  std::string poly_text, p_text, point_path, moments_path, json_path, scenario_id;
  std::string s_list, f_list;
  int level = 0, gvars = 2, degree = 2, alpha = 2, beta = 0;
  double box = 0.0, tol = 1e-6, arch_c = 0.0, k2 = 1.25, rank_tol = 1e-8;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "solver accuracy target");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--json", json_path, "write the report to this file");
  };

  CLI::App* member = app.add_subcommand("member", "decide membership in a relaxation level");
  member->add_option("--poly", poly_text, "polynomial text or file")->required();
  member->add_option("--point", point_path, "point file (JSON)")->required();
  member->add_option("--level", level, "relaxation level d")->required();
  member->add_option("--g", gvars, "variable count");
  member->add_option("--box", box, "box radius for the moment parameters");
  member->add_option("--arch-c", arch_c, "archimedean growth constant");
  member->add_option("--n", degree, "(unused for member; size comes from the point)");
  add_common(member);

  CLI::App* sep = app.add_subcommand("separate", "extract a separation functional");
  sep->add_option("--poly", poly_text)->required();
  sep->add_option("--point", point_path)->required();
  sep->add_option("--level", level)->required();
  sep->add_option("--g", gvars);
  sep->add_option("--box", box);
  sep->add_option("--arch-c", arch_c);
  add_common(sep);

  CLI::App* gns = app.add_subcommand("gns", "GNS reconstruction from a moment file");
  gns->add_option("--moments", moments_path)->required();
  gns->add_option("--degree", degree, "Hankel truncation d")->required();
  gns->add_option("--rank-tol", rank_tol);
  gns->add_option("--poly", poly_text, "optional p to check positivity transfer");
  gns->add_option("--g", gvars);
  add_common(gns);

  CLI::App* sos = app.add_subcommand("soscheck", "truncated quadratic module membership");
  sos->add_option("--poly", poly_text, "q")->required();
  sos->add_option("--p", p_text, "module generator p")->required();
  sos->add_option("--alpha", alpha)->required();
  sos->add_option("--beta", beta)->required();
  sos->add_option("--g", gvars);
  sos->add_option("--box", box);
  add_common(sos);

  CLI::App* arch = app.add_subcommand("arch-verify", "verify an archimedean identity exactly");
  arch->add_option("--p", p_text)->required();
  arch->add_option("--K2", k2, "the constant K^2")->required();
  arch->add_option("--s", s_list, "';'-separated SOS generators");
  arch->add_option("--f", f_list, "';'-separated module factors");
  arch->add_option("--g", gvars);
  add_common(arch);

  CLI::App* scen = app.add_subcommand("scenario", "run a canned reproduction");
  scen->add_option("id", scenario_id, "scenario id, or 'all'")->required();
  add_common(scen);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a polynomial at a point");
  eval->add_option("--poly", poly_text)->required();
  eval->add_option("--point", point_path)->required();
  eval->add_option("--g", gvars);
  add_common(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (member->parsed() || sep->parsed()) {
      MatrixTuple X = tuple_from_json(load_json_file(point_path));
      MatrixPoly p = load_poly(poly_text, X.g());
      RelaxConfig rc;
      rc.box_radius = box;
      rc.archimedean_C = arch_c;
      rc.sdp.tol = tol;
      if (member->parsed()) {
        MembershipResult res = membership(p, X, level, rc);
        std::string witness_file;
        if (res.witness && !json_path.empty()) {
          witness_file = json_path + ".witness.json";
          save_json_file(witness_file, moments_to_json(*res.witness));
        }
        emit(verdict_to_json(res.verdict, witness_file), json_path);
        return res.verdict.status == FeasStatus::Infeasible ? kExitInfeasible : kExitOk;
      }
      SeparationFunctional f = separate(p, X, level, rc);
      emit(separation_to_json(f), json_path);
      return kExitOk;
    }
    if (gns->parsed()) {
      MomentSequence Y = moments_from_json(load_json_file(moments_path));
      GnsOptions opt;
      opt.rank_tol = rank_tol;
      MatrixPoly p(1);
      if (!poly_text.empty()) {
        p = load_poly(poly_text, Y.g());
        opt.p = &p;
      }
      emit(gns_to_json(reconstruct(Y, degree, opt)), json_path);
      return kExitOk;
    }
    if (sos->parsed()) {
      MatrixPoly q = load_poly(poly_text, gvars);
      MatrixPoly p = load_poly(p_text, gvars);
      RelaxConfig rc;
      rc.box_radius = box;
      rc.sdp.tol = tol;
      QuadModuleResult res = quad_module_membership(q, p, alpha, beta, rc);
      Json j;
      j["found"] = res.found;
      if (res.certificate) {
        j["certificate"] = quad_certificate_to_json(*res.certificate);
        j["residual"] = quad_module_residual(*res.certificate, q, p);
      }
      if (res.solver_verdict) j["solver"] = verdict_to_json(*res.solver_verdict);
      if (!res.note.empty()) j["note"] = res.note;
      emit(j, json_path);
      return res.found ? kExitOk : kExitInfeasible;
    }
    if (arch->parsed()) {
      MatrixPoly p = load_poly(p_text, gvars);
      auto split = [&](const std::string& list) {
        std::vector<MatrixPoly> out;
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ';'))
          if (!item.empty()) out.push_back(parse_poly(item, gvars));
        return out;
      };
      const bool ok = verify_archimedean_identity(k2, p, split(s_list), split(f_list));
      emit(Json{{"identity_holds", ok}}, json_path);
      return ok ? kExitOk : kExitInfeasible;
    }
    if (scen->parsed()) {
      ScenarioConfig cfg;
      cfg.seed = seed;
      cfg.sdp.tol = tol;
      std::vector<std::string> ids =
          scenario_id == "all" ? scenario_ids() : std::vector<std::string>{scenario_id};
      Json all = Json::array();
      bool pass = true;
      for (const std::string& id : ids) {
        ScenarioReport rep = run_scenario(id, cfg);
        pass &= rep.passed();
        std::cerr << (rep.passed() ? "[pass] " : "[FAIL] ") << id << " (" << rep.seconds
                  << " s)\n";
        all.push_back(rep.to_json());
      }
      emit(ids.size() == 1 ? all[0] : Json{{"reports", all}}, json_path);
      return pass ? kExitOk : kExitInfeasible;
    }
    if (eval->parsed()) {
      MatrixTuple X = tuple_from_json(load_json_file(point_path));
      MatrixPoly p = load_poly(poly_text, X.g());
      Matrix v = p.eval(X);
      Json j;
      j["value"] = matrix_to_json(v);
      j["min_eig"] = min_eig(v);
      emit(j, json_path);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
